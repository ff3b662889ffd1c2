//! JSON mirror of the public values. Field order is fixed by the structs
//! below.

use serde::Serialize;

use crate::classify::{EquivVerdict, NormalForm, Witness};
use crate::phi::{AlgorithmTrace, PhiInvariant};
use crate::quiver::{build_presentation, BuildErrors, GentlePresentation, RawQuiver};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(#[from] BuildErrors),
}

/// Prefixes the fields of `inner` with a `version` field.
#[derive(Serialize)]
pub struct Versioned<'a, T: Serialize> {
    pub version: &'a str,
    #[serde(flatten)]
    pub inner: T,
}

#[derive(Serialize)]
struct PhiDoc<'a> {
    phi: &'a PhiInvariant,
}

#[derive(Serialize)]
#[serde(untagged)]
enum VerdictDoc<'a> {
    Differs {
        verdict: &'static str,
        witnesses: &'a [Witness],
    },
    Same {
        verdict: &'static str,
        phi: &'a PhiInvariant,
        cycles: usize,
    },
}

#[derive(Serialize)]
struct StepDoc {
    permitted: String,
    forbidden: String,
}

#[derive(Serialize)]
struct RunDoc {
    steps: Vec<StepDoc>,
    pair: (u32, u32),
}

#[derive(Serialize)]
struct CycleDoc<'a> {
    arrows: Vec<&'a str>,
    pair: (u32, u32),
}

#[derive(Serialize)]
pub struct TraceDoc<'a> {
    runs: Vec<RunDoc>,
    cycles: Vec<CycleDoc<'a>>,
}

fn to_text<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable by construction")
}

pub fn presentation_value(p: &GentlePresentation) -> RawQuiver {
    p.to_raw()
}

pub fn presentation_json(p: &GentlePresentation) -> String {
    to_text(&p.to_raw())
}

pub fn presentation_from_json(text: &str) -> Result<GentlePresentation, JsonError> {
    let raw: RawQuiver = serde_json::from_str(text)?;
    Ok(build_presentation(&raw)?)
}

pub fn phi_value(phi: &PhiInvariant) -> impl Serialize + '_ {
    PhiDoc { phi }
}

/// `{"phi":[[n,m],...]}`.
pub fn phi_json(phi: &PhiInvariant) -> String {
    to_text(&phi_value(phi))
}

pub fn verdict_value(v: &EquivVerdict) -> impl Serialize + '_ {
    match v {
        EquivVerdict::NotEquivalent { witnesses } => VerdictDoc::Differs {
            verdict: v.name(),
            witnesses,
        },
        EquivVerdict::Equivalent { phi, cycles } | EquivVerdict::Indeterminate { phi, cycles } => {
            VerdictDoc::Same {
                verdict: v.name(),
                phi,
                cycles: *cycles,
            }
        }
    }
}

/// `{"verdict":"indeterminate","phi":[[3,5]],"cycles":2}`.
pub fn verdict_json(v: &EquivVerdict) -> String {
    to_text(&verdict_value(v))
}

pub fn normal_form_json(f: &NormalForm) -> String {
    to_text(f)
}

pub fn trace_value<'a>(p: &'a GentlePresentation, trace: &AlgorithmTrace) -> TraceDoc<'a> {
    let set = p.threads();
    let q = p.quiver();
    TraceDoc {
        runs: trace
            .runs
            .iter()
            .map(|run| RunDoc {
                steps: run
                    .steps
                    .iter()
                    .map(|&(h, f)| StepDoc {
                        permitted: set.permitted(h).display(q).to_string(),
                        forbidden: set.forbidden(f).display(q).to_string(),
                    })
                    .collect(),
                pair: run.pair,
            })
            .collect(),
        cycles: trace
            .cycles
            .iter()
            .map(|(arrows, pair)| CycleDoc {
                arrows: arrows.iter().map(|&a| q.arrow_label(a)).collect(),
                pair: *pair,
            })
            .collect(),
    }
}

pub fn trace_json(p: &GentlePresentation, trace: &AlgorithmTrace) -> String {
    to_text(&trace_value(p, trace))
}

/// Serializes `inner` with a leading `version` field.
pub fn versioned_json<T: Serialize>(version: &str, inner: T) -> String {
    to_text(&Versioned { version, inner })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{build_family, derived_equivalent};
    use crate::fixtures;
    use crate::phi::compute_phi;

    #[test]
    fn phi_document() {
        let p = build_presentation(&fixtures::running_example()).unwrap();
        assert_eq!(
            phi_json(&compute_phi(&p).unwrap().0),
            r#"{"phi":[[2,3],[2,4],[3,2]]}"#
        );
    }

    #[test]
    fn verdict_document() {
        let a = build_presentation(&fixtures::pair_a()).unwrap();
        let b = build_presentation(&fixtures::pair_b()).unwrap();
        let v = derived_equivalent(&a, &b).unwrap();
        assert_eq!(
            verdict_json(&v),
            r#"{"verdict":"indeterminate","phi":[[3,5]],"cycles":2}"#
        );
        let a3 = build_family(NormalForm::An { n: 3 }).unwrap();
        let text = verdict_json(&derived_equivalent(&a, &a3).unwrap());
        assert!(
            text.starts_with(
                r#"{"verdict":"not_equivalent","witnesses":[{"invariant":"vertex_count""#
            ),
            "{text}"
        );
    }

    #[test]
    fn versioned_prefix() {
        let phi: PhiInvariant = "[(3,1)]".parse().unwrap();
        assert_eq!(
            versioned_json("1.0.0", phi_value(&phi)),
            r#"{"version":"1.0.0","phi":[[3,1]]}"#
        );
    }

    #[test]
    fn presentation_round_trip() {
        let p = build_presentation(&fixtures::a2()).unwrap();
        let text = presentation_json(&p);
        assert_eq!(
            text,
            r#"{"name":"a2","vertices":["v1","v2"],"arrows":[{"label":"a","source":"v1","target":"v2"}],"relations":[]}"#
        );
        assert_eq!(presentation_from_json(&text).unwrap(), p);
        let p = build_presentation(&fixtures::running_example()).unwrap();
        assert_eq!(presentation_from_json(&presentation_json(&p)).unwrap(), p);
    }

    #[test]
    fn normal_form_document() {
        assert_eq!(
            normal_form_json(&NormalForm::Lambda { r: 2, n: 3, m: 1 }),
            r#"{"family":"Lambda","r":2,"n":3,"m":1}"#
        );
    }

    #[test]
    fn trace_document() {
        let p = build_presentation(&fixtures::a2()).unwrap();
        let (_, trace) = compute_phi(&p).unwrap();
        let text = trace_json(&p, &trace);
        assert!(
            text.starts_with(r#"{"runs":[{"steps":[{"permitted":"#),
            "{text}"
        );
    }
}
