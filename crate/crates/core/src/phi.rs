//! The invariant `phi`: walk forward along permitted threads and backward
//! along forbidden threads until the starting thread recurs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{ArrowId, GentlePresentation};
use crate::threads::{match_end, match_start, ForbiddenId, PermittedId, ThreadError};

/// A finite multiset of pairs `(n, m)`, kept sorted ascending.
/// Serialized as the sorted array of `[n, m]` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<(u32, u32)>", from = "Vec<(u32, u32)>")]
pub struct PhiInvariant {
    pairs: Vec<(u32, u32)>,
}

impl PhiInvariant {
    pub fn new(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable();
        PhiInvariant { pairs }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Number of pairs counted with multiplicity.
    pub fn total(&self) -> usize {
        self.pairs.len()
    }

    /// Number of distinct pairs.
    pub fn support_size(&self) -> usize {
        let mut distinct = self.pairs.clone();
        distinct.dedup();
        distinct.len()
    }

    pub fn sum_n(&self) -> u64 {
        self.pairs.iter().map(|&(n, _)| n as u64).sum()
    }

    pub fn sum_m(&self) -> u64 {
        self.pairs.iter().map(|&(_, m)| m as u64).sum()
    }
}

impl From<Vec<(u32, u32)>> for PhiInvariant {
    fn from(pairs: Vec<(u32, u32)>) -> Self {
        PhiInvariant::new(pairs)
    }
}

impl From<PhiInvariant> for Vec<(u32, u32)> {
    fn from(phi: PhiInvariant) -> Self {
        phi.pairs
    }
}

impl fmt::Display for PhiInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (n, m)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({n},{m})")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("malformed invariant text at byte {0}")]
pub struct PhiParseError(pub usize);

impl FromStr for PhiInvariant {
    type Err = PhiParseError;

    /// Accepts the canonical rendering, with optional whitespace and pairs
    /// in any order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or(PhiParseError(0))?;
        let mut pairs = Vec::new();
        let mut rest = inner;
        let mut offset = 1;
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or(PhiParseError(offset))?;
            let body = rest[..body_end]
                .strip_prefix('(')
                .ok_or(PhiParseError(offset))?;
            let (n, m) = body.split_once(',').ok_or(PhiParseError(offset))?;
            let n = n.parse().map_err(|_| PhiParseError(offset))?;
            let m = m.parse().map_err(|_| PhiParseError(offset))?;
            pairs.push((n, m));
            rest = &rest[body_end + 1..];
            offset += body_end + 1;
            if let Some(r) = rest.strip_prefix(',') {
                if r.is_empty() {
                    return Err(PhiParseError(offset));
                }
                rest = r;
                offset += 1;
            }
        }
        Ok(PhiInvariant::new(pairs))
    }
}

/// Canonical text `[(n1,m1),(n2,m2),...]`.
pub fn phi_canonical_text(phi: &PhiInvariant) -> String {
    phi.to_string()
}

/// One closed walk `H0, P0, H1, P1, ..., H_n = H0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Run {
    /// `(H_i, P_i)` for `i < n`.
    pub steps: Vec<(PermittedId, ForbiddenId)>,
    pub pair: (u32, u32),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlgorithmTrace {
    pub runs: Vec<Run>,
    pub cycles: Vec<(Vec<ArrowId>, (u32, u32))>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PhiError {
    #[error(transparent)]
    Thread(#[from] ThreadError),
    #[error("matching is not a permutation: {0} revisited")]
    NotAPermutation(String),
}

/// Directed cycles all of whose consecutive compositions are relations.
pub fn relation_cycles(p: &GentlePresentation) -> &[Vec<ArrowId>] {
    &p.threads().relation_cycles
}

/// Computes `phi` with seeds taken in canonical thread order.
pub fn compute_phi(p: &GentlePresentation) -> Result<(PhiInvariant, AlgorithmTrace), PhiError> {
    let seeds: Vec<PermittedId> = p.threads().permitted_ids().collect();
    compute_phi_with_seeds(p, &seeds)
}

/// Computes `phi`, starting each run from the first unused thread in
/// `seed_order`. Any order yields the same invariant.
pub fn compute_phi_with_seeds(
    p: &GentlePresentation,
    seed_order: &[PermittedId],
) -> Result<(PhiInvariant, AlgorithmTrace), PhiError> {
    let set = p.threads();
    let q = p.quiver();
    let mut used = vec![false; set.permitted.len()];
    let mut trace = AlgorithmTrace::default();
    let mut pairs = Vec::new();
    let revisit =
        |h: PermittedId| PhiError::NotAPermutation(set.permitted(h).display(q).to_string());

    for &seed in seed_order {
        if used[seed.0] {
            continue;
        }
        let mut steps = Vec::new();
        let mut m = 0u32;
        let mut h = seed;
        loop {
            if used[h.0] {
                return Err(revisit(h));
            }
            used[h.0] = true;
            let f = match_end(p, h)?;
            m += set.forbidden(f).len() as u32;
            steps.push((h, f));
            h = match_start(p, f)?;
            if h == seed {
                break;
            }
        }
        let pair = (steps.len() as u32, m);
        pairs.push(pair);
        trace.runs.push(Run { steps, pair });
    }
    if let Some(i) = used.iter().position(|u| !u) {
        return Err(revisit(PermittedId(i)));
    }
    for cycle in &set.relation_cycles {
        let pair = (0, cycle.len() as u32);
        pairs.push(pair);
        trace.cycles.push((cycle.clone(), pair));
    }
    Ok((PhiInvariant::new(pairs), trace))
}

/// `sum n = #H_A` and `sum m = #Q1`.
pub fn check_sums(phi: &PhiInvariant, p: &GentlePresentation) -> bool {
    phi.sum_n() == p.threads().permitted.len() as u64
        && phi.sum_m() == p.quiver().arrow_count() as u64
}

/// Two-column rendering of the walk: permitted threads on the left, inverse
/// forbidden threads on the right.
pub fn render_trace(p: &GentlePresentation, trace: &AlgorithmTrace) -> String {
    let set = p.threads();
    let q = p.quiver();
    let mut out = String::new();
    for (k, run) in trace.runs.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let rows: Vec<(String, String)> = run
            .steps
            .iter()
            .enumerate()
            .map(|(i, &(h, f))| {
                (
                    format!("H_{i} = {}", set.permitted(h).display(q)),
                    format!("Pi_{i}^-1 = {}", set.forbidden(f).display_inverse(q)),
                )
            })
            .collect();
        let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        for (left, right) in &rows {
            out.push_str(&format!("{left:<width$}   {right}\n"));
        }
        out.push_str(&format!("H_{} = H_0\n", run.steps.len()));
        out.push_str(&format!("-> ({},{})\n", run.pair.0, run.pair.1));
    }
    for (cycle, pair) in &trace.cycles {
        if !out.is_empty() {
            out.push('\n');
        }
        let labels: Vec<&str> = cycle.iter().map(|&a| q.arrow_label(a)).collect();
        out.push_str(&format!(
            "relation cycle {}\n-> ({},{})\n",
            labels.join(" "),
            pair.0,
            pair.1
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::build_presentation;

    fn phi_of(raw: crate::quiver::RawQuiver) -> PhiInvariant {
        compute_phi(&build_presentation(&raw).unwrap()).unwrap().0
    }

    #[test]
    fn frozen_values() {
        assert_eq!(
            phi_of(fixtures::running_example()).to_string(),
            "[(2,3),(2,4),(3,2)]"
        );
        assert_eq!(phi_of(fixtures::a2()).to_string(), "[(3,1)]");
        assert_eq!(phi_of(fixtures::pair_a()).to_string(), "[(3,5)]");
        assert_eq!(phi_of(fixtures::pair_b()).to_string(), "[(3,5)]");
        assert_eq!(
            phi_of(fixtures::two_cycle_full()).to_string(),
            "[(0,2),(2,0)]"
        );
        assert_eq!(phi_of(fixtures::kronecker()).to_string(), "[(1,1),(1,1)]");
        assert_eq!(phi_of(fixtures::single_vertex()).to_string(), "[(2,0)]");
        assert_eq!(
            phi_of(fixtures::loop_with_relation()).to_string(),
            "[(0,1),(1,0)]"
        );
    }

    #[test]
    fn relation_cycle_detection() {
        let p = build_presentation(&fixtures::running_example()).unwrap();
        assert!(relation_cycles(&p).is_empty());
        let p = build_presentation(&fixtures::loop_with_relation()).unwrap();
        assert_eq!(relation_cycles(&p), &[vec![ArrowId(0)]]);
        let p = build_presentation(&fixtures::two_cycle_full()).unwrap();
        assert_eq!(relation_cycles(&p), &[vec![ArrowId(0), ArrowId(1)]]);
    }

    #[test]
    fn sums() {
        let p = build_presentation(&fixtures::running_example()).unwrap();
        let phi = compute_phi(&p).unwrap().0;
        assert!(check_sums(&phi, &p));
        assert_eq!(phi.sum_n(), 7);
        assert_eq!(phi.sum_m(), 9);
        assert!(!check_sums(&PhiInvariant::new(vec![(3, 2)]), &p));
        let k = build_presentation(&fixtures::single_vertex()).unwrap();
        assert!(check_sums(&PhiInvariant::new(vec![(2, 0)]), &k));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(
            phi_canonical_text(&PhiInvariant::new(vec![(3, 2), (2, 4), (2, 3)])),
            "[(2,3),(2,4),(3,2)]"
        );
        assert_eq!(phi_canonical_text(&PhiInvariant::default()), "[]");
        assert_eq!(
            phi_canonical_text(&PhiInvariant::new(vec![(1, 1), (1, 1)])),
            "[(1,1),(1,1)]"
        );
    }

    #[test]
    fn parse_text() {
        let phi: PhiInvariant = "[(3,2), (2,4),(2,3)]".parse().unwrap();
        assert_eq!(phi.pairs(), &[(2, 3), (2, 4), (3, 2)]);
        assert_eq!(
            "[]".parse::<PhiInvariant>().unwrap(),
            PhiInvariant::default()
        );
        assert!("[(1,2),]".parse::<PhiInvariant>().is_err());
        assert!("(1,2)".parse::<PhiInvariant>().is_err());
        assert!("[(1;2)]".parse::<PhiInvariant>().is_err());
    }

    #[test]
    fn trace_of_running() {
        let p = build_presentation(&fixtures::running_example()).unwrap();
        let (_, trace) = compute_phi(&p).unwrap();
        let text = render_trace(&p, &trace);
        assert!(text.contains("H_0 = a5 a4"));
        assert!(text.contains("Pi_0^-1 = 1_b"));
        assert!(text.contains("Pi_1^-1 = a2^-1 a4^-1 a1^-1 a8^-1"));
        assert!(text.contains("-> (3,2)"));
        for run in &trace.runs {
            for (i, &(h, f)) in run.steps.iter().enumerate() {
                let set = p.threads();
                let q = p.quiver();
                assert_eq!(set.forbidden(f).end(q), set.permitted(h).end(q));
                let next = run.steps.get(i + 1).map_or(run.steps[0].0, |s| s.0);
                assert_eq!(set.permitted(next).start(q), set.forbidden(f).start(q));
            }
        }
    }
}
