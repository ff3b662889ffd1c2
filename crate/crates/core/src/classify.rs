//! Derived-equivalence classes of gentle algebras with at most one cycle.
//!
//! Trees are classified by their vertex count. One-cycle algebras split by
//! the clock condition: equal numbers of clockwise and anticlockwise
//! relations give `ATilde(p, q)`, otherwise `Lambda(r, n, m)` with
//! `r = |c - a|`. In both cases the parameters are read off `phi`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::phi::{compute_phi, PhiError, PhiInvariant};
use crate::quiver::{
    build_presentation, cycle_number, ArrowId, GentlePresentation, RawQuiver, VertexId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family")]
pub enum NormalForm {
    An { n: u32 },
    ATilde { p: u32, q: u32 },
    Lambda { r: u32, n: u32, m: u32 },
    BeyondOneCycle,
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::An { n } => write!(f, "A({n})"),
            NormalForm::ATilde { p, q } => write!(f, "ATilde({p},{q})"),
            NormalForm::Lambda { r, n, m } => write!(f, "Lambda({r},{n},{m})"),
            NormalForm::BeyondOneCycle => write!(f, "beyond one cycle"),
        }
    }
}

/// Which invariant tells two algebras apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum Witness {
    VertexCount {
        left: usize,
        right: usize,
    },
    ArrowCount {
        left: usize,
        right: usize,
    },
    CycleNumber {
        left: usize,
        right: usize,
    },
    Phi {
        left: PhiInvariant,
        right: PhiInvariant,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::VertexCount { left, right } => write!(f, "vertex count: {left} != {right}"),
            Witness::ArrowCount { left, right } => write!(f, "arrow count: {left} != {right}"),
            Witness::CycleNumber { left, right } => write!(f, "cycle number: {left} != {right}"),
            Witness::Phi { left, right } => write!(f, "phi: {left} != {right}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivVerdict {
    NotEquivalent {
        witnesses: Vec<Witness>,
    },
    Equivalent {
        phi: PhiInvariant,
        cycles: usize,
    },
    /// Same invariants, but beyond the range where they are complete.
    Indeterminate {
        phi: PhiInvariant,
        cycles: usize,
    },
}

impl EquivVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            EquivVerdict::NotEquivalent { .. } => "not_equivalent",
            EquivVerdict::Equivalent { .. } => "equivalent",
            EquivVerdict::Indeterminate { .. } => "indeterminate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("cycle number is {0}, not 1")]
    NotOneCycle(usize),
    #[error("invariant {phi} does not fit {branch}")]
    InconsistentInvariant { phi: String, branch: String },
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error("bad family parameters: {0}")]
    BadParameters(String),
}

/// Relations on the unique cycle, split by direction under the canonical
/// traversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClockCount {
    pub clockwise: usize,
    pub anticlockwise: usize,
}

impl ClockCount {
    pub fn balanced(self) -> bool {
        self.clockwise == self.anticlockwise
    }

    pub fn difference(self) -> usize {
        self.clockwise.abs_diff(self.anticlockwise)
    }
}

/// The arrows of the unique cycle in traversal order, each flagged with
/// whether it is walked from source to target.
fn cycle_walk(p: &GentlePresentation) -> Result<Vec<(ArrowId, bool)>, ClassifyError> {
    let c = cycle_number(p);
    if c != 1 {
        return Err(ClassifyError::NotOneCycle(c));
    }
    let q = p.quiver();
    let mut alive_vertex = vec![true; q.vertex_count()];
    let mut alive_arrow = vec![true; q.arrow_count()];
    let mut degree = vec![0usize; q.vertex_count()];
    for a in q.arrows() {
        degree[q.source(a).0] += 1;
        degree[q.target(a).0] += 1;
    }
    let mut stack: Vec<VertexId> = q.vertices().filter(|v| degree[v.0] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive_vertex[v.0] {
            continue;
        }
        alive_vertex[v.0] = false;
        for a in q.outgoing(v).into_iter().chain(q.incoming(v)) {
            if !alive_arrow[a.0] {
                continue;
            }
            alive_arrow[a.0] = false;
            let other = if q.source(a) == v {
                q.target(a)
            } else {
                q.source(a)
            };
            degree[other.0] -= 1;
            if degree[other.0] == 1 {
                stack.push(other);
            }
        }
    }
    let on_cycle: Vec<ArrowId> = q.arrows().filter(|a| alive_arrow[a.0]).collect();
    let start = q
        .vertices()
        .find(|v| alive_vertex[v.0])
        .expect("one cycle survives pruning");
    let incident = |v: VertexId| {
        on_cycle
            .iter()
            .copied()
            .filter(move |&a| q.source(a) == v || q.target(a) == v)
    };
    let mut walk = Vec::with_capacity(on_cycle.len());
    let mut cur = start;
    let mut arrow = incident(start)
        .min()
        .expect("cycle vertex has a cycle arrow");
    loop {
        let forward = q.source(arrow) == cur;
        walk.push((arrow, forward));
        cur = if forward {
            q.target(arrow)
        } else {
            q.source(arrow)
        };
        if walk.len() == on_cycle.len() {
            break;
        }
        arrow = incident(cur)
            .find(|&a| a != arrow)
            .expect("cycle continues");
    }
    Ok(walk)
}

/// Counts relations whose two arrows lie on the unique cycle.
pub fn clock_condition(p: &GentlePresentation) -> Result<ClockCount, ClassifyError> {
    let walk = cycle_walk(p)?;
    let forward = |a: ArrowId| walk.iter().find(|w| w.0 == a).map(|w| w.1);
    let mut count = ClockCount {
        clockwise: 0,
        anticlockwise: 0,
    };
    for rel in p.relations() {
        if let (Some(first), Some(_)) = (forward(rel.first), forward(rel.second)) {
            if first {
                count.clockwise += 1;
            } else {
                count.anticlockwise += 1;
            }
        }
    }
    Ok(count)
}

fn inconsistent(phi: &PhiInvariant, branch: &str) -> ClassifyError {
    ClassifyError::InconsistentInvariant {
        phi: phi.to_string(),
        branch: branch.to_string(),
    }
}

/// The normal form of `p` up to derived equivalence.
pub fn classify(p: &GentlePresentation) -> Result<NormalForm, ClassifyError> {
    let (phi, _) = compute_phi(p)?;
    classify_with_phi(p, &phi)
}

/// [`classify`] with `phi` already computed.
pub fn classify_with_phi(
    p: &GentlePresentation,
    phi: &PhiInvariant,
) -> Result<NormalForm, ClassifyError> {
    let vertices = p.quiver().vertex_count() as u32;
    match cycle_number(p) {
        0 => {
            if phi.pairs() != [(vertices + 1, vertices - 1)] {
                return Err(inconsistent(phi, "tree"));
            }
            Ok(NormalForm::An { n: vertices })
        }
        1 => {
            let clock = clock_condition(p)?;
            let form = match *phi.pairs() {
                [(a, b), (c, d)] if a == b && c == d => NormalForm::ATilde {
                    p: a.max(c),
                    q: a.min(c),
                },
                [x, y] => {
                    let (tail, cycle) = match (x.0 > x.1, y.0 > y.1) {
                        (true, false) => (x, y),
                        (false, true) => (y, x),
                        _ => return Err(inconsistent(phi, "one cycle")),
                    };
                    let (m, n) = (tail.1, cycle.1);
                    let r = tail.0 - m;
                    if cycle.0 + r != n || r > n {
                        return Err(inconsistent(phi, "Lambda"));
                    }
                    NormalForm::Lambda { r, n, m }
                }
                _ => return Err(inconsistent(phi, "one cycle")),
            };
            let coherent = match form {
                NormalForm::ATilde { p: a, q: b } => clock.balanced() && a + b == vertices,
                NormalForm::Lambda { r, .. } => clock.difference() == r as usize,
                _ => false,
            };
            if !coherent {
                return Err(inconsistent(phi, &format!("clock count {clock:?}")));
            }
            Ok(form)
        }
        _ => Ok(NormalForm::BeyondOneCycle),
    }
}

/// Compares the invariants of `a` and `b`. `phi` together with the vertex
/// count is complete for at most one cycle; beyond that, equal invariants
/// decide nothing.
pub fn derived_equivalent(
    a: &GentlePresentation,
    b: &GentlePresentation,
) -> Result<EquivVerdict, PhiError> {
    let (phi_a, _) = compute_phi(a)?;
    let (phi_b, _) = compute_phi(b)?;
    let (qa, qb) = (a.quiver(), b.quiver());
    let (ca, cb) = (cycle_number(a), cycle_number(b));
    let mut witnesses = Vec::new();
    if qa.vertex_count() != qb.vertex_count() {
        witnesses.push(Witness::VertexCount {
            left: qa.vertex_count(),
            right: qb.vertex_count(),
        });
    }
    if qa.arrow_count() != qb.arrow_count() {
        witnesses.push(Witness::ArrowCount {
            left: qa.arrow_count(),
            right: qb.arrow_count(),
        });
    }
    if ca != cb {
        witnesses.push(Witness::CycleNumber {
            left: ca,
            right: cb,
        });
    }
    if phi_a != phi_b {
        witnesses.push(Witness::Phi {
            left: phi_a.clone(),
            right: phi_b,
        });
    }
    Ok(if !witnesses.is_empty() {
        EquivVerdict::NotEquivalent { witnesses }
    } else if ca <= 1 {
        EquivVerdict::Equivalent {
            phi: phi_a,
            cycles: ca,
        }
    } else {
        EquivVerdict::Indeterminate {
            phi: phi_a,
            cycles: ca,
        }
    })
}

/// The standard representative of a family.
pub fn build_family(form: NormalForm) -> Result<GentlePresentation, ClassifyError> {
    let raw = family_raw(form)?;
    build_presentation(&raw).map_err(|e| ClassifyError::BadParameters(e.to_string()))
}

/// [`build_family`] before validation.
pub fn family_raw(form: NormalForm) -> Result<RawQuiver, ClassifyError> {
    let bad = |msg: &str| Err(ClassifyError::BadParameters(format!("{form}: {msg}")));
    let v = |i: u32| format!("v{i}");
    match form {
        NormalForm::An { n } => {
            if n < 1 {
                return bad("need n >= 1");
            }
            let mut raw = RawQuiver::new(format!("A{n}"));
            for i in 1..=n {
                raw = raw.vertex(&v(i));
            }
            for i in 1..n {
                raw = raw.arrow(&format!("a{i}"), &v(i), &v(i + 1));
            }
            Ok(raw)
        }
        NormalForm::ATilde { p, q } => {
            if !(p >= q && q >= 1) {
                return bad("need p >= q >= 1");
            }
            let total = p + q;
            let mut raw = RawQuiver::new(format!("ATilde_{p}_{q}"));
            for i in 0..total {
                raw = raw.vertex(&v(i));
            }
            for i in 1..=p {
                raw = raw.arrow(&format!("a{i}"), &v(i - 1), &v(i));
            }
            // 0 -> N-1 -> ... -> p+1 -> p
            let mut path = vec![0];
            path.extend((p + 1..total).rev());
            path.push(p);
            for (j, w) in path.windows(2).enumerate() {
                raw = raw.arrow(&format!("b{}", j + 1), &v(w[0]), &v(w[1]));
            }
            Ok(raw)
        }
        NormalForm::Lambda { r, n, m } => {
            if !(n >= r && r >= 1) {
                return bad("need n >= r >= 1");
            }
            let mut raw = RawQuiver::new(format!("Lambda_{r}_{n}_{m}"));
            for i in 0..n {
                raw = raw.vertex(&v(i));
            }
            for j in 1..=m {
                raw = raw.vertex(&format!("w{j}"));
            }
            for i in 0..n {
                raw = raw.arrow(&format!("a{i}"), &v(i), &v((i + 1) % n));
            }
            for j in 1..=m {
                let to = if j == 1 { v(0) } else { format!("w{}", j - 1) };
                raw = raw.arrow(&format!("b{j}"), &format!("w{j}"), &to);
            }
            for k in n - r..n {
                raw = raw.relation(&format!("a{}", (k + 1) % n), &format!("a{k}"));
            }
            Ok(raw)
        }
        NormalForm::BeyondOneCycle => bad("no standard representative"),
    }
}

/// `phi` of a family representative, in closed form.
pub fn family_phi(form: NormalForm) -> Option<PhiInvariant> {
    Some(PhiInvariant::new(match form {
        NormalForm::An { n } => vec![(n + 1, n - 1)],
        NormalForm::ATilde { p, q } => vec![(p, p), (q, q)],
        NormalForm::Lambda { r, n, m } => vec![(r + m, m), (n - r, n)],
        NormalForm::BeyondOneCycle => return None,
    }))
}
