//! Permitted and forbidden threads, the sign functions on arrows, and the
//! end/start matching that drives the invariant computation.
//!
//! Matching is structural: at the end of a permitted thread we take the
//! forbidden thread ending on the *other* incoming arrow (or the trivial one
//! at the vertex), and dually at the start of a forbidden thread. The sign
//! functions are computed separately and only used to check that this rule
//! agrees with the sign-based description.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::quiver::{ArrowId, GentlePresentation, Quiver, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreadKind {
    Permitted,
    Forbidden,
}

/// Orientation tag distinguishing the two copies of a trivial thread at the
/// vertex of the one-vertex algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Orient {
    Plus,
    Minus,
}

impl Orient {
    pub fn flip(self) -> Orient {
        match self {
            Orient::Plus => Orient::Minus,
            Orient::Minus => Orient::Plus,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            Orient::Plus => 1,
            Orient::Minus => -1,
        }
    }
}

/// `+1` or `-1`.
pub type Sign = i8;

/// A permitted or forbidden thread. `arrows` is in path order (first arrow
/// first); it is empty exactly for trivial threads, which carry `at`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Thread {
    pub kind: ThreadKind,
    pub arrows: Vec<ArrowId>,
    pub at: Option<VertexId>,
    pub orient: Option<Orient>,
}

impl Thread {
    fn path(kind: ThreadKind, arrows: Vec<ArrowId>) -> Thread {
        Thread {
            kind,
            arrows,
            at: None,
            orient: None,
        }
    }

    fn trivial(kind: ThreadKind, v: VertexId, orient: Option<Orient>) -> Thread {
        Thread {
            kind,
            arrows: Vec::new(),
            at: Some(v),
            orient,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn first(&self) -> Option<ArrowId> {
        self.arrows.first().copied()
    }

    pub fn last(&self) -> Option<ArrowId> {
        self.arrows.last().copied()
    }

    pub fn start(&self, q: &Quiver) -> VertexId {
        match self.first() {
            Some(a) => q.source(a),
            None => self.at.expect("trivial thread has a vertex"),
        }
    }

    pub fn end(&self, q: &Quiver) -> VertexId {
        match self.last() {
            Some(a) => q.target(a),
            None => self.at.expect("trivial thread has a vertex"),
        }
    }

    /// Written as a composition, last arrow leftmost: `a5 a4`, or `1_v`.
    pub fn display<'a>(&'a self, q: &'a Quiver) -> impl fmt::Display + 'a {
        ThreadDisplay {
            thread: self,
            quiver: q,
            inverse: false,
        }
    }

    /// The formal inverse, first arrow leftmost: `a2^-1 a4^-1`. A trivial
    /// forbidden thread is its own inverse and renders as `1_v`.
    pub fn display_inverse<'a>(&'a self, q: &'a Quiver) -> impl fmt::Display + 'a {
        ThreadDisplay {
            thread: self,
            quiver: q,
            inverse: true,
        }
    }
}

struct ThreadDisplay<'a> {
    thread: &'a Thread,
    quiver: &'a Quiver,
    inverse: bool,
}

impl fmt::Display for ThreadDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.thread;
        let tag = match t.orient {
            Some(Orient::Plus) => "+",
            Some(Orient::Minus) => "-",
            None => "",
        };
        if let Some(v) = t.at {
            let v = self.quiver.vertex_label(v);
            return match (t.kind, self.inverse) {
                (ThreadKind::Forbidden, true) => write!(f, "1_{v}{tag}"),
                (ThreadKind::Permitted, _) => write!(f, "1_{v}{tag}"),
                (ThreadKind::Forbidden, false) => write!(f, "p_{v}{tag}"),
            };
        }
        let labels: Vec<String> = if self.inverse {
            t.arrows
                .iter()
                .map(|&a| format!("{}^-1", self.quiver.arrow_label(a)))
                .collect()
        } else {
            t.arrows
                .iter()
                .rev()
                .map(|&a| self.quiver.arrow_label(a).to_string())
                .collect()
        };
        f.write_str(&labels.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PermittedId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ForbiddenId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ThreadError {
    #[error("no matching thread for {0}")]
    MatchFailure(String),
    #[error("sign constraints are unsatisfiable at arrow {0}")]
    InconsistentSigns(String),
    #[error("trivial thread at isolated vertex {0} carries its signs in the orientation tag")]
    IsolatedVertex(String),
}

/// All threads of a gentle presentation.
///
/// Permitted threads are ordered non-trivial first (by first arrow id), then
/// trivial (by vertex id); forbidden threads likewise. Arrows lying on a
/// cycle of relations belong to no forbidden thread and are reported in
/// `relation_cycles` instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreadSet {
    pub permitted: Vec<Thread>,
    pub forbidden: Vec<Thread>,
    /// Directed cycles all of whose consecutive compositions are relations,
    /// each starting at its least arrow id.
    pub relation_cycles: Vec<Vec<ArrowId>>,
    permitted_by_first: HashMap<ArrowId, PermittedId>,
    permitted_trivial: HashMap<(VertexId, Option<Orient>), PermittedId>,
    forbidden_by_last: HashMap<ArrowId, ForbiddenId>,
    forbidden_trivial: HashMap<(VertexId, Option<Orient>), ForbiddenId>,
}

fn isolated(p: &GentlePresentation) -> bool {
    p.quiver().arrow_count() == 0
}

impl ThreadSet {
    pub(crate) fn enumerate(p: &GentlePresentation) -> ThreadSet {
        let q = p.quiver();
        let mut permitted = Vec::new();
        let mut forbidden = Vec::new();

        for a in q.arrows().filter(|&a| p.perm_pred(a).is_none()) {
            permitted.push(Thread::path(
                ThreadKind::Permitted,
                chain(a, |x| p.perm_succ(x)),
            ));
        }
        let mut on_chain = vec![false; q.arrow_count()];
        for a in q.arrows().filter(|&a| p.forb_pred(a).is_none()) {
            let arrows = chain(a, |x| p.forb_succ(x));
            for &x in &arrows {
                on_chain[x.0] = true;
            }
            forbidden.push(Thread::path(ThreadKind::Forbidden, arrows));
        }
        let mut relation_cycles = Vec::new();
        for a in q.arrows() {
            if on_chain[a.0] {
                continue;
            }
            let cycle = chain(a, |x| p.forb_succ(x).filter(|&y| y != a));
            for &x in &cycle {
                on_chain[x.0] = true;
            }
            relation_cycles.push(cycle);
        }

        if isolated(p) {
            let v = VertexId(0);
            for o in [Orient::Plus, Orient::Minus] {
                permitted.push(Thread::trivial(ThreadKind::Permitted, v, Some(o)));
                forbidden.push(Thread::trivial(ThreadKind::Forbidden, v, Some(o)));
            }
        } else {
            for v in q.vertices() {
                let out = q.outgoing(v);
                let inc = q.incoming(v);
                if out.len() > 1 || inc.len() > 1 {
                    continue;
                }
                let through = inc
                    .first()
                    .zip(out.first())
                    .map(|(&b, &g)| p.is_relation(g, b));
                if through != Some(true) {
                    permitted.push(Thread::trivial(ThreadKind::Permitted, v, None));
                }
                if through != Some(false) {
                    forbidden.push(Thread::trivial(ThreadKind::Forbidden, v, None));
                }
            }
        }

        let mut set = ThreadSet {
            permitted,
            forbidden,
            relation_cycles,
            permitted_by_first: HashMap::new(),
            permitted_trivial: HashMap::new(),
            forbidden_by_last: HashMap::new(),
            forbidden_trivial: HashMap::new(),
        };
        for (i, t) in set.permitted.iter().enumerate() {
            match t.first() {
                Some(a) => set.permitted_by_first.insert(a, PermittedId(i)),
                None => set
                    .permitted_trivial
                    .insert((t.at.unwrap(), t.orient), PermittedId(i)),
            };
        }
        for (i, t) in set.forbidden.iter().enumerate() {
            match t.last() {
                Some(a) => set.forbidden_by_last.insert(a, ForbiddenId(i)),
                None => set
                    .forbidden_trivial
                    .insert((t.at.unwrap(), t.orient), ForbiddenId(i)),
            };
        }
        set
    }

    pub fn permitted(&self, id: PermittedId) -> &Thread {
        &self.permitted[id.0]
    }

    pub fn forbidden(&self, id: ForbiddenId) -> &Thread {
        &self.forbidden[id.0]
    }

    pub fn permitted_ids(&self) -> impl ExactSizeIterator<Item = PermittedId> {
        (0..self.permitted.len()).map(PermittedId)
    }

    pub fn forbidden_ids(&self) -> impl ExactSizeIterator<Item = ForbiddenId> {
        (0..self.forbidden.len()).map(ForbiddenId)
    }

    /// Non-trivial permitted threads, in canonical order.
    pub fn nontrivial_permitted(&self) -> impl Iterator<Item = &Thread> {
        self.permitted.iter().filter(|t| !t.is_trivial())
    }

    pub fn permitted_starting_with(&self, a: ArrowId) -> Option<PermittedId> {
        self.permitted_by_first.get(&a).copied()
    }

    pub fn forbidden_ending_with(&self, a: ArrowId) -> Option<ForbiddenId> {
        self.forbidden_by_last.get(&a).copied()
    }

    pub fn trivial_permitted_at(&self, v: VertexId) -> Option<PermittedId> {
        self.permitted_trivial.get(&(v, None)).copied()
    }

    pub fn trivial_forbidden_at(&self, v: VertexId) -> Option<ForbiddenId> {
        self.forbidden_trivial.get(&(v, None)).copied()
    }
}

fn chain(start: ArrowId, next: impl Fn(ArrowId) -> Option<ArrowId>) -> Vec<ArrowId> {
    let mut out = vec![start];
    let mut cur = start;
    while let Some(n) = next(cur) {
        out.push(n);
        cur = n;
    }
    out
}

/// The set of all permitted threads.
pub fn permitted_threads(p: &GentlePresentation) -> &[Thread] {
    &p.threads().permitted
}

/// Forbidden threads, plus the relation cycles whose arrows they omit.
pub fn forbidden_threads(p: &GentlePresentation) -> (&[Thread], &[Vec<ArrowId>]) {
    let t = p.threads();
    (&t.forbidden, &t.relation_cycles)
}

/// The forbidden thread ending at the end of `h`, on the opposite side.
pub fn match_end(p: &GentlePresentation, h: PermittedId) -> Result<ForbiddenId, ThreadError> {
    let q = p.quiver();
    let set = p.threads();
    let thread = set.permitted(h);
    let fail = || ThreadError::MatchFailure(thread.display(q).to_string());
    if let Some(o) = thread.orient {
        return set
            .forbidden_trivial
            .get(&(thread.at.unwrap(), Some(o.flip())))
            .copied()
            .ok_or_else(fail);
    }
    let v = thread.end(q);
    let partner = match thread.last() {
        Some(a) => q.incoming(v).into_iter().find(|&b| b != a),
        None => q.incoming(v).first().copied(),
    };
    match partner {
        Some(b) => set.forbidden_ending_with(b),
        None => set.trivial_forbidden_at(v),
    }
    .ok_or_else(fail)
}

/// The permitted thread starting at the start of `f`, on the opposite side.
pub fn match_start(p: &GentlePresentation, f: ForbiddenId) -> Result<PermittedId, ThreadError> {
    let q = p.quiver();
    let set = p.threads();
    let thread = set.forbidden(f);
    let fail = || ThreadError::MatchFailure(thread.display(q).to_string());
    if let Some(o) = thread.orient {
        return set
            .permitted_trivial
            .get(&(thread.at.unwrap(), Some(o)))
            .copied()
            .ok_or_else(fail);
    }
    let v = thread.start(q);
    let partner = match thread.first() {
        Some(a) => q.outgoing(v).into_iter().find(|&b| b != a),
        None => q.outgoing(v).first().copied(),
    };
    match partner {
        Some(b) => set.permitted_starting_with(b),
        None => set.trivial_permitted_at(v),
    }
    .ok_or_else(fail)
}

/// Values of the two sign functions on every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignAssignment {
    pub sigma: Vec<Sign>,
    pub eps: Vec<Sign>,
}

impl SignAssignment {
    pub fn sigma(&self, a: ArrowId) -> Sign {
        self.sigma[a.0]
    }

    pub fn eps(&self, a: ArrowId) -> Sign {
        self.eps[a.0]
    }

    /// Checks the three defining constraints; returns the first offending
    /// arrow pair.
    pub fn check(&self, p: &GentlePresentation) -> Result<(), (ArrowId, ArrowId)> {
        for (x, y, must_differ) in sign_constraints(p) {
            let (vx, vy) = (self.value(x), self.value(y));
            if must_differ && vx == vy {
                return Err((x.arrow(), y.arrow()));
            }
        }
        Ok(())
    }

    fn value(&self, var: SignVar) -> Sign {
        match var {
            SignVar::Sigma(a) => self.sigma(a),
            SignVar::Eps(a) => self.eps(a),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum SignVar {
    Sigma(ArrowId),
    Eps(ArrowId),
}

impl SignVar {
    fn index(self) -> usize {
        match self {
            SignVar::Sigma(a) => 2 * a.0,
            SignVar::Eps(a) => 2 * a.0 + 1,
        }
    }

    fn arrow(self) -> ArrowId {
        match self {
            SignVar::Sigma(a) | SignVar::Eps(a) => a,
        }
    }
}

/// Pairs of sign variables that must take opposite values.
fn sign_constraints(p: &GentlePresentation) -> Vec<(SignVar, SignVar, bool)> {
    let q = p.quiver();
    let mut out = Vec::new();
    for v in q.vertices() {
        if let [b1, b2] = q.outgoing(v)[..] {
            out.push((SignVar::Sigma(b1), SignVar::Sigma(b2), true));
        }
        if let [g1, g2] = q.incoming(v)[..] {
            out.push((SignVar::Eps(g1), SignVar::Eps(g2), true));
        }
    }
    for b in q.arrows() {
        if let Some(g) = p.perm_succ(b) {
            out.push((SignVar::Sigma(g), SignVar::Eps(b), true));
        }
    }
    out
}

/// Union-find over sign variables, tracking parity to the root.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut root = x;
        while self.parent[root] != root {
            path.push(root);
            root = self.parent[root];
        }
        // Compress, accumulating parity from the top of the path down.
        let mut acc = 0;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { 0 } else { self.parity[x] })
    }

    /// Records `value(x) xor value(y) == parity`; false on contradiction.
    fn union(&mut self, x: usize, y: usize, parity: u8) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == parity;
        }
        self.parent[rx] = ry;
        self.parity[rx] = px ^ py ^ parity;
        true
    }
}

/// A sign assignment satisfying the three constraint families. Free choices
/// are fixed to `+1`, visiting `sigma(a), eps(a)` in arrow label order.
pub fn assign_signs(p: &GentlePresentation) -> Result<SignAssignment, ThreadError> {
    let n = p.quiver().arrow_count();
    let mut uf = ParityUnionFind::new(2 * n);
    for (x, y, _) in sign_constraints(p) {
        if !uf.union(x.index(), y.index(), 1) {
            return Err(ThreadError::InconsistentSigns(
                p.quiver().arrow_label(x.arrow()).to_string(),
            ));
        }
    }
    // The root's value is decided by the first variable of its class.
    let mut root_value: HashMap<usize, u8> = HashMap::new();
    let mut values = vec![0u8; 2 * n];
    let q = p.quiver();
    let mut by_label: Vec<ArrowId> = q.arrows().collect();
    by_label.sort_by_key(|&a| q.arrow_label(a));
    for i in by_label.into_iter().flat_map(|a| [2 * a.0, 2 * a.0 + 1]) {
        let (root, parity) = uf.find(i);
        let rv = *root_value.entry(root).or_insert(parity);
        values[i] = rv ^ parity;
    }
    let sign = |bit: u8| if bit == 0 { 1 } else { -1 };
    Ok(SignAssignment {
        sigma: (0..n).map(|a| sign(values[2 * a])).collect(),
        eps: (0..n).map(|a| sign(values[2 * a + 1])).collect(),
    })
}

/// `(sigma, eps)` of a thread.
///
/// Trivial threads take their signs from an incident arrow, using an
/// outgoing arrow when one exists and the incoming arrow otherwise.
pub fn thread_signs(
    p: &GentlePresentation,
    sa: &SignAssignment,
    t: &Thread,
) -> Result<(Sign, Sign), ThreadError> {
    let q = p.quiver();
    if let (Some(first), Some(last)) = (t.first(), t.last()) {
        return Ok((sa.sigma(first), sa.eps(last)));
    }
    let v = t.at.expect("trivial thread has a vertex");
    let out = q.outgoing(v).first().copied();
    let inc = q.incoming(v).first().copied();
    match (t.kind, out, inc) {
        (_, None, None) => Err(ThreadError::IsolatedVertex(q.vertex_label(v).to_string())),
        (ThreadKind::Permitted, Some(g), _) => Ok((-sa.sigma(g), sa.sigma(g))),
        (ThreadKind::Permitted, None, Some(b)) => Ok((sa.eps(b), -sa.eps(b))),
        (ThreadKind::Forbidden, Some(g), _) => Ok((-sa.sigma(g), -sa.sigma(g))),
        (ThreadKind::Forbidden, None, Some(b)) => Ok((-sa.eps(b), -sa.eps(b))),
    }
}

/// Matched pairs whose signs are not opposite: `eps(match_end(H)) = -eps(H)`
/// and `sigma(match_start(F)) = -sigma(F)`, checked where the partner is
/// non-trivial.
pub fn sign_opposition_failures(
    p: &GentlePresentation,
    sa: &SignAssignment,
) -> Result<Vec<String>, ThreadError> {
    let set = p.threads();
    let q = p.quiver();
    let mut out = Vec::new();
    for h in set.permitted_ids() {
        let f = match_end(p, h)?;
        let (ht, ft) = (set.permitted(h), set.forbidden(f));
        if !ft.is_trivial() && thread_signs(p, sa, ft)?.1 != -thread_signs(p, sa, ht)?.1 {
            out.push(format!("end of {} / {}", ht.display(q), ft.display(q)));
        }
    }
    for f in set.forbidden_ids() {
        let h = match_start(p, f)?;
        let (ht, ft) = (set.permitted(h), set.forbidden(f));
        if !ht.is_trivial() && thread_signs(p, sa, ht)?.0 != -thread_signs(p, sa, ft)?.0 {
            out.push(format!("start of {} / {}", ft.display(q), ht.display(q)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::build_presentation;

    fn names(p: &GentlePresentation, threads: &[Thread]) -> Vec<String> {
        let mut v: Vec<String> = threads
            .iter()
            .map(|t| t.display(p.quiver()).to_string())
            .collect();
        v.sort();
        v
    }

    fn sorted(items: &[&str]) -> Vec<String> {
        let mut v: Vec<String> = items.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    fn arrow(p: &GentlePresentation, label: &str) -> ArrowId {
        p.quiver().arrow_by_label(label).unwrap()
    }

    fn permitted_named(p: &GentlePresentation, name: &str) -> PermittedId {
        let set = p.threads();
        set.permitted_ids()
            .find(|&id| set.permitted(id).display(p.quiver()).to_string() == name)
            .unwrap_or_else(|| panic!("no permitted thread {name}"))
    }

    fn forbidden_named(p: &GentlePresentation, name: &str) -> ForbiddenId {
        let set = p.threads();
        set.forbidden_ids()
            .find(|&id| set.forbidden(id).display(p.quiver()).to_string() == name)
            .unwrap_or_else(|| panic!("no forbidden thread {name}"))
    }

    #[test]
    fn signed_example_permitted_threads() {
        let p = build_presentation(&fixtures::signed_example()).unwrap();
        assert_eq!(
            names(&p, permitted_threads(&p)),
            sorted(&[
                "a1",
                "a4 a10 a9 a2",
                "a6 a5 a3",
                "a8",
                "a7",
                "1_v1",
                "1_v7",
                "1_v5"
            ])
        );
    }

    #[test]
    fn signed_example_listed_signs_are_valid() {
        let p = build_presentation(&fixtures::signed_example()).unwrap();
        let plus_sigma = ["a1", "a4", "a6", "a8", "a9", "a10"];
        let plus_eps = ["a3", "a7", "a8"];
        let q = p.quiver();
        let sa = SignAssignment {
            sigma: q
                .arrows()
                .map(|a| {
                    if plus_sigma.contains(&q.arrow_label(a)) {
                        1
                    } else {
                        -1
                    }
                })
                .collect(),
            eps: q
                .arrows()
                .map(|a| {
                    if plus_eps.contains(&q.arrow_label(a)) {
                        1
                    } else {
                        -1
                    }
                })
                .collect(),
        };
        assert_eq!(sa.check(&p), Ok(()));
        let h = p.threads().permitted(permitted_named(&p, "a6 a5 a3"));
        assert_eq!(thread_signs(&p, &sa, h), Ok((-1, -1)));
        let h = p.threads().permitted(permitted_named(&p, "a8"));
        assert_eq!(thread_signs(&p, &sa, h), Ok((1, 1)));
    }

    #[test]
    fn computed_signs_are_valid() {
        for raw in [
            fixtures::signed_example(),
            fixtures::running_example(),
            fixtures::pair_b(),
        ] {
            let p = build_presentation(&raw).unwrap();
            let sa = assign_signs(&p).unwrap();
            assert_eq!(sa.check(&p), Ok(()));
        }
    }

    #[test]
    fn a2_signs_default_to_plus() {
        let p = build_presentation(&fixtures::a2()).unwrap();
        let sa = assign_signs(&p).unwrap();
        assert_eq!((sa.sigma.clone(), sa.eps.clone()), (vec![1], vec![1]));
        let hv2 = p.threads().permitted(permitted_named(&p, "1_v2"));
        let a = arrow(&p, "a");
        assert_eq!(thread_signs(&p, &sa, hv2), Ok((sa.eps(a), -sa.eps(a))));
    }

    #[test]
    fn kronecker_signs_are_forced_apart() {
        let p = build_presentation(&fixtures::kronecker()).unwrap();
        let sa = assign_signs(&p).unwrap();
        let (a, b) = (arrow(&p, "a"), arrow(&p, "b"));
        assert_eq!(sa.sigma(a), -sa.sigma(b));
        assert_eq!(sa.eps(a), -sa.eps(b));
    }

    #[test]
    fn isolated_vertex_threads() {
        let p = build_presentation(&fixtures::single_vertex()).unwrap();
        assert_eq!(names(&p, permitted_threads(&p)), sorted(&["1_v+", "1_v-"]));
        let sa = assign_signs(&p).unwrap();
        let t = &permitted_threads(&p)[0];
        assert!(matches!(
            thread_signs(&p, &sa, t),
            Err(ThreadError::IsolatedVertex(_))
        ));
    }

    #[test]
    fn pair_a_threads() {
        let p = build_presentation(&fixtures::pair_a()).unwrap();
        assert_eq!(
            names(&p, permitted_threads(&p)),
            sorted(&["a4 a1", "a3 a2", "a5"])
        );
    }

    #[test]
    fn running_forbidden_threads() {
        let p = build_presentation(&fixtures::running_example()).unwrap();
        let (forbidden, cycles) = forbidden_threads(&p);
        assert!(cycles.is_empty());
        assert_eq!(
            names(&p, forbidden),
            sorted(&["a9", "a3", "a8 a1 a4 a2", "a7", "a6 a5", "p_b", "p_d"])
        );
    }

    #[test]
    fn a2_forbidden_threads() {
        let p = build_presentation(&fixtures::a2()).unwrap();
        assert_eq!(
            names(&p, forbidden_threads(&p).0),
            sorted(&["a", "p_v1", "p_v2"])
        );
    }

    #[test]
    fn full_two_cycle_has_only_trivial_forbidden_threads() {
        let p = build_presentation(&fixtures::two_cycle_full()).unwrap();
        let (forbidden, cycles) = forbidden_threads(&p);
        assert_eq!(names(&p, forbidden), sorted(&["p_u", "p_v"]));
        assert_eq!(cycles, &[vec![arrow(&p, "g"), arrow(&p, "d")]]);
    }

    #[test]
    fn running_matching() {
        let p = build_presentation(&fixtures::running_example()).unwrap();
        let set = p.threads();
        let q = p.quiver();
        let end = |h: &str| {
            set.forbidden(match_end(&p, permitted_named(&p, h)).unwrap())
                .display(q)
                .to_string()
        };
        let start = |f: &str| {
            set.permitted(match_start(&p, forbidden_named(&p, f)).unwrap())
                .display(q)
                .to_string()
        };
        assert_eq!(end("a7 a6"), "a9");
        assert_eq!(end("1_g"), "a3");
        assert_eq!(end("a5 a4"), "p_b");
        assert_eq!(start("a3"), "a5 a4");
        assert_eq!(start("a8 a1 a4 a2"), "a8");
        assert_eq!(start("p_b"), "a7 a6");
    }

    #[test]
    fn a2_matching() {
        let p = build_presentation(&fixtures::a2()).unwrap();
        let set = p.threads();
        let q = p.quiver();
        let fid = match_end(&p, permitted_named(&p, "a")).unwrap();
        assert_eq!(set.forbidden(fid).display(q).to_string(), "p_v2");
        let hid = match_start(&p, forbidden_named(&p, "p_v1")).unwrap();
        assert_eq!(set.permitted(hid).display(q).to_string(), "a");
    }

    #[test]
    fn parity_union_find_detects_odd_cycles() {
        let mut uf = ParityUnionFind::new(3);
        assert!(uf.union(0, 1, 1));
        assert!(uf.union(1, 2, 1));
        assert!(!uf.union(0, 2, 1));
        assert!(uf.union(0, 2, 0));
    }
}
