//! Independent recomputation of the invariant from the repetitive algebra.
//!
//! The expansion quiver has a copy `v[z]` of every vertex and `a[z]` of
//! every arrow for each integer `z`, plus one connection arrow per
//! non-trivial permitted thread `p_i` running from `e(p_i)[z+1]` to
//! `s(p_i)[z]`. The arrows of `p_i` and its connection arrows form an
//! infinite *line*; a composition in the expansion is relation-free exactly
//! when the two arrows are consecutive on a line. A *full path* is a run of
//! `l(p_i) + 1` consecutive line arrows; it goes from some `x[z+1]` to
//! `x[z]`.
//!
//! Non-trivial permitted threads of the quotient by full paths are full
//! paths minus their final arrow, so each is named by that deleted arrow:
//! deleting a connection arrow leaves a copy `h[z]` of a thread of A,
//! deleting a regular arrow `a[z]` leaves the thread identified with
//! `a[z]^-1`. Trivial threads sit at transition vertices.
//!
//! Everything here is computed on a finite window of the expansion; leaving
//! the window is reported as [`OracleError::WindowExhausted`]. This module
//! deliberately does not use the matching rules of [`crate::threads`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::phi::PhiInvariant;
use crate::quiver::{ArrowId, GentlePresentation, VertexId};
use crate::threads::Orient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WindowArrowKind {
    Regular(ArrowId),
    /// Connection arrow of the `i`-th non-trivial permitted thread.
    Connection(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WindowArrow {
    pub kind: WindowArrowKind,
    pub z: i64,
}

impl WindowArrow {
    fn shifted(self, by: i64) -> WindowArrow {
        WindowArrow {
            kind: self.kind,
            z: self.z + by,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WindowVertex {
    pub vertex: VertexId,
    pub z: i64,
}

/// A permitted thread of the quotient of the repetitive algebra by its
/// full paths, up to the shift `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HatThread {
    /// `1_{v[z]}` at a transition vertex. The tag is only used at the
    /// vertex of the one-vertex algebra.
    TrivialAt {
        vertex: VertexId,
        z: i64,
        orient: Option<Orient>,
    },
    /// `h[z]` for the `thread`-th non-trivial permitted thread `h` of A.
    Copy { thread: usize, z: i64 },
    /// The thread identified with `arrow[z]^-1`.
    ArrowInverse { arrow: ArrowId, z: i64 },
}

/// A [`HatThread`] with its shift forgotten.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HatClass {
    TrivialAt(VertexId, Option<Orient>),
    Copy(usize),
    ArrowInverse(ArrowId),
}

impl HatThread {
    pub fn z(self) -> i64 {
        match self {
            HatThread::TrivialAt { z, .. }
            | HatThread::Copy { z, .. }
            | HatThread::ArrowInverse { z, .. } => z,
        }
    }

    pub fn class(self) -> HatClass {
        match self {
            HatThread::TrivialAt { vertex, orient, .. } => HatClass::TrivialAt(vertex, orient),
            HatThread::Copy { thread, .. } => HatClass::Copy(thread),
            HatThread::ArrowInverse { arrow, .. } => HatClass::ArrowInverse(arrow),
        }
    }

    /// The Nakayama shift applied `by` times.
    pub fn shifted(self, by: i64) -> HatThread {
        match self {
            HatThread::TrivialAt { vertex, z, orient } => HatThread::TrivialAt {
                vertex,
                z: z + by,
                orient,
            },
            HatThread::Copy { thread, z } => HatThread::Copy { thread, z: z + by },
            HatThread::ArrowInverse { arrow, z } => HatThread::ArrowInverse { arrow, z: z + by },
        }
    }

    /// Copies of threads of A, trivial or not; these contribute to `n`.
    pub fn is_string_thread(self) -> bool {
        !matches!(self, HatThread::ArrowInverse { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("window depth must be at least 1, got {0}")]
    DepthTooSmall(i64),
    #[error("computation left the expansion window of depth {0}")]
    WindowExhausted(i64),
    #[error("vertex {0:?} is neither a transition nor a crossing vertex")]
    MalformedVertex(WindowVertex),
    #[error("orbit of {0:?} does not return")]
    NoReturn(HatThread),
    #[error("orbit bookkeeping covers {found} of {expected} slice elements")]
    Partition { found: usize, expected: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VertexKind {
    Transition {
        incoming: WindowArrow,
        outgoing: WindowArrow,
    },
    Crossing {
        incoming: [WindowArrow; 2],
        outgoing: [WindowArrow; 2],
    },
    Isolated,
}

/// A finite piece of the expansion: arrows of slices `0..=depth` and the
/// vertices they touch.
#[derive(Clone, Debug)]
pub struct ExpansionWindow {
    depth: i64,
    /// The non-trivial permitted threads of A, arrows in path order.
    lines: Vec<Vec<ArrowId>>,
    /// For each arrow of A: its line and 0-based position on it.
    position: Vec<(usize, usize)>,
    vertex_count: usize,
    arrow_ends: HashMap<WindowArrow, (WindowVertex, WindowVertex)>,
    incoming: HashMap<WindowVertex, Vec<WindowArrow>>,
    outgoing: HashMap<WindowVertex, Vec<WindowArrow>>,
}

/// Maximal relation-free paths of A, computed directly from the relations.
fn lines_of(p: &GentlePresentation) -> Vec<Vec<ArrowId>> {
    let q = p.quiver();
    q.arrows()
        .filter(|&a| p.perm_pred(a).is_none())
        .map(|start| {
            let mut line = vec![start];
            while let Some(next) = p.perm_succ(*line.last().unwrap()) {
                line.push(next);
            }
            line
        })
        .collect()
}

/// Builds the window covering arrow slices `0..=depth`.
pub fn build_window(p: &GentlePresentation, depth: i64) -> Result<ExpansionWindow, OracleError> {
    if depth < 1 {
        return Err(OracleError::DepthTooSmall(depth));
    }
    let q = p.quiver();
    let lines = lines_of(p);
    let mut position = vec![(usize::MAX, 0); q.arrow_count()];
    for (i, line) in lines.iter().enumerate() {
        for (j, &a) in line.iter().enumerate() {
            position[a.0] = (i, j);
        }
    }
    let mut w = ExpansionWindow {
        depth,
        lines,
        position,
        vertex_count: q.vertex_count(),
        arrow_ends: HashMap::new(),
        incoming: HashMap::new(),
        outgoing: HashMap::new(),
    };
    for z in 0..=depth {
        for v in q.vertices() {
            let x = WindowVertex { vertex: v, z };
            w.incoming.entry(x).or_default();
            w.outgoing.entry(x).or_default();
        }
        let mut slice: Vec<(WindowArrow, WindowVertex, WindowVertex)> = q
            .arrows()
            .map(|a| {
                (
                    WindowArrow {
                        kind: WindowArrowKind::Regular(a),
                        z,
                    },
                    WindowVertex {
                        vertex: q.source(a),
                        z,
                    },
                    WindowVertex {
                        vertex: q.target(a),
                        z,
                    },
                )
            })
            .collect();
        for (i, line) in w.lines.iter().enumerate() {
            let start = q.source(line[0]);
            let end = q.target(*line.last().unwrap());
            slice.push((
                WindowArrow {
                    kind: WindowArrowKind::Connection(i),
                    z,
                },
                WindowVertex {
                    vertex: end,
                    z: z + 1,
                },
                WindowVertex { vertex: start, z },
            ));
        }
        for (arrow, s, t) in slice {
            w.arrow_ends.insert(arrow, (s, t));
            w.outgoing.entry(s).or_default().push(arrow);
            w.incoming.entry(t).or_default().push(arrow);
        }
    }
    Ok(w)
}

impl ExpansionWindow {
    pub fn depth(&self) -> i64 {
        self.depth
    }

    /// Number of non-trivial permitted threads of A.
    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn line(&self, i: usize) -> &[ArrowId] {
        &self.lines[i]
    }

    /// All window arrows of slice `z`.
    pub fn slice_arrows(&self, z: i64) -> Vec<WindowArrow> {
        let mut v: Vec<WindowArrow> = self
            .arrow_ends
            .keys()
            .copied()
            .filter(|a| a.z == z)
            .collect();
        v.sort();
        v
    }

    pub fn contains(&self, a: WindowArrow) -> bool {
        self.arrow_ends.contains_key(&a)
    }

    fn exhausted(&self) -> OracleError {
        OracleError::WindowExhausted(self.depth)
    }

    pub fn source(&self, a: WindowArrow) -> Result<WindowVertex, OracleError> {
        self.arrow_ends
            .get(&a)
            .map(|e| e.0)
            .ok_or_else(|| self.exhausted())
    }

    pub fn target(&self, a: WindowArrow) -> Result<WindowVertex, OracleError> {
        self.arrow_ends
            .get(&a)
            .map(|e| e.1)
            .ok_or_else(|| self.exhausted())
    }

    fn line_of(&self, kind: WindowArrowKind) -> usize {
        match kind {
            WindowArrowKind::Regular(a) => self.position[a.0].0,
            WindowArrowKind::Connection(i) => i,
        }
    }

    /// The next arrow on the same line, whether or not it is in the window.
    fn next_on_line(&self, a: WindowArrow) -> WindowArrow {
        match a.kind {
            WindowArrowKind::Connection(i) => WindowArrow {
                kind: WindowArrowKind::Regular(self.lines[i][0]),
                z: a.z,
            },
            WindowArrowKind::Regular(x) => {
                let (i, j) = self.position[x.0];
                match self.lines[i].get(j + 1) {
                    Some(&y) => WindowArrow {
                        kind: WindowArrowKind::Regular(y),
                        z: a.z,
                    },
                    None => WindowArrow {
                        kind: WindowArrowKind::Connection(i),
                        z: a.z - 1,
                    },
                }
            }
        }
    }

    fn prev_on_line(&self, a: WindowArrow) -> WindowArrow {
        match a.kind {
            WindowArrowKind::Connection(i) => WindowArrow {
                kind: WindowArrowKind::Regular(*self.lines[i].last().unwrap()),
                z: a.z + 1,
            },
            WindowArrowKind::Regular(x) => {
                let (i, j) = self.position[x.0];
                if j == 0 {
                    WindowArrow {
                        kind: WindowArrowKind::Connection(i),
                        z: a.z,
                    }
                } else {
                    WindowArrow {
                        kind: WindowArrowKind::Regular(self.lines[i][j - 1]),
                        z: a.z,
                    }
                }
            }
        }
    }

    /// `second` after `first` is a zero relation of the expansion: the
    /// arrows compose but are not consecutive on a line.
    pub fn is_relation(
        &self,
        second: WindowArrow,
        first: WindowArrow,
    ) -> Result<bool, OracleError> {
        Ok(self.target(first)? == self.source(second)? && self.next_on_line(first) != second)
    }

    /// Length of the threads on the line through `a`; full paths are one
    /// arrow longer.
    fn thread_len(&self, a: WindowArrow) -> usize {
        self.lines[self.line_of(a.kind)].len()
    }

    /// The full path starting with `a`.
    pub fn full_path_from(&self, a: WindowArrow) -> Result<Vec<WindowArrow>, OracleError> {
        let mut path = vec![a];
        for _ in 0..self.thread_len(a) {
            let next = self.next_on_line(*path.last().unwrap());
            if !self.contains(next) {
                return Err(self.exhausted());
            }
            path.push(next);
        }
        Ok(path)
    }

    fn classify(&self, x: WindowVertex) -> Result<VertexKind, OracleError> {
        // Slice-0 vertices miss their outgoing connection arrows and the top
        // layer misses its regular arrows.
        if x.z < 1 || x.z > self.depth || x.vertex.0 >= self.vertex_count {
            return Err(self.exhausted());
        }
        let inc = &self.incoming[&x];
        let out = &self.outgoing[&x];
        match (&inc[..], &out[..]) {
            ([], []) => Ok(VertexKind::Isolated),
            ([i], [o]) if self.next_on_line(*i) == *o => Ok(VertexKind::Transition {
                incoming: *i,
                outgoing: *o,
            }),
            ([i1, i2], [o1, o2]) => Ok(VertexKind::Crossing {
                incoming: [*i1, *i2],
                outgoing: [*o1, *o2],
            }),
            _ => Err(OracleError::MalformedVertex(x)),
        }
    }

    /// Is `x` a transition vertex?
    pub fn is_transition(&self, x: WindowVertex) -> Result<bool, OracleError> {
        Ok(matches!(self.classify(x)?, VertexKind::Transition { .. }))
    }

    fn cut_at(&self, d: WindowArrow) -> HatThread {
        match d.kind {
            WindowArrowKind::Connection(i) => HatThread::Copy {
                thread: i,
                z: d.z + 1,
            },
            WindowArrowKind::Regular(a) => HatThread::ArrowInverse { arrow: a, z: d.z },
        }
    }

    /// The final arrow of the full path this thread was cut from.
    fn deleted(&self, h: HatThread) -> Option<WindowArrow> {
        match h {
            HatThread::TrivialAt { .. } => None,
            HatThread::Copy { thread, z } => Some(WindowArrow {
                kind: WindowArrowKind::Connection(thread),
                z: z - 1,
            }),
            HatThread::ArrowInverse { arrow, z } => Some(WindowArrow {
                kind: WindowArrowKind::Regular(arrow),
                z,
            }),
        }
    }

    /// The arrows of a non-trivial thread, in path order.
    pub fn thread_arrows(&self, h: HatThread) -> Option<Vec<WindowArrow>> {
        let d = self.deleted(h)?;
        let mut arrows = Vec::new();
        let mut cur = d;
        for _ in 0..self.thread_len(d) {
            cur = self.prev_on_line(cur);
            arrows.push(cur);
        }
        arrows.reverse();
        Some(arrows)
    }

    /// The non-trivial thread whose first arrow is `a`.
    fn thread_starting_with(&self, a: WindowArrow) -> Result<HatThread, OracleError> {
        let mut cur = a;
        for _ in 0..self.thread_len(a) {
            if !self.contains(cur) {
                return Err(self.exhausted());
            }
            cur = self.next_on_line(cur);
        }
        Ok(self.cut_at(cur))
    }

    /// The non-trivial thread whose last arrow is `a`.
    fn thread_ending_with(&self, a: WindowArrow) -> Result<HatThread, OracleError> {
        if !self.contains(a) {
            return Err(self.exhausted());
        }
        Ok(self.cut_at(self.next_on_line(a)))
    }

    fn trivial(x: WindowVertex) -> HatThread {
        HatThread::TrivialAt {
            vertex: x.vertex,
            z: x.z,
            orient: None,
        }
    }

    /// `v(b)`: the trivial thread at `s(b)` if that is a transition vertex,
    /// else the thread starting at `s(b)` with the other outgoing arrow.
    pub fn frak_v(&self, b: WindowArrow) -> Result<HatThread, OracleError> {
        let x = self.source(b)?;
        match self.classify(x)? {
            VertexKind::Transition { .. } => Ok(Self::trivial(x)),
            VertexKind::Crossing { outgoing, .. } => {
                let other = if outgoing[0] == b {
                    outgoing[1]
                } else {
                    outgoing[0]
                };
                self.thread_starting_with(other)
            }
            VertexKind::Isolated => Err(OracleError::MalformedVertex(x)),
        }
    }

    /// `u(b)`: the trivial thread at `e(b)` if that is a transition vertex,
    /// else the thread ending at `e(b)` with the other incoming arrow.
    pub fn frak_u(&self, b: WindowArrow) -> Result<HatThread, OracleError> {
        let x = self.target(b)?;
        match self.classify(x)? {
            VertexKind::Transition { .. } => Ok(Self::trivial(x)),
            VertexKind::Crossing { incoming, .. } => {
                let other = if incoming[0] == b {
                    incoming[1]
                } else {
                    incoming[0]
                };
                self.thread_ending_with(other)
            }
            VertexKind::Isolated => Err(OracleError::MalformedVertex(x)),
        }
    }

    /// `p(t)`: the non-trivial thread starting at the transition vertex `t`.
    pub fn frak_p(&self, t: WindowVertex) -> Result<HatThread, OracleError> {
        match self.classify(t)? {
            VertexKind::Transition { outgoing, .. } => self.thread_starting_with(outgoing),
            _ => Err(OracleError::MalformedVertex(t)),
        }
    }

    /// `i(t)`: the non-trivial thread ending at the transition vertex `t`.
    pub fn frak_i(&self, t: WindowVertex) -> Result<HatThread, OracleError> {
        match self.classify(t)? {
            VertexKind::Transition { incoming, .. } => self.thread_ending_with(incoming),
            _ => Err(OracleError::MalformedVertex(t)),
        }
    }

    /// The cosyzygy `Omega^-1` on permitted threads:
    /// `1_{v[z]} -> p(v[z+1])`, and `H -> v(nu(d))` for a non-trivial `H`
    /// cut from a full path with final arrow `d`.
    ///
    /// At the vertex of the one-vertex algebra the two tagged trivial
    /// threads are exchanged with a shift.
    pub fn omega_inverse(&self, h: HatThread) -> Result<HatThread, OracleError> {
        match h {
            HatThread::TrivialAt {
                vertex,
                z,
                orient: Some(o),
            } => Ok(HatThread::TrivialAt {
                vertex,
                z: z + 1,
                orient: Some(o.flip()),
            }),
            HatThread::TrivialAt {
                vertex,
                z,
                orient: None,
            } => self.frak_p(WindowVertex { vertex, z: z + 1 }),
            _ => self.frak_v(self.deleted(h).expect("non-trivial").shifted(1)),
        }
    }

    /// The translation: `tau(v(b)) = u(b)` and `tau(p(t)) = i(nu^-1 t)`.
    /// Tagged trivial threads are shifted down.
    pub fn tau(&self, h: HatThread) -> Result<HatThread, OracleError> {
        match h {
            HatThread::TrivialAt {
                vertex,
                z,
                orient: Some(o),
            } => Ok(HatThread::TrivialAt {
                vertex,
                z: z - 1,
                orient: Some(o),
            }),
            HatThread::TrivialAt {
                vertex,
                z,
                orient: None,
            } => {
                // A transition vertex x gives 1_x = v(b) for its outgoing b.
                let x = WindowVertex { vertex, z };
                match self.classify(x)? {
                    VertexKind::Transition { outgoing, .. } => self.frak_u(outgoing),
                    _ => Err(OracleError::MalformedVertex(x)),
                }
            }
            _ => {
                let first = self.thread_arrows(h).expect("non-trivial")[0];
                let y = self.source(first)?;
                match self.classify(y)? {
                    VertexKind::Transition { .. } => self.frak_i(WindowVertex {
                        vertex: y.vertex,
                        z: y.z - 1,
                    }),
                    VertexKind::Crossing { outgoing, .. } => {
                        let b = if outgoing[0] == first {
                            outgoing[1]
                        } else {
                            outgoing[0]
                        };
                        self.frak_u(b)
                    }
                    VertexKind::Isolated => Err(OracleError::MalformedVertex(y)),
                }
            }
        }
    }

    /// The permitted threads of one slice: one copy of each non-trivial
    /// permitted thread of A, one thread per arrow of A, and the trivial
    /// threads at transition vertices.
    pub fn slice(&self, z: i64) -> Result<Vec<HatThread>, OracleError> {
        let mut out: Vec<HatThread> = (0..self.lines.len())
            .map(|thread| HatThread::Copy { thread, z })
            .collect();
        // Vertex types are shift-invariant; read them off a complete layer.
        let probe = z.clamp(1, self.depth);
        for vertex in (0..self.vertex_count).map(VertexId) {
            match self.classify(WindowVertex { vertex, z: probe })? {
                VertexKind::Transition { .. } => out.push(HatThread::TrivialAt {
                    vertex,
                    z,
                    orient: None,
                }),
                VertexKind::Isolated => {
                    for o in [Orient::Plus, Orient::Minus] {
                        out.push(HatThread::TrivialAt {
                            vertex,
                            z,
                            orient: Some(o),
                        });
                    }
                }
                VertexKind::Crossing { .. } => {}
            }
        }
        out.extend(
            self.position
                .iter()
                .enumerate()
                .map(|(a, _)| HatThread::ArrowInverse {
                    arrow: ArrowId(a),
                    z,
                }),
        );
        Ok(out)
    }
}

/// The slice-0 permitted threads of the quotient of the repetitive algebra.
pub fn hat_threads_slice(p: &GentlePresentation) -> Result<Vec<HatThread>, OracleError> {
    build_window(p, 2)?.slice(0)
}

/// `Omega^-1` of a single element, on a window large enough for it.
pub fn omega_inverse(p: &GentlePresentation, h: HatThread) -> Result<HatThread, OracleError> {
    build_window(p, (h.z() + 2).max(2))?.omega_inverse(h)
}

/// Shape of a series of components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Series {
    /// `|n - m|` components of type `Z A_inf`, or `m` components for a cycle
    /// of relations.
    Components(u32),
    /// Tubes of rank `n` (when `n = m`).
    Tubes { rank: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub pair: (u32, u32),
    /// Total shift after one return; equals `n`.
    pub shift: i64,
    pub series: Series,
    pub elements: Vec<HatThread>,
}

/// Follows `Omega^-1` from `start` until it returns to a shift of `start`.
pub fn orbit_invariant(w: &ExpansionWindow, start: HatThread) -> Result<Orbit, OracleError> {
    orbit_with(w, start, |w, h| w.omega_inverse(h))
}

fn orbit_with(
    w: &ExpansionWindow,
    start: HatThread,
    omega: impl Fn(&ExpansionWindow, HatThread) -> Result<HatThread, OracleError>,
) -> Result<Orbit, OracleError> {
    let bound = w.vertex_count * 2 + w.position.len() * 2 + 2;
    let mut elements = vec![start];
    let mut cur = start;
    loop {
        let next = omega(w, cur)?;
        if next.class() == start.class() {
            let n = elements.iter().filter(|h| h.is_string_thread()).count() as u32;
            let m = elements.len() as u32 - n;
            let series = if n == m {
                Series::Tubes { rank: n }
            } else {
                Series::Components(n.abs_diff(m))
            };
            return Ok(Orbit {
                pair: (n, m),
                shift: next.z() - start.z(),
                series,
                elements,
            });
        }
        if elements.len() > bound {
            return Err(OracleError::NoReturn(start));
        }
        elements.push(next);
        cur = next;
    }
}

/// Default window depth: enough for every orbit.
pub fn default_depth(p: &GentlePresentation) -> i64 {
    let q = p.quiver();
    // #H_A + #Q1 = 2 #Q0, or 4 for the one-vertex algebra.
    (2 * q.vertex_count().max(2) + 2) as i64
}

/// The invariant read off the `Omega`-orbits: one pair per series of
/// components coming from string modules.
pub fn compute_n(p: &GentlePresentation) -> Result<PhiInvariant, OracleError> {
    Ok(compute_n_orbits(p)?.0)
}

/// [`compute_n`] together with the orbits it found.
pub fn compute_n_orbits(p: &GentlePresentation) -> Result<(PhiInvariant, Vec<Orbit>), OracleError> {
    let bound = default_depth(p);
    let mut depth = 2.min(bound);
    loop {
        match n_on_window(&build_window(p, depth)?) {
            Err(OracleError::WindowExhausted(_)) if depth < bound => depth = (depth * 2).min(bound),
            other => return other,
        }
    }
}

fn n_on_window(w: &ExpansionWindow) -> Result<(PhiInvariant, Vec<Orbit>), OracleError> {
    let slice = w.slice(0)?;
    let mut seen: HashSet<HatClass> = HashSet::new();
    let mut orbits = Vec::new();
    for &h in &slice {
        if seen.contains(&h.class()) {
            continue;
        }
        let orbit = orbit_invariant(w, h)?;
        for e in &orbit.elements {
            seen.insert(e.class());
        }
        orbits.push(orbit);
    }
    let covered: usize = orbits.iter().map(|o| o.elements.len()).sum();
    if covered != slice.len() || seen.len() != slice.len() {
        return Err(OracleError::Partition {
            found: covered,
            expected: slice.len(),
        });
    }
    let phi = PhiInvariant::new(orbits.iter().map(|o| o.pair).collect());
    Ok((phi, orbits))
}

/// Where `tau . Omega^-2` and the shift disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauWitness {
    pub element: HatThread,
    pub expected: HatThread,
    pub found: Result<HatThread, String>,
}

/// Checks `tau(Omega^-2(H)) = nu(H)` on a slice, i.e. that the cosyzygy
/// squared agrees with the combinatorial translation.
pub fn tau_check(p: &GentlePresentation) -> Result<Option<TauWitness>, OracleError> {
    tau_check_with(p, |w, h| w.omega_inverse(h))
}

/// [`tau_check`] with a substitute for `Omega^-1`.
pub fn tau_check_with(
    p: &GentlePresentation,
    omega: impl Fn(&ExpansionWindow, HatThread) -> Result<HatThread, OracleError>,
) -> Result<Option<TauWitness>, OracleError> {
    let w = build_window(p, 6)?;
    for h in w.slice(1)? {
        let found = omega(&w, h)
            .and_then(|x| omega(&w, x))
            .and_then(|x| w.tau(x));
        let expected = h.shifted(1);
        if found.as_ref() != Ok(&expected) {
            return Ok(Some(TauWitness {
                element: h,
                expected,
                found: found.map_err(|e| e.to_string()),
            }));
        }
    }
    Ok(None)
}

/// Renders `h` with labels from `p`: `(a5 a4)[0]`, `a8[1]^-1`, `1_d[1]`.
pub fn display_hat(p: &GentlePresentation, w: &ExpansionWindow, h: HatThread) -> String {
    let q = p.quiver();
    match h {
        HatThread::TrivialAt { vertex, z, orient } => {
            let tag = match orient {
                Some(Orient::Plus) => "+",
                Some(Orient::Minus) => "-",
                None => "",
            };
            format!("1_{}{tag}[{z}]", q.vertex_label(vertex))
        }
        HatThread::Copy { thread, z } => {
            let labels: Vec<&str> = w
                .line(thread)
                .iter()
                .rev()
                .map(|&a| q.arrow_label(a))
                .collect();
            if labels.len() == 1 {
                format!("{}[{z}]", labels[0])
            } else {
                format!("({})[{z}]", labels.join(" "))
            }
        }
        HatThread::ArrowInverse { arrow, z } => format!("{}[{z}]^-1", q.arrow_label(arrow)),
    }
}

/// Counts slice elements by variant: `(copies, trivial, arrow inverses)`.
pub fn slice_census(slice: &[HatThread]) -> (usize, usize, usize) {
    let mut counts = BTreeMap::new();
    for h in slice {
        let key = match h {
            HatThread::Copy { .. } => 0,
            HatThread::TrivialAt { .. } => 1,
            HatThread::ArrowInverse { .. } => 2,
        };
        *counts.entry(key).or_insert(0) += 1;
    }
    (
        counts.get(&0).copied().unwrap_or(0),
        counts.get(&1).copied().unwrap_or(0),
        counts.get(&2).copied().unwrap_or(0),
    )
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::Components(k) => write!(f, "{k} component(s)"),
            Series::Tubes { rank } => write!(f, "tubes of rank {rank}"),
        }
    }
}
