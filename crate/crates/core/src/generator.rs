//! Seeded random gentle presentations with a prescribed cycle number.
//!
//! The sampler grows a random spanning tree inside the degree bounds, adds
//! `cycles` further arrows (loops and parallel arrows allowed), picks local
//! relations at each vertex so that every arrow has at most one permitted
//! and at most one forbidden continuation, and then breaks relation-free
//! cycles by inserting or swapping relations. Attempts that get stuck are
//! restarted from the same random stream, so a seed always gives the same
//! result.

use thiserror::Error;

use crate::quiver::{build_presentation, cycle_number, GentlePresentation, RawQuiver};

/// `xorshift64*` with shifts 12, 25, 27 and multiplier
/// `0x2545F4914F6CDD1D`, seeded through one round of SplitMix64.
#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        XorShift64Star {
            state: if z == 0 { 0x2545_F491_4F6C_DD1D } else { z },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `0..n` by multiply-shift; `n > 0`.
    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Uniform in `[0, 1)` with 53 bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn pick<T: Copy>(&mut self, items: &[T]) -> Option<T> {
        if items.is_empty() {
            None
        } else {
            Some(items[self.below(items.len())])
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorParams {
    pub vertex_count: usize,
    pub cycle_target: usize,
    /// Probability of a relation where one is optional.
    pub relation_density: f64,
    pub seed: u64,
}

impl GeneratorParams {
    pub fn new(vertex_count: usize, cycle_target: usize, seed: u64) -> Self {
        GeneratorParams {
            vertex_count,
            cycle_target,
            relation_density: 0.5,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("no gentle presentation found after {0} attempts")]
    GenerationFailed(usize),
}

pub const MAX_ATTEMPTS: usize = 64;

struct Draft {
    n: usize,
    arrows: Vec<(usize, usize)>,
    /// `(second, first)` by arrow index.
    relations: Vec<(usize, usize)>,
}

impl Draft {
    fn out_deg(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.0 == v).count()
    }

    fn in_deg(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.1 == v).count()
    }

    fn incoming(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&i| self.arrows[i].1 == v)
            .collect()
    }

    fn outgoing(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&i| self.arrows[i].0 == v)
            .collect()
    }

    fn is_relation(&self, second: usize, first: usize) -> bool {
        self.relations.contains(&(second, first))
    }

    fn perm_succ(&self, a: usize) -> Option<usize> {
        self.outgoing(self.arrows[a].1)
            .into_iter()
            .find(|&b| !self.is_relation(b, a))
    }

    /// Some arrow pair `(a, b)` on a cycle of relation-free compositions.
    fn free_cycle(&self) -> Option<Vec<(usize, usize)>> {
        for start in 0..self.arrows.len() {
            let mut path = vec![start];
            let mut cur = start;
            for _ in 0..self.arrows.len() {
                match self.perm_succ(cur) {
                    Some(next) if next == start => {
                        path.push(start);
                        return Some(path.windows(2).map(|w| (w[0], w[1])).collect());
                    }
                    Some(next) => {
                        path.push(next);
                        cur = next;
                    }
                    None => break,
                }
            }
        }
        None
    }

    fn to_raw(&self, name: String) -> RawQuiver {
        let v = |i: usize| format!("v{}", i + 1);
        let mut raw = RawQuiver::new(name);
        for i in 0..self.n {
            raw = raw.vertex(&v(i));
        }
        for (i, &(s, t)) in self.arrows.iter().enumerate() {
            raw = raw.arrow(&format!("a{}", i + 1), &v(s), &v(t));
        }
        let mut rels = self.relations.clone();
        rels.sort_unstable();
        for (second, first) in rels {
            raw = raw.relation(&format!("a{}", second + 1), &format!("a{}", first + 1));
        }
        raw
    }
}

fn grow(rng: &mut XorShift64Star, params: &GeneratorParams) -> Option<Draft> {
    let n = params.vertex_count;
    let mut d = Draft {
        n,
        arrows: Vec::new(),
        relations: Vec::new(),
    };
    for i in 1..n {
        let mut options = Vec::new();
        for j in 0..i {
            if d.out_deg(j) < 2 {
                options.push((j, i));
            }
            if d.in_deg(j) < 2 {
                options.push((i, j));
            }
        }
        d.arrows.push(rng.pick(&options)?);
    }
    for _ in 0..params.cycle_target {
        let mut options = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if d.out_deg(s) < 2 && d.in_deg(t) < 2 {
                    options.push((s, t));
                }
            }
        }
        d.arrows.push(rng.pick(&options)?);
    }
    for v in 0..n {
        let (ins, outs) = (d.incoming(v), d.outgoing(v));
        match (ins.len(), outs.len()) {
            (2, 2) => {
                let swap = rng.below(2);
                // The permitted pairing is (ins[k], outs[k ^ swap]); the
                // other pairing is zero.
                for k in 0..2 {
                    d.relations.push((outs[k ^ swap ^ 1], ins[k]));
                }
            }
            (2, 1) => d.relations.push((outs[0], ins[rng.below(2)])),
            (1, 2) => d.relations.push((outs[rng.below(2)], ins[0])),
            (1, 1) if rng.unit() < params.relation_density => d.relations.push((outs[0], ins[0])),
            _ => {}
        }
    }
    // Each repair removes the chosen free composition; bound the rounds in
    // case swaps keep creating new cycles.
    for _ in 0..4 * d.arrows.len() + 4 {
        let Some(cycle) = d.free_cycle() else {
            return Some(d);
        };
        let (a, b) = cycle[rng.below(cycle.len())];
        let v = d.arrows[a].1;
        let (ins, outs) = (d.incoming(v), d.outgoing(v));
        match (ins.len(), outs.len()) {
            (1, 1) => d.relations.push((b, a)),
            _ => {
                // Swap which composition at v is the zero one.
                let local: Vec<(usize, usize)> = outs
                    .iter()
                    .flat_map(|&o| ins.iter().map(move |&i| (o, i)))
                    .collect();
                d.relations.retain(|r| !local.contains(r));
                d.relations.push((b, a));
                if ins.len() == 2 && outs.len() == 2 {
                    let a2 = ins.iter().copied().find(|&i| i != a).unwrap();
                    let b2 = outs.iter().copied().find(|&o| o != b).unwrap();
                    d.relations.push((b2, a2));
                }
            }
        }
    }
    None
}

/// A random gentle presentation with `cycle_target` independent cycles.
pub fn random_gentle(params: &GeneratorParams) -> Result<GentlePresentation, GeneratorError> {
    if params.vertex_count == 0 {
        return Err(GeneratorError::InvalidParams(
            "need at least one vertex".into(),
        ));
    }
    if params.cycle_target > params.vertex_count {
        return Err(GeneratorError::InvalidParams(
            "cycle target exceeds vertex count".into(),
        ));
    }
    if !(0.0..=1.0).contains(&params.relation_density) {
        return Err(GeneratorError::InvalidParams(
            "relation density must lie in [0, 1]".into(),
        ));
    }
    let mut rng = XorShift64Star::new(params.seed);
    let name = format!(
        "gen_n{}_c{}_s{}",
        params.vertex_count, params.cycle_target, params.seed
    );
    for _ in 0..MAX_ATTEMPTS {
        let Some(draft) = grow(&mut rng, params) else {
            continue;
        };
        if let Ok(p) = build_presentation(&draft.to_raw(name.clone())) {
            debug_assert_eq!(cycle_number(&p), params.cycle_target);
            return Ok(p);
        }
    }
    Err(GeneratorError::GenerationFailed(MAX_ATTEMPTS))
}

/// Parameters of the `i`-th corpus instance: up to 10 vertices, up to 3
/// cycles, densities `0, 1/3, 2/3, 1`.
pub fn corpus_params(i: u64) -> GeneratorParams {
    let n = 1 + (i % 10) as usize;
    let cycles = ((i / 10) % 4) as usize;
    GeneratorParams {
        vertex_count: n,
        cycle_target: cycles.min(n),
        relation_density: ((i / 40) % 4) as f64 / 3.0,
        seed: i,
    }
}

/// The first `count` successful corpus instances.
pub fn corpus(count: usize) -> Vec<GentlePresentation> {
    let mut out = Vec::with_capacity(count);
    let mut i = 0;
    while out.len() < count {
        if let Ok(p) = random_gentle(&corpus_params(i)) {
            out.push(p);
        }
        i += 1;
    }
    out
}

/// The same presentation with shuffled declaration order and fresh labels,
/// so vertex and arrow ids are permuted.
pub fn relabel(raw: &RawQuiver, seed: u64) -> RawQuiver {
    let mut rng = XorShift64Star::new(seed);
    let shuffle = |rng: &mut XorShift64Star, n: usize| {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.below(i + 1));
        }
        perm
    };
    let vperm = shuffle(&mut rng, raw.vertices.len());
    let aperm = shuffle(&mut rng, raw.arrows.len());
    let vname = |l: &str| {
        format!(
            "x{}",
            vperm[raw.vertices.iter().position(|v| v == l).unwrap()]
        )
    };
    let aname = |l: &str| {
        format!(
            "y{}",
            aperm[raw.arrows.iter().position(|a| a.label == l).unwrap()]
        )
    };
    let mut out = RawQuiver::new(raw.name.clone());
    let mut vs: Vec<String> = raw.vertices.iter().map(|v| vname(v)).collect();
    vs.sort_by_key(|x| x[1..].parse::<usize>().unwrap());
    for v in &vs {
        out = out.vertex(v);
    }
    let mut arrows: Vec<(String, String, String)> = raw
        .arrows
        .iter()
        .map(|a| (aname(&a.label), vname(&a.source), vname(&a.target)))
        .collect();
    arrows.sort_by_key(|a| a.0[1..].parse::<usize>().unwrap());
    for (l, s, t) in &arrows {
        out = out.arrow(l, s, t);
    }
    let mut rels: Vec<(String, String)> = raw
        .relations
        .iter()
        .map(|r| (aname(&r.second), aname(&r.first)))
        .collect();
    for i in (1..rels.len()).rev() {
        rels.swap(i, rng.below(i + 1));
    }
    for (second, first) in &rels {
        out = out.relation(second, first);
    }
    out
}
