//! Exact Holant evaluation on 3-regular graphs and closed grids.
//!
//! The graph evaluator never multiplies scalars inside the assignment
//! loop. It first tabulates, over all vertex assignments with the
//! first vertex pinned to 0, the histogram N[i][j] where i counts
//! edges with both endpoints 0 and j counts edges with both endpoints
//! 1. The pinning exploits complementation: flipping every vertex maps
//! an (i,j) assignment to a (j,i) one. The Holant value and the
//! symmetrized polynomial are then short sums over histogram cells.

use num::{BigInt, BigRational};

use crate::cyclo::Cyc12;
use crate::grid::{EdgeLabeledGraph, SignatureGrid, SymSignature};
use crate::poly::{MPoly, Var};
use crate::Error;

/// Histogram over (both-0 edges, both-1 edges), taken over the 2^(n-1)
/// assignments with vertex 0 pinned to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairHistogram {
    pub edge_count: usize,
    counts: Vec<u64>,
}

impl PairHistogram {
    fn zero(edge_count: usize) -> Self {
        PairHistogram {
            edge_count,
            counts: vec![0; (edge_count + 1) * (edge_count + 1)],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.counts[i * (self.edge_count + 1) + j]
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        let side = self.edge_count + 1;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (k / side, k % side, c))
    }

    fn merge(mut self, other: PairHistogram) -> PairHistogram {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }
}

struct Incidence {
    /// For each vertex, indices of incident edges; self-loops listed twice.
    inc: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Incidence {
    fn build(g: &EdgeLabeledGraph) -> Self {
        let mut inc = vec![Vec::new(); g.vertex_count];
        for (ei, &(u, v)) in g.edges.iter().enumerate() {
            inc[u].push(ei);
            inc[v].push(ei);
        }
        Incidence {
            inc,
            edge_count: g.edges.len(),
        }
    }
}

struct Walker<'a> {
    inc: &'a Incidence,
    /// Per edge: number of endpoints currently assigned 1.
    state: Vec<u8>,
    both_zero: usize,
    both_one: usize,
}

impl<'a> Walker<'a> {
    fn all_zero(inc: &'a Incidence) -> Self {
        Walker {
            inc,
            state: vec![0; inc.edge_count],
            both_zero: inc.edge_count,
            both_one: 0,
        }
    }

    #[inline]
    fn flip(&mut self, v: usize, to_one: bool) {
        for &e in &self.inc.inc[v] {
            let s = self.state[e];
            if to_one {
                if s == 0 {
                    self.both_zero -= 1;
                } else {
                    self.both_one += 1;
                }
                self.state[e] = s + 1;
            } else {
                if s == 1 {
                    self.both_zero += 1;
                } else {
                    self.both_one -= 1;
                }
                self.state[e] = s - 1;
            }
        }
    }
}

/// Gray-code walk over the `suffix` vertices starting from the walker's
/// current assignment (suffix all 0), recording every visited state.
fn walk_chunk(walker: &mut Walker<'_>, suffix: &[usize], hist: &mut PairHistogram) {
    let side = hist.edge_count + 1;
    hist.counts[walker.both_zero * side + walker.both_one] += 1;
    let mut assigned = vec![false; suffix.len()];
    for k in 1u64..1u64 << suffix.len() {
        let bit = k.trailing_zeros() as usize;
        assigned[bit] = !assigned[bit];
        walker.flip(suffix[bit], assigned[bit]);
        hist.counts[walker.both_zero * side + walker.both_one] += 1;
    }
    // Undo so the walker can be reused for the next prefix.
    for (bit, set) in assigned.iter().enumerate() {
        if *set {
            walker.flip(suffix[bit], false);
        }
    }
}

fn histogram_for_prefix(
    inc: &Incidence,
    prefix: &[usize],
    suffix: &[usize],
    prefix_bits: u64,
) -> PairHistogram {
    let mut walker = Walker::all_zero(inc);
    for (pos, &v) in prefix.iter().enumerate() {
        if prefix_bits >> pos & 1 == 1 {
            walker.flip(v, true);
        }
    }
    let mut hist = PairHistogram::zero(inc.edge_count);
    walk_chunk(&mut walker, suffix, &mut hist);
    hist
}

/// How many free vertices each parallel chunk enumerates.
const CHUNK_SUFFIX_LEN: usize = 14;
const MAX_PREFIX_LEN: usize = 12;

fn split_free(vertex_count: usize) -> (Vec<usize>, Vec<usize>) {
    let free: Vec<usize> = (1..vertex_count).collect();
    let p = free
        .len()
        .saturating_sub(CHUNK_SUFFIX_LEN)
        .min(MAX_PREFIX_LEN);
    let (suffix, prefix) = free.split_at(free.len() - p);
    (prefix.to_vec(), suffix.to_vec())
}

/// Single-threaded histogram enumeration.
pub fn pair_histogram_sequential(g: &EdgeLabeledGraph) -> Result<PairHistogram, Error> {
    g.check_three_regular()?;
    let inc = Incidence::build(g);
    let (prefix, suffix) = split_free(g.vertex_count);
    let mut total = PairHistogram::zero(inc.edge_count);
    for bits in 0..1u64 << prefix.len() {
        total = total.merge(histogram_for_prefix(&inc, &prefix, &suffix, bits));
    }
    Ok(total)
}

/// Histogram enumeration, data-parallel over fixed-prefix chunks when
/// the `parallel` feature is enabled. The merge is a commutative sum of
/// integer counters, so the result is independent of scheduling.
#[cfg(feature = "parallel")]
pub fn pair_histogram(g: &EdgeLabeledGraph) -> Result<PairHistogram, Error> {
    use rayon::prelude::*;
    g.check_three_regular()?;
    let inc = Incidence::build(g);
    let (prefix, suffix) = split_free(g.vertex_count);
    if prefix.is_empty() {
        return pair_histogram_sequential(g);
    }
    Ok((0..1u64 << prefix.len())
        .into_par_iter()
        .map(|bits| histogram_for_prefix(&inc, &prefix, &suffix, bits))
        .reduce(
            || PairHistogram::zero(inc.edge_count),
            PairHistogram::merge,
        ))
}

#[cfg(not(feature = "parallel"))]
pub fn pair_histogram(g: &EdgeLabeledGraph) -> Result<PairHistogram, Error> {
    pair_histogram_sequential(g)
}

fn count_scalar(c: u64) -> Cyc12 {
    Cyc12::from_rat(BigRational::from_integer(BigInt::from(c)))
}

fn powers(base: &Cyc12, up_to: usize) -> Vec<Cyc12> {
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(Cyc12::one());
    for k in 1..=up_to {
        let next = &out[k - 1] * base;
        out.push(next);
    }
    out
}

/// Holant of a 3-regular graph with symmetric edge signature [x,y,z]
/// and EQUALITY_3 at every vertex.
pub fn holant_eval_graph(g: &EdgeLabeledGraph, edge_sig: &SymSignature) -> Result<Cyc12, Error> {
    let hist = pair_histogram(g)?;
    holant_from_histogram(&hist, edge_sig)
}

pub fn holant_from_histogram(
    hist: &PairHistogram,
    edge_sig: &SymSignature,
) -> Result<Cyc12, Error> {
    if edge_sig.arity() != 2 {
        return Err(Error::ArityMismatch {
            arity: edge_sig.arity(),
            degree: 2,
        });
    }
    let e = hist.edge_count;
    let xs = powers(edge_sig.at(0), e);
    let ys = powers(edge_sig.at(1), e);
    let zs = powers(edge_sig.at(2), e);
    let mut total = Cyc12::zero();
    for (i, j, c) in hist.nonzero() {
        let m = e - i - j;
        // The assignment and its complement contribute x^i z^j and x^j z^i.
        let pair = &(&xs[i] * &zs[j]) + &(&xs[j] * &zs[i]);
        total = &total + &(&(&count_scalar(c) * &ys[m]) * &pair);
    }
    Ok(total)
}

/// Holant of a closed grid (no dangling edges) by direct contraction.
pub fn holant_eval_grid(grid: &SignatureGrid) -> Result<Cyc12, Error> {
    grid.validate()?;
    if !grid.dangling.is_empty() {
        return Err(Error::MalformedDocument(
            "grid has dangling edges; not a closed instance".into(),
        ));
    }
    grid.contract(0)
}

/// The symmetrized Holant polynomial P(X,Y) of a 3-regular graph:
/// P(ab, a^3+b^3) equals the Holant with edge signature [a,1,b] for all
/// a, b. Built from the pair q_0 = 2, q_1 = Y,
/// q_{k+1} = Y q_k - X^3 q_{k-1}, using that each assignment/complement
/// pair contributes a^i b^j + a^j b^i = X^min(i,j) q_{|i-j|/3}.
pub fn symmetrize(g: &EdgeLabeledGraph) -> Result<MPoly, Error> {
    let hist = pair_histogram(g)?;
    symmetrize_from_histogram(&hist)
}

pub fn symmetrize_from_histogram(hist: &PairHistogram) -> Result<MPoly, Error> {
    let e = hist.edge_count;
    let x = MPoly::var(Var::X);
    let y = MPoly::var(Var::Y);
    let x3 = x.pow(3);
    let mut q = vec![MPoly::int(2), y.clone()];
    for k in 2..=e / 3 + 1 {
        let next = &(&y * &q[k - 1]) - &(&x3 * &q[k - 2]);
        q.push(next);
    }
    let xs: Vec<MPoly> = (0..=e as u32).map(|k| x.pow(k)).collect();
    let mut p = MPoly::zero();
    for (i, j, c) in hist.nonzero() {
        let (lo, hi) = (i.min(j), i.max(j));
        if (hi - lo) % 3 != 0 {
            return Err(Error::Mod3ViolationAnomaly { i, j });
        }
        let term = &(&xs[lo] * &q[(hi - lo) / 3]) * &MPoly::constant(count_scalar(c));
        p = &p + &term;
    }
    Ok(p)
}

/// Rescale [x,y,z] with y != 0 to [a,1,b]; returns (a, b, y). Each of
/// the E edges is scaled by y, so Holant[x,y,z] = y^E * Holant[a,1,b].
/// Returns None when y = 0.
pub fn normalize_signature(sig: &SymSignature) -> Result<Option<(Cyc12, Cyc12, Cyc12)>, Error> {
    if sig.arity() != 2 {
        return Err(Error::ArityMismatch {
            arity: sig.arity(),
            degree: 2,
        });
    }
    let y = sig.at(1);
    if y.is_zero() {
        return Ok(None);
    }
    let a = (sig.at(0) / y)?;
    let b = (sig.at(2) / y)?;
    Ok(Some((a, b, y.clone())))
}

/// Evaluation result with a note on which algorithm produced it.
#[derive(Clone, Debug)]
pub struct EvalOutcome {
    pub value: Cyc12,
    pub method: &'static str,
}

/// Closed-form Holant for [x,0,z]: every edge forces its endpoints
/// equal, so each connected component is uniformly 0 or 1.
pub fn solve_degenerate_middle(g: &EdgeLabeledGraph, x: &Cyc12, z: &Cyc12) -> Cyc12 {
    let (ncomp, ids) = g.components();
    let mut edges_per = vec![0u32; ncomp];
    for &(u, _) in &g.edges {
        edges_per[ids[u]] += 1;
    }
    let mut total = Cyc12::one();
    for &ec in &edges_per {
        total = &total * &(&x.pow(ec) + &z.pow(ec));
    }
    total
}

/// Closed-form Holant for [a,1,b] with ab = 1: (a^3 + b^3 + 2)^(n/2).
pub fn solve_x_equals_one(g: &EdgeLabeledGraph, a: &Cyc12, b: &Cyc12) -> Result<Cyc12, Error> {
    if !(a * b).is_one() {
        return Err(Error::CaseMismatch("requires ab = 1".into()));
    }
    g.check_three_regular()?;
    let base = &(&a.pow(3) + &b.pow(3)) + &Cyc12::from_int(2);
    Ok(base.pow((g.vertex_count / 2) as u32))
}

/// Closed-form Holant for [0,1,0]: assignments are proper 2-colorings,
/// so the value is 2^(components) on bipartite graphs and 0 otherwise.
pub fn solve_zero_zero(g: &EdgeLabeledGraph) -> Cyc12 {
    if !g.is_bipartite() {
        return Cyc12::zero();
    }
    let (ncomp, _) = g.components();
    Cyc12::from_int(2).pow(ncomp as u32)
}

/// Try the polynomial-time special cases; None when no closed form
/// applies to this signature.
pub fn solve_tractable(
    g: &EdgeLabeledGraph,
    edge_sig: &SymSignature,
) -> Result<Option<EvalOutcome>, Error> {
    g.check_three_regular()?;
    match normalize_signature(edge_sig)? {
        None => Ok(Some(EvalOutcome {
            value: solve_degenerate_middle(g, edge_sig.at(0), edge_sig.at(2)),
            method: "component product (degenerate middle term)",
        })),
        Some((a, b, y)) => {
            let scale = y.pow(g.edges.len() as u32);
            if (&a * &b).is_one() {
                let v = solve_x_equals_one(g, &a, &b)?;
                Ok(Some(EvalOutcome {
                    value: &scale * &v,
                    method: "closed form for X = 1",
                }))
            } else if a.is_zero() && b.is_zero() {
                Ok(Some(EvalOutcome {
                    value: &scale * &solve_zero_zero(g),
                    method: "proper 2-coloring count",
                }))
            } else {
                Ok(None)
            }
        }
    }
}

/// Evaluate with the fastest applicable method.
pub fn auto_eval(g: &EdgeLabeledGraph, edge_sig: &SymSignature) -> Result<EvalOutcome, Error> {
    if let Some(out) = solve_tractable(g, edge_sig)? {
        return Ok(out);
    }
    Ok(EvalOutcome {
        value: holant_eval_graph(g, edge_sig)?,
        method: "exhaustive histogram enumeration",
    })
}

/// Holant of a 3-regular graph with edge signature [a,1,b], via the
/// symmetrized polynomial (used as an independent cross-check).
pub fn holant_via_symmetrize(
    g: &EdgeLabeledGraph,
    a: &Cyc12,
    b: &Cyc12,
) -> Result<Cyc12, Error> {
    let p = symmetrize(g)?;
    p.eval(&[(Var::X, a * b), (Var::Y, &a.pow(3) + &b.pow(3))])
}
