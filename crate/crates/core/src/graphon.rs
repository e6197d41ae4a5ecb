//! Step graphons: block measures `m` and a symmetric block value matrix.
//!
//! On step functions the graphon operator `(A_W f)(x) = ∫ W(x,y) f(y) dy`
//! acts as the `k×k` matrix `values · diag(m)`. That matrix is similar to the
//! symmetric `diag(√m) · values · diag(√m)`, which is what gets diagonalized.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{adjacency_matrix, eigh, SymMatrix};
use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Largest block count for which the cut norm is computed exactly.
pub const MAX_EXACT_CUT_BLOCKS: usize = 24;
const HEURISTIC_STARTS: usize = 32;
const HEURISTIC_SEED: u64 = 0x5eed;
/// Block intervals shorter than this are merged into their neighbor when refining.
const SLIVER: f64 = 1e-12;
/// Exhaustive block-permutation search is used up to this many permutations.
const MAX_EXHAUSTIVE_PERMUTATIONS: u64 = 40_320;
const MAX_SWAP_ROUNDS: usize = 64;

/// Serialized form `{"m": [...], "values": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepJson {
    pub m: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

/// Symmetric step function with positive block measures summing to one.
/// Graphons have values in `[0, 1]`; differences of graphons in `[−1, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepKernel {
    m: Vec<f64>,
    values: Vec<Vec<f64>>,
}

/// A step graphon. Derefs to its [`StepKernel`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StepJson", into = "StepJson")]
pub struct StepGraphon(StepKernel);

fn validate(m: &[f64], values: &[Vec<f64>], lo: f64, hi: f64) -> Result<()> {
    let k = m.len();
    if k == 0 {
        return invalid("step function needs at least one block");
    }
    if m.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
        return invalid("block measures must be positive");
    }
    let total: f64 = m.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return invalid(format!("block measures sum to {total}, not 1"));
    }
    if values.len() != k || values.iter().any(|r| r.len() != k) {
        return invalid(format!("value matrix must be {k}×{k}"));
    }
    for i in 0..k {
        for j in 0..k {
            let v = values[i][j];
            if !(lo..=hi).contains(&v) {
                return invalid(format!("value {v} at ({i},{j}) outside [{lo}, {hi}]"));
            }
            if values[j][i] != v {
                return invalid(format!("values not symmetric at ({i},{j})"));
            }
        }
    }
    Ok(())
}

impl StepKernel {
    pub fn new(m: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        validate(&m, &values, -1.0, 1.0)?;
        Ok(StepKernel { m, values })
    }

    pub fn k(&self) -> usize {
        self.m.len()
    }

    pub fn measures(&self) -> &[f64] {
        &self.m
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// `∫∫ W`.
    pub fn integral(&self) -> f64 {
        let k = self.k();
        (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| self.values[i][j] * self.m[i] * self.m[j])
            .sum()
    }

    fn scaled(&self, c: f64) -> StepKernel {
        StepKernel {
            m: self.m.clone(),
            values: self
                .values
                .iter()
                .map(|r| r.iter().map(|v| v * c).collect())
                .collect(),
        }
    }

    /// Reorders blocks along `[0, 1]`: new block `i` is old block `order[i]`.
    fn reordered(&self, order: &[usize]) -> StepKernel {
        StepKernel {
            m: order.iter().map(|&i| self.m[i]).collect(),
            values: order
                .iter()
                .map(|&i| order.iter().map(|&j| self.values[i][j]).collect())
                .collect(),
        }
    }

    fn boundaries(&self) -> Vec<f64> {
        let mut b = Vec::with_capacity(self.k() + 1);
        let mut acc = 0.0;
        b.push(0.0);
        for &x in &self.m[..self.k() - 1] {
            acc += x;
            b.push(acc);
        }
        b.push(1.0);
        b
    }
}

impl std::ops::Deref for StepGraphon {
    type Target = StepKernel;
    fn deref(&self) -> &StepKernel {
        &self.0
    }
}

impl TryFrom<StepJson> for StepGraphon {
    type Error = crate::Error;
    fn try_from(j: StepJson) -> Result<Self> {
        StepGraphon::new(j.m, j.values)
    }
}

impl From<StepGraphon> for StepJson {
    fn from(w: StepGraphon) -> StepJson {
        StepJson {
            m: w.0.m,
            values: w.0.values,
        }
    }
}

impl StepGraphon {
    pub fn new(m: Vec<f64>, values: Vec<Vec<f64>>) -> Result<Self> {
        validate(&m, &values, 0.0, 1.0)?;
        Ok(StepGraphon(StepKernel { m, values }))
    }

    pub fn constant(c: f64) -> Result<Self> {
        StepGraphon::new(vec![1.0], vec![vec![c]])
    }

    /// `W_G`: `n` equal blocks, value 1 on `I_u × I_v` for every edge `uv`.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let values = (0..n)
            .map(|u| (0..n).map(|v| if g.has_edge(u, v) { 1.0 } else { 0.0 }).collect())
            .collect();
        StepGraphon(StepKernel {
            m: vec![1.0 / n as f64; n],
            values,
        })
    }

    /// Limit object of the extremal NG graphs: 1 except on `[1/3, 1]²`.
    pub fn split_limit() -> Self {
        StepGraphon::new(vec![1.0 / 3.0, 2.0 / 3.0], vec![vec![1.0, 1.0], vec![1.0, 0.0]])
            .expect("valid limit graphon")
    }

    /// `1 − W`.
    pub fn complement(&self) -> Self {
        StepGraphon(StepKernel {
            m: self.m.clone(),
            values: self
                .values
                .iter()
                .map(|r| r.iter().map(|v| 1.0 - v).collect())
                .collect(),
        })
    }

    pub fn edge_density(&self) -> f64 {
        self.integral()
    }

    pub fn kernel(&self) -> &StepKernel {
        &self.0
    }
}

/// Top eigenvalue `μ` of the graphon operator with its step eigenfunction,
/// normalized so `Σ f_i² m_i = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphonEigen {
    pub mu: f64,
    pub f: Vec<f64>,
    /// `max_i |Σ_j values(i,j) m_j f_j − μ f_i|`
    pub residual: f64,
}

pub fn max_eigen(w: &StepGraphon) -> Result<GraphonEigen> {
    let k = w.k();
    let root: Vec<f64> = w.m.iter().map(|x| x.sqrt()).collect();
    let mut s = SymMatrix::zeros(k);
    for i in 0..k {
        for j in i..k {
            s.set(i, j, root[i] * w.values[i][j] * root[j]);
        }
    }
    let top = eigh(&s)?.principal(&s, true);
    let f: Vec<f64> = top.vector.iter().zip(&root).map(|(y, r)| y / r).collect();
    let residual = (0..k)
        .map(|i| {
            let af: f64 = (0..k).map(|j| w.values[i][j] * w.m[j] * f[j]).sum();
            (af - top.value * f[i]).abs()
        })
        .fold(0.0, f64::max);
    Ok(GraphonEigen {
        mu: top.value,
        f,
        residual,
    })
}

/// `|λ₁(G) − n · μ(W_G)|`, computed by two independent eigensolves.
pub fn relation_check(g: &Graph) -> Result<f64> {
    let a = adjacency_matrix(g);
    let lambda1 = eigh(&a)?.values[0];
    let mu = max_eigen(&StepGraphon::from_graph(g))?.mu;
    Ok((lambda1 - g.n() as f64 * mu).abs())
}

/// `U − W` on the common refinement of both block partitions.
pub fn common_refinement_diff(u: &StepKernel, w: &StepKernel) -> StepKernel {
    let (bu, bw) = (u.boundaries(), w.boundaries());
    let mut points: Vec<f64> = bu.iter().chain(&bw).cloned().collect();
    points.sort_by(f64::total_cmp);
    let mut cuts = vec![0.0];
    for p in points {
        if p - cuts[cuts.len() - 1] > SLIVER && 1.0 - p > SLIVER {
            cuts.push(p);
        }
    }
    cuts.push(1.0);

    let locate = |b: &[f64], x: f64| b.partition_point(|&edge| edge <= x).saturating_sub(1).min(b.len() - 2);
    let blocks: Vec<(f64, usize, usize)> = cuts
        .windows(2)
        .map(|c| {
            let mid = 0.5 * (c[0] + c[1]);
            (c[1] - c[0], locate(&bu, mid), locate(&bw, mid))
        })
        .collect();
    StepKernel {
        m: blocks.iter().map(|b| b.0).collect(),
        values: blocks
            .iter()
            .map(|&(_, ui, wi)| {
                blocks
                    .iter()
                    .map(|&(_, uj, wj)| u.values[ui][uj] - w.values[wi][wj])
                    .collect()
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutNorm {
    pub value: f64,
    /// False when the heuristic was used; `value` is then a lower bound.
    pub exact: bool,
    /// Blocks of the maximizing rectangle `S × T`.
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

fn rectangle(u: &StepKernel, s: &[usize], t: &[usize]) -> f64 {
    s.iter()
        .flat_map(|&i| t.iter().map(move |&j| (i, j)))
        .map(|(i, j)| u.values[i][j] * u.m[i] * u.m[j])
        .sum()
}

/// Best `T` for a fixed weighted row-sum vector `r_j = Σ_{i∈S} U_ij m_i`.
fn best_columns(r: &[f64], m: &[f64]) -> (f64, bool) {
    let (mut pos, mut neg) = (0.0, 0.0);
    for (x, w) in r.iter().zip(m) {
        if *x > 0.0 {
            pos += x * w;
        } else {
            neg -= x * w;
        }
    }
    if pos >= neg {
        (pos, true)
    } else {
        (neg, false)
    }
}

fn mask_members(mask: u64, k: usize) -> Vec<usize> {
    (0..k).filter(|&i| (mask >> i) & 1 == 1).collect()
}

/// Exact cut norm by enumerating `S` (Gray code within parallel chunks); for
/// fixed `S` the optimal `T` takes all positive or all negative weighted
/// column sums.
fn cut_norm_exact(u: &StepKernel) -> CutNorm {
    let k = u.k();
    let low_bits = k.min(16);
    let high_bits = k - low_bits;
    let weighted: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| u.values[i][j] * u.m[i]).collect())
        .collect();

    let (_, best_mask) = (0u64..1 << high_bits)
        .into_par_iter()
        .map(|prefix| {
            let mut r = vec![0.0; k];
            let mut mask = prefix << low_bits;
            for i in mask_members(mask, k) {
                r.iter_mut().zip(&weighted[i]).for_each(|(a, b)| *a += b);
            }
            let mut best = (best_columns(&r, &u.m).0, mask);
            for step in 1u64..1 << low_bits {
                let bit = step.trailing_zeros() as usize;
                mask ^= 1 << bit;
                let sign = if (mask >> bit) & 1 == 1 { 1.0 } else { -1.0 };
                r.iter_mut().zip(&weighted[bit]).for_each(|(a, b)| *a += sign * b);
                let v = best_columns(&r, &u.m).0;
                if v > best.0 || (v == best.0 && mask < best.1) {
                    best = (v, mask);
                }
            }
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, u64::MAX),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );

    let s = mask_members(best_mask, k);
    let r: Vec<f64> = (0..k).map(|j| s.iter().map(|&i| weighted[i][j]).sum()).collect();
    let (_, positive) = best_columns(&r, &u.m);
    let t: Vec<usize> = (0..k).filter(|&j| if positive { r[j] > 0.0 } else { r[j] <= 0.0 }).collect();
    CutNorm {
        value: rectangle(u, &s, &t).abs(),
        exact: true,
        s,
        t,
    }
}

/// Alternating maximization over `S` and `T` from seeded random starts.
fn cut_norm_heuristic(u: &StepKernel) -> CutNorm {
    let k = u.k();
    let mut rng = ChaCha8Rng::seed_from_u64(HEURISTIC_SEED);
    let mut best = CutNorm {
        value: 0.0,
        exact: false,
        s: Vec::new(),
        t: Vec::new(),
    };
    for _ in 0..HEURISTIC_STARTS {
        let start: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.5)).collect();
        for sign in [1.0, -1.0] {
            let mut s = start.clone();
            let mut last = f64::NEG_INFINITY;
            loop {
                let t: Vec<bool> = (0..k)
                    .map(|j| sign * (0..k).filter(|&i| s[i]).map(|i| u.values[i][j] * u.m[i]).sum::<f64>() > 0.0)
                    .collect();
                s = (0..k)
                    .map(|i| sign * (0..k).filter(|&j| t[j]).map(|j| u.values[i][j] * u.m[j]).sum::<f64>() > 0.0)
                    .collect();
                let si: Vec<usize> = (0..k).filter(|&i| s[i]).collect();
                let ti: Vec<usize> = (0..k).filter(|&j| t[j]).collect();
                let v = sign * rectangle(u, &si, &ti);
                if v <= last + 1e-15 {
                    break;
                }
                last = v;
                if v > best.value {
                    best.value = v;
                    best.s = si;
                    best.t = ti;
                }
            }
        }
    }
    best
}

/// `sup_{S,T} |∫_{S×T} U|`: exact up to [`MAX_EXACT_CUT_BLOCKS`] blocks, a
/// heuristic lower bound beyond.
pub fn cut_norm(u: &StepKernel) -> CutNorm {
    if u.k() <= MAX_EXACT_CUT_BLOCKS {
        cut_norm_exact(u)
    } else {
        cut_norm_heuristic(u)
    }
}

/// Upper bound on the cut distance `δ□(U, W)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaCut {
    pub value: f64,
    /// Always true: only block permutations are searched.
    pub upper_bound: bool,
    /// False when the block measure multisets differ and the identity
    /// alignment was used instead.
    pub measures_matched: bool,
    /// True when every measure-preserving block permutation was tried.
    pub permutations_exhausted: bool,
    /// False when a cut norm in the chain was a heuristic lower bound.
    pub cut_norms_exact: bool,
    /// Block order of `W` that attains `value`.
    pub alignment: Vec<usize>,
}

fn permutation_count(classes: &[Vec<usize>]) -> u64 {
    classes.iter().fold(1u64, |acc, c| {
        (1..=c.len() as u64).fold(acc, |a, x| a.saturating_mul(x))
    })
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn delta_cut_upper(u: &StepGraphon, w: &StepGraphon) -> DeltaCut {
    let eval = |order: &[usize]| cut_norm(&common_refinement_diff(u, &w.reordered(order)));
    let identity: Vec<usize> = (0..w.k()).collect();

    // Pair U's blocks with equal-measure blocks of W, in order of appearance.
    let mut alignment = Vec::with_capacity(u.k());
    let mut matched = u.k() == w.k();
    if matched {
        let mut free: Vec<bool> = vec![true; w.k()];
        for &mu in &u.m {
            match (0..w.k()).find(|&j| free[j] && (w.m[j] - mu).abs() <= 1e-12) {
                Some(j) => {
                    free[j] = false;
                    alignment.push(j);
                }
                None => {
                    matched = false;
                    break;
                }
            }
        }
    }
    if !matched {
        log::warn!("block measures differ; using identity alignment for the cut distance bound");
        let c = eval(&identity);
        return DeltaCut {
            value: c.value,
            upper_bound: true,
            measures_matched: false,
            permutations_exhausted: false,
            cut_norms_exact: c.exact,
            alignment: identity,
        };
    }

    // Positions of U sharing a measure may exchange their W blocks.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..u.k() {
        match classes.iter_mut().find(|c| (u.m[c[0]] - u.m[i]).abs() <= 1e-12) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }

    let first = eval(&alignment);
    let mut best = (first.value, alignment.clone(), first.exact);
    let exhaustive = permutation_count(&classes) <= MAX_EXHAUSTIVE_PERMUTATIONS;
    if exhaustive {
        // Odometer over per-class permutations of the W blocks.
        let base: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| {
                let mut b: Vec<usize> = c.iter().map(|&i| alignment[i]).collect();
                b.sort_unstable();
                b
            })
            .collect();
        let mut state = base.clone();
        loop {
            let mut order = vec![0; u.k()];
            for (c, perm) in classes.iter().zip(&state) {
                for (&pos, &blk) in c.iter().zip(perm) {
                    order[pos] = blk;
                }
            }
            let c = eval(&order);
            if c.value < best.0 - 1e-15 {
                best = (c.value, order, c.exact);
            }
            let mut advanced = false;
            for (perm, b) in state.iter_mut().zip(&base) {
                if next_permutation(perm) {
                    advanced = true;
                    break;
                }
                perm.copy_from_slice(b);
            }
            if !advanced {
                break;
            }
        }
    } else {
        // Greedy transpositions within measure classes.
        for _ in 0..MAX_SWAP_ROUNDS {
            let mut improved = false;
            for c in &classes {
                for a in 0..c.len() {
                    for b in a + 1..c.len() {
                        let mut order = best.1.clone();
                        order.swap(c[a], c[b]);
                        let cn = eval(&order);
                        if cn.value < best.0 - 1e-15 {
                            best = (cn.value, order, cn.exact);
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }
    DeltaCut {
        value: best.0,
        upper_bound: true,
        measures_matched: true,
        permutations_exhausted: exhaustive,
        cut_norms_exact: best.2,
        alignment: best.1,
    }
}

/// `c · U` on the same partition.
pub fn scale_kernel(u: &StepKernel, c: f64) -> StepKernel {
    u.scaled(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_split, named_graph, Family};

    #[test]
    fn from_graph_examples() {
        let k2 = StepGraphon::from_graph(&named_graph(Family::Complete, 2).unwrap());
        assert_eq!(k2.measures(), &[0.5, 0.5]);
        assert_eq!(k2.values(), &[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let e = StepGraphon::from_graph(&Graph::empty(4).unwrap());
        assert!(e.values().iter().flatten().all(|&v| v == 0.0));
        let g = complete_split(7, 3).unwrap();
        let d = StepGraphon::from_graph(&g).edge_density();
        assert!((d - 2.0 * g.edge_count() as f64 / 49.0).abs() < 1e-14);
    }

    #[test]
    fn validation() {
        assert!(StepGraphon::new(vec![0.5, 0.4], vec![vec![0.0; 2]; 2]).is_err());
        assert!(StepGraphon::new(vec![1.0, 0.0], vec![vec![0.0; 2]; 2]).is_err());
        assert!(StepGraphon::new(vec![0.5, 0.5], vec![vec![0.0, 1.0], vec![0.5, 0.0]]).is_err());
        assert!(StepGraphon::new(vec![1.0], vec![vec![-0.5]]).is_err());
        assert!(StepKernel::new(vec![1.0], vec![vec![-0.5]]).is_ok());
        let json = r#"{"m":[0.25,0.75],"values":[[1.0,0.0],[0.0,1.0]]}"#;
        let w: StepGraphon = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"m":[0.25,0.75],"values":[[1.0,0.0],[0.0,1.0]]}"#);
        assert!(serde_json::from_str::<StepGraphon>(r#"{"m":[0.3],"values":[[1.0]]}"#).is_err());
    }

    #[test]
    fn limit_graphon_spectrum() {
        let w = StepGraphon::split_limit();
        let e = max_eigen(&w).unwrap();
        assert!((e.mu - 2.0 / 3.0).abs() < 1e-12);
        assert!((e.f[0] - 2f64.sqrt()).abs() < 1e-12);
        assert!((e.f[1] - 2f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(e.residual <= 1e-10);

        let c = max_eigen(&w.complement()).unwrap();
        assert!((c.mu - 2.0 / 3.0).abs() < 1e-12);
        assert!(c.f[0].abs() < 1e-12);
        assert!((c.f[1].abs() - 6f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_operator() {
        let w = StepGraphon::from_graph(&named_graph(Family::Complete, 3).unwrap());
        assert!((max_eigen(&w).unwrap().mu - 2.0 / 3.0).abs() < 1e-12);
        assert!(relation_check(&named_graph(Family::Complete, 3).unwrap()).unwrap() < 1e-12);
        assert!(relation_check(&named_graph(Family::Star, 4).unwrap()).unwrap() < 1e-9);
    }

    #[test]
    fn refinement_examples() {
        let w = StepGraphon::split_limit();
        let d = common_refinement_diff(&w, &w);
        assert!(d.values().iter().flatten().all(|&v| v == 0.0));

        let one = StepGraphon::constant(1.0).unwrap();
        let zero = StepGraphon::constant(0.0).unwrap();
        assert_eq!(common_refinement_diff(&one, &zero).values(), &[vec![1.0]]);

        let k2 = StepGraphon::from_graph(&named_graph(Family::Complete, 2).unwrap());
        let half = StepGraphon::constant(0.5).unwrap();
        let d = common_refinement_diff(&k2, &half);
        assert_eq!(d.measures(), &[0.5, 0.5]);
        assert_eq!(d.values(), &[vec![-0.5, 0.5], vec![0.5, -0.5]]);

        // 1/3 | 2/3 against quarters gives cuts at 1/4, 1/3, 1/2, 3/4
        let q = StepGraphon::from_graph(&Graph::empty(4).unwrap());
        let d = common_refinement_diff(&w, &q);
        assert_eq!(d.k(), 5);
        assert!((d.measures().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!((d.measures()[1] - (1.0 / 3.0 - 0.25)).abs() < 1e-15);
    }

    #[test]
    fn cut_norm_examples() {
        let half = StepGraphon::constant(0.5).unwrap();
        let c = cut_norm(half.kernel());
        assert!((c.value - 0.5).abs() < 1e-15);
        assert!(c.exact);

        let w = StepGraphon::split_limit();
        assert_eq!(cut_norm(&common_refinement_diff(&w, &w)).value, 0.0);

        let k2 = StepGraphon::from_graph(&named_graph(Family::Complete, 2).unwrap());
        let c = cut_norm(&common_refinement_diff(&k2, &half));
        assert!((c.value - 0.125).abs() < 1e-12);
        assert_eq!(c.s.len(), 1);
        assert_eq!(c.t.len(), 1);
        assert_ne!(c.s, c.t);
    }

    #[test]
    fn heuristic_is_a_lower_bound_flagged() {
        let g = named_graph(Family::Cycle, 30).unwrap();
        let w = StepGraphon::from_graph(&g);
        let half = StepGraphon::constant(0.5).unwrap();
        let c = cut_norm(&common_refinement_diff(&w, &half));
        assert!(!c.exact);
        assert!(c.value > 0.0 && c.value <= 0.5);
        let direct = rectangle(&common_refinement_diff(&w, &half), &c.s, &c.t).abs();
        assert!((direct - c.value).abs() < 1e-12);
    }

    #[test]
    fn delta_cut_examples() {
        let w = StepGraphon::split_limit();
        let d = delta_cut_upper(&w, &w);
        assert_eq!(d.value, 0.0);
        assert!(d.upper_bound && d.measures_matched);

        let u = StepGraphon::new(
            vec![0.25, 0.25, 0.5],
            vec![vec![1.0, 0.2, 0.0], vec![0.2, 0.0, 0.7], vec![0.0, 0.7, 0.4]],
        )
        .unwrap();
        let permuted = StepGraphon(u.reordered(&[1, 0, 2]));
        let d = delta_cut_upper(&u, &permuted);
        assert!(d.value < 1e-15);
        assert!(d.permutations_exhausted);

        let g = StepGraphon::from_graph(&complete_split(6, 2).unwrap());
        let d = delta_cut_upper(&g, &w);
        assert!(!d.measures_matched);
        assert!(d.value > 0.0);
    }

    #[test]
    fn permutation_helpers() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(permutation_count(&[vec![0, 1, 2], vec![3, 4]]), 12);
    }
}
