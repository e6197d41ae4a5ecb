//! Objective functions and closed forms.
//!
//! `p(G) = λ₁(G) + λ₁(Ḡ)` is the Nordhaus-Gaddum sum and `s_Q(G) = q₁(G) − qₙ(G)`
//! the signless Laplacian spread. The complete split graph `CS_{n,ω}` has
//! `λ₁ = (ω − 1 + √(−3ω² + (4n−2)ω + 1)) / 2` and its complement is
//! `K_{n−ω} ∪ ωK₁`, so `p(CS_{n,ω})` is available in closed form; maximizing it
//! over `ω` yields the conjectured bound [`ng_bound`].

use serde::Serialize;

use crate::eigen::{adjacency_matrix, eigh, signless_laplacian, EigenPair};
use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Default threshold constant for [`asymptotic_diagnostics`].
pub const DEFAULT_EPSILON: f64 = 0.1;

/// Absolute tolerance for ties between values of `f(ω)` in [`optimal_clique`].
const CLIQUE_TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NgReport {
    pub lambda1: f64,
    pub lambda1_bar: f64,
    pub p: f64,
    /// Nonnegative unit Perron vector of `A(G)`.
    pub x: Vec<f64>,
    /// Nonnegative unit Perron vector of `A(Ḡ)`.
    pub x_bar: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QSpreadReport {
    pub q1: f64,
    pub qn: f64,
    pub s: f64,
    /// Nonnegative unit eigenvector of `q₁`.
    pub x: Vec<f64>,
    /// Unit eigenvector of `qₙ`.
    pub z: Vec<f64>,
}

pub fn perron_pair(g: &Graph) -> Result<EigenPair> {
    let a = adjacency_matrix(g);
    Ok(eigh(&a)?.principal(&a, true))
}

pub fn ng_sum(g: &Graph) -> Result<NgReport> {
    let top = perron_pair(g)?;
    let top_bar = perron_pair(&g.complement())?;
    Ok(NgReport {
        lambda1: top.value,
        lambda1_bar: top_bar.value,
        p: top.value + top_bar.value,
        x: top.vector,
        x_bar: top_bar.vector,
    })
}

/// Extreme eigenpairs of `Q(G)`.
pub fn q_extremes(g: &Graph) -> Result<(EigenPair, EigenPair)> {
    let q = signless_laplacian(g);
    let dec = eigh(&q)?;
    Ok((dec.principal(&q, true), dec.least(&q)))
}

pub fn q_spread(g: &Graph) -> Result<QSpreadReport> {
    let (top, bottom) = q_extremes(g)?;
    Ok(QSpreadReport {
        q1: top.value,
        qn: bottom.value,
        s: top.value - bottom.value,
        x: top.vector,
        z: bottom.vector,
    })
}

/// Conjectured maximum of `p(G)` over all graphs on `n` vertices.
pub fn ng_bound(n: usize) -> f64 {
    let nf = n as f64;
    let correction = match n % 3 {
        0 => 3.0 * nf - 1.0 - (9.0 * nf * nf - 6.0 * nf + 9.0).sqrt(),
        1 => 3.0 * nf - 2.0 - (9.0 * nf * nf - 12.0 * nf + 12.0).sqrt(),
        _ => 0.0,
    };
    4.0 / 3.0 * nf - 5.0 / 3.0 - correction / 6.0
}

/// `λ₁(CS_{n,ω})` in closed form.
pub fn cs_lambda1(n: usize, omega: usize) -> f64 {
    let (nf, w) = (n as f64, omega as f64);
    (w - 1.0 + (-3.0 * w * w + (4.0 * nf - 2.0) * w + 1.0).sqrt()) / 2.0
}

/// `p(CS_{n,ω}) = λ₁(CS_{n,ω}) + (n − ω − 1)`.
pub fn cs_ng_sum(n: usize, omega: usize) -> f64 {
    cs_lambda1(n, omega) + (n - omega) as f64 - 1.0
}

/// `f(x) = √(−3x² + (4n−2)x + 1) − x`; `p(CS_{n,ω}) = f(ω)/2 + n − 3/2`.
pub fn clique_objective(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    (-3.0 * x * x + (4.0 * nf - 2.0) * x + 1.0).sqrt() - x
}

/// Smaller root `x₀ = (2n − 1 − √(n² − n + 1)) / 3` of `f′`, i.e. of
/// `3x² − (4n − 2)x + n² − n = 0`; it is the maximizer of [`clique_objective`].
pub fn clique_stationary_point(n: usize) -> f64 {
    let nf = n as f64;
    (2.0 * nf - 1.0 - (nf * nf - nf + 1.0).sqrt()) / 3.0
}

/// `(⌊x₀⌋, ⌈x₀⌉)` from the residue of `n` mod 3, in exact integer arithmetic.
pub fn clique_candidates(n: usize) -> (usize, usize) {
    match n % 3 {
        0 => ((n - 3) / 3, n / 3),
        1 => ((n - 1) / 3, n.div_ceil(3)),
        _ => ((n - 2) / 3, (n + 1) / 3),
    }
}

/// Clique sizes `ω ≥ 1` maximizing `p(CS_{n,ω})`, ascending; two members when
/// the candidates tie.
pub fn optimal_clique(n: usize) -> Result<Vec<usize>> {
    if n < 2 {
        return invalid(format!("optimal clique needs n >= 2, got {n}"));
    }
    let (lo, hi) = clique_candidates(n);
    let x0 = clique_stationary_point(n);
    debug_assert_eq!((lo, hi), (x0.floor() as usize, x0.ceil() as usize));

    let candidates: Vec<usize> = [lo, hi].into_iter().filter(|&w| w >= 1).collect();
    let values: Vec<f64> = candidates.iter().map(|&w| clique_objective(n, w as f64)).collect();
    let best = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(candidates
        .into_iter()
        .zip(values)
        .filter(|(_, f)| best - f <= CLIQUE_TIE_TOLERANCE)
        .map(|(w, _)| w)
        .collect())
}

fn check_unit(name: &str, y: &[f64], n: usize) -> Result<()> {
    if y.len() != n {
        return invalid(format!("{name} has length {}, expected {n}", y.len()));
    }
    let norm = y.iter().map(|a| a * a).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return invalid(format!("{name} is not a unit vector (norm {norm})"));
    }
    Ok(())
}

/// `Σ_{uv∈E} ((x_u + x_v)² − (z_u + z_v)²)`, a lower bound on `s_Q(G)` for any
/// unit `x`, `z`.
pub fn rayleigh_spread(g: &Graph, x: &[f64], z: &[f64]) -> Result<f64> {
    check_unit("x", x, g.n())?;
    check_unit("z", z, g.n())?;
    Ok(g.edges()
        .map(|(u, v)| (x[u] + x[v]).powi(2) - (z[u] + z[v]).powi(2))
        .sum())
}

/// `max_{u,v} |h_u − h_v|` with `h_v = λ₁ x_v² + λ̄₁ x̄_v²`.
pub fn ng_deviation(g: &Graph) -> Result<f64> {
    if !g.is_connected() && !g.complement().is_connected() {
        return invalid("neither the graph nor its complement is connected");
    }
    let r = ng_sum(g)?;
    Ok(deviation_of(&r))
}

fn deviation_of(r: &NgReport) -> f64 {
    let h = r
        .x
        .iter()
        .zip(&r.x_bar)
        .map(|(a, b)| r.lambda1 * a * a + r.lambda1_bar * b * b);
    let (lo, hi) = h.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    hi - lo
}

/// Vertex classes defined by the Perron vector `x` and least eigenvector `z`
/// of `Q(G)`: `S = {|z_v| < ε/√n}`, `T = {x_v < 1/(2√n)}`, `L = V ∖ S`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticPartition {
    pub epsilon: f64,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub l: Vec<usize>,
    pub x_max_scaled: f64,
    pub z_max_scaled: f64,
}

/// Inequalities that hold for a connected graph of maximum spread, evaluated
/// on the given graph. The last two need `n ≥ 4`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpreadFlags {
    /// `q₁ > 2n − 5`
    pub q1_above_2n_minus_5: bool,
    /// `qₙ < 3`
    pub qn_below_3: bool,
    /// `|E| > (n − 1)(n − 3)/2`
    pub edges_above_bound: bool,
    /// `x_v < √n/(n − 3)` for every `v`
    pub x_below_bound: Option<bool>,
    /// `|T| < 8`
    pub t_below_8: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub n: usize,
    pub edges: usize,
    pub q1: f64,
    pub qn: f64,
    pub partition: DiagnosticPartition,
    pub flags: SpreadFlags,
    /// `max_v x_v · √n` for the adjacency Perron vector of the connected side.
    pub perron_max_scaled: f64,
    /// `n · ng_deviation`, absent when neither side is connected.
    pub deviation_scaled: Option<f64>,
}

pub fn asymptotic_diagnostics(g: &Graph, epsilon: f64) -> Result<Diagnostics> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return invalid(format!("epsilon must be positive, got {epsilon}"));
    }
    let n = g.n();
    let nf = n as f64;
    let root_n = nf.sqrt();
    let (top, bottom) = q_extremes(g)?;
    let (x, z) = (&top.vector, &bottom.vector);

    let s: Vec<usize> = (0..n).filter(|&v| z[v].abs() < epsilon / root_n).collect();
    let t: Vec<usize> = (0..n).filter(|&v| x[v] < 1.0 / (2.0 * root_n)).collect();
    let l: Vec<usize> = (0..n).filter(|v| !s.contains(v)).collect();
    let x_max = x.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let z_max = z.iter().fold(0.0f64, |m, a| m.max(a.abs()));

    let edges = g.edge_count();
    let flags = SpreadFlags {
        q1_above_2n_minus_5: top.value > 2.0 * nf - 5.0,
        qn_below_3: bottom.value < 3.0,
        edges_above_bound: edges as f64 > (nf - 1.0) * (nf - 3.0) / 2.0,
        x_below_bound: (n >= 4).then(|| x.iter().all(|&a| a < root_n / (nf - 3.0))),
        t_below_8: (n >= 4).then_some(t.len() < 8),
    };

    let ng = ng_sum(g)?;
    let side = if g.is_connected() { &ng.x } else { &ng.x_bar };
    let perron_max_scaled = side.iter().fold(0.0f64, |m, a| m.max(*a)) * root_n;
    let deviation_scaled =
        (g.is_connected() || g.complement().is_connected()).then(|| deviation_of(&ng) * nf);

    Ok(Diagnostics {
        n,
        edges,
        q1: top.value,
        qn: bottom.value,
        partition: DiagnosticPartition {
            epsilon,
            s,
            t,
            l,
            x_max_scaled: x_max * root_n,
            z_max_scaled: z_max * root_n,
        },
        flags,
        perron_max_scaled,
        deviation_scaled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_split, named_graph, pendant_clique, Family};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn ng_sum_examples() {
        let star = named_graph(Family::Star, 4).unwrap();
        let r = ng_sum(&star).unwrap();
        assert!(close(r.lambda1, 3f64.sqrt(), 1e-12));
        assert!(close(r.lambda1_bar, 2.0, 1e-12));
        assert!(close(r.p, 2.0 + 3f64.sqrt(), 1e-12));
        assert_eq!(r.p, r.lambda1 + r.lambda1_bar);

        let p4 = named_graph(Family::Path, 4).unwrap();
        assert!(close(ng_sum(&p4).unwrap().p, 1.0 + 5f64.sqrt(), 1e-12));

        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        assert!(close(ng_sum(&g).unwrap().p, ng_sum(&g.complement()).unwrap().p, 1e-12));
    }

    #[test]
    fn ng_bound_examples() {
        assert!(close(ng_bound(5), 5.0, 1e-12));
        assert!(close(ng_bound(6), 8.0 - 5.0 / 3.0 - (17.0 - 297f64.sqrt()) / 6.0, 1e-12));
        assert!(close(ng_bound(6), 6.3722813, 1e-7));
        assert!(close(ng_bound(3), 1.0 + 2f64.sqrt(), 1e-12));
    }

    #[test]
    fn cs_lambda1_examples() {
        assert!(close(cs_lambda1(5, 1), 2.0, 1e-12));
        assert!(close(cs_lambda1(5, 2), 3.0, 1e-12));
        for n in 1..20 {
            assert!(close(cs_lambda1(n, n), n as f64 - 1.0, 1e-12));
        }
        assert!(close(cs_lambda1(5, 2), perron_pair(&complete_split(5, 2).unwrap()).unwrap().value, 1e-9));
    }

    #[test]
    fn optimal_clique_examples() {
        assert_eq!(optimal_clique(6).unwrap(), vec![2]);
        assert_eq!(optimal_clique(5).unwrap(), vec![1, 2]);
        assert_eq!(optimal_clique(7).unwrap(), vec![2]);
        assert_eq!(optimal_clique(3).unwrap(), vec![1]);
        assert_eq!(optimal_clique(2).unwrap(), vec![1]);
        assert!(optimal_clique(1).is_err());
        assert!(clique_objective(6, 1.0) < clique_objective(6, 2.0));
    }

    #[test]
    fn stationary_point_is_critical() {
        for n in [4usize, 7, 10, 33, 100] {
            let x0 = clique_stationary_point(n);
            let h = 1e-6;
            let slope = (clique_objective(n, x0 + h) - clique_objective(n, x0 - h)) / (2.0 * h);
            assert!(slope.abs() < 1e-6, "n = {n}, slope {slope}");
        }
    }

    #[test]
    fn candidate_table_matches_stationary_point() {
        for n in 2..2000 {
            let x0 = clique_stationary_point(n);
            assert_eq!(clique_candidates(n), (x0.floor() as usize, x0.ceil() as usize), "n = {n}");
        }
    }

    #[test]
    fn optimal_clique_beats_every_clique_size() {
        for n in 2..60 {
            let best = optimal_clique(n).unwrap();
            let top = cs_ng_sum(n, best[0]);
            for w in 1..=n {
                assert!(cs_ng_sum(n, w) <= top + 1e-12, "n = {n}, w = {w}");
            }
        }
    }

    #[test]
    fn q_spread_examples() {
        let r = q_spread(&named_graph(Family::Star, 4).unwrap()).unwrap();
        assert!(close(r.s, 4.0, 1e-12));
        let r = q_spread(&pendant_clique(6).unwrap()).unwrap();
        assert!(close(r.s, 57f64.sqrt(), 1e-12));
        assert!(close(r.q1, (9.0 + 57f64.sqrt()) / 2.0, 1e-12));
        assert!(close(r.qn, (9.0 - 57f64.sqrt()) / 2.0, 1e-12));
        for n in 2..12 {
            let r = q_spread(&named_graph(Family::Complete, n).unwrap()).unwrap();
            assert!(close(r.s, n as f64, 1e-12));
            assert!(close(r.q1, 2.0 * n as f64 - 2.0, 1e-12));
        }
    }

    #[test]
    fn rayleigh_spread_examples() {
        let k2 = named_graph(Family::Complete, 2).unwrap();
        let h = 0.5f64.sqrt();
        assert!(close(rayleigh_spread(&k2, &[h, h], &[h, -h]).unwrap(), 2.0, 1e-15));
        let g = pendant_clique(5).unwrap();
        let r = q_spread(&g).unwrap();
        assert_eq!(rayleigh_spread(&g, &r.x, &r.x).unwrap(), 0.0);
        assert!(close(rayleigh_spread(&g, &r.x, &r.z).unwrap(), r.s, 1e-9));
        assert!(rayleigh_spread(&g, &[1.0; 5], &r.z).is_err());
        assert!(rayleigh_spread(&g, &[1.0; 4], &r.z).is_err());
    }

    #[test]
    fn deviation_examples() {
        assert!(ng_deviation(&named_graph(Family::Cycle, 5).unwrap()).unwrap() <= 1e-9);
        assert!(ng_deviation(&named_graph(Family::Star, 6).unwrap()).unwrap() > 1e-3);
        assert!(ng_deviation(&complete_split(6, 2).unwrap()).unwrap() > 0.0);
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(ng_deviation(&two_edges).is_ok());
    }

    #[test]
    fn diagnostics_on_pendant_clique() {
        let d = asymptotic_diagnostics(&pendant_clique(6).unwrap(), DEFAULT_EPSILON).unwrap();
        assert!(close(d.q1, (9.0 + 57f64.sqrt()) / 2.0, 1e-12));
        assert!(d.flags.q1_above_2n_minus_5);
        assert!(d.flags.qn_below_3);
        assert!(d.flags.edges_above_bound);
        assert_eq!(d.flags.x_below_bound, Some(true));
        assert_eq!(d.flags.t_below_8, Some(true));
        assert!(d.partition.t.len() < 8);
        let mut all: Vec<usize> = d.partition.s.iter().chain(&d.partition.l).cloned().collect();
        all.sort();
        assert_eq!(all, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn diagnostics_on_path() {
        let d = asymptotic_diagnostics(&named_graph(Family::Path, 6).unwrap(), DEFAULT_EPSILON).unwrap();
        assert!(d.q1 < 4.0);
        assert!(!d.flags.q1_above_2n_minus_5);
        assert!(asymptotic_diagnostics(&named_graph(Family::Path, 6).unwrap(), 0.0).is_err());
        let small = asymptotic_diagnostics(&named_graph(Family::Path, 3).unwrap(), 0.1).unwrap();
        assert_eq!(small.flags.t_below_8, None);
    }
}
