use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::{MaximizerSet, Objective, Sense, TIE_TOLERANCE};
use crate::eigen::{adjacency_matrix, eigenvalues, signless_laplacian};
use crate::error::{invalid, Error, Result};
use crate::graph::{canonical_form, pair_count, Graph};

/// Hard cap for labeled enumeration (`2^28` masks at 8 vertices).
pub const MAX_ENUMERATION_ORDER: usize = 8;

/// Order above which exhaustive runs need [`ExhaustiveOptions::allow_order_8`].
pub const DEFAULT_MAX_EXHAUSTIVE_ORDER: usize = 7;

const CHUNK_BITS: u32 = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    /// Labeled graphs in the space, `2^{n(n-1)/2}`.
    pub labeled: u64,
    /// Graphs handed to the visitor.
    pub visited: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    /// Scan every mask instead of one of each complementary pair (NG only).
    pub full_scan: bool,
    /// Permit `n = 8`, which takes `2^28` eigensolves per matrix kind.
    pub allow_order_8: bool,
}

fn check_order(n: usize, min: usize, max: usize) -> Result<()> {
    if n < min {
        return invalid(format!("order must be at least {min}, got {n}"));
    }
    if n > max {
        return Err(Error::SizeLimit {
            what: "enumeration order",
            got: n,
            max,
        });
    }
    Ok(())
}

fn exhaustive_cap(opts: &ExhaustiveOptions) -> usize {
    if opts.allow_order_8 {
        MAX_ENUMERATION_ORDER
    } else {
        DEFAULT_MAX_EXHAUSTIVE_ORDER
    }
}

/// Visits every labeled graph on `n` vertices once, in edge-mask order.
pub fn enumerate_graphs<F: FnMut(&Graph)>(n: usize, connected_only: bool, mut visitor: F) -> Result<EnumerationStats> {
    check_order(n, 1, MAX_ENUMERATION_ORDER)?;
    let labeled = 1u64 << pair_count(n);
    let mut visited = 0;
    for mask in 0..labeled {
        let g = Graph::from_edge_mask(n, mask)?;
        if connected_only && !g.is_connected() {
            continue;
        }
        visitor(&g);
        visited += 1;
    }
    Ok(EnumerationStats { labeled, visited })
}

/// Running optimum with ties, in a sign-adjusted frame where larger is better.
#[derive(Clone, Debug)]
struct Extremum {
    sign: f64,
    best: f64,
    members: Vec<(u64, f64)>,
}

impl Extremum {
    fn new(sense: Sense) -> Self {
        Extremum {
            sign: if sense == Sense::Max { 1.0 } else { -1.0 },
            best: f64::NEG_INFINITY,
            members: Vec::new(),
        }
    }

    fn offer(&mut self, mask: u64, value: f64) {
        let v = self.sign * value;
        if v > self.best + TIE_TOLERANCE {
            self.best = v;
            self.members.clear();
            self.members.push((mask, v));
        } else if v >= self.best - TIE_TOLERANCE {
            self.best = self.best.max(v);
            self.members.push((mask, v));
        }
    }

    fn merge(mut self, other: Extremum) -> Extremum {
        self.best = self.best.max(other.best);
        self.members.extend(other.members);
        let best = self.best;
        self.members.retain(|&(_, v)| v >= best - TIE_TOLERANCE);
        self
    }

    fn value(&self) -> f64 {
        self.sign * self.best
    }

    fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        let best = self.best;
        self.members
            .iter()
            .filter(move |&&(_, v)| v >= best - TIE_TOLERANCE)
            .map(|&(m, _)| m)
    }
}

#[derive(Clone, Debug)]
struct Partial {
    extremes: Vec<Extremum>,
    scanned: u64,
}

impl Partial {
    fn new(senses: &[Sense]) -> Self {
        Partial {
            extremes: senses.iter().map(|&s| Extremum::new(s)).collect(),
            scanned: 0,
        }
    }

    fn merge(self, other: Partial) -> Partial {
        Partial {
            extremes: self
                .extremes
                .into_iter()
                .zip(other.extremes)
                .map(|(a, b)| a.merge(b))
                .collect(),
            scanned: self.scanned + other.scanned,
        }
    }
}

/// Scans all masks in parallel chunks. `eval` returns `None` to skip a mask.
fn scan<F>(n: usize, senses: &[Sense], eval: F) -> Result<Partial>
where
    F: Fn(u64) -> Result<Option<f64>> + Sync,
{
    let total = 1u64 << pair_count(n);
    let chunk_len = total.min(1 << CHUNK_BITS);
    let chunks = total / chunk_len;
    let done = AtomicU64::new(0);
    let report_every = (chunks / 10).max(1);

    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut part = Partial::new(senses);
            for mask in c * chunk_len..(c + 1) * chunk_len {
                if let Some(value) = eval(mask)? {
                    part.scanned += 1;
                    for e in &mut part.extremes {
                        e.offer(mask, value);
                    }
                }
            }
            let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
            if finished.is_multiple_of(report_every) {
                log::info!("n = {n}: scanned {} of {total} masks", finished * chunk_len);
            }
            Ok(part)
        })
        .try_reduce(|| Partial::new(senses), |a, b| Ok(a.merge(b)))
}

fn canonical_set(n: usize, masks: impl Iterator<Item = u64>) -> Result<Vec<super::CanonicalForm>> {
    let masks: BTreeSet<u64> = masks.collect();
    let mut forms = BTreeSet::new();
    for m in masks {
        forms.insert(canonical_form(&Graph::from_edge_mask(n, m)?)?);
    }
    Ok(forms.into_iter().collect())
}

fn spectral_radius(g: &Graph) -> Result<f64> {
    Ok(eigenvalues(&adjacency_matrix(g))?[0])
}

fn ng_value(g: &Graph) -> Result<f64> {
    Ok(spectral_radius(g)? + spectral_radius(&g.complement())?)
}

/// All maximizers of `p(G)` over graphs on `n` vertices, up to isomorphism.
///
/// Since `p(G) = p(Ḡ)`, the default scan only visits masks with at most half
/// of the pairs present and adds complements of the maximizers afterwards.
pub fn exhaustive_ng(n: usize, opts: ExhaustiveOptions) -> Result<MaximizerSet> {
    check_order(n, 3, exhaustive_cap(&opts))?;
    let pairs = pair_count(n) as u32;
    let full = opts.full_scan;
    let part = scan(n, &[Sense::Max], |mask| {
        if !full && 2 * mask.count_ones() > pairs {
            return Ok(None);
        }
        ng_value(&Graph::from_edge_mask(n, mask)?).map(Some)
    })?;
    let best = &part.extremes[0];
    let all = (1u64 << pairs) - 1;
    let masks: Vec<u64> = best.masks().flat_map(|m| [m, !m & all]).collect();
    Ok(MaximizerSet {
        n,
        objective: Objective::Ng,
        sense: Sense::Max,
        best_value: best.value(),
        maximizers: canonical_set(n, masks.into_iter())?,
        graphs_scanned: part.scanned,
        connected_only: false,
    })
}

/// Maximizers and minimizers of `s_Q` over connected graphs on `n` vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QSpreadExtremes {
    pub maximizers: MaximizerSet,
    pub minimizers: MaximizerSet,
}

pub fn exhaustive_qspread(n: usize, opts: ExhaustiveOptions) -> Result<QSpreadExtremes> {
    check_order(n, 3, exhaustive_cap(&opts))?;
    let part = scan(n, &[Sense::Max, Sense::Min], |mask| {
        let g = Graph::from_edge_mask(n, mask)?;
        if !g.is_connected() {
            return Ok(None);
        }
        let q = eigenvalues(&signless_laplacian(&g))?;
        Ok(Some(q[0] - q[n - 1]))
    })?;
    let build = |e: &Extremum, sense| -> Result<MaximizerSet> {
        Ok(MaximizerSet {
            n,
            objective: Objective::Qspread,
            sense,
            best_value: e.value(),
            maximizers: canonical_set(n, e.masks())?,
            graphs_scanned: part.scanned,
            connected_only: true,
        })
    };
    Ok(QSpreadExtremes {
        maximizers: build(&part.extremes[0], Sense::Max)?,
        minimizers: build(&part.extremes[1], Sense::Min)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TerpaiReport {
    pub n: usize,
    pub holds: bool,
    pub max_p: f64,
    /// `4n/3 − 1`
    pub bound: f64,
    pub slack: f64,
    pub graphs_scanned: u64,
}

/// Checks `p(G) ≤ 4n/3 − 1` on every labeled graph of order `n ≤ 7`.
pub fn verify_terpai(n: usize) -> Result<TerpaiReport> {
    check_order(n, 1, DEFAULT_MAX_EXHAUSTIVE_ORDER)?;
    let part = scan(n, &[Sense::Max], |mask| ng_value(&Graph::from_edge_mask(n, mask)?).map(Some))?;
    let bound = 4.0 * n as f64 / 3.0 - 1.0;
    let max_p = part.extremes[0].value();
    Ok(TerpaiReport {
        n,
        holds: max_p <= bound + TIE_TOLERANCE,
        max_p,
        bound,
        slack: bound - max_p,
        graphs_scanned: part.scanned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_split, named_graph, Family};

    #[test]
    fn enumeration_counts() {
        let s = enumerate_graphs(3, false, |_| {}).unwrap();
        assert_eq!((s.labeled, s.visited), (8, 8));
        assert_eq!(enumerate_graphs(3, true, |_| {}).unwrap().visited, 4);
        assert_eq!(enumerate_graphs(4, true, |_| {}).unwrap().visited, 38);
        assert_eq!(enumerate_graphs(5, false, |_| {}).unwrap().visited, 1024);
        assert!(matches!(enumerate_graphs(9, false, |_| {}), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn enumeration_visits_each_graph_once() {
        let mut seen = std::collections::HashSet::new();
        enumerate_graphs(4, false, |g| assert!(seen.insert(g.clone()))).unwrap();
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn ng_at_four() {
        let r = exhaustive_ng(4, ExhaustiveOptions::default()).unwrap();
        assert!((r.best_value - (2.0 + 3f64.sqrt())).abs() < 1e-9);
        let star = canonical_form(&named_graph(Family::Star, 4).unwrap()).unwrap();
        let tri = canonical_form(&named_graph(Family::Star, 4).unwrap().complement()).unwrap();
        let mut expect = vec![star, tri];
        expect.sort();
        assert_eq!(r.maximizers, expect);
    }

    #[test]
    fn half_and_full_scan_agree() {
        for n in [4, 5] {
            let half = exhaustive_ng(n, ExhaustiveOptions::default()).unwrap();
            let full = exhaustive_ng(n, ExhaustiveOptions { full_scan: true, ..Default::default() }).unwrap();
            assert_eq!(half.maximizers, full.maximizers);
            assert!((half.best_value - full.best_value).abs() < 1e-12);
            assert!(half.graphs_scanned < full.graphs_scanned);
        }
    }

    #[test]
    fn ng_at_five_has_four_classes() {
        let r = exhaustive_ng(5, ExhaustiveOptions::default()).unwrap();
        assert!((r.best_value - 5.0).abs() < 1e-9);
        assert_eq!(r.maximizers.len(), 4);
        for w in [1, 2] {
            let g = complete_split(5, w).unwrap();
            assert!(r.contains(&canonical_form(&g).unwrap()));
            assert!(r.contains(&canonical_form(&g.complement()).unwrap()));
        }
    }

    #[test]
    fn order_gates() {
        assert!(matches!(exhaustive_ng(8, ExhaustiveOptions::default()), Err(Error::SizeLimit { max: 7, .. })));
        assert!(exhaustive_ng(2, ExhaustiveOptions::default()).is_err());
        assert!(matches!(verify_terpai(8), Err(Error::SizeLimit { .. })));
        assert!(exhaustive_qspread(9, ExhaustiveOptions { allow_order_8: true, ..Default::default() }).is_err());
    }

    #[test]
    fn terpai_small() {
        let r = verify_terpai(3).unwrap();
        assert!(r.holds);
        assert!((r.max_p - (1.0 + 2f64.sqrt())).abs() < 1e-9);
        assert!(verify_terpai(5).unwrap().holds);
    }

    #[test]
    fn extremum_keeps_ties_and_drops_losers() {
        let mut e = Extremum::new(Sense::Min);
        e.offer(1, 3.0);
        e.offer(2, 2.0);
        e.offer(3, 2.0 + 1e-12);
        e.offer(4, 5.0);
        assert_eq!(e.value(), 2.0);
        assert_eq!(e.masks().collect::<Vec<_>>(), vec![2, 3]);
        let mut other = Extremum::new(Sense::Min);
        other.offer(9, 1.0);
        let merged = e.merge(other);
        assert_eq!(merged.masks().collect::<Vec<_>>(), vec![9]);
    }
}
