//! Dense symmetric eigensolver (cyclic Jacobi) and the graph matrices `A(G)`
//! and `Q(G) = D(G) + A(G)`.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Stop once the off-diagonal Frobenius norm is below this fraction of `‖M‖_F`.
pub const OFF_NORM_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 50;

/// Largest accepted matrix order.
pub const MAX_MATRIX_ORDER: usize = 64;

/// Eigenvalues closer than this (relative to `max(1, |λ|)`) to the extreme one
/// are treated as one eigenspace when fixing the Perron representative.
const CLUSTER_TOLERANCE: f64 = 1e-9;

/// Square symmetric matrix, stored in full and mirrored on every write.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Self {
        SymMatrix {
            order,
            entries: vec![0.0; order * order],
        }
    }

    /// Builds from row vectors; fails unless square and exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        let mut m = SymMatrix::zeros(order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return invalid("matrix is not square");
            }
            for (j, &x) in row.iter().enumerate() {
                if rows[j][i] != x {
                    return invalid(format!("matrix is not symmetric at ({i},{j})"));
                }
                m.entries[i * order + j] = x;
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.entries[i * self.order + j] = x;
        self.entries[j * self.order + i] = x;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.order)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `vᵀ M v`.
    pub fn quadratic(&self, v: &[f64]) -> f64 {
        self.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&x| x >= 0.0)
    }

    /// `‖M v − λ v‖∞`.
    pub fn residual(&self, value: f64, v: &[f64]) -> f64 {
        self.mul_vec(v)
            .iter()
            .zip(v)
            .map(|(mv, x)| (mv - value * x).abs())
            .fold(0.0, f64::max)
    }
}

pub fn adjacency_matrix(g: &Graph) -> SymMatrix {
    let mut m = SymMatrix::zeros(g.n());
    for (u, v) in g.edges() {
        m.set(u, v, 1.0);
    }
    m
}

pub fn signless_laplacian(g: &Graph) -> SymMatrix {
    let mut m = adjacency_matrix(g);
    for v in 0..g.n() {
        m.set(v, v, g.degree(v) as f64);
    }
    m
}

/// Eigenvalue with a unit eigenvector and its residual `‖M v − λ v‖∞`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

/// Eigenvalues in non-increasing order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub max_residual: f64,
}

/// Full decomposition; `vectors[k]` belongs to `values[k]`, values non-increasing.
#[derive(Clone, Debug)]
pub struct Eigendecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Runs cyclic Jacobi sweeps on `a` in place. When `v` is given it accumulates
/// the rotations (columns are eigenvectors).
fn jacobi(a: &mut [f64], n: usize, mut v: Option<&mut [f64]>, scale: f64) -> Result<()> {
    let threshold = OFF_NORM_TOLERANCE * scale;
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        s.sqrt()
    };

    for _ in 0..MAX_SWEEPS {
        if off_norm(a) <= threshold {
            return Ok(());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
                if let Some(v) = v.as_deref_mut() {
                    for r in 0..n {
                        let vrp = v[r * n + p];
                        let vrq = v[r * n + q];
                        v[r * n + p] = vrp - s * (vrq + tau * vrp);
                        v[r * n + q] = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
    }
    let off = off_norm(a);
    if off <= threshold {
        Ok(())
    } else {
        Err(Error::NumericFailure {
            sweeps: MAX_SWEEPS,
            off_norm: off,
        })
    }
}

fn check_order(m: &SymMatrix) -> Result<()> {
    if m.order == 0 {
        return invalid("matrix order must be at least 1");
    }
    if m.order > MAX_MATRIX_ORDER {
        return Err(Error::SizeLimit {
            what: "matrix order",
            got: m.order,
            max: MAX_MATRIX_ORDER,
        });
    }
    Ok(())
}

/// Eigenvalues only, sorted non-increasing. This is the hot path of the
/// exhaustive scans.
pub fn eigenvalues(m: &SymMatrix) -> Result<Vec<f64>> {
    check_order(m)?;
    let n = m.order;
    let mut a = m.entries.clone();
    jacobi(&mut a, n, None, m.frobenius_norm())?;
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_unstable_by(|x, y| y.total_cmp(x));
    Ok(values)
}

pub fn eigh(m: &SymMatrix) -> Result<Eigendecomposition> {
    check_order(m)?;
    let n = m.order;
    let mut a = m.entries.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    jacobi(&mut a, n, Some(&mut v), m.frobenius_norm())?;

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]).then(i.cmp(&j)));
    let values = idx.iter().map(|&k| a[k * n + k]).collect();
    let vectors = idx
        .iter()
        .map(|&k| {
            let col: Vec<f64> = (0..n).map(|r| v[r * n + k]).collect();
            normalized(col)
        })
        .collect();
    Ok(Eigendecomposition { values, vectors })
}

fn normalized(mut x: Vec<f64>) -> Vec<f64> {
    let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|a| *a /= norm);
    }
    x
}

pub fn full_spectrum(m: &SymMatrix) -> Result<Spectrum> {
    let dec = eigh(m)?;
    let max_residual = dec
        .values
        .iter()
        .zip(&dec.vectors)
        .map(|(&l, v)| m.residual(l, v))
        .fold(0.0, f64::max);
    Ok(Spectrum {
        values: dec.values,
        max_residual,
    })
}

impl Eigendecomposition {
    /// Top eigenpair. With `nonneg`, the vector is the projection of the
    /// all-ones vector onto the top eigenspace, which for a nonnegative matrix
    /// is a nonnegative Perron representative even when the eigenvalue is
    /// repeated (e.g. a disconnected graph with equal components).
    pub fn principal(&self, m: &SymMatrix, nonneg: bool) -> EigenPair {
        let value = self.values[0];
        let vector = if nonneg {
            let tol = CLUSTER_TOLERANCE * value.abs().max(1.0);
            let n = m.order;
            let mut w = vec![0.0; n];
            for (l, v) in self.values.iter().zip(&self.vectors) {
                if value - l > tol {
                    break;
                }
                let c: f64 = v.iter().sum();
                w.iter_mut().zip(v).for_each(|(wi, vi)| *wi += c * vi);
            }
            if w.iter().map(|x| x * x).sum::<f64>() > 1e-20 {
                normalized(w)
            } else {
                oriented(self.vectors[0].clone())
            }
        } else {
            self.vectors[0].clone()
        };
        let residual = m.residual(value, &vector);
        EigenPair {
            value,
            vector,
            residual,
        }
    }

    /// Least eigenpair.
    pub fn least(&self, m: &SymMatrix) -> EigenPair {
        let k = self.values.len() - 1;
        let vector = self.vectors[k].clone();
        EigenPair {
            value: self.values[k],
            residual: m.residual(self.values[k], &vector),
            vector,
        }
    }
}

fn oriented(mut v: Vec<f64>) -> Vec<f64> {
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

/// Largest eigenvalue and a unit eigenvector. With `nonneg`, `M` must be
/// entrywise nonnegative and the returned vector is nonnegative.
pub fn principal_pair(m: &SymMatrix, nonneg: bool) -> Result<EigenPair> {
    if nonneg && !m.is_nonnegative() {
        return invalid("nonnegative eigenvector requested for a matrix with negative entries");
    }
    Ok(eigh(m)?.principal(m, nonneg))
}

pub fn min_pair(m: &SymMatrix) -> Result<EigenPair> {
    let dec = eigh(m)?;
    Ok(dec.least(m))
}

/// `Σ_{uv ∈ E(G)} (y_u + y_v)²`, which equals `yᵀ Q(G) y`.
pub fn quadratic_form(g: &Graph, y: &[f64]) -> Result<f64> {
    if y.len() != g.n() {
        return invalid(format!("vector length {} differs from vertex count {}", y.len(), g.n()));
    }
    Ok(g.edges().map(|(u, v)| (y[u] + y[v]).powi(2)).sum())
}
