//! Laplacian construction and dense symmetric eigensolution.
//!
//! The random-walk Laplacian `I − D⁻¹A` is not symmetric. Its spectrum is
//! computed through the similar matrix `I − D^{-1/2} A D^{-1/2}`, whose
//! eigenvectors `u` map to right eigenvectors `D^{-1/2} u` of the former.
//!
//! When `λ₂` is repeated (cycles, for instance) the second eigenvector is not
//! unique. The solver is deterministic, so the returned vector is
//! reproducible, but which vector of the eigenspace it is remains
//! implementation-defined.

mod matrix;
mod solver;

pub use matrix::DenseSymMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LaplacianKind {
    /// `L = D − A`.
    Unnormalized,
    /// `I − D⁻¹A`, handled through its symmetric surrogate.
    NormalizedRandomWalk,
}

/// The symmetric matrix that is decomposed for `kind`: `D − A`, or
/// `I − D^{-1/2} A D^{-1/2}` for the random-walk kind.
pub fn laplacian(g: &Graph, kind: LaplacianKind) -> Result<DenseSymMatrix> {
    let n = g.n();
    let mut m = DenseSymMatrix::zeros(n);
    match kind {
        LaplacianKind::Unnormalized => {
            for v in 0..n {
                m.set(v, v, g.degree(v) as f64);
            }
            for &(u, v) in g.edges() {
                m.set(u, v, -1.0);
            }
        }
        LaplacianKind::NormalizedRandomWalk => {
            let inv_sqrt = inverse_sqrt_degrees(g)?;
            for v in 0..n {
                m.set(v, v, 1.0);
            }
            for &(u, v) in g.edges() {
                m.set(u, v, -inv_sqrt[u] * inv_sqrt[v]);
            }
        }
    }
    Ok(m)
}

fn inverse_sqrt_degrees(g: &Graph) -> Result<Vec<f64>> {
    (0..g.n())
        .map(|v| match g.degree(v) {
            0 => Err(Error::domain(format!(
                "vertex {v} is isolated; the normalized Laplacian needs minimum degree >= 1"
            ))),
            d => Ok(1.0 / (d as f64).sqrt()),
        })
        .collect()
}

/// Explicit rows of the nonsymmetric `I − D⁻¹A`.
pub fn random_walk_laplacian_rows(g: &Graph) -> Result<Vec<Vec<f64>>> {
    let n = g.n();
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(Error::domain(format!("vertex {v} is isolated")));
    }
    let mut rows = vec![vec![0.0; n]; n];
    for (v, row) in rows.iter_mut().enumerate() {
        row[v] = 1.0;
        let inv = 1.0 / g.degree(v) as f64;
        for &w in g.neighbors(v) {
            row[w] = -inv;
        }
    }
    Ok(rows)
}

/// Acceptance threshold for eigen-residuals of `m`: `1e-10 · n · max|entry|`.
pub fn residual_tolerance(m: &DenseSymMatrix) -> f64 {
    1e-10 * m.order() as f64 * m.max_abs()
}

/// Eigenvalues and unit eigenvectors of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    /// Ascending.
    pub values: Vec<f64>,
    n: usize,
    vectors: Vec<f64>,
}

impl SymmetricEigen {
    /// Unit eigenvector of `values[j]` (0-based).
    pub fn vector(&self, j: usize) -> &[f64] {
        &self.vectors[j * self.n..(j + 1) * self.n]
    }
}

pub fn symmetric_eigen(m: &DenseSymMatrix) -> Result<SymmetricEigen> {
    let eig = solver::decompose(m, true)?;
    Ok(SymmetricEigen {
        values: eig.values,
        n: m.order(),
        vectors: eig.vectors.unwrap_or_default(),
    })
}

/// Ascending eigenvalues without eigenvectors.
pub fn symmetric_eigenvalues(m: &DenseSymMatrix) -> Result<Vec<f64>> {
    Ok(solver::decompose(m, false)?.values)
}

/// Full spectrum of a graph Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    kind: LaplacianKind,
    values: Vec<f64>,
    n: usize,
    /// Column-major; column `j` pairs with `values[j]`.
    vectors: Vec<f64>,
    residual_tol: f64,
}

impl EigenSystem {
    pub fn kind(&self) -> LaplacianKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Ascending eigenvalues.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The `i`-th smallest eigenvalue, 1-based.
    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    /// Unit eigenvector of the `i`-th smallest eigenvalue, 1-based. For the
    /// random-walk kind it is a right eigenvector of `I − D⁻¹A`.
    pub fn eigenvector(&self, i: usize) -> &[f64] {
        &self.vectors[(i - 1) * self.n..i * self.n]
    }

    pub fn residual_tol(&self) -> f64 {
        self.residual_tol
    }

    /// Row `v` of the embedding by the first `k` eigenvectors.
    pub fn embedding(&self, k: usize) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|v| (0..k).map(|j| self.vectors[j * self.n + v]).collect())
            .collect()
    }
}

/// Full eigen-decomposition of the Laplacian of `kind`.
///
/// When exactly `c` eigenvalues (one per connected component) are within
/// `residual_tol` of zero, their eigenvectors are replaced by a fixed basis of
/// the kernel: Gram–Schmidt on the all-ones vector followed by the indicators
/// of the first `c − 1` components (in the `D`-inner product for the
/// random-walk kind). The second eigenvector of a disconnected graph is then
/// constant on components and separates them.
///
/// Each eigenvector is signed so that its first entry with magnitude above
/// `10 · residual_tol` is positive.
pub fn eigensystem(g: &Graph, kind: LaplacianKind) -> Result<EigenSystem> {
    let n = g.n();
    if n == 0 {
        return Err(Error::domain("eigensystem needs at least one vertex"));
    }
    let m = laplacian(g, kind)?;
    let residual_tol = residual_tolerance(&m);
    let eig = solver::decompose(&m, true)?;
    let values = eig.values;
    let mut vectors = eig.vectors.expect("vectors requested");

    if kind == LaplacianKind::NormalizedRandomWalk {
        let inv_sqrt = inverse_sqrt_degrees(g)?;
        for col in vectors.chunks_exact_mut(n) {
            for (x, s) in col.iter_mut().zip(&inv_sqrt) {
                *x *= s;
            }
            normalize(col);
        }
    }

    let components = g.connected_components();
    let c = components.k();
    let kernel_is_clean = values[c - 1] <= residual_tol && (c == n || values[c] > residual_tol);
    if kernel_is_clean {
        let weights: Vec<f64> = match kind {
            LaplacianKind::Unnormalized => vec![1.0; n],
            LaplacianKind::NormalizedRandomWalk => g.degrees().iter().map(|&d| d as f64).collect(),
        };
        let basis = kernel_basis(components.labels(), c, &weights);
        vectors[..c * n].copy_from_slice(&basis);
    }

    for col in vectors.chunks_exact_mut(n) {
        fix_sign(col, 10.0 * residual_tol);
    }

    Ok(EigenSystem {
        kind,
        values,
        n,
        vectors,
        residual_tol,
    })
}

/// Eigenvalues of the Laplacian of `kind`, ascending.
pub fn eigenvalues(g: &Graph, kind: LaplacianKind) -> Result<Vec<f64>> {
    if g.n() == 0 {
        return Err(Error::domain("eigenvalues need at least one vertex"));
    }
    symmetric_eigenvalues(&laplacian(g, kind)?)
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

fn fix_sign(x: &mut [f64], threshold: f64) {
    if let Some(&first) = x.iter().find(|v| v.abs() > threshold) {
        if first < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

/// Column-major `n × c` block: `weights`-orthogonal, each column unit length.
fn kernel_basis(labels: &[usize], c: usize, weights: &[f64]) -> Vec<f64> {
    let n = labels.len();
    let inner = |a: &[f64], b: &[f64]| -> f64 {
        a.iter()
            .zip(b)
            .zip(weights)
            .map(|((x, y), w)| x * y * w)
            .sum()
    };
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(c);
    for j in 0..c {
        let mut v: Vec<f64> = if j == 0 {
            vec![1.0; n]
        } else {
            labels
                .iter()
                .map(|&l| if l == j - 1 { 1.0 } else { 0.0 })
                .collect()
        };
        for b in &basis {
            let coef = inner(&v, b) / inner(b, b);
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= coef * y);
        }
        basis.push(v);
    }
    let mut out = Vec::with_capacity(n * c);
    for mut v in basis {
        normalize(&mut v);
        out.extend(v);
    }
    out
}

/// Spectral norm `max |λ|` of a symmetric matrix.
pub fn spectral_norm(m: &DenseSymMatrix) -> Result<f64> {
    let values = symmetric_eigenvalues(m)?;
    Ok(values.iter().fold(0.0, |acc: f64, x| acc.max(x.abs())))
}

/// Outcome of comparing `|λ_i(A) − λ_i(A + H)|` against `‖H‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylReport {
    pub max_eigenvalue_shift: f64,
    pub perturbation_norm: f64,
    pub residual_tol: f64,
    /// `max_eigenvalue_shift ≤ perturbation_norm + 2·residual_tol`.
    pub holds: bool,
}

pub fn weyl_check(a: &DenseSymMatrix, h: &DenseSymMatrix) -> Result<WeylReport> {
    let sum = a.add(h)?;
    let before = symmetric_eigenvalues(a)?;
    let after = symmetric_eigenvalues(&sum)?;
    let norm = spectral_norm(h)?;
    let shift = before
        .iter()
        .zip(&after)
        .fold(0.0, |acc: f64, (x, y)| acc.max((x - y).abs()));
    let residual_tol = residual_tolerance(a).max(residual_tolerance(&sum));
    Ok(WeylReport {
        max_eigenvalue_shift: shift,
        perturbation_norm: norm,
        residual_tol,
        holds: shift <= norm + 2.0 * residual_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{disjoint_union, gen_complete, gen_cycle};
    use std::f64::consts::PI;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    fn residual(rows: &[Vec<f64>], lambda: f64, v: &[f64]) -> f64 {
        rows.iter()
            .zip(v)
            .map(|(row, vi)| {
                let mv: f64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                (mv - lambda * vi).powi(2)
            })
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn k2_matrices() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        let expect = vec![vec![1.0, -1.0], vec![-1.0, 1.0]];
        assert_eq!(
            laplacian(&k2, LaplacianKind::Unnormalized)
                .unwrap()
                .to_rows(),
            expect
        );
        assert_eq!(
            laplacian(&k2, LaplacianKind::NormalizedRandomWalk)
                .unwrap()
                .to_rows(),
            expect
        );
        let k4 = gen_complete(4).unwrap();
        let l = laplacian(&k4, LaplacianKind::Unnormalized).unwrap();
        assert!((0..4).all(|i| l.get(i, i) == 3.0));
    }

    #[test]
    fn isolated_vertex_is_domain_error_for_normalized_kind() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(
            laplacian(&g, LaplacianKind::NormalizedRandomWalk),
            Err(Error::Domain(_))
        ));
        assert!(eigensystem(&g, LaplacianKind::Unnormalized).is_ok());
    }

    #[test]
    fn cycle_spectrum_closed_form() {
        let es = eigensystem(&gen_cycle(8).unwrap(), LaplacianKind::Unnormalized).unwrap();
        let mut expect: Vec<f64> = (0..8)
            .map(|j| 2.0 - 2.0 * (2.0 * PI * j as f64 / 8.0).cos())
            .collect();
        expect.sort_by(f64::total_cmp);
        assert!(close(es.values(), &expect, 1e-12), "{:?}", es.values());
        assert!((es.values().iter().sum::<f64>() - 16.0).abs() < 1e-12);
    }

    #[test]
    fn complete_graph_spectra() {
        let k4 = gen_complete(4).unwrap();
        let un = eigensystem(&k4, LaplacianKind::Unnormalized).unwrap();
        assert!(close(un.values(), &[0.0, 4.0, 4.0, 4.0], 1e-12));
        let rw = eigensystem(&k4, LaplacianKind::NormalizedRandomWalk).unwrap();
        let t = 4.0 / 3.0;
        assert!(close(rw.values(), &[0.0, t, t, t], 1e-12));
    }

    #[test]
    fn two_triangles_kernel_separates_components() {
        let t = gen_complete(3).unwrap();
        let g = disjoint_union(&[t.clone(), t]);
        for kind in [
            LaplacianKind::Unnormalized,
            LaplacianKind::NormalizedRandomWalk,
        ] {
            let es = eigensystem(&g, kind).unwrap();
            assert!(es.eigenvalue(1).abs() < 1e-12 && es.eigenvalue(2).abs() < 1e-12);
            if kind == LaplacianKind::Unnormalized {
                assert!((es.eigenvalue(3) - 3.0).abs() < 1e-12);
            }
            let v1 = es.eigenvector(1);
            assert!(v1.iter().all(|&x| (x - v1[0]).abs() < 1e-15 && x > 0.0));
            let v2 = es.eigenvector(2);
            assert!(v2[..3].iter().all(|&x| x > 0.0));
            assert!(v2[3..].iter().all(|&x| x < 0.0));
        }
    }

    #[test]
    fn residuals_orthonormality_and_signs() {
        let g = Graph::new(
            6,
            [
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 3),
                (1, 4),
            ],
        )
        .unwrap();
        let un = eigensystem(&g, LaplacianKind::Unnormalized).unwrap();
        let rows = laplacian(&g, LaplacianKind::Unnormalized)
            .unwrap()
            .to_rows();
        for i in 1..=6 {
            assert!(residual(&rows, un.eigenvalue(i), un.eigenvector(i)) <= un.residual_tol());
            for j in 1..=6 {
                let dot: f64 = un
                    .eigenvector(i)
                    .iter()
                    .zip(un.eigenvector(j))
                    .map(|(a, b)| a * b)
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() <= un.residual_tol());
            }
            let first = un
                .eigenvector(i)
                .iter()
                .find(|x| x.abs() > 10.0 * un.residual_tol())
                .unwrap();
            assert!(*first > 0.0);
        }
        let rw = eigensystem(&g, LaplacianKind::NormalizedRandomWalk).unwrap();
        let rows = random_walk_laplacian_rows(&g).unwrap();
        for i in 1..=6 {
            assert!(residual(&rows, rw.eigenvalue(i), rw.eigenvector(i)) <= rw.residual_tol());
            assert!(
                rw.eigenvalue(i) > -rw.residual_tol() && rw.eigenvalue(i) < 2.0 + rw.residual_tol()
            );
        }
        let v1 = rw.eigenvector(1);
        assert!(v1.iter().all(|&x| (x - v1[0]).abs() < 1e-12));
    }

    #[test]
    fn spectral_norm_examples() {
        assert_eq!(spectral_norm(&DenseSymMatrix::zeros(3)).unwrap(), 0.0);
        assert!((spectral_norm(&DenseSymMatrix::identity(5)).unwrap() - 1.0).abs() < 1e-15);
        let e = laplacian(
            &Graph::new(4, [(1, 3)]).unwrap(),
            LaplacianKind::Unnormalized,
        )
        .unwrap();
        assert!((spectral_norm(&e).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn weyl_examples() {
        let a = laplacian(&gen_cycle(8).unwrap(), LaplacianKind::Unnormalized).unwrap();
        let zero = weyl_check(&a, &DenseSymMatrix::zeros(8)).unwrap();
        assert!(zero.holds && zero.max_eigenvalue_shift < 1e-12 && zero.perturbation_norm == 0.0);

        let e = laplacian(
            &Graph::new(8, [(0, 1)]).unwrap(),
            LaplacianKind::Unnormalized,
        )
        .unwrap();
        let r = weyl_check(&a, &e.scale(-1.0)).unwrap();
        assert!(r.holds && r.max_eigenvalue_shift <= 2.0 + 1e-12);

        let r = weyl_check(&a, &DenseSymMatrix::identity(8).scale(0.75)).unwrap();
        assert!((r.max_eigenvalue_shift - 0.75).abs() < 1e-12 && r.holds);

        assert!(matches!(
            weyl_check(&a, &DenseSymMatrix::zeros(3)),
            Err(Error::Validation(_))
        ));
    }
}
