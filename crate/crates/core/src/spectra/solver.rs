//! Householder tridiagonalization followed by the implicitly shifted QL
//! iteration (the tred2/tql2 pair of the EISPACK lineage).
//!
//! All square work arrays are column-major so that both the reduction and
//! the rotation accumulation sweep contiguous memory.

use crate::error::{Error, Result};

use super::matrix::DenseSymMatrix;

/// Eigen-decomposition of a symmetric matrix.
pub(crate) struct SymEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column-major `n × n`; column `j` is the unit eigenvector of `values[j]`.
    pub vectors: Option<Vec<f64>>,
}

pub(crate) fn max_sweeps(n: usize) -> usize {
    50 * n.max(1)
}

pub(crate) fn decompose(m: &DenseSymMatrix, want_vectors: bool) -> Result<SymEigen> {
    let n = m.order();
    if n == 0 {
        return Ok(SymEigen {
            values: Vec::new(),
            vectors: want_vectors.then(Vec::new),
        });
    }
    let mut a = m.to_col_major();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(n, &mut a, &mut d, &mut e, want_vectors);
    let mut z = want_vectors.then_some(a);
    ql_implicit(n, &mut d, &mut e, z.as_deref_mut())?;
    sort_ascending(n, &mut d, z.as_deref_mut());
    Ok(SymEigen {
        values: d,
        vectors: z,
    })
}

/// Reduces the matrix held in `a` to tridiagonal form `T = Qᵀ A Q`.
/// On return `d` is the diagonal of `T`, `e[1..]` its subdiagonal (with
/// `e[0] = 0`) and, if `accumulate`, `a` holds `Q`.
fn tridiagonalize(n: usize, a: &mut [f64], d: &mut [f64], e: &mut [f64], accumulate: bool) {
    // a[c * n + r] is entry (r, c)
    let at = |r: usize, c: usize| c * n + r;

    for j in 0..n {
        d[j] = a[at(n - 1, j)];
    }

    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for &dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = a[at(i - 1, j)];
                a[at(i, j)] = 0.0;
                a[at(j, i)] = 0.0;
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = if f > 0.0 { -h.sqrt() } else { h.sqrt() };
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);

            for j in 0..i {
                f = d[j];
                a[at(j, i)] = f;
                let col = &a[j * n..j * n + i];
                g = e[j] + col[j] * f;
                for k in j + 1..i {
                    g += col[k] * d[k];
                    e[k] += col[k] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let (fj, gj) = (d[j], e[j]);
                let col = &mut a[j * n..j * n + i];
                for k in j..i {
                    col[k] -= fj * e[k] + gj * d[k];
                }
                d[j] = a[at(i - 1, j)];
                a[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    if !accumulate {
        for j in 0..n {
            d[j] = a[at(j, j)];
        }
        e[0] = 0.0;
        return;
    }

    for i in 0..n - 1 {
        a[at(n - 1, i)] = a[at(i, i)];
        a[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = a[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let (left, right) = a.split_at_mut((i + 1) * n);
                let next = &right[..=i];
                let col = &mut left[j * n..j * n + i + 1];
                let g: f64 = next.iter().zip(col.iter()).map(|(x, y)| x * y).sum();
                for (c, dk) in col.iter_mut().zip(&d[..=i]) {
                    *c -= g * dk;
                }
            }
        }
        for k in 0..=i {
            a[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = a[at(n - 1, j)];
        a[at(n - 1, j)] = 0.0;
    }
    a[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit QL on the tridiagonal `(d, e)`; rotations are applied to the
/// columns of `z` when present. Gives up after `max_sweeps(n)` iterations in
/// total, reporting the subdiagonal magnitude that failed to vanish.
fn ql_implicit(n: usize, d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let cap = max_sweeps(n);
    let mut sweeps = 0;
    let mut shift = 0.0;
    let mut tst1: f64 = 0.0;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            loop {
                sweeps += 1;
                if sweeps > cap {
                    return Err(Error::NoConvergence {
                        iterations: cap,
                        residual: e[l].abs(),
                    });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in &mut d[l + 2..] {
                    *di -= h;
                }
                shift += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    if let Some(z) = z.as_deref_mut() {
                        let (left, right) = z.split_at_mut((i + 1) * n);
                        let ci = &mut left[i * n..];
                        let ci1 = &mut right[..n];
                        for (x, y) in ci.iter_mut().zip(ci1.iter_mut()) {
                            let t = *y;
                            *y = s * *x + c * t;
                            *x = c * *x - s * t;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += shift;
        e[l] = 0.0;
    }
    Ok(())
}

fn sort_ascending(n: usize, d: &mut [f64], mut z: Option<&mut [f64]>) {
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        for j in i + 1..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            if let Some(z) = z.as_deref_mut() {
                let (left, right) = z.split_at_mut(k * n);
                left[i * n..(i + 1) * n].swap_with_slice(&mut right[..n]);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(m: &DenseSymMatrix, eig: &SymEigen) -> f64 {
        let n = m.order();
        let z = eig.vectors.as_ref().unwrap();
        let mut worst: f64 = 0.0;
        for j in 0..n {
            let v = &z[j * n..(j + 1) * n];
            let mv = m.mul_vec(v);
            let r: f64 = mv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - eig.values[j] * b).powi(2))
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        worst
    }

    #[test]
    fn small_known_spectrum() {
        let m = DenseSymMatrix::from_rows(&[
            vec![2.0, -1.0, 0.0],
            vec![-1.0, 2.0, -1.0],
            vec![0.0, -1.0, 2.0],
        ])
        .unwrap();
        let eig = decompose(&m, true).unwrap();
        let s2 = 2f64.sqrt();
        let expect = [2.0 - s2, 2.0, 2.0 + s2];
        for (a, b) in eig.values.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
        assert!(residual(&m, &eig) < 1e-13);
    }

    #[test]
    fn values_only_path_agrees() {
        let n = 9;
        let mut m = DenseSymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                m.set(i, j, ((i * 7 + j * 3) % 11) as f64 - 5.0);
            }
        }
        let full = decompose(&m, true).unwrap();
        let vals = decompose(&m, false).unwrap();
        for (a, b) in full.values.iter().zip(&vals.values) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(residual(&m, &full) < 1e-12);
    }

    #[test]
    fn trivial_orders() {
        let one = DenseSymMatrix::from_rows(&[vec![3.5]]).unwrap();
        let eig = decompose(&one, true).unwrap();
        assert_eq!(eig.values, vec![3.5]);
        assert_eq!(eig.vectors.unwrap(), vec![1.0]);
        assert!(decompose(&DenseSymMatrix::zeros(0), true)
            .unwrap()
            .values
            .is_empty());
        let z = decompose(&DenseSymMatrix::zeros(4), false).unwrap();
        assert_eq!(z.values, vec![0.0; 4]);
    }
}
