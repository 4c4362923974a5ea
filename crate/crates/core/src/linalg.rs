//! Dense symmetric linear algebra for the small matrices that arise from
//! two-balls around a vertex.
//!
//! Everything here is a pure function of its inputs. Sign decisions are left
//! to callers, which pass explicit tolerances.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};

/// Maximum number of cyclic Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 100;

/// Relative off-diagonal Frobenius norm at which the Jacobi iteration stops.
pub const JACOBI_TOLERANCE: f64 = 1e-14;

/// Dense rectangular matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }
}

/// Square symmetric matrix with full storage. `m[i][j] == m[j][i]` holds
/// bit-for-bit at all times.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Zero matrix of the given order.
    ///
    /// Panics if `order == 0`.
    pub fn zeros(order: usize) -> Self {
        assert!(order >= 1, "SymMatrix order must be at least 1");
        SymMatrix { order, data: vec![0.0; order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::DimensionMismatch("empty diagonal".into()));
        }
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        Ok(m)
    }

    /// Builds a symmetric matrix from square rows, symmetrizing by averaging
    /// `(m[i][j] + m[j][i]) / 2`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("matrix order must be at least 1".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("expected {n} columns in every row")));
        }
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, rows[i][i]);
            for j in (i + 1)..n {
                m.set(i, j, 0.5 * (rows[i][j] + rows[j][i]));
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.order + j] = value;
        self.data[j * self.order + i] = value;
    }

    /// Adds `value` to `(i, j)` and, when `i != j`, to `(j, i)`.
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.order + j] += value;
        if i != j {
            self.data[j * self.order + i] += value;
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.order).map(<[f64]>::to_vec).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `xᵀ M x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.order);
        let mut acc = 0.0;
        for i in 0..self.order {
            let row = &self.data[i * self.order..(i + 1) * self.order];
            let dot: f64 = row.iter().zip(x).map(|(a, b)| a * b).sum();
            acc += x[i] * dot;
        }
        acc
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn submatrix(&self, idx: &[usize]) -> SymMatrix {
        let mut out = SymMatrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a) {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                let v = self.get(i, j);
                acc += 2.0 * v * v;
            }
        }
        acc.sqrt()
    }
}

/// Eigendecomposition of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector belonging to `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi eigendecomposition.
pub fn eigen_sym(m: &SymMatrix) -> Result<SymEigen> {
    let n = m.order();
    let mut a = m.clone();
    // v is stored row-major with eigenvectors as columns.
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = JACOBI_TOLERANCE * (1.0 + m.frobenius_norm());

    let mut converged = false;
    for sweep in 0..=MAX_SWEEPS {
        if a.off_diagonal_norm() < threshold {
            converged = true;
            break;
        }
        if sweep == MAX_SWEEPS {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                // Entries negligible against both diagonals are dropped outright.
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a.set(p, q, 0.0);
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, c * arp - s * arq);
                    a.set(r, q, s * arp + c * arq);
                }
                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let vectors = order.iter().map(|&k| (0..n).map(|r| v[r * n + k]).collect()).collect();
    Ok(SymEigen { values, vectors })
}

pub fn min_eigenvalue(m: &SymMatrix) -> Result<f64> {
    Ok(eigen_sym(m)?.values[0])
}

/// `A − B·diag(D)⁻¹·Bᵀ`.
pub fn schur_reduce(a: &SymMatrix, b: &Matrix, d: &[f64]) -> Result<SymMatrix> {
    if b.rows() != a.order() || b.cols() != d.len() {
        return Err(Error::DimensionMismatch(format!(
            "A is {0}x{0}, B is {1}x{2}, D has {3} entries",
            a.order(),
            b.rows(),
            b.cols(),
            d.len()
        )));
    }
    if let Some((index, &value)) = d.iter().enumerate().find(|(_, v)| v.is_nan() || **v <= 0.0) {
        return Err(Error::NonPositiveDiagonal { index, value });
    }
    let n = a.order();
    let mut out = a.clone();
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for (k, dk) in d.iter().enumerate() {
                acc += b.get(i, k) * b.get(j, k) / dk;
            }
            out.set(i, j, a.get(i, j) - acc);
        }
    }
    Ok(out)
}

/// `D^{-1/2}·M·D^{-1/2}` for `D = diag(d)`.
pub fn congruence_diag(m: &SymMatrix, d: &[f64]) -> Result<SymMatrix> {
    if d.len() != m.order() {
        return Err(Error::DimensionMismatch(format!(
            "matrix order {} but {} scaling entries",
            m.order(),
            d.len()
        )));
    }
    if let Some((index, &value)) = d.iter().enumerate().find(|(_, v)| v.is_nan() || **v <= 0.0) {
        return Err(Error::NonPositiveDiagonal { index, value });
    }
    let inv_sqrt: Vec<f64> = d.iter().map(|v| 1.0 / v.sqrt()).collect();
    let n = m.order();
    let mut out = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            out.set(i, j, m.get(i, j) * inv_sqrt[i] * inv_sqrt[j]);
        }
    }
    Ok(out)
}

pub fn is_psd(m: &SymMatrix, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(m)? >= -tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym(rows: &[&[f64]]) -> SymMatrix {
        SymMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn eigen_small_cases() {
        let e = eigen_sym(&sym(&[&[2.0, 0.0], &[0.0, 1.0]])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0]);
        assert_eq!(e.vectors[0].iter().map(|v| v.abs()).collect::<Vec<_>>(), vec![0.0, 1.0]);

        let e = eigen_sym(&SymMatrix::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);

        let e = eigen_sym(&sym(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn min_eigenvalue_cases() {
        assert!((min_eigenvalue(&sym(&[&[0.0, 1.0], &[1.0, 0.0]])).unwrap() + 1.0).abs() < 1e-14);
        assert_eq!(min_eigenvalue(&sym(&[&[3.0]])).unwrap(), 3.0);
        assert!(min_eigenvalue(&sym(&[&[1.0, -1.0], &[-1.0, 1.0]])).unwrap().abs() < 1e-14);
    }

    #[test]
    fn from_rows_symmetrizes() {
        let m = sym(&[&[1.0, 2.0], &[4.0, 1.0]]);
        assert_eq!(m.get(0, 1), 3.0);
        assert_eq!(m.get(1, 0), 3.0);
        assert!(SymMatrix::from_rows(&[]).is_err());
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn schur_examples() {
        let a = sym(&[&[2.0]]);
        let b = Matrix::from_rows(&[vec![1.0]]).unwrap();
        assert_eq!(schur_reduce(&a, &b, &[1.0]).unwrap(), sym(&[&[1.0]]));

        let a = sym(&[&[4.0, 0.0], &[0.0, 4.0]]);
        let b = Matrix::from_rows(&[vec![2.0], vec![0.0]]).unwrap();
        assert_eq!(schur_reduce(&a, &b, &[2.0]).unwrap(), sym(&[&[2.0, 0.0], &[0.0, 4.0]]));

        let zero_b = Matrix::zeros(2, 3);
        assert_eq!(schur_reduce(&a, &zero_b, &[1.0, 2.0, 3.0]).unwrap(), a);
    }

    #[test]
    fn schur_rejects_nonpositive_diagonal() {
        let a = sym(&[&[4.0, 0.0], &[0.0, 4.0]]);
        let b = Matrix::zeros(2, 2);
        assert_eq!(
            schur_reduce(&a, &b, &[1.0, 0.0]),
            Err(Error::NonPositiveDiagonal { index: 1, value: 0.0 })
        );
        assert!(matches!(
            schur_reduce(&a, &b, &[-2.0, 1.0]),
            Err(Error::NonPositiveDiagonal { index: 0, .. })
        ));
        assert!(matches!(schur_reduce(&a, &b, &[1.0]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn congruence_examples() {
        assert_eq!(congruence_diag(&sym(&[&[4.0]]), &[4.0]).unwrap(), sym(&[&[1.0]]));
        let m = sym(&[&[1.0, 2.0, 3.0], &[2.0, 5.0, 6.0], &[3.0, 6.0, 9.0]]);
        assert_eq!(congruence_diag(&m, &[1.0, 1.0, 1.0]).unwrap(), m);
        let m = sym(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert_eq!(
            congruence_diag(&m, &[1.0, 4.0]).unwrap(),
            sym(&[&[1.0, 0.5], &[0.5, 0.25]])
        );
        assert!(congruence_diag(&m, &[1.0, 0.0]).is_err());
    }

    #[test]
    fn psd_examples() {
        assert!(is_psd(&SymMatrix::identity(4), 0.0).unwrap());
        assert!(!is_psd(&sym(&[&[0.0, 1.0], &[1.0, 0.0]]), 1e-9).unwrap());
        assert!(is_psd(&SymMatrix::zeros(3), 0.0).unwrap());
    }

    fn random_sym() -> impl Strategy<Value = SymMatrix> {
        (1usize..=30).prop_flat_map(|n| {
            proptest::collection::vec(-10.0f64..10.0, n * n).prop_map(move |v| {
                let rows: Vec<Vec<f64>> = v.chunks(n).map(<[f64]>::to_vec).collect();
                SymMatrix::from_rows(&rows).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn eigen_reconstructs_and_is_orthonormal(m in random_sym()) {
            let n = m.order();
            let e = eigen_sym(&m).unwrap();
            let scale = 1.0 + m.max_abs();
            for w in e.values.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
            for i in 0..n {
                for j in 0..n {
                    let rec: f64 = (0..n).map(|k| e.values[k] * e.vectors[k][i] * e.vectors[k][j]).sum();
                    prop_assert!((rec - m.get(i, j)).abs() <= 1e-9 * scale);
                    let dot: f64 = (0..n).map(|r| e.vectors[i][r] * e.vectors[j][r]).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((dot - want).abs() <= 1e-10);
                }
                // M v = λ v
                for r in 0..n {
                    let mv: f64 = (0..n).map(|c| m.get(r, c) * e.vectors[i][c]).sum();
                    prop_assert!((mv - e.values[i] * e.vectors[i][r]).abs() <= 1e-10 * scale * (n as f64));
                }
            }
            let tr = m.trace();
            prop_assert!((e.values.iter().sum::<f64>() - tr).abs() <= 1e-9 * (1.0 + tr.abs()));
        }

        #[test]
        fn schur_matches_dense_and_psd_of_blocks(
            n in 1usize..6, k in 1usize..6,
            raw in proptest::collection::vec(-3.0f64..3.0, 121),
            shift in 0.0f64..3.0,
        ) {
            // Full matrix F = R Rᵀ - shift·I, then split into blocks.
            let size = n + k;
            let r: Vec<Vec<f64>> = (0..size).map(|i| raw[i * size..(i + 1) * size].to_vec()).collect();
            let mut full = SymMatrix::zeros(size);
            for i in 0..size {
                for j in i..size {
                    let v: f64 = (0..size).map(|t| r[i][t] * r[j][t]).sum();
                    full.set(i, j, v - if i == j { shift } else { 0.0 });
                }
            }
            // Zero the off-diagonal of the trailing block so D is diagonal.
            for i in n..size {
                for j in (i + 1)..size {
                    full.set(i, j, 0.0);
                }
            }
            let a = full.submatrix(&(0..n).collect::<Vec<_>>());
            let mut b = Matrix::zeros(n, k);
            for i in 0..n {
                for j in 0..k {
                    b.set(i, j, full.get(i, n + j));
                }
            }
            let d: Vec<f64> = (0..k).map(|j| full.get(n + j, n + j)).collect();
            if d.iter().any(|v| *v <= 1e-3) {
                prop_assert!(schur_reduce(&a, &b, &d).is_err() || d.iter().all(|v| *v > 0.0));
                return Ok(());
            }
            let s = schur_reduce(&a, &b, &d).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let mut dense = a.get(i, j);
                    let mut acc = 0.0;
                    for t in 0..k {
                        acc += b.get(i, t) * b.get(j, t) / d[t];
                    }
                    dense -= acc;
                    prop_assert_eq!(s.get(i, j), dense);
                }
            }
            let full_min = min_eigenvalue(&full).unwrap();
            let schur_min = min_eigenvalue(&s).unwrap();
            if full_min.abs() > 1e-9 && schur_min.abs() > 1e-9 {
                prop_assert_eq!(full_min >= 0.0, schur_min >= 0.0);
            }
        }
    }
}
