//! Small dense linear algebra.
//!
//! The solver only ever meets `n x n` matrices for `n` = 2 or 3 (plus the
//! occasional Hessian of the same size), so everything here is a
//! straightforward dense implementation: row-major storage, LU with
//! partial pivoting for solving/inverting, Laplace expansion for interval
//! determinants. Float kernels are generic over [`Real`]; the interval
//! helpers are the bridge between compiled Jacobians and the Krawczyk
//! test in [`crate::solve`].

use crate::interval::Interval;
use crate::scalar::Real;

/// Dense row-major matrix over a float scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Real> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Real> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(rows * cols, data.len(), "shape mismatch");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> R {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn matvec(&self, x: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![R::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = R::zero();
            for j in 0..self.cols {
                acc = acc + self.get(i, j) * x[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn mat_mul(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == R::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.set(i, j, out.get(i, j) + a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<R> {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> R {
        self.data
            .iter()
            .fold(R::zero(), |acc, v| acc.max(v.abs()))
    }

    /// LU decomposition with partial pivoting. Returns the packed factors
    /// and the permutation (as applied row indices) together with the
    /// permutation sign; `None` if a pivot is exactly zero.
    fn lu(&self) -> Option<(Matrix<R>, Vec<usize>, R)> {
        assert_eq!(self.rows, self.cols, "LU needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = R::one();
        for k in 0..n {
            // Pivot search.
            let mut p = k;
            let mut best = a.get(k, k).abs();
            for i in k + 1..n {
                let v = a.get(i, k).abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == R::zero() {
                return None;
            }
            if p != k {
                for j in 0..n {
                    let tmp = a.get(k, j);
                    a.set(k, j, a.get(p, j));
                    a.set(p, j, tmp);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = a.get(k, k);
            for i in k + 1..n {
                let factor = a.get(i, k) / pivot;
                a.set(i, k, factor);
                for j in k + 1..n {
                    a.set(i, j, a.get(i, j) - factor * a.get(k, j));
                }
            }
        }
        Some((a, perm, sign))
    }

    /// Solve `A x = b`; `None` on (numerically) singular `A`.
    pub fn solve(&self, b: &[R]) -> Option<Vec<R>> {
        let n = self.rows;
        assert_eq!(b.len(), n);
        let (lu, perm, _) = self.lu()?;
        // Forward substitution on permuted b.
        let mut y = vec![R::zero(); n];
        for i in 0..n {
            let mut acc = b[perm[i]];
            for j in 0..i {
                acc = acc - lu.get(i, j) * y[j];
            }
            y[i] = acc;
        }
        // Back substitution.
        let mut x = vec![R::zero(); n];
        for i in (0..n).rev() {
            let mut acc = y[i];
            for j in i + 1..n {
                acc = acc - lu.get(i, j) * x[j];
            }
            x[i] = acc / lu.get(i, i);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<R>> {
        let n = self.rows;
        let mut out = Matrix::zeros(n, n);
        // Solve for each unit vector; reuses one LU via solve would be
        // nicer, but n <= 3 makes this a non-issue.
        for j in 0..n {
            let mut e = vec![R::zero(); n];
            e[j] = R::one();
            let col = self.solve(&e)?;
            for i in 0..n {
                out.set(i, j, col[i]);
            }
        }
        Some(out)
    }

    pub fn det(&self) -> R {
        match self.lu() {
            None => R::zero(),
            Some((lu, _, sign)) => {
                let mut d = sign;
                for i in 0..self.rows {
                    d = d * lu.get(i, i);
                }
                d
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Vector helpers
// ---------------------------------------------------------------------------

pub fn dot<R: Real>(a: &[R], b: &[R]) -> R {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b.iter())
        .fold(R::zero(), |acc, (&x, &y)| acc + x * y)
}

pub fn norm2<R: Real>(a: &[R]) -> R {
    dot(a, a).sqrt()
}

pub fn axpy<R: Real>(alpha: R, x: &[R], y: &mut [R]) {
    for (yi, &xi) in y.iter_mut().zip(x.iter()) {
        *yi = *yi + alpha * xi;
    }
}

pub fn scale_vec<R: Real>(alpha: R, x: &[R]) -> Vec<R> {
    x.iter().map(|&v| alpha * v).collect()
}

pub fn sub_vec<R: Real>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b.iter()).map(|(&x, &y)| x - y).collect()
}

pub fn add_vec<R: Real>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b.iter()).map(|(&x, &y)| x + y).collect()
}

pub fn normalize<R: Real>(x: &[R]) -> Option<Vec<R>> {
    let n = norm2(x);
    if n == R::zero() {
        None
    } else {
        Some(scale_vec(R::one() / n, x))
    }
}

// ---------------------------------------------------------------------------
// Interval matrix helpers (row-major flat storage, n x n)
// ---------------------------------------------------------------------------

/// `Y * M` where `Y` is a float matrix and `M` an interval matrix.
pub fn float_mat_times_imat(y: &Matrix<f64>, m: &[Interval], n: usize) -> Vec<Interval> {
    assert_eq!(y.rows(), n);
    assert_eq!(m.len(), n * n);
    let mut out = vec![Interval::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = Interval::zero();
            for k in 0..n {
                acc = acc.add(&m[k * n + j].scale(y.get(i, k)));
            }
            out[i * n + j] = acc;
        }
    }
    out
}

/// `I - M` for an interval matrix.
pub fn identity_minus_imat(m: &[Interval], n: usize) -> Vec<Interval> {
    let mut out = m.iter().map(Interval::neg).collect::<Vec<_>>();
    for i in 0..n {
        out[i * n + i] = out[i * n + i].add(&Interval::one());
    }
    out
}

/// Interval matrix times interval vector.
pub fn imat_vec(m: &[Interval], n: usize, x: &[Interval]) -> Vec<Interval> {
    assert_eq!(m.len(), n * n);
    assert_eq!(x.len(), n);
    let mut out = vec![Interval::zero(); n];
    for i in 0..n {
        let mut acc = Interval::zero();
        for j in 0..n {
            acc = acc.add(&m[i * n + j].mul(&x[j]));
        }
        out[i] = acc;
    }
    out
}

/// Interval determinant by Laplace expansion (intended for n <= 3).
pub fn interval_det(m: &[Interval], n: usize) -> Interval {
    assert_eq!(m.len(), n * n);
    match n {
        0 => Interval::one(),
        1 => m[0],
        2 => m[0].mul(&m[3]).sub(&m[1].mul(&m[2])),
        _ => {
            let mut acc = Interval::zero();
            for j in 0..n {
                // Minor of (0, j).
                let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                for i in 1..n {
                    for k in 0..n {
                        if k != j {
                            minor.push(m[i * n + k]);
                        }
                    }
                }
                let cof = m[j].mul(&interval_det(&minor, n - 1));
                acc = if j % 2 == 0 {
                    acc.add(&cof)
                } else {
                    acc.sub(&cof)
                };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn solve_known_system() {
        let a = Matrix::new(2, 2, vec![2.0f64, 1.0, 1.0, 3.0]);
        let x = a.solve(&[5.0, 10.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_and_det() {
        let a = Matrix::new(3, 3, vec![4.0f64, 2.0, 0.0, 2.0, 5.0, 1.0, 0.0, 1.0, 3.0]);
        let inv = a.inverse().unwrap();
        let id = a.mat_mul(&inv);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id.get(i, j) - want).abs() < 1e-12);
            }
        }
        // det by cofactor: 4*(15-1) - 2*(6-0) = 56 - 12 = 44
        assert!((a.det() - 44.0).abs() < 1e-10);

        let singular = Matrix::new(2, 2, vec![1.0f64, 2.0, 2.0, 4.0]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.det(), 0.0);
    }

    #[test]
    fn works_in_f32_too() {
        let a = Matrix::new(2, 2, vec![2.0f32, 0.0, 0.0, 4.0]);
        let x = a.solve(&[2.0, 8.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-6);
        assert!((x[1] - 2.0).abs() < 1e-6);
    }

    #[test]
    fn interval_det_matches_point_matrices() {
        let m: Vec<Interval> = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 10.0]
            .iter()
            .map(|&v| Interval::point(v))
            .collect();
        let d = interval_det(&m, 3);
        // det = 1*(50-48) - 2*(40-42) + 3*(32-35) = 2 + 4 - 9 = -3
        assert!(d.contains(-3.0));
        assert!(d.width() < 1e-10);
    }

    #[test]
    fn interval_helpers_shapes() {
        let y = Matrix::new(2, 2, vec![1.0f64, 0.5, -0.5, 2.0]);
        let m: Vec<Interval> = (0..4).map(|i| Interval::point(i as f64)).collect();
        let prod = float_mat_times_imat(&y, &m, 2);
        // Row 0: [1*0 + 0.5*2, 1*1 + 0.5*3] = [1, 2.5]
        assert!(prod[0].contains(1.0));
        assert!(prod[1].contains(2.5));
        let imi = identity_minus_imat(&m, 2);
        assert!(imi[0].contains(1.0));
        assert!(imi[3].contains(-2.0));
        let v = imat_vec(&m, 2, &[Interval::one(), Interval::one()]);
        assert!(v[0].contains(1.0) && v[1].contains(5.0));
    }

    proptest! {
        #[test]
        fn solve_then_multiply_back(
            a in -5.0f64..5.0, b in -5.0f64..5.0,
            c in -5.0f64..5.0, d in -5.0f64..5.0,
            x in -5.0f64..5.0, y in -5.0f64..5.0,
        ) {
            let m = Matrix::new(2, 2, vec![a, b, c, d]);
            prop_assume!(m.det().abs() > 1e-3);
            let rhs = m.matvec(&[x, y]);
            let sol = m.solve(&rhs).unwrap();
            prop_assert!((sol[0] - x).abs() < 1e-6);
            prop_assert!((sol[1] - y).abs() < 1e-6);
        }

        #[test]
        fn interval_det_encloses_float_det(
            vals in prop::collection::vec(-3.0f64..3.0, 9),
            pad in 0.0f64..0.01,
        ) {
            let m = Matrix::new(3, 3, vals.clone());
            let exact = m.det();
            let im: Vec<Interval> = vals
                .iter()
                .map(|&v| Interval::new(v - pad, v + pad))
                .collect();
            let d = interval_det(&im, 3);
            // Float det of the center matrix must be close to the interval
            // (the interval encloses all dets over the padded family; the
            // center det can drift from `exact` only by rounding).
            prop_assert!(d.lo <= exact + 1e-9 && exact - 1e-9 <= d.hi);
        }
    }
}
