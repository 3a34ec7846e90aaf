//! Dense complex vectors and matrices.
//!
//! Everything downstream works on small dense matrices (at most 2d x 2d with
//! d <= 16), so storage is a plain row-major `Vec<Complex<T>>` and all
//! operations are written out directly. Composite bipartite indices follow
//! the fixed convention `(a, j) -> a*d + j` throughout the crate.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::scalar::{real, Real};

/// Absolute deviation bound used by every pass/fail numeric check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    eps: T,
}

impl<T: Real> Tolerance<T> {
    /// Default bound: generous against round-off at these sizes, far below
    /// any honest failure.
    pub const DEFAULT_EPS: f64 = 1e-10;

    pub fn new(eps: T) -> Result<Self, Error> {
        if eps <= T::zero() {
            return Err(Error::NonPositiveTolerance(eps.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { eps })
    }

    pub fn eps(&self) -> T {
        self.eps
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            eps: real(Self::DEFAULT_EPS),
        }
    }
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    /// Builds a matrix from row-major data; the length must match.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::BadDataLength {
                len: data.len(),
                rows,
                cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::new(T::zero(), T::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex::new(T::one(), T::zero()));
        }
        m
    }

    pub fn diagonal(entries: &[Complex<T>]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m.set(i, i, z);
        }
        m
    }

    /// Builds a matrix from nested rows, checking that they are rectangular.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::BadDataLength {
                    len: row.len(),
                    rows: 1,
                    cols: c,
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(r, c, data)
    }

    /// Real matrix scaled by `scale`, handy for sign patterns.
    pub fn from_real_scaled(rows: usize, cols: usize, entries: &[f64], scale: T) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::BadDataLength {
                len: entries.len(),
                rows,
                cols,
            });
        }
        let data = entries
            .iter()
            .map(|&x| Complex::new(real::<T>(x) * scale, T::zero()))
            .collect();
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        self.data[row * self.cols + col] = value;
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn column(&self, col: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Standard matrix product.
    pub fn matmul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..self.cols {
                    acc = acc + self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>, Error> {
        if self.cols != v.len() {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..self.cols {
                acc = acc + self.get(i, k) * v[k];
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Kronecker product with the block convention
    /// `(A (x) B)[p*B.rows + q, r*B.cols + s] = A[p,r] * B[q,s]`,
    /// which realizes the composite index map `(a, j) -> a*d + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for p in 0..self.rows {
            for r in 0..self.cols {
                let a = self.get(p, r);
                for q in 0..other.rows {
                    for s in 0..other.cols {
                        out.set(p * other.rows + q, r * other.cols + s, a * other.get(q, s));
                    }
                }
            }
        }
        out
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut worst = T::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            worst = worst.max((a - b).norm());
        }
        Ok(worst)
    }

    /// Max-entry deviation of `A† A` from the identity; the matrix must be square.
    pub fn unitarity_deviation(&self) -> Result<T, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let gram = self.adjoint().matmul(self)?;
        gram.max_abs_diff(&Self::identity(self.rows))
    }

    /// True iff `A† A = I` within `tol`.
    pub fn is_unitary(&self, tol: Tolerance<T>) -> Result<bool, Error> {
        Ok(self.unitarity_deviation()? <= tol.eps())
    }
}

/// Inner product, conjugate-linear in the first argument: `sum conj(u_k) v_k`.
pub fn inner_product<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> Result<Complex<T>, Error> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    for (a, b) in u.iter().zip(v) {
        acc = acc + a.conj() * b;
    }
    Ok(acc)
}

pub fn vector_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Haar-like random unitary: complex Gaussian matrix orthonormalized by
/// modified Gram-Schmidt with a second pass, columns phase-fixed by the
/// R diagonal. Deterministic given the generator state.
pub fn random_unitary<T: Real, R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix<T> {
    let mut cols: Vec<Vec<Complex<T>>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex::new(real::<T>(re), real::<T>(im))
                })
                .collect()
        })
        .collect();
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let proj = inner_product(&cols[i], &cols[j]).expect("equal lengths");
                for k in 0..n {
                    let prev = cols[i][k];
                    cols[j][k] = cols[j][k] - proj * prev;
                }
            }
        }
        let norm = vector_norm(&cols[j]);
        for k in 0..n {
            cols[j][k] = cols[j][k] / norm;
        }
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            m.set(i, j, z);
        }
    }
    m
}

// JSON wire format shared by every module:
// {"rows": int, "cols": int, "data": [[re, im], ...]} with data row-major.
// Entries always cross the wire as f64 regardless of T.
#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl<T: Real> Serialize for ComplexMatrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|z| [z.re.to_f64().unwrap(), z.im.to_f64().unwrap()])
                .collect(),
        };
        raw.serialize(serializer)
    }
}

impl<'de, T: Real> Deserialize<'de> for ComplexMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawMatrix::deserialize(deserializer)?;
        if raw.data.len() != raw.rows * raw.cols {
            return Err(D::Error::custom(format!(
                "data length {} does not match a {}x{} matrix",
                raw.data.len(),
                raw.rows,
                raw.cols
            )));
        }
        let data = raw
            .data
            .iter()
            .map(|&[re, im]| Complex::new(real::<T>(re), real::<T>(im)))
            .collect();
        Ok(Self {
            rows: raw.rows,
            cols: raw.cols,
            data,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// The 4x4 sign matrix with -1 on the diagonal, scaled by 1/2.
    fn catalog_w1() -> ComplexMatrix<f64> {
        ComplexMatrix::from_real_scaled(
            4,
            4,
            &[
                -1.0, 1.0, 1.0, 1.0, //
                1.0, -1.0, 1.0, 1.0, //
                1.0, 1.0, -1.0, 1.0, //
                1.0, 1.0, 1.0, -1.0,
            ],
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn matmul_identity() {
        let i2 = ComplexMatrix::<f64>::identity(2);
        let prod = i2.matmul(&i2).unwrap();
        assert_eq!(prod, i2);
    }

    #[test]
    fn matmul_squares_the_imaginary_unit() {
        let m = ComplexMatrix::diagonal(&[c(0.0, 1.0), c(1.0, 0.0)]);
        let sq = m.matmul(&m).unwrap();
        let expected = ComplexMatrix::diagonal(&[c(-1.0, 0.0), c(1.0, 0.0)]);
        assert!(sq.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn matmul_shape_error_names_both_shapes() {
        let a = ComplexMatrix::<f64>::zeros(2, 3);
        let b = ComplexMatrix::<f64>::zeros(2, 3);
        match a.matmul(&b) {
            Err(Error::ShapeMismatch {
                left_rows: 2,
                left_cols: 3,
                right_rows: 2,
                right_cols: 3,
            }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn symmetric_sign_matrix_squares_to_identity() {
        let w = catalog_w1();
        let sq = w.matmul(&w).unwrap();
        assert!(sq.max_abs_diff(&ComplexMatrix::identity(4)).unwrap() < 1e-15);
    }

    #[test]
    fn tensor_identity() {
        let t = ComplexMatrix::<f64>::identity(2).tensor(&ComplexMatrix::identity(4));
        assert!(t.max_abs_diff(&ComplexMatrix::identity(8)).unwrap() < 1e-15);
    }

    #[test]
    fn tensor_entry_matches_block_convention() {
        // S = diag(i, 1) against the diagonal -1 sign matrix: top-left block
        // entry is s11 * w11 = i * (-1/2).
        let s = ComplexMatrix::diagonal(&[c(0.0, 1.0), c(1.0, 0.0)]);
        let t = s.tensor(&catalog_w1());
        assert!((t.get(0, 0) - c(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn adjoint_basics() {
        let i3 = ComplexMatrix::<f64>::identity(3);
        assert_eq!(i3.adjoint(), i3);
        let m = ComplexMatrix::diagonal(&[c(0.0, 1.0), c(1.0, 0.0)]);
        let expected = ComplexMatrix::diagonal(&[c(0.0, -1.0), c(1.0, 0.0)]);
        assert_eq!(m.adjoint(), expected);
        // adjoint is an involution, exactly
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn unitarity_check() {
        let tol = Tolerance::default();
        assert!(catalog_w1().is_unitary(tol).unwrap());
        let ones = ComplexMatrix::from_real_scaled(2, 2, &[1.0; 4], 1.0).unwrap();
        assert!(!ones.is_unitary(tol).unwrap());
        let rect = ComplexMatrix::<f64>::zeros(2, 3);
        assert!(matches!(
            rect.is_unitary(tol),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn inner_product_basis_vectors() {
        let e0 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let e1 = vec![c(0.0, 0.0), c(1.0, 0.0)];
        assert_eq!(inner_product(&e0, &e0).unwrap(), c(1.0, 0.0));
        assert_eq!(inner_product(&e0, &e1).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            inner_product(&e0, &[c(1.0, 0.0)]),
            Err(Error::LengthMismatch { left: 2, right: 1 })
        ));
    }

    #[test]
    fn inner_product_is_conjugate_linear_in_first_argument() {
        let u = vec![c(0.0, 1.0)];
        let v = vec![c(1.0, 0.0)];
        // <i e0, e0> = conj(i) = -i
        assert!((inner_product(&u, &v).unwrap() - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn random_unitary_is_unitary() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in [2usize, 4, 8] {
            let u = random_unitary::<f64, _>(n, &mut rng);
            assert!(u.unitarity_deviation().unwrap() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.1234567890123456, -1.0), c(std::f64::consts::PI, 0.0)],
            vec![c(0.0, 2.220446049250313e-16), c(-0.5, 0.5)],
        ])
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: ComplexMatrix<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn json_rejects_bad_data_length() {
        let text = r#"{"rows": 2, "cols": 2, "data": [[1.0, 0.0]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix<f64>>(text).is_err());
    }

    #[test]
    fn works_in_f32_too() {
        let m = ComplexMatrix::<f32>::identity(4);
        assert!(m.is_unitary(Tolerance::new(1e-5).unwrap()).unwrap());
    }
}
