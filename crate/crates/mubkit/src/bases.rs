//! The standard entangled basis family in 2 x d (d >= 3) and its
//! basis-change matrix.
//!
//! For j <= d-2 the members are
//!   `|phi_{n,j}> = (1/sqrt 2) sum_a (-1)^{na} |a>|(j (+)_{d-1} a)'>`
//! with `(+)_{d-1}` addition mod d-1; the two completion members are the
//! product states `|phi_{n,d-1}> = (1/sqrt 2)(|0> + (-1)^n |1>)|(d-1)'>`.
//!
//! Label order is fixed everywhere as n-fastest:
//! (0,0), (1,0), (0,1), (1,1), ..., (0,d-1), (1,d-1). The basis-change
//! matrix uses the same order for its columns; this convention is part of
//! the wire format and of every fixture in the test suite.

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::entanglement::BipartiteState;
use crate::error::Error;
use crate::linalg::ComplexMatrix;
use crate::scalar::{inv_sqrt2, Real};

/// Ordered collection of labelled, mutually orthonormal states.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet<T> {
    d: usize,
    labels: Vec<(usize, usize)>,
    states: Vec<BipartiteState<T>>,
}

impl<T: Real> BasisSet<T> {
    pub fn new(
        d: usize,
        labels: Vec<(usize, usize)>,
        states: Vec<BipartiteState<T>>,
    ) -> Result<Self, Error> {
        if labels.len() != states.len() {
            return Err(Error::LengthMismatch {
                left: labels.len(),
                right: states.len(),
            });
        }
        for s in &states {
            if s.d() != d {
                return Err(Error::BasisDimensionMismatch {
                    left: d,
                    right: s.d(),
                });
            }
        }
        Ok(Self { d, labels, states })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    pub fn states(&self) -> &[BipartiteState<T>] {
        &self.states
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> T {
        let mut worst = T::zero();
        for (i, a) in self.states.iter().enumerate() {
            for (j, b) in self.states.iter().enumerate().skip(i) {
                let overlap = a.inner(b).expect("uniform dimension");
                let expected = if i == j { T::one() } else { T::zero() };
                worst = worst.max((overlap - Complex::new(expected, T::zero())).norm());
            }
        }
        worst
    }
}

fn guard_dimension(d: usize) -> Result<(), Error> {
    // the index arithmetic runs mod d-1, which needs at least two values
    if d < 3 {
        return Err(Error::DimensionTooSmall { d });
    }
    Ok(())
}

fn member<T: Real>(d: usize, n: usize, m: usize) -> BipartiteState<T> {
    let amp = inv_sqrt2::<T>();
    let zero = Complex::new(T::zero(), T::zero());
    let mut amps = vec![zero; 2 * d];
    let sign = |a: usize| {
        if n * a % 2 == 1 {
            -amp
        } else {
            amp
        }
    };
    if m <= d - 2 {
        for a in 0..2 {
            amps[a * d + (m + a) % (d - 1)] = Complex::new(sign(a), T::zero());
        }
    } else {
        for a in 0..2 {
            amps[a * d + (d - 1)] = Complex::new(sign(a), T::zero());
        }
    }
    BipartiteState::new(d, amps).expect("construction is well-formed")
}

/// The 2(d-1) maximally entangled members, labels (n, j) with j <= d-2,
/// n-fastest order.
pub fn build_umeb<T: Real>(d: usize) -> Result<BasisSet<T>, Error> {
    guard_dimension(d)?;
    let mut labels = Vec::with_capacity(2 * (d - 1));
    let mut states = Vec::with_capacity(2 * (d - 1));
    for j in 0..d - 1 {
        for n in 0..2 {
            labels.push((n, j));
            states.push(member(d, n, j));
        }
    }
    BasisSet::new(d, labels, states)
}

/// All 2d members: the entangled family plus the two product completions.
pub fn complete_basis<T: Real>(d: usize) -> Result<BasisSet<T>, Error> {
    guard_dimension(d)?;
    let mut basis = build_umeb(d)?;
    for n in 0..2 {
        basis.labels.push((n, d - 1));
        basis.states.push(member(d, n, d - 1));
    }
    Ok(basis)
}

/// The 2d x 2d unitary whose k-th column is the k-th `complete_basis(d)`
/// state written out in the composite index convention; it maps the
/// computational basis onto the constructed one.
pub fn basis_change_matrix<T: Real>(d: usize) -> Result<ComplexMatrix<T>, Error> {
    let basis = complete_basis::<T>(d)?;
    let mut f = ComplexMatrix::zeros(2 * d, 2 * d);
    for (k, state) in basis.states().iter().enumerate() {
        for (row, &z) in state.amplitudes().iter().enumerate() {
            f.set(row, k, z);
        }
    }
    Ok(f)
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
struct RawBasisSet<T: Real> {
    d: usize,
    labels: Vec<(usize, usize)>,
    states: Vec<BipartiteState<T>>,
}

impl<T: Real> Serialize for BasisSet<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // not deriving: serde's derive cannot also enforce the shape
        // invariants we re-check on the way in
        let raw = RawBasisSet {
            d: self.d,
            labels: self.labels.clone(),
            states: self.states.clone(),
        };
        raw.serialize(serializer)
    }
}

impl<'de, T: Real> Deserialize<'de> for BasisSet<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawBasisSet::<T>::deserialize(deserializer)?;
        BasisSet::new(raw.d, raw.labels, raw.states).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::{verify_umeb, OptimizerConfig};
    use crate::linalg::Tolerance;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_small_dimension() {
        assert!(matches!(
            build_umeb::<f64>(2),
            Err(Error::DimensionTooSmall { d: 2 })
        ));
        assert!(matches!(
            complete_basis::<f64>(1),
            Err(Error::DimensionTooSmall { d: 1 })
        ));
    }

    #[test]
    fn umeb_members_match_the_formula() {
        let s = 0.5f64.sqrt();
        let basis = build_umeb::<f64>(4).unwrap();
        assert_eq!(basis.len(), 6);
        // (n, j) = (0, 0): amplitude 1/sqrt2 on |0,0'> and |1,1'>
        let st = &basis.states()[0];
        assert!((st.amplitude(0, 0) - c(s, 0.0)).norm() < 1e-15);
        assert!((st.amplitude(1, 1) - c(s, 0.0)).norm() < 1e-15);
        // (n, j) = (1, 2): +1/sqrt2 on |0,2'>, -1/sqrt2 on |1,0'>
        let idx = basis.labels().iter().position(|&l| l == (1, 2)).unwrap();
        let st = &basis.states()[idx];
        assert!((st.amplitude(0, 2) - c(s, 0.0)).norm() < 1e-15);
        assert!((st.amplitude(1, 0) - c(-s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn umeb_d3_members_all_maximally_entangled() {
        let basis = build_umeb::<f64>(3).unwrap();
        assert_eq!(basis.len(), 4);
        let tol = Tolerance::default();
        for st in basis.states() {
            assert!(st.is_maximally_entangled(tol));
        }
    }

    #[test]
    fn complete_basis_is_orthonormal() {
        for d in [3usize, 4, 8] {
            let basis = complete_basis::<f64>(d).unwrap();
            assert_eq!(basis.len(), 2 * d);
            assert!(basis.gram_deviation() < 1e-15);
        }
    }

    #[test]
    fn completion_members_are_the_product_pair() {
        let s = 0.5f64.sqrt();
        let basis = complete_basis::<f64>(4).unwrap();
        let idx = basis.labels().iter().position(|&l| l == (0, 3)).unwrap();
        let st = &basis.states()[idx];
        assert!((st.amplitude(0, 3) - c(s, 0.0)).norm() < 1e-15);
        assert!((st.amplitude(1, 3) - c(s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn label_order_is_n_fastest() {
        let basis = complete_basis::<f64>(3).unwrap();
        assert_eq!(
            basis.labels(),
            &[(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)]
        );
    }

    #[test]
    fn umeb_certification_for_catalog_dimensions() {
        let tol = Tolerance::default();
        let cfg = OptimizerConfig::default();
        for d in [3usize, 4, 5, 8] {
            let basis = build_umeb::<f64>(d).unwrap();
            let report = verify_umeb(basis.states(), tol, &cfg);
            assert!(report.passed, "d = {d}: {report:?}");
        }
    }

    #[test]
    fn basis_change_matrix_is_unitary_and_enumerates_the_basis() {
        for d in 3..=10 {
            let f = basis_change_matrix::<f64>(d).unwrap();
            assert!(f.unitarity_deviation().unwrap() < 1e-12, "d = {d}");
            let basis = complete_basis::<f64>(d).unwrap();
            for (k, st) in basis.states().iter().enumerate() {
                let col = f.column(k);
                for (a, b) in col.iter().zip(st.amplitudes()) {
                    assert!((a - b).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn basis_set_json_round_trip() {
        let basis = complete_basis::<f64>(3).unwrap();
        let text = serde_json::to_string(&basis).unwrap();
        let back: BasisSet<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(basis, back);
    }

    #[test]
    fn basis_set_json_rejects_mismatched_labels() {
        let basis = complete_basis::<f64>(3).unwrap();
        let mut value = serde_json::to_value(&basis).unwrap();
        value["labels"].as_array_mut().unwrap().pop();
        assert!(serde_json::from_value::<BasisSet<f64>>(value).is_err());
    }
}
