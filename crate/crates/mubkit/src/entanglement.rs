//! Entanglement structure of pure states in a 2 x d bipartite space.
//!
//! A state is stored as 2d amplitudes with the composite index `(a, j) ->
//! a*d + j`. Reshaping them into the 2 x d coefficient matrix M turns every
//! question asked here into small closed-form linear algebra: the Schmidt
//! coefficients are the singular values of M, obtained from the 2 x 2
//! Gram matrix G = M M†, and a normalized state is maximally entangled
//! exactly when det G reaches its ceiling 1/4.
//!
//! Unextendibility of a basis is certified numerically: the supremum of
//! det G over the unit sphere of the orthogonal complement is estimated by
//! deterministic multi-start gradient ascent and must stay clear of 1/4 by
//! a configurable margin.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::linalg::{inner_product, vector_norm, ComplexMatrix, Tolerance};
use crate::report::{UmebReport, VerificationReport, WorstIndex};
use crate::scalar::{inv_sqrt2, real, Real};

/// Pure state of a 2 x d system; amplitudes indexed by `(a, j) -> a*d + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState<T> {
    d: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> BipartiteState<T> {
    pub fn new(d: usize, amplitudes: Vec<Complex<T>>) -> Result<Self, Error> {
        if d < 2 {
            return Err(Error::DimensionTooSmall { d });
        }
        if amplitudes.len() != 2 * d {
            return Err(Error::LengthMismatch {
                left: amplitudes.len(),
                right: 2 * d,
            });
        }
        Ok(Self { d, amplitudes })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, a: usize, j: usize) -> Complex<T> {
        self.amplitudes[a * self.d + j]
    }

    pub fn norm(&self) -> T {
        vector_norm(&self.amplitudes)
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            d: self.d,
            amplitudes: self.amplitudes.iter().map(|z| z / n).collect(),
        }
    }

    pub fn inner(&self, other: &Self) -> Result<Complex<T>, Error> {
        inner_product(&self.amplitudes, &other.amplitudes)
    }

    /// The 2 x d matrix M with `M[a, j]` the amplitude on `|a>|j'>`.
    pub fn coefficient_matrix(&self) -> ComplexMatrix<T> {
        let mut m = ComplexMatrix::zeros(2, self.d);
        for a in 0..2 {
            for j in 0..self.d {
                m.set(a, j, self.amplitude(a, j));
            }
        }
        m
    }

    /// Singular values of the coefficient matrix, in closed form from
    /// G = M M†: lambda_{1,2} = sqrt((tr G ± sqrt(tr²G - 4 det G)) / 2).
    pub fn schmidt_coefficients(&self) -> SchmidtPair<T> {
        let (g00, g11, g01) = gram_2x2(&self.amplitudes, self.d);
        let tr = g00 + g11;
        let det = g00 * g11 - g01.norm_sqr();
        let four: T = real(4.0);
        let disc = (tr * tr - four * det).max(T::zero());
        let half = real::<T>(0.5);
        let l1 = ((tr + disc.sqrt()) * half).max(T::zero()).sqrt();
        let l2 = ((tr - disc.sqrt()) * half).max(T::zero()).sqrt();
        SchmidtPair {
            lambda1: l1,
            lambda2: l2,
        }
    }

    /// True iff both Schmidt coefficients sit at 1/sqrt(2) within `tol`,
    /// which for a normalized state is the same as det(M M†) = 1/4.
    pub fn is_maximally_entangled(&self, tol: Tolerance<T>) -> bool {
        let target = inv_sqrt2::<T>();
        let pair = self.schmidt_coefficients();
        (pair.lambda1 - target).abs() <= tol.eps() && (pair.lambda2 - target).abs() <= tol.eps()
    }
}

/// Ordered Schmidt coefficients of a 2 x d pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchmidtPair<T> {
    pub lambda1: T,
    pub lambda2: T,
}

/// Orthonormal basis of a subspace of the 2 x d state space.
#[derive(Debug, Clone)]
pub struct Subspace<T> {
    d: usize,
    basis: Vec<BipartiteState<T>>,
}

impl<T: Real> Subspace<T> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BipartiteState<T>] {
        &self.basis
    }
}

/// Knobs for the unextendibility certificate.
#[derive(Debug, Clone, Copy)]
pub struct OptimizerConfig<T> {
    /// Independent ascent starts (deterministically seeded).
    pub starts: usize,
    /// Iteration cap per start.
    pub max_iters: usize,
    /// Stop a start once the objective improves by less than this.
    pub refine_tol: T,
    /// Clause (iii) passes only if the supremum estimate stays below
    /// `1/4 - certify_margin`.
    pub certify_margin: T,
}

impl<T: Real> Default for OptimizerConfig<T> {
    fn default() -> Self {
        Self {
            starts: 64,
            max_iters: 500,
            refine_tol: real(1e-9),
            certify_margin: real(1e-6),
        }
    }
}

fn gram_2x2<T: Real>(amplitudes: &[Complex<T>], d: usize) -> (T, T, Complex<T>) {
    let mut g00 = T::zero();
    let mut g11 = T::zero();
    let mut g01 = Complex::new(T::zero(), T::zero());
    for j in 0..d {
        let top = amplitudes[j];
        let bottom = amplitudes[d + j];
        g00 += top.norm_sqr();
        g11 += bottom.norm_sqr();
        g01 = g01 + top * bottom.conj();
    }
    (g00, g11, g01)
}

/// det(M M†) of the reshaped vector; reaches 1/4 exactly at maximal
/// entanglement of a unit vector.
fn entanglement_det<T: Real>(v: &[Complex<T>], d: usize) -> T {
    let (g00, g11, g01) = gram_2x2(v, d);
    g00 * g11 - g01.norm_sqr()
}

/// Wirtinger gradient of det(M M†) with respect to conj(v).
fn entanglement_grad<T: Real>(v: &[Complex<T>], d: usize, out: &mut [Complex<T>]) {
    let (g00, g11, g01) = gram_2x2(v, d);
    for j in 0..d {
        let top = v[j];
        let bottom = v[d + j];
        out[j] = top * g11 - g01 * bottom;
        out[d + j] = bottom * g00 - g01.conj() * top;
    }
}

/// Completes `states` to a full orthonormal basis against the standard
/// basis vectors e_0, e_1, ... in that fixed order and returns the part
/// spanning the orthogonal complement.
pub fn orthogonal_complement<T: Real>(
    states: &[BipartiteState<T>],
    tol: Tolerance<T>,
) -> Result<Subspace<T>, Error> {
    let d = states.first().map_or(2, BipartiteState::d);
    check_orthonormal(states, tol)?;
    let n = 2 * d;
    let mut accepted: Vec<Vec<Complex<T>>> =
        states.iter().map(|s| s.amplitudes.clone()).collect();
    let mut complement = Vec::new();
    let accept_floor = real::<T>(1e-6).max(T::epsilon().sqrt());
    for k in 0..n {
        let mut v = vec![Complex::new(T::zero(), T::zero()); n];
        v[k] = Complex::new(T::one(), T::zero());
        // two projection passes keep the result orthogonal to working precision
        for _ in 0..2 {
            for b in &accepted {
                let proj = inner_product(b, &v).expect("equal lengths");
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = *vi - proj * bi;
                }
            }
        }
        let norm = vector_norm(&v);
        if norm > accept_floor {
            for vi in &mut v {
                *vi = *vi / norm;
            }
            accepted.push(v.clone());
            complement.push(BipartiteState { d, amplitudes: v });
        }
    }
    if accepted.len() != n {
        return Err(Error::ComplementConstruction {
            got: accepted.len() - states.len(),
            expected: n - states.len(),
        });
    }
    Ok(Subspace {
        d,
        basis: complement,
    })
}

fn check_orthonormal<T: Real>(states: &[BipartiteState<T>], tol: Tolerance<T>) -> Result<(), Error> {
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate().skip(i) {
            let overlap = a.inner(b)?;
            let expected = if i == j { T::one() } else { T::zero() };
            let dev = (overlap - Complex::new(expected, T::zero())).norm();
            if dev > tol.eps() {
                return Err(Error::NotOrthonormal {
                    i,
                    j,
                    deviation: dev.to_f64().unwrap_or(f64::NAN),
                    tolerance: tol.eps().to_f64().unwrap_or(f64::NAN),
                });
            }
        }
    }
    Ok(())
}

/// Lower-bound estimate of `sup det(M M†)` over unit vectors of the
/// subspace. Multi-start projected gradient ascent with backtracking,
/// deterministic across runs; a coarse grid seeds the ascent when the
/// subspace has dimension 2, and dimension 1 is evaluated directly.
pub fn max_entanglement_in_subspace<T: Real>(sub: &Subspace<T>, cfg: &OptimizerConfig<T>) -> T {
    let m = sub.dim();
    if m == 0 {
        return T::zero();
    }
    let d = sub.d;
    let basis: Vec<&[Complex<T>]> = sub.basis.iter().map(|s| s.amplitudes.as_slice()).collect();
    if m == 1 {
        return entanglement_det(basis[0], d);
    }

    let expand = |coeffs: &[Complex<T>]| -> Vec<Complex<T>> {
        let mut v = vec![Complex::new(T::zero(), T::zero()); 2 * d];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (vi, bi) in v.iter_mut().zip(*b) {
                *vi = *vi + *c * *bi;
            }
        }
        v
    };

    let mut best = T::zero();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d75_626b_6974_5f31);

    let mut starts: Vec<Vec<Complex<T>>> = Vec::new();
    // axis starts: each basis vector alone
    for k in 0..m {
        let mut c = vec![Complex::new(T::zero(), T::zero()); m];
        c[k] = Complex::new(T::one(), T::zero());
        starts.push(c);
    }
    if m == 2 {
        // coarse grid over inclination and relative phase, best cell as a start
        let (na, nb) = (48usize, 96usize);
        let mut grid_best = T::zero();
        let mut grid_arg = vec![Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero())];
        for ia in 0..=na {
            let alpha = T::FRAC_PI_2() * real::<T>(ia as f64 / na as f64);
            for ib in 0..nb {
                let beta = real::<T>(2.0) * T::PI() * real::<T>(ib as f64 / nb as f64);
                let c = vec![
                    Complex::new(alpha.cos(), T::zero()),
                    Complex::from_polar(alpha.sin(), beta),
                ];
                let f = entanglement_det(&expand(&c), d);
                if f > grid_best {
                    grid_best = f;
                    grid_arg = c;
                }
            }
        }
        best = best.max(grid_best);
        starts.push(grid_arg);
    }
    while starts.len() < m.max(2) + cfg.starts {
        let c: Vec<Complex<T>> = (0..m)
            .map(|_| {
                let re: f64 = rng.sample(rand_distr::StandardNormal);
                let im: f64 = rng.sample(rand_distr::StandardNormal);
                Complex::new(real::<T>(re), real::<T>(im))
            })
            .collect();
        starts.push(c);
    }

    let mut grad_v = vec![Complex::new(T::zero(), T::zero()); 2 * d];
    for start in starts {
        let mut c = start;
        let norm = vector_norm(&c);
        if norm <= T::epsilon() {
            continue;
        }
        for ci in &mut c {
            *ci = *ci / norm;
        }
        let mut f = entanglement_det(&expand(&c), d);
        let mut step = real::<T>(0.5);
        for _ in 0..cfg.max_iters {
            let v = expand(&c);
            entanglement_grad(&v, d, &mut grad_v);
            // pull the ambient gradient back to coefficient space
            let mut g: Vec<Complex<T>> = basis
                .iter()
                .map(|b| inner_product(b, &grad_v).expect("equal lengths"))
                .collect();
            // tangent projection on the unit sphere
            let radial = {
                let mut acc = Complex::new(T::zero(), T::zero());
                for (ci, gi) in c.iter().zip(&g) {
                    acc = acc + ci.conj() * gi;
                }
                acc.re
            };
            for (gi, ci) in g.iter_mut().zip(&c) {
                *gi = *gi - *ci * radial;
            }
            if vector_norm(&g) < real(1e-14) {
                break;
            }
            let mut improved = false;
            while step > real(1e-12) {
                let mut cn: Vec<Complex<T>> =
                    c.iter().zip(&g).map(|(ci, gi)| *ci + *gi * step).collect();
                let nn = vector_norm(&cn);
                for ci in &mut cn {
                    *ci = *ci / nn;
                }
                let fn_ = entanglement_det(&expand(&cn), d);
                if fn_ > f {
                    let gain = fn_ - f;
                    c = cn;
                    f = fn_;
                    improved = true;
                    step = step * real(1.5);
                    if gain < cfg.refine_tol {
                        improved = false; // converged
                    }
                    break;
                }
                step = step * real(0.5);
            }
            if !improved {
                break;
            }
        }
        best = best.max(f);
    }
    best
}

/// Runs the three-clause unextendible-basis check and reports each clause.
pub fn verify_umeb<T: Real>(
    states: &[BipartiteState<T>],
    tol: Tolerance<T>,
    cfg: &OptimizerConfig<T>,
) -> UmebReport {
    let d = states.first().map_or(2, BipartiteState::d);
    let target = inv_sqrt2::<T>();
    let eps = tol.eps().to_f64().unwrap();

    // clause (i): every member maximally entangled
    let mut worst_i = (0.0f64, 0usize);
    for (k, s) in states.iter().enumerate() {
        let pair = s.schmidt_coefficients();
        let dev = (pair.lambda1 - target)
            .abs()
            .max((pair.lambda2 - target).abs())
            .to_f64()
            .unwrap();
        if dev > worst_i.0 {
            worst_i = (dev, k);
        }
    }
    let clause_i = VerificationReport::new(
        "umeb clause (i): every state maximally entangled",
        target.to_f64().unwrap(),
        worst_i.0,
        WorstIndex::State([worst_i.1]),
        eps,
    );

    // clause (ii): pairwise orthonormality
    let mut worst_ii = (0.0f64, [0usize, 0usize]);
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate().skip(i) {
            let dev = match a.inner(b) {
                Ok(overlap) => {
                    let expected = if i == j { T::one() } else { T::zero() };
                    (overlap - Complex::new(expected, T::zero()))
                        .norm()
                        .to_f64()
                        .unwrap()
                }
                Err(_) => 1.0, // mixed dimensions can never be orthonormal
            };
            if dev > worst_ii.0 {
                worst_ii = (dev, [i, j]);
            }
        }
    }
    let clause_ii = VerificationReport::new(
        "umeb clause (ii): pairwise orthonormality",
        0.0,
        worst_ii.0,
        WorstIndex::Entry(worst_ii.1),
        eps,
    );

    // clause (iii): the complement holds no maximally entangled state
    let quarter = 0.25f64;
    let margin = cfg.certify_margin.to_f64().unwrap();
    let clause_iii = if states.len() == 2 * d {
        VerificationReport::new(
            "umeb clause (iii): vacuous, the set already spans the space (n = 2d)",
            0.0,
            0.0,
            WorstIndex::State([0]),
            quarter - margin,
        )
    } else {
        match orthogonal_complement(states, tol) {
            Ok(sub) => {
                let sup = max_entanglement_in_subspace(&sub, cfg).to_f64().unwrap();
                VerificationReport::new(
                    "umeb clause (iii): max complement entanglement det(MM\u{2020}) stays below 1/4",
                    0.0,
                    sup,
                    WorstIndex::State([0]),
                    quarter - margin,
                )
            }
            Err(_) => VerificationReport::new(
                "umeb clause (iii): complement ill-defined, input not orthonormal",
                0.0,
                quarter,
                WorstIndex::State([0]),
                quarter - margin,
            ),
        }
    };

    UmebReport::new(vec![clause_i, clause_ii, clause_iii])
}

// Wire format: a state is a 2d x 1 matrix plus its `d` field.
#[derive(Serialize, Deserialize)]
struct RawState {
    d: usize,
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl<T: Real> Serialize for BipartiteState<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawState {
            d: self.d,
            rows: 2 * self.d,
            cols: 1,
            data: self
                .amplitudes
                .iter()
                .map(|z| [z.re.to_f64().unwrap(), z.im.to_f64().unwrap()])
                .collect(),
        };
        raw.serialize(serializer)
    }
}

impl<'de, T: Real> Deserialize<'de> for BipartiteState<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawState::deserialize(deserializer)?;
        if raw.cols != 1 || raw.rows != 2 * raw.d || raw.data.len() != raw.rows {
            return Err(D::Error::custom(format!(
                "state must be a {}x1 vector with d = {}, got {}x{} with {} entries",
                 2 * raw.d, raw.d, raw.rows, raw.cols, raw.data.len(),
            )));
        }
        let amplitudes = raw
            .data
            .iter()
            .map(|&[re, im]| Complex::new(real::<T>(re), real::<T>(im)))
            .collect();
        BipartiteState::new(raw.d, amplitudes).map_err(D::Error::custom)
    }
}
