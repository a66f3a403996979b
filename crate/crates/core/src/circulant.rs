//! Circulant matrices over F_q.
//!
//! A circulant is stored as its first column c; column j is the cyclic
//! downward shift of c by j, so the matrix-vector product is exactly the
//! cyclic convolution c * x. Inversion and solving go through the polynomial
//! ring F_q[x]/(x^n - 1): the matrix is invertible iff gcd(c(x), x^n - 1) = 1,
//! and the extended Euclidean algorithm yields the inverse column. Gaussian
//! elimination on the expanded matrix (see `matrix`) is kept strictly as an
//! independent cross-check.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::BigUint;
use num::One;
use rand::Rng;
use thiserror::Error;

use crate::field::{FieldElement, FieldParams};
use crate::matrix::Matrix;
use crate::poly::{factor_profile_xn_minus_1, Polynomial};
use crate::trials::{run_trials, ZeroTrials};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("circulant matrix is singular")]
pub struct SingularCirculant;

/// Cyclic convolution (a * b)_k = sum over i+j = k (mod n) of a_i b_j.
pub fn convolve(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    assert!(!a.is_empty(), "empty vectors");
    let n = a.len();
    let field = a[0].field();
    let mut out = vec![field.zero(); n];
    for (i, &ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let mut k = i + j;
            if k >= n {
                k -= n;
            }
            out[k] += ai * bj;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circulant {
    field: FieldParams,
    col: Vec<FieldElement>,
}

impl Circulant {
    pub fn new(field: FieldParams, col: impl IntoIterator<Item = u64>) -> Self {
        let col: Vec<_> = col.into_iter().map(|v| field.elem(v)).collect();
        assert!(!col.is_empty(), "circulant needs at least one entry");
        Self { field, col }
    }

    pub fn from_elems(field: FieldParams, col: Vec<FieldElement>) -> Self {
        assert!(!col.is_empty(), "circulant needs at least one entry");
        for e in &col {
            assert_eq!(e.modulus(), field.q(), "entry from a different field");
        }
        Self { field, col }
    }

    pub fn random<R: Rng + ?Sized>(field: FieldParams, n: usize, rng: &mut R) -> Self {
        Self::from_elems(field, (0..n).map(|_| field.sample(rng)).collect())
    }

    pub fn field(&self) -> FieldParams {
        self.field
    }

    pub fn n(&self) -> usize {
        self.col.len()
    }

    pub fn col(&self) -> &[FieldElement] {
        &self.col
    }

    /// The polynomial c(x) = sum col[i] x^i.
    pub fn poly(&self) -> Polynomial {
        Polynomial::from_elems(self.field, self.col.clone())
    }

    /// Dense n x n matrix with entry (i, j) = col[(i - j) mod n].
    pub fn expand(&self) -> Matrix {
        let n = self.n();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| self.col[(i + n - j) % n]).collect())
            .collect();
        Matrix::from_rows(self.field, rows)
    }

    /// Matrix-vector product, computed directly as cyclic convolution.
    pub fn matvec(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(x.len(), self.n(), "dimension mismatch");
        convolve(&self.col, x)
    }

    /// Product of circulants is circulant; its first column is self applied
    /// to the other first column.
    pub fn mul(&self, rhs: &Circulant) -> Circulant {
        Circulant::from_elems(self.field, self.matvec(rhs.col()))
    }

    /// Invertibility via gcd(c(x), x^n - 1) = 1.
    pub fn is_invertible(&self) -> bool {
        let modulus = Polynomial::x_pow_n_minus_1(self.field, self.n());
        match self.poly().gcd(&modulus) {
            Ok(g) => g.degree() == Some(0),
            Err(_) => false, // zero column
        }
    }

    /// Inverse circulant through the inverse of c(x) mod x^n - 1.
    pub fn inverse(&self) -> Result<Circulant, SingularCirculant> {
        let modulus = Polynomial::x_pow_n_minus_1(self.field, self.n());
        let inv = self
            .poly()
            .inverse_mod(&modulus)
            .ok_or(SingularCirculant)?;
        let col = (0..self.n()).map(|i| inv.coeff(i)).collect();
        Ok(Circulant::from_elems(self.field, col))
    }

    /// Solves self * a = w.
    pub fn solve(&self, w: &[FieldElement]) -> Result<Vec<FieldElement>, SingularCirculant> {
        assert_eq!(w.len(), self.n(), "dimension mismatch");
        Ok(self.inverse()?.matvec(w))
    }
}

/// Number of invertible n x n circulants over F_q: the product over the
/// factorization profile of x^n - 1 of (q^(d*a) - q^(d*(a-1))).
pub fn count_invertible(field: FieldParams, n: usize) -> BigUint {
    let profile = factor_profile_xn_minus_1(field, n).expect("n >= 1");
    let q = BigUint::from(field.q());
    let mut total = BigUint::one();
    for &(d, a) in profile.entries() {
        let d = d as u64;
        total *= q.pow((d * a) as u32) - q.pow((d * (a - 1)) as u32);
    }
    total
}

/// Exact probability that a uniformly random circulant is invertible,
/// as a reduced fraction count / q^n. Equals (q-1)/q whenever q divides n.
pub fn prob_invertible(field: FieldParams, n: usize) -> Ratio<BigInt> {
    let count = BigInt::from(count_invertible(field, n));
    let space = BigInt::from(field.q()).pow(n as u32);
    Ratio::new(count, space)
}

/// [`prob_invertible`] rounded into an f64, for report output.
pub fn prob_invertible_f64(field: FieldParams, n: usize) -> f64 {
    use num::ToPrimitive;
    prob_invertible(field, n).to_f64().unwrap_or(f64::NAN)
}

/// Outcome of a Monte Carlo invertibility estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvertibilityEstimate {
    pub hits: u64,
    pub trials: u64,
}

impl InvertibilityEstimate {
    pub fn rate(&self) -> f64 {
        self.hits as f64 / self.trials as f64
    }
}

/// Estimates the invertibility rate over columns drawn by `sample_col`; the
/// per-trial rng streams make the result independent of the schedule.
pub fn estimate_invertibility<F>(
    field: FieldParams,
    n: usize,
    trials: u64,
    seed: u64,
    sample_col: F,
) -> Result<InvertibilityEstimate, ZeroTrials>
where
    F: Fn(FieldParams, usize, &mut rand_chacha::ChaCha8Rng) -> Vec<FieldElement> + Sync,
{
    if trials == 0 {
        return Err(ZeroTrials);
    }
    let hits = run_trials(trials, seed, |_, rng| {
        let col = sample_col(field, n, rng);
        u64::from(Circulant::from_elems(field, col).is_invertible())
    });
    Ok(InvertibilityEstimate { hits, trials })
}

/// Monte Carlo invertibility rate over uniformly random columns (the zero
/// column counts as a draw; it is simply singular).
pub fn estimate_prob_invertible(
    field: FieldParams,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<InvertibilityEstimate, ZeroTrials> {
    estimate_invertibility(field, n, trials, seed, |f, n, rng| {
        (0..n).map(|_| f.sample(rng)).collect()
    })
}

/// Sequential twin of [`estimate_prob_invertible`] for schedule comparisons.
pub fn estimate_prob_invertible_seq(
    field: FieldParams,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<InvertibilityEstimate, ZeroTrials> {
    if trials == 0 {
        return Err(ZeroTrials);
    }
    let hits = crate::trials::run_trials_seq(trials, seed, |_, rng| {
        let col = (0..n).map(|_| field.sample(rng)).collect();
        u64::from(Circulant::from_elems(field, col).is_invertible())
    });
    Ok(InvertibilityEstimate { hits, trials })
}
