//! Arithmetic in the prime field F_q for an odd prime q.
//!
//! Elements carry their modulus, so values from different fields cannot be
//! mixed silently: the binary operators panic on a modulus mismatch, while
//! genuinely fallible operations (inversion, the quadratic-residue test)
//! return errors.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u64),
    #[error("zero has no multiplicative inverse")]
    DivisionByZero,
    #[error("zero is neither a square nor a non-square")]
    ZeroQuadraticClass,
}

/// The field F_q, q an odd prime. Cheap to copy; hand it around by value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldParams {
    q: u64,
}

impl FieldParams {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if q <= 2 || !is_prime(q) {
            return Err(FieldError::InvalidModulus(q));
        }
        Ok(Self { q })
    }

    pub fn q(self) -> u64 {
        self.q
    }

    /// Canonical residue of `value`, reduced into [0, q).
    pub fn elem(self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.q,
            q: self.q,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(self) -> FieldElement {
        self.elem(1)
    }

    /// All q residues in ascending order, for exhaustive checks.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(move |v| self.elem(v))
    }

    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> FieldElement {
        self.elem(rng.gen_range(0..self.q))
    }

    pub fn sample_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> FieldElement {
        self.elem(rng.gen_range(1..self.q))
    }

    /// Uniform draw from the (q-1)/2 quadratic non-residues.
    pub fn sample_nonsquare<R: Rng + ?Sized>(self, rng: &mut R) -> FieldElement {
        loop {
            let x = self.sample_nonzero(rng);
            if !x.is_square().expect("nonzero draw") {
                return x;
            }
        }
    }
}

/// A residue in [0, q), tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    q: u64,
}

impl FieldElement {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.q
    }

    pub fn field(self) -> FieldParams {
        FieldParams { q: self.q }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Square-and-multiply exponentiation; 0^0 = 1.
    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self { value: 1, q: self.q };
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat (x^(q-2)).
    pub fn inv(self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.q - 2))
    }

    /// Euler's criterion: x is a square iff x^((q-1)/2) = 1.
    pub fn is_square(self) -> Result<bool, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroQuadraticClass);
        }
        Ok(self.pow((self.q - 1) / 2).value == 1)
    }

    fn assert_same_field(self, rhs: Self) {
        assert_eq!(
            self.q, rhs.q,
            "mixed field moduli: {} vs {}",
            self.q, rhs.q
        );
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.assert_same_field(rhs);
        let mut v = self.value + rhs.value;
        if v >= self.q {
            v -= self.q;
        }
        Self { value: v, q: self.q }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.assert_same_field(rhs);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.q - rhs.value
        };
        Self { value: v, q: self.q }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.assert_same_field(rhs);
        let v = (u128::from(self.value) * u128::from(rhs.value) % u128::from(self.q)) as u64;
        Self { value: v, q: self.q }
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        let v = if self.value == 0 { 0 } else { self.q - self.value };
        Self { value: v, q: self.q }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the witness set covers all 64-bit inputs).
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
