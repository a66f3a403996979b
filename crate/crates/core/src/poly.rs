//! Univariate polynomials over F_q: ring arithmetic, Euclidean gcd, and the
//! degree/multiplicity profile of the factorization of x^n - 1.
//!
//! The profile is all the downstream counting formulas need, so factorization
//! stops at distinct-degree splitting and never names the factors themselves.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use thiserror::Error;

use crate::field::{FieldElement, FieldParams};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial division by zero")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("exponent n must be at least 1")]
    ZeroExponent,
}

/// Dense coefficient vector, index i = coefficient of x^i. Always normalized:
/// no trailing zeros, and the zero polynomial has an empty vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldParams,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: FieldParams, coeffs: impl IntoIterator<Item = u64>) -> Self {
        Self::from_elems(field, coeffs.into_iter().map(|c| field.elem(c)).collect())
    }

    pub fn from_elems(field: FieldParams, coeffs: Vec<FieldElement>) -> Self {
        for c in &coeffs {
            assert_eq!(c.modulus(), field.q(), "coefficient from a different field");
        }
        let mut p = Self { field, coeffs };
        p.normalize();
        p
    }

    pub fn zero(field: FieldParams) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldParams) -> Self {
        Self::new(field, [1])
    }

    pub fn x(field: FieldParams) -> Self {
        Self::new(field, [0, 1])
    }

    pub fn monomial(field: FieldParams, coeff: u64, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = coeff;
        Self::new(field, coeffs)
    }

    /// x^n - 1.
    pub fn x_pow_n_minus_1(field: FieldParams, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[0] = -field.one();
        coeffs[n] = field.one();
        Self::from_elems(field, coeffs)
    }

    pub fn field(&self) -> FieldParams {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| c.value() == 1).unwrap_or(false)
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => self.scale(lead.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, k: FieldElement) -> Self {
        Self::from_elems(self.field, self.coeffs.iter().map(|&c| c * k).collect())
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    fn assert_same_field(&self, rhs: &Self) {
        assert_eq!(self.field, rhs.field, "mixed coefficient fields");
    }

    /// Euclidean division: self = q * divisor + r with deg r < deg divisor.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.assert_same_field(divisor);
        let d_deg = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(d_deg)];
        while rem.len() > d_deg {
            let shift = rem.len() - 1 - d_deg;
            let factor = *rem.last().unwrap() * lead_inv;
            if !factor.is_zero() {
                quot[shift] = factor;
                for (i, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= factor * dc;
                }
            }
            rem.pop();
        }
        Ok((
            Self::from_elems(self.field, quot),
            Self::from_elems(self.field, rem),
        ))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic greatest common divisor by Euclid's algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.assert_same_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// Extended Euclid: returns (g, u, v) with u*self + v*other = g, g monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self), PolyError> {
        self.assert_same_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let field = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Self::one(field), Self::zero(field));
        let (mut v0, mut v1) = (Self::zero(field), Self::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let u = &u0 - &(&q * &u1);
            u0 = std::mem::replace(&mut u1, u);
            let v = &v0 - &(&q * &v1);
            v0 = std::mem::replace(&mut v1, v);
        }
        let lead_inv = r0.leading().unwrap().inv().unwrap();
        Ok((r0.scale(lead_inv), u0.scale(lead_inv), v0.scale(lead_inv)))
    }

    pub fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Result<Self, PolyError> {
        (self * rhs).rem(modulus)
    }

    /// self^exp mod modulus by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Result<Self, PolyError> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(self.field).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            base = base.mul_mod(&base, modulus)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Inverse of self in F_q[x]/(modulus), if coprime to the modulus.
    pub fn inverse_mod(&self, modulus: &Self) -> Option<Self> {
        let (g, u, _) = self.ext_gcd(modulus).ok()?;
        if g.degree() == Some(0) {
            Some(u.rem(modulus).expect("nonzero modulus"))
        } else {
            None
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}x", c)?,
                _ => write!(f, "{}x^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        self.assert_same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Polynomial::from_elems(self.field, coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        self.assert_same_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::from_elems(self.field, coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        self.assert_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_elems(self.field, coeffs)
    }
}

/// One entry per irreducible factor: (degree, multiplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorProfile {
    field: FieldParams,
    n: usize,
    entries: Vec<(usize, u64)>,
}

impl FactorProfile {
    pub fn field(&self) -> FieldParams {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted (degree, multiplicity) pairs, one per irreducible factor.
    pub fn entries(&self) -> &[(usize, u64)] {
        &self.entries
    }

    /// Sum of degree * multiplicity over all factors; must equal n.
    pub fn total_degree(&self) -> u64 {
        self.entries
            .iter()
            .map(|&(d, a)| d as u64 * a)
            .sum()
    }
}

impl fmt::Display for FactorProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(d, a)| format!("(d={},a={})", d, a))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Degree/multiplicity profile of the factorization of x^n - 1 over F_q.
///
/// Writes n = q^k * n' with q coprime to n', so x^n - 1 = (x^n' - 1)^(q^k) in
/// characteristic q; the square-free part x^n' - 1 is then split by
/// distinct-degree factorization (gcd with x^(q^d) - x for d = 1, 2, ...).
pub fn factor_profile_xn_minus_1(
    field: FieldParams,
    n: usize,
) -> Result<FactorProfile, PolyError> {
    if n == 0 {
        return Err(PolyError::ZeroExponent);
    }
    let q = field.q();
    let mut reduced = n as u64;
    let mut multiplicity = 1u64;
    while reduced.is_multiple_of(q) {
        reduced /= q;
        multiplicity *= q;
    }

    let mut entries = Vec::new();
    let mut remaining = Polynomial::x_pow_n_minus_1(field, reduced as usize);
    let x = Polynomial::x(field);
    // Frobenius power x^(q^d) mod remaining, advanced one q-power per round.
    let mut frob = x.rem(&remaining)?;
    let mut d = 0usize;
    while let Some(deg) = remaining.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            // What is left is a single irreducible factor.
            entries.push((deg, multiplicity));
            break;
        }
        frob = frob.pow_mod(q, &remaining)?;
        let split = (&frob - &x).gcd(&remaining)?;
        if let Some(split_deg) = split.degree() {
            if split_deg > 0 {
                debug_assert_eq!(split_deg % d, 0);
                for _ in 0..split_deg / d {
                    entries.push((d, multiplicity));
                }
                remaining = remaining.divmod(&split)?.0;
                frob = frob.rem(&remaining)?;
            }
        }
    }
    entries.sort_unstable();
    Ok(FactorProfile { field, n, entries })
}
