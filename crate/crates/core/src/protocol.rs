//! The two-sided key exchange on the twisted dihedral algebra.
//!
//! Public parameters are (q, n, lambda) plus a public element h with nonzero
//! rotation and reflection halves. Each party holds a secret pair (s, t) with
//! s in the rotation subalgebra and t in the reversible subspace, publishes
//! s*h*t, and derives the shared key as s * peer_pk * adjunct(t). The two
//! derivations agree because the rotation subalgebra commutes and reversible
//! elements satisfy the adjunct exchange identity.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{two_sided_mul, AlgebraElement, AlgebraError, AlgebraParams};
use crate::field::{FieldError, FieldParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProtocolError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("n must be at least 2")]
    OrderTooSmall,
    #[error("both halves of the public element must be nonzero")]
    DegeneratePublicElement,
    #[error("mismatched protocol parameters")]
    ParameterMismatch,
    #[error("malformed key file: {0}")]
    Parse(String),
}

/// Public parameters: the algebra plus the public element h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicParams {
    algebra: AlgebraParams,
    h: AlgebraElement,
}

impl PublicParams {
    pub fn new(algebra: AlgebraParams, h: AlgebraElement) -> Result<Self, ProtocolError> {
        if h.params() != algebra {
            return Err(ProtocolError::ParameterMismatch);
        }
        let rot_zero = h.rotation_half().iter().all(|c| c.is_zero());
        let refl_zero = h.reflection_half().iter().all(|c| c.is_zero());
        if rot_zero || refl_zero {
            return Err(ProtocolError::DegeneratePublicElement);
        }
        Ok(Self { algebra, h })
    }

    pub fn algebra(&self) -> AlgebraParams {
        self.algebra
    }

    pub fn h(&self) -> &AlgebraElement {
        &self.h
    }

    /// Two-line key-file form: a `q= n= lambda=` header, then the h tuple.
    pub fn to_file_string(&self) -> String {
        format!(
            "q={} n={} lambda={}\n{}\n",
            self.algebra.field().q(),
            self.algebra.n(),
            self.algebra.lambda().value(),
            self.h.tuple_string()
        )
    }

    pub fn from_file_str(s: &str) -> Result<Self, ProtocolError> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .ok_or_else(|| ProtocolError::Parse("empty file".into()))?;
        let mut q = None;
        let mut n = None;
        let mut lambda = None;
        for token in header.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| ProtocolError::Parse(format!("bad header token {:?}", token)))?;
            let value: u64 = value
                .parse()
                .map_err(|e| ProtocolError::Parse(format!("bad value {:?}: {}", value, e)))?;
            match key {
                "q" => q = Some(value),
                "n" => n = Some(value),
                "lambda" => lambda = Some(value),
                other => {
                    return Err(ProtocolError::Parse(format!("unknown header key {:?}", other)))
                }
            }
        }
        let (Some(q), Some(n), Some(lambda)) = (q, n, lambda) else {
            return Err(ProtocolError::Parse("header needs q, n and lambda".into()));
        };
        let field = FieldParams::new(q)?;
        let algebra = AlgebraParams::new(field, n as usize, lambda)?;
        let h_line = lines
            .next()
            .ok_or_else(|| ProtocolError::Parse("missing public element line".into()))?;
        let h = AlgebraElement::parse_tuple(algebra, h_line)?;
        Self::new(algebra, h)
    }
}

/// Secret pair (s, t): s rotation-supported, t reversible. The zero element
/// is structurally legal in either slot; `keygen` is what rules it out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretKey {
    s: AlgebraElement,
    t: AlgebraElement,
}

impl SecretKey {
    pub fn new(s: AlgebraElement, t: AlgebraElement) -> Result<Self, ProtocolError> {
        if s.params() != t.params() {
            return Err(ProtocolError::ParameterMismatch);
        }
        if !s.is_rotation_supported() {
            return Err(AlgebraError::SupportViolation {
                expected: "rotation",
            }
            .into());
        }
        if !t.is_reversible() {
            return Err(AlgebraError::NotReversible.into());
        }
        Ok(Self { s, t })
    }

    pub fn s(&self) -> &AlgebraElement {
        &self.s
    }

    pub fn t(&self) -> &AlgebraElement {
        &self.t
    }

    /// Two tuple lines: s (zero reflection half), then t (zero rotation half).
    pub fn to_file_string(&self) -> String {
        format!("{}\n{}\n", self.s.tuple_string(), self.t.tuple_string())
    }

    pub fn from_file_str(algebra: AlgebraParams, s: &str) -> Result<Self, ProtocolError> {
        let mut lines = s.lines();
        let s_line = lines
            .next()
            .ok_or_else(|| ProtocolError::Parse("missing s line".into()))?;
        let t_line = lines
            .next()
            .ok_or_else(|| ProtocolError::Parse("missing t line".into()))?;
        Self::new(
            AlgebraElement::parse_tuple(algebra, s_line)?,
            AlgebraElement::parse_tuple(algebra, t_line)?,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey(AlgebraElement);

impl PublicKey {
    pub fn element(&self) -> &AlgebraElement {
        &self.0
    }

    pub fn to_file_string(&self) -> String {
        format!("{}\n", self.0.tuple_string())
    }

    pub fn from_file_str(algebra: AlgebraParams, s: &str) -> Result<Self, ProtocolError> {
        let line = s
            .lines()
            .next()
            .ok_or_else(|| ProtocolError::Parse("missing public key line".into()))?;
        Ok(Self(AlgebraElement::parse_tuple(algebra, line)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedKey(AlgebraElement);

impl SharedKey {
    pub fn element(&self) -> &AlgebraElement {
        &self.0
    }
}

/// Fresh public parameters, deterministic in the seed: lambda is a random
/// non-square and both halves of h are uniform nonzero.
pub fn gen_params(n: usize, q: u64, seed: u64) -> Result<PublicParams, ProtocolError> {
    gen_params_with_rng(n, q, &mut ChaCha8Rng::seed_from_u64(seed), None)
}

/// Parameter generation against a caller-supplied rng, with an optional
/// forced lambda (rejected unless it is a valid twist).
pub fn gen_params_with_rng<R: Rng + ?Sized>(
    n: usize,
    q: u64,
    rng: &mut R,
    forced_lambda: Option<u64>,
) -> Result<PublicParams, ProtocolError> {
    let field = FieldParams::new(q)?;
    if n < 2 {
        return Err(ProtocolError::OrderTooSmall);
    }
    if !(2 * n as u64).is_multiple_of(q) {
        return Err(AlgebraError::CharacteristicMismatch {
            q,
            two_n: 2 * n as u64,
        }
        .into());
    }
    let lambda = match forced_lambda {
        Some(l) => l,
        None => field.sample_nonsquare(rng).value(),
    };
    let algebra = AlgebraParams::new(field, n, lambda)?;
    let h1 = loop {
        let h1 = algebra.sample_rotation(rng);
        if !h1.is_zero() {
            break h1;
        }
    };
    let h2 = loop {
        let h2 = algebra.sample_reflection(rng);
        if !h2.is_zero() {
            break h2;
        }
    };
    PublicParams::new(algebra, &h1 + &h2)
}

/// Draws a secret pair, resampling either component if it comes out zero.
pub fn keygen<R: Rng + ?Sized>(params: &PublicParams, rng: &mut R) -> SecretKey {
    let algebra = params.algebra();
    let s = loop {
        let s = algebra.sample_rotation(rng);
        if !s.is_zero() {
            break s;
        }
    };
    let t = loop {
        let t = algebra.sample_reversible(rng);
        if !t.is_zero() {
            break t;
        }
    };
    SecretKey { s, t }
}

/// Public key s * h * t.
pub fn compute_pk(params: &PublicParams, sk: &SecretKey) -> Result<PublicKey, ProtocolError> {
    if sk.s.params() != params.algebra() {
        return Err(ProtocolError::ParameterMismatch);
    }
    Ok(PublicKey(two_sided_mul(&sk.s, params.h(), &sk.t)?))
}

/// Shared key s * peer_pk * adjunct(t).
pub fn derive_key(
    params: &PublicParams,
    sk: &SecretKey,
    peer_pk: &PublicKey,
) -> Result<SharedKey, ProtocolError> {
    if sk.s.params() != params.algebra() || peer_pk.0.params() != params.algebra() {
        return Err(ProtocolError::ParameterMismatch);
    }
    Ok(SharedKey(sk.s.mul(&peer_pk.0).mul(&sk.t.adjunct())))
}
