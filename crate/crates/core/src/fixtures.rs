//! Bundled worked examples: three published instances with a secret pair and
//! an independently recovered equivalent pair for the same public key.
//!
//! Only the inputs are stored; the public key gamma is always recomputed from
//! (s, h, t). Each fixture doubles as a non-injectivity witness, since the
//! recovered pair differs from the original yet yields the same gamma.

use crate::algebra::{two_sided_mul, AlgebraElement};
use crate::attack::DpdSolution;
use crate::protocol::{ProtocolError, PublicParams, SecretKey};

#[derive(Debug, Clone)]
pub struct PaperExample {
    pub name: &'static str,
    pub params: PublicParams,
    pub secret: SecretKey,
    pub recovered: DpdSolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExampleCheck {
    /// s*h*t equals s'*h*t' exactly.
    pub public_keys_equal: bool,
    /// Both t components lie in the reversible subspace.
    pub reversibility_ok: bool,
    /// The recovered pair differs from the original, witnessing
    /// non-injectivity of the two-sided map.
    pub pairs_distinct: bool,
}

impl ExampleCheck {
    pub fn pass(&self) -> bool {
        self.public_keys_equal && self.reversibility_ok && self.pairs_distinct
    }
}

/// The three bundled examples, smallest parameters first.
pub fn paper_examples() -> Vec<PaperExample> {
    [
        ("example1", include_str!("../fixtures/example1.txt")),
        ("example2", include_str!("../fixtures/example2.txt")),
        ("example3", include_str!("../fixtures/example3.txt")),
    ]
    .into_iter()
    .map(|(name, text)| parse_example(name, text).expect("bundled fixture is well-formed"))
    .collect()
}

/// Recomputes both public keys with the production multiplication and checks
/// the defining identities.
pub fn verify_example(example: &PaperExample) -> ExampleCheck {
    let gamma = two_sided_mul(
        example.secret.s(),
        example.params.h(),
        example.secret.t(),
    );
    let gamma_recovered = two_sided_mul(
        &example.recovered.s,
        example.params.h(),
        &example.recovered.t,
    );
    let public_keys_equal = match (&gamma, &gamma_recovered) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    };
    ExampleCheck {
        public_keys_equal,
        reversibility_ok: example.secret.t().is_reversible()
            && example.recovered.t.is_reversible(),
        pairs_distinct: example.secret.s() != &example.recovered.s
            && example.secret.t() != &example.recovered.t,
    }
}

fn parse_example(name: &'static str, text: &str) -> Result<PaperExample, ProtocolError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| ProtocolError::Parse("empty fixture".into()))?;
    let mut tuple_for = |key: &str| -> Result<String, ProtocolError> {
        let line = lines
            .next()
            .ok_or_else(|| ProtocolError::Parse(format!("missing {key} line")))?;
        line.strip_prefix(&format!("{key}="))
            .map(str::to_owned)
            .ok_or_else(|| ProtocolError::Parse(format!("expected {key}= line")))
    };
    let h = tuple_for("h")?;
    let s = tuple_for("s")?;
    let t = tuple_for("t")?;
    let s_recovered = tuple_for("s_recovered")?;
    let t_recovered = tuple_for("t_recovered")?;

    let params = PublicParams::from_file_str(&format!("{header}\n{h}\n"))?;
    let algebra = params.algebra();
    let secret = SecretKey::new(
        AlgebraElement::parse_tuple(algebra, &s)?,
        AlgebraElement::parse_tuple(algebra, &t)?,
    )?;
    let recovered = DpdSolution {
        s: AlgebraElement::parse_tuple(algebra, &s_recovered)?,
        t: AlgebraElement::parse_tuple(algebra, &t_recovered)?,
    };
    Ok(PaperExample {
        name,
        params,
        secret,
        recovered,
    })
}
