//! Recovery of an equivalent secret key from (h, gamma = s*h*t).
//!
//! Expanding the two-sided product coordinate-wise turns the decomposition
//! instance into a pair of circulant systems over F_q: with c, d the halves
//! of h and v, w the halves of gamma,
//!
//!   M_c * M_b * a = w   and   lambda * M_d * M_b * a = v,
//!
//! where a is the rotation vector of s and b the (palindromic) reflection
//! vector of t. When M_c and M_d are invertible, any reversible b with M_b
//! invertible extends to a solution: a = M_b^(-1) M_c^(-1) w, which must
//! agree with lambda^(-1) M_b^(-1) M_d^(-1) v. The recovered pair need not
//! be the originally sampled key; any solution reproduces gamma and hence
//! the shared key.

use std::fmt;
use std::ops::Add;

use rand::Rng;
use thiserror::Error;

use crate::algebra::{sample_reversible_vector, two_sided_mul, AlgebraElement};
use crate::circulant::Circulant;
use crate::field::FieldElement;
use crate::protocol::{
    compute_pk, gen_params, gen_params_with_rng, keygen, ProtocolError, PublicParams, SecretKey,
};
use crate::trials::{run_trials, run_trials_seq, ZeroTrials};

/// Draw budget for the reversible vector b; the expected number of draws is
/// q/(q-1), so hitting this limit indicates a bug rather than bad luck.
pub const B_DRAW_LIMIT: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementHalf {
    Rotation,
    Reflection,
}

impl fmt::Display for ElementHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementHalf::Rotation => write!(f, "rotation"),
            ElementHalf::Reflection => write!(f, "reflection"),
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum AttackError {
    /// The circulant of one half of the public element is singular; the
    /// reduction cannot be inverted (the probabilistic failure branch).
    #[error("singular circulant for the {0} half of the public element")]
    SingularPublicElement(ElementHalf),
    /// The two solution routes disagree, which certifies that gamma is not
    /// of the form s*h*t for this h.
    #[error("public key is not consistent with the public element")]
    InconsistentPublicKey,
    #[error("no invertible reversible vector found in {0} draws")]
    DrawLimitExceeded(u32),
}

/// A decomposition instance: public parameters plus an observed public key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpdInstance {
    params: PublicParams,
    gamma: AlgebraElement,
}

impl DpdInstance {
    pub fn new(params: PublicParams, gamma: AlgebraElement) -> Result<Self, ProtocolError> {
        if gamma.params() != params.algebra() {
            return Err(ProtocolError::ParameterMismatch);
        }
        Ok(Self { params, gamma })
    }

    pub fn params(&self) -> &PublicParams {
        &self.params
    }

    pub fn gamma(&self) -> &AlgebraElement {
        &self.gamma
    }
}

/// A recovered secret pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpdSolution {
    pub s: AlgebraElement,
    pub t: AlgebraElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackOutcome {
    pub solution: DpdSolution,
    /// Number of reversible vectors drawn before one had an invertible
    /// circulant (at least 1).
    pub b_draws: u32,
}

/// The four public coefficient vectors of an instance, in the order
/// (h rotation, h reflection, gamma rotation, gamma reflection).
pub fn extract_vectors(
    inst: &DpdInstance,
) -> (
    Vec<FieldElement>,
    Vec<FieldElement>,
    Vec<FieldElement>,
    Vec<FieldElement>,
) {
    (
        inst.params.h().rotation_half().to_vec(),
        inst.params.h().reflection_half().to_vec(),
        inst.gamma.rotation_half().to_vec(),
        inst.gamma.reflection_half().to_vec(),
    )
}

/// Necessary condition for gamma to be a legitimate public key:
/// lambda^(-1) * M_d^(-1) v = M_c^(-1) w, independently of the secrets.
pub fn consistency_check(
    h_rot: &[FieldElement],
    h_refl: &[FieldElement],
    gamma_rot: &[FieldElement],
    gamma_refl: &[FieldElement],
    lambda: FieldElement,
) -> Result<bool, crate::circulant::SingularCirculant> {
    let field = lambda.field();
    let m_c = Circulant::from_elems(field, h_rot.to_vec());
    let m_d = Circulant::from_elems(field, h_refl.to_vec());
    let lambda_inv = lambda.inv().expect("twist parameter is nonzero");
    let lhs: Vec<FieldElement> = m_d
        .solve(gamma_rot)?
        .into_iter()
        .map(|e| e * lambda_inv)
        .collect();
    let rhs = m_c.solve(gamma_refl)?;
    Ok(lhs == rhs)
}

/// Runs the recovery: fails fast if either half of h gives a singular
/// circulant, otherwise draws reversible vectors until one is invertible and
/// solves for the rotation vector along both routes.
pub fn dpd_attack<R: Rng + ?Sized>(
    inst: &DpdInstance,
    rng: &mut R,
) -> Result<AttackOutcome, AttackError> {
    let algebra = inst.params.algebra();
    let field = algebra.field();
    let n = algebra.n();
    let (h_rot, h_refl, gamma_rot, gamma_refl) = extract_vectors(inst);

    let c_inv = Circulant::from_elems(field, h_rot)
        .inverse()
        .map_err(|_| AttackError::SingularPublicElement(ElementHalf::Rotation))?;
    let d_inv = Circulant::from_elems(field, h_refl)
        .inverse()
        .map_err(|_| AttackError::SingularPublicElement(ElementHalf::Reflection))?;

    // Both sides must equal M_b * a; a mismatch proves gamma illegitimate.
    let lambda_inv = algebra.lambda().inv().expect("twist parameter is nonzero");
    let via_refl = c_inv.matvec(&gamma_refl);
    let via_rot: Vec<FieldElement> = d_inv
        .matvec(&gamma_rot)
        .into_iter()
        .map(|e| e * lambda_inv)
        .collect();
    if via_refl != via_rot {
        return Err(AttackError::InconsistentPublicKey);
    }

    let mut b_draws = 0u32;
    let (b, b_inv) = loop {
        b_draws += 1;
        if b_draws > B_DRAW_LIMIT {
            return Err(AttackError::DrawLimitExceeded(B_DRAW_LIMIT));
        }
        let b = sample_reversible_vector(field, n, rng);
        if let Ok(inv) = Circulant::from_elems(field, b.clone()).inverse() {
            break (b, inv);
        }
    };

    let a_from_refl = b_inv.matvec(&via_refl);
    let a_from_rot = b_inv.matvec(&via_rot);
    assert_eq!(a_from_refl, a_from_rot, "solution routes diverged");

    let s = algebra
        .rotation_element(a_from_refl)
        .expect("solver preserves length");
    let t = algebra
        .reflection_element(b)
        .expect("sampler preserves length");
    Ok(AttackOutcome {
        solution: DpdSolution { s, t },
        b_draws,
    })
}

/// Checks the structural invariants of a solution and the defining identity
/// s * h * t = gamma.
pub fn verify_solution(inst: &DpdInstance, sol: &DpdSolution) -> bool {
    if sol.s.params() != inst.params.algebra() || sol.t.params() != inst.params.algebra() {
        return false;
    }
    match two_sided_mul(&sol.s, inst.params.h(), &sol.t) {
        Ok(product) => product == inst.gamma,
        Err(_) => false, // support or reversibility violation
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RateError {
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    ZeroTrials(#[from] ZeroTrials),
}

/// Aggregate over seeded end-to-end trials (parameter generation through
/// solution verification).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuccessRateReport {
    pub n: usize,
    pub q: u64,
    pub trials: u64,
    pub successes: u64,
    /// Trials rejected because M_c or M_d was singular.
    pub singular_failures: u64,
    /// Consistency aborts or draw-limit hits; should stay at zero on
    /// legitimate instances.
    pub anomalies: u64,
    /// Verified solutions that failed the product identity; should stay zero.
    pub verify_failures: u64,
    pub b_draws_total: u64,
}

impl SuccessRateReport {
    pub fn rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    /// Success probability predicted by the circulant invertibility rate:
    /// both halves of h must give invertible circulants, each with
    /// probability (q-1)/q in the q | n regime.
    pub fn theoretical_rate(&self) -> f64 {
        let p = 1.0 - 1.0 / self.q as f64;
        p * p
    }

    /// Central 95% interval for the empirical fraction around the
    /// theoretical rate under the normal approximation.
    pub fn interval95(&self) -> (f64, f64) {
        let p = self.theoretical_rate();
        let sigma = (p * (1.0 - p) / self.trials as f64).sqrt();
        (p - 1.96 * sigma, p + 1.96 * sigma)
    }

    pub fn within_interval(&self) -> bool {
        let (lo, hi) = self.interval95();
        let r = self.rate();
        lo <= r && r <= hi
    }

    /// Mean draws of b per trial that reached the sampling step.
    pub fn mean_b_draws(&self) -> f64 {
        let reached = self.trials - self.singular_failures;
        if reached == 0 {
            return 0.0;
        }
        self.b_draws_total as f64 / reached as f64
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    successes: u64,
    singular: u64,
    anomalies: u64,
    verify_failures: u64,
    b_draws: u64,
}

impl Add for Tally {
    type Output = Tally;
    fn add(self, rhs: Tally) -> Tally {
        Tally {
            successes: self.successes + rhs.successes,
            singular: self.singular + rhs.singular,
            anomalies: self.anomalies + rhs.anomalies,
            verify_failures: self.verify_failures + rhs.verify_failures,
            b_draws: self.b_draws + rhs.b_draws,
        }
    }
}

/// Runs `trials` independent pipelines (fresh parameters, fresh secret key,
/// public key, recovery, verification) on per-trial rng streams; the result
/// is deterministic in the seed regardless of scheduling.
pub fn attack_success_rate(
    n: usize,
    q: u64,
    trials: u64,
    seed: u64,
) -> Result<SuccessRateReport, RateError> {
    success_rate_impl(n, q, trials, seed, false)
}

/// Same measurement forced onto the sequential schedule; kept for the
/// benchmark suite to compare against the dispatching version.
pub fn attack_success_rate_seq(
    n: usize,
    q: u64,
    trials: u64,
    seed: u64,
) -> Result<SuccessRateReport, RateError> {
    success_rate_impl(n, q, trials, seed, true)
}

fn success_rate_impl(
    n: usize,
    q: u64,
    trials: u64,
    seed: u64,
    sequential: bool,
) -> Result<SuccessRateReport, RateError> {
    gen_params(n, q, seed)?; // surface parameter errors before spawning trials
    if trials == 0 {
        return Err(ZeroTrials.into());
    }
    let per_trial = |_: u64, rng: &mut rand_chacha::ChaCha8Rng| {
        let params = gen_params_with_rng(n, q, rng, None).expect("parameters already validated");
        let sk = keygen(&params, rng);
        let pk = compute_pk(&params, &sk).expect("keygen output is well-formed");
        let inst = DpdInstance::new(params, pk.element().clone()).expect("matching parameters");
        let mut tally = Tally::default();
        match dpd_attack(&inst, rng) {
            Ok(outcome) => {
                tally.b_draws = u64::from(outcome.b_draws);
                if verify_solution(&inst, &outcome.solution) {
                    tally.successes = 1;
                } else {
                    tally.verify_failures = 1;
                }
            }
            Err(AttackError::SingularPublicElement(_)) => tally.singular = 1,
            Err(_) => tally.anomalies = 1,
        }
        tally
    };
    let tally: Tally = if sequential {
        run_trials_seq(trials, seed, per_trial)
    } else {
        run_trials(trials, seed, per_trial)
    };
    Ok(SuccessRateReport {
        n,
        q,
        trials,
        successes: tally.successes,
        singular_failures: tally.singular,
        anomalies: tally.anomalies,
        verify_failures: tally.verify_failures,
        b_draws_total: tally.b_draws,
    })
}

/// Two distinct secret pairs with the same public key, certifying that the
/// two-sided map is far from injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonInjectivityWitness {
    pub original: SecretKey,
    pub recovered: DpdSolution,
    pub gamma: AlgebraElement,
}

/// Samples a key, recovers an equivalent one, and retries the recovery on
/// the (astronomically unlikely) collision with the original.
pub fn non_injectivity_witness<R: Rng + ?Sized>(
    params: &PublicParams,
    rng: &mut R,
) -> Result<NonInjectivityWitness, AttackError> {
    let original = keygen(params, rng);
    let pk = compute_pk(params, &original).expect("keygen output is well-formed");
    let inst = DpdInstance::new(params.clone(), pk.element().clone())
        .expect("matching parameters");
    for _ in 0..16 {
        let outcome = dpd_attack(&inst, rng)?;
        let collided = outcome.solution.s == *original.s() && outcome.solution.t == *original.t();
        if !collided {
            debug_assert!(verify_solution(&inst, &outcome.solution));
            return Ok(NonInjectivityWitness {
                original,
                recovered: outcome.solution,
                gamma: inst.gamma.clone(),
            });
        }
    }
    Err(AttackError::DrawLimitExceeded(16))
}
