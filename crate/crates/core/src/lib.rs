//! Twisted dihedral group algebras over F_q, the two-sided key exchange
//! built on them, and the circulant-matrix reduction that recovers an
//! equivalent secret key from a public transcript in polynomial time.
//!
//! Layering, bottom up:
//! - [`field`]: exact arithmetic in F_q and quadratic-residue classification;
//! - [`poly`]: polynomial arithmetic and the factorization profile of x^n - 1;
//! - [`matrix`]: dense Gaussian elimination, the independent linear-algebra
//!   cross-check;
//! - [`circulant`]: circulant matrices via F_q[x]/(x^n - 1), with exact and
//!   Monte Carlo invertibility statistics;
//! - [`algebra`]: the twisted algebra itself (cocycle, products, adjunct,
//!   reversible subspace);
//! - [`protocol`]: parameter/key generation, public keys, shared-key
//!   derivation;
//! - [`attack`]: the circulant reduction, key recovery, and success-rate
//!   measurement;
//! - [`fixtures`]: bundled worked examples used by the verification command.
//!
//! Monte Carlo drivers run on per-trial rng streams ([`trials`]), so results
//! are reproducible bit-for-bit with or without the `parallel` feature
//! (rayon), under any thread schedule.

pub mod algebra;
pub mod attack;
pub mod circulant;
pub mod field;
pub mod fixtures;
pub mod matrix;
pub mod poly;
pub mod protocol;
pub mod trials;

pub use algebra::{
    sample_reversible_vector, semigroup_mul, two_sided_mul, AlgebraElement, AlgebraError,
    AlgebraParams, GroupElement,
};
pub use attack::{
    attack_success_rate, attack_success_rate_seq, consistency_check, dpd_attack, extract_vectors,
    non_injectivity_witness, verify_solution, AttackError, AttackOutcome, DpdInstance,
    DpdSolution, SuccessRateReport,
};
pub use circulant::{
    convolve, count_invertible, estimate_invertibility, estimate_prob_invertible,
    estimate_prob_invertible_seq, prob_invertible, Circulant, SingularCirculant,
};
pub use field::{FieldElement, FieldError, FieldParams};
pub use fixtures::{paper_examples, verify_example, PaperExample};
pub use matrix::Matrix;
pub use poly::{factor_profile_xn_minus_1, FactorProfile, Polynomial};
pub use protocol::{
    compute_pk, derive_key, gen_params, gen_params_with_rng, keygen, ProtocolError, PublicKey,
    PublicParams, SecretKey, SharedKey,
};
pub use trials::{run_trials, run_trials_seq, trial_rng};
