//! End-to-end checks on the bundled worked examples: the published secret
//! and recovered pairs agree on the public key, the recovery reproduces an
//! equivalent key on the same instances, and the consistency identity holds.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twisted_dihedral::algebra::oracle;
use twisted_dihedral::{
    consistency_check, dpd_attack, extract_vectors, paper_examples, two_sided_mul,
    verify_example, verify_solution, DpdInstance,
};

#[test]
fn all_bundled_examples_verify() {
    let examples = paper_examples();
    assert_eq!(examples.len(), 3);
    for ex in &examples {
        let check = verify_example(ex);
        assert!(check.public_keys_equal, "{}: public keys differ", ex.name);
        assert!(check.reversibility_ok, "{}: t not reversible", ex.name);
        assert!(check.pairs_distinct, "{}: pairs identical", ex.name);
    }
}

#[test]
fn closed_form_public_key_matches_basis_expansion() {
    for ex in paper_examples() {
        let fast = two_sided_mul(ex.secret.s(), ex.params.h(), ex.secret.t()).unwrap();
        let slow = oracle::mul_basis_expansion(
            &oracle::mul_basis_expansion(ex.secret.s(), ex.params.h()),
            ex.secret.t(),
        );
        assert_eq!(fast, slow, "{}", ex.name);
    }
}

#[test]
fn recovery_succeeds_on_example_instances() {
    for (i, ex) in paper_examples().into_iter().enumerate() {
        let gamma = two_sided_mul(ex.secret.s(), ex.params.h(), ex.secret.t()).unwrap();
        let inst = DpdInstance::new(ex.params.clone(), gamma).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
        let outcome = dpd_attack(&inst, &mut rng).unwrap_or_else(|e| {
            panic!("{}: recovery failed: {e}", ex.name);
        });
        assert!(verify_solution(&inst, &outcome.solution), "{}", ex.name);
        assert!(outcome.b_draws <= 4, "{}: {} draws", ex.name, outcome.b_draws);
        // the published recovered pair is itself a valid solution
        assert!(verify_solution(&inst, &ex.recovered), "{}", ex.name);
    }
}

#[test]
fn consistency_identity_holds_on_examples() {
    for ex in paper_examples() {
        let gamma = two_sided_mul(ex.secret.s(), ex.params.h(), ex.secret.t()).unwrap();
        let inst = DpdInstance::new(ex.params.clone(), gamma).unwrap();
        let (c, d, v, w) = extract_vectors(&inst);
        let lambda = ex.params.algebra().lambda();
        assert_eq!(
            consistency_check(&c, &d, &v, &w, lambda),
            Ok(true),
            "{}",
            ex.name
        );
    }
}
