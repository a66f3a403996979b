//! Integration of the protocol and the recovery: honest exchanges agree at
//! every proposed parameter size, and a recovered equivalent key lets an
//! eavesdropper derive the session key from the public transcript alone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twisted_dihedral::{
    compute_pk, derive_key, dpd_attack, gen_params_with_rng, keygen, verify_solution,
    AttackError, DpdInstance,
};

const PARAMETER_SETS: [(usize, u64); 4] = [(19, 19), (23, 23), (31, 31), (41, 41)];

#[test]
fn honest_exchange_agrees_at_all_parameter_sets() {
    for (n, q) in PARAMETER_SETS {
        let mut rng = ChaCha8Rng::seed_from_u64(q);
        for _ in 0..100 {
            let params = gen_params_with_rng(n, q, &mut rng, None).unwrap();
            let alice = keygen(&params, &mut rng);
            let bob = keygen(&params, &mut rng);
            let pk_a = compute_pk(&params, &alice).unwrap();
            let pk_b = compute_pk(&params, &bob).unwrap();
            let k_a = derive_key(&params, &alice, &pk_b).unwrap();
            let k_b = derive_key(&params, &bob, &pk_a).unwrap();
            assert_eq!(k_a, k_b, "n={n} q={q}");
        }
    }
}

#[test]
fn eavesdropper_recovers_the_session_key() {
    for (n, q) in PARAMETER_SETS {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + q);
        let mut broken = 0;
        let mut observed = 0;
        for _ in 0..50 {
            let params = gen_params_with_rng(n, q, &mut rng, None).unwrap();
            let alice = keygen(&params, &mut rng);
            let bob = keygen(&params, &mut rng);
            let pk_a = compute_pk(&params, &alice).unwrap();
            let pk_b = compute_pk(&params, &bob).unwrap();
            let shared = derive_key(&params, &alice, &pk_b).unwrap();

            // the adversary sees (params, pk_a, pk_b) only
            let inst = DpdInstance::new(params.clone(), pk_a.element().clone()).unwrap();
            match dpd_attack(&inst, &mut rng) {
                Ok(outcome) => {
                    observed += 1;
                    assert!(verify_solution(&inst, &outcome.solution));
                    // derive with the equivalent pair exactly as Alice would
                    let k = outcome
                        .solution
                        .s
                        .mul(pk_b.element())
                        .mul(&outcome.solution.t.adjunct());
                    if &k == shared.element() {
                        broken += 1;
                    }
                }
                Err(AttackError::SingularPublicElement(_)) => {}
                Err(e) => panic!("unexpected error at n={n} q={q}: {e}"),
            }
        }
        assert!(observed > 0, "no invertible instances at n={n} q={q}");
        assert_eq!(
            broken, observed,
            "recovered keys must always reproduce the session key (n={n} q={q})"
        );
    }
}
