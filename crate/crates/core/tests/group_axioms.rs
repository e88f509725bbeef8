//! Group-law properties of Cantor addition over exhaustively enumerable
//! fields, with the enumeration as the element oracle.

use jacwalk_core::curve::Curve;
use jacwalk_core::field::Prime;
use jacwalk_core::jacobian::{enumerate_jacobian, group_order, MumfordDivisor};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn test_curves() -> Vec<Curve> {
    vec![
        Curve::new(Prime::new(7).unwrap(), [0, 0, 0, 0, 1]).unwrap(),
        Curve::new(Prime::new(7).unwrap(), [1, 0, 3, 0, 2]).unwrap(),
        Curve::new(Prime::new(11).unwrap(), [1, 2, 0, 3, 5]).unwrap(),
        Curve::new(Prime::new(13).unwrap(), [0, 1, 4, 2, 6]).unwrap(),
    ]
}

#[test]
fn enumeration_count_equals_zeta_order() {
    for curve in test_curves() {
        let info = group_order(&curve).unwrap();
        let all = enumerate_jacobian(&curve).unwrap();
        assert_eq!(all.len() as u64, info.order);
    }
}

#[test]
fn closure_under_addition() {
    for curve in test_curves() {
        let all = enumerate_jacobian(&curve).unwrap();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        for _ in 0..500 {
            let a = &all[rng.gen_range(0..all.len())];
            let b = &all[rng.gen_range(0..all.len())];
            assert!(set.contains(&a.add(b)));
        }
    }
}

#[test]
fn associativity_random_triples() {
    for curve in test_curves() {
        let all = enumerate_jacobian(&curve).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2025);
        for _ in 0..2_000 {
            let a = &all[rng.gen_range(0..all.len())];
            let b = &all[rng.gen_range(0..all.len())];
            let c = &all[rng.gen_range(0..all.len())];
            assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
        }
    }
}

#[test]
fn identity_inverse_exhaustive() {
    for curve in test_curves() {
        let id = MumfordDivisor::identity(curve);
        for d in enumerate_jacobian(&curve).unwrap() {
            assert_eq!(d.add(&id), d);
            assert!(d.add(&d.negate()).is_identity());
        }
    }
}
