mod common;

use hankel_core::caratheodory::herglotz_cseq;
use hankel_core::class_maps::{ode, ClassTag, CoefficientSequence};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const N: usize = 8;

#[test]
fn coefficient_caps_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let m = common::random_measure(&mut rng, 5);
        let c = herglotz_cseq(&m, N - 1);
        for class in ClassTag::ALL {
            let a = class.coeffs(c.as_slice(), N).unwrap();
            CoefficientSequence::new(class, a.coeffs().to_vec())
                .unwrap_or_else(|e| panic!("{class}: {e} for {m:?}"));
        }
    }
}

#[test]
fn alexander_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let m = common::random_measure(&mut rng, 5);
        let c = herglotz_cseq(&m, N - 1);
        let star = ClassTag::Starlike.coeffs(c.as_slice(), N).unwrap();
        let convex = ClassTag::Convex.coeffs(c.as_slice(), N).unwrap();
        for k in 1..=N {
            let lhs = convex.coeffs()[k] * k as f64;
            assert!(common::close(lhs, star.coeffs()[k], 1e-12), "k = {k}");
        }
    }
}

#[test]
fn recurrences_match_the_ode_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let m = common::random_measure(&mut rng, 5);
        let c = herglotz_cseq(&m, N - 1);
        for class in ClassTag::ALL {
            let a = class.coeffs(c.as_slice(), N).unwrap();
            let f = ode::solve(class, c.as_slice(), N).unwrap();
            for k in 0..=N {
                assert!(common::close(a.coeffs()[k], f.coeffs()[k], 1e-10), "{class} a_{k}");
            }
        }
    }
}
