use clusterweyl::corpus::{
    case_rng, random_acyclic_seed, random_sequence, random_signs, SeedConfig,
};
use clusterweyl::roots::companion_basis_for;
use clusterweyl::{Diagram, EpsPolicy, MutationSequence, SkewMatrix, SqrtNum};
use proptest::prelude::*;

fn seed_and_walk(seed: u64, len: usize) -> (SkewMatrix, MutationSequence, Vec<clusterweyl::Sign>) {
    let mut rng = case_rng(seed, 0);
    let m = random_acyclic_seed(&mut rng, &SeedConfig::default());
    let seq = random_sequence(&mut rng, m.n(), len);
    let signs = random_signs(&mut rng, len);
    (m, seq, signs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mutation_involutive_and_diagram_commutes(seed in any::<u64>(), len in 0usize..5) {
        let (m0, seq, _) = seed_and_walk(seed, len);
        let m = m0.mutate_along(&seq).unwrap();
        for k in 0..m.n() {
            let mk = m.mutate(k).unwrap();
            prop_assert_eq!(&mk.mutate(k).unwrap(), &m);
            prop_assert_eq!(Diagram::of(&mk), Diagram::of(&m).mutate(k).unwrap());
        }
    }

    #[test]
    fn basis_tracks_companion(seed in any::<u64>(), len in 0usize..7) {
        let (m0, seq, signs) = seed_and_walk(seed, len);
        let t = companion_basis_for(&m0, &seq, &EpsPolicy::PerStep(signs)).unwrap();
        prop_assert_eq!(t.matrix(), &m0.mutate_along(&seq).unwrap());
        prop_assert!(t.basis.check_realizes(&t.lattice, &t.companion).is_ok());
        prop_assert!(t.basis.is_unimodular());
        prop_assert!(t.companion.is_admissible());
        prop_assert!(t.basis.vectors().iter().all(|v| v.is_sign_coherent()));
    }

    #[test]
    fn reflections_preserve_the_form(seed in any::<u64>(), len in 0usize..5) {
        let (m0, seq, signs) = seed_and_walk(seed, len);
        let t = companion_basis_for(&m0, &seq, &EpsPolicy::PerStep(signs)).unwrap();
        let vs = t.basis.vectors();
        for b in vs {
            for u in vs {
                for v in vs {
                    let su = t.lattice.reflect(b, u).unwrap();
                    let sv = t.lattice.reflect(b, v).unwrap();
                    prop_assert_eq!(t.lattice.bilinear(&su, &sv), t.lattice.bilinear(u, v));
                }
            }
        }
    }

    #[test]
    fn sqrt_products_are_exact(a in 1u128..500, b in 1u128..500, c in -20i64..20) {
        let x = SqrtNum::from_sqrt(a) * SqrtNum::from_sqrt(b);
        let y = SqrtNum::from_sqrt(a * b);
        prop_assert_eq!(&x, &y);
        let s = SqrtNum::term(c, a) + SqrtNum::term(-c, a);
        prop_assert!(s.is_zero());
        let sq = SqrtNum::from_sqrt(a) * SqrtNum::from_sqrt(a);
        prop_assert_eq!(sq.as_integer().unwrap(), a.into());
    }
}
