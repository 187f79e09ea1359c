use bockstein::abelian::{divisibility, sigma_abelian, tensor_with, tor_with, AbelianAtom, AbelianGroup};
use bockstein::basis::BocksteinGroup;
use bockstein::dimension::{dim_abelian, sup_over_basis, DimensionProfile};
use bockstein::generate;
use bockstein::io::{abelian_to_json, parse_abelian};
use bockstein::nilpotent::{sigma_nilpotent, NilpotentGroupDesc};
use bockstein::primes::{Prime, PrimeSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prime_from(choices: &'static [u64]) -> impl Strategy<Value = Prime> {
    prop::sample::select(choices).prop_map(|n| Prime::new(n).unwrap())
}

fn small_prime() -> impl Strategy<Value = Prime> {
    prime_from(&[2, 3, 5, 7])
}

fn prime_set() -> impl Strategy<Value = PrimeSet> {
    (prop::collection::btree_set(prime_from(&[2, 3, 5, 7, 11, 13]), 0..4), any::<bool>()).prop_map(|(s, cofinite)| {
        if cofinite {
            PrimeSet::all_except(s)
        } else {
            PrimeSet::finite(s)
        }
    })
}

fn nonempty_prime_set() -> impl Strategy<Value = PrimeSet> {
    prime_set().prop_filter("nonempty", |l| !l.is_empty())
}

fn atom() -> impl Strategy<Value = AbelianAtom> {
    prop_oneof![
        Just(AbelianAtom::Z),
        Just(AbelianAtom::Q),
        (small_prime(), 1..4u32).prop_map(|(p, k)| AbelianAtom::Cyclic { p, k }),
        small_prime().prop_map(AbelianAtom::Pruefer),
        small_prime().prop_map(AbelianAtom::Localized),
        prime_set().prop_map(AbelianAtom::LocalizedAway),
        nonempty_prime_set().prop_map(AbelianAtom::Adic),
    ]
}

fn group() -> impl Strategy<Value = AbelianGroup> {
    prop::collection::vec((atom(), 1..4u64), 0..6).prop_map(|atoms| AbelianGroup::new(atoms).unwrap())
}

fn fg_group() -> impl Strategy<Value = AbelianGroup> {
    let fg_atom = prop_oneof![
        Just(AbelianAtom::Z),
        (small_prime(), 1..4u32).prop_map(|(p, k)| AbelianAtom::Cyclic { p, k }),
    ];
    prop::collection::vec((fg_atom, 1..3u64), 0..5).prop_map(|atoms| AbelianGroup::new(atoms).unwrap())
}

fn profile() -> impl Strategy<Value = DimensionProfile> {
    any::<u64>().prop_map(|seed| generate::valid_profile(&mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #[test]
    fn multiplicities_do_not_matter(g in group(), k in 1..6u64) {
        prop_assert_eq!(sigma_abelian(&g), sigma_abelian(&g.scale_multiplicities(k)));
    }

    #[test]
    fn direct_sums_unite(g in group(), h in group()) {
        prop_assert_eq!(sigma_abelian(&g.direct_sum(&h)), sigma_abelian(&g).union(&sigma_abelian(&h)));
    }

    #[test]
    fn chain_holds(g in group()) {
        prop_assert!(sigma_abelian(&g).chain_holds());
    }

    #[test]
    fn localization_and_completion_agree(l in nonempty_prime_set()) {
        let zl = AbelianGroup::atom(AbelianAtom::LocalizedAway(l.clone())).unwrap();
        let zhat = AbelianGroup::atom(AbelianAtom::Adic(l)).unwrap();
        prop_assert_eq!(sigma_abelian(&zl), sigma_abelian(&zhat));
    }

    #[test]
    fn both_definitions_agree(g in group()) {
        prop_assert_eq!(sigma_nilpotent(&NilpotentGroupDesc::Abelian(g.clone())).unwrap(), sigma_abelian(&g));
    }

    #[test]
    fn canonical_form_is_idempotent(g in group()) {
        prop_assert_eq!(AbelianGroup::new(g.atoms().to_vec()).unwrap(), g);
    }

    #[test]
    fn json_round_trip(g in group()) {
        prop_assert_eq!(parse_abelian(&abelian_to_json(&g).to_string()).unwrap(), g);
    }

    #[test]
    fn divisibility_by_tensor_and_tor(g in fg_group(), p in small_prime()) {
        let d = divisibility(&g, p);
        let tensor_zero = tensor_with(&g, BocksteinGroup::Cyclic(p)).unwrap().is_trivial();
        let tor_zero = tor_with(&g, BocksteinGroup::Cyclic(p)).unwrap().is_trivial();
        prop_assert_eq!(d.p_divisible, tensor_zero);
        prop_assert_eq!(d.uniquely_p_divisible, tensor_zero && tor_zero);
    }

    #[test]
    fn td_split_reconstitutes(g in group()) {
        let s = sigma_abelian(&g);
        prop_assert_eq!(s.split_td().reconstitute(), s);
    }

    #[test]
    fn dimension_of_sum_is_max(d in profile(), g in group(), h in group()) {
        let sum = dim_abelian(&d, &g.direct_sum(&h));
        prop_assert_eq!(sum, dim_abelian(&d, &g).max(dim_abelian(&d, &h)));
    }

    #[test]
    fn dimension_is_monotone_in_sigma(d in profile(), g in group(), h in group()) {
        let small = sigma_abelian(&g);
        let big = small.union(&sigma_abelian(&h));
        prop_assert!(sup_over_basis(&d, &small) <= sup_over_basis(&d, &big));
    }
}
