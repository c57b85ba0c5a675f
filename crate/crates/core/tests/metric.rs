mod common;

use common::{brute_meet, pow2, reach, same_sequence, surrogate};
use grossca::config::{Alphabet, Configuration};
use grossca::grossnum::{GrossLinear, GrossQuantity};
use grossca::metric::{
    agreement_interval, classical_distance, distance, summed_distance, ExtendedIndex, Meet,
};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(s: &str) -> Configuration {
    s.parse().unwrap()
}

fn arb_pair() -> impl Strategy<Value = (Configuration, Configuration)> {
    (any::<u64>(), 0usize..3).prop_map(|(seed, kind)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = Configuration::random_with(&mut rng, Alphabet::BINARY, 8, 3);
        let y = match kind {
            0 => Configuration::random_with(&mut rng, Alphabet::BINARY, 8, 3),
            1 => grossca::verify::perturb(&x, &mut rng, 6, 3),
            _ => x.clone(),
        };
        (x, y)
    })
}

/// Distance computed from the brute-force meet with ① kept symbolic.
fn oracle_distance(x: &Configuration, y: &Configuration) -> GrossQuantity {
    if same_sequence(x, y) {
        return GrossQuantity::zero();
    }
    match brute_meet(x, y) {
        None => GrossQuantity::one(),
        Some((m, n)) => {
            let n = n.map_or(GrossLinear::GROSSONE, GrossLinear::finite);
            let m = m.map_or(GrossLinear::new(-1, 0), GrossLinear::finite);
            GrossQuantity::pow(2, m - n - GrossLinear::finite(1)).unwrap()
        }
    }
}

#[test]
fn worked_examples() {
    let x = cfg("left=1 core=- offset=0 right=1");
    let y = cfg("left=0 core=111 offset=-2 right=1");
    assert_eq!(distance(&x, &y).unwrap().to_string(), "2^-(①+3)");
    assert_eq!(distance(&x, &y).unwrap(), oracle_distance(&x, &y));

    let x = cfg("left=1 core=010 offset=-1 right=1");
    let y = cfg("left=1 core=001010 offset=-2 right=1");
    assert_eq!(
        distance(&x, &y).unwrap().as_rational(),
        Some(BigRational::new(1.into(), 16.into()))
    );
    assert_eq!(brute_meet(&x, &y), Some((Some(-1), Some(2))));
}

#[test]
fn meets_against_a_common_point_need_not_be_nested() {
    let x = cfg("left=1 core=- offset=0 right=1");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut found = None;
    for _ in 0..20_000 {
        let y = grossca::verify::perturb(&x, &mut rng, 4, 2);
        let z = grossca::verify::perturb(&x, &mut rng, 4, 2);
        let dxy = oracle_distance(&x, &y);
        let dxz = oracle_distance(&x, &z);
        let dyz = oracle_distance(&y, &z);
        if dyz > dxy.clone().max(dxz.clone()) {
            found = Some((y, z));
            break;
        }
    }
    let (y, z) = found.expect("brute-force search finds a strong-triangle violation");
    let mxy = agreement_interval(&x, &y).unwrap();
    let mxz = agreement_interval(&x, &z).unwrap();
    assert_eq!(mxy.partial_cmp_inclusion(&mxz), None, "{mxy} vs {mxz}");
}

#[test]
fn extended_indices_order_and_print() {
    assert!(ExtendedIndex::NegInfinity < ExtendedIndex::Finite(i64::MIN));
    assert!(ExtendedIndex::Finite(i64::MAX) < ExtendedIndex::PosInfinity);
    assert_eq!(ExtendedIndex::PosInfinity.to_string(), "①");
    assert_eq!(format!("{:#}", ExtendedIndex::NegInfinity), "-G");
}

#[test]
fn alphabet_mismatch_is_an_error() {
    let x = Configuration::constant(Alphabet::BINARY, 0).unwrap();
    let y = Configuration::constant(Alphabet::new(3).unwrap(), 0).unwrap();
    assert!(distance(&x, &y).is_err());
    assert!(summed_distance(&y, &y).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn meet_is_the_maximal_agreement_interval((x, y) in arb_pair()) {
        let meet = agreement_interval(&x, &y).unwrap();
        if same_sequence(&x, &y) {
            prop_assert_eq!(meet, Meet::Identical);
            return Ok(());
        }
        match (meet, brute_meet(&x, &y)) {
            (Meet::Star, None) => {}
            (Meet::Agreement { m, n, witness }, Some((bm, bn))) => {
                prop_assert_eq!(m.finite(), bm);
                prop_assert_eq!(n.finite(), bn);
                if let (Some(m), Some(n)) = (bm, bn) {
                    prop_assert_eq!(witness, Some(x.window(m, n).symbols));
                    prop_assert!(x.eval_at(m - 1) != y.eval_at(m - 1));
                    prop_assert!(x.eval_at(n + 1) != y.eval_at(n + 1));
                }
            }
            (meet, b) => prop_assert!(false, "meet {} vs brute {:?}", meet, b),
        }
    }

    #[test]
    fn distance_axioms((x, y) in arb_pair()) {
        let d = distance(&x, &y).unwrap();
        prop_assert_eq!(&d, &distance(&y, &x).unwrap());
        prop_assert_eq!(d.is_zero(), same_sequence(&x, &y));
        prop_assert!(distance(&x, &x).unwrap().is_zero());
        prop_assert!(d <= GrossQuantity::one());
        prop_assert_eq!(d, oracle_distance(&x, &y));
    }

    #[test]
    fn classical_distance_matches_scan((x, y) in arb_pair()) {
        let r = reach(&x, &y);
        let k = (0..=r).find(|&k| x.eval_at(k) != y.eval_at(k) || x.eval_at(-k) != y.eval_at(-k));
        let expect = k.map_or(GrossQuantity::zero(), |k| GrossQuantity::from_rational(pow2(-k)));
        let got = classical_distance(&x, &y).unwrap();
        prop_assert_eq!(&got, &expect);
        prop_assert_eq!(got == GrossQuantity::one(), distance(&x, &y).unwrap() == GrossQuantity::one());
    }

    #[test]
    fn summed_distance_matches_direct_sum((x, y) in arb_pair()) {
        // 240 is a multiple of every fill period that can occur here.
        let k = 240i64;
        let direct = (-k..=k)
            .filter(|&i| x.eval_at(i) != y.eval_at(i))
            .fold(BigRational::zero(), |acc, i| acc + pow2(-i.abs()));
        prop_assert_eq!(surrogate(&summed_distance(&x, &y).unwrap(), k), direct);
    }
}
