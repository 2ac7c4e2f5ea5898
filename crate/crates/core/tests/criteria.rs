//! Certificates re-verify, agree with direct computation, and survive a JSON
//! round trip.

use cbdiv::criteria::{
    certify, mon2_search, theta_level, verify_certificate, Certificate, MON2_BUDGET,
};
use cbdiv::hassett::compare;
use cbdiv::reproduce::{multisets, random_theta_specs};
use cbdiv::weights::enumerate_alcove;
use cbdiv::{
    is_zero, BundleSpec, HassettWeights, LeveledAlgebra, Rational, Rational64, Verdict, Weight,
};
use proptest::prelude::*;

fn spec_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = BundleSpec> {
    (2usize..=4, 1u32..=3)
        .prop_flat_map(move |(k, l)| {
            let alg = LeveledAlgebra::new(k, l).unwrap();
            let d = enumerate_alcove(&alg).len();
            (Just(alg), prop::collection::vec(0..d, min_n..=max_n))
        })
        .prop_map(|(alg, idx)| {
            let alcove = enumerate_alcove(&alg);
            BundleSpec::new(alg, idx.into_iter().map(|i| alcove[i].clone()).collect()).unwrap()
        })
}

fn agrees(cert: &Certificate) -> bool {
    let zero = is_zero(&cert.spec).unwrap();
    match cert.verdict {
        Verdict::Zero => zero,
        Verdict::NonZero => !zero,
        Verdict::Unknown => true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn certify_is_sound_and_reverifies(s in spec_strategy(4, 6)) {
        let cert = certify(&s, None).unwrap();
        prop_assert!(cert.verdict != Verdict::Unknown);
        prop_assert!(agrees(&cert), "{:?}", cert);
        prop_assert!(verify_certificate(&cert).unwrap());
    }

    #[test]
    fn searched_certificates_reverify(s in spec_strategy(4, 5)) {
        let cert = mon2_search(&s, MON2_BUDGET).unwrap();
        prop_assert!(agrees(&cert), "{:?}", cert);
        prop_assert!(verify_certificate(&cert).unwrap());
    }

    #[test]
    fn json_round_trip(s in spec_strategy(4, 5)) {
        let cert = certify(&s, Some(1000)).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert!(verify_certificate(&back).unwrap());
    }
}

#[test]
fn theta_sample_is_above_theta() {
    for s in random_theta_specs(50, 7).unwrap() {
        let theta: Rational64 = theta_level(s.weights());
        assert!(Rational64::from_integer(i64::from(s.level())) > theta);
        assert!(is_zero(&s).unwrap(), "{s}");
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let s = BundleSpec::parse("sl6", 2, "w3^6").unwrap();
    let mut cert = certify(&s, None).unwrap();
    assert_eq!(cert.verdict, Verdict::NonZero);
    cert.verdict = Verdict::Zero;
    assert!(!verify_certificate(&cert).unwrap());
}

/// For fundamental weights `ω_{α_i}` of `sl_{r+1}` with `Σ α_i = (r+1)(ℓ+1)`,
/// every curve contracted by `ρ_A`, `a_i = α_i/(r+ℓ)`, is contracted by `D`.
#[test]
fn hassett_contractions_are_contained() {
    let mut tested = 0;
    for (k, l) in (2usize..=4).flat_map(|k| (1u32..=3).map(move |l| (k, l))) {
        let r = k as u32 - 1;
        let target = k * (l as usize + 1);
        for n in 4..=8 {
            for alphas in multisets(k - 1, n) {
                let alphas: Vec<usize> = alphas.iter().map(|a| a + 1).collect();
                if alphas.iter().sum::<usize>() != target {
                    continue;
                }
                let ws: Vec<Weight> = alphas
                    .iter()
                    .map(|&a| Weight::fundamental(k, a).unwrap())
                    .collect();
                let s = BundleSpec::new(LeveledAlgebra::new(k, l).unwrap(), ws).unwrap();
                let a = alphas
                    .iter()
                    .map(|&x| Rational::new((x as i64).into(), i64::from(r + l).into()))
                    .collect();
                let Ok(a) = HassettWeights::new(a) else {
                    continue;
                };
                let report = compare(&s, &a).unwrap();
                assert!(report.only_hassett.is_empty(), "{s}: {report:?}");
                tested += 1;
            }
        }
    }
    assert!(tested > 10, "only {tested} cases");
}
