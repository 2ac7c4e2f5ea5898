//! Reproduction suite: every numerical claim we check, grouped into numbered
//! criteria with time budgets. Used by the `acceptance` test target and the
//! `reproduce` CLI command.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::criteria::{
    abracadabra_split, additive_check, claim_c_construct, critical_level, mon1_test, mon2_search,
    mon2_test, scaling_check, sl2_nonvanishing, theta_level, vanishing_test, Payload, Rule,
    Verdict, MON2_BUDGET,
};
use crate::divisor::{
    all_fcurves, critical_partner_equal, degree_on_m04, degree_stats, fcurve_classes,
    fcurve_intersection, intersection_vector, is_zero, symmetric_class, FCurve,
};
use crate::error::Result;
use crate::fusion::{factorization_check, fusion_rank, rank_quantum, rank_verlinde, BundleSpec};
use crate::hassett::{compare, contracted_by_hassett, HassettWeights};
use crate::tensor::coinvariant_dim;
use crate::weights::{enumerate_alcove, LeveledAlgebra, Weight};
use crate::{Rational, Rational64};

/// One sub-check of a criterion.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

fn check(label: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        label: label.to_string(),
        passed,
        detail: detail.into(),
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(label: &str, got: T, want: T) -> Check {
    let passed = got == want;
    check(label, passed, format!("got {got:?}, expected {want:?}"))
}

pub struct Criterion {
    pub id: u8,
    pub anchor: &'static str,
    pub budget: Duration,
    pub run: fn() -> Result<Vec<Check>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub anchor: &'static str,
    pub passed: bool,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
    pub within_budget: bool,
    pub checks: Vec<Check>,
    pub error: Option<String>,
}

impl Outcome {
    /// `criterion  3 [PASS] ...` style line.
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {:>2} [{status}] {} ({} ms, budget {} ms)",
            self.id, self.anchor, self.elapsed_ms, self.budget_ms
        );
        if !self.within_budget {
            s.push_str(" over budget");
        }
        if let Some(e) = &self.error {
            s.push_str(&format!(" error: {e}"));
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            s.push_str(&format!("\n    failed: {}: {}", c.label, c.detail));
        }
        s
    }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            anchor: "sl4 introductory example: rank, coinvariants, degree",
            budget: secs(1),
            run: c1,
        },
        Criterion {
            id: 2,
            anchor: "sl4 introductory example as a sum of two zero divisors",
            budget: secs(1),
            run: c2,
        },
        Criterion {
            id: 3,
            anchor: "sl4 rank one example as a sum of three level one divisors",
            budget: secs(1),
            run: c3,
        },
        Criterion {
            id: 4,
            anchor: "sl5 fibration family, quantum Pieri rank",
            budget: secs(5),
            run: c4,
        },
        Criterion {
            id: 5,
            anchor: "sl3 level 5 example: rank 11, class, partner, Hassett",
            budget: secs(120),
            run: c5,
        },
        Criterion {
            id: 6,
            anchor: "sl_{r+1} level l, w1^n: positivity and Hassett contractions",
            budget: secs(60),
            run: c6,
        },
        Criterion {
            id: 7,
            anchor: "monotonicity certificates and soundness sweep",
            budget: secs(600),
            run: c7,
        },
        Criterion {
            id: 8,
            anchor: "theta level vanishing on random tuples",
            budget: secs(60),
            run: c8,
        },
        Criterion {
            id: 9,
            anchor: "scaling of rank one divisors",
            budget: secs(10),
            run: c9,
        },
        Criterion {
            id: 10,
            anchor: "Kac-Walton, Verlinde and quantum cohomology agree",
            budget: secs(600),
            run: c10,
        },
        Criterion {
            id: 11,
            anchor: "split lemma and degree-positive construction",
            budget: secs(300),
            run: c11,
        },
        Criterion {
            id: 12,
            anchor: "every degree is a nonnegative integer",
            budget: secs(600),
            run: c12,
        },
    ]
}

pub fn run(c: &Criterion) -> Outcome {
    let start = Instant::now();
    let result = (c.run)();
    let elapsed = start.elapsed();
    let within_budget = elapsed <= c.budget;
    let (checks, error) = match result {
        Ok(checks) => (checks, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let passed = error.is_none() && within_budget && checks.iter().all(|c| c.passed);
    Outcome {
        id: c.id,
        anchor: c.anchor,
        passed,
        elapsed_ms: elapsed.as_millis(),
        budget_ms: c.budget.as_millis(),
        within_budget,
        checks,
        error,
    }
}

/// Run the selected criteria (all when `only` is empty) in order.
pub fn run_all(only: &[u8]) -> Vec<Outcome> {
    criteria()
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.id))
        .map(run)
        .collect()
}

fn spec(alg: &str, level: u32, weights: &str) -> Result<BundleSpec> {
    BundleSpec::parse(alg, level, weights)
}

fn c1() -> Result<Vec<Check>> {
    let s = spec("sl4", 3, "w1;2w1+w3^3")?;
    Ok(vec![
        expect_eq("rank", fusion_rank(&s)?, 1),
        expect_eq("coinvariants", coinvariant_dim(s.weights())?, 2),
        expect_eq(
            "degree on M_0,4",
            degree_on_m04(&s.algebra(), s.weights())?,
            0,
        ),
    ])
}

fn c2() -> Result<Vec<Check>> {
    let mu = spec("sl4", 1, "w1^4")?;
    let nu = spec("sl4", 2, "0;w1+w3^3")?;
    let cert = additive_check(&mu, &nu)?;
    let target = spec("sl4", 3, "w1;2w1+w3^3")?;
    let mut out = vec![
        expect_eq("sum spec", cert.spec.clone(), target),
        expect_eq("verdict", cert.verdict, Verdict::Zero),
    ];
    if let Payload::Additive {
        rank_mu,
        delta,
        rank_sum,
        mu_zero,
        nu_zero,
        ..
    } = cert.payload
    {
        out.push(expect_eq("rk V(mu, 1)", rank_mu, 1));
        out.push(expect_eq(
            "rk V(nu, 2) = rk V(sum, 3) = 1",
            (delta, rank_sum),
            (1, 1),
        ));
        out.push(expect_eq(
            "both summands zero",
            (mu_zero, nu_zero),
            (Some(true), Some(true)),
        ));
    } else {
        out.push(check("payload", false, "rank hypotheses not recorded"));
    }
    Ok(out)
}

fn c3() -> Result<Vec<Check>> {
    let total = spec("sl4", 3, "w2+w3;w1;w1+2w2;2w1+w3")?;
    let parts = [
        spec("sl4", 1, "w2;0;w1;w1")?,
        spec("sl4", 1, "w3;0;w2;w3")?,
        spec("sl4", 1, "0;w1;w2;w1")?,
    ];
    let vt = intersection_vector(&total, false)?;
    let vs: Vec<_> = parts
        .iter()
        .map(|p| intersection_vector(p, false))
        .collect::<Result<_>>()?;
    let summed: BTreeMap<FCurve, u64> = vt
        .values
        .keys()
        .map(|f| (f.clone(), vs.iter().map(|v| v.values[f]).sum()))
        .collect();
    // the three weight tuples add up to the total
    let added: Vec<Weight> = (0..4)
        .map(|i| {
            parts
                .iter()
                .skip(1)
                .try_fold(parts[0].weights()[i].clone(), |acc, p| {
                    acc.add(&p.weights()[i])
                })
        })
        .collect::<Result<_>>()?;
    let mut out = vec![
        expect_eq("rank", fusion_rank(&total)?, 1),
        expect_eq("coinvariants", coinvariant_dim(total.weights())?, 2),
        expect_eq("summands add up", total.with_weights(added)?, total.clone()),
        expect_eq("D = sum of the three divisors", vt.values.clone(), summed),
        expect_eq(
            "degree",
            degree_on_m04(&total.algebra(), total.weights())?,
            0,
        ),
    ];
    for (i, p) in parts.iter().enumerate() {
        out.push(expect_eq(
            &format!("summand {} has rank 1", i + 1),
            fusion_rank(p)?,
            1,
        ));
        out.push(expect_eq(
            &format!("summand {} is zero", i + 1),
            vs[i].is_zero(),
            true,
        ));
    }
    Ok(out)
}

fn c4() -> Result<Vec<Check>> {
    let s = spec("sl5", 2, "2w1;2w1;w1+w4;w1+w4;w1")?;
    let nu = spec("sl5", 1, "w1^5")?;
    let mu = spec("sl5", 1, "w1;w1;w4;w4;0")?;
    let van = vanishing_test(&nu);
    let add = additive_check(&mu, &nu)?;
    let delta = match add.payload {
        Payload::Additive {
            delta,
            rank_sum,
            rank_mu,
            ..
        } => (rank_mu, delta, rank_sum),
        _ => (0, 0, 0),
    };
    Ok(vec![
        expect_eq("rank (Kac-Walton)", fusion_rank(&s)?, 1),
        expect_eq("rank (quantum cohomology)", rank_quantum(&s)?, 1),
        expect_eq(
            "critical level of nu",
            critical_level(5, nu.weights()),
            Some(0),
        ),
        expect_eq(
            "nu vanishes above the critical level",
            (van.verdict, van.rule),
            (Verdict::Zero, Rule::CriticalVanishing),
        ),
        expect_eq("D(nu, 1) = 0", is_zero(&nu)?, true),
        expect_eq(
            "intersection vectors agree",
            intersection_vector(&s, false)?.values,
            intersection_vector(&mu, false)?.values,
        ),
        expect_eq(
            "additive decomposition ranks (1, delta, delta)",
            delta,
            (1, 1, 1),
        ),
    ])
}

fn c5() -> Result<Vec<Check>> {
    let s = spec("sl3", 5, "3w1^6")?;
    let partner = spec("sl6", 2, "w3^6")?;
    let f1113 = FCurve::from_sizes([1, 1, 1, 3])?;
    let b = symmetric_class::<Rational64>(&s)?;
    let bvals = (b[&2], b[&3]);
    let ray = bvals.0 * 3 == bvals.1 * 2 && bvals.0 > Rational64::from_integer(0);
    let a = HassettWeights::uniform(6, Rational::new(3.into(), 7.into()))?;
    let report = compare(&s, &a)?;
    let transposed = s.transposed()?;
    Ok(vec![
        expect_eq(
            "rk V(sl4, w2^6, 2)",
            fusion_rank(&spec("sl4", 2, "w2^6")?)?,
            11,
        ),
        expect_eq("D . F_1113", fcurve_intersection(&s, &f1113)?, 0),
        check(
            "class is 2B2 + 3B3 (all-subsets convention)",
            bvals == (Rational64::from_integer(2), Rational64::from_integer(3)),
            format!(
                "got b2 = {}, b3 = {}; proportional to (2, 3): {ray}",
                bvals.0, bvals.1
            ),
        ),
        check(
            "class lies on the ray of 2B2 + 3B3",
            ray,
            format!("b2 = {}, b3 = {}", bvals.0, bvals.1),
        ),
        expect_eq("partner is sl6 level 2, w3^6", transposed, partner),
        expect_eq(
            "critical partners have equal intersection vectors",
            critical_partner_equal(&s)?,
            true,
        ),
        expect_eq(
            "rho for 3/7 contracts nothing",
            contracted_by_hassett(&a)?.len(),
            0,
        ),
        expect_eq(
            "D contracts only F_1113",
            report.only_divisor.clone(),
            vec!["1,1,1,3".to_string()],
        ),
        expect_eq(
            "nothing contracted by rho alone",
            report.only_hassett.len(),
            0,
        ),
    ])
}

fn omega1_family(r: u32, l: u32) -> Result<Vec<Check>> {
    let n = ((r + 1) * (l + 1)) as usize;
    let s = spec(&format!("sl{}", r + 1), l, &format!("w1^{n}"))?;
    let dc = intersection_vector(&s, true)?;
    let threshold = (r + l + 1) as usize;
    let mut wrong = Vec::new();
    for (f, &v) in &dc.values {
        let sizes = f.size_class();
        let light = sizes[0] + sizes[1] + sizes[2];
        if (v > 0) != (light >= threshold) {
            wrong.push(format!("{} -> {v}", f.class_key()));
        }
    }
    let a = HassettWeights::uniform(n, Rational::new(1.into(), i64::from(r + l).into()))?;
    let report = compare(&s, &a)?;
    Ok(vec![
        check(
            &format!("sl{} level {l}: D.F > 0 iff n1+n2+n3 >= {threshold}", r + 1),
            wrong.is_empty(),
            format!("classes {:?}; mismatches {wrong:?}", dc.by_class()),
        ),
        check(
            &format!(
                "sl{} level {l}: same contracted curves as rho(1/{})",
                r + 1,
                r + l
            ),
            report.identical(),
            format!("{report:?}"),
        ),
    ])
}

fn c6() -> Result<Vec<Check>> {
    let mut out = omega1_family(2, 2)?;
    let s = spec("sl3", 2, "w1^9")?;
    let a = HassettWeights::uniform(9, Rational::new(1.into(), 4.into()))?;
    let keys: Vec<String> = contracted_by_hassett(&a)?
        .iter()
        .map(FCurve::class_key)
        .collect();
    out.push(expect_eq(
        "rho(1/4) contracts",
        keys,
        vec!["1,1,1,6".into(), "1,1,2,5".into()],
    ));
    let f = FCurve::from_sizes([1, 1, 3, 4])?;
    out.push(check(
        "D . F_1134 > 0",
        fcurve_intersection(&s, &f)? > 0,
        "",
    ));
    for (r, l) in [(2, 3), (3, 2)] {
        out.extend(omega1_family(r, l)?);
    }
    Ok(out)
}

/// Multisets of size `n` from `0..d`, in lexicographic order.
pub fn multisets(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, n, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Every spec with `r+1 ∈ ranks`, level in `levels`, `n ∈ points`, weights
/// taken up to reordering and up to simultaneous duality.
pub fn small_specs(
    ranks: std::ops::RangeInclusive<usize>,
    levels: std::ops::RangeInclusive<u32>,
    points: std::ops::RangeInclusive<usize>,
) -> Result<Vec<BundleSpec>> {
    let mut out = Vec::new();
    for k in ranks {
        for l in levels.clone() {
            let alg = LeveledAlgebra::new(k, l)?;
            let alcove = enumerate_alcove(&alg);
            for n in points.clone() {
                for m in multisets(alcove.len(), n) {
                    let ws: Vec<Weight> = m.iter().map(|&i| alcove[i].clone()).collect();
                    let mut dual: Vec<Weight> = ws.iter().map(Weight::dual).collect();
                    dual.sort();
                    if dual < ws {
                        continue;
                    }
                    out.push(BundleSpec::new(alg, ws)?);
                }
            }
        }
    }
    Ok(out)
}

/// Certificate verdicts that disagree with `is_zero` on the small grid,
/// together with the number of specs and of decided verdicts.
pub fn soundness_sweep() -> Result<(usize, usize, Vec<String>)> {
    let specs = small_specs(2..=4, 1..=3, 4..=5)?;
    let mut decided = 0;
    let mut bad = Vec::new();
    for s in &specs {
        let zero = is_zero(s)?;
        let mut certs = vec![
            vanishing_test(s),
            mon1_test(s)?,
            mon2_test(s, None)?,
            mon2_search(s, MON2_BUDGET)?,
        ];
        if s.rank_plus_one() == 2 {
            if let Ok(c) = sl2_nonvanishing(s) {
                certs.push(c);
            }
        }
        for c in certs {
            let ok = match c.verdict {
                Verdict::Zero => zero,
                Verdict::NonZero => !zero,
                Verdict::Unknown => continue,
            };
            decided += 1;
            if !ok {
                bad.push(format!(
                    "{s}: {:?} says {:?}, is_zero = {zero}",
                    c.rule, c.verdict
                ));
            }
        }
    }
    Ok((specs.len(), decided, bad))
}

fn c7() -> Result<Vec<Check>> {
    let s = spec("sl6", 2, "w3^6")?;
    let m1 = mon1_test(&s)?;
    let m2 = mon2_test(&s, None)?;
    let mut out = vec![
        expect_eq("mon1 verdict", m1.verdict, Verdict::NonZero),
        expect_eq("mon2 verdict", m2.verdict, Verdict::NonZero),
        expect_eq(
            "theta level = critical level = 2",
            (
                theta_level::<Rational64>(s.weights()),
                critical_level(6, s.weights()),
            ),
            (Rational64::from_integer(2), Some(2)),
        ),
    ];
    if let Payload::Auxiliary {
        delta,
        rank_mu,
        rank_nu,
        ..
    } = &m2.payload
    {
        out.push(expect_eq("delta", *delta, Some(3)));
        out.push(expect_eq("rk V(sl4, w2^6, 2)", *rank_nu, Some(11)));
        out.push(expect_eq("rk V(sl2, w1^6, 2) as stated", *rank_mu, Some(1)));
    }
    // the partner family: sl_{l+1} at level r with fundamental weights
    let mut family = 0;
    let mut family_bad = Vec::new();
    for (r, l) in [(1u32, 3u32), (1, 4), (2, 3)] {
        let n = 2 * (r as usize + 1);
        let target = ((r + 1) * (l + 1)) as usize;
        for alphas in multisets(l as usize, n) {
            let alphas: Vec<usize> = alphas.iter().map(|a| a + 1).collect();
            if alphas.iter().sum::<usize>() != target {
                continue;
            }
            family += 1;
            let ws = alphas
                .iter()
                .map(|&a| Weight::fundamental(l as usize + 1, a))
                .collect::<Result<Vec<_>>>()?;
            let s = BundleSpec::new(LeveledAlgebra::new(l as usize + 1, r)?, ws)?;
            let c = mon1_test(&s)?;
            let zero = is_zero(&s)?;
            let expected = if zero {
                Verdict::Zero
            } else {
                Verdict::NonZero
            };
            if c.verdict != expected || !critical_partner_equal(&s)? {
                family_bad.push(format!("{s}: mon1 {:?}, is_zero {zero}", c.verdict));
            }
        }
    }
    out.push(check(
        "fundamental-weight family: mon1 decides, partners agree",
        family_bad.is_empty() && family > 0,
        format!("{family} tuples; disagreements {family_bad:?}"),
    ));
    let (n, decided, bad) = soundness_sweep()?;
    out.push(check(
        "soundness sweep r+1 <= 4, l <= 3, n <= 5",
        bad.is_empty(),
        format!(
            "{n} specs, {decided} decided verdicts, {} disagreements {:?}",
            bad.len(),
            bad.iter().take(5).collect::<Vec<_>>()
        ),
    ));
    Ok(out)
}

/// Fixed seed so the random suites are reproducible.
pub const SEED: u64 = 0x5eed_cb0d;

/// `count` random admissible specs above their theta level.
pub fn random_theta_specs(count: usize, seed: u64) -> Result<Vec<BundleSpec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.gen_range(2..=4usize);
        let l = rng.gen_range(1..=3u32);
        let n = rng.gen_range(4..=6usize);
        let alg = LeveledAlgebra::new(k, l)?;
        let alcove = enumerate_alcove(&alg);
        let ws: Vec<Weight> = (0..n)
            .map(|_| alcove[rng.gen_range(0..alcove.len())].clone())
            .collect();
        let theta: Rational64 = theta_level(&ws);
        if Rational64::from_integer(i64::from(l)) > theta {
            out.push(BundleSpec::new(alg, ws)?);
        }
    }
    Ok(out)
}

fn c8() -> Result<Vec<Check>> {
    let specs = random_theta_specs(200, SEED)?;
    let mut bad = Vec::new();
    let mut positive_rank = 0;
    for s in &specs {
        if fusion_rank(s)? > 0 {
            positive_rank += 1;
        }
        if !intersection_vector(s, false)?.is_zero() {
            bad.push(s.to_string());
        }
    }
    Ok(vec![check(
        "200 tuples above the theta level have zero intersection vectors",
        bad.is_empty() && specs.len() == 200,
        format!("{positive_rank} of them have positive rank; nonzero: {bad:?}"),
    )])
}

fn c9() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (alg, l, w) in [
        ("sl2", 1, "w1^4"),
        ("sl3", 1, "w1^6"),
        ("sl3", 1, "w1;w1;w2;w2"),
    ] {
        let s = spec(alg, l, w)?;
        for factor in 1..=3 {
            let label = format!("{alg} {w} level {l}, N = {factor}");
            match scaling_check(&s, factor) {
                Ok(c) => out.push(check(&label, true, format!("{:?}", c.payload))),
                Err(e) => out.push(check(&label, false, e.to_string())),
            }
        }
    }
    let s = spec("sl2", 1, "w1^4")?;
    for factor in 1..=3u32 {
        let t = s.scaled(factor)?;
        out.push(expect_eq(
            &format!("sl2 w1^4: degree at N = {factor}"),
            degree_on_m04(&t.algebra(), t.weights())?,
            u64::from(factor),
        ));
    }
    Ok(out)
}

fn c10() -> Result<Vec<Check>> {
    let specs = small_specs(2..=4, 1..=3, 3..=6)?;
    let mut disagree = Vec::new();
    let mut duality = Vec::new();
    let mut zero_insert = Vec::new();
    let mut monotone = Vec::new();
    let mut level_one = Vec::new();
    for s in &specs {
        let kw = fusion_rank(s)?;
        let v = rank_verlinde(s)?;
        let q = rank_quantum(s)?;
        if kw != v || kw != q {
            disagree.push(format!("{s}: {kw} {v} {q}"));
        }
        if fusion_rank(&s.dual())? != kw {
            duality.push(s.to_string());
        }
        if fusion_rank(&s.with_zero_appended())? != kw {
            zero_insert.push(s.to_string());
        }
        let up = BundleSpec::new(s.algebra().with_level(s.level() + 1)?, s.weights().to_vec())?;
        let up_rank = fusion_rank(&up)?;
        if kw > up_rank || (s.n() <= 5 && up_rank > coinvariant_dim(s.weights())?) {
            monotone.push(s.to_string());
        }
        if s.level() == 1 && kw > 1 {
            level_one.push(s.to_string());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xfac7);
    let mut factorization_bad = Vec::new();
    let mut sampled = 0;
    while sampled < 300 {
        let s = &specs[rng.gen_range(0..specs.len())];
        let n = s.n();
        if n < 4 {
            continue;
        }
        let size = rng.gen_range(2..=n - 2);
        let mut part: Vec<usize> = (0..n).collect();
        for i in 0..size {
            let j = rng.gen_range(i..n);
            part.swap(i, j);
        }
        part.truncate(size);
        sampled += 1;
        if !factorization_check(s, &part)? {
            factorization_bad.push(format!("{s} split {part:?}"));
        }
    }
    let summary = |v: &Vec<String>| {
        format!(
            "{} failures {:?}",
            v.len(),
            v.iter().take(3).collect::<Vec<_>>()
        )
    };
    Ok(vec![
        check(
            "three backends agree on the grid",
            disagree.is_empty(),
            format!("{} specs; {}", specs.len(), summary(&disagree)),
        ),
        check("duality", duality.is_empty(), summary(&duality)),
        check(
            "zero insertion",
            zero_insert.is_empty(),
            summary(&zero_insert),
        ),
        check(
            "rank grows with the level, bounded by coinvariants",
            monotone.is_empty(),
            summary(&monotone),
        ),
        check(
            "level one ranks are 0 or 1",
            level_one.is_empty(),
            summary(&level_one),
        ),
        check(
            "factorization on 300 random splits",
            factorization_bad.is_empty(),
            summary(&factorization_bad),
        ),
    ])
}

fn c11() -> Result<Vec<Check>> {
    let mut split_cases = 0;
    let mut split_bad = Vec::new();
    for r in 1..=4u32 {
        for l in 1..=4u32 {
            let cap = (r + 1) * l;
            let total = (r + 2) * (l + 1);
            for m in quadruples(cap, total) {
                split_cases += 1;
                if let Err(e) = abracadabra_split(m, r, l) {
                    split_bad.push(format!("r={r} l={l} m={m:?}: {e}"));
                }
            }
        }
    }
    let mut built = 0;
    let mut claim_bad = Vec::new();
    for r in 1..=3u32 {
        for l in 1..=3u32 {
            for n in quadruples(r * l, (r + 1) * (l + 1)) {
                match claim_c_construct(n, r, l) {
                    Ok(c)
                        if c.degree > 0
                            && c.weights
                                .iter()
                                .map(Weight::size)
                                .eq(n.iter().map(|&x| u64::from(x))) =>
                    {
                        built += 1
                    }
                    Ok(c) => claim_bad.push(format!("r={r} l={l} n={n:?}: {c:?}")),
                    Err(e) => claim_bad.push(format!("r={r} l={l} n={n:?}: {e}")),
                }
            }
        }
    }
    Ok(vec![
        check(
            "split postconditions, r <= 4, l <= 4",
            split_bad.is_empty() && split_cases > 0,
            format!("{split_cases} inputs; failures {split_bad:?}"),
        ),
        check(
            "construction has positive degree, r <= 3, l <= 3",
            claim_bad.is_empty() && built > 0,
            format!("{built} inputs; failures {claim_bad:?}"),
        ),
    ])
}

/// All `(x_1..x_4)` with `1 ≤ x_i ≤ cap` and `Σ x_i = total`.
pub fn quadruples(cap: u32, total: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 1..=cap {
        for b in 1..=cap {
            for c in 1..=cap {
                let used = a + b + c;
                if used < total && total - used <= cap {
                    out.push([a, b, c, total - used]);
                }
            }
        }
    }
    out
}

fn c12() -> Result<Vec<Check>> {
    // every four-point degree on the small grid, then the global counters
    let mut computed = 0u64;
    for k in 2..=4 {
        for l in 1..=3 {
            let alg = LeveledAlgebra::new(k, l)?;
            let alcove = enumerate_alcove(&alg);
            for m in multisets(alcove.len(), 4) {
                let ws: Vec<Weight> = m.iter().map(|&i| alcove[i].clone()).collect();
                degree_on_m04(&alg, &ws)?;
                computed += 1;
            }
        }
    }
    for n in 4..=6 {
        let s = spec("sl3", 2, &format!("w1^{}", n))?;
        for f in all_fcurves(n).iter().chain(&fcurve_classes(n)) {
            fcurve_intersection(&s, f)?;
        }
    }
    let (evaluations, failures) = degree_stats();
    Ok(vec![
        check("small grid degrees", true, format!("{computed} quadruples")),
        check(
            "no degree failed the integrality or sign check",
            failures == 0 && evaluations > 0,
            format!("{evaluations} evaluations in this process, {failures} failures"),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadruple_count() {
        // compositions of 6 into 4 positive parts; no part can exceed 3
        assert_eq!(quadruples(3, 6).len(), 10);
        assert_eq!(quadruples(2, 6).len(), 6);
        assert_eq!(multisets(3, 2).len(), 6);
    }

    #[test]
    fn registry_is_numbered() {
        let ids: Vec<u8> = criteria().iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=12).collect::<Vec<_>>());
    }

    #[test]
    fn small_criteria_pass() {
        for o in run_all(&[1, 2, 3, 4]) {
            assert!(o.passed, "{}", o.line());
        }
    }
}
