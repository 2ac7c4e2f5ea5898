//! Levels, vanishing and nonvanishing criteria, each returning a
//! [`Certificate`] that can be re-checked with [`verify_certificate`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::divisor::{intersection_vector, is_zero, DivisorClass};
use crate::error::{Error, Result};
use crate::fusion::{fusion_rank, BundleSpec};
use crate::scalar::ExactScalar;
use crate::weights::{LeveledAlgebra, Weight};
use crate::{degree_on_m04, Rational64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Zero,
    NonZero,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    ThetaVanishing,
    CriticalVanishing,
    Mon1,
    Mon2,
    Sl2Metric,
    AdditiveDecomposition,
    Scaling,
    DirectComputation,
    /// Rank nonvanishing from a row split (used inside the Claim C
    /// construction). Its verdict is about the rank, not the divisor.
    Phish,
}

/// Data needed to re-derive a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Levels {
        level: u32,
        theta: String,
        critical: Option<i64>,
    },
    Auxiliary {
        /// 1-based row pairs `α_i < β_i`.
        pairs: Vec<(usize, usize)>,
        mu: Vec<Weight>,
        nu: Vec<Weight>,
        delta: Option<i64>,
        critical_mu: Option<i64>,
        rank_mu: Option<u64>,
        rank_nu: Option<u64>,
    },
    Rank {
        critical: Option<i64>,
        rank: u64,
    },
    Additive {
        mu: BundleSpec,
        nu: BundleSpec,
        rank_mu: u64,
        delta: u64,
        rank_sum: u64,
        mu_zero: Option<bool>,
        nu_zero: Option<bool>,
    },
    Scaling {
        factor: u32,
        scaled_rank: u64,
    },
    Phish {
        /// Unnormalized weights of `sl_t`.
        nu: Vec<Weight>,
        /// 1-based `A_i` row sets; `B_i` is the complement.
        a_rows: Vec<Vec<usize>>,
        delta: Option<i64>,
        rank_a: Option<u64>,
        rank_b: Option<u64>,
        rank: Option<u64>,
    },
    Direct {
        zero: bool,
    },
    Search {
        candidates: u64,
        exhausted_budget: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub spec: BundleSpec,
    pub verdict: Verdict,
    pub rule: Rule,
    pub payload: Payload,
    pub note: Option<String>,
}

impl Certificate {
    fn new(spec: &BundleSpec, verdict: Verdict, rule: Rule, payload: Payload) -> Self {
        Certificate {
            spec: spec.clone(),
            verdict,
            rule,
            payload,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// `c(sl_{r+1}, λ⃗) = −1 + Σ|λ_i|/(r+1)`, or `None` when `r+1 ∤ Σ|λ_i|`.
/// Weights should be normalized.
pub fn critical_level(rank_plus_one: usize, weights: &[Weight]) -> Option<i64> {
    let total: u64 = weights.iter().map(Weight::size).sum();
    let k = rank_plus_one as u64;
    total.is_multiple_of(k).then(|| (total / k) as i64 - 1)
}

/// `θ(λ⃗) = −1 + ½ Σ λ_i(H_θ)`.
pub fn theta_level<Q: ExactScalar>(weights: &[Weight]) -> Q {
    let s: i64 = weights.iter().map(|w| i64::from(w.theta_pairing())).sum();
    Q::from_ratio(s, 2) - Q::one()
}

fn levels_payload(spec: &BundleSpec) -> (Rational64, Option<i64>, Payload) {
    let theta: Rational64 = theta_level(spec.weights());
    let crit = critical_level(spec.rank_plus_one(), spec.weights());
    let payload = Payload::Levels {
        level: spec.level(),
        theta: theta.to_fraction_string(),
        critical: crit,
    };
    (theta, crit, payload)
}

/// Zero above the theta level, then zero above the critical level.
pub fn vanishing_test(spec: &BundleSpec) -> Certificate {
    let (theta, crit, payload) = levels_payload(spec);
    let l = i64::from(spec.level());
    if Rational64::from_integer(l) > theta {
        return Certificate::new(spec, Verdict::Zero, Rule::ThetaVanishing, payload);
    }
    if let Some(c) = crit {
        if l > c {
            return Certificate::new(spec, Verdict::Zero, Rule::CriticalVanishing, payload);
        }
    }
    Certificate::new(spec, Verdict::Unknown, Rule::CriticalVanishing, payload)
        .with_note("level is at most both the theta and the critical level")
}

fn sub_spec(rank_plus_one: usize, level: u32, weights: Vec<Weight>) -> Result<BundleSpec> {
    BundleSpec::new(LeveledAlgebra::new(rank_plus_one, level)?, weights)
}

fn rank_of(rank_plus_one: usize, level: u32, weights: &[Weight]) -> Result<u64> {
    fusion_rank(&sub_spec(rank_plus_one, level, weights.to_vec())?)
}

/// The default row pairs `(1, r+1)`.
pub fn default_pairs(spec: &BundleSpec) -> Vec<(usize, usize)> {
    vec![(1, spec.rank_plus_one()); spec.n()]
}

/// Split each `λ_i` into the rows `(α_i, β_i)` (an `sl_2` weight) and the
/// remaining `r−1` rows. Pairs are 1-based. Outputs are not normalized, since
/// the row sizes matter for condition (a) of the second monotonicity theorem.
pub fn auxiliary_rows(
    weights: &[Weight],
    pairs: &[(usize, usize)],
) -> Result<(Vec<Weight>, Vec<Weight>)> {
    if weights.len() != pairs.len() {
        return Err(Error::Domain(format!(
            "{} weights but {} row pairs",
            weights.len(),
            pairs.len()
        )));
    }
    let mut mu = Vec::with_capacity(weights.len());
    let mut nu = Vec::with_capacity(weights.len());
    for (w, &(a, b)) in weights.iter().zip(pairs) {
        let t = w.len();
        if a == 0 || a >= b || b > t {
            return Err(Error::Domain(format!(
                "row pair ({a}, {b}) is not 1 <= α < β <= {t}"
            )));
        }
        mu.push(w.select_rows(&[a - 1, b - 1]));
        let rest: Vec<usize> = (0..t).filter(|&i| i != a - 1 && i != b - 1).collect();
        nu.push(w.select_rows(&rest));
    }
    Ok((mu, nu))
}

/// Auxiliary `sl_2` and `sl_{r−1}` tuples, normalized. `pairs = None` takes
/// the first and last rows.
pub fn auxiliary_bundles(
    spec: &BundleSpec,
    pairs: Option<&[(usize, usize)]>,
) -> Result<(Vec<Weight>, Vec<Weight>)> {
    let default = default_pairs(spec);
    let (mu, nu) = auxiliary_rows(spec.weights(), pairs.unwrap_or(&default))?;
    Ok((
        mu.iter().map(Weight::normalize).collect(),
        nu.iter().map(Weight::normalize).collect(),
    ))
}

/// Outcome of checking conditions (a), (b), (c) for one choice of pairs.
struct Mon2Eval {
    payload: Payload,
    failure: Option<String>,
}

fn mon2_eval(spec: &BundleSpec, pairs: &[(usize, usize)]) -> Result<Mon2Eval> {
    let r = spec.rank_plus_one() - 1;
    let l = spec.level();
    let (mu_raw, nu_raw) = auxiliary_rows(spec.weights(), pairs)?;
    let mu: Vec<Weight> = mu_raw.iter().map(Weight::normalize).collect();
    let nu: Vec<Weight> = nu_raw.iter().map(Weight::normalize).collect();
    let mut payload = Payload::Auxiliary {
        pairs: pairs.to_vec(),
        mu: mu.clone(),
        nu: nu.clone(),
        delta: None,
        critical_mu: None,
        rank_mu: None,
        rank_nu: None,
    };
    let Payload::Auxiliary {
        delta,
        critical_mu,
        rank_mu,
        rank_nu,
        ..
    } = &mut payload
    else {
        unreachable!()
    };
    let fail = |payload: Payload, why: String| {
        Ok(Mon2Eval {
            payload,
            failure: Some(why),
        })
    };

    // (a) with the row sizes as selected, before normalizing
    let lam: u64 = spec.total_size();
    let smu: u64 = mu_raw.iter().map(Weight::size).sum();
    let snu: u64 = nu_raw.iter().map(Weight::size).sum();
    let k = (r + 1) as u64;
    let ok_a =
        lam.is_multiple_of(k) && smu * k == 2 * lam && (r < 2 || snu * k == (r as u64 - 1) * lam);
    if !ok_a {
        return fail(
            payload,
            format!("(a) fails: Σ|λ| = {lam}, Σ|μ| = {smu}, Σ|ν| = {snu}"),
        );
    }
    *delta = Some((lam / k) as i64);

    // (b)
    *critical_mu = critical_level(2, &mu);
    match *critical_mu {
        Some(c) if i64::from(l) <= c => {}
        c => {
            let c = c.map_or("undefined".into(), |c| c.to_string());
            return fail(
                payload,
                format!("(b) fails: level {l} exceeds the critical level {c} of μ"),
            );
        }
    }
    let rm = rank_of(2, l, &mu)?;
    *rank_mu = Some(rm);
    if rm == 0 {
        return fail(payload, "(b) fails: rk V(sl2, μ, ℓ) = 0".into());
    }

    // (c)
    if r > 2 {
        let rn = rank_of(r - 1, l, &nu)?;
        *rank_nu = Some(rn);
        if rn == 0 {
            return fail(payload, format!("(c) fails: rk V(sl{}, ν, ℓ) = 0", r - 1));
        }
    }
    Ok(Mon2Eval {
        payload,
        failure: None,
    })
}

/// Second monotonicity criterion for one choice of row pairs (default first
/// and last rows).
pub fn mon2_test(spec: &BundleSpec, pairs: Option<&[(usize, usize)]>) -> Result<Certificate> {
    let default = default_pairs(spec);
    let pairs = pairs.unwrap_or(&default);
    let eval = mon2_eval(spec, pairs)?;
    Ok(match eval.failure {
        None => Certificate::new(spec, Verdict::NonZero, Rule::Mon2, eval.payload),
        Some(why) => {
            Certificate::new(spec, Verdict::Unknown, Rule::Mon2, eval.payload).with_note(why)
        }
    })
}

/// Default budget for [`mon2_search`].
pub const MON2_BUDGET: u64 = 100_000;

/// Search row pairs in lexicographic order for a choice satisfying the second
/// monotonicity criterion. Choices giving the same rows at a position are
/// tried once. At most `budget` complete choices are examined.
pub fn mon2_search(spec: &BundleSpec, budget: u64) -> Result<Certificate> {
    let t = spec.rank_plus_one();
    let n = spec.n();
    let lam = spec.total_size();
    let k = t as u64;
    if t < 2 || !lam.is_multiple_of(k) {
        let c = mon2_test(spec, None)?;
        return Ok(c);
    }
    let target = 2 * lam / k;
    // distinct options per position: (pair, |μ| as selected)
    let options: Vec<Vec<((usize, usize), u64)>> = spec
        .weights()
        .iter()
        .map(|w| {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for a in 1..=t {
                for b in a + 1..=t {
                    let rows = (w.rows()[a - 1], w.rows()[b - 1]);
                    let rest: Vec<u32> = (0..t)
                        .filter(|&i| i != a - 1 && i != b - 1)
                        .map(|i| w.rows()[i])
                        .collect();
                    if seen.insert((rows, rest)) {
                        out.push(((a, b), u64::from(rows.0 + rows.1)));
                    }
                }
            }
            out
        })
        .collect();
    let min_rest: Vec<u64> = (0..=n)
        .map(|i| {
            options[i..]
                .iter()
                .map(|o| o.iter().map(|x| x.1).min().unwrap_or(0))
                .sum()
        })
        .collect();
    let max_rest: Vec<u64> = (0..=n)
        .map(|i| {
            options[i..]
                .iter()
                .map(|o| o.iter().map(|x| x.1).max().unwrap_or(0))
                .sum()
        })
        .collect();

    struct State<'a> {
        spec: &'a BundleSpec,
        options: &'a [Vec<((usize, usize), u64)>],
        min_rest: &'a [u64],
        max_rest: &'a [u64],
        target: u64,
        budget: u64,
        tried: u64,
        chosen: Vec<(usize, usize)>,
    }

    fn dfs(s: &mut State<'_>, pos: usize, sum: u64) -> Result<Option<Certificate>> {
        if s.tried >= s.budget {
            return Ok(None);
        }
        if pos == s.options.len() {
            s.tried += 1;
            let c = mon2_test(s.spec, Some(&s.chosen))?;
            return Ok((c.verdict == Verdict::NonZero).then_some(c));
        }
        for i in 0..s.options[pos].len() {
            let (pair, size) = s.options[pos][i];
            let next = sum + size;
            if next + s.min_rest[pos + 1] > s.target || next + s.max_rest[pos + 1] < s.target {
                continue;
            }
            s.chosen.push(pair);
            let found = dfs(s, pos + 1, next)?;
            s.chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    let mut state = State {
        spec,
        options: &options,
        min_rest: &min_rest,
        max_rest: &max_rest,
        target,
        budget,
        tried: 0,
        chosen: Vec::with_capacity(n),
    };
    if let Some(c) = dfs(&mut state, 0, 0)? {
        return Ok(c);
    }
    let exhausted = state.tried >= budget;
    Ok(Certificate::new(
        spec,
        Verdict::Unknown,
        Rule::Mon2,
        Payload::Search {
            candidates: state.tried,
            exhausted_budget: exhausted,
        },
    )
    .with_note(if exhausted {
        "search budget exhausted"
    } else {
        "no row pair choice satisfies the hypotheses"
    }))
}

/// First monotonicity criterion: at `ℓ = c = θ` with all weights nonzero and
/// `rk V(sl_2, μ⃗, ℓ) > 0` (default rows), the divisor is nonzero iff
/// `rk V(sl_{r−1}, ν⃗, ℓ) > 0` (for `r ≥ 3`; always nonzero for `r ≤ 2`).
pub fn mon1_test(spec: &BundleSpec) -> Result<Certificate> {
    let r = spec.rank_plus_one() - 1;
    let l = spec.level();
    let pairs = default_pairs(spec);
    let (mu, nu) = auxiliary_bundles(spec, Some(&pairs))?;
    let theta: Rational64 = theta_level(spec.weights());
    let crit = critical_level(spec.rank_plus_one(), spec.weights());
    let mut payload = Payload::Auxiliary {
        pairs,
        mu: mu.clone(),
        nu: nu.clone(),
        delta: crit.map(|c| c + 1),
        critical_mu: critical_level(2, &mu),
        rank_mu: None,
        rank_nu: None,
    };
    let unknown = |payload: Payload, why: &str| {
        Ok(Certificate::new(spec, Verdict::Unknown, Rule::Mon1, payload).with_note(why))
    };
    if crit != Some(i64::from(l)) || theta != Rational64::from_integer(i64::from(l)) {
        return unknown(
            payload,
            "hypothesis (1) fails: level, critical level and theta level differ",
        );
    }
    if spec.weights().iter().any(Weight::is_zero) {
        return unknown(payload, "hypothesis (2) fails: some weight is zero");
    }
    let rm = rank_of(2, l, &mu)?;
    if let Payload::Auxiliary { rank_mu, .. } = &mut payload {
        *rank_mu = Some(rm);
    }
    if rm == 0 {
        return unknown(payload, "hypothesis (3) fails: rk V(sl2, μ, ℓ) = 0");
    }
    if r < 3 {
        return Ok(Certificate::new(
            spec,
            Verdict::NonZero,
            Rule::Mon1,
            payload,
        ));
    }
    let rn = rank_of(r - 1, l, &nu)?;
    if let Payload::Auxiliary { rank_nu, .. } = &mut payload {
        *rank_nu = Some(rn);
    }
    let verdict = if rn > 0 {
        Verdict::NonZero
    } else {
        Verdict::Zero
    };
    Ok(Certificate::new(spec, verdict, Rule::Mon1, payload))
}

/// For `sl_2` at or below the critical level the divisor is nonzero exactly
/// when the rank is.
pub fn sl2_nonvanishing(spec: &BundleSpec) -> Result<Certificate> {
    if spec.rank_plus_one() != 2 {
        return Err(Error::Precondition(format!("{spec} is not an sl2 bundle")));
    }
    let crit = critical_level(2, spec.weights());
    let Some(c) = crit else {
        // odd total size: every rank vanishes
        return Ok(Certificate::new(
            spec,
            Verdict::Zero,
            Rule::Sl2Metric,
            Payload::Rank {
                critical: None,
                rank: 0,
            },
        ));
    };
    if i64::from(spec.level()) > c {
        return Err(Error::Precondition(format!(
            "level {} is above the critical level {c}; use the vanishing test",
            spec.level()
        )));
    }
    let rank = fusion_rank(spec)?;
    let verdict = if rank > 0 {
        Verdict::NonZero
    } else {
        Verdict::Zero
    };
    Ok(Certificate::new(
        spec,
        verdict,
        Rule::Sl2Metric,
        Payload::Rank {
            critical: crit,
            rank,
        },
    ))
}

fn vectors_compatible(specs: &[&BundleSpec]) -> bool {
    specs.iter().all(|s| s.is_symmetric())
}

/// Check `D(μ⃗+ν⃗, ℓ+m) = δ·D(μ⃗, ℓ) + D(ν⃗, m)` when `rk V(μ⃗, ℓ) = 1` and
/// `rk V(μ⃗+ν⃗, ℓ+m) = rk V(ν⃗, m) = δ`.
pub fn additive_check(mu: &BundleSpec, nu: &BundleSpec) -> Result<Certificate> {
    if mu.n() != nu.n() || mu.rank_plus_one() != nu.rank_plus_one() {
        return Err(Error::Precondition(
            "additive decomposition needs the same algebra and n".into(),
        ));
    }
    let alg = mu.algebra().with_level(mu.level() + nu.level())?;
    let sum_weights = mu
        .weights()
        .iter()
        .zip(nu.weights())
        .map(|(a, b)| a.add(b))
        .collect::<Result<Vec<_>>>()?;
    let sum = BundleSpec::new(alg, sum_weights)?;
    let rank_mu = fusion_rank(mu)?;
    let delta = fusion_rank(nu)?;
    let rank_sum = fusion_rank(&sum)?;
    let mut payload = Payload::Additive {
        mu: mu.clone(),
        nu: nu.clone(),
        rank_mu,
        delta,
        rank_sum,
        mu_zero: None,
        nu_zero: None,
    };
    if rank_mu != 1 || rank_sum != delta {
        return Ok(
            Certificate::new(&sum, Verdict::Unknown, Rule::AdditiveDecomposition, payload)
                .with_note("rank hypotheses fail"),
        );
    }
    let sym = vectors_compatible(&[mu, nu, &sum]);
    let dm = intersection_vector(mu, sym)?;
    let dn = intersection_vector(nu, sym)?;
    let ds = intersection_vector(&sum, sym)?;
    for (f, &v) in &ds.values {
        let expected = delta * dm.values[f] + dn.values[f];
        if v != expected {
            return Err(Error::InternalConsistency(format!(
                "additive identity fails on F = {f}: {v} != {delta}·{} + {}",
                dm.values[f], dn.values[f]
            )));
        }
    }
    if let Payload::Additive {
        mu_zero, nu_zero, ..
    } = &mut payload
    {
        *mu_zero = Some(dm.is_zero());
        *nu_zero = Some(dn.is_zero());
    }
    let verdict = if ds.is_zero() {
        Verdict::Zero
    } else {
        Verdict::NonZero
    };
    Ok(Certificate::new(
        &sum,
        verdict,
        Rule::AdditiveDecomposition,
        payload,
    ))
}

/// Check `rk V(Nλ⃗, Nℓ) = 1` and `D(Nλ⃗, Nℓ) = N·D(λ⃗, ℓ)` for a rank one
/// bundle.
pub fn scaling_check(spec: &BundleSpec, factor: u32) -> Result<Certificate> {
    if factor == 0 {
        return Err(Error::Domain("scaling factor must be at least 1".into()));
    }
    let rank = fusion_rank(spec)?;
    if rank != 1 {
        return Err(Error::Precondition(format!(
            "scaling needs rank 1, {spec} has rank {rank}"
        )));
    }
    let scaled = spec.scaled(factor)?;
    let scaled_rank = fusion_rank(&scaled)?;
    if scaled_rank != 1 {
        return Err(Error::InternalConsistency(format!(
            "rk V(Nλ, Nℓ) = {scaled_rank} for N = {factor}"
        )));
    }
    let base: DivisorClass = intersection_vector(spec, true)?;
    let big = intersection_vector(&scaled, true)?;
    if big.values != base.scaled(u64::from(factor)).values {
        return Err(Error::InternalConsistency(format!(
            "D(Nλ, Nℓ) != N·D(λ, ℓ) for {spec}, N = {factor}"
        )));
    }
    let verdict = if base.is_zero() {
        Verdict::Zero
    } else {
        Verdict::NonZero
    };
    Ok(Certificate::new(
        spec,
        verdict,
        Rule::Scaling,
        Payload::Scaling {
            factor,
            scaled_rank,
        },
    ))
}

/// Rank nonvanishing from a split of the rows of each `ν_i` into `A_i` and
/// its complement `B_i`, all `A_i` of the same size.
///
/// `nu` may be unnormalized. On success the conclusion `rk ≠ 0` is checked
/// against a direct rank computation.
pub fn phish_check(nu: &[Weight], level: u32, a_rows: &[Vec<usize>]) -> Result<Certificate> {
    let t = nu
        .first()
        .map(Weight::len)
        .ok_or_else(|| Error::Domain("empty tuple".into()))?;
    if nu.len() != a_rows.len() || nu.iter().any(|w| w.len() != t) {
        return Err(Error::Domain("row splits do not match the weights".into()));
    }
    let a = a_rows[0].len();
    let b = t.saturating_sub(a);
    if a == 0 || b == 0 {
        return Err(Error::Domain(format!("need 0 < |A_i| < {t}")));
    }
    let mut parts_a = Vec::new();
    let mut parts_b = Vec::new();
    for (w, rows) in nu.iter().zip(a_rows) {
        let set: BTreeSet<usize> = rows.iter().copied().collect();
        if set.len() != a || rows.len() != a || set.iter().any(|&x| x == 0 || x > t) {
            return Err(Error::Domain(format!(
                "bad row set {rows:?} for t = {t}, a = {a}"
            )));
        }
        let ia: Vec<usize> = set.iter().map(|x| x - 1).collect();
        let ib: Vec<usize> = (0..t).filter(|i| !set.contains(&(i + 1))).collect();
        parts_a.push(w.select_rows(&ia));
        parts_b.push(w.select_rows(&ib));
    }
    let spec = sub_spec(t, level, nu.to_vec())?;
    let mut payload = Payload::Phish {
        nu: nu.to_vec(),
        a_rows: a_rows.to_vec(),
        delta: None,
        rank_a: None,
        rank_b: None,
        rank: None,
    };
    let Payload::Phish {
        delta,
        rank_a,
        rank_b,
        rank,
        ..
    } = &mut payload
    else {
        unreachable!()
    };
    let st: u64 = nu.iter().map(Weight::size).sum();
    let sa: u64 = parts_a.iter().map(Weight::size).sum();
    let sb: u64 = parts_b.iter().map(Weight::size).sum();
    let (t64, a64, b64) = (t as u64, a as u64, b as u64);
    if !st.is_multiple_of(t64) || sa * t64 != a64 * st || sb * t64 != b64 * st {
        return Ok(
            Certificate::new(&spec, Verdict::Unknown, Rule::Phish, payload)
                .with_note(format!("(1) fails: sizes {st}, {sa}, {sb}")),
        );
    }
    *delta = Some((st / t64) as i64);
    let norm = |v: &[Weight]| v.iter().map(Weight::normalize).collect::<Vec<_>>();
    if a > 1 {
        let ra = rank_of(a, level, &norm(&parts_a))?;
        *rank_a = Some(ra);
        if ra == 0 {
            return Ok(
                Certificate::new(&spec, Verdict::Unknown, Rule::Phish, payload)
                    .with_note("(2) fails"),
            );
        }
    }
    if b > 1 {
        let rb = rank_of(b, level, &norm(&parts_b))?;
        *rank_b = Some(rb);
        if rb == 0 {
            return Ok(
                Certificate::new(&spec, Verdict::Unknown, Rule::Phish, payload)
                    .with_note("(3) fails"),
            );
        }
    }
    let direct = fusion_rank(&spec)?;
    *rank = Some(direct);
    if direct == 0 {
        return Err(Error::InternalConsistency(format!(
            "row split hypotheses hold but rk V = 0 for {spec}"
        )));
    }
    Ok(Certificate::new(
        &spec,
        Verdict::NonZero,
        Rule::Phish,
        payload,
    ))
}

/// Try every rule in turn, falling back to a direct F-curve computation.
pub fn certify(spec: &BundleSpec, search_budget: Option<u64>) -> Result<Certificate> {
    let v = vanishing_test(spec);
    if v.verdict != Verdict::Unknown {
        return Ok(v);
    }
    if spec.rank_plus_one() == 2 {
        return sl2_nonvanishing(spec);
    }
    let m1 = mon1_test(spec)?;
    if m1.verdict != Verdict::Unknown {
        return Ok(m1);
    }
    let m2 = match search_budget {
        Some(b) => mon2_search(spec, b)?,
        None => mon2_test(spec, None)?,
    };
    if m2.verdict != Verdict::Unknown {
        return Ok(m2);
    }
    let zero = is_zero(spec)?;
    let verdict = if zero {
        Verdict::Zero
    } else {
        Verdict::NonZero
    };
    Ok(Certificate::new(
        spec,
        verdict,
        Rule::DirectComputation,
        Payload::Direct { zero },
    ))
}

/// Recompute a certificate from its spec and payload and compare.
pub fn verify_certificate(cert: &Certificate) -> Result<bool> {
    let spec = &cert.spec;
    let again = match (cert.rule, &cert.payload) {
        (Rule::ThetaVanishing | Rule::CriticalVanishing, _) => vanishing_test(spec),
        (Rule::Mon1, _) => mon1_test(spec)?,
        (Rule::Mon2, Payload::Auxiliary { pairs, .. }) => mon2_test(spec, Some(pairs))?,
        (Rule::Mon2, Payload::Search { .. }) => return Ok(cert.verdict == Verdict::Unknown),
        (Rule::Sl2Metric, _) => sl2_nonvanishing(spec)?,
        (Rule::AdditiveDecomposition, Payload::Additive { mu, nu, .. }) => additive_check(mu, nu)?,
        (Rule::Scaling, Payload::Scaling { factor, .. }) => scaling_check(spec, *factor)?,
        (Rule::Phish, Payload::Phish { nu, a_rows, .. }) => phish_check(nu, spec.level(), a_rows)?,
        (Rule::DirectComputation, _) => {
            let zero = is_zero(spec)?;
            let verdict = if zero {
                Verdict::Zero
            } else {
                Verdict::NonZero
            };
            Certificate::new(
                spec,
                verdict,
                Rule::DirectComputation,
                Payload::Direct { zero },
            )
        }
        _ => return Ok(false),
    };
    Ok(again.verdict == cert.verdict && again.payload == cert.payload)
}

/// Write `m_i = n_i + q_i` with `0 < n_i ≤ rℓ`, `0 ≤ q_i ≤ ℓ`,
/// `Σ n_i = (r+1)(ℓ+1)`, following the case list of the proof: sort the
/// `m_i` descending, branch on how many exceed `rℓ`, then undo the sort.
pub fn abracadabra_split(m: [u32; 4], r: u32, l: u32) -> Result<([u32; 4], [u32; 4])> {
    if r == 0 || l == 0 {
        return Err(Error::Domain(format!(
            "need r, ℓ >= 1, got r = {r}, ℓ = {l}"
        )));
    }
    let cap = (r + 1) * l;
    if m.iter().any(|&x| x == 0 || x > cap) {
        return Err(Error::Domain(format!(
            "every m_i must lie in [1, {cap}], got {m:?}"
        )));
    }
    let total: u32 = m.iter().sum();
    if total != (r + 2) * (l + 1) {
        return Err(Error::Domain(format!(
            "Σ m_i = {total}, expected {}",
            (r + 2) * (l + 1)
        )));
    }
    let rl = r * l;
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&a, &b| m[b].cmp(&m[a]));
    let s: [u32; 4] = order.map(|i| m[i]);
    let k = |i: usize| s[i] - rl;
    let big = s.iter().filter(|&&x| x > rl).count();
    let q_sorted: [u32; 4] = match big {
        0 => {
            let mut rest = l + 1;
            let mut q = [0; 4];
            for i in 0..4 {
                q[i] = rest.min(l).min(s[i] - 1);
                rest -= q[i];
            }
            if rest != 0 {
                return Err(Error::InternalConsistency(format!(
                    "could not distribute ℓ+1 over {s:?}"
                )));
            }
            q
        }
        1 => [l, 1, 0, 0],
        2 => [k(0), l + 1 - k(0), 0, 0],
        3 => {
            if k(0) + k(1) > l + 1 {
                return Err(Error::InternalConsistency(format!(
                    "k1 + k2 > ℓ + 1 for {s:?}"
                )));
            }
            [k(0), k(1), l + 1 - k(0) - k(1), 0]
        }
        _ => {
            return Err(Error::InternalConsistency(format!(
                "all m_i exceed rℓ for {m:?}"
            )))
        }
    };
    let mut n = [0u32; 4];
    let mut q = [0u32; 4];
    for (pos, &i) in order.iter().enumerate() {
        q[i] = q_sorted[pos];
        n[i] = m[i]
            .checked_sub(q[i])
            .ok_or_else(|| Error::InternalConsistency(format!("q_i > m_i for {m:?}")))?;
    }
    let ok = n.iter().all(|&x| x > 0 && x <= rl)
        && q.iter().all(|&x| x <= l)
        && n.iter().sum::<u32>() == (r + 1) * (l + 1)
        && q.iter().sum::<u32>() == l + 1;
    if !ok {
        return Err(Error::InternalConsistency(format!(
            "split of {m:?} gave n = {n:?}, q = {q:?}"
        )));
    }
    Ok((n, q))
}

/// Output of [`claim_c_construct`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimC {
    pub weights: Vec<Weight>,
    /// 1-based row pairs for the second monotonicity criterion.
    pub pairs: Vec<(usize, usize)>,
    pub degree: u64,
}

/// Four diagrams in the `r × ℓ` box with `|λ_i| = n_i` and positive degree
/// on `M̄_{0,4}`, built by induction on `r`.
pub fn claim_c_construct(n: [u32; 4], r: u32, l: u32) -> Result<ClaimC> {
    if r == 0 || l == 0 {
        return Err(Error::Domain(format!(
            "need r, ℓ >= 1, got r = {r}, ℓ = {l}"
        )));
    }
    if n.iter().any(|&x| x == 0 || x > r * l) || n.iter().sum::<u32>() != (r + 1) * (l + 1) {
        return Err(Error::Domain(format!(
            "need n_i in [1, {}] summing to {}, got {n:?}",
            r * l,
            (r + 1) * (l + 1)
        )));
    }
    let (weights, pairs) = build_claim_c(n, r, l)?;
    let alg = LeveledAlgebra::new(r as usize + 1, l)?;
    let degree = degree_on_m04(&alg, &weights)?;
    if degree == 0 {
        return Err(Error::ConstructionFailure(format!(
            "constructed weights {weights:?} for n = {n:?} have degree 0"
        )));
    }
    Ok(ClaimC {
        weights,
        pairs,
        degree,
    })
}

fn build_claim_c(n: [u32; 4], r: u32, l: u32) -> Result<(Vec<Weight>, Vec<(usize, usize)>)> {
    if r == 1 {
        let weights = n
            .iter()
            .map(|&x| Weight::new(vec![x, 0]))
            .collect::<Result<Vec<_>>>()?;
        return Ok((weights, vec![(1, 2); 4]));
    }
    let (n_prev, q) = abracadabra_split(n, r - 1, l)?;
    let (old, old_pairs) = build_claim_c(n_prev, r - 1, l)?;
    let t = r as usize + 1;
    let mut weights = Vec::with_capacity(4);
    let mut pairs = Vec::with_capacity(4);
    let mut old_nu_rows = Vec::with_capacity(4);
    for i in 0..4 {
        let rows = old[i].rows();
        // the new row goes in front of the first strictly smaller row
        let p = rows.iter().position(|&x| x < q[i]).unwrap_or(rows.len());
        let mut new_rows = rows.to_vec();
        new_rows.insert(p, q[i]);
        // the old rows form a diagram with last row 0, so this one has its
        // last row 0 as well and fits the r × ℓ box
        debug_assert_eq!(new_rows.last(), Some(&0));
        let shift = |j: usize| if j - 1 < p { j } else { j + 1 };
        let (a, b) = old_pairs[i];
        pairs.push((shift(a), shift(b)));
        let q_pos = p + 1;
        old_nu_rows.push(
            (1..=t)
                .filter(|&j| j != shift(a) && j != shift(b) && j != q_pos)
                .collect::<Vec<_>>(),
        );
        weights.push(Weight::new(new_rows)?);
    }
    let spec = sub_spec(t, l, weights.clone())?;
    if spec.weights() != weights.as_slice() {
        return Err(Error::ConstructionFailure(format!(
            "{weights:?} are not normalized"
        )));
    }
    let m2 = mon2_test(&spec, Some(&pairs))?;
    if m2.verdict != Verdict::NonZero {
        return Err(Error::ConstructionFailure(format!(
            "second monotonicity criterion fails for {spec} with pairs {pairs:?}: {}",
            m2.note.unwrap_or_default()
        )));
    }
    if r >= 3 {
        // ν together with the new q row, as an sl_{r-1} tuple; the old ν rows
        // are A and the q row is B
        let mut nu = Vec::with_capacity(4);
        let mut a_rows = Vec::with_capacity(4);
        for i in 0..4 {
            let (a, b) = pairs[i];
            let keep: Vec<usize> = (0..t).filter(|&j| j + 1 != a && j + 1 != b).collect();
            nu.push(weights[i].select_rows(&keep));
            a_rows.push(
                old_nu_rows[i]
                    .iter()
                    .map(|&j| keep.iter().position(|&x| x + 1 == j).unwrap() + 1)
                    .collect(),
            );
        }
        let ph = phish_check(&nu, l, &a_rows)?;
        if ph.verdict != Verdict::NonZero {
            return Err(Error::ConstructionFailure(format!(
                "row split criterion fails for {nu:?}: {}",
                ph.note.unwrap_or_default()
            )));
        }
    }
    Ok((weights, pairs))
}
