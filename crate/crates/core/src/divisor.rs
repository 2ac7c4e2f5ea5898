//! First Chern classes of conformal blocks bundles, probed by F-curves.
//!
//! Degrees on `M̄_{0,4}` come from Fakhruddin's formula
//!
//! `deg V(λ_1..λ_4) = rk·Σ h(λ_i) − Σ_μ h(μ)·(r_12(μ) r_34(μ*) + r_13(μ) r_24(μ*) + r_14(μ) r_23(μ*))`
//!
//! with `h` the conformal weight and `r_ab(μ)` the 3-point rank. Every
//! conformal weight is `cs / D` with `cs` the integer scaled Casimir and
//! `D = 2(r+1)(ℓ+r+1)`, so the whole sum is evaluated in integers and then
//! divided by `D`; a nonzero remainder or a negative result is reported as an
//! internal consistency failure.
//!
//! An F-curve `F(N_1..N_4)` meets `D` in
//! `Σ_{μ⃗} deg V(μ_1..μ_4) · Π_i rk V(λ_{N_i}, μ_i*)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::LazyLock;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{ring, BundleSpec, FusionRing};
use crate::scalar::ExactScalar;
use crate::weights::{binomial, LeveledAlgebra, Weight};

/// `is_zero` trusts that F-curve classes span `H_2(M̄_{0,n})`
/// (Keel–McKernan). Nothing in this crate checks it.
pub const ASSUMES_FCURVES_SPAN_CURVES: bool = true;

static DEGREE_EVALUATIONS: AtomicU64 = AtomicU64::new(0);
static DEGREE_FAILURES: AtomicU64 = AtomicU64::new(0);

static DEGREES: LazyLock<DashMap<(LeveledAlgebra, [u16; 4]), u64>> = LazyLock::new(DashMap::new);

/// Number of four-point degree evaluations (cache misses) so far in this
/// process, and how many of them failed the integrality check.
pub fn degree_stats() -> (u64, u64) {
    (
        DEGREE_EVALUATIONS.load(Ordering::Relaxed),
        DEGREE_FAILURES.load(Ordering::Relaxed),
    )
}

/// Four-point degree for alcove indices of `ring`.
pub fn degree_indices(ring: &FusionRing, idx: [usize; 4]) -> Result<u64> {
    let mut key = idx.map(|i| i as u16);
    key.sort_unstable();
    let alg = ring.algebra();
    if let Some(v) = DEGREES.get(&(alg, key)) {
        return Ok(*v);
    }
    let v = evaluate_degree(ring, idx)?;
    DEGREES.insert((alg, key), v);
    Ok(v)
}

fn evaluate_degree(ring: &FusionRing, [a, b, c, d]: [usize; 4]) -> Result<u64> {
    DEGREE_EVALUATIONS.fetch_add(1, Ordering::Relaxed);
    let rank = i128::from(ring.rank_indices(&[a, b, c, d]));
    let legs: i128 = [a, b, c, d]
        .iter()
        .map(|&i| i128::from(ring.casimir_scaled(i)))
        .sum();
    let mut pairs = 0i128;
    for mu in 0..ring.dim() {
        let cs = i128::from(ring.casimir_scaled(mu));
        if cs == 0 {
            continue;
        }
        let md = ring.dual_index(mu);
        let t = |x: usize, y: usize, z: usize| i128::from(ring.threepoint(x, y, z));
        let count =
            t(a, b, mu) * t(c, d, md) + t(a, c, mu) * t(b, d, md) + t(a, d, mu) * t(b, c, md);
        pairs += cs * count;
    }
    let scaled = rank * legs - pairs;
    let denom = i128::from(ring.algebra().conformal_denominator());
    if scaled % denom != 0 || scaled < 0 {
        DEGREE_FAILURES.fetch_add(1, Ordering::Relaxed);
        let names: Vec<String> = [a, b, c, d]
            .iter()
            .map(|&i| ring.weight(i).to_string())
            .collect();
        return Err(Error::InternalConsistency(format!(
            "degree of V({}, {}) is {scaled}/{denom}, not a nonnegative integer",
            ring.algebra(),
            names.join(";")
        )));
    }
    u64::try_from(scaled / denom)
        .map_err(|_| Error::InternalConsistency(format!("degree {scaled}/{denom} overflows")))
}

/// `deg V_{sl_{r+1}, (λ_1..λ_4), ℓ}` on `M̄_{0,4} ≅ P¹`.
pub fn degree_on_m04(alg: &LeveledAlgebra, weights: &[Weight]) -> Result<u64> {
    if weights.len() != 4 {
        return Err(Error::Domain(format!(
            "need 4 weights, got {}",
            weights.len()
        )));
    }
    let ring = ring(alg)?;
    let idx = ring.indices_of(weights)?;
    degree_indices(&ring, [idx[0], idx[1], idx[2], idx[3]])
}

/// An F-curve of `M̄_{0,n}`: a partition of `{1..n}` into four blocks.
///
/// Stored canonically: each block sorted, blocks ordered by their smallest
/// point. Intersection numbers do not depend on the block order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FCurve {
    n: usize,
    blocks: [Vec<usize>; 4],
}

impl FCurve {
    /// Blocks of 1-based points.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n < 4 {
            return Err(Error::Domain(format!("F-curves need n >= 4, got {n}")));
        }
        let blocks: [Vec<usize>; 4] = blocks.try_into().map_err(|b: Vec<Vec<usize>>| {
            Error::Domain(format!("an F-curve has 4 blocks, got {}", b.len()))
        })?;
        let mut seen = vec![false; n + 1];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::Domain("empty F-curve block".into()));
            }
            for &p in block {
                if p == 0 || p > n || seen[p] {
                    return Err(Error::Domain(format!(
                        "point {p} is repeated or outside 1..={n}"
                    )));
                }
                seen[p] = true;
            }
        }
        if seen[1..].iter().any(|&s| !s) {
            return Err(Error::Domain(format!("blocks do not cover 1..={n}")));
        }
        Ok(FCurve::canonical(n, blocks))
    }

    fn canonical(n: usize, mut blocks: [Vec<usize>; 4]) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        FCurve { n, blocks }
    }

    /// The F-curve with consecutive blocks of the given sizes.
    pub fn from_sizes(sizes: [usize; 4]) -> Result<Self> {
        let n = sizes.iter().sum();
        let mut next = 1;
        let blocks = sizes
            .iter()
            .map(|&s| {
                let b: Vec<usize> = (next..next + s).collect();
                next += s;
                b
            })
            .collect();
        FCurve::new(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>; 4] {
        &self.blocks
    }

    /// Block sizes in ascending order.
    pub fn size_class(&self) -> [usize; 4] {
        let mut s = self.blocks.each_ref().map(Vec::len);
        s.sort_unstable();
        s
    }

    /// `"1,1,1,3"` style key of the size class.
    pub fn class_key(&self) -> String {
        class_key(self.size_class())
    }
}

impl fmt::Display for FCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&parts.join("|"))
    }
}

pub fn class_key(sizes: [usize; 4]) -> String {
    sizes
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// All F-curves of `M̄_{0,n}`, one per set partition into 4 blocks.
pub fn all_fcurves(n: usize) -> Vec<FCurve> {
    // restricted growth strings with exactly four values
    fn rec(pos: usize, n: usize, used: usize, labels: &mut Vec<usize>, out: &mut Vec<FCurve>) {
        if pos == n {
            if used == 4 {
                let mut blocks: [Vec<usize>; 4] = Default::default();
                for (p, &l) in labels.iter().enumerate() {
                    blocks[l].push(p + 1);
                }
                out.push(FCurve { n, blocks });
            }
            return;
        }
        if 4 - used > n - pos {
            return;
        }
        for l in 0..(used + 1).min(4) {
            labels.push(l);
            rec(pos + 1, n, used.max(l + 1), labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 4 {
        rec(0, n, 0, &mut Vec::with_capacity(n), &mut out);
    }
    out.sort();
    out
}

/// One F-curve per size class `n_1 ≤ n_2 ≤ n_3 ≤ n_4`, blocks consecutive.
pub fn fcurve_classes(n: usize) -> Vec<FCurve> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            for c in b..=n {
                if a + b + c >= n {
                    break;
                }
                let d = n - a - b - c;
                if d >= c {
                    out.push(FCurve::from_sizes([a, b, c, d]).expect("valid sizes"));
                }
            }
        }
    }
    out
}

/// `D·F` given the ring and the alcove indices of the bundle's weights.
fn intersection_with_ring(
    ring: &FusionRing,
    idx: &[usize],
    f: &FCurve,
    legs: &mut HashMap<Vec<usize>, Vec<(usize, u64)>>,
) -> Result<u64> {
    let mut supports: Vec<Vec<(usize, u64)>> = Vec::with_capacity(4);
    for block in f.blocks() {
        let mut key: Vec<usize> = block.iter().map(|&p| idx[p - 1]).collect();
        key.sort_unstable();
        let support = legs
            .entry(key)
            .or_insert_with_key(|k| {
                // entry μ of the distribution is rk V(λ_N, μ*)
                ring.distribution(k)
                    .into_iter()
                    .enumerate()
                    .filter(|&(_, m)| m != 0)
                    .collect()
            })
            .clone();
        if support.is_empty() {
            return Ok(0);
        }
        supports.push(support);
    }
    let mut total: u128 = 0;
    for &(m1, r1) in &supports[0] {
        for &(m2, r2) in &supports[1] {
            let r12 = u128::from(r1) * u128::from(r2);
            for &(m3, r3) in &supports[2] {
                let r123 = r12 * u128::from(r3);
                for &(m4, r4) in &supports[3] {
                    let deg = degree_indices(ring, [m1, m2, m3, m4])?;
                    if deg != 0 {
                        total += u128::from(deg) * r123 * u128::from(r4);
                    }
                }
            }
        }
    }
    u64::try_from(total)
        .map_err(|_| Error::InternalConsistency(format!("D·F = {total} overflows u64")))
}

fn check_n(spec: &BundleSpec, f: &FCurve) -> Result<()> {
    if spec.n() != f.n() {
        return Err(Error::Domain(format!(
            "F-curve {f} lives on M_0,{} but the bundle has n = {}",
            f.n(),
            spec.n()
        )));
    }
    Ok(())
}

/// `D_{sl_{r+1}, λ⃗, ℓ} · F`.
pub fn fcurve_intersection(spec: &BundleSpec, f: &FCurve) -> Result<u64> {
    check_n(spec, f)?;
    let ring = ring(&spec.algebra())?;
    let idx = ring.indices_of(spec.weights())?;
    intersection_with_ring(&ring, &idx, f, &mut HashMap::new())
}

/// F-curve intersection numbers of one divisor.
///
/// With `up_to_symmetry` the keys are the class representatives of
/// [`fcurve_classes`]; otherwise every F-curve of `M̄_{0,n}` is listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub n: usize,
    pub up_to_symmetry: bool,
    pub values: BTreeMap<FCurve, u64>,
    /// Coefficients `b_j` of `Σ b_j B_j`, rendered `p/q`, when requested.
    pub symmetric_b: Option<BTreeMap<usize, String>>,
}

impl DivisorClass {
    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&v| v == 0)
    }

    /// Values keyed by size class. Only meaningful for symmetric vectors.
    pub fn by_class(&self) -> BTreeMap<String, u64> {
        self.values
            .iter()
            .map(|(f, &v)| (f.class_key(), v))
            .collect()
    }

    pub fn get(&self, f: &FCurve) -> Option<u64> {
        self.values.get(f).copied()
    }

    /// Entrywise `factor · self`.
    pub fn scaled(&self, factor: u64) -> DivisorClass {
        DivisorClass {
            values: self
                .values
                .iter()
                .map(|(f, &v)| (f.clone(), v * factor))
                .collect(),
            symmetric_b: None,
            ..self.clone()
        }
    }
}

/// Intersections of `D` with a list of F-curves, in parallel.
pub fn intersections(spec: &BundleSpec, curves: &[FCurve]) -> Result<Vec<u64>> {
    let ring = ring(&spec.algebra())?;
    let idx = ring.indices_of(spec.weights())?;
    for f in curves {
        check_n(spec, f)?;
    }
    curves
        .par_iter()
        .map_init(HashMap::new, |legs, f| {
            intersection_with_ring(&ring, &idx, f, legs)
        })
        .collect()
}

/// The full intersection vector. Symmetry reduction is only applied when the
/// weights are all equal; otherwise `up_to_symmetry` is ignored.
pub fn intersection_vector(spec: &BundleSpec, up_to_symmetry: bool) -> Result<DivisorClass> {
    let n = spec.n();
    if n < 4 {
        return Err(Error::Domain(format!("F-curves need n >= 4, got {n}")));
    }
    let reduced = up_to_symmetry && spec.is_symmetric();
    let curves = if reduced {
        fcurve_classes(n)
    } else {
        all_fcurves(n)
    };
    let values = intersections(spec, &curves)?;
    Ok(DivisorClass {
        n,
        up_to_symmetry: reduced,
        values: curves.into_iter().zip(values).collect(),
        symmetric_b: None,
    })
}

/// True iff `D` meets every F-curve trivially. See
/// [`ASSUMES_FCURVES_SPAN_CURVES`].
pub fn is_zero(spec: &BundleSpec) -> Result<bool> {
    let n = spec.n();
    if n < 4 {
        return Err(Error::Domain(format!("F-curves need n >= 4, got {n}")));
    }
    let curves = if spec.is_symmetric() {
        fcurve_classes(n)
    } else {
        all_fcurves(n)
    };
    let ring = ring(&spec.algebra())?;
    let idx = ring.indices_of(spec.weights())?;
    let mut legs = HashMap::new();
    for f in &curves {
        if intersection_with_ring(&ring, &idx, f, &mut legs)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `δ_I · F` for a subset `I` of 1-based points.
pub fn boundary_pairing(subset: &[usize], f: &FCurve) -> Result<i64> {
    let n = f.n();
    let mut inside = vec![false; n + 1];
    for &p in subset {
        if p == 0 || p > n || inside[p] {
            return Err(Error::Domain(format!(
                "point {p} is repeated or outside 1..={n}"
            )));
        }
        inside[p] = true;
    }
    let k = subset.len();
    if k < 2 || k + 2 > n {
        return Err(Error::Domain(format!(
            "boundary divisor needs 2 <= |I| <= n-2, got |I| = {k}"
        )));
    }
    // per block: 1 if fully inside I, 0 if fully outside, otherwise I cuts it
    let mut full = 0;
    for block in f.blocks() {
        let c = block.iter().filter(|&&p| inside[p]).count();
        if c == block.len() {
            full += 1;
        } else if c != 0 {
            return Ok(0);
        }
    }
    Ok(match full {
        2 => 1,
        1 | 3 => -1,
        _ => 0,
    })
}

/// `B_j · F` where `B_j` sums `δ_I` over all `j`-subsets `I` of `{1..n}`.
pub fn bj_pairing(j: usize, f: &FCurve) -> i64 {
    let sizes = f.blocks().each_ref().map(Vec::len);
    // only subsets made of whole blocks contribute
    let mut total = 0;
    for mask in 1u8..15 {
        let size: usize = (0..4)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| sizes[i])
            .sum();
        if size != j {
            continue;
        }
        total += match mask.count_ones() {
            2 => 1,
            _ => -1,
        };
    }
    total
}

/// Number of `j`-subsets, for sanity checks on `B_j`.
pub fn bj_terms(n: usize, j: usize) -> u64 {
    binomial(n as u64, j as u64)
}

/// Solve `D = Σ_{j=2}^{⌊n/2⌋} b_j B_j` exactly from the F-curve numbers.
///
/// Weights must be symmetric. `B_j` is the sum over all `j`-subsets, so for
/// even `n` the middle stratum is counted twice.
pub fn symmetric_class<Q: ExactScalar>(spec: &BundleSpec) -> Result<BTreeMap<usize, Q>> {
    if !spec.is_symmetric() {
        return Err(Error::Precondition(format!("{spec} is not S_n-symmetric")));
    }
    let dc = intersection_vector(spec, true)?;
    solve_symmetric(&dc)
}

/// The exact solve behind [`symmetric_class`], for a symmetric vector.
pub fn solve_symmetric<Q: ExactScalar>(dc: &DivisorClass) -> Result<BTreeMap<usize, Q>> {
    let n = dc.n;
    let js: Vec<usize> = (2..=n / 2).collect();
    let m = js.len();
    let mut rows: Vec<Vec<Q>> = dc
        .values
        .iter()
        .map(|(f, &v)| {
            let mut row: Vec<Q> = js.iter().map(|&j| Q::from_int(bj_pairing(j, f))).collect();
            row.push(Q::from_int(v as i64));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..m {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return Err(Error::InternalConsistency(format!(
                "B_{} is not determined by the F-curve numbers",
                js[col]
            )));
        };
        rows.swap(pivot_row, p);
        let pv = rows[pivot_row][col].clone();
        for x in rows[pivot_row].iter_mut() {
            *x = x.clone() / pv.clone();
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..=m {
                    let sub = factor.clone() * rows[pivot_row][c].clone();
                    rows[r][c] = rows[r][c].clone() - sub;
                }
            }
        }
        pivot_row += 1;
    }
    if let Some(r) = rows[m..].iter().find(|r| !r[m].is_zero()) {
        return Err(Error::NotRepresentable(format!(
            "residual {} after solving for b_j",
            r[m]
        )));
    }
    Ok(js
        .iter()
        .enumerate()
        .map(|(i, &j)| (j, rows[i][m].clone()))
        .collect())
}

/// Compare `D(sl_{r+1}, λ⃗, ℓ)` with its level-rank partner
/// `D(sl_{ℓ+1}, λ⃗ᵀ, r)` on every F-curve. Only defined at the critical level.
pub fn critical_partner_equal(spec: &BundleSpec) -> Result<bool> {
    let crit = crate::criteria::critical_level(spec.rank_plus_one(), spec.weights());
    if crit != Some(i64::from(spec.level())) {
        return Err(Error::Precondition(format!(
            "level {} is not the critical level ({}) of {spec}",
            spec.level(),
            crit.map_or("undefined".to_string(), |c| c.to_string())
        )));
    }
    let partner = spec.transposed()?;
    let a = intersection_vector(spec, true)?;
    let b = intersection_vector(&partner, true)?;
    Ok(a.values == b.values)
}
