//! Fusion rings of `sl_{r+1}` at level `ℓ` and ranks of conformal blocks
//! bundles on a pointed line.
//!
//! The default backend is Kac–Walton: take the classical LR product, shift by
//! `ρ`, fold into the fundamental alcove of the affine Weyl group at level
//! `ℓ + r + 1` and keep track of signs. Two independent backends live in
//! [`verlinde`] and [`quantum`].

mod cache;
pub mod quantum;
pub mod verlinde;

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Arc, LazyLock};

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::lr_product_rows;
use crate::weights::{enumerate_alcove, LeveledAlgebra, Weight};

pub use quantum::rank_quantum;
pub use verlinde::{rank_verlinde, rank_verlinde_with};

/// Environment variable naming a directory for the on-disk 3-point table memo.
pub const CACHE_DIR_ENV: &str = "CBDIV_CACHE_DIR";

/// `V_{sl_{r+1}, λ⃗, ℓ}`: an algebra, a level and a tuple of admissible weights.
///
/// Weights are normalized on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleSpec {
    algebra: LeveledAlgebra,
    weights: Vec<Weight>,
}

impl BundleSpec {
    pub fn new(algebra: LeveledAlgebra, weights: Vec<Weight>) -> Result<Self> {
        let weights = weights
            .into_iter()
            .map(|w| {
                w.check_admissible(&algebra)?;
                Ok(w.normalize())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BundleSpec { algebra, weights })
    }

    /// Convenience constructor from the text syntax of [`crate::syntax`].
    pub fn parse(algebra: &str, level: u32, weights: &str) -> Result<Self> {
        let n = crate::syntax::parse_algebra(algebra)?;
        let alg = LeveledAlgebra::new(n, level)?;
        BundleSpec::new(alg, crate::syntax::parse_tuple(weights, n)?)
    }

    pub fn algebra(&self) -> LeveledAlgebra {
        self.algebra
    }

    pub fn level(&self) -> u32 {
        self.algebra.level()
    }

    pub fn rank_plus_one(&self) -> usize {
        self.algebra.rank_plus_one()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn total_size(&self) -> u64 {
        self.weights.iter().map(Weight::size).sum()
    }

    /// True when all weights coincide, so `S_n` acts on the bundle.
    pub fn is_symmetric(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }

    pub fn dual(&self) -> BundleSpec {
        BundleSpec {
            algebra: self.algebra,
            weights: self.weights.iter().map(Weight::dual).collect(),
        }
    }

    pub fn with_weights(&self, weights: Vec<Weight>) -> Result<BundleSpec> {
        BundleSpec::new(self.algebra, weights)
    }

    pub fn with_zero_appended(&self) -> BundleSpec {
        let mut weights = self.weights.clone();
        weights.push(Weight::zero(self.rank_plus_one()));
        BundleSpec {
            algebra: self.algebra,
            weights,
        }
    }

    /// `(Nλ⃗, Nℓ)`.
    pub fn scaled(&self, factor: u32) -> Result<BundleSpec> {
        let alg = self.algebra.with_level(self.level() * factor)?;
        BundleSpec::new(alg, self.weights.iter().map(|w| w.scale(factor)).collect())
    }

    /// `(sl_{ℓ+1}, λ⃗ᵀ, r)`.
    pub fn transposed(&self) -> Result<BundleSpec> {
        let t = self.algebra.transposed()?;
        let weights = self
            .weights
            .iter()
            .map(|w| w.transpose(&self.algebra))
            .collect::<Result<Vec<_>>>()?;
        BundleSpec::new(t, weights)
    }

    /// The sub-tuple at the given 0-based positions.
    pub fn restrict(&self, positions: &[usize]) -> BundleSpec {
        BundleSpec {
            algebra: self.algebra,
            weights: positions.iter().map(|&i| self.weights[i].clone()).collect(),
        }
    }
}

impl std::fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}, (", self.algebra)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

/// Reflect a gl diagram into the level `ℓ` alcove of `sl_{r+1}`.
///
/// Returns `None` when `ν + ρ` lies on an affine wall, otherwise the
/// normalized image and the sign of the affine Weyl group element.
pub fn kac_walton_fold(rows: &[u32], alg: &LeveledAlgebra) -> Option<(Weight, i64)> {
    let n = rows.len();
    let k = i64::from(alg.shifted_level());
    let x: Vec<i64> = rows
        .iter()
        .enumerate()
        .map(|(i, &v)| i64::from(v) + (n - 1 - i) as i64)
        .collect();
    let residues: Vec<i64> = x.iter().map(|v| v.rem_euclid(k)).collect();
    let quotient: i64 = x.iter().map(|v| v.div_euclid(k)).sum();
    let mut by_residue: Vec<usize> = (0..n).collect();
    by_residue.sort_by_key(|&i| residues[i]);
    if by_residue
        .windows(2)
        .any(|w| residues[w[0]] == residues[w[1]])
    {
        return None;
    }
    // the m smallest residues are lifted by k so that the spread stays below k
    let m = quotient.rem_euclid(n as i64) as usize;
    let lifted = |i: usize| residues[i] + if by_residue[..m].contains(&i) { k } else { 0 };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(lifted(i)));
    let mut inversions = 0;
    for a in 0..n {
        for b in a + 1..n {
            if order[a] > order[b] {
                inversions += 1;
            }
        }
    }
    let y: Vec<i64> = order.iter().map(|&i| lifted(i)).collect();
    let base = y[n - 1];
    let result: Vec<u32> = y
        .iter()
        .enumerate()
        .map(|(i, &v)| (v - base - (n - 1 - i) as i64) as u32)
        .collect();
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((Weight::from_rows_unchecked(result), sign))
}

/// `V_λ ⊠ V_μ` in the level `ℓ` fusion ring, computed directly.
pub fn kac_walton_product(
    alg: &LeveledAlgebra,
    lambda: &Weight,
    mu: &Weight,
) -> Result<Vec<(Weight, u64)>> {
    lambda.check_admissible(alg)?;
    mu.check_admissible(alg)?;
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    let (l, m) = (lambda.normalize(), mu.normalize());
    for (nu, c) in lr_product_rows(l.rows(), m.rows(), alg.rank_plus_one()) {
        if let Some((w, sign)) = kac_walton_fold(&nu, alg) {
            *acc.entry(w).or_default() += sign * c as i64;
        }
    }
    let mut out = Vec::new();
    for (w, c) in acc {
        if c < 0 {
            return Err(Error::InternalConsistency(format!(
                "negative fusion multiplicity {c} for {w} in {l} x {m} at {alg}"
            )));
        }
        if c > 0 {
            out.push((w, c as u64));
        }
    }
    Ok(out)
}

/// Dense fusion table over the alcove of one leveled algebra.
pub struct FusionRing {
    algebra: LeveledAlgebra,
    alcove: Vec<Weight>,
    index: HashMap<Weight, usize>,
    dual: Vec<usize>,
    casimir: Vec<i64>,
    /// `table[(a*d + b)*d + c]` is the multiplicity of `c` in `a ⊠ b`.
    table: Vec<u64>,
    rank_memo: DashMap<Vec<u16>, u64>,
}

impl std::fmt::Debug for FusionRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FusionRing")
            .field("algebra", &self.algebra)
            .field("dim", &self.alcove.len())
            .finish()
    }
}

impl FusionRing {
    fn skeleton(algebra: LeveledAlgebra) -> Self {
        let alcove = enumerate_alcove(&algebra);
        let index: HashMap<Weight, usize> = alcove
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let dual = alcove.iter().map(|w| index[&w.dual()]).collect();
        let casimir = alcove.iter().map(Weight::casimir_scaled).collect();
        FusionRing {
            algebra,
            alcove,
            index,
            dual,
            casimir,
            table: Vec::new(),
            rank_memo: DashMap::new(),
        }
    }

    /// Build the full table with Kac–Walton.
    pub fn build(algebra: LeveledAlgebra) -> Result<Self> {
        let mut ring = FusionRing::skeleton(algebra);
        let d = ring.alcove.len();
        let rows: Vec<Vec<u64>> = (0..d)
            .into_par_iter()
            .map(|a| {
                let mut row = vec![0u64; d * d];
                for b in 0..d {
                    for (w, c) in kac_walton_product(&algebra, &ring.alcove[a], &ring.alcove[b])? {
                        row[b * d + ring.index[&w]] = c;
                    }
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        ring.table = rows.concat();
        Ok(ring)
    }

    fn from_threepoint(algebra: LeveledAlgebra, threepoint: &[u64]) -> Option<Self> {
        let mut ring = FusionRing::skeleton(algebra);
        let d = ring.alcove.len();
        if threepoint.len() != d * d * d {
            return None;
        }
        let mut table = vec![0u64; d * d * d];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    table[(a * d + b) * d + c] = threepoint[(a * d + b) * d + ring.dual[c]];
                }
            }
        }
        ring.table = table;
        Some(ring)
    }

    fn threepoint_dense(&self) -> Vec<u64> {
        let d = self.dim();
        let mut out = vec![0u64; d * d * d];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    out[(a * d + b) * d + c] = self.threepoint(a, b, c);
                }
            }
        }
        out
    }

    pub fn algebra(&self) -> LeveledAlgebra {
        self.algebra
    }

    /// The alcove, sorted; indices into this list are used throughout.
    pub fn alcove(&self) -> &[Weight] {
        &self.alcove
    }

    pub fn dim(&self) -> usize {
        self.alcove.len()
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.alcove[i]
    }

    pub fn index_of(&self, w: &Weight) -> Result<usize> {
        self.algebra.check_len(w)?;
        self.index
            .get(&w.normalize())
            .copied()
            .ok_or_else(|| Error::Admissibility {
                weight: w.to_string(),
                level: self.algebra.level(),
                rank_plus_one: self.algebra.rank_plus_one(),
            })
    }

    pub fn indices_of(&self, ws: &[Weight]) -> Result<Vec<usize>> {
        ws.iter().map(|w| self.index_of(w)).collect()
    }

    pub fn dual_index(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// `(r+1)·c(λ)` for the alcove element `i`.
    pub fn casimir_scaled(&self, i: usize) -> i64 {
        self.casimir[i]
    }

    /// Multiplicities of every alcove weight in `a ⊠ b`.
    pub fn fusion(&self, a: usize, b: usize) -> &[u64] {
        let d = self.dim();
        &self.table[(a * d + b) * d..(a * d + b + 1) * d]
    }

    /// `N_{ab}^c`.
    pub fn multiplicity(&self, a: usize, b: usize, c: usize) -> u64 {
        let d = self.dim();
        self.table[(a * d + b) * d + c]
    }

    /// Rank of the three-point bundle `V(λ_a, λ_b, λ_c)`.
    pub fn threepoint(&self, a: usize, b: usize, c: usize) -> u64 {
        self.multiplicity(a, b, self.dual[c])
    }

    /// Decomposition of `λ_{i_1} ⊠ … ⊠ λ_{i_m}` over the alcove. The empty
    /// product is the unit.
    ///
    /// Entry `μ` equals the rank of `V(λ_{i_1}, …, λ_{i_m}, μ*)`.
    pub fn distribution(&self, indices: &[usize]) -> Vec<u64> {
        let d = self.dim();
        let mut dist = vec![0u64; d];
        dist[0] = 1;
        for &b in indices {
            let mut next = vec![0u64; d];
            for (a, &m) in dist.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                for (slot, &c) in next.iter_mut().zip(self.fusion(a, b)) {
                    *slot += m * c;
                }
            }
            dist = next;
        }
        dist
    }

    /// Rank of `V(λ_{i_1}, …, λ_{i_n})`.
    pub fn rank_indices(&self, indices: &[usize]) -> u64 {
        let mut key: Vec<u16> = indices.iter().map(|&i| i as u16).collect();
        key.sort_unstable();
        if let Some(v) = self.rank_memo.get(&key) {
            return *v;
        }
        let v = match indices.split_last() {
            None => 1,
            Some((&last, init)) => self.distribution(init)[self.dual[last]],
        };
        self.rank_memo.insert(key, v);
        v
    }
}

static REGISTRY: LazyLock<DashMap<LeveledAlgebra, Arc<FusionRing>>> = LazyLock::new(DashMap::new);

fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// The shared fusion ring of `alg`, built on first use.
///
/// If `CBDIV_CACHE_DIR` is set the 3-point table is read from / written to
/// that directory.
pub fn ring(alg: &LeveledAlgebra) -> Result<Arc<FusionRing>> {
    if let Some(r) = REGISTRY.get(alg) {
        return Ok(r.clone());
    }
    let built = Arc::new(load_or_build(*alg, cache_dir_from_env().as_deref())?);
    Ok(REGISTRY.entry(*alg).or_insert(built).clone())
}

/// Build a ring, consulting (and filling) an explicit cache directory.
pub fn load_or_build(alg: LeveledAlgebra, cache_dir: Option<&Path>) -> Result<FusionRing> {
    if let Some(dir) = cache_dir {
        if let Some(values) = cache::load(dir, &alg) {
            if let Some(ring) = FusionRing::from_threepoint(alg, &values) {
                return Ok(ring);
            }
        }
        let ring = FusionRing::build(alg)?;
        cache::store(dir, &alg, &ring.threepoint_dense())?;
        return Ok(ring);
    }
    FusionRing::build(alg)
}

/// Rank of `V_{sl_{r+1}, λ⃗, ℓ}` by iterated Kac–Walton fusion.
pub fn fusion_rank(spec: &BundleSpec) -> Result<u64> {
    let ring = ring(&spec.algebra())?;
    let idx = ring.indices_of(spec.weights())?;
    Ok(ring.rank_indices(&idx))
}

/// Every 3-point rank at this level, keyed by alcove weights.
pub fn threepoint_table(alg: &LeveledAlgebra) -> Result<BTreeMap<(Weight, Weight, Weight), u64>> {
    let ring = ring(alg)?;
    let d = ring.dim();
    let mut out = BTreeMap::new();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                out.insert(
                    (
                        ring.weight(a).clone(),
                        ring.weight(b).clone(),
                        ring.weight(c).clone(),
                    ),
                    ring.threepoint(a, b, c),
                );
            }
        }
    }
    Ok(out)
}

/// Check `rk(λ⃗) = Σ_μ rk(λ_N, μ)·rk(λ_{Nᶜ}, μ*)` for a split given by 0-based
/// positions `part`.
pub fn factorization_check(spec: &BundleSpec, part: &[usize]) -> Result<bool> {
    let n = spec.n();
    let mut inside = vec![false; n];
    for &p in part {
        if p >= n || inside[p] {
            return Err(Error::Domain(format!("bad split position {p} for n = {n}")));
        }
        inside[p] = true;
    }
    if part.len() < 2 || part.len() + 2 > n {
        return Err(Error::Domain(format!(
            "split must have 2 <= |N| <= n-2, got |N| = {} with n = {n}",
            part.len()
        )));
    }
    let ring = ring(&spec.algebra())?;
    let idx = ring.indices_of(spec.weights())?;
    let left: Vec<usize> = (0..n).filter(|&i| inside[i]).map(|i| idx[i]).collect();
    let right: Vec<usize> = (0..n).filter(|&i| !inside[i]).map(|i| idx[i]).collect();
    // rk(λ_N, μ) = dist_N[μ*] and rk(λ_{Nᶜ}, μ*) = dist_{Nᶜ}[μ]
    let dl = ring.distribution(&left);
    let dr = ring.distribution(&right);
    let sum: u64 = (0..ring.dim())
        .map(|mu| dl[ring.dual_index(mu)] * dr[mu])
        .sum();
    Ok(sum == ring.rank_indices(&idx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize, l: u32) -> LeveledAlgebra {
        LeveledAlgebra::new(n, l).unwrap()
    }

    fn w(rows: &[u32]) -> Weight {
        Weight::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn sl2_fusion_by_hand() {
        // level 1: ω1 ⊠ ω1 = 0
        let p = kac_walton_product(&alg(2, 1), &w(&[1, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(p, vec![(w(&[0, 0]), 1)]);
        // level 2: (2) ⊠ (2) = 0 and ω1 ⊠ (2) = ω1
        let p = kac_walton_product(&alg(2, 2), &w(&[2, 0]), &w(&[2, 0])).unwrap();
        assert_eq!(p, vec![(w(&[0, 0]), 1)]);
        let p = kac_walton_product(&alg(2, 2), &w(&[1, 0]), &w(&[2, 0])).unwrap();
        assert_eq!(p, vec![(w(&[1, 0]), 1)]);
    }

    #[test]
    fn fold_fixes_alcove_points() {
        let a = alg(4, 3);
        for lam in enumerate_alcove(&a) {
            assert_eq!(kac_walton_fold(lam.rows(), &a), Some((lam.clone(), 1)));
        }
        // sl2 level 1: (2,0) + ρ = (3,0), k = 3, walls
        assert_eq!(kac_walton_fold(&[2, 0], &alg(2, 1)), None);
        // sl2 level 1: (3,0) reflects to (1,0) with sign -1
        assert_eq!(kac_walton_fold(&[3, 0], &alg(2, 1)), Some((w(&[1, 0]), -1)));
    }

    #[test]
    fn sl2_threepoint_rule() {
        for l in 1..=4u32 {
            let a = alg(2, l);
            let table = threepoint_table(&a).unwrap();
            for ((x, y, z), v) in table {
                let (p, q, r) = (x.rows()[0], y.rows()[0], z.rows()[0]);
                let expected = (p + q + r) % 2 == 0
                    && p <= q + r
                    && q <= p + r
                    && r <= p + q
                    && p + q + r <= 2 * l;
                assert_eq!(v, u64::from(expected), "({p},{q},{r}) at level {l}");
            }
        }
    }

    #[test]
    fn ranks_from_the_examples() {
        let s = BundleSpec::parse("sl4", 3, "w1;2w1+w3^3").unwrap();
        assert_eq!(fusion_rank(&s).unwrap(), 1);
        let s = BundleSpec::parse("sl4", 2, "[1,1,0,0]^6").unwrap();
        assert_eq!(fusion_rank(&s).unwrap(), 11);
        // sl2 at level r with 2(r+1) copies of ω1: level 2 is the Ising
        // rule σσ = 1 + ψ, giving (1+ψ)³ = 4 + 4ψ; level 3 is 13.
        for (r, expected) in [(1usize, 1u64), (2, 4), (3, 13)] {
            let s = BundleSpec::new(alg(2, r as u32), vec![w(&[1, 0]); 2 * (r + 1)]).unwrap();
            assert_eq!(fusion_rank(&s).unwrap(), expected);
        }
        let s = BundleSpec::new(alg(5, 2), vec![Weight::zero(5); 4]).unwrap();
        assert_eq!(fusion_rank(&s).unwrap(), 1);
    }

    #[test]
    fn factorization_examples() {
        let s = BundleSpec::parse("sl4", 2, "[1,1,0,0]^6").unwrap();
        assert!(factorization_check(&s, &[0, 1, 2]).unwrap());
        let z = BundleSpec::new(alg(3, 2), vec![Weight::zero(3); 5]).unwrap();
        assert!(factorization_check(&z, &[1, 3]).unwrap());
        assert!(factorization_check(&z, &[1]).is_err());
    }

    #[test]
    fn rejects_inadmissible() {
        let e = BundleSpec::parse("sl4", 2, "[9,0,0,0]").unwrap_err();
        assert!(matches!(e, Error::Admissibility { .. }));
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let a = alg(3, 2);
        let built = load_or_build(a, Some(dir.path())).unwrap();
        let loaded = load_or_build(a, Some(dir.path())).unwrap();
        assert_eq!(built.table, loaded.table);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
