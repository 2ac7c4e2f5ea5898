//! Ranks from the small quantum cohomology of `Gr(r+1, r+1+ℓ)`.
//!
//! Schubert classes are indexed by partitions in the `(r+1) × ℓ` box. A
//! product is the classical LR product followed by rim hook reduction: a
//! diagram sticking out of the box loses `N`-rim hooks (`N = r+1+ℓ`), each
//! removal costing one power of `q` and the sign `(-1)^{k - height}`.
//!
//! The rank of `V(λ_1, …, λ_n)` is the coefficient of the point class in
//! `σ_{λ_1} ⋆ … ⋆ σ_{λ_n} ⋆ σ_{1^k}^j`, where the extra factors are copies
//! of the zero `sl` weight written as a full column. `j` is chosen so the
//! total degree is `kℓ + dN` with `k | d`; for other `d` the point class
//! would pick up a simple current image of the vacuum instead.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock};

use dashmap::DashMap;

use super::BundleSpec;
use crate::error::{Error, Result};
use crate::tensor::lr_product_rows;
use crate::weights::LeveledAlgebra;

/// Structure constants of `QH*(Gr(k, N))` at `q = 1`.
#[derive(Debug)]
pub struct QuantumRing {
    k: usize,
    width: u32,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    products: Vec<Vec<(usize, i64)>>,
}

/// Rim hook reduction of a diagram with at most `k` rows into the `k × width`
/// box. Returns the reduced diagram, the sign, and the power of `q`.
pub fn rim_hook_reduce(rows: &[u32], k: usize, width: u32) -> Option<(Vec<u32>, i64, u32)> {
    let big_n = k as i64 + i64::from(width);
    let mut beta: Vec<i64> = (0..k)
        .map(|a| i64::from(rows.get(a).copied().unwrap_or(0)) + (k - 1 - a) as i64)
        .collect();
    let mut sign = 1i64;
    let mut degree = 0u32;
    loop {
        let (pos, &top) = beta.iter().enumerate().max_by_key(|(_, &b)| b)?;
        if top < big_n {
            break;
        }
        let target = top - big_n;
        if beta.contains(&target) {
            return None;
        }
        let between = beta.iter().filter(|&&b| b > target && b < top).count();
        if (between + k - 1) % 2 == 1 {
            sign = -sign;
        }
        beta[pos] = target;
        degree += 1;
    }
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let out = beta
        .iter()
        .enumerate()
        .map(|(a, &b)| (b - (k - 1 - a) as i64) as u32)
        .collect();
    Some((out, sign, degree))
}

fn box_partitions(k: usize, width: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, k: usize, bound: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for x in 0..=bound {
            prefix.push(x);
            rec(prefix, k, x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), k, width, &mut out);
    out.sort();
    out
}

impl QuantumRing {
    /// `QH*(Gr(r+1, r+1+ℓ))` for the algebra `sl_{r+1}` at level `ℓ`.
    pub fn new(alg: &LeveledAlgebra) -> Result<Self> {
        let k = alg.rank_plus_one();
        let width = alg.level();
        let basis = box_partitions(k, width);
        let index: HashMap<Vec<u32>, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let d = basis.len();
        let mut products = Vec::with_capacity(d * d);
        for a in &basis {
            for b in &basis {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for (nu, c) in lr_product_rows(a, b, k) {
                    if let Some((red, sign, _)) = rim_hook_reduce(&nu, k, width) {
                        *acc.entry(index[&red]).or_default() += sign * c as i64;
                    }
                }
                let mut terms: Vec<(usize, i64)> =
                    acc.into_iter().filter(|&(_, c)| c != 0).collect();
                terms.sort_unstable();
                products.push(terms);
            }
        }
        Ok(QuantumRing {
            k,
            width,
            basis,
            index,
            products,
        })
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    fn lookup(&self, p: &[u32]) -> Result<usize> {
        self.index
            .get(p)
            .copied()
            .ok_or_else(|| Error::BoxOverflow {
                weight: format!("{p:?}"),
                rows: self.k,
                cols: self.width,
            })
    }

    /// `σ_{p_1} ⋆ … ⋆ σ_{p_m}` at `q = 1`, as coefficients over the basis.
    pub fn product(&self, factors: &[Vec<u32>]) -> Result<Vec<i64>> {
        let d = self.basis.len();
        let mut acc = vec![0i64; d];
        acc[0] = 1;
        for f in factors {
            let b = self.lookup(f)?;
            let mut next = vec![0i64; d];
            for (a, &v) in acc.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                for &(c, coeff) in &self.products[a * d + b] {
                    next[c] += v * coeff;
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    pub fn coefficient(&self, element: &[i64], p: &[u32]) -> Result<i64> {
        Ok(element[self.lookup(p)?])
    }

    fn point_class(&self) -> Vec<u32> {
        vec![self.width; self.k]
    }
}

static RINGS: LazyLock<DashMap<LeveledAlgebra, Arc<QuantumRing>>> = LazyLock::new(DashMap::new);

pub fn quantum_ring(alg: &LeveledAlgebra) -> Result<Arc<QuantumRing>> {
    if let Some(r) = RINGS.get(alg) {
        return Ok(r.clone());
    }
    let built = Arc::new(QuantumRing::new(alg)?);
    Ok(RINGS.entry(*alg).or_insert(built).clone())
}

/// Rank of `V_{sl_{r+1}, λ⃗, ℓ}` as a Gromov–Witten coefficient.
pub fn rank_quantum(spec: &BundleSpec) -> Result<u64> {
    let alg = spec.algebra();
    let ring = quantum_ring(&alg)?;
    let k = alg.rank_plus_one() as u64;
    let l = u64::from(alg.level());
    let big_n = k + l;
    let total = spec.total_size();
    if !total.is_multiple_of(k) {
        return Ok(0);
    }
    // The U(k) charge of the product must match the point class exactly:
    // s + j ≡ ℓ (mod N), which keeps the q-degree a multiple of k.
    let s = total / k;
    let j = (l as i64 - s as i64).rem_euclid(big_n as i64) as u64;
    let mut factors: Vec<Vec<u32>> = spec.weights().iter().map(|w| w.rows().to_vec()).collect();
    factors.extend(std::iter::repeat_n(vec![1; k as usize], j as usize));
    let element = ring.product(&factors)?;
    let c = ring.coefficient(&element, &ring.point_class())?;
    u64::try_from(c).map_err(|_| {
        Error::InternalConsistency(format!("negative Gromov-Witten coefficient {c} for {spec}"))
    })
}
