//! Type A weight arithmetic on Young diagrams.
//!
//! A dominant integral weight of `sl_{r+1}` is stored as a weakly decreasing
//! row vector of length `r+1`. Two diagrams that differ by a constant in every
//! row are the same `sl_{r+1}` weight; [`Weight::normalize`] picks the
//! representative with last row zero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// A Young diagram with a fixed number of rows (possibly zero rows at the
/// bottom).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Weight {
    rows: Vec<u32>,
}

impl Weight {
    pub fn new(rows: Vec<u32>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(rows));
        }
        Ok(Weight { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u32>) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0] >= w[1]), "{rows:?}");
        Weight { rows }
    }

    pub fn zero(len: usize) -> Self {
        Weight { rows: vec![0; len] }
    }

    /// The fundamental weight `ω_a` of `sl_len`: `a` ones followed by zeros.
    pub fn fundamental(len: usize, a: usize) -> Result<Self> {
        if a > len {
            return Err(Error::Domain(format!("ω_{a} does not exist for sl_{len}")));
        }
        let mut rows = vec![0; len];
        rows[..a].iter_mut().for_each(|x| *x = 1);
        Ok(Weight { rows })
    }

    /// `Σ coeffs[a-1]·ω_a`; `coeffs` has at most `len - 1` entries.
    pub fn from_fundamental_coeffs(len: usize, coeffs: &[u32]) -> Result<Self> {
        if coeffs.len() >= len.max(1) {
            return Err(Error::Dimension {
                expected: len.saturating_sub(1),
                got: coeffs.len(),
            });
        }
        let mut rows = vec![0u32; len];
        for (i, row) in rows.iter_mut().enumerate() {
            *row = coeffs.iter().skip(i).sum();
        }
        Ok(Weight { rows })
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<u32> {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&x| x == 0)
    }

    pub fn first_row(&self) -> u32 {
        self.rows.first().copied().unwrap_or(0)
    }

    pub fn last_row(&self) -> u32 {
        self.rows.last().copied().unwrap_or(0)
    }

    pub fn is_normalized(&self) -> bool {
        self.last_row() == 0
    }

    pub fn normalize(&self) -> Weight {
        let last = self.last_row();
        Weight {
            rows: self.rows.iter().map(|&x| x - last).collect(),
        }
    }

    /// Total number of boxes, `Σ` of all rows.
    pub fn size(&self) -> u64 {
        self.rows.iter().map(|&x| u64::from(x)).sum()
    }

    /// Coefficients `a_i = λ^{(i)} - λ^{(i+1)}` in the fundamental weight basis.
    pub fn fundamental_coeffs(&self) -> Vec<u32> {
        self.rows.windows(2).map(|w| w[0] - w[1]).collect()
    }

    /// `λ(H_θ)`, the pairing with the highest coroot.
    pub fn theta_pairing(&self) -> u32 {
        self.first_row() - self.last_row()
    }

    pub fn is_admissible(&self, alg: &LeveledAlgebra) -> Result<bool> {
        alg.check_len(self)?;
        Ok(self.theta_pairing() <= alg.level())
    }

    pub(crate) fn check_admissible(&self, alg: &LeveledAlgebra) -> Result<()> {
        if self.is_admissible(alg)? {
            Ok(())
        } else {
            Err(Error::Admissibility {
                weight: self.to_string(),
                level: alg.level(),
                rank_plus_one: alg.rank_plus_one(),
            })
        }
    }

    /// Highest weight of the dual representation, normalized.
    pub fn dual(&self) -> Weight {
        let w = self.normalize();
        let top = w.first_row();
        Weight {
            rows: w.rows.iter().rev().map(|&x| top - x).collect(),
        }
    }

    /// Conjugate diagram, as a weight of `sl_{ℓ+1}` (length `ℓ+1`).
    ///
    /// The input must be normalized and fit in an `r × ℓ` box.
    pub fn transpose(&self, alg: &LeveledAlgebra) -> Result<Weight> {
        alg.check_len(self)?;
        let level = alg.level();
        if !self.is_normalized() || self.first_row() > level {
            return Err(Error::BoxOverflow {
                weight: self.to_string(),
                rows: alg.rank(),
                cols: level,
            });
        }
        let rows = (1..=level)
            .map(|j| self.rows.iter().filter(|&&x| x >= j).count() as u32)
            .chain(std::iter::once(0))
            .collect();
        Ok(Weight { rows })
    }

    /// `(r+1)·(λ, λ+2ρ)`, an integer. Invariant under adding full columns.
    pub fn casimir_scaled(&self) -> i64 {
        let n = self.rows.len() as i64;
        let size = self.size() as i64;
        let squares: i64 = self.rows.iter().map(|&x| i64::from(x) * i64::from(x)).sum();
        let rho_term: i64 = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, &x)| i64::from(x) * (n + 1 - 2 * (i as i64 + 1)))
            .sum();
        n * squares - size * size + n * rho_term
    }

    /// Casimir eigenvalue `(λ, λ+2ρ)` with `(θ,θ) = 2`.
    pub fn casimir<Q: ExactScalar>(&self) -> Q {
        Q::from_ratio(self.casimir_scaled(), self.rows.len().max(1) as i64)
    }

    /// Conformal weight `c(λ) / (2(ℓ + r + 1))`.
    pub fn conformal_weight<Q: ExactScalar>(&self, alg: &LeveledAlgebra) -> Result<Q> {
        self.check_admissible(alg)?;
        Ok(Q::from_ratio(
            self.casimir_scaled(),
            alg.conformal_denominator(),
        ))
    }

    /// Row-wise sum (the highest component of `V_λ ⊗ V_μ`).
    pub fn add(&self, other: &Weight) -> Result<Weight> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Weight {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: u32) -> Weight {
        Weight {
            rows: self.rows.iter().map(|&x| x * factor).collect(),
        }
    }

    /// The diagram formed by the rows at `indices` (0-based, increasing).
    pub fn select_rows(&self, indices: &[usize]) -> Weight {
        Weight::from_rows_unchecked(indices.iter().map(|&i| self.rows[i]).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// `sl_{r+1}` together with a positive level `ℓ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct LeveledAlgebra {
    rank_plus_one: usize,
    level: u32,
}

impl LeveledAlgebra {
    pub fn new(rank_plus_one: usize, level: u32) -> Result<Self> {
        if rank_plus_one < 2 {
            return Err(Error::InvalidAlgebra(format!(
                "sl_{rank_plus_one} is not a simple Lie algebra (need r+1 >= 2)"
            )));
        }
        if level < 1 {
            return Err(Error::InvalidAlgebra("level must be >= 1".into()));
        }
        Ok(LeveledAlgebra {
            rank_plus_one,
            level,
        })
    }

    pub fn rank_plus_one(&self) -> usize {
        self.rank_plus_one
    }

    /// `r`.
    pub fn rank(&self) -> usize {
        self.rank_plus_one - 1
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `h∨ = r+1`.
    pub fn dual_coxeter(&self) -> u32 {
        self.rank_plus_one as u32
    }

    /// `ℓ + h∨`, the shifted level governing the affine Weyl group.
    pub fn shifted_level(&self) -> u32 {
        self.level + self.dual_coxeter()
    }

    /// `2(r+1)(ℓ + r + 1)`: every conformal weight times this is an integer.
    pub fn conformal_denominator(&self) -> i64 {
        2 * self.rank_plus_one as i64 * i64::from(self.shifted_level())
    }

    pub fn with_level(&self, level: u32) -> Result<Self> {
        LeveledAlgebra::new(self.rank_plus_one, level)
    }

    /// The level-rank partner `sl_{ℓ+1}` at level `r`.
    pub fn transposed(&self) -> Result<Self> {
        LeveledAlgebra::new(self.level as usize + 1, self.rank() as u32)
    }

    /// `|P_ℓ| = C(r+ℓ, r)`.
    pub fn alcove_size(&self) -> u64 {
        binomial(
            self.rank() as u64 + u64::from(self.level),
            self.rank() as u64,
        )
    }

    pub(crate) fn check_len(&self, w: &Weight) -> Result<()> {
        if w.len() != self.rank_plus_one {
            Err(Error::Dimension {
                expected: self.rank_plus_one,
                got: w.len(),
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for LeveledAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sl{} level {}", self.rank_plus_one, self.level)
    }
}

pub fn normalize(w: &Weight) -> Weight {
    w.normalize()
}

pub fn size(w: &Weight) -> u64 {
    w.size()
}

/// All normalized weights in `P_ℓ(sl_{r+1})`: partitions with at most `r`
/// parts, each at most `ℓ`. Sorted lexicographically by rows, so the zero
/// weight comes first.
pub fn enumerate_alcove(alg: &LeveledAlgebra) -> Vec<Weight> {
    fn rec(
        prefix: &mut Vec<u32>,
        remaining: usize,
        bound: u32,
        total: usize,
        out: &mut Vec<Weight>,
    ) {
        if remaining == 0 {
            let mut rows = prefix.clone();
            rows.resize(total, 0);
            out.push(Weight::from_rows_unchecked(rows));
            return;
        }
        for x in 0..=bound {
            prefix.push(x);
            rec(prefix, remaining - 1, x, total, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(alg.alcove_size() as usize);
    let mut prefix = Vec::new();
    rec(
        &mut prefix,
        alg.rank(),
        alg.level(),
        alg.rank_plus_one(),
        &mut out,
    );
    out.sort();
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn w(rows: &[u32]) -> Weight {
        Weight::new(rows.to_vec()).unwrap()
    }

    fn alg(n: usize, l: u32) -> LeveledAlgebra {
        LeveledAlgebra::new(n, l).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(w(&[2, 1, 1]).normalize(), w(&[1, 0, 0]));
        assert_eq!(w(&[0, 0, 0, 0]).normalize(), w(&[0, 0, 0, 0]));
        assert_eq!(w(&[5, 2]).normalize(), w(&[3, 0]));
    }

    #[test]
    fn rejects_increasing_rows() {
        assert!(matches!(
            Weight::new(vec![0, 1]),
            Err(Error::NotDecreasing(_))
        ));
    }

    #[test]
    fn size_examples() {
        assert_eq!(w(&[2, 1, 0]).size(), 3);
        assert_eq!(Weight::zero(5).size(), 0);
        // 2ω1 + ω3 in sl4
        let lam = Weight::from_fundamental_coeffs(4, &[2, 0, 1]).unwrap();
        assert_eq!(lam, w(&[3, 1, 1, 0]));
        assert_eq!(lam.size(), 5);
    }

    #[test]
    fn admissibility() {
        assert!(w(&[3, 1, 1, 0]).is_admissible(&alg(4, 3)).unwrap());
        assert!(!w(&[2, 0]).is_admissible(&alg(2, 1)).unwrap());
        assert!(Weight::zero(6).is_admissible(&alg(6, 1)).unwrap());
        assert!(matches!(
            w(&[1, 0]).is_admissible(&alg(3, 1)),
            Err(Error::Dimension {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn duality() {
        assert_eq!(w(&[1, 0, 0, 0]).dual(), w(&[1, 1, 1, 0]));
        assert_eq!(w(&[4, 0]).dual(), w(&[4, 0]));
        assert_eq!(w(&[2, 1, 0]).dual(), w(&[2, 1, 0]));
        for lam in enumerate_alcove(&alg(3, 3)) {
            assert_eq!(lam.dual().dual(), lam);
            let r1 = 3;
            assert_eq!((lam.size() + lam.dual().size()) % r1, 0);
        }
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(
            w(&[3, 0, 0]).transpose(&alg(3, 5)).unwrap(),
            w(&[1, 1, 1, 0, 0, 0])
        );
        assert_eq!(
            Weight::zero(3).transpose(&alg(3, 2)).unwrap(),
            Weight::zero(3)
        );
        assert_eq!(w(&[2, 0]).transpose(&alg(2, 2)).unwrap(), w(&[1, 1, 0]));
        assert!(matches!(
            w(&[3, 0]).transpose(&alg(2, 2)),
            Err(Error::BoxOverflow { .. })
        ));
    }

    #[test]
    fn transpose_is_an_involution_on_boxes() {
        for n in 2..=5 {
            for l in 1..=4 {
                let a = alg(n, l);
                let t = a.transposed().unwrap();
                for lam in enumerate_alcove(&a) {
                    let tr = lam.transpose(&a).unwrap();
                    assert!(tr.is_admissible(&t).unwrap());
                    assert_eq!(tr.size(), lam.size());
                    assert_eq!(tr.transpose(&t).unwrap(), lam);
                }
            }
        }
    }

    #[test]
    fn theta_pairing_examples() {
        assert_eq!(Weight::fundamental(6, 3).unwrap().theta_pairing(), 1);
        assert_eq!(Weight::zero(3).theta_pairing(), 0);
        assert_eq!(w(&[3, 0, 0]).theta_pairing(), 3);
    }

    #[test]
    fn casimir_examples() {
        for n in 2..=6usize {
            let r = n as i64 - 1;
            let omega1 = Weight::fundamental(n, 1).unwrap();
            assert_eq!(omega1.casimir::<Q>(), Q::new(r * (r + 2), r + 1));
        }
        assert_eq!(Weight::zero(4).casimir::<Q>(), Q::from_integer(0));
        assert_eq!(w(&[2, 0]).casimir::<Q>(), Q::from_integer(4));
    }

    #[test]
    fn casimir_invariants() {
        for lam in enumerate_alcove(&alg(4, 3)) {
            let c: Q = lam.casimir();
            if lam.is_zero() {
                assert_eq!(c, Q::from_integer(0));
            } else {
                assert!(c > Q::from_integer(0));
            }
            assert_eq!(lam.dual().casimir::<Q>(), c);
            assert_eq!(lam.dual().theta_pairing(), lam.theta_pairing());
            // adding a full column is invisible to sl
            let shifted = Weight::new(lam.rows().iter().map(|x| x + 2).collect()).unwrap();
            assert_eq!(shifted.casimir::<Q>(), c);
        }
    }

    #[test]
    fn conformal_weight_examples() {
        let h: Q = Weight::fundamental(2, 1)
            .unwrap()
            .conformal_weight(&alg(2, 1))
            .unwrap();
        assert_eq!(h, Q::new(1, 4));
        let h: Q = Weight::zero(3).conformal_weight(&alg(3, 1)).unwrap();
        assert_eq!(h, Q::from_integer(0));
        let h: Q = Weight::fundamental(3, 1)
            .unwrap()
            .conformal_weight(&alg(3, 2))
            .unwrap();
        assert_eq!(h, Q::new(4, 15));
        assert!(matches!(
            w(&[2, 0]).conformal_weight::<Q>(&alg(2, 1)),
            Err(Error::Admissibility { .. })
        ));
    }

    #[test]
    fn alcove_counts() {
        assert_eq!(enumerate_alcove(&alg(2, 1)), vec![w(&[0, 0]), w(&[1, 0])]);
        assert_eq!(enumerate_alcove(&alg(3, 5)).len(), 21);
        assert_eq!(enumerate_alcove(&alg(6, 2)).len(), 21);
        for n in 2..=6usize {
            for l in 1..=5u32 {
                let a = alg(n, l);
                let all = enumerate_alcove(&a);
                assert_eq!(
                    all.len() as u64,
                    binomial((n - 1) as u64 + u64::from(l), (n - 1) as u64)
                );
                assert!(all
                    .iter()
                    .all(|x| x.is_normalized() && x.is_admissible(&a).unwrap()));
            }
        }
    }
}
