//! Classical invariant theory for `gl`/`sl`: Littlewood–Richardson
//! coefficients, tensor product decompositions, coinvariants and Weyl
//! dimensions.
//!
//! Everything here works with plain Young diagrams (gl weights); the sl
//! identification only happens in [`coinvariant_dim`], which normalizes
//! intermediate diagrams.

use std::collections::HashMap;
use std::sync::LazyLock;

use dashmap::DashMap;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::weights::Weight;

type LrKey = (Vec<u32>, Vec<u32>, Vec<u32>);

static LR_MEMO: LazyLock<DashMap<LrKey, u64>> = LazyLock::new(DashMap::new);

fn trimmed(p: &[u32]) -> Vec<u32> {
    let end = p.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
    p[..end].to_vec()
}

fn contains(outer: &[u32], inner: &[u32]) -> bool {
    inner
        .iter()
        .enumerate()
        .all(|(i, &x)| x <= outer.get(i).copied().unwrap_or(0))
}

/// Number of LR tableaux of shape `outer/inner` and content `content`.
fn count_lr_tableaux(outer: &[u32], inner: &[u32], content: &[u32]) -> u64 {
    let rows = outer.len();
    let inner_at = |i: usize| inner.get(i).copied().unwrap_or(0);
    let mut cells = Vec::new();
    for i in 0..rows {
        for c in (inner_at(i)..outer[i]).rev() {
            cells.push((i, c as usize));
        }
    }
    let width = outer.first().copied().unwrap_or(0) as usize;
    let mut table = vec![vec![0u8; width]; rows];
    let mut counts = vec![0u32; content.len() + 1];

    struct Ctx<'a> {
        cells: &'a [(usize, usize)],
        outer: &'a [u32],
        inner: &'a [u32],
        content: &'a [u32],
    }

    fn rec(ctx: &Ctx<'_>, k: usize, table: &mut [Vec<u8>], counts: &mut [u32]) -> u64 {
        if k == ctx.cells.len() {
            return 1;
        }
        let (i, c) = ctx.cells[k];
        let mut hi = ctx.content.len().min(i + 1);
        if c + 1 < ctx.outer[i] as usize {
            hi = hi.min(table[i][c + 1] as usize);
        }
        let mut lo = 1;
        if i > 0 && c >= ctx.inner.get(i - 1).copied().unwrap_or(0) as usize {
            lo = table[i - 1][c] as usize + 1;
        }
        let mut total = 0;
        for v in lo..=hi {
            if counts[v] >= ctx.content[v - 1] {
                continue;
            }
            if v > 1 && counts[v] >= counts[v - 1] {
                continue;
            }
            counts[v] += 1;
            table[i][c] = v as u8;
            total += rec(ctx, k + 1, table, counts);
            table[i][c] = 0;
            counts[v] -= 1;
        }
        total
    }

    let ctx = Ctx {
        cells: &cells,
        outer,
        inner,
        content,
    };
    rec(&ctx, 0, &mut table, &mut counts)
}

fn lr_raw(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    let (l, m, n) = (trimmed(lambda), trimmed(mu), trimmed(nu));
    let size = |p: &[u32]| p.iter().map(|&x| u64::from(x)).sum::<u64>();
    if size(&l) + size(&m) != size(&n) || !contains(&n, &l) || !contains(&n, &m) {
        return 0;
    }
    // the skew shape is smaller when the bigger diagram sits inside
    let (big, small) = if (size(&l), &l) >= (size(&m), &m) {
        (l, m)
    } else {
        (m, l)
    };
    let key = (big, small, n);
    if let Some(v) = LR_MEMO.get(&key) {
        return *v;
    }
    let v = count_lr_tableaux(&key.2, &key.0, &key.1);
    LR_MEMO.insert(key, v);
    v
}

/// `c^ν_{λμ}`, the multiplicity of `V_ν` in `V_λ ⊗ V_μ` as gl diagrams.
pub fn lr_coefficient(lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
    if lambda.len() != mu.len() || lambda.len() != nu.len() {
        return Err(Error::Dimension {
            expected: lambda.len(),
            got: if mu.len() != lambda.len() {
                mu.len()
            } else {
                nu.len()
            },
        });
    }
    Ok(lr_raw(lambda.rows(), mu.rows(), nu.rows()))
}

/// Decomposition of `V_λ ⊗ V_μ` restricted to diagrams with at most
/// `max_rows` rows. Results are row vectors of length `max_rows`, sorted.
pub fn lr_product_rows(lambda: &[u32], mu: &[u32], max_rows: usize) -> Vec<(Vec<u32>, u64)> {
    let l = trimmed(lambda);
    let m = trimmed(mu);
    if l.len() > max_rows || m.len() > max_rows {
        return Vec::new();
    }
    let target: u32 = l.iter().sum::<u32>() + m.iter().sum::<u32>();
    let m1 = m.first().copied().unwrap_or(0);
    let at = |i: usize| l.get(i).copied().unwrap_or(0);

    let mut out = Vec::new();
    let mut nu = Vec::with_capacity(max_rows);
    fn rec(
        i: usize,
        remaining: u32,
        nu: &mut Vec<u32>,
        max_rows: usize,
        at: &dyn Fn(usize) -> u32,
        m1: u32,
        l: &[u32],
        m: &[u32],
        out: &mut Vec<(Vec<u32>, u64)>,
    ) {
        if i == max_rows {
            if remaining == 0 {
                let c = lr_raw(l, m, nu);
                if c > 0 {
                    out.push((nu.clone(), c));
                }
            }
            return;
        }
        let lo = at(i);
        let mut hi = lo + m1.min(remaining);
        if i > 0 {
            hi = hi.min(nu[i - 1]);
        }
        for x in lo..=hi {
            let used = x - lo;
            nu.push(x);
            rec(i + 1, remaining - used, nu, max_rows, at, m1, l, m, out);
            nu.pop();
        }
    }
    let extra = target - l.iter().sum::<u32>();
    rec(0, extra, &mut nu, max_rows, &at, m1, &l, &m, &mut out);
    out.sort();
    out
}

/// `V_λ ⊗ V_μ` for `gl_{len}`, as a list of (diagram, multiplicity).
pub fn lr_product(lambda: &Weight, mu: &Weight) -> Result<Vec<(Weight, u64)>> {
    if lambda.len() != mu.len() {
        return Err(Error::Dimension {
            expected: lambda.len(),
            got: mu.len(),
        });
    }
    Ok(lr_product_rows(lambda.rows(), mu.rows(), lambda.len())
        .into_iter()
        .map(|(rows, c)| (Weight::from_rows_unchecked(rows), c))
        .collect())
}

/// `dim (⊗ V_{λ_i})^{sl_{r+1}}`, by folding LR products left to right.
pub fn coinvariant_dim(weights: &[Weight]) -> Result<u64> {
    let Some(first) = weights.first() else {
        return Ok(1);
    };
    let len = first.len();
    if let Some(w) = weights.iter().find(|w| w.len() != len) {
        return Err(Error::Dimension {
            expected: len,
            got: w.len(),
        });
    }
    let total: u64 = weights.iter().map(|w| w.normalize().size()).sum();
    if !total.is_multiple_of(len as u64) {
        return Ok(0);
    }
    let (last, init) = weights.split_last().expect("nonempty");
    let mut dist: HashMap<Vec<u32>, u64> = HashMap::new();
    dist.insert(vec![0; len], 1);
    for w in init {
        let w = w.normalize();
        let mut next: HashMap<Vec<u32>, u64> = HashMap::new();
        for (nu, mult) in &dist {
            for (rho, c) in lr_product_rows(nu, w.rows(), len) {
                let rho = Weight::from_rows_unchecked(rho).normalize().into_rows();
                *next.entry(rho).or_default() += mult * c;
            }
        }
        dist = next;
    }
    let target = last.normalize().dual().into_rows();
    Ok(dist.get(&target).copied().unwrap_or(0))
}

/// `dim V_λ` for `gl_{len}` (equivalently `sl_{len}`), by the hook-content formula.
pub fn weyl_dim(lambda: &Weight) -> u128 {
    let w = lambda.normalize();
    let n = w.len() as i64;
    let rows = w.rows();
    let conj = |j: u32| rows.iter().filter(|&&x| x > j).count() as i64;
    let (mut num, mut den) = (1u128, 1u128);
    for (i, &len) in rows.iter().enumerate() {
        for j in 0..len {
            let content = j as i64 - i as i64;
            let hook = (len - j) as i64 + conj(j) - i as i64 - 1;
            num *= (n + content) as u128;
            den *= hook as u128;
            let g = num.gcd(&den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rows: &[u32]) -> Weight {
        Weight::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn small_lr_coefficients() {
        assert_eq!(
            lr_coefficient(&w(&[1, 0, 0]), &w(&[1, 1, 0]), &w(&[2, 1, 0])).unwrap(),
            1
        );
        assert_eq!(
            lr_coefficient(&w(&[1, 1, 0]), &w(&[1, 1, 0]), &w(&[2, 2, 0])).unwrap(),
            1
        );
        assert_eq!(
            lr_coefficient(&w(&[1, 1, 0]), &w(&[1, 1, 0]), &w(&[2, 1, 1])).unwrap(),
            1
        );
        assert_eq!(
            lr_coefficient(&w(&[2, 1, 0]), &w(&[2, 1, 0]), &w(&[3, 2, 1])).unwrap(),
            2
        );
        assert_eq!(
            lr_coefficient(&w(&[2, 1, 0]), &w(&[0, 0, 0]), &w(&[2, 1, 0])).unwrap(),
            1
        );
        assert_eq!(
            lr_coefficient(&w(&[2, 1, 0]), &w(&[0, 0, 0]), &w(&[3, 0, 0])).unwrap(),
            0
        );
    }

    #[test]
    fn product_respects_row_bound() {
        // ω1 ⊗ ω1 in gl2: (2,0) + (1,1)
        let p = lr_product(&w(&[1, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(p, vec![(w(&[1, 1]), 1), (w(&[2, 0]), 1)]);
        // ω1 ⊗ ω1 ⊗ ... never produces three rows in gl2
        let p = lr_product(&w(&[1, 1]), &w(&[1, 0])).unwrap();
        assert_eq!(p, vec![(w(&[2, 1]), 1)]);
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dim(&w(&[1, 0, 0, 0])), 4);
        assert_eq!(weyl_dim(&Weight::zero(5)), 1);
        assert_eq!(weyl_dim(&w(&[2, 1, 0])), 8);
        assert_eq!(weyl_dim(&w(&[1, 1, 0, 0])), 6);
        assert_eq!(weyl_dim(&w(&[3, 0])), 4);
    }

    #[test]
    fn coinvariant_examples() {
        let om1 = Weight::fundamental(2, 1).unwrap();
        assert_eq!(coinvariant_dim(&vec![om1.clone(); 4]).unwrap(), 2);
        assert_eq!(coinvariant_dim(&vec![om1.clone(); 3]).unwrap(), 0);
        assert_eq!(coinvariant_dim(&[Weight::zero(3)]).unwrap(), 1);
        let l = w(&[3, 1, 1, 0]);
        let t = vec![w(&[1, 0, 0, 0]), l.clone(), l.clone(), l];
        assert_eq!(coinvariant_dim(&t).unwrap(), 2);
    }
}
