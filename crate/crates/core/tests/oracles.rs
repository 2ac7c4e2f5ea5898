//! Independent oracles: characters built from semistandard tableaux, the Weyl
//! alternating sum for invariants, and the Casimir in the fundamental basis.

use std::collections::HashMap;

use cbdiv::tensor::{coinvariant_dim, lr_product};
use cbdiv::weights::enumerate_alcove;
use cbdiv::{LeveledAlgebra, Rational64, Weight};

type Poly = HashMap<Vec<u32>, u64>;

/// Schur polynomial in `k` variables by enumerating semistandard tableaux.
fn schur(rows: &[u32], k: usize) -> Poly {
    let cells: Vec<(usize, usize)> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len as usize).map(move |j| (i, j)))
        .collect();
    let mut grid = vec![vec![0usize; rows.first().copied().unwrap_or(0) as usize]; rows.len()];
    let mut out = Poly::new();
    fn fill(
        pos: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        k: usize,
        out: &mut Poly,
    ) {
        if pos == cells.len() {
            let mut exp = vec![0u32; k];
            for &(i, j) in cells {
                exp[grid[i][j]] += 1;
            }
            *out.entry(exp).or_default() += 1;
            return;
        }
        let (i, j) = cells[pos];
        let lo_row = if j > 0 { grid[i][j - 1] } else { 0 };
        let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..k {
            grid[i][j] = v;
            fill(pos + 1, cells, grid, k, out);
        }
    }
    fill(0, &cells, &mut grid, k, &mut out);
    out
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_default() += ca * cb;
        }
    }
    out
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut all = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut all);
    all.into_iter()
        .map(|p| {
            let inversions = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

/// Multiplicity of the gl diagram `nu` in a character, as the alternating sum
/// over `S_k` of coefficients at `w(nu + rho) - rho`.
fn multiplicity(chi: &Poly, nu: &[u32]) -> i64 {
    let k = nu.len();
    let shifted: Vec<i64> = nu
        .iter()
        .enumerate()
        .map(|(i, &x)| i64::from(x) + (k - 1 - i) as i64)
        .collect();
    let mut total = 0i64;
    for (p, sign) in permutations(k) {
        let exp: Option<Vec<u32>> = (0..k)
            .map(|i| u32::try_from(shifted[p[i]] - (k - 1 - i) as i64).ok())
            .collect();
        if let Some(e) = exp {
            total += sign * *chi.get(&e).unwrap_or(&0) as i64;
        }
    }
    total
}

fn small_weights(k: usize, level: u32) -> Vec<Weight> {
    enumerate_alcove(&LeveledAlgebra::new(k, level).unwrap())
}

#[test]
fn lr_matches_character_products() {
    for k in 2..=3 {
        let ws = small_weights(k, 3);
        for a in &ws {
            for b in &ws {
                let chi = mul(&schur(a.rows(), k), &schur(b.rows(), k));
                let lr = lr_product(a, b).unwrap();
                let mut expanded = Poly::new();
                for (nu, c) in &lr {
                    assert_eq!(
                        multiplicity(&chi, nu.rows()),
                        *c as i64,
                        "{a} x {b} at {nu}"
                    );
                    for (e, m) in schur(nu.rows(), k) {
                        *expanded.entry(e).or_default() += m * c;
                    }
                }
                // the listed components account for the whole character
                assert_eq!(expanded, chi, "{a} x {b}");
            }
        }
    }
}

#[test]
fn coinvariants_match_alternating_sum() {
    let cases: &[(usize, &[&[u32]])] = &[
        (2, &[&[1, 0], &[1, 0], &[1, 0], &[1, 0]]),
        (2, &[&[2, 0], &[2, 0], &[1, 0], &[1, 0]]),
        (3, &[&[1, 0, 0], &[1, 0, 0], &[1, 0, 0]]),
        (3, &[&[2, 1, 0], &[2, 1, 0], &[2, 1, 0]]),
        (
            3,
            &[
                &[1, 0, 0],
                &[1, 0, 0],
                &[1, 0, 0],
                &[1, 0, 0],
                &[1, 0, 0],
                &[1, 0, 0],
            ],
        ),
        (
            4,
            &[&[1, 0, 0, 0], &[3, 1, 1, 0], &[3, 1, 1, 0], &[3, 1, 1, 0]],
        ),
        (
            4,
            &[&[1, 1, 0, 0], &[1, 0, 0, 0], &[3, 2, 0, 0], &[3, 1, 1, 0]],
        ),
    ];
    for (k, rows) in cases {
        let ws: Vec<Weight> = rows
            .iter()
            .map(|r| Weight::new(r.to_vec()).unwrap())
            .collect();
        let chi = ws.iter().fold(Poly::from([(vec![0; *k], 1)]), |acc, w| {
            mul(&acc, &schur(w.rows(), *k))
        });
        let total: u32 = ws.iter().map(|w| w.size() as u32).sum();
        let expected = if total.is_multiple_of(*k as u32) {
            multiplicity(&chi, &vec![total / *k as u32; *k])
        } else {
            0
        };
        assert_eq!(coinvariant_dim(&ws).unwrap() as i64, expected, "{rows:?}");
    }
    // the sl4 examples with rank one and two invariants
    let ex: Vec<Weight> = [[1, 0, 0, 0], [3, 1, 1, 0], [3, 1, 1, 0], [3, 1, 1, 0]]
        .iter()
        .map(|r| Weight::new(r.to_vec()).unwrap())
        .collect();
    assert_eq!(coinvariant_dim(&ex).unwrap(), 2);
}

#[test]
fn casimir_in_fundamental_basis() {
    for k in 2..=5usize {
        for w in small_weights(k, 3) {
            let a = w.fundamental_coeffs();
            // (w_i, w_j) = min(i,j) (k - max(i,j)) / k
            let form = |x: &[i64], y: &[i64]| -> Rational64 {
                let mut s = Rational64::from_integer(0);
                for i in 1..k {
                    for j in 1..k {
                        let g = Rational64::new((i.min(j) * (k - i.max(j))) as i64, k as i64);
                        s += g * x[i - 1] * y[j - 1];
                    }
                }
                s
            };
            let lam: Vec<i64> = a.iter().map(|&x| i64::from(x)).collect();
            let lam_2rho: Vec<i64> = lam.iter().map(|x| x + 2).collect();
            assert_eq!(w.casimir::<Rational64>(), form(&lam, &lam_2rho), "{w}");
        }
    }
}

#[test]
fn weyl_dimension_from_characters() {
    for k in 2..=4 {
        for w in small_weights(k, 3) {
            let dim: u64 = schur(w.rows(), k).values().sum();
            assert_eq!(cbdiv::tensor::weyl_dim(&w), u128::from(dim), "{w}");
        }
    }
}
