//! Genus zero Verlinde formula, used as an independent check on Kac–Walton.
//!
//! `rk = Σ_μ S_{0μ}² Π_i s_{λ_i}(z_μ)` where `z_μ` is the torsion point
//! `exp(2πi (μ+ρ)/(ℓ+r+1))` (centered so that `Π z = 1`), `s_λ` is a Schur
//! polynomial and `S_{0μ}² ∝ Π_{a<b} sin²(π(x_a-x_b)/(ℓ+r+1))`.

use num_complex::Complex;
use num_traits::{Float, FloatConst};

use super::BundleSpec;
use crate::error::{Error, Result};
use crate::weights::{enumerate_alcove, Weight};

/// Default guard band around integers.
pub const GUARD: f64 = 1e-6;

fn det<F: Float>(mut m: Vec<Vec<Complex<F>>>) -> Complex<F> {
    let n = m.len();
    let mut acc = Complex::new(F::one(), F::zero());
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].norm().partial_cmp(&m[b][col].norm()).unwrap())
            .unwrap();
        if m[pivot][col].norm() == F::zero() {
            return Complex::new(F::zero(), F::zero());
        }
        if pivot != col {
            m.swap(pivot, col);
            acc = -acc;
        }
        let p = m[col][col];
        acc = acc * p;
        for row in col + 1..n {
            let factor = m[row][col] / p;
            for c in col..n {
                let sub = factor * m[col][c];
                m[row][c] = m[row][c] - sub;
            }
        }
    }
    acc
}

/// Schur polynomial at the point with arguments `theta`, as a ratio of
/// alternants. `vandermonde` is the denominator, precomputed per point.
fn schur<F: Float>(lambda: &Weight, theta: &[F], vandermonde: Complex<F>) -> Complex<F> {
    let n = theta.len();
    let m = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let e = F::from(lambda.rows()[b] as usize + n - 1 - b).unwrap();
                    Complex::from_polar(F::one(), e * theta[a])
                })
                .collect()
        })
        .collect();
    det(m) / vandermonde
}

/// Verlinde rank in floating point type `F`, rounded to the nearest integer.
///
/// Fails with a precision error when the sum is further than `guard` from an
/// integer or has an imaginary part larger than `guard`.
pub fn rank_verlinde_with<F: Float + FloatConst>(spec: &BundleSpec, guard: F) -> Result<u64> {
    let alg = spec.algebra();
    let n = alg.rank_plus_one();
    let k = F::from(alg.shifted_level()).unwrap();
    let two_pi = F::PI() + F::PI();
    let mut weights = Vec::new();
    let mut values = Vec::new();
    for mu in enumerate_alcove(&alg) {
        let x: Vec<F> = mu
            .rows()
            .iter()
            .enumerate()
            .map(|(i, &v)| F::from(v as usize + n - 1 - i).unwrap())
            .collect();
        let mean = x.iter().fold(F::zero(), |s, &v| s + v) / F::from(n).unwrap();
        let theta: Vec<F> = x.iter().map(|&v| two_pi * (v - mean) / k).collect();
        let mut wgt = F::one();
        for a in 0..n {
            for b in a + 1..n {
                let s = (F::PI() * (x[a] - x[b]) / k).sin();
                wgt = wgt * s * s;
            }
        }
        let vandermonde = det((0..n)
            .map(|a| {
                (0..n)
                    .map(|b| Complex::from_polar(F::one(), F::from(n - 1 - b).unwrap() * theta[a]))
                    .collect()
            })
            .collect());
        let mut prod = Complex::new(F::one(), F::zero());
        for lam in spec.weights() {
            prod = prod * schur(lam, &theta, vandermonde);
        }
        weights.push(wgt);
        values.push(prod);
    }
    let total = weights.iter().fold(F::zero(), |s, &w| s + w);
    let sum = weights
        .iter()
        .zip(&values)
        .fold(Complex::new(F::zero(), F::zero()), |s, (&w, &v)| {
            s + v * (w / total)
        });
    let rounded = sum.re.round();
    if sum.im.abs() > guard || (sum.re - rounded).abs() > guard || rounded < -guard {
        return Err(Error::Precision {
            value: format!("{:?} + {:?}i", sum.re.to_f64(), sum.im.to_f64()),
            tolerance: format!("{:?}", guard.to_f64()),
        });
    }
    Ok(rounded.to_u64().unwrap_or(0))
}

/// Verlinde rank in `f64` with the default guard band.
pub fn rank_verlinde(spec: &BundleSpec) -> Result<u64> {
    rank_verlinde_with::<f64>(spec, GUARD)
}
