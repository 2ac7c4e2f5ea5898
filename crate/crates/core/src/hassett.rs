//! Hassett weight data and the F-curves contracted by the reduction
//! morphism `ρ_A : M̄_{0,n} → M̄_{0,A}`.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::divisor::{all_fcurves, fcurve_classes, intersections, FCurve};
use crate::error::{Error, Result};
use crate::fusion::BundleSpec;

/// `A = (a_1..a_n)` with `0 < a_i ≤ 1` and `Σ a_i > 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HassettWeights {
    a: Vec<BigRational>,
}

impl HassettWeights {
    pub fn new(a: Vec<BigRational>) -> Result<Self> {
        let one = BigRational::one();
        if let Some(x) = a.iter().find(|x| **x <= BigRational::zero() || **x > one) {
            return Err(Error::Domain(format!(
                "Hassett weight {x} is outside (0, 1]"
            )));
        }
        let total: BigRational = a.iter().sum();
        if total <= BigRational::from_integer(2.into()) {
            return Err(Error::Domain(format!(
                "Hassett weights sum to {total}, need > 2"
            )));
        }
        Ok(HassettWeights { a })
    }

    /// `n` copies of `x`.
    pub fn uniform(n: usize, x: BigRational) -> Result<Self> {
        HassettWeights::new(vec![x; n])
    }

    pub fn parse(text: &str) -> Result<Self> {
        HassettWeights::new(crate::syntax::parse_rational_tuple(text)?)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.a
    }

    pub fn is_symmetric(&self) -> bool {
        self.a.windows(2).all(|w| w[0] == w[1])
    }
}

/// True iff `ρ_A` contracts `F`: with `N_4` the heaviest block, the other
/// three blocks carry total weight at most 1.
pub fn rho_contracts(a: &HassettWeights, f: &FCurve) -> Result<bool> {
    if a.n() != f.n() {
        return Err(Error::Domain(format!(
            "{} Hassett weights for an F-curve on {} points",
            a.n(),
            f.n()
        )));
    }
    let block_weights: Vec<BigRational> = f
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&p| a.a[p - 1].clone()).sum())
        .collect();
    let total: BigRational = block_weights.iter().sum();
    let heaviest = block_weights.iter().max().cloned().unwrap_or_default();
    Ok(total - heaviest <= BigRational::one())
}

/// Curves to test: one per size class when the data is symmetric.
fn curves(n: usize, symmetric: bool) -> Vec<FCurve> {
    if symmetric {
        fcurve_classes(n)
    } else {
        all_fcurves(n)
    }
}

/// F-curves with `D·F = 0`, reduced to size classes for symmetric weights.
pub fn contracted_by_divisor(spec: &BundleSpec) -> Result<BTreeSet<FCurve>> {
    let cs = curves(spec.n(), spec.is_symmetric());
    let values = intersections(spec, &cs)?;
    Ok(cs
        .into_iter()
        .zip(values)
        .filter(|&(_, v)| v == 0)
        .map(|(f, _)| f)
        .collect())
}

/// F-curves contracted by `ρ_A`, reduced to size classes for uniform weights.
pub fn contracted_by_hassett(a: &HassettWeights) -> Result<BTreeSet<FCurve>> {
    let mut out = BTreeSet::new();
    for f in curves(a.n(), a.is_symmetric()) {
        if rho_contracts(a, &f)? {
            out.insert(f);
        }
    }
    Ok(out)
}

/// Which F-curves each side contracts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HassettReport {
    /// True when the curves are size-class representatives.
    pub up_to_symmetry: bool,
    pub both: Vec<String>,
    pub only_divisor: Vec<String>,
    pub only_hassett: Vec<String>,
}

impl HassettReport {
    pub fn identical(&self) -> bool {
        self.only_divisor.is_empty() && self.only_hassett.is_empty()
    }
}

/// Compare the curves contracted by `φ_D` and by `ρ_A`.
pub fn compare(spec: &BundleSpec, a: &HassettWeights) -> Result<HassettReport> {
    if spec.n() != a.n() {
        return Err(Error::Domain(format!(
            "bundle has n = {}, Hassett data has n = {}",
            spec.n(),
            a.n()
        )));
    }
    let sym = spec.is_symmetric() && a.is_symmetric();
    let cs = curves(spec.n(), sym);
    let values = intersections(spec, &cs)?;
    let label = |f: &FCurve| if sym { f.class_key() } else { f.to_string() };
    let mut report = HassettReport {
        up_to_symmetry: sym,
        both: Vec::new(),
        only_divisor: Vec::new(),
        only_hassett: Vec::new(),
    };
    for (f, v) in cs.iter().zip(values) {
        match (v == 0, rho_contracts(a, f)?) {
            (true, true) => report.both.push(label(f)),
            (true, false) => report.only_divisor.push(label(f)),
            (false, true) => report.only_hassett.push(label(f)),
            (false, false) => {}
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn quarter_weights_on_nine_points() {
        let a = HassettWeights::uniform(9, q(1, 4)).unwrap();
        assert!(rho_contracts(&a, &FCurve::from_sizes([1, 1, 1, 6]).unwrap()).unwrap());
        let keys: Vec<String> = contracted_by_hassett(&a)
            .unwrap()
            .iter()
            .map(FCurve::class_key)
            .collect();
        assert_eq!(keys, ["1,1,1,6", "1,1,2,5"]);
    }

    #[test]
    fn heavy_weights_contract_nothing() {
        let a = HassettWeights::uniform(6, q(3, 7)).unwrap();
        assert!(contracted_by_hassett(&a).unwrap().is_empty());
        let b = HassettWeights::parse("1,1,1,1/2,1/2,1/10").unwrap();
        assert!(!rho_contracts(&b, &FCurve::from_sizes([1, 1, 1, 3]).unwrap()).unwrap());
    }

    #[test]
    fn bounds() {
        assert!(HassettWeights::parse("1/2^4").is_err());
        assert!(HassettWeights::parse("3/2,1,1").is_err());
        assert!(HassettWeights::parse("0,1,1,1").is_err());
    }

    #[test]
    fn zero_divisor_contracts_everything() {
        let s = BundleSpec::parse("sl2", 1, "0^6").unwrap();
        let a = HassettWeights::uniform(6, q(1, 2)).unwrap();
        let r = compare(&s, &a).unwrap();
        assert!(r.only_hassett.is_empty());
        assert_eq!(r.both.len() + r.only_divisor.len(), 2);
    }
}
