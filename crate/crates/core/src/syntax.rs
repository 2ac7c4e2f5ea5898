//! Text syntax shared by the CLI and the tests.
//!
//! * algebra: `sl4`, `sl_4` or just `4` (the value of r+1)
//! * weight: `[3,1,1,0]` (rows) or `2w1+w3` (fundamental weights), `0` for zero
//! * tuple: `;`-separated weights, each optionally followed by `^k`
//! * F-curve blocks: `1|2|3|4,5,6`
//! * Hassett weights: `1/4^9` or `1/2,1/2,1/3^4`

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::weights::Weight;

pub fn parse_algebra(text: &str) -> Result<usize> {
    let t = text.trim();
    let digits = t
        .strip_prefix("sl_")
        .or_else(|| t.strip_prefix("sl"))
        .or_else(|| t.strip_prefix("SL"))
        .unwrap_or(t);
    digits
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("cannot read algebra {text:?}; expected e.g. sl4")))
}

/// Parse a single weight of `sl_len`. Non-normalized row vectors are accepted.
pub fn parse_weight(text: &str, len: usize) -> Result<Weight> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {t:?}")))?;
        let rows = inner
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad row {s:?} in {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != len {
            return Err(Error::Dimension {
                expected: len,
                got: rows.len(),
            });
        }
        return Weight::new(rows);
    }
    parse_fundamental(t, len)
}

fn parse_fundamental(t: &str, len: usize) -> Result<Weight> {
    if t == "0" {
        return Ok(Weight::zero(len));
    }
    let mut coeffs = vec![0u32; len.saturating_sub(1)];
    for term in t.split('+') {
        let term = term.trim();
        let pos = term
            .find(['w', 'ω'])
            .ok_or_else(|| Error::Parse(format!("bad weight term {term:?}; expected like 2w1")))?;
        let (c, rest) = term.split_at(pos);
        let c = c.trim().trim_end_matches('*');
        let coeff = if c.is_empty() {
            1
        } else {
            c.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
        };
        let idx_text = rest.trim_start_matches(['w', 'ω']).trim_start_matches('_');
        let a = idx_text
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad fundamental index in {term:?}")))?;
        if a == 0 || a >= len {
            return Err(Error::Parse(format!(
                "ω_{a} is not a fundamental weight of sl_{len}"
            )));
        }
        coeffs[a - 1] += coeff;
    }
    Weight::from_fundamental_coeffs(len, &coeffs)
}

fn split_repeat(item: &str) -> Result<(&str, usize)> {
    match item.rfind('^') {
        Some(pos) if !item[pos..].contains(']') => {
            let k = item[pos + 1..]
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad repetition count in {item:?}")))?;
            Ok((&item[..pos], k))
        }
        _ => Ok((item, 1)),
    }
}

/// Parse `"[1,0,0,0];[3,1,1,0]^3"` into a list of weights.
pub fn parse_tuple(text: &str, len: usize) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    for item in text.split(';') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (body, k) = split_repeat(item)?;
        let w = parse_weight(body, len)?;
        out.extend(std::iter::repeat_n(w, k));
    }
    if out.is_empty() {
        return Err(Error::Parse("empty weight tuple".into()));
    }
    Ok(out)
}

/// Parse `"1|2|3|4,5,6"` into 1-based blocks.
pub fn parse_blocks(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split('|')
        .map(|block| {
            block
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {s:?} in blocks {text:?}")))
                })
                .collect()
        })
        .collect()
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("bad rational {t:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Parse Hassett weights such as `"1/4^9"`.
pub fn parse_rational_tuple(text: &str) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    for item in text.split([',', ';']) {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (body, k) = split_repeat(item)?;
        let q = parse_rational(body)?;
        out.extend(std::iter::repeat_n(q, k));
    }
    Ok(out)
}
