//! Descent of a row over `A_S[t]`, congruent to `(1, 0, .., 0)` modulo `t`,
//! to a row over `A[t]` by the substitution `t -> s^k t`. Here `A = Z` and
//! `s` is a nonzero integer; data are Laurent polynomials with rational
//! coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{pairing, shrink_complement};
use crate::base::BaseElem;
use crate::error::{Error, Result};
use crate::json;
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoitmanDescent {
    pub s: i64,
    pub k: u32,
    /// `a_i(t) = b_i(s^k t)`, integral.
    #[serde(with = "json::laurent_vec")]
    pub row: Vec<LaurentPoly>,
    /// `c_i(s^k t)`, integral; pairs with `row` to 1.
    #[serde(with = "json::laurent_vec")]
    pub complement: Vec<LaurentPoly>,
    /// Whether the complement had to be replaced by one congruent to
    /// `(1, 0, .., 0)` modulo `t` first.
    pub shrunk: bool,
}

/// Least `m` with `d | s^m`, if any.
fn power_exponent(d: &BigInt, s: &BigInt) -> Option<u32> {
    // every prime factor of d must divide s
    let mut rest = d.abs();
    loop {
        let g = rest.gcd(s);
        if g.is_one() {
            break;
        }
        rest /= g;
    }
    if !rest.is_one() {
        return None;
    }
    let mut pw = BigInt::one();
    let mut m = 0;
    while !(&pw % d).is_zero() {
        pw *= s;
        m += 1;
    }
    Some(m)
}

fn denominator_exponent(c: &BaseElem, s: &BigInt) -> Result<u32> {
    let q = c
        .as_rational()
        .ok_or_else(|| Error::InvalidInput("residues have no denominators to clear".into()))?;
    power_exponent(q.denom(), s).ok_or_else(|| Error::NotLocalizedAtS(q.denom().to_string(), s.to_string()))
}

fn is_integral(p: &LaurentPoly) -> bool {
    p.terms().all(|(_, c)| c.as_rational().map_or(false, |q| q.is_integer()))
}

fn congruent_to_e0_mod_t(v: &[LaurentPoly]) -> bool {
    v.iter()
        .enumerate()
        .all(|(i, p)| p.coeff(0) == if i == 0 { BaseElem::one() } else { BaseElem::zero() })
}

/// Finds the least `k` making every `b_i(s^k t)` and `c_i(s^k t)` integral.
pub fn roitman_descend(b: &[LaurentPoly], c: &[LaurentPoly], s: i64) -> Result<RoitmanDescent> {
    if s == 0 {
        return Err(Error::InvalidInput("s must be nonzero".into()));
    }
    if b.len() != c.len() || b.len() < 2 {
        return Err(Error::InvalidInput("row and complement must have equal length >= 2".into()));
    }
    if b.iter().chain(c).any(|p| !p.is_polynomial()) {
        return Err(Error::InvalidInput("entries must be polynomials in t".into()));
    }
    let sb = BigInt::from(s);
    for p in b.iter().chain(c) {
        for (_, x) in p.terms() {
            denominator_exponent(x, &sb)?;
        }
    }
    if !congruent_to_e0_mod_t(b) {
        return Err(Error::NotInIdealForm(format!("b(0) = ({})", b.iter().map(|p| p.coeff(0).to_string()).collect::<Vec<_>>().join(", "))));
    }
    if pairing(b, c) != LaurentPoly::one() {
        return Err(Error::NotUnimodular(format!("sum b_i c_i = {}", pairing(b, c))));
    }
    let shrunk = !congruent_to_e0_mod_t(c);
    let c = if shrunk { shrink_complement(b, c)? } else { c.to_vec() };

    let mut k = 0u32;
    for p in b.iter().chain(&c) {
        for (e, x) in p.terms() {
            let m = denominator_exponent(x, &sb)?;
            if e == 0 {
                if m > 0 {
                    return Err(Error::NotInIdealForm(format!("constant term {x} is not integral")));
                }
                continue;
            }
            k = k.max(m.div_ceil(e as u32));
        }
    }
    let scale = BaseElem::from(s).pow(k);
    let row: Vec<LaurentPoly> = b.iter().map(|p| p.scale_variable(&scale)).collect();
    let complement: Vec<LaurentPoly> = c.iter().map(|p| p.scale_variable(&scale)).collect();
    if !row.iter().chain(&complement).all(is_integral) {
        return Err(Error::NotLocalizedAtS("substituted entries".into(), s.to_string()));
    }
    if pairing(&row, &complement) != LaurentPoly::one() {
        return Err(Error::NotUnimodular("substituted identity".into()));
    }
    Ok(RoitmanDescent {
        s,
        k,
        row,
        complement,
        shrunk,
    })
}

/// Applies `t -> s^(-k) t` to every entry.
pub fn roitman_lift_matrix(m: &Matrix<LaurentPoly>, s: i64, k: u32) -> Result<Matrix<LaurentPoly>> {
    if s == 0 {
        return Err(Error::InvalidInput("s must be nonzero".into()));
    }
    let inv = BaseElem::from(s).pow(k).field_inverse().expect("nonzero");
    Ok(m.map(|p| p.scale_variable(&inv)))
}
