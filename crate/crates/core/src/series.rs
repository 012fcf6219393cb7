//! Laurent series known modulo `t^P`.
//!
//! A [`TruncSeries`] is a finite window of coefficients below the precision
//! `P`. Its valuation is only known when some coefficient in the window is
//! nonzero; an all-zero window says nothing beyond "valuation >= P", and any
//! operation that needs the valuation refuses to guess.

use serde::{Deserialize, Serialize};

use crate::base::{BaseElem, LocalBase};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Precision used by the reduction pipeline unless told otherwise.
pub const DEFAULT_PRECISION: i64 = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncSeries {
    pub base: LocalBase,
    pub precision: i64,
    /// `None` when the window is all zero.
    pub valuation: Option<i64>,
    #[serde(rename = "coeffs", with = "crate::json::laurent")]
    window: LaurentPoly,
}

impl TruncSeries {
    /// Embeds an exact Laurent polynomial; lossless when
    /// `precision > deg(p)`, otherwise the higher terms are dropped.
    pub fn from_laurent(base: LocalBase, p: &LaurentPoly, precision: i64) -> Self {
        let window = p.truncate_le(precision - 1);
        TruncSeries {
            base,
            precision,
            valuation: window.valuation(),
            window,
        }
    }

    pub fn zero(base: LocalBase, precision: i64) -> Self {
        Self::from_laurent(base, &LaurentPoly::zero(), precision)
    }

    pub fn coeff(&self, e: i64) -> BaseElem {
        self.window.coeff(e)
    }

    /// The known coefficients as a Laurent polynomial.
    pub fn window(&self) -> &LaurentPoly {
        &self.window
    }

    /// Lower bound for the valuation: the known one, or the precision.
    fn valuation_bound(&self) -> i64 {
        self.valuation.unwrap_or(self.precision)
    }

    fn with_window(base: LocalBase, precision: i64, lower_bound: i64, window: LaurentPoly) -> Result<Self> {
        if precision <= lower_bound {
            return Err(Error::PrecisionLoss(format!(
                "no coefficient is known: precision {precision} <= valuation bound {lower_bound}"
            )));
        }
        let window = window.truncate_le(precision - 1);
        Ok(TruncSeries {
            base,
            precision,
            valuation: window.valuation(),
            window,
        })
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::InvalidInput(format!(
                "series over {} and {} cannot be combined",
                self.base, other.base
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let p = self.precision.min(other.precision);
        let lb = self.valuation_bound().min(other.valuation_bound());
        Self::with_window(self.base, p, lb, self.window.add(&other.window))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            window: self.window.neg(),
            ..self.clone()
        }
    }

    /// Product, exact below `min(P_a + v_b, P_b + v_a)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let (va, vb) = (self.valuation_bound(), other.valuation_bound());
        let p = (self.precision + vb).min(other.precision + va);
        Self::with_window(self.base, p, va + vb, self.window.mul(&other.window))
    }

    /// Multiplication by `t^k`; the precision moves with it.
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries {
            base: self.base,
            precision: self.precision + k,
            valuation: self.valuation.map(|v| v + k),
            window: self.window.shift(k),
        }
    }

    /// Multiplication by an exact Laurent polynomial.
    pub fn mul_exact(&self, p: &LaurentPoly) -> Result<Self> {
        let Some(v) = p.valuation() else {
            return Ok(TruncSeries::zero(self.base, self.precision + self.valuation_bound()));
        };
        // Precision large enough that only `self` limits the product.
        let pq = (p.degree().unwrap() + 1).max(self.precision + v - self.valuation_bound());
        self.mul(&TruncSeries::from_laurent(self.base, p, pq))
    }

    /// Inverse of `t^v u` with `u(0)` a unit; precision becomes `P - 2v`.
    pub fn invert(&self) -> Result<Self> {
        let v = self
            .valuation
            .ok_or_else(|| Error::PrecisionLoss("valuation of an all-zero window is unknown".into()))?;
        let lead = self.window.coeff(v);
        let lead_inv = self
            .base
            .inverse(&lead)
            .ok_or_else(|| Error::NotAUnit(self.window.to_string()))?;
        let n = self.precision - v; // known coefficients of u
        let u: Vec<BaseElem> = (0..n).map(|i| self.window.coeff(v + i)).collect();
        let mut b: Vec<BaseElem> = Vec::with_capacity(n as usize);
        b.push(lead_inv.clone());
        for m in 1..n as usize {
            let mut acc = self.base.zero();
            for i in 1..=m {
                if !u[i].is_zero() {
                    acc = acc.add(&u[i].mul(&b[m - i]));
                }
            }
            b.push(acc.mul(&lead_inv).neg());
        }
        let window = LaurentPoly::from_terms(b.into_iter().enumerate().map(|(i, c)| (i as i64 - v, c)));
        Ok(TruncSeries {
            base: self.base,
            precision: self.precision - 2 * v,
            valuation: Some(-v),
            window,
        })
    }

    /// `sum_{e <= k} a_e t^e`, which needs `k < P`.
    pub fn truncate_at(&self, k: i64) -> Result<LaurentPoly> {
        if k >= self.precision {
            return Err(Error::PrecisionLoss(format!(
                "cannot truncate at degree {k}: only known below {}",
                self.precision
            )));
        }
        Ok(self.window.truncate_le(k))
    }

    /// Coefficientwise image in `(R/m)((t))`.
    pub fn residue_reduce(&self) -> Result<Self> {
        let rf = self.base.residue_field()?;
        let mut terms = Vec::new();
        for (e, c) in self.window.terms() {
            terms.push((e, self.base.residue(c)?));
        }
        let window = LaurentPoly::from_terms(terms);
        Ok(TruncSeries {
            base: rf,
            precision: self.precision,
            valuation: window.valuation(),
            window,
        })
    }

    /// Coefficientwise canonical lift from the residue field to `base`.
    pub fn coefficient_lift(&self, base: LocalBase) -> Result<Self> {
        if base.residue_field()? != self.base {
            return Err(Error::InvalidInput(format!(
                "series over {} is not over the residue field of {base}",
                self.base
            )));
        }
        let window = self.window.map_coeffs(|c| base.lift(c));
        Ok(TruncSeries {
            base,
            precision: self.precision,
            valuation: window.valuation(),
            window,
        })
    }

    /// Agreement with `other` below the smaller precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let p = self.precision.min(other.precision);
        self.window.truncate_le(p - 1) == other.window.truncate_le(p - 1)
    }

    /// Agreement with an exact Laurent polynomial below this precision.
    pub fn agrees_with_exact(&self, p: &LaurentPoly) -> bool {
        self.window == p.truncate_le(self.precision - 1)
    }
}

/// `sum_{e <= upto}` of the Laurent series `num / den`, for exact `num` and
/// `den` whose lowest coefficient is a unit of `base`.
pub fn quotient_upto(num: &LaurentPoly, den: &LaurentPoly, upto: i64, base: LocalBase) -> Result<LaurentPoly> {
    let (Some(vn), Some(vd)) = (num.valuation(), den.valuation()) else {
        if den.is_zero() {
            return Err(Error::NotAUnit("0".into()));
        }
        return Ok(LaurentPoly::zero());
    };
    if upto < vn - vd {
        return Ok(LaurentPoly::zero());
    }
    let inv = TruncSeries::from_laurent(base, den, upto - vn + 2 * vd + 1).invert()?;
    inv.mul_exact(num)?.truncate_at(upto)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LocalBase {
        LocalBase::Rationals
    }

    fn s(base: LocalBase, terms: &[(i64, i64)], p: i64) -> TruncSeries {
        TruncSeries::from_laurent(base, &LaurentPoly::from_terms(terms.iter().map(|(e, c)| (*e, base.int(*c)))), p)
    }

    #[test]
    fn product_examples() {
        let a = s(q(), &[(0, 1), (1, 1)], 4);
        let b = s(q(), &[(0, 1), (1, -1)], 4);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.precision, 4);
        assert!(ab.agrees_with_exact(&LaurentPoly::from_terms([(0, q().int(1)), (2, q().int(-1))])));

        let c = s(q(), &[(2, 1)], 3);
        let cc = c.mul(&c).unwrap();
        assert_eq!(cc.precision, 5);
        assert_eq!(cc.window(), &LaurentPoly::t_pow(4));
    }

    #[test]
    fn shift_example() {
        let a = s(q(), &[(-1, 1), (0, 1)], 3).shift(2);
        assert_eq!(a.precision, 5);
        assert_eq!(a.window(), &LaurentPoly::from_terms([(1, q().int(1)), (2, q().int(1))]));
    }

    #[test]
    fn zero_window_has_unknown_valuation() {
        let a = s(q(), &[(0, 1)], 4);
        let z = a.sub(&a).unwrap();
        assert_eq!(z.valuation, None);
        assert!(matches!(z.invert(), Err(Error::PrecisionLoss(_))));
        // both factors unknown: nothing left below the bound
        assert!(matches!(z.mul(&z), Err(Error::PrecisionLoss(_))));
    }

    #[test]
    fn inversion_examples() {
        let a = s(q(), &[(0, 1), (1, -1)], 4).invert().unwrap();
        assert_eq!(a.precision, 4);
        assert_eq!(a.window(), &LaurentPoly::from_ints(q(), &[1, 1, 1, 1]));

        let t = s(q(), &[(1, 1)], 5).invert().unwrap();
        assert_eq!(t.precision, 3);
        assert_eq!(t.window(), &LaurentPoly::t_pow(-1));

        let z3 = LocalBase::localized_at(3).unwrap();
        let b = s(z3, &[(0, 2), (1, 1)], 3).invert().unwrap();
        let expect = LaurentPoly::from_terms([
            (0, z3.ratio(1, 2).unwrap()),
            (1, z3.ratio(-1, 4).unwrap()),
            (2, z3.ratio(1, 8).unwrap()),
        ]);
        assert_eq!(b.window(), &expect);

        let z2 = LocalBase::localized_at(2).unwrap();
        assert!(matches!(s(z2, &[(0, 2), (1, 1)], 3).invert(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn truncation_examples() {
        let a = s(q(), &[(0, 1), (1, 1), (2, 1)], 3);
        assert_eq!(a.truncate_at(1).unwrap(), LaurentPoly::from_ints(q(), &[1, 1]));
        assert!(s(q(), &[(2, 1)], 4).truncate_at(0).unwrap().is_zero());
        assert!(matches!(s(q(), &[(0, 1)], 2).truncate_at(2), Err(Error::PrecisionLoss(_))));
    }

    #[test]
    fn residue_examples() {
        let z2 = LocalBase::localized_at(2).unwrap();
        let r = s(z2, &[(0, 2), (1, 1)], 5).residue_reduce().unwrap();
        assert_eq!(r.base, LocalBase::PrimeField(2));
        assert_eq!(r.window(), &LaurentPoly::t_pow(1));

        let z3 = LocalBase::localized_at(3).unwrap();
        let r = s(z3, &[(0, 3), (1, 6), (2, 1)], 5).residue_reduce().unwrap();
        assert_eq!(r.window(), &LaurentPoly::t_pow(2));
        assert_eq!(r.valuation, Some(2));

        let a = s(q(), &[(0, 5), (3, -2)], 6);
        assert_eq!(a.residue_reduce().unwrap(), a);

        assert!(s(LocalBase::Integers, &[(0, 1)], 2).residue_reduce().is_err());
    }

    #[test]
    fn quotient_matches_long_division() {
        let num = LaurentPoly::from_ints(q(), &[1]);
        let den = LaurentPoly::from_terms([(-1, q().int(1)), (0, q().int(-1))]);
        // 1 / (t^-1 - 1) = t + t^2 + ...
        let w = quotient_upto(&num, &den, 3, q()).unwrap();
        assert_eq!(w, LaurentPoly::from_terms((1..=3).map(|e| (e, q().int(1)))));
        assert!(quotient_upto(&LaurentPoly::t_pow(5), &den, 3, q()).unwrap().is_zero());
    }

    #[test]
    fn lift_uses_canonical_section() {
        let f7 = LocalBase::PrimeField(7);
        let z7 = LocalBase::LocalizedAt(7);
        let a = s(f7, &[(0, 6), (1, 1)], 3);
        let l = a.coefficient_lift(z7).unwrap();
        assert_eq!(l.coeff(0), BaseElem::from(6));
        assert_eq!(l.residue_reduce().unwrap(), a);
        assert!(a.coefficient_lift(LocalBase::LocalizedAt(5)).is_err());
    }
}
