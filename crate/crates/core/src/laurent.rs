//! Laurent polynomials in a single variable `t` over a [`LocalBase`].

use std::collections::BTreeMap;
use std::fmt;

use crate::base::{BaseElem, LocalBase};
use crate::error::{Error, Result};
use crate::ring::RingElem;

/// Finite sum `sum_e c_e t^e`, `e` possibly negative. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BaseElem>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BaseElem::one())
    }

    pub fn constant(c: BaseElem) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BaseElem, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    /// `t^e` with coefficient one.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(BaseElem::one(), e)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, BaseElem)>>(terms: I) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    /// Polynomial with integer coefficients `cs[0] + cs[1] t + ...` in `base`.
    pub fn from_ints(base: LocalBase, cs: &[i64]) -> Self {
        Self::from_terms(cs.iter().enumerate().map(|(e, c)| (e as i64, base.int(*c))))
    }

    fn add_term(&mut self, e: i64, c: &BaseElem) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(old) => {
                let s = old.add(c);
                if s.is_zero() {
                    self.coeffs.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.coeffs.insert(e, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BaseElem {
        self.coeffs.get(&e).cloned().unwrap_or_else(BaseElem::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BaseElem)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Lowest exponent; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BaseElem> {
        self.coeffs.values().next_back()
    }

    /// True when the element lies in `R[t]`.
    pub fn is_polynomial(&self) -> bool {
        self.valuation().map_or(true, |v| v >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                out.add_term(ea + eb, &ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &BaseElem) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, x)| (*e, x.mul(c))))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `sum_{e <= k} c_e t^e`.
    pub fn truncate_le(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.range(..=k).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// `sum_{e > k} c_e t^e`.
    pub fn tail_gt(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .range(k.saturating_add(1)..)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&BaseElem) -> BaseElem) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, c)| (*e, f(c))))
    }

    /// The substitution `t -> c t`.
    pub fn scale_variable(&self, c: &BaseElem) -> Self {
        let inv = c.field_inverse();
        Self::from_terms(self.coeffs.iter().map(|(e, x)| {
            let factor = if *e >= 0 {
                c.pow(*e as u32)
            } else {
                inv.as_ref().expect("negative power of zero").pow((-e) as u32)
            };
            (*e, x.mul(&factor))
        }))
    }

    /// If this is `u t^j` with `u` a unit of `base`, returns `(u, j)`.
    pub fn unit_form(&self, base: &LocalBase) -> Option<(BaseElem, i64)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (e, c) = self.coeffs.iter().next()?;
        base.is_unit(c).then(|| (c.clone(), *e))
    }

    pub fn is_unit(&self, base: &LocalBase) -> bool {
        self.unit_form(base).is_some()
    }

    /// Inverse in `R[t, t^-1]`, defined only for units.
    pub fn unit_inverse(&self, base: &LocalBase) -> Option<Self> {
        let (u, j) = self.unit_form(base)?;
        Some(Self::monomial(base.inverse(&u)?, -j))
    }

    /// Every coefficient lies in `base`.
    pub fn in_base(&self, base: &LocalBase) -> bool {
        self.coeffs.values().all(|c| base.contains(c))
    }

    /// Canonical form with respect to `base` (residues reduced mod p).
    pub fn normalized(&self, base: &LocalBase) -> Result<Self> {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.coeffs {
            out.add_term(*e, &base.normalize(c.clone())?);
        }
        Ok(out)
    }

    /// Division with remainder by a monic polynomial `g` of degree `n`;
    /// `self` must lie in `R[t]`. Returns `(q, r)` with `self = q g + r`,
    /// `deg r < n`.
    pub fn div_rem_monic(&self, g: &Self) -> Result<(Self, Self)> {
        let n = match (g.degree(), g.leading_coeff()) {
            (Some(n), Some(lc)) if lc.is_one() && g.is_polynomial() => n,
            _ => return Err(Error::InvalidInput(format!("divisor {g} is not a monic polynomial"))),
        };
        if !self.is_polynomial() {
            return Err(Error::InvalidInput(format!("dividend {self} is not a polynomial")));
        }
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(d) = rem.degree() {
            if d < n {
                break;
            }
            let c = rem.coeff(d);
            let step = LaurentPoly::monomial(c, d - n);
            rem = rem.sub(&step.mul(g));
            quot = quot.add(&step);
        }
        Ok((quot, rem))
    }

    /// Exact quotient by a monic polynomial; errors if the remainder is nonzero.
    pub fn div_exact_monic(&self, g: &Self) -> Result<Self> {
        let (q, r) = self.div_rem_monic(g)?;
        if !r.is_zero() {
            return Err(Error::InvalidInput(format!("{g} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl RingElem for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        LaurentPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let c = c.to_string();
            let c = c.strip_suffix("/1").unwrap_or(&c);
            match *e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                e => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}
