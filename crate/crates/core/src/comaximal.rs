//! Weierstrass polynomials and explicit Bezout certificates for the
//! comaximality of a Weierstrass polynomial with a polynomial whose constant
//! term is a unit.

use serde::{Deserialize, Serialize};

use crate::base::LocalBase;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::LocalMatrix;

/// Monic, in `R[t]`, and every non-leading coefficient in the maximal ideal.
pub fn weierstrass_test(f: &LaurentPoly, base: &LocalBase) -> Result<bool> {
    base.require_local()?;
    let (Some(deg), Some(lc)) = (f.degree(), f.leading_coeff()) else {
        return Ok(false);
    };
    if !f.is_polynomial() || !lc.is_one() {
        return Ok(false);
    }
    for (e, c) in f.terms() {
        if e < deg && base.is_unit(c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matrix of multiplication by `f` on `R[t]/(g)` in the basis `1, t, .., t^{n-1}`.
fn multiplication_matrix(f: &LaurentPoly, g: &LaurentPoly, n: usize, base: &LocalBase) -> Result<LocalMatrix> {
    let mut m = LocalMatrix::zeros(n, n);
    let mut col = f.div_rem_monic(g)?.1;
    for j in 0..n {
        for i in 0..n {
            m.set(i, j, base.normalize(col.coeff(i as i64))?);
        }
        col = col.shift(1).div_rem_monic(g)?.1;
    }
    Ok(m)
}

/// `u` with `u f = 1 (mod g)`, for `g` monic of degree at least one. The
/// multiplication-by-`f` matrix is inverted over the local base; a non-unit
/// determinant is reported as [`Error::NotInvertible`].
pub fn invert_mod_monic(f: &LaurentPoly, g: &LaurentPoly, base: &LocalBase) -> Result<LaurentPoly> {
    base.require_local()?;
    let n = match g.degree() {
        Some(n) if n >= 1 => n as usize,
        _ => return Err(Error::InvalidInput(format!("modulus {g} must have degree >= 1"))),
    };
    let m = multiplication_matrix(f, g, n, base)?;
    let inv = m.unit_det_inverse(base)?;
    // u's coefficient vector solves M u = e_0: the first column of M^{-1}.
    let u = LaurentPoly::from_terms(inv.inverse.column(0).into_iter().enumerate().map(|(i, c)| (i as i64, c)));
    let check = u.mul(f).div_rem_monic(g)?.1;
    if check != LaurentPoly::one() {
        return Err(Error::NotInvertible(format!("u*f = {check} mod {g}")));
    }
    Ok(u)
}

/// An exact identity `u f + v g = 1` in `R[t]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BezoutPair {
    #[serde(with = "crate::json::laurent")]
    pub u: LaurentPoly,
    #[serde(with = "crate::json::laurent")]
    pub v: LaurentPoly,
}

impl BezoutPair {
    pub fn verify(&self, f: &LaurentPoly, g: &LaurentPoly) -> bool {
        self.u.mul(f).add(&self.v.mul(g)) == LaurentPoly::one()
    }
}

/// Certificate that `f` (unit constant term) and the Weierstrass polynomial
/// `g` are comaximal.
pub fn top_bottom_bezout(f: &LaurentPoly, g: &LaurentPoly, base: &LocalBase) -> Result<BezoutPair> {
    if !weierstrass_test(g, base)? {
        return Err(Error::NotWeierstrass(g.to_string()));
    }
    if !f.is_polynomial() || !base.is_unit(&f.coeff(0)) {
        return Err(Error::NonUnitConstantTerm(f.to_string()));
    }
    if g.degree() == Some(0) {
        // g = 1
        return Ok(BezoutPair {
            u: LaurentPoly::zero(),
            v: LaurentPoly::one(),
        });
    }
    let u = invert_mod_monic(f, g, base)?;
    let v = LaurentPoly::one().sub(&u.mul(f)).div_exact_monic(g)?;
    let pair = BezoutPair { u, v };
    debug_assert!(pair.verify(f, g));
    Ok(pair)
}
