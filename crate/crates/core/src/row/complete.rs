use super::{pairing, RowBundle};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;

/// Completes a row `(a, b)` with complement `(u, v)` to the matrix with
/// columns `(a, b)` and `(-v, u)`. A unit pairing `w t^j` is first absorbed
/// into the complement so that the determinant is exactly 1.
pub fn complete_length2(b: &RowBundle) -> Result<Matrix<LaurentPoly>> {
    if b.r() != 1 {
        return Err(Error::InvalidInput(format!("length-2 completion needs r = 1, got r = {}", b.r())));
    }
    let s = pairing(&b.row, &b.complement);
    let inv = s
        .unit_inverse(&b.base)
        .ok_or_else(|| Error::NotUnimodular(format!("a u + b v = {s} is not a unit")))?;
    let u = b.complement[0].mul(&inv);
    let v = b.complement[1].mul(&inv);
    let m = Matrix::from_rows(vec![vec![b.row[0].clone(), v.neg()], vec![b.row[1].clone(), u]]);
    let det = m.det_cofactor();
    if det != LaurentPoly::one() {
        return Err(Error::NotUnimodular(format!("determinant {det}")));
    }
    Ok(m)
}
