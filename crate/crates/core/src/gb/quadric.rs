use crate::base::BaseElem;
use crate::error::{Error, Result};
use crate::mvpoly::MvPoly;

/// Rank of the symmetric Gram matrix of a quadratic form over `Q`: diagonal
/// entries are the coefficients of `x_u^2`, off-diagonal ones half the
/// coefficient of `x_u x_v`.
pub fn quadric_rank(q: &MvPoly) -> Result<usize> {
    if !q.is_zero() && q.homogeneous_degree(&vec![1; q.nvars()]) != Some(2) {
        return Err(Error::NonHomogeneous {
            index: 0,
            relation: q.to_string(),
        });
    }
    if q.terms().any(|(_, c)| c.as_rational().is_none()) {
        return Err(Error::InvalidInput("quadric rank needs characteristic 0".into()));
    }
    let n = q.nvars();
    let half = BaseElem::from(num_rational::BigRational::new(1.into(), 2.into()));
    let mut m = vec![vec![BaseElem::zero(); n]; n];
    for (e, c) in q.terms() {
        let idx: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        match idx.as_slice() {
            [u] => m[*u][*u] = c.clone(),
            [u, v] => {
                m[*u][*v] = c.mul(&half);
                m[*v][*u] = c.mul(&half);
            }
            _ => unreachable!("degree 2"),
        }
    }
    Ok(rank(m))
}

pub(crate) fn rank(mut m: Vec<Vec<BaseElem>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].field_inverse().expect("nonzero");
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].mul(&inv);
                for j in c..cols {
                    let s = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&s);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mvpoly::var_list;

    #[test]
    fn small_forms() {
        let v = var_list(&["x", "y", "z", "w"]);
        let g = |s| MvPoly::var_named(&v, s);
        assert_eq!(quadric_rank(&g("x").mul(&g("y")).add(&g("z").mul(&g("w")))).unwrap(), 4);
        assert_eq!(quadric_rank(&g("x").mul(&g("x"))).unwrap(), 1);
        // (x + y)^2 is still rank 1
        assert_eq!(quadric_rank(&g("x").add(&g("y")).pow(2)).unwrap(), 1);
        assert!(matches!(quadric_rank(&g("x")), Err(Error::NonHomogeneous { .. })));
    }

    #[test]
    fn hyperbolic_blocks() {
        let v = var_list(&["c0", "d0", "e0", "f0", "cl", "dl", "el", "fl"]);
        let g = |s| MvPoly::var_named(&v, s);
        let q = g("c0").mul(&g("dl")).add(&g("cl").mul(&g("d0"))).add(&g("e0").mul(&g("fl"))).add(&g("el").mul(&g("f0")));
        assert_eq!(quadric_rank(&q).unwrap(), 8);
        assert_eq!(quadric_rank(&g("cl").mul(&g("dl")).add(&g("el").mul(&g("fl")))).unwrap(), 4);
    }
}
