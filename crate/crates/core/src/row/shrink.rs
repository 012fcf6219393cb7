use serde::{Deserialize, Serialize};

use crate::base::LocalBase;
use crate::error::{Error, Result};
use crate::gb::{buchberger, normal_form, GbOptions, MonomialOrder};
use crate::json::{self, TermJson};
use crate::mvpoly::{union_vars, MvPoly};
use crate::ring::RingElem;

fn multinomial(e: &[u32]) -> i64 {
    let mut acc: i64 = 1;
    let mut total: i64 = 0;
    for &k in e {
        for j in 1..=k as i64 {
            total += 1;
            acc = acc * total / j;
        }
    }
    acc
}

/// All exponent vectors of length `parts` summing to `total`.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Given `sum a_i c_i = 1`, returns `b` with `sum a_i b_i = 1` and every
/// `b_j` a multiple of `a_j`.
///
/// Expands `(sum a_i c_i)^(r+2) = 1`. With `r+2` factors spread over `r+1`
/// indices, every monomial has some exponent `e_j >= 2`; the monomial is
/// charged to the first such `j`, contributing
/// `a_j * (multinomial * a_j^(e_j-2) c_j^(e_j) prod_{i != j} (a_i c_i)^(e_i))`
/// to `b_j`.
pub fn shrink_complement<T: RingElem>(a: &[T], c: &[T]) -> Result<Vec<T>> {
    if a.len() != c.len() || a.is_empty() {
        return Err(Error::InvalidInput("row and complement lengths differ".into()));
    }
    let s = a.iter().zip(c).fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y)));
    if s != T::one() {
        return Err(Error::NotUnimodular(format!("sum a_i c_i = {s:?}")));
    }
    let n = a.len();
    let prods: Vec<T> = a.iter().zip(c).map(|(x, y)| x.mul(y)).collect();
    let mut b_prime = vec![T::zero(); n];
    for e in compositions(n as u32 + 1, n) {
        let j = e.iter().position(|&k| k >= 2).expect("pigeonhole");
        let mut term = T::from_int(multinomial(&e));
        term = term.mul(&a[j].pow(e[j] - 2)).mul(&c[j].pow(e[j]));
        for i in (0..n).filter(|&i| i != j) {
            if e[i] > 0 {
                term = term.mul(&prods[i].pow(e[i]));
            }
        }
        b_prime[j] = b_prime[j].add(&term);
    }
    let b: Vec<T> = a.iter().zip(&b_prime).map(|(x, y)| x.mul(y)).collect();
    debug_assert!(a.iter().zip(&b).fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y))) == T::one());
    Ok(b)
}

/// A row of polynomials congruent to `(1, 0, .., 0)` modulo an ideal `I`,
/// with a complement that is congruent to `(1, 0, .., 0)` as well.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealRow {
    pub row: Vec<MvPoly>,
    pub complement: Vec<MvPoly>,
    pub ideal: Vec<MvPoly>,
}

#[derive(Serialize, Deserialize)]
struct IdealRowJson {
    vars: Vec<String>,
    row: Vec<Vec<TermJson>>,
    complement: Vec<Vec<TermJson>>,
    ideal: Vec<Vec<TermJson>>,
}

impl IdealRow {
    pub fn to_json(&self) -> serde_json::Value {
        let vars = union_vars(self.row.iter().chain(&self.complement).chain(&self.ideal));
        let conv = |v: &[MvPoly]| v.iter().map(|p| json::mvpoly_to_json(&p.embed(&vars))).collect();
        serde_json::to_value(IdealRowJson {
            vars: (*vars).clone(),
            row: conv(&self.row),
            complement: conv(&self.complement),
            ideal: conv(&self.ideal),
        })
        .expect("serializable")
    }
}

/// `v == (1, 0, .., 0)` modulo the ideal, decided by normal forms.
fn congruent_to_e0(v: &[MvPoly], nf: &dyn Fn(&MvPoly) -> Result<MvPoly>) -> Result<bool> {
    for (i, p) in v.iter().enumerate() {
        let target = if i == 0 { p.sub(&MvPoly::one()) } else { p.clone() };
        if !nf(&target)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Replaces the complement of a row in `Um(A, I)` by one congruent to
/// `(1, 0, .., 0)` modulo `I`, for `A` a polynomial ring over a field.
pub fn shrink_to_ideal_row(a: &[MvPoly], c: &[MvPoly], ideal: &[MvPoly], base: LocalBase) -> Result<IdealRow> {
    let vars = union_vars(a.iter().chain(c).chain(ideal));
    let a: Vec<MvPoly> = a.iter().map(|p| p.embed(&vars).normalized(&base)).collect::<Result<_>>()?;
    let c: Vec<MvPoly> = c.iter().map(|p| p.embed(&vars).normalized(&base)).collect::<Result<_>>()?;
    let ideal: Vec<MvPoly> = ideal.iter().map(|p| p.embed(&vars).normalized(&base)).collect::<Result<_>>()?;
    let gb = buchberger(&ideal, &MonomialOrder::degrevlex(vars.len()), &GbOptions::default())?;
    let nf = |p: &MvPoly| Ok(normal_form(p, &gb));
    if !congruent_to_e0(&a, &nf)? {
        return Err(Error::NotInIdealForm(format!(
            "({})",
            a.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        )));
    }
    let one = MvPoly::constant(vars.clone(), base.one());
    let s = a.iter().zip(&c).fold(MvPoly::zero(vars.clone()), |acc, (x, y)| acc.add(&x.mul(y)));
    if s != one {
        return Err(Error::NotUnimodular(format!("sum a_i c_i = {s}")));
    }
    let b = shrink_complement(&a, &c)?;
    let b: Vec<MvPoly> = b.iter().map(|p| p.embed(&vars)).collect();
    if !congruent_to_e0(&b, &nf)? {
        return Err(Error::NotInIdealForm("shrunk complement".into()));
    }
    Ok(IdealRow {
        row: a,
        complement: b,
        ideal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseElem;
    use crate::laurent::LaurentPoly;
    use crate::mvpoly::var_list;

    #[test]
    fn composition_count() {
        assert_eq!(compositions(4, 3).len(), 15);
        assert_eq!(multinomial(&[2, 1, 1]), 12);
    }

    #[test]
    fn trivial_row() {
        let one = LaurentPoly::one();
        let z = LaurentPoly::zero();
        let b = shrink_complement(&[one.clone(), z.clone(), z.clone()], &[one.clone(), z.clone(), z.clone()]).unwrap();
        assert_eq!(b, vec![one, z.clone(), z]);
    }

    #[test]
    fn polynomial_example_mod_u() {
        let q = LocalBase::Rationals;
        let vars = var_list(&["u"]);
        let u = MvPoly::var_named(&vars, "u");
        let one = MvPoly::constant(vars.clone(), BaseElem::one());
        let zero = MvPoly::zero(vars.clone());
        // a = (1 + u^2, u, 0), c = (1, -u, 0)
        let a = vec![one.add(&u.mul(&u)), u.clone(), zero.clone()];
        let c = vec![one.clone(), u.neg(), u.clone()];
        let res = shrink_to_ideal_row(&a, &c, &[u.clone()], q).unwrap();
        let s = res.row.iter().zip(&res.complement).fold(zero.clone(), |acc, (x, y)| acc.add(&x.mul(y)));
        assert_eq!(s, one);
        assert!(res.complement[1].coeff_of(&[]).is_zero());
        let bad = shrink_to_ideal_row(&[u.clone(), one.clone(), zero.clone()], &[zero.clone(), one.clone(), zero], &[u], q);
        assert!(matches!(bad, Err(Error::NotInIdealForm(_))));
    }
}
