//! Buchberger's algorithm with the normal selection strategy and both of
//! Buchberger's criteria.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use super::order::MonomialOrder;
use crate::base::BaseElem;
use crate::error::{Error, Result};
use crate::mvpoly::MvPoly;

pub(crate) type Mono = Vec<u32>;

/// Terms in ranking order, sorted descending by the monomial order.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Poly {
    pub terms: Vec<(Mono, BaseElem)>,
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

pub(crate) fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

impl Poly {
    pub fn from_mvpoly(p: &MvPoly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Mono, BaseElem)> = p.terms().map(|(e, c)| (order.permute(e), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp_ranked(&b.0, &a.0));
        Poly { terms }
    }

    pub fn to_mvpoly(&self, vars: &Arc<Vec<String>>, order: &MonomialOrder) -> MvPoly {
        MvPoly::from_terms(vars.clone(), self.terms.iter().map(|(m, c)| (order.unpermute(m), c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BaseElem {
        &self.terms[0].1
    }

    pub fn monic(mut self) -> Self {
        if let Some(inv) = self.terms.first().and_then(|t| t.1.field_inverse()) {
            for t in &mut self.terms {
                t.1 = t.1.mul(&inv);
            }
        }
        self
    }

    /// `self - c * m * g`.
    fn sub_scaled(&self, c: &BaseElem, m: &[u32], g: &Poly, order: &MonomialOrder) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let shifted = g.terms.iter().map(|(gm, gc)| {
            let mm: Mono = gm.iter().zip(m).map(|(x, y)| x + y).collect();
            (mm, gc.mul(c))
        });
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.cmp_ranked(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap()),
                Ordering::Less => {
                    let (mm, cc) = b.next().unwrap();
                    out.push((mm, cc.neg()));
                }
                Ordering::Equal => {
                    let (mm, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let d = x.sub(&y);
                    if !d.is_zero() {
                        out.push((mm, d));
                    }
                }
            }
        }
        Poly { terms: out }
    }
}

/// Full reduction of `p` by `basis`.
pub(crate) fn reduce(p: &Poly, basis: &[Poly], order: &MonomialOrder) -> Poly {
    let mut p = p.clone();
    let mut rem: Vec<(Mono, BaseElem)> = Vec::new();
    while !p.terms.is_empty() {
        let (m, c) = &p.terms[0];
        match basis.iter().find(|g| divides(g.lm(), m)) {
            Some(g) => {
                let q: Mono = m.iter().zip(g.lm()).map(|(x, y)| x - y).collect();
                let factor = c.mul(&g.lc().field_inverse().expect("nonzero leading coefficient"));
                p = p.sub_scaled(&factor, &q, g, order);
            }
            None => {
                let t = p.terms.remove(0);
                rem.push(t);
            }
        }
    }
    Poly { terms: rem }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbOptions {
    /// Give up after this many S-pairs have been reduced.
    pub pair_budget: usize,
    /// For homogeneous input: skip S-pairs whose lcm exceeds this degree. The
    /// result then agrees with the full basis in degrees up to the bound.
    pub degree_bound: Option<u32>,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            pair_budget: 200_000,
            degree_bound: None,
        }
    }
}

impl GbOptions {
    pub fn truncated(bound: u32) -> Self {
        GbOptions {
            degree_bound: Some(bound),
            ..Default::default()
        }
    }
}

/// A reduced Groebner basis (reduced up to `degree_bound` when truncated).
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub vars: Arc<Vec<String>>,
    pub order: MonomialOrder,
    pub degree_bound: Option<u32>,
    pub pairs_reduced: usize,
    pub(crate) polys: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn elements(&self) -> Vec<MvPoly> {
        self.polys.iter().map(|p| p.to_mvpoly(&self.vars, &self.order)).collect()
    }

    /// Leading exponent vectors, in the caller's variable order.
    pub fn leading_monomials(&self) -> Vec<Vec<u32>> {
        self.polys.iter().map(|p| self.order.unpermute(p.lm())).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| degree(p.lm()) == 0)
    }

    /// Ideal membership; exact only below the degree bound when truncated.
    pub fn contains(&self, f: &MvPoly) -> bool {
        normal_form(f, self).is_zero()
    }
}

fn check_field(ps: &[MvPoly]) -> Result<()> {
    for p in ps {
        for (_, c) in p.terms() {
            if let BaseElem::Mod { modulus, .. } = c {
                if !crate::base::is_prime(*modulus) {
                    return Err(Error::NotPrime(*modulus));
                }
            }
        }
    }
    Ok(())
}

/// Groebner basis of the ideal generated by `gens` over the field of their
/// coefficients. All generators must share one variable list.
pub fn buchberger(gens: &[MvPoly], order: &MonomialOrder, opts: &GbOptions) -> Result<GroebnerBasis> {
    let vars = gens
        .first()
        .map(|p| p.vars().clone())
        .unwrap_or_else(|| Arc::new((0..order.nvars()).map(|i| format!("v{i}")).collect()));
    if vars.len() != order.nvars() {
        return Err(Error::InvalidInput(format!(
            "order on {} variables for a ring with {}",
            order.nvars(),
            vars.len()
        )));
    }
    check_field(gens)?;
    if opts.degree_bound.is_some() {
        if let Some(i) = gens.iter().position(|g| !g.is_homogeneous()) {
            return Err(Error::NonHomogeneous {
                index: i,
                relation: gens[i].to_string(),
            });
        }
    }
    let gens: Vec<Poly> = gens
        .iter()
        .map(|g| Poly::from_mvpoly(&g.embed(&vars), order).monic())
        .filter(|p| !p.is_zero())
        .collect();

    let mut basis: Vec<Poly> = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut reduced = 0usize;
    let add = |basis: &mut Vec<Poly>, pairs: &mut BTreeSet<(usize, usize)>, p: Poly| {
        let j = basis.len();
        for i in 0..j {
            pairs.insert((i, j));
        }
        basis.push(p);
    };
    for g in gens {
        let r = reduce(&g, &basis, order);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r.monic());
        }
    }

    loop {
        // normal selection: the pair with the smallest lcm
        let next = pairs
            .iter()
            .map(|&(i, j)| (lcm(basis[i].lm(), basis[j].lm()), (i, j)))
            .filter(|(l, _)| opts.degree_bound.map_or(true, |d| degree(l) <= d))
            .min_by(|a, b| order.cmp_ranked(&a.0, &b.0).then(a.1.cmp(&b.1)));
        let Some((l, (i, j))) = next else { break };
        pairs.remove(&(i, j));
        if coprime(basis[i].lm(), basis[j].lm()) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lm(), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        if reduced >= opts.pair_budget {
            return Err(Error::OracleTimeout(reduced));
        }
        reduced += 1;
        let (gi, gj) = (&basis[i], &basis[j]);
        let mi: Mono = l.iter().zip(gi.lm()).map(|(x, y)| x - y).collect();
        let mj: Mono = l.iter().zip(gj.lm()).map(|(x, y)| x - y).collect();
        // both are monic
        let zero = Poly { terms: Vec::new() };
        let s = zero
            .sub_scaled(&BaseElem::one().neg(), &mi, gi, order)
            .sub_scaled(&BaseElem::one(), &mj, gj, order);
        let r = reduce(&s, &basis, order);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r.monic());
        }
    }

    Ok(GroebnerBasis {
        vars,
        order: order.clone(),
        degree_bound: opts.degree_bound,
        pairs_reduced: reduced,
        polys: interreduce(basis, order),
    })
}

fn interreduce(basis: Vec<Poly>, order: &MonomialOrder) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, q)| {
            j != i && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let head = Poly {
            terms: vec![minimal[i].terms[0].clone()],
        };
        let tail = Poly {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let mut r = reduce(&tail, &others, order);
        r.terms.insert(0, head.terms[0].clone());
        out.push(r);
    }
    out.sort_by(|a, b| order.cmp_ranked(a.lm(), b.lm()));
    out
}

/// Remainder of `f` on division by the basis. `f` may use any subset of the
/// basis variables.
pub fn normal_form(f: &MvPoly, gb: &GroebnerBasis) -> MvPoly {
    let p = Poly::from_mvpoly(&f.embed(&gb.vars), &gb.order);
    reduce(&p, &gb.polys, &gb.order).to_mvpoly(&gb.vars, &gb.order)
}

/// `f / g` when `g` divides `f` exactly.
pub fn exact_divide(f: &MvPoly, g: &MvPoly) -> Option<MvPoly> {
    let vars = f.add(g).vars().clone();
    let order = MonomialOrder::degrevlex(vars.len());
    let gp = Poly::from_mvpoly(&g.embed(&vars), &order);
    if gp.is_zero() {
        return None;
    }
    let ginv = gp.lc().field_inverse()?;
    let mut p = Poly::from_mvpoly(&f.embed(&vars), &order);
    let mut q: Vec<(Mono, BaseElem)> = Vec::new();
    while !p.is_zero() {
        if !divides(gp.lm(), p.lm()) {
            return None;
        }
        let m: Mono = p.lm().iter().zip(gp.lm()).map(|(x, y)| x - y).collect();
        let c = p.lc().mul(&ginv);
        p = p.sub_scaled(&c, &m, &gp, &order);
        q.push((m, c));
    }
    Some(Poly { terms: q }.to_mvpoly(&vars, &order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mvpoly::var_list;

    fn xyz() -> (MvPoly, MvPoly, MvPoly) {
        let v = var_list(&["x", "y", "z"]);
        (MvPoly::var_named(&v, "x"), MvPoly::var_named(&v, "y"), MvPoly::var_named(&v, "z"))
    }

    #[test]
    fn twisted_cubic() {
        let (x, y, z) = xyz();
        let gens = vec![y.sub(&x.mul(&x)), z.sub(&x.pow(3))];
        let gb = buchberger(&gens, &MonomialOrder::lex(3), &GbOptions::default()).unwrap();
        assert!(gb.contains(&y.pow(3).sub(&z.mul(&z))));
        assert!(!gb.contains(&y));
        for g in &gens {
            assert!(normal_form(g, &gb).is_zero());
        }
    }

    #[test]
    fn unit_ideal_detected() {
        let (x, y, _) = xyz();
        let one = MvPoly::constant(x.vars().clone(), BaseElem::one());
        let gb = buchberger(&[x.mul(&y).sub(&one), x.clone()], &MonomialOrder::degrevlex(3), &GbOptions::default()).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.len(), 1);
    }

    #[test]
    fn reduced_basis_is_canonical() {
        let (x, y, z) = xyz();
        let o = MonomialOrder::degrevlex(3);
        let a = vec![x.mul(&y).sub(&z.mul(&z)), y.mul(&y).sub(&x.mul(&z))];
        let b = vec![a[0].add(&a[1]), a[1].clone()];
        let ga = buchberger(&a, &o, &GbOptions::default()).unwrap();
        let gb = buchberger(&b, &o, &GbOptions::default()).unwrap();
        assert_eq!(ga.elements(), gb.elements());
    }

    #[test]
    fn budget_exhaustion() {
        let (x, y, z) = xyz();
        let gens = vec![x.pow(2).sub(&y.mul(&z)), x.mul(&y).sub(&z.mul(&z)), y.pow(2).sub(&x.mul(&z).add(&z.mul(&z)))];
        let opts = GbOptions {
            pair_budget: 1,
            degree_bound: None,
        };
        assert!(matches!(buchberger(&gens, &MonomialOrder::degrevlex(3), &opts), Err(Error::OracleTimeout(1))));
    }

    #[test]
    fn modular_coefficients() {
        let (x, y, _) = xyz();
        let two = BaseElem::modular(2, 3);
        let f = x.scale(&two).add(&y.scale(&BaseElem::modular(1, 3)));
        let gb = buchberger(&[f], &MonomialOrder::degrevlex(3), &GbOptions::default()).unwrap();
        // monic: x + 2y
        assert_eq!(gb.elements()[0].coeff(&[0, 1, 0]), BaseElem::modular(2, 3));
    }

    #[test]
    fn division() {
        let (x, y, _) = xyz();
        let g = x.add(&y);
        let f = g.mul(&x.sub(&y));
        assert_eq!(exact_divide(&f, &g).unwrap(), x.sub(&y));
        assert!(exact_divide(&f.add(&x), &g).is_none());
    }
}
