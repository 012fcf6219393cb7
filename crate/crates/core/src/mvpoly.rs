//! Sparse multivariate polynomials over a [`LocalBase`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::base::{BaseElem, LocalBase};
use crate::error::Result;
use crate::ring::RingElem;

pub type Exponents = Vec<u32>;

/// Map from exponent vectors to nonzero coefficients, over an ordered list
/// of variable names. Polynomials over different variable lists are merged
/// onto the union list (left operand's order first) before any operation.
#[derive(Clone, Debug, Default)]
pub struct MvPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Exponents, BaseElem>,
}

impl MvPoly {
    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        MvPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<Vec<String>>, c: BaseElem) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.add_term(vec![0; n], &c);
        p
    }

    pub fn var(vars: Arc<Vec<String>>, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, &BaseElem::one());
        p
    }

    /// The variable called `name`; panics if the list does not contain it.
    pub fn var_named(vars: &Arc<Vec<String>>, name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(vars.clone(), idx)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, BaseElem)>>(vars: Arc<Vec<String>>, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent vector length");
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: &BaseElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.add(c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BaseElem)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> BaseElem {
        self.terms.get(e).cloned().unwrap_or_else(BaseElem::zero)
    }

    /// Coefficient of a monomial given as `(variable name, exponent)` pairs.
    pub fn coeff_of(&self, monomial: &[(&str, u32)]) -> BaseElem {
        let mut e = vec![0; self.nvars()];
        for (name, k) in monomial {
            match self.vars.iter().position(|v| v == name) {
                Some(i) => e[i] += k,
                None => return BaseElem::zero(),
            }
        }
        self.coeff(&e)
    }

    /// Constant term, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BaseElem> {
        match self.terms.len() {
            0 => Some(BaseElem::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|x| *x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Weighted degree of every term, if they all agree. `None` for zero or
    /// inhomogeneous polynomials.
    pub fn homogeneous_degree(&self, grades: &[u32]) -> Option<u32> {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().zip(grades).map(|(a, g)| a * g).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree(&vec![1; self.nvars()]).is_some()
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable actually occurring.
    pub fn embed(&self, vars: &Arc<Vec<String>>) -> Self {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return MvPoly {
                vars: vars.clone(),
                terms: self.terms.clone(),
            };
        }
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        let mut out = MvPoly::zero(vars.clone());
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, k) in e.iter().enumerate() {
                if *k > 0 {
                    let j = map[i].unwrap_or_else(|| panic!("variable {} missing from target list", self.vars[i]));
                    ne[j] += k;
                }
            }
            out.add_term(ne, c);
        }
        out
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            return (self.clone(), other.embed(&self.vars));
        }
        let mut union = (*self.vars).clone();
        for v in other.vars.iter() {
            if !union.contains(v) {
                union.push(v.clone());
            }
        }
        let union = Arc::new(union);
        (self.embed(&union), other.embed(&union))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (e, c) in b.terms {
            a.add_term(e, &c);
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MvPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut out = MvPoly::zero(a.vars.clone());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &BaseElem) -> Self {
        MvPoly::from_terms(self.vars.clone(), self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MvPoly::constant(self.vars.clone(), BaseElem::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&BaseElem) -> BaseElem) -> Self {
        MvPoly::from_terms(self.vars.clone(), self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn normalized(&self, base: &LocalBase) -> Result<Self> {
        let mut out = MvPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &base.normalize(c.clone())?);
        }
        Ok(out)
    }

    /// The ring map sending variable `i` to `images[i]`; the result lives on
    /// `target` variables.
    pub fn substitute(&self, images: &[MvPoly], target: &Arc<Vec<String>>) -> Self {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let images: Vec<MvPoly> = images.iter().map(|p| p.embed(target)).collect();
        let mut out = MvPoly::zero(target.clone());
        let mut powers: BTreeMap<(usize, u32), MvPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut term = MvPoly::constant(target.clone(), c.clone());
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                let pw = powers.entry((i, *k)).or_insert_with(|| images[i].pow(*k)).clone();
                term = term.mul(&pw);
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Value at a point given in variable-list order.
    pub fn eval(&self, point: &[BaseElem]) -> BaseElem {
        assert_eq!(point.len(), self.nvars(), "one value per variable");
        self.terms.iter().fold(BaseElem::zero(), |acc, (e, c)| {
            let m = e.iter().zip(point).fold(c.clone(), |m, (k, x)| m.mul(&x.pow(*k)));
            acc.add(&m)
        })
    }

    /// Sets the named variables to zero (variables absent from the list are ignored).
    pub fn kill_vars(&self, names: &[String]) -> Self {
        let idx: Vec<usize> = names
            .iter()
            .filter_map(|n| self.vars.iter().position(|v| v == n))
            .collect();
        MvPoly::from_terms(
            self.vars.clone(),
            self.terms
                .iter()
                .filter(|(e, _)| idx.iter().all(|&i| e[i] == 0))
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Names of the variables that actually occur.
    pub fn support_vars(&self) -> Vec<String> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }
}

impl PartialEq for MvPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl RingElem for MvPoly {
    fn zero() -> Self {
        MvPoly::default()
    }
    fn one() -> Self {
        MvPoly::constant(Arc::new(Vec::new()), BaseElem::one())
    }
    fn is_zero(&self) -> bool {
        MvPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        MvPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MvPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MvPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        MvPoly::neg(self)
    }
}

impl fmt::Display for MvPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, k)| if *k == 1 { self.vars[i].clone() } else { format!("{}^{k}", self.vars[i]) })
                .collect();
            let c = c.to_string();
            let c = c.strip_suffix("/1").unwrap_or(&c).to_string();
            match (mono.is_empty(), c.as_str()) {
                (true, _) => write!(f, "{c}")?,
                (false, "1") => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{c}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Union of the variable lists, in order of first appearance.
pub fn union_vars<'a>(ps: impl IntoIterator<Item = &'a MvPoly>) -> Arc<Vec<String>> {
    let mut vars: Vec<String> = Vec::new();
    for p in ps {
        for v in p.vars().iter() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    Arc::new(vars)
}

/// Convenience for building variable lists.
pub fn var_list<S: AsRef<str>>(names: &[S]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation() {
        let vars = var_list(&["x", "y"]);
        let x = MvPoly::var_named(&vars, "x");
        let y = MvPoly::var_named(&vars, "y");
        let two_x = x.scale(&BaseElem::from(2));
        assert_eq!(x.add(&y).add(&x.sub(&y)), two_x);
    }

    #[test]
    fn xy_plus_zw_from_separate_lists() {
        let x = MvPoly::var_named(&var_list(&["x"]), "x");
        let y = MvPoly::var_named(&var_list(&["y"]), "y");
        let z = MvPoly::var_named(&var_list(&["z"]), "z");
        let w = MvPoly::var_named(&var_list(&["w"]), "w");
        let q = x.mul(&y).add(&z.mul(&w));
        assert_eq!(q.num_terms(), 2);
        assert_eq!(q.coeff_of(&[("x", 1), ("y", 1)]), BaseElem::one());
        assert_eq!(q.coeff_of(&[("z", 1), ("w", 1)]), BaseElem::one());
        assert_eq!(q.total_degree(), Some(2));
        assert!(q.is_homogeneous());
    }

    #[test]
    fn unit_denominator_over_localized_ring() {
        let z2 = LocalBase::localized_at(2).unwrap();
        let vars = var_list(&["x"]);
        let x = MvPoly::var_named(&vars, "x");
        let third = x.scale(&z2.ratio(1, 3).unwrap());
        let back = third.scale(&z2.int(3)).normalized(&z2).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn substitution_and_kill() {
        let vars = var_list(&["a", "b"]);
        let a = MvPoly::var_named(&vars, "a");
        let b = MvPoly::var_named(&vars, "b");
        let f = a.mul(&b).add(&b.mul(&b));
        assert_eq!(f.kill_vars(&["a".into()]), b.mul(&b));
        let target = var_list(&["s"]);
        let s = MvPoly::var_named(&target, "s");
        let img = f.substitute(&[s.clone(), s.clone()], &target);
        assert_eq!(img, s.mul(&s).scale(&BaseElem::from(2)));
    }

    #[test]
    fn inhomogeneous_detected() {
        let vars = var_list(&["x", "y"]);
        let x = MvPoly::var_named(&vars, "x");
        let y = MvPoly::var_named(&vars, "y");
        assert!(!x.mul(&x).sub(&y).is_homogeneous());
        assert_eq!(x.mul(&y).homogeneous_degree(&[1, 2]), Some(3));
    }
}
