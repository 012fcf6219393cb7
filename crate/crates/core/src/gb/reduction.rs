use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::quadric::quadric_rank;
use crate::error::{Error, Result};
use crate::mvpoly::{var_list, MvPoly};
use crate::universal::{p_ell, universal_vars, x_name, y_name};

/// A map from source variables to target variables or 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableReduction {
    pub source: Arc<Vec<String>>,
    pub target: Arc<Vec<String>>,
    pub assign: Vec<Option<usize>>,
}

impl VariableReduction {
    /// Sends each named source variable to the named target variable and
    /// everything else to 0.
    pub fn from_pairs(source: &Arc<Vec<String>>, pairs: &[(String, String)]) -> Result<Self> {
        let mut target: Vec<String> = Vec::new();
        let mut assign = vec![None; source.len()];
        for (s, t) in pairs {
            let i = source
                .iter()
                .position(|v| v == s)
                .ok_or_else(|| Error::InvalidInput(format!("unknown source variable {s}")))?;
            let j = match target.iter().position(|v| v == t) {
                Some(j) => j,
                None => {
                    target.push(t.clone());
                    target.len() - 1
                }
            };
            assign[i] = Some(j);
        }
        Ok(VariableReduction {
            source: source.clone(),
            target: Arc::new(target),
            assign,
        })
    }

    pub fn identity(vars: &Arc<Vec<String>>) -> Self {
        VariableReduction {
            source: vars.clone(),
            target: vars.clone(),
            assign: (0..vars.len()).map(Some).collect(),
        }
    }

    pub fn zero(source: &Arc<Vec<String>>) -> Self {
        VariableReduction {
            source: source.clone(),
            target: Arc::new(Vec::new()),
            assign: vec![None; source.len()],
        }
    }
}

/// Monomial-wise substitution: monomials touching a variable sent to 0 vanish.
pub fn apply_variable_reduction(phi: &VariableReduction, f: &MvPoly) -> MvPoly {
    let f = f.embed(&phi.source);
    let m = phi.target.len();
    MvPoly::from_terms(
        phi.target.clone(),
        f.terms().filter_map(|(e, c)| {
            let mut out = vec![0; m];
            for (i, k) in e.iter().enumerate() {
                if *k > 0 {
                    out[phi.assign[i]?] += k;
                }
            }
            Some((out, c.clone()))
        }),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityVerdict {
    /// Which pattern the images match, if any.
    pub case: Option<u8>,
    /// A monomial of `g` with unit coefficient occurring in no `f_i`.
    pub unit_monomial: Option<String>,
    pub image_g: String,
    /// Rank of the image of `g` as a quadratic form over `Q`; at least 3
    /// certifies it irreducible.
    pub image_rank: Option<usize>,
    /// Index of the `f` that maps onto `c_l d_l + e_l f_l` in case 3.
    pub matched_f: Option<usize>,
    pub failure: Option<String>,
}

impl IrreducibilityVerdict {
    pub fn passed(&self) -> bool {
        self.case.is_some() && self.failure.is_none()
    }
}

fn target_poly(phi: &VariableReduction, pairs: &[(&str, &str)]) -> Option<MvPoly> {
    let mut acc = MvPoly::zero(phi.target.clone());
    for (a, b) in pairs {
        if !phi.target.iter().any(|v| v == a) || !phi.target.iter().any(|v| v == b) {
            return None;
        }
        acc = acc.add(&MvPoly::var_named(&phi.target, a).mul(&MvPoly::var_named(&phi.target, b)));
    }
    Some(acc)
}

/// Checks the structural hypotheses of the irreducibility criterion: a unit
/// monomial of `g` outside every `f_i`, and images under `phi` of one of the
/// shapes
///
/// 1. `g -> c0 d0 + e0 f0`, every `f_i -> 0`;
/// 2. `g -> c0 dl + cl d0 + e0 fl + el f0`, every `f_i -> 0`;
/// 3. as in 2, except exactly one `f_j -> cl dl + el fl`.
pub fn irreducibility_precheck(g: &MvPoly, fs: &[MvPoly], phi: &VariableReduction) -> Result<IrreducibilityVerdict> {
    for (index, f) in fs.iter().enumerate() {
        if f.homogeneous_degree(&vec![1; f.nvars()]) != Some(2) {
            return Err(Error::NonHomogeneous {
                index,
                relation: f.to_string(),
            });
        }
    }
    let g = g.embed(&phi.source);
    let fs: Vec<MvPoly> = fs.iter().map(|f| f.embed(&phi.source)).collect();
    let unit_monomial = g
        .terms()
        .find(|(e, c)| (c.is_one() || c.neg().is_one()) && fs.iter().all(|f| f.coeff(e).is_zero()))
        .map(|(e, c)| MvPoly::from_terms(phi.source.clone(), [(e.clone(), c.clone())]).to_string());
    let image_g = apply_variable_reduction(phi, &g);
    let images: Vec<MvPoly> = fs.iter().map(|f| apply_variable_reduction(phi, f)).collect();
    let image_rank = quadric_rank(&image_g).ok();
    let mut verdict = IrreducibilityVerdict {
        case: None,
        unit_monomial,
        image_g: image_g.to_string(),
        image_rank,
        matched_f: None,
        failure: None,
    };
    if verdict.unit_monomial.is_none() {
        verdict.failure = Some("no unit-coefficient monomial of g avoids every f".into());
        return Ok(verdict);
    }
    let case1 = target_poly(phi, &[("c0", "d0"), ("e0", "f0")]);
    let case23 = target_poly(phi, &[("c0", "dl"), ("cl", "d0"), ("e0", "fl"), ("el", "f0")]);
    let h = target_poly(phi, &[("cl", "dl"), ("el", "fl")]);
    let nonzero: Vec<usize> = (0..images.len()).filter(|&i| !images[i].is_zero()).collect();
    if case1.as_ref() == Some(&image_g) {
        if nonzero.is_empty() {
            verdict.case = Some(1);
        } else {
            verdict.failure = Some(format!("f_{} does not map to 0", nonzero[0]));
        }
    } else if case23.as_ref() == Some(&image_g) {
        match nonzero.as_slice() {
            [] => verdict.case = Some(2),
            [j] if h.as_ref() == Some(&images[*j]) => {
                verdict.case = Some(3);
                verdict.matched_f = Some(*j);
            }
            [j, ..] => verdict.failure = Some(format!("f_{j} maps to {}", images[*j])),
        }
    } else {
        verdict.failure = Some(format!("image of g is {image_g}, matching no case"));
    }
    if verdict.failure.is_none() && verdict.image_rank.map_or(true, |r| r < 3) {
        verdict.case = None;
        verdict.failure = Some("image of g has quadric rank below 3".into());
    }
    Ok(verdict)
}

/// The data of the irreducibility step for `p_l` in the cell where
/// `a_0, .., a_i` are killed (`i = -1` kills nothing): `g = p_l`, the `f`s
/// are `p_m` for `l < m <= n`, `m != k`, and `phi` keeps `x_{1,0}, y_{1,0},
/// x_{2,0}, y_{2,0}` (and for `l >= 1` also the index-`l` ones).
pub fn irreducibility_instance(r: usize, k: usize, n: usize, ell: usize, i: i64) -> Result<(MvPoly, Vec<MvPoly>, VariableReduction)> {
    if r < 2 || ell > n || ell == k || i > ell as i64 {
        return Err(Error::InvalidInput(format!("need r >= 2, l <= n, l != k, i <= l; got r={r} k={k} n={n} l={ell} i={i}")));
    }
    let all = universal_vars(r, n);
    let killed: Vec<String> = (0..=i).map(|j| x_name(0, j as usize)).collect();
    let vars: Arc<Vec<String>> = Arc::new(all.iter().filter(|v| !killed.contains(v)).cloned().collect());
    let one = crate::base::BaseElem::one();
    let reduce = |m: usize| p_ell(&all, r, m, &one).kill_vars(&killed).embed(&vars);
    let g = reduce(ell);
    let fs = (ell + 1..=n).filter(|&m| m != k).map(reduce).collect();
    let mut pairs = vec![
        (x_name(1, 0), "c0".to_string()),
        (y_name(1, 0), "d0".to_string()),
        (x_name(2, 0), "e0".to_string()),
        (y_name(2, 0), "f0".to_string()),
    ];
    if ell >= 1 {
        pairs.extend([
            (x_name(1, ell), "cl".to_string()),
            (y_name(1, ell), "dl".to_string()),
            (x_name(2, ell), "el".to_string()),
            (y_name(2, ell), "fl".to_string()),
        ]);
    }
    let phi = VariableReduction::from_pairs(&vars, &pairs)?;
    Ok((g, fs, phi))
}

/// The case the theorem's proof assigns to `(k, n, l)`.
pub fn expected_case(k: usize, n: usize, ell: usize) -> u8 {
    if ell == 0 {
        1
    } else if 2 * ell == k || 2 * ell > n {
        2
    } else {
        3
    }
}

/// Target names used by [`irreducibility_instance`].
pub fn case_targets() -> Arc<Vec<String>> {
    var_list(&["c0", "d0", "e0", "f0", "cl", "dl", "el", "fl"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseElem;

    #[test]
    fn identity_and_zero() {
        let v = var_list(&["x", "y"]);
        let x = MvPoly::var_named(&v, "x");
        let y = MvPoly::var_named(&v, "y");
        let f = x.mul(&y).add(&y.pow(3));
        assert_eq!(apply_variable_reduction(&VariableReduction::identity(&v), &f), f);
        assert!(apply_variable_reduction(&VariableReduction::zero(&v), &f).is_zero());
        let c = MvPoly::constant(v.clone(), BaseElem::from(3));
        assert_eq!(apply_variable_reduction(&VariableReduction::zero(&v), &f.add(&c)).as_constant(), Some(BaseElem::from(3)));
    }

    #[test]
    fn case_one_from_p0() {
        let (g, fs, phi) = irreducibility_instance(2, 1, 1, 0, -1).unwrap();
        let v = irreducibility_precheck(&g, &fs, &phi).unwrap();
        assert_eq!(v.case, Some(1));
        assert_eq!(v.image_rank, Some(4));
    }

    #[test]
    fn case_one_image_with_a0_killed() {
        let (g, _, phi) = irreducibility_instance(2, 1, 0, 0, 0).unwrap();
        let img = apply_variable_reduction(&phi, &g);
        let t = &phi.target;
        let want = MvPoly::var_named(t, "c0").mul(&MvPoly::var_named(t, "d0")).add(&MvPoly::var_named(t, "e0").mul(&MvPoly::var_named(t, "f0")));
        assert_eq!(img, want);
    }

    #[test]
    fn cases_two_and_three() {
        let (g, fs, phi) = irreducibility_instance(2, 0, 2, 1, -1).unwrap();
        let v = irreducibility_precheck(&g, &fs, &phi).unwrap();
        assert_eq!((v.case, v.matched_f), (Some(3), Some(0)));
        let (g, fs, phi) = irreducibility_instance(2, 0, 2, 2, -1).unwrap();
        assert_eq!(irreducibility_precheck(&g, &fs, &phi).unwrap().case, Some(2));
        let (g, fs, phi) = irreducibility_instance(2, 2, 2, 1, -1).unwrap();
        assert_eq!(irreducibility_precheck(&g, &fs, &phi).unwrap().case, Some(2));
    }

    #[test]
    fn missing_unit_monomial_fails() {
        let v = var_list(&["x1_0", "y1_0"]);
        let g = MvPoly::var_named(&v, "x1_0").mul(&MvPoly::var_named(&v, "y1_0"));
        let phi = VariableReduction::identity(&v);
        let verdict = irreducibility_precheck(&g, &[g.clone()], &phi).unwrap();
        assert!(!verdict.passed());
    }
}
