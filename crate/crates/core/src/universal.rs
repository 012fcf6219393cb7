//! Presentations of the universal complete intersections `B_{r,k,n}`, the
//! maps out of them determined by a normalized row, the chain of quotients
//! used to show the relations form a regular sequence, and the triangular
//! data for the localization step.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::base::{BaseElem, LocalBase};
use crate::batch;
use crate::error::{Error, Result};
use crate::gb::{buchberger, normal_form, GbOptions};
use crate::json::{self, TermJson};
use crate::laurent::LaurentPoly;
use crate::mvpoly::MvPoly;

pub fn x_name(i: usize, j: usize) -> String {
    format!("x{i}_{j}")
}

pub fn y_name(i: usize, j: usize) -> String {
    format!("y{i}_{j}")
}

/// `x_{i,j}, y_{i,j}` for `0 <= i <= r`, `0 <= j <= n`, ordered
/// `x_{0,0}, y_{0,0}, x_{0,1}, y_{0,1}, .., x_{1,0}, ..`. The Groebner
/// engine treats the first entry as the smallest variable.
pub fn universal_vars(r: usize, n: usize) -> Arc<Vec<String>> {
    let mut v = Vec::with_capacity(2 * (r + 1) * (n + 1));
    for i in 0..=r {
        for j in 0..=n {
            v.push(x_name(i, j));
            v.push(y_name(i, j));
        }
    }
    Arc::new(v)
}

/// `p_l = sum_i sum_{j <= l} x_{i,j} y_{i,l-j}` over `vars`, which must
/// contain every variable involved.
pub fn p_ell(vars: &Arc<Vec<String>>, r: usize, ell: usize, one: &BaseElem) -> MvPoly {
    let idx = |name: String| vars.iter().position(|v| *v == name).unwrap_or_else(|| panic!("missing {name}"));
    MvPoly::from_terms(
        vars.clone(),
        (0..=r).flat_map(|i| {
            (0..=ell).map(move |j| (i, j)).map(|(i, j)| {
                let mut e = vec![0; vars.len()];
                e[idx(x_name(i, j))] += 1;
                e[idx(y_name(i, ell - j))] += 1;
                (e, one.clone())
            })
        }),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresVar {
    pub name: String,
    #[serde(default = "one_u32")]
    pub grade: u32,
}

fn one_u32() -> u32 {
    1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresMeta {
    pub r: usize,
    pub k: usize,
    pub n: usize,
}

/// `base[vars] / (relations)`, with `inverted` adjoined inverses.
#[derive(Clone, Debug, PartialEq)]
pub struct RingPresentation {
    pub base: LocalBase,
    pub vars: Vec<PresVar>,
    pub relations: Vec<MvPoly>,
    pub inverted: Vec<MvPoly>,
    pub meta: Option<PresMeta>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    schema: String,
    base: LocalBase,
    vars: Vec<PresVar>,
    relations: Vec<Vec<TermJson>>,
    #[serde(default)]
    inverted: Vec<Vec<TermJson>>,
    #[serde(default)]
    meta: Option<PresMeta>,
}

impl RingPresentation {
    pub fn polynomial_ring(base: LocalBase, names: &[String]) -> Self {
        RingPresentation {
            base,
            vars: names.iter().map(|n| PresVar { name: n.clone(), grade: 1 }).collect(),
            relations: Vec::new(),
            inverted: Vec::new(),
            meta: None,
        }
    }

    pub fn var_names(&self) -> Arc<Vec<String>> {
        Arc::new(self.vars.iter().map(|v| v.name.clone()).collect())
    }

    pub fn grades(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.grade).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let names = self.var_names();
        let conv = |v: &[MvPoly]| v.iter().map(|p| json::mvpoly_to_json(&p.embed(&names))).collect();
        serde_json::to_value(PresentationJson {
            schema: format!("{}/RingPresentation", json::SCHEMA_VERSION),
            base: self.base,
            vars: self.vars.clone(),
            relations: conv(&self.relations),
            inverted: conv(&self.inverted),
            meta: self.meta,
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let doc: PresentationJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let names: Arc<Vec<String>> = Arc::new(doc.vars.iter().map(|v| v.name.clone()).collect());
        let conv = |v: &[Vec<TermJson>]| -> Result<Vec<MvPoly>> {
            v.iter()
                .map(|t| json::mvpoly_from_json(&names, t)?.normalized(&doc.base))
                .collect()
        };
        Ok(RingPresentation {
            base: doc.base,
            relations: conv(&doc.relations)?,
            inverted: conv(&doc.inverted)?,
            vars: doc.vars,
            meta: doc.meta,
        })
    }
}

/// `B_{r,k,n}`: relations `p_0, .., p_n` without `p_k`, in increasing order.
pub fn build_presentation(r: usize, k: usize, n: usize, base: LocalBase) -> Result<RingPresentation> {
    if r < 2 {
        return Err(Error::InvalidInput(format!("need r >= 2, got {r}")));
    }
    let vars = universal_vars(r, n);
    let one = base.one();
    Ok(RingPresentation {
        base,
        vars: vars.iter().map(|n| PresVar { name: n.clone(), grade: 1 }).collect(),
        relations: (0..=n).filter(|&m| m != k).map(|m| p_ell(&vars, r, m, &one)).collect(),
        inverted: Vec::new(),
        meta: Some(PresMeta { r, k, n }),
    })
}

/// `A_{r,k,n}`: `B_{r,k,n}` with `p_k` inverted (`k <= n`).
pub fn build_localized_presentation(r: usize, k: usize, n: usize, base: LocalBase) -> Result<RingPresentation> {
    if k > n {
        return Err(Error::InvalidInput(format!("p_{k} needs n >= {k}")));
    }
    let mut p = build_presentation(r, k, n, base)?;
    let vars = p.var_names();
    p.inverted.push(p_ell(&vars, r, k, &base.one()));
    Ok(p)
}

/// A ring map given by the images of the source generators, all living on
/// the target's variables.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMap {
    pub source: RingPresentation,
    pub target: RingPresentation,
    pub images: Vec<MvPoly>,
}

impl AlgebraMap {
    pub fn apply(&self, f: &MvPoly) -> MvPoly {
        f.embed(&self.source.var_names()).substitute(&self.images, &self.target.var_names())
    }

    /// Whether every source relation lands in the target's relation ideal,
    /// and every inverted element lands on a unit of the target base ring
    /// when the target is a plain polynomial ring.
    pub fn verify(&self) -> Result<bool> {
        let imgs: Vec<MvPoly> = self.source.relations.iter().map(|f| self.apply(f)).collect();
        if self.target.relations.is_empty() {
            if !imgs.iter().all(MvPoly::is_zero) {
                return Ok(false);
            }
        } else {
            let names = self.target.var_names();
            let gens: Vec<MvPoly> = self.target.relations.iter().map(|p| p.embed(&names)).collect();
            let gb = buchberger(&gens, &default_order(names.len()), &GbOptions::default())?;
            if !imgs.iter().all(|p| normal_form(p, &gb).is_zero()) {
                return Ok(false);
            }
        }
        if self.target.relations.is_empty() && self.target.inverted.is_empty() {
            for u in &self.source.inverted {
                let img = self.apply(u);
                match img.as_constant() {
                    Some(c) if self.target.base.is_unit(&c) => {}
                    _ => return Ok(false),
                }
            }
        }
        Ok(true)
    }
}

/// Degrevlex with the first listed variable smallest.
pub fn default_order(nvars: usize) -> crate::gb::MonomialOrder {
    crate::gb::MonomialOrder::with_ranking(crate::gb::OrderKind::Degrevlex, (0..nvars).rev().collect())
}

/// The transition map `B_{r,k,n} -> B_{r,k,n+1}` of the colimit.
pub fn chain_map(r: usize, k: usize, n: usize, base: LocalBase) -> Result<AlgebraMap> {
    let source = build_presentation(r, k, n, base)?;
    let target = build_presentation(r, k, n + 1, base)?;
    let tv = target.var_names();
    let images = source.vars.iter().map(|v| MvPoly::var_named(&tv, &v.name)).collect();
    Ok(AlgebraMap { source, target, images })
}

/// Images of the `p_m` under `x_{i,j} -> coeff_j(x_i)`, `y_{i,j} -> coeff_j(y_i)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniversalMap {
    pub r: usize,
    pub k: usize,
    pub max_degree: usize,
    /// Nonzero images only.
    #[serde(with = "elem_map")]
    pub assignment: BTreeMap<String, BaseElem>,
    /// `(m, image of p_m)` for `0 <= m <= 2 * max_degree`.
    #[serde(with = "indexed_elems")]
    pub relation_images: Vec<(usize, BaseElem)>,
}

mod elem_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, BaseElem>, s: S) -> std::result::Result<S::Ok, S::Error> {
        m.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<String, BaseElem>, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| v.parse().map(|x| (k, x)).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod indexed_elems {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[(usize, BaseElem)], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|(m, x)| (*m, x.to_string())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<(usize, BaseElem)>, D::Error> {
        let raw = Vec::<(usize, String)>::deserialize(d)?;
        raw.into_iter()
            .map(|(m, v)| v.parse().map(|x| (m, x)).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl UniversalMap {
    /// Every relation `p_m` (`m != k`) maps to 0 and `p_k` maps to 1.
    pub fn relations_hold(&self) -> bool {
        self.relation_images
            .iter()
            .all(|(m, c)| if *m == self.k { c.is_one() } else { c.is_zero() })
    }

    /// The map restricted to the finite stage `B_{r,k,n}` with `p_k`
    /// inverted, into the base ring.
    pub fn algebra_map(&self, n: usize, base: LocalBase) -> Result<AlgebraMap> {
        if n < stabilization_index(self) {
            return Err(Error::InvalidInput(format!(
                "stage {n} is below the stabilization index {}",
                stabilization_index(self)
            )));
        }
        let source = if self.k <= n {
            build_localized_presentation(self.r, self.k, n, base)?
        } else {
            build_presentation(self.r, self.k, n, base)?
        };
        let target = RingPresentation::polynomial_ring(base, &[]);
        let tv = target.var_names();
        let images = source
            .vars
            .iter()
            .map(|v| MvPoly::constant(tv.clone(), self.assignment.get(&v.name).cloned().unwrap_or_else(BaseElem::zero)))
            .collect();
        Ok(AlgebraMap { source, target, images })
    }
}

/// The map out of `B_{r,k}` classifying a row `x` and complement `y` in
/// `R[t]` with `sum x_i y_i = t^k`.
pub fn universal_map(x: &[LaurentPoly], y: &[LaurentPoly], k: usize) -> Result<UniversalMap> {
    if x.len() != y.len() || x.len() < 3 {
        return Err(Error::InvalidInput("row and complement must have equal length >= 3".into()));
    }
    if x.iter().chain(y).any(|p| !p.is_polynomial()) {
        return Err(Error::InvalidInput("entries must lie in R[t]".into()));
    }
    let s = crate::row::pairing(x, y);
    if s != LaurentPoly::t_pow(k as i64) {
        return Err(Error::NotNormalized {
            k: k as i64,
            found: s.to_string(),
        });
    }
    let r = x.len() - 1;
    let max_degree = x.iter().chain(y).filter_map(|p| p.degree()).max().unwrap_or(0).max(0) as usize;
    let mut assignment = BTreeMap::new();
    for i in 0..=r {
        for (name, p) in [(x_name as fn(usize, usize) -> String, &x[i]), (y_name, &y[i])] {
            for (e, c) in p.terms() {
                assignment.insert(name(i, e as usize), c.clone());
            }
        }
    }
    // p_m -> sum_i sum_j x_{i,j} y_{i,m-j}, by direct convolution
    let relation_images = (0..=2 * max_degree)
        .map(|m| {
            let mut acc = BaseElem::zero();
            for i in 0..=r {
                for j in 0..=m {
                    acc = acc.add(&x[i].coeff(j as i64).mul(&y[i].coeff((m - j) as i64)));
                }
            }
            (m, acc)
        })
        .collect();
    Ok(UniversalMap {
        r,
        k,
        max_degree,
        assignment,
        relation_images,
    })
}

/// Largest second index of a generator with nonzero image, i.e. the least
/// `n` through which the map factors via `B_{r,k,n}`.
pub fn stabilization_index(map: &UniversalMap) -> usize {
    map.assignment
        .keys()
        .filter_map(|name| name.split('_').nth(1).and_then(|j| j.parse::<usize>().ok()))
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingReport {
    /// Degree of each relation; `None` for a zero relation.
    pub degrees: Vec<Option<u32>>,
    pub degree_zero_part: LocalBase,
}

/// Checks that every relation is homogeneous for the variable grades and that
/// all grades are positive, so the degree-0 part is the base ring.
pub fn grading_check(p: &RingPresentation) -> Result<GradingReport> {
    if let Some(v) = p.vars.iter().find(|v| v.grade == 0) {
        return Err(Error::InvalidInput(format!("variable {} has grade 0", v.name)));
    }
    let names = p.var_names();
    let grades = p.grades();
    let mut degrees = Vec::with_capacity(p.relations.len());
    for (index, f) in p.relations.iter().enumerate() {
        if f.is_zero() {
            degrees.push(None);
            continue;
        }
        match f.embed(&names).homogeneous_degree(&grades) {
            Some(d) => degrees.push(Some(d)),
            None => {
                return Err(Error::NonHomogeneous {
                    index,
                    relation: f.to_string(),
                })
            }
        }
    }
    Ok(GradingReport {
        degrees,
        degree_zero_part: p.base,
    })
}

/// `C_{l,i}`: relations `p_m` for `l <= m <= n`, `m != k`, and `a_0, .., a_i`
/// with `a_j = x_{0,j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainCell {
    pub ell: usize,
    pub i: i64,
    pub presentation: RingPresentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ChainEdge {
    /// `C_{l,i} = C_{l+1,i} / (p_l)`; `relation` is `None` when `l = k`.
    Down { ell: usize, i: i64, relation: Option<usize> },
    /// `C_{l,i} = C_{l,i-1} / (a_i)`.
    Right { ell: usize, i: i64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainGrid {
    pub r: usize,
    pub k: usize,
    pub n: usize,
    pub cells: Vec<ChainCell>,
    pub edges: Vec<ChainEdge>,
}

impl ChainGrid {
    pub fn cell(&self, ell: usize, i: i64) -> Option<&ChainCell> {
        self.cells.iter().find(|c| c.ell == ell && c.i == i)
    }
}

/// All cells `C_{l,i}`, `-1 <= i <= l <= n`, plus the top row `C_{n+1,i}`,
/// `-1 <= i <= n`, with the quotient maps between neighbours.
pub fn cchain_build(r: usize, k: usize, n: usize, base: LocalBase) -> Result<ChainGrid> {
    let full = build_presentation(r, k, n, base)?;
    let vars = full.var_names();
    let one = base.one();
    let mut idx: Vec<(usize, i64)> = Vec::new();
    for ell in 0..=n + 1 {
        let top = if ell == n + 1 { n } else { ell };
        for i in -1..=top as i64 {
            idx.push((ell, i));
        }
    }
    let cells = batch::par_map(&idx, |&(ell, i)| {
        let mut relations: Vec<MvPoly> = (ell..=n).filter(|&m| m != k).map(|m| p_ell(&vars, r, m, &one)).collect();
        for j in 0..=i {
            relations.push(MvPoly::var_named(&vars, &x_name(0, j as usize)));
        }
        ChainCell {
            ell,
            i,
            presentation: RingPresentation {
                relations,
                meta: Some(PresMeta { r, k, n }),
                ..full.clone()
            },
        }
    });
    let mut edges = Vec::new();
    for &(ell, i) in &idx {
        if ell <= n {
            edges.push(ChainEdge::Down {
                ell,
                i,
                relation: (ell != k).then_some(ell),
            });
        }
        if i >= 0 {
            edges.push(ChainEdge::Right { ell, i });
        }
    }
    Ok(ChainGrid { r, k, n, cells, edges })
}

/// Triangular data `f_m = a t_m - g_m(t_0, .., t_{m-1})` for the cell
/// `(l, i)`: the ring is `base[T]` where `T` is `S` without `a_0, .., a_{i-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizationData {
    pub r: usize,
    pub k: usize,
    pub n: usize,
    pub ell: usize,
    pub i: usize,
    /// All variables of the ring, the `t`s included.
    pub vars: Arc<Vec<String>>,
    /// `t_m` as the name of the `b` it renames.
    pub t: Vec<String>,
    /// Index `j` of `b_j = y_{0,j}` for each `t_m`.
    pub t_index: Vec<usize>,
    /// Index of the `p` behind each `f_m`.
    pub f_index: Vec<usize>,
    pub f: Vec<MvPoly>,
    pub a: String,
}

impl LocalizationData {
    /// Variables of `A`: the ring variables other than the `t`s.
    pub fn coefficient_vars(&self) -> Vec<String> {
        self.vars.iter().filter(|v| !self.t.contains(v)).cloned().collect()
    }

    /// `g_m = a t_m - f_m`.
    pub fn g(&self) -> Vec<MvPoly> {
        let a = MvPoly::var_named(&self.vars, &self.a);
        self.t
            .iter()
            .zip(&self.f)
            .map(|(t, f)| a.mul(&MvPoly::var_named(&self.vars, t)).sub(f))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": format!("{}/LocalizationData", json::SCHEMA_VERSION),
            "instance": {"r": self.r, "k": self.k, "n": self.n, "ell": self.ell, "i": self.i},
            "vars": &*self.vars,
            "t": self.t,
            "a": self.a,
            "f_index": self.f_index,
            "f": self.f.iter().map(|p| json::mvpoly_to_json(&p.embed(&self.vars))).collect::<Vec<_>>(),
        })
    }
}

fn check_triangular(d: &LocalizationData) -> Result<()> {
    let ti: Vec<usize> = d.t.iter().map(|t| d.vars.iter().position(|v| v == t).expect("t in ring")).collect();
    let ai = d.vars.iter().position(|v| *v == d.a).expect("a in ring");
    for (m, f) in d.f.iter().enumerate() {
        for (e, c) in f.terms() {
            for (later, &j) in ti.iter().enumerate().skip(m + 1) {
                if e[j] > 0 {
                    return Err(Error::TriangularityViolation(format!("t_{later} = {} occurs in f_{m}", d.t[later])));
                }
            }
            if e[ti[m]] > 0 {
                let deg: u32 = e.iter().sum();
                if !(deg == 2 && e[ti[m]] == 1 && e[ai] == 1 && c.is_one()) {
                    return Err(Error::TriangularityViolation(format!(
                        "t_{m} = {} occurs in f_{m} outside the monomial {}*{}",
                        d.t[m], d.a, d.t[m]
                    )));
                }
            }
        }
        let mut want = vec![0; d.vars.len()];
        want[ai] = 1;
        want[ti[m]] += 1;
        if !f.coeff(&want).is_one() {
            return Err(Error::TriangularityViolation(format!("f_{m} lacks the monomial {}*{}", d.a, d.t[m])));
        }
    }
    Ok(())
}

/// Chooses `t`, `f` and `a = a_i` for the cell `(l, i)` following the case
/// split on the position of `k`, and checks the triangular shape.
pub fn select_localization_data(r: usize, k: usize, n: usize, ell: usize, i: usize) -> Result<LocalizationData> {
    if r < 2 || i > ell || ell > n {
        return Err(Error::InvalidInput(format!("need r >= 2 and 0 <= i <= l <= n, got r={r} i={i} l={ell} n={n}")));
    }
    let all = universal_vars(r, n);
    let killed: Vec<String> = (0..i).map(|j| x_name(0, j)).collect();
    let vars: Arc<Vec<String>> = Arc::new(all.iter().filter(|v| !killed.contains(v)).cloned().collect());
    let one = BaseElem::one();
    let (t_index, f_index): (Vec<usize>, Vec<usize>) = if ell <= k && k <= n {
        (0..n - ell)
            .map(|m| if m < k - ell { (ell + m - i, ell + m) } else { (ell + m + 1 - i, ell + m + 1) })
            .unzip()
    } else {
        (0..=n - ell).map(|m| (ell + m - i, ell + m)).unzip()
    };
    let f = f_index
        .iter()
        .map(|&m| p_ell(&all, r, m, &one).kill_vars(&killed).embed(&vars))
        .collect();
    let d = LocalizationData {
        r,
        k,
        n,
        ell,
        i,
        t: t_index.iter().map(|&j| y_name(0, j)).collect(),
        t_index,
        f_index,
        f,
        a: x_name(0, i),
        vars,
    };
    check_triangular(&d)?;
    Ok(d)
}
