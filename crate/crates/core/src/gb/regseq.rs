use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::engine::{buchberger, exact_divide, normal_form, GbOptions};
use super::hilbert::{expected_ci_series, hilbert_function};
use super::order::{MonomialOrder, OrderKind};
use super::report::{Report, Verdict};
use crate::base::{BaseElem, LocalBase};
use crate::error::{Error, Result};
use crate::mvpoly::{union_vars, MvPoly};
use crate::universal::{build_presentation, default_order};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RegSeqMethod {
    /// Compare the Hilbert function with that of a complete intersection
    /// through `degree`.
    Hilbert { degree: u32 },
    /// Check `(J : p) = J` at every stage.
    Quotient,
}

impl RegSeqMethod {
    pub fn name(&self) -> String {
        match self {
            RegSeqMethod::Hilbert { degree } => format!("hilbert({degree})"),
            RegSeqMethod::Quotient => "quotient".into(),
        }
    }
}

pub(crate) fn require_field(base: &LocalBase) -> Result<()> {
    if base.is_field() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("the Groebner oracle works over Q or F_p, not {base}")))
    }
}

/// The relations of `B_{r,k,n}` in the order `p_n, p_{n-1}, .., p_0` with
/// `p_k` left out, with their indices.
pub fn universal_sequence(r: usize, k: usize, n: usize, base: LocalBase) -> Result<(Vec<usize>, Vec<MvPoly>)> {
    let p = build_presentation(r, k, n, base)?;
    let idx: Vec<usize> = (0..=n).filter(|&m| m != k).collect();
    Ok((idx.into_iter().rev().collect(), p.relations.into_iter().rev().collect()))
}

/// Generators of `(J : g)`, from `(w J + (1 - w) g)` intersected with the
/// polynomial ring and divided by `g`.
pub fn ideal_quotient(j: &[MvPoly], g: &MvPoly, opts: &GbOptions) -> Result<Vec<MvPoly>> {
    let vars = union_vars(j.iter().chain([g]));
    let mut ext = vec!["_w".to_string()];
    ext.extend(vars.iter().cloned());
    let ext = Arc::new(ext);
    let w = MvPoly::var_named(&ext, "_w");
    let one = MvPoly::constant(ext.clone(), unit_like(g));
    let mut gens: Vec<MvPoly> = j.iter().map(|f| w.mul(&f.embed(&ext))).collect();
    gens.push(one.sub(&w).mul(&g.embed(&ext)));
    let n = vars.len();
    let mut ranking = vec![0];
    ranking.extend((1..=n).rev());
    let order = MonomialOrder::with_ranking(OrderKind::Elimination { block: 1 }, ranking);
    let gb = buchberger(&gens, &order, opts)?;
    let g = g.embed(&vars);
    let mut out = Vec::new();
    for h in gb.elements() {
        if h.terms().any(|(e, _)| e[0] > 0) {
            continue;
        }
        let h = MvPoly::from_terms(vars.clone(), h.terms().map(|(e, c)| (e[1..].to_vec(), c.clone())));
        let q = exact_divide(&h, &g).ok_or_else(|| Error::InvalidInput("intersection element not divisible by g".into()))?;
        out.push(q);
    }
    Ok(out)
}

// 1 in the coefficient field of `g`.
fn unit_like(g: &MvPoly) -> BaseElem {
    match g.terms().next() {
        Some((_, BaseElem::Mod { modulus, .. })) => BaseElem::modular(1, *modulus),
        _ => BaseElem::one(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageResult {
    pub stage: usize,
    pub label: String,
    pub quotient_generators: usize,
    /// A generator of `(J : p)` outside `J`, if any.
    pub escapee: Option<String>,
}

/// Checks a sequence of homogeneous polynomials; returns the verdict and a
/// JSON witness.
pub fn check_sequence(
    seq: &[MvPoly],
    labels: &[String],
    method: RegSeqMethod,
    opts: &GbOptions,
) -> Result<(Verdict, serde_json::Value)> {
    let vars = union_vars(seq);
    let seq: Vec<MvPoly> = seq.iter().map(|p| p.embed(&vars)).collect();
    for (index, p) in seq.iter().enumerate() {
        if !p.is_homogeneous() {
            return Err(Error::NonHomogeneous {
                index,
                relation: p.to_string(),
            });
        }
    }
    let order = default_order(vars.len());
    match method {
        RegSeqMethod::Hilbert { degree } => {
            let gb = buchberger(&seq, &order, &GbOptions { degree_bound: Some(degree), ..*opts })?;
            let observed = hilbert_function(&gb, degree)?;
            let degs: Vec<u32> = seq.iter().map(|p| p.total_degree().unwrap_or(0)).collect();
            let expected = expected_ci_series(vars.len(), &degs, degree);
            let ok = !seq.iter().any(MvPoly::is_zero)
                && observed.iter().zip(&expected).all(|(a, b)| num_bigint::BigInt::from(*a) == *b);
            let witness = serde_json::json!({
                "nvars": vars.len(),
                "degrees": degs,
                "observed": observed,
                "expected": expected.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "basis_size": gb.len(),
            });
            Ok((if ok { Verdict::Pass } else { Verdict::Fail }, witness))
        }
        RegSeqMethod::Quotient => {
            let mut stages = Vec::new();
            let mut ok = true;
            for s in 0..seq.len() {
                let g = &seq[s];
                let label = labels.get(s).cloned().unwrap_or_else(|| format!("s{s}"));
                if s == 0 {
                    let escapee = g.is_zero().then(|| "1".to_string());
                    ok &= escapee.is_none();
                    stages.push(StageResult {
                        stage: 0,
                        label,
                        quotient_generators: 0,
                        escapee,
                    });
                    continue;
                }
                let j = &seq[..s];
                let quotient = ideal_quotient(j, g, opts)?;
                let gbj = buchberger(j, &order, opts)?;
                let escapee = quotient.iter().find(|q| !normal_form(q, &gbj).is_zero()).map(|q| q.to_string());
                ok &= escapee.is_none();
                stages.push(StageResult {
                    stage: s,
                    label,
                    quotient_generators: quotient.len(),
                    escapee,
                });
                if !ok {
                    break;
                }
            }
            Ok((if ok { Verdict::Pass } else { Verdict::Fail }, serde_json::json!({ "stages": stages })))
        }
    }
}

/// Whether `p_n, .., p_0` (without `p_k`) is a regular sequence, by the
/// chosen oracle. Evidence over a field, not a proof over `Z`.
pub fn regular_sequence_check(
    r: usize,
    k: usize,
    n: usize,
    base: LocalBase,
    method: RegSeqMethod,
    opts: &GbOptions,
) -> Result<Report> {
    require_field(&base)?;
    let instance = serde_json::json!({ "r": r, "k": k, "n": n, "base": base.to_string() });
    Report::run("regseq", instance, &method.name(), || {
        let (idx, seq) = universal_sequence(r, k, n, base)?;
        let labels: Vec<String> = idx.iter().map(|m| format!("p{m}")).collect();
        let (v, mut w) = check_sequence(&seq, &labels, method, opts)?;
        w["scope"] = serde_json::json!(format!("evidence over {base}; not a proof over Z"));
        Ok((v, Some(w)))
    })
}
