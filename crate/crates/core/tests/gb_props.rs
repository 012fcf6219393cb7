use std::sync::Arc;

use laurent_rows::base::BaseElem;
use laurent_rows::gb::{apply_variable_reduction, buchberger, normal_form, quadric_rank, GbOptions, MonomialOrder, VariableReduction};
use laurent_rows::mvpoly::var_list;
use laurent_rows::row::{gen_example, weierstrass_reduce};
use laurent_rows::universal::universal_map;
use laurent_rows::{LocalBase, MvPoly};
use proptest::prelude::*;

fn vars3() -> Arc<Vec<String>> {
    var_list(&["x", "y", "z"])
}

/// Sparse polynomial in x, y, z of degree at most 3.
fn poly() -> impl Strategy<Value = MvPoly> {
    prop::collection::vec((0u32..=2, 0u32..=2, 0u32..=1, -4i64..=4), 1..5)
        .prop_map(|ts| MvPoly::from_terms(vars3(), ts.into_iter().map(|(a, b, c, k)| (vec![a, b, c], BaseElem::from(k)))))
}

fn quadric(n: usize) -> impl Strategy<Value = MvPoly> {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    prop::collection::vec(-3i64..=3, n * (n + 1) / 2).prop_map(move |cs| {
        let vars = var_list(&names);
        let mut terms = Vec::new();
        let mut it = cs.into_iter();
        for i in 0..n {
            for j in i..n {
                let mut e = vec![0u32; n];
                e[i] += 1;
                e[j] += 1;
                terms.push((e, BaseElem::from(it.next().unwrap())));
            }
        }
        MvPoly::from_terms(vars, terms)
    })
}

/// Naive Gram rank: twice the symmetric matrix of the form.
fn gram_rank_by_minors(q: &MvPoly, n: usize) -> usize {
    let mut m = vec![vec![BaseElem::zero(); n]; n];
    for (e, c) in q.terms() {
        let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat(i).take(e[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = c.mul(&BaseElem::from(2));
        } else {
            m[i][j] = c.clone();
            m[j][i] = c.clone();
        }
    }
    // fraction-free rank via Gaussian elimination over Q
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].field_inverse().unwrap();
        for r in 0..n {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].mul(&inv);
                for c in 0..n {
                    let v = m[r][c].sub(&f.mul(&m[rank][c]));
                    m[r][c] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_form_is_idempotent_and_reduces_members(g in prop::collection::vec(poly(), 1..3), f in poly(), h in poly()) {
        let gb = buchberger(&g, &MonomialOrder::degrevlex(3), &GbOptions::default()).unwrap();
        let nf = normal_form(&f, &gb);
        prop_assert_eq!(normal_form(&nf, &gb), nf.clone());
        // f and f + h*g_0 have the same normal form
        let shifted = f.add(&h.mul(&g[0]));
        prop_assert_eq!(normal_form(&shifted, &gb), nf);
        prop_assert!(gb.contains(&g[0]));
    }

    #[test]
    fn quadric_rank_matches_independent_elimination(q in quadric(4)) {
        prop_assert_eq!(quadric_rank(&q).unwrap_or(0), gram_rank_by_minors(&q, 4));
    }

    #[test]
    fn quadric_rank_invariant_under_unimodular_change(q in quadric(4), a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        prop_assume!(!q.is_zero());
        let vars = q.vars().clone();
        let v: Vec<MvPoly> = (0..4).map(|i| MvPoly::var(vars.clone(), i)).collect();
        // upper unitriangular substitution
        let images = vec![
            v[0].add(&v[1].scale(&BaseElem::from(a))).add(&v[3].scale(&BaseElem::from(c))),
            v[1].add(&v[2].scale(&BaseElem::from(b))),
            v[2].add(&v[3].scale(&BaseElem::from(a))),
            v[3].clone(),
        ];
        let moved = q.substitute(&images, &vars);
        prop_assert_eq!(quadric_rank(&moved).unwrap(), quadric_rank(&q).unwrap());
    }

    #[test]
    fn variable_reduction_is_a_ring_map(f in poly(), g in poly(), kill in 0usize..3) {
        let source = vars3();
        let names = ["x", "y", "z"];
        let pairs: Vec<(String, String)> = names
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != kill)
            .map(|(_, n)| (n.to_string(), format!("{n}'")))
            .collect();
        let phi = VariableReduction::from_pairs(&source, &pairs).unwrap();
        let map = |p: &MvPoly| apply_variable_reduction(&phi, p);
        prop_assert_eq!(map(&f.mul(&g)), map(&f).mul(&map(&g)));
        prop_assert_eq!(map(&f.add(&g)), map(&f).add(&map(&g)));
    }

    #[test]
    fn universal_map_kills_relations_over_f5(seed in 0u64..5_000) {
        let base = LocalBase::PrimeField(5);
        let (b, _) = gen_example(2, base, seed, 3).unwrap();
        let res = weierstrass_reduce(&b, 64).unwrap();
        let m = universal_map(&res.normalized_row, &res.normalized_complement, res.k as usize).unwrap();
        prop_assert!(m.relations_hold());
        for (_, c) in m.assignment.iter() {
            let in_f5 = matches!(c, BaseElem::Mod { modulus: 5, .. }) || c.is_zero() || c.is_one();
            prop_assert!(in_f5, "coefficient {} left F5", c);
        }
    }
}
