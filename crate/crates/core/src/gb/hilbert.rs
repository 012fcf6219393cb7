use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::engine::{divides, GroebnerBasis};
use crate::error::{Error, Result};

/// Number of standard monomials in each degree `0..=d`: monomials divisible
/// by no leading monomial of the basis. For a homogeneous ideal this is the
/// Hilbert function of the quotient. A truncated basis must reach degree `d`.
pub fn hilbert_function(gb: &GroebnerBasis, d: u32) -> Result<Vec<u64>> {
    if let Some(b) = gb.degree_bound {
        if b < d {
            return Err(Error::InvalidInput(format!("basis truncated at degree {b} < {d}")));
        }
    }
    let leads = gb.leading_monomials();
    let n = gb.vars.len();
    let mut counts = vec![0u64; d as usize + 1];
    let mut e = vec![0u32; n];
    count(&leads, &mut e, 0, 0, d, &mut counts);
    Ok(counts)
}

// Enumerates monomials variable by variable, pruning once a leading monomial
// divides the partial exponent (every extension is then divisible as well).
fn count(leads: &[Vec<u32>], e: &mut Vec<u32>, var: usize, deg: u32, d: u32, counts: &mut [u64]) {
    if leads.iter().any(|l| divides(l, e)) {
        return;
    }
    if var == e.len() {
        counts[deg as usize] += 1;
        return;
    }
    for k in 0..=(d - deg) {
        e[var] = k;
        count(leads, e, var + 1, deg + k, d, counts);
        if leads.iter().any(|l| divides(l, e)) {
            break;
        }
    }
    e[var] = 0;
}

/// Coefficients of `prod (1 - T^{d_i}) / (1 - T)^N` through degree `d`.
pub fn expected_ci_series(nvars: usize, degrees: &[u32], d: u32) -> Vec<BigInt> {
    let len = d as usize + 1;
    // 1 / (1 - T)^N = sum C(N - 1 + j, j) T^j
    let mut series: Vec<BigInt> = Vec::with_capacity(len);
    let mut c = BigInt::one();
    for j in 0..len {
        if j > 0 {
            c = c * BigInt::from(nvars + j - 1) / BigInt::from(j);
        }
        series.push(if nvars == 0 { if j == 0 { BigInt::one() } else { BigInt::zero() } } else { c.clone() });
    }
    for &di in degrees {
        let di = di as usize;
        for j in (di..len).rev() {
            let prev = series[j - di].clone();
            series[j] -= prev;
        }
    }
    series
}
