use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum OrderKind {
    Degrevlex,
    Lex,
    /// Degrevlex on the first `block` variables of the ranking, then
    /// degrevlex on the rest. Eliminates the block.
    Elimination { block: usize },
}

/// A monomial order on exponent vectors. `ranking` lists variable indices
/// from most significant (largest) to least significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub ranking: Vec<usize>,
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    /// Variable 0 is the largest.
    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Degrevlex,
            ranking: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            ranking: (0..nvars).collect(),
        }
    }

    pub fn with_ranking(kind: OrderKind, ranking: Vec<usize>) -> Self {
        let mut seen = ranking.clone();
        seen.sort_unstable();
        assert!(seen.iter().enumerate().all(|(i, v)| i == *v), "ranking must be a permutation");
        MonomialOrder { kind, ranking }
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    /// Exponents rearranged into ranking order.
    pub(crate) fn permute(&self, e: &[u32]) -> Vec<u32> {
        self.ranking.iter().map(|&i| e[i]).collect()
    }

    pub(crate) fn unpermute(&self, m: &[u32]) -> Vec<u32> {
        let mut e = vec![0; m.len()];
        for (k, &i) in self.ranking.iter().enumerate() {
            e[i] = m[k];
        }
        e
    }

    /// Compares monomials already in ranking order.
    pub(crate) fn cmp_ranked(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Degrevlex => degrevlex(a, b),
            OrderKind::Lex => a.cmp(b),
            OrderKind::Elimination { block } => {
                degrevlex(&a[..block], &b[..block]).then_with(|| degrevlex(&a[block..], &b[block..]))
            }
        }
    }

    /// Compares exponent vectors in the caller's variable order.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.cmp_ranked(&self.permute(a), &self.permute(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_textbook() {
        // x > y > z
        let o = MonomialOrder::degrevlex(3);
        assert_eq!(o.cmp(&[1, 0, 2], &[0, 3, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[2, 0, 0], &[1, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 3], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn lex_and_ranking() {
        let o = MonomialOrder::lex(2);
        assert_eq!(o.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
        let rev = MonomialOrder::with_ranking(OrderKind::Lex, vec![1, 0]);
        assert_eq!(rev.cmp(&[1, 0], &[0, 5]), Ordering::Less);
        assert_eq!(rev.unpermute(&rev.permute(&[3, 4])), vec![3, 4]);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::with_ranking(OrderKind::Elimination { block: 1 }, vec![0, 1, 2]);
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 4, 4]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2, 0], &[0, 1, 1]), Ordering::Greater);
    }
}
