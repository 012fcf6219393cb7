use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GLFactor, GLWitness, RowBundle, UnitWitness};
use crate::base::LocalBase;
use crate::error::Result;
use crate::laurent::LaurentPoly;

/// A random Laurent polynomial with support in `[lo, hi]` and integer
/// coefficients in `[-c, c]`; each exponent is present with probability 1/2.
pub fn random_laurent<R: Rng>(rng: &mut R, base: &LocalBase, lo: i64, hi: i64, c: i64) -> LaurentPoly {
    LaurentPoly::from_terms((lo..=hi).filter_map(|e| {
        if rng.gen_bool(0.5) {
            Some((e, base.int(rng.gen_range(-c..=c))))
        } else {
            None
        }
    }))
}

/// Applies `steps` random elementary matrices to `(1, 0, .., 0)`, tracking
/// the complement through their inverses. The result pairs to exactly 1 and
/// the returned witness carries `e_0` to the row.
pub fn gen_example(r: usize, base: LocalBase, seed: u64, steps: usize) -> Result<(RowBundle, GLWitness)> {
    base.require_local()?;
    if r < 1 {
        return Err(crate::error::Error::InvalidInput("need r >= 1".into()));
    }
    let n = r + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut row = vec![LaurentPoly::zero(); n];
    row[0] = LaurentPoly::one();
    let mut complement = row.clone();
    let mut witness = GLWitness::identity(n);
    for _ in 0..steps {
        let from = rng.gen_range(0..n);
        let to = (from + rng.gen_range(1..n)) % n;
        let coeff = random_laurent(&mut rng, &base, -2, 2, 2);
        let f = GLFactor::Elementary { from, to, coeff };
        f.apply_row(&mut row);
        f.apply_complement(&mut complement, &base)?;
        witness.push(f);
    }
    let b = RowBundle {
        base,
        row,
        complement,
        unit: UnitWitness::one(),
    };
    debug_assert!(b.check());
    Ok((b, witness))
}
