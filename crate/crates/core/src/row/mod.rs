//! Unimodular rows over `R[t, t^-1]` and the transformations acting on them.
//!
//! A row `x` is paired with a complement `y` such that `sum x_i y_i` is a
//! unit `u t^j`. Matrices act on the right of the row; to keep the pairing
//! intact the complement is acted on by the inverse, on the left.

mod complete;
mod generate;
mod reduce;
mod roitman;
mod shrink;

pub use complete::complete_length2;
pub use generate::{gen_example, random_laurent};
pub use reduce::{
    residue_normalize, weierstrass_reduce, BezoutCertificate, ReductionResult, ResidueNormalization,
    VerificationReport,
};
pub use roitman::{roitman_descend, roitman_lift_matrix, RoitmanDescent};
pub use shrink::{shrink_complement, shrink_to_ideal_row, IdealRow};

use serde::{Deserialize, Serialize};

use crate::base::{BaseElem, LocalBase};
use crate::error::{Error, Result};
use crate::json;
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;

/// `sum a_i b_i`.
pub fn pairing(a: &[LaurentPoly], b: &[LaurentPoly]) -> LaurentPoly {
    a.iter().zip(b).fold(LaurentPoly::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// The unit `coeff * t^exp` that a row and its complement pair to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitWitness {
    #[serde(with = "json::elem")]
    pub coeff: BaseElem,
    pub exp: i64,
}

impl UnitWitness {
    pub fn one() -> Self {
        UnitWitness {
            coeff: BaseElem::one(),
            exp: 0,
        }
    }

    pub fn as_laurent(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.coeff.clone(), self.exp)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowBundle {
    pub base: LocalBase,
    #[serde(with = "json::laurent_vec")]
    pub row: Vec<LaurentPoly>,
    #[serde(with = "json::laurent_vec")]
    pub complement: Vec<LaurentPoly>,
    pub unit: UnitWitness,
}

impl RowBundle {
    /// Builds a bundle, normalizing coefficients and recognizing the pairing
    /// as a unit.
    pub fn new(base: LocalBase, row: Vec<LaurentPoly>, complement: Vec<LaurentPoly>) -> Result<Self> {
        if row.len() < 2 || row.len() != complement.len() {
            return Err(Error::InvalidInput(format!(
                "row of length {} with complement of length {}",
                row.len(),
                complement.len()
            )));
        }
        let row = json::normalize_all(&row, &base)?;
        let complement = json::normalize_all(&complement, &base)?;
        let s = pairing(&row, &complement);
        let (coeff, exp) = s
            .unit_form(&base)
            .ok_or_else(|| Error::NotUnimodular(format!("sum x_i y_i = {s} is not a unit")))?;
        Ok(RowBundle {
            base,
            row,
            complement,
            unit: UnitWitness { coeff, exp },
        })
    }

    /// `r`, one less than the length.
    pub fn r(&self) -> usize {
        self.row.len() - 1
    }

    /// Re-normalizes after deserialization and re-checks the stored witness.
    pub fn validated(self) -> Result<Self> {
        let unit = UnitWitness {
            coeff: self.base.normalize(self.unit.coeff.clone())?,
            exp: self.unit.exp,
        };
        let b = RowBundle::new(self.base, self.row, self.complement)?;
        if b.unit != unit {
            return Err(Error::NotUnimodular(format!(
                "stored witness {} does not match the pairing {}",
                unit.as_laurent(),
                b.unit.as_laurent()
            )));
        }
        Ok(b)
    }

    /// Exact re-multiplication check against the stored witness.
    pub fn check(&self) -> bool {
        pairing(&self.row, &self.complement) == self.unit.as_laurent()
    }
}

/// One factor of a [`GLWitness`], acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GLFactor {
    /// `x_to += coeff * x_from`.
    Elementary {
        from: usize,
        to: usize,
        #[serde(with = "json::laurent")]
        coeff: LaurentPoly,
    },
    /// Multiplication of the whole row by a unit.
    Scalar {
        #[serde(with = "json::laurent")]
        factor: LaurentPoly,
    },
    /// `I + y (t d)^T`; determinant `1 + t sum d_i y_i`.
    Correction {
        #[serde(with = "json::laurent_vec")]
        y: Vec<LaurentPoly>,
        #[serde(with = "json::laurent_vec")]
        d: Vec<LaurentPoly>,
    },
}

impl GLFactor {
    pub fn matrix(&self, n: usize) -> Matrix<LaurentPoly> {
        let mut m = Matrix::<LaurentPoly>::identity(n);
        match self {
            GLFactor::Elementary { from, to, coeff } => m.set(*from, *to, coeff.clone()),
            GLFactor::Scalar { factor } => {
                for i in 0..n {
                    m.set(i, i, factor.clone());
                }
            }
            GLFactor::Correction { y, d } => {
                for i in 0..n {
                    for j in 0..n {
                        let e = y[i].mul(&d[j]).shift(1);
                        let v = if i == j { e.add(&LaurentPoly::one()) } else { e };
                        m.set(i, j, v);
                    }
                }
            }
        }
        m
    }

    pub fn determinant(&self, n: usize) -> LaurentPoly {
        match self {
            GLFactor::Elementary { .. } => LaurentPoly::one(),
            GLFactor::Scalar { factor } => factor.pow(n as u32),
            GLFactor::Correction { y, d } => LaurentPoly::one().add(&pairing(d, y).shift(1)),
        }
    }

    /// Coefficients brought into canonical form for `base`, as needed after
    /// parsing.
    pub fn normalized(&self, base: &LocalBase) -> Result<Self> {
        Ok(match self {
            GLFactor::Elementary { from, to, coeff } => GLFactor::Elementary {
                from: *from,
                to: *to,
                coeff: coeff.normalized(base)?,
            },
            GLFactor::Scalar { factor } => GLFactor::Scalar {
                factor: factor.normalized(base)?,
            },
            GLFactor::Correction { y, d } => GLFactor::Correction {
                y: json::normalize_all(y, base)?,
                d: json::normalize_all(d, base)?,
            },
        })
    }

    /// `x <- x F`.
    pub fn apply_row(&self, x: &mut [LaurentPoly]) {
        match self {
            GLFactor::Elementary { from, to, coeff } => {
                let add = coeff.mul(&x[*from]);
                x[*to] = x[*to].add(&add);
            }
            GLFactor::Scalar { factor } => {
                for xi in x.iter_mut() {
                    *xi = xi.mul(factor);
                }
            }
            GLFactor::Correction { y, d } => {
                let s = pairing(x, y).shift(1);
                for (xi, di) in x.iter_mut().zip(d) {
                    *xi = xi.add(&s.mul(di));
                }
            }
        }
    }

    /// `y <- F^{-1} y`, available when the inverse has Laurent-polynomial
    /// entries.
    pub fn apply_complement(&self, y: &mut [LaurentPoly], base: &LocalBase) -> Result<()> {
        match self {
            GLFactor::Elementary { from, to, coeff } => {
                let sub = coeff.mul(&y[*to]);
                y[*from] = y[*from].sub(&sub);
                Ok(())
            }
            GLFactor::Scalar { factor } => {
                let inv = factor
                    .unit_inverse(base)
                    .ok_or_else(|| Error::NotAUnit(factor.to_string()))?;
                for yi in y.iter_mut() {
                    *yi = yi.mul(&inv);
                }
                Ok(())
            }
            GLFactor::Correction { .. } => Err(Error::PrecisionLoss(
                "the inverse of a correction matrix is a power series".into(),
            )),
        }
    }
}

/// A matrix in `GL_{r+1}` kept as an ordered product of factors, so that
/// `x W = x F_1 F_2 ... F_m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GLWitness {
    pub size: usize,
    pub factors: Vec<GLFactor>,
}

impl GLWitness {
    pub fn identity(size: usize) -> Self {
        GLWitness {
            size,
            factors: Vec::new(),
        }
    }

    pub fn normalized(&self, base: &LocalBase) -> Result<Self> {
        Ok(GLWitness {
            size: self.size,
            factors: self.factors.iter().map(|f| f.normalized(base)).collect::<Result<_>>()?,
        })
    }

    pub fn push(&mut self, f: GLFactor) {
        self.factors.push(f);
    }

    pub fn extend(&mut self, other: GLWitness) {
        assert_eq!(self.size, other.size);
        self.factors.extend(other.factors);
    }

    /// The product of the factors, multiplied out.
    pub fn matrix(&self) -> Matrix<LaurentPoly> {
        self.factors
            .iter()
            .fold(Matrix::identity(self.size), |acc, f| acc.mul(&f.matrix(self.size)))
    }

    /// Determinant as the product of the factor determinants.
    pub fn determinant(&self) -> LaurentPoly {
        self.factors
            .iter()
            .fold(LaurentPoly::one(), |acc, f| acc.mul(&f.determinant(self.size)))
    }

    /// The determinant is a unit of `R((t))`: its lowest coefficient is a
    /// unit of the base.
    pub fn determinant_is_series_unit(&self, base: &LocalBase) -> bool {
        let d = self.determinant();
        d.valuation().map_or(false, |v| base.is_unit(&d.coeff(v)))
    }

    pub fn apply_row(&self, x: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let mut x = x.to_vec();
        for f in &self.factors {
            f.apply_row(&mut x);
        }
        x
    }

    /// Transforms a whole bundle; the pairing is unchanged. Fails when some
    /// factor has no Laurent-polynomial inverse.
    pub fn apply_bundle(&self, b: &RowBundle) -> Result<RowBundle> {
        let mut x = b.row.clone();
        let mut y = b.complement.clone();
        for f in &self.factors {
            f.apply_row(&mut x);
            f.apply_complement(&mut y, &b.base)?;
        }
        let out = RowBundle {
            base: b.base,
            row: x,
            complement: y,
            unit: b.unit.clone(),
        };
        debug_assert!(out.check());
        Ok(out)
    }
}

/// On-disk form of a bundle, with the generator's provenance when known.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowBundleDoc {
    pub schema: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub steps: Option<usize>,
    pub bundle: RowBundle,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<GLWitness>,
}

impl RowBundleDoc {
    pub const SCHEMA: &'static str = "v1/RowBundle";

    pub fn new(bundle: RowBundle) -> Self {
        RowBundleDoc {
            schema: Self::SCHEMA.into(),
            seed: None,
            steps: None,
            bundle,
            witness: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LocalBase {
        LocalBase::Rationals
    }

    #[test]
    fn bundle_recognizes_unit_pairing() {
        let b = RowBundle::new(
            q(),
            vec![LaurentPoly::t_pow(-1), LaurentPoly::zero()],
            vec![LaurentPoly::monomial(q().int(3), 4), LaurentPoly::one()],
        )
        .unwrap();
        assert_eq!(b.unit.exp, 3);
        assert_eq!(b.unit.coeff, q().int(3));
        let bad = RowBundle::new(
            q(),
            vec![LaurentPoly::from_ints(q(), &[1, 1]), LaurentPoly::zero()],
            vec![LaurentPoly::one(), LaurentPoly::zero()],
        );
        assert!(matches!(bad, Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn factor_matrices_agree_with_actions() {
        let y = vec![LaurentPoly::from_ints(q(), &[1, 2]), LaurentPoly::t_pow(-1), LaurentPoly::one()];
        let d = vec![LaurentPoly::from_ints(q(), &[0, 1]), LaurentPoly::one(), LaurentPoly::zero()];
        let x = vec![LaurentPoly::one(), LaurentPoly::from_ints(q(), &[3, 0, 1]), LaurentPoly::t_pow(2)];
        let fs = [
            GLFactor::Elementary {
                from: 2,
                to: 0,
                coeff: LaurentPoly::from_ints(q(), &[-1, 5]),
            },
            GLFactor::Scalar {
                factor: LaurentPoly::monomial(q().int(2), -3),
            },
            GLFactor::Correction { y, d },
        ];
        for f in &fs {
            let mut acted = x.clone();
            f.apply_row(&mut acted);
            assert_eq!(acted, f.matrix(3).left_apply(&x));
            assert_eq!(f.determinant(3), f.matrix(3).det_cofactor());
        }
    }
}
