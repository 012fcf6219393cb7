//! Coefficient rings: the rationals, prime fields, the integers localized at a
//! prime, and the integers. All of them are domains, which is what makes unit
//! recognition for Laurent polynomials a matter of inspecting one monomial.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient ring `R` of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalBase {
    Rationals,
    PrimeField(u64),
    LocalizedAt(u64),
    /// Admitted for presentations only; never local.
    Integers,
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl LocalBase {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(LocalBase::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn localized_at(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(LocalBase::LocalizedAt(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_local(&self) -> bool {
        !matches!(self, LocalBase::Integers)
    }

    pub fn require_local(&self) -> Result<()> {
        if self.is_local() {
            Ok(())
        } else {
            Err(Error::NotLocalBase(self.to_string()))
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, LocalBase::Rationals | LocalBase::PrimeField(_))
    }

    /// Characteristic of `R / m`; zero for the rationals and the integers.
    pub fn residue_characteristic(&self) -> u64 {
        match self {
            LocalBase::Rationals | LocalBase::Integers => 0,
            LocalBase::PrimeField(p) | LocalBase::LocalizedAt(p) => *p,
        }
    }

    pub fn residue_field(&self) -> Result<LocalBase> {
        match self {
            LocalBase::Rationals => Ok(LocalBase::Rationals),
            LocalBase::PrimeField(p) | LocalBase::LocalizedAt(p) => Ok(LocalBase::PrimeField(*p)),
            LocalBase::Integers => Err(Error::NotLocalBase(self.to_string())),
        }
    }

    pub fn zero(&self) -> BaseElem {
        self.int(0)
    }

    pub fn one(&self) -> BaseElem {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> BaseElem {
        match self {
            LocalBase::PrimeField(p) => BaseElem::modular(n, *p),
            _ => BaseElem::from(n),
        }
    }

    /// `num / den` as an element of this ring, if it lies in it.
    pub fn ratio(&self, num: i64, den: i64) -> Result<BaseElem> {
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let q = BaseElem::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)));
        self.normalize(q)
    }

    pub fn contains(&self, x: &BaseElem) -> bool {
        match (self, x) {
            (LocalBase::PrimeField(p), BaseElem::Mod { modulus, .. }) => modulus == p,
            (LocalBase::PrimeField(p), BaseElem::Rat(q)) => !(q.denom() % BigInt::from(*p)).is_zero(),
            (_, BaseElem::Mod { .. }) => false,
            (LocalBase::Rationals, BaseElem::Rat(_)) => true,
            (LocalBase::LocalizedAt(p), BaseElem::Rat(q)) => !(q.denom() % BigInt::from(*p)).is_zero(),
            (LocalBase::Integers, BaseElem::Rat(q)) => q.is_integer(),
        }
    }

    /// Brings `x` into canonical form for this ring, or reports that it is
    /// not an element.
    pub fn normalize(&self, x: BaseElem) -> Result<BaseElem> {
        if !self.contains(&x) {
            return Err(Error::NotInBase(x.to_string(), self.to_string()));
        }
        Ok(match (self, x) {
            (LocalBase::PrimeField(p), BaseElem::Rat(q)) => BaseElem::Rat(q).to_modular(*p),
            (_, x) => x,
        })
    }

    pub fn is_unit(&self, x: &BaseElem) -> bool {
        if x.is_zero() {
            return false;
        }
        match (self, x) {
            (LocalBase::Rationals | LocalBase::PrimeField(_), _) => true,
            (LocalBase::LocalizedAt(p), BaseElem::Rat(q)) => !(q.numer() % BigInt::from(*p)).is_zero(),
            (LocalBase::Integers, BaseElem::Rat(q)) => q.is_integer() && q.numer().abs().is_one(),
            _ => false,
        }
    }

    /// Membership in the maximal ideal `m`.
    pub fn in_max_ideal(&self, x: &BaseElem) -> Result<bool> {
        self.require_local()?;
        Ok(!self.is_unit(x))
    }

    /// Inverse inside the ring; `None` when `x` is not a unit.
    pub fn inverse(&self, x: &BaseElem) -> Option<BaseElem> {
        if self.is_unit(x) {
            x.field_inverse()
        } else {
            None
        }
    }

    /// `a / b` when the quotient lies in the ring.
    pub fn exact_div(&self, a: &BaseElem, b: &BaseElem) -> Option<BaseElem> {
        let q = a.mul(&b.field_inverse()?);
        self.normalize(q).ok()
    }

    /// The residue map `R -> R/m`.
    pub fn residue(&self, x: &BaseElem) -> Result<BaseElem> {
        match self {
            LocalBase::Rationals | LocalBase::PrimeField(_) => Ok(x.clone()),
            LocalBase::LocalizedAt(p) => Ok(x.to_modular(*p)),
            LocalBase::Integers => Err(Error::NotLocalBase(self.to_string())),
        }
    }

    /// The canonical section `R/m -> R`: residues mod p go to `{0, .., p-1}`.
    pub fn lift(&self, x: &BaseElem) -> BaseElem {
        match (self, x) {
            (LocalBase::LocalizedAt(_), BaseElem::Mod { value, .. }) => BaseElem::from(*value as i64),
            _ => x.clone(),
        }
    }
}

impl fmt::Display for LocalBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalBase::Rationals => write!(f, "Q"),
            LocalBase::PrimeField(p) => write!(f, "F{p}"),
            LocalBase::LocalizedAt(p) => write!(f, "Z_({p})"),
            LocalBase::Integers => write!(f, "Z"),
        }
    }
}

impl FromStr for LocalBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_p = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad base ring `{s}`")))
        };
        match s {
            "Q" | "QQ" => Ok(LocalBase::Rationals),
            "Z" | "ZZ" => Ok(LocalBase::Integers),
            _ if s.starts_with("Z_(") && s.ends_with(')') => LocalBase::localized_at(parse_p(&s[3..s.len() - 1])?),
            _ if s.starts_with("Z(") && s.ends_with(')') => LocalBase::localized_at(parse_p(&s[2..s.len() - 1])?),
            _ if s.starts_with("GF(") && s.ends_with(')') => LocalBase::prime_field(parse_p(&s[3..s.len() - 1])?),
            _ if s.starts_with('F') => LocalBase::prime_field(parse_p(&s[1..])?),
            _ => Err(Error::Parse(format!("bad base ring `{s}`"))),
        }
    }
}

impl serde::Serialize for LocalBase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for LocalBase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact coefficient. Rationals cover `Q`, `Z_(p)` and `Z`; residues mod a
/// prime cover `F_p`. When the two kinds meet in one operation the rational
/// is pushed through `Z_(p) -> F_p`, which is the only mixing the library
/// ever performs (integer constants meeting residues).
#[derive(Clone, Debug)]
pub enum BaseElem {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

impl BaseElem {
    pub fn modular(n: i64, p: u64) -> Self {
        BaseElem::Mod {
            value: (n as i128).rem_euclid(p as i128) as u64,
            modulus: p,
        }
    }

    pub fn zero() -> Self {
        BaseElem::from(0)
    }

    pub fn one() -> Self {
        BaseElem::from(1)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            BaseElem::Rat(q) => q.is_zero(),
            BaseElem::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            BaseElem::Rat(q) => q.is_one(),
            BaseElem::Mod { value, .. } => *value == 1,
        }
    }

    /// Image under `Z_(p) -> F_p`. Panics if the denominator is divisible by `p`.
    pub fn to_modular(&self, p: u64) -> BaseElem {
        match self {
            BaseElem::Mod { modulus, .. } => {
                assert_eq!(*modulus, p, "mixing residues modulo different primes");
                self.clone()
            }
            BaseElem::Rat(q) => {
                let pb = BigInt::from(p);
                let n = q.numer().mod_floor(&pb).to_u64().unwrap();
                let d = q.denom().mod_floor(&pb).to_u64().unwrap();
                let dinv = mod_inverse(d, p).expect("denominator divisible by the characteristic");
                BaseElem::Mod {
                    value: ((n as u128 * dinv as u128) % p as u128) as u64,
                    modulus: p,
                }
            }
        }
    }

    /// Inverse in the fraction field.
    pub fn field_inverse(&self) -> Option<BaseElem> {
        if self.is_zero() {
            return None;
        }
        match self {
            BaseElem::Rat(q) => Some(BaseElem::Rat(q.recip())),
            BaseElem::Mod { value, modulus } => mod_inverse(*value, *modulus).map(|v| BaseElem::Mod {
                value: v,
                modulus: *modulus,
            }),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            BaseElem::Rat(q) => Some(q),
            BaseElem::Mod { .. } => None,
        }
    }

    pub fn add(&self, other: &BaseElem) -> BaseElem {
        combine(self, other, |a, b| a + b, |a, b, p| (a + b) % p)
    }

    pub fn sub(&self, other: &BaseElem) -> BaseElem {
        combine(self, other, |a, b| a - b, |a, b, p| (a + p - b) % p)
    }

    pub fn mul(&self, other: &BaseElem) -> BaseElem {
        combine(self, other, |a, b| a * b, |a, b, p| (a * b) % p)
    }

    pub fn neg(&self) -> BaseElem {
        match self {
            BaseElem::Rat(q) => BaseElem::Rat(-q),
            BaseElem::Mod { value, modulus } => BaseElem::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn pow(&self, e: u32) -> BaseElem {
        let mut acc = match self {
            BaseElem::Mod { modulus, .. } => BaseElem::modular(1, *modulus),
            BaseElem::Rat(_) => BaseElem::one(),
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

fn combine(
    a: &BaseElem,
    b: &BaseElem,
    rat: impl Fn(&BigRational, &BigRational) -> BigRational,
    modular: impl Fn(u128, u128, u128) -> u128,
) -> BaseElem {
    match (a, b) {
        (BaseElem::Rat(x), BaseElem::Rat(y)) => BaseElem::Rat(rat(x, y)),
        (BaseElem::Mod { value: x, modulus: p }, BaseElem::Mod { value: y, modulus: q }) => {
            assert_eq!(p, q, "mixing residues modulo different primes");
            BaseElem::Mod {
                value: modular(*x as u128, *y as u128, *p as u128) as u64,
                modulus: *p,
            }
        }
        (BaseElem::Mod { modulus, .. }, r @ BaseElem::Rat(_)) => combine(a, &r.to_modular(*modulus), rat, modular),
        (r @ BaseElem::Rat(_), BaseElem::Mod { modulus, .. }) => combine(&r.to_modular(*modulus), b, rat, modular),
    }
}

impl From<i64> for BaseElem {
    fn from(n: i64) -> Self {
        BaseElem::Rat(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigRational> for BaseElem {
    fn from(q: BigRational) -> Self {
        BaseElem::Rat(q)
    }
}

impl PartialEq for BaseElem {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (BaseElem::Rat(x), BaseElem::Rat(y)) => x == y,
            (BaseElem::Mod { value: x, modulus: p }, BaseElem::Mod { value: y, modulus: q }) => p == q && x == y,
            (m @ BaseElem::Mod { modulus, .. }, r @ BaseElem::Rat(q)) | (r @ BaseElem::Rat(q), m @ BaseElem::Mod { modulus, .. }) => {
                !(q.denom() % BigInt::from(*modulus)).is_zero() && r.to_modular(*modulus) == *m
            }
        }
    }
}

impl Eq for BaseElem {}

impl PartialOrd for BaseElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Only used to make maps and sorts deterministic.
impl Ord for BaseElem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BaseElem::Rat(x), BaseElem::Rat(y)) => x.cmp(y),
            (BaseElem::Mod { value: x, .. }, BaseElem::Mod { value: y, .. }) => x.cmp(y),
            (BaseElem::Rat(_), BaseElem::Mod { .. }) => Ordering::Less,
            (BaseElem::Mod { .. }, BaseElem::Rat(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseElem::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            BaseElem::Mod { value, .. } => write!(f, "{value}/1"),
        }
    }
}

impl FromStr for BaseElem {
    type Err = Error;

    /// Parses `num/den` or a bare integer. The result is a rational; callers
    /// run it through [`LocalBase::normalize`].
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad coefficient `{s}`"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BaseElem::Rat(BigRational::new(n, d)))
    }
}

impl<'a> Add<&'a BaseElem> for &'a BaseElem {
    type Output = BaseElem;
    fn add(self, rhs: &BaseElem) -> BaseElem {
        BaseElem::add(self, rhs)
    }
}

impl<'a> Sub<&'a BaseElem> for &'a BaseElem {
    type Output = BaseElem;
    fn sub(self, rhs: &BaseElem) -> BaseElem {
        BaseElem::sub(self, rhs)
    }
}

impl<'a> Mul<&'a BaseElem> for &'a BaseElem {
    type Output = BaseElem;
    fn mul(self, rhs: &BaseElem) -> BaseElem {
        BaseElem::mul(self, rhs)
    }
}

impl Neg for &BaseElem {
    type Output = BaseElem;
    fn neg(self) -> BaseElem {
        BaseElem::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn localized_membership_and_units() {
        let z2 = LocalBase::localized_at(2).unwrap();
        assert!(z2.ratio(1, 3).is_ok());
        assert!(z2.ratio(1, 2).is_err());
        assert!(z2.is_unit(&z2.ratio(3, 5).unwrap()));
        assert!(!z2.is_unit(&z2.ratio(6, 5).unwrap()));
        assert!(z2.in_max_ideal(&z2.int(4)).unwrap());
        assert_eq!(z2.inverse(&z2.int(3)).unwrap(), z2.ratio(1, 3).unwrap());
        assert!(z2.inverse(&z2.int(2)).is_none());
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(LocalBase::prime_field(6), Err(Error::NotPrime(6)));
        assert!(LocalBase::localized_at(9).is_err());
    }

    #[test]
    fn integers_are_not_local() {
        let z = LocalBase::Integers;
        assert!(z.in_max_ideal(&z.int(2)).is_err());
        assert!(z.residue(&z.int(2)).is_err());
        assert!(z.is_unit(&z.int(-1)));
    }

    #[test]
    fn prime_field_canonical_range() {
        let f5 = LocalBase::prime_field(5).unwrap();
        assert_eq!(f5.int(-1), BaseElem::Mod { value: 4, modulus: 5 });
        assert_eq!(f5.ratio(1, 2).unwrap(), BaseElem::Mod { value: 3, modulus: 5 });
        let x = f5.int(3);
        assert_eq!(x.mul(&x.field_inverse().unwrap()), f5.one());
    }

    #[test]
    fn residue_and_lift() {
        let z3 = LocalBase::localized_at(3).unwrap();
        let x = z3.ratio(7, 2).unwrap();
        let r = z3.residue(&x).unwrap();
        assert_eq!(r, BaseElem::Mod { value: 2, modulus: 3 });
        assert_eq!(z3.lift(&r), BaseElem::from(2));
        assert_eq!(z3.residue(&z3.lift(&r)).unwrap(), r);
    }

    #[test]
    fn mixed_kinds_coerce() {
        let a = BaseElem::modular(3, 5);
        assert_eq!(a.add(&BaseElem::from(4)), BaseElem::modular(2, 5));
        assert_eq!(BaseElem::from(8), BaseElem::modular(3, 5));
    }

    #[test]
    fn display_round_trip() {
        for s in ["3/4", "-7/1", "0/1"] {
            let x: BaseElem = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        for b in ["Q", "F5", "Z_(3)", "Z"] {
            assert_eq!(b.parse::<LocalBase>().unwrap().to_string(), b);
        }
    }
}
