//! Exact coefficient rings and the quantum-number calculus built on them.
//!
//! Everything is exact: rationals and integers are arbitrary precision, residues
//! are reduced modulo a verified prime, and rational functions in `delta` are
//! kept in a canonical reduced form.

pub mod cartan;
mod parse;
pub mod poly;
pub mod quantum;
pub mod ratfunc;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use cartan::{CartanFile, CartanMatrix};
use poly::{FieldElem, Fp, Poly};
pub use quantum::{Binomial, QuantumCalculus};
use ratfunc::{FractionSum, RatFunc};

/// A verified prime modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    /// Residues are multiplied in `u128`, so the modulus is capped at 2^32.
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Which exact ring the coefficients live in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RingSpec {
    /// The integers. Only `+1` and `-1` are invertible.
    #[serde(rename = "z")]
    Integers,
    #[serde(rename = "q")]
    Rational,
    #[serde(rename = "fp")]
    PrimeField { p: Prime },
    /// `Q(delta)`.
    #[serde(rename = "qdelta")]
    RationalFunctionDelta,
    /// `F_p(delta)`, used as a generic deformation of `F_p`.
    #[serde(rename = "fpdelta")]
    PrimeFieldDelta { p: Prime },
}

impl Serialize for Prime {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0)
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        Prime::new(p).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rational => write!(f, "Q"),
            RingSpec::PrimeField { p } => write!(f, "F_{}", p.0),
            RingSpec::RationalFunctionDelta => write!(f, "Q(delta)"),
            RingSpec::PrimeFieldDelta { p } => write!(f, "F_{}(delta)", p.0),
        }
    }
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        Ok(RingSpec::PrimeField { p: Prime::new(p)? })
    }

    /// Parses the shorthands `z`, `q`, `qdelta` and `fp:<p>`.
    pub fn from_shorthand(s: &str) -> Result<Self> {
        match s.trim() {
            "z" | "integers" => Ok(RingSpec::Integers),
            "q" | "rational" => Ok(RingSpec::Rational),
            "qdelta" => Ok(RingSpec::RationalFunctionDelta),
            other => {
                let (kind, p) = other
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("unknown ring {other:?}")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime in {other:?}")))?;
                match kind {
                    "fp" => RingSpec::prime_field(p),
                    "fpdelta" => Ok(RingSpec::PrimeFieldDelta { p: Prime::new(p)? }),
                    _ => Err(Error::Parse(format!("unknown ring {other:?}"))),
                }
            }
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, RingSpec::Integers)
    }

    pub fn has_delta(&self) -> bool {
        matches!(
            self,
            RingSpec::RationalFunctionDelta | RingSpec::PrimeFieldDelta { .. }
        )
    }

    pub fn from_bigint(&self, n: &BigInt) -> RingElement {
        match self {
            RingSpec::Integers => RingElement::Integer(n.clone()),
            RingSpec::Rational => RingElement::Rational(BigRational::from_integer(n.clone())),
            RingSpec::PrimeField { p } => RingElement::Mod(Fp::from_bigint(n, p.0)),
            RingSpec::RationalFunctionDelta => {
                RingElement::Delta(RatFunc::constant(BigRational::from_integer(n.clone())))
            }
            RingSpec::PrimeFieldDelta { p } => {
                RingElement::ModDelta(RatFunc::constant(Fp::from_bigint(n, p.0)))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> RingElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn zero(&self) -> RingElement {
        self.from_int(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    /// The image of `n/d`; fails when `d` is not invertible in the ring.
    pub fn from_rational(&self, q: &BigRational) -> Result<RingElement> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.checked_div(&den)
            .ok_or_else(|| Error::NotInvertible(format!("{} in {self}", q.denom())))
    }

    /// The indeterminate `delta`, for the rational-function rings.
    pub fn delta(&self) -> Option<RingElement> {
        match self {
            RingSpec::RationalFunctionDelta => {
                Some(RingElement::Delta(RatFunc::variable(&BigRational::one())))
            }
            RingSpec::PrimeFieldDelta { p } => {
                Some(RingElement::ModDelta(RatFunc::variable(&Fp::new(1, p.0))))
            }
            _ => None,
        }
    }

    /// Parses integers, fractions `n/d`, and (for the delta rings) arithmetic
    /// expressions in `delta`.
    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        parse::parse_element(self, s)
    }

    /// The generic one-parameter deformation: `Q -> Q(delta)`, `F_p -> F_p(delta)`.
    /// Specializing `delta = 0` recovers the original ring.
    pub fn deformation(&self) -> Option<RingSpec> {
        match self {
            RingSpec::Rational => Some(RingSpec::RationalFunctionDelta),
            RingSpec::PrimeField { p } => Some(RingSpec::PrimeFieldDelta { p: *p }),
            _ => None,
        }
    }

    /// Embeds an element of `self` as a constant of `self.deformation()`.
    pub fn lift(&self, x: &RingElement) -> Option<RingElement> {
        match x {
            RingElement::Rational(q) => Some(RingElement::Delta(RatFunc::constant(q.clone()))),
            RingElement::Mod(a) => Some(RingElement::ModDelta(RatFunc::constant(*a))),
            _ => None,
        }
    }

    /// Evaluates an element of `self.deformation()` at `delta = 0`; `None` when
    /// it has a pole there, i.e. it lies outside the local ring at `delta = 0`.
    pub fn specialize(&self, x: &RingElement) -> Option<RingElement> {
        match (self, x) {
            (RingSpec::Rational, RingElement::Delta(f)) => {
                f.eval(&BigRational::zero()).map(RingElement::Rational)
            }
            (RingSpec::PrimeField { p }, RingElement::ModDelta(f)) => {
                f.eval(&Fp::new(0, p.0)).map(RingElement::Mod)
            }
            _ => None,
        }
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        x.spec() == *self
    }
}

/// An exact ring element tagged with its ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RingElement {
    Integer(BigInt),
    Rational(BigRational),
    Mod(Fp),
    Delta(RatFunc<BigRational>),
    ModDelta(RatFunc<Fp>),
}

/// Accumulates a sum of products. Over rational function fields the
/// normalization is deferred to `finish`.
#[derive(Clone, Debug)]
pub enum ProductSum {
    Eager(RingElement),
    Delta(FractionSum<BigRational>),
    ModDelta(FractionSum<Fp>),
}

impl ProductSum {
    pub fn new(spec: RingSpec) -> Self {
        match spec {
            RingSpec::RationalFunctionDelta => ProductSum::Delta(FractionSum::new()),
            RingSpec::PrimeFieldDelta { .. } => ProductSum::ModDelta(FractionSum::new()),
            _ => ProductSum::Eager(spec.zero()),
        }
    }

    pub fn add_product(&mut self, factors: &[&RingElement]) {
        match self {
            ProductSum::Eager(acc) => {
                let prod = factors
                    .iter()
                    .skip(1)
                    .fold(factors[0].clone(), |p, f| &p * *f);
                *acc = &*acc + &prod;
            }
            ProductSum::Delta(sum) => {
                let fs: Vec<&RatFunc<BigRational>> = factors
                    .iter()
                    .map(|f| match f {
                        RingElement::Delta(r) => r,
                        other => mismatch(other, other),
                    })
                    .collect();
                sum.add_product(&fs);
            }
            ProductSum::ModDelta(sum) => {
                let fs: Vec<&RatFunc<Fp>> = factors
                    .iter()
                    .map(|f| match f {
                        RingElement::ModDelta(r) => r,
                        other => mismatch(other, other),
                    })
                    .collect();
                sum.add_product(&fs);
            }
        }
    }

    /// The accumulated sum in `spec`.
    pub fn finish(self, spec: RingSpec) -> RingElement {
        match self {
            ProductSum::Eager(acc) => acc,
            ProductSum::Delta(sum) => sum.finish().map_or_else(|| spec.zero(), RingElement::Delta),
            ProductSum::ModDelta(sum) => sum
                .finish()
                .map_or_else(|| spec.zero(), RingElement::ModDelta),
        }
    }
}

fn mismatch(a: &RingElement, b: &RingElement) -> ! {
    panic!(
        "ring mismatch: {} ({}) vs {} ({})",
        a,
        a.spec(),
        b,
        b.spec()
    )
}

impl RingElement {
    pub fn spec(&self) -> RingSpec {
        match self {
            RingElement::Integer(_) => RingSpec::Integers,
            RingElement::Rational(_) => RingSpec::Rational,
            RingElement::Mod(a) => RingSpec::PrimeField {
                p: Prime(a.modulus()),
            },
            RingElement::Delta(_) => RingSpec::RationalFunctionDelta,
            RingElement::ModDelta(f) => RingSpec::PrimeFieldDelta {
                p: Prime(f.ctx().modulus()),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Integer(n) => n.is_zero(),
            RingElement::Rational(q) => Zero::is_zero(q),
            RingElement::Mod(a) => FieldElem::is_zero(a),
            RingElement::Delta(f) => f.is_zero(),
            RingElement::ModDelta(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.spec().one()
    }

    /// Field variants: nonzero. Integers: a unit, i.e. `+1` or `-1`.
    pub fn is_invertible(&self) -> bool {
        match self {
            RingElement::Integer(n) => n.abs().is_one(),
            _ => !self.is_zero(),
        }
    }

    pub fn inverse(&self) -> Option<RingElement> {
        match self {
            RingElement::Integer(n) => n.abs().is_one().then(|| self.clone()),
            RingElement::Rational(q) => FieldElem::inverse(q).map(RingElement::Rational),
            RingElement::Mod(a) => a.inverse().map(RingElement::Mod),
            RingElement::Delta(f) => f.inverse().map(RingElement::Delta),
            RingElement::ModDelta(f) => f.inverse().map(RingElement::ModDelta),
        }
    }

    /// `self / rhs` when `rhs` is invertible.
    pub fn checked_div(&self, rhs: &RingElement) -> Option<RingElement> {
        if let (RingElement::Integer(a), RingElement::Integer(b)) = (self, rhs) {
            // Exact division also succeeds for non-units when it divides evenly.
            if b.is_zero() {
                return None;
            }
            let (q, r) = num::Integer::div_rem(a, b);
            return r.is_zero().then_some(RingElement::Integer(q));
        }
        rhs.inverse().map(|inv| self * &inv)
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut acc = self.spec().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The value as an exact rational, when the ring is `Z` or `Q`, or the
    /// element is a constant of `Q(delta)`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            RingElement::Integer(n) => Some(BigRational::from_integer(n.clone())),
            RingElement::Rational(q) => Some(q.clone()),
            RingElement::Delta(f) if f.is_polynomial() && f.num().degree().unwrap_or(0) == 0 => {
                Some(f.num().coeff(0).cloned().unwrap_or_else(BigRational::zero))
            }
            _ => None,
        }
    }

    /// For elements of `Q(delta)` that are polynomials with integer coefficients,
    /// the coefficient list (constant term first).
    pub fn as_integer_polynomial(&self) -> Option<Vec<BigInt>> {
        match self {
            RingElement::Delta(f) if f.is_polynomial() => f
                .num()
                .coeffs()
                .iter()
                .map(|c| c.is_integer().then(|| c.to_integer()))
                .collect(),
            RingElement::Integer(n) => Some(if n.is_zero() { vec![] } else { vec![n.clone()] }),
            _ => None,
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $int:expr, $rat:expr, $fp:expr, $rf:expr) => {
        impl $trait<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                use RingElement::*;
                match (self, rhs) {
                    (Integer(a), Integer(b)) => Integer($int(a, b)),
                    (Rational(a), Rational(b)) => Rational($rat(a, b)),
                    (Mod(a), Mod(b)) => Mod($fp(a, b)),
                    (Delta(a), Delta(b)) => Delta($rf(a, b)),
                    (ModDelta(a), ModDelta(b)) => ModDelta($rf(a, b)),
                    _ => mismatch(self, rhs),
                }
            }
        }
        impl $trait<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(
    Add,
    add,
    |a: &BigInt, b: &BigInt| a + b,
    |a: &BigRational, b: &BigRational| a + b,
    |a: &Fp, b: &Fp| a.plus(b),
    |a: &RatFunc<_>, b| a.add(b)
);
binop!(
    Sub,
    sub,
    |a: &BigInt, b: &BigInt| a - b,
    |a: &BigRational, b: &BigRational| a - b,
    |a: &Fp, b: &Fp| a.minus(b),
    |a: &RatFunc<_>, b| a.sub(b)
);
binop!(
    Mul,
    mul,
    |a: &BigInt, b: &BigInt| a * b,
    |a: &BigRational, b: &BigRational| a * b,
    |a: &Fp, b: &Fp| a.times(b),
    |a: &RatFunc<_>, b| a.mul(b)
);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        match self {
            RingElement::Integer(a) => RingElement::Integer(-a),
            RingElement::Rational(a) => RingElement::Rational(-a),
            RingElement::Mod(a) => RingElement::Mod(a.negated()),
            RingElement::Delta(f) => RingElement::Delta(f.neg()),
            RingElement::ModDelta(f) => RingElement::ModDelta(f.neg()),
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

/// Writes a polynomial in `delta` from the top degree down, e.g. `2*delta^2-1`.
fn write_poly<C: fmt::Display + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[C],
    is_neg: impl Fn(&C) -> Option<String>,
    one: &str,
) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (deg, c) in coeffs.iter().enumerate().rev() {
        let s = c.to_string();
        if s == "0" {
            continue;
        }
        let (neg, mag) = match is_neg(c) {
            Some(m) => (true, m),
            None => (false, s),
        };
        if neg {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        first = false;
        match deg {
            0 => write!(f, "{mag}")?,
            _ => {
                if mag != one {
                    write!(f, "{mag}*")?;
                }
                if deg == 1 {
                    write!(f, "delta")?;
                } else {
                    write!(f, "delta^{deg}")?;
                }
            }
        }
    }
    Ok(())
}

struct IntPoly<'a>(&'a [BigInt]);

impl fmt::Display for IntPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(
            f,
            self.0,
            |c| c.is_negative().then(|| (-c).to_string()),
            "1",
        )
    }
}

struct ModPoly<'a>(&'a [Fp]);

impl fmt::Display for ModPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.0, |_| None, "1")
    }
}

/// Number of nonzero terms.
fn term_count<C>(coeffs: &[C], is_zero: impl Fn(&C) -> bool) -> usize {
    coeffs.iter().filter(|c| !is_zero(c)).count()
}

fn write_fraction(
    f: &mut fmt::Formatter<'_>,
    num: &dyn fmt::Display,
    num_terms: usize,
    den: &dyn fmt::Display,
    den_is_one: bool,
    den_is_atom: bool,
) -> fmt::Result {
    if den_is_one {
        return write!(f, "{num}");
    }
    if num_terms > 1 {
        write!(f, "({num})")?;
    } else {
        write!(f, "{num}")?;
    }
    if den_is_atom {
        write!(f, "/{den}")
    } else {
        write!(f, "/({den})")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Integer(n) => write!(f, "{n}"),
            RingElement::Rational(q) => write!(f, "{q}"),
            RingElement::Mod(a) => write!(f, "{a}"),
            RingElement::Delta(rf) => {
                let (sn, n) = rf.num().primitive_integer_form();
                let (sd, d) = rf.den().primitive_integer_form();
                let r = sn / sd;
                let n: Vec<BigInt> = n.iter().map(|c| c * r.numer()).collect();
                let d: Vec<BigInt> = d.iter().map(|c| c * r.denom()).collect();
                let d_terms = term_count(&d, |c| c.is_zero());
                // A lone `delta^k` or a positive integer needs no parentheses.
                let d_atom = d_terms == 1
                    && (d.len() == 1 || d.last().is_some_and(|c| c.is_one()));
                write_fraction(
                    f,
                    &IntPoly(&n),
                    term_count(&n, |c| c.is_zero()),
                    &IntPoly(&d),
                    d.len() == 1 && d[0].is_one(),
                    d_atom,
                )
            }
            RingElement::ModDelta(rf) => {
                let n = rf.num().coeffs();
                let d = rf.den().coeffs();
                let d_terms = term_count(d, |c| FieldElem::is_zero(c));
                write_fraction(
                    f,
                    &ModPoly(n),
                    term_count(n, |c| FieldElem::is_zero(c)),
                    &ModPoly(d),
                    d.len() == 1,
                    d_terms == 1,
                )
            }
        }
    }
}

/// Convenience for tests and examples: the element `n` in `spec`.
pub fn int(spec: RingSpec, n: i64) -> RingElement {
    spec.from_int(n)
}

impl Poly<BigRational> {
    pub fn to_ring(&self) -> RingElement {
        RingElement::Delta(RatFunc::from_poly(self.clone(), &BigRational::one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qd() -> RingSpec {
        RingSpec::RationalFunctionDelta
    }

    #[test]
    fn invertibility_examples() {
        assert!(!qd().zero().is_invertible());
        let f3 = RingSpec::prime_field(3).unwrap();
        assert!(!f3.from_int(3).is_invertible());
        let d = qd().delta().unwrap();
        assert!((&(&d * &d) - &qd().one()).is_invertible());
        assert!(!RingSpec::Integers.from_int(2).is_invertible());
        assert!(RingSpec::Integers.from_int(-1).is_invertible());
    }

    #[test]
    fn rejects_composite_moduli() {
        assert_eq!(RingSpec::prime_field(9), Err(Error::NotPrime(9)));
        assert!(RingSpec::prime_field(7).is_ok());
    }

    #[test]
    fn display_is_parseable() {
        let d = qd().delta().unwrap();
        let one = qd().one();
        let cases = vec![
            d.clone(),
            &(&d * &d) - &one,
            one.checked_div(&d).unwrap(),
            (&(&d * &d) - &one).checked_div(&d).unwrap(),
            (-&d).checked_div(&(&(&d * &qd().from_int(2)) + &one)).unwrap(),
            qd().from_rational(&BigRational::new(3.into(), 4.into())).unwrap(),
            (&d + &one).checked_div(&qd().from_int(6)).unwrap(),
        ];
        for x in cases {
            let s = x.to_string();
            assert_eq!(qd().parse_element(&s).unwrap(), x, "round trip of {s}");
        }
        assert_eq!(one.checked_div(&d).unwrap().to_string(), "1/delta");
        assert_eq!(
            (&(&d * &d) - &one).checked_div(&d).unwrap().to_string(),
            "(delta^2-1)/delta"
        );
    }

    #[test]
    fn deformation_round_trip() {
        let f5 = RingSpec::prime_field(5).unwrap();
        let def = f5.deformation().unwrap();
        let x = f5.from_int(3);
        let lifted = &f5.lift(&x).unwrap() + &def.delta().unwrap();
        assert_eq!(f5.specialize(&lifted), Some(x));
        let pole = def.one().checked_div(&def.delta().unwrap()).unwrap();
        assert_eq!(f5.specialize(&pole), None);
    }
}
