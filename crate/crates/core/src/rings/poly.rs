//! Univariate polynomials over an exact coefficient field.
//!
//! Coefficient fields carry their own context (a residue knows its modulus), so
//! constructors that need a `1` or a `0` take a sample element to copy it from.

use std::fmt;
use std::hash::Hash;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact field arithmetic with the context carried by the element itself.
pub trait FieldElem: Clone + Eq + Hash + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` exactly when the element is zero.
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl FieldElem for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// A residue modulo a prime `modulus`, stored in `0..modulus`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    /// The caller guarantees `modulus` is prime; `RingSpec` checks this once.
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = ((value as i128 % m) + m) % m;
        Fp { value: v as u64, modulus }
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Self {
        let m = BigInt::from(modulus);
        let r = ((value % &m) + &m) % &m;
        let v: u64 = r.try_into().expect("residue fits in u64");
        Fp { value: v, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, rhs: &Fp) {
        assert_eq!(
            self.modulus, rhs.modulus,
            "mixing residues of different prime fields"
        );
    }

    fn pow(&self, mut e: u64) -> Fp {
        let p = self.modulus as u128;
        let mut base = self.value as u128;
        let mut acc: u128 = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp {
            value: acc as u64,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElem for Fp {
    fn zero_like(&self) -> Self {
        Fp {
            value: 0,
            modulus: self.modulus,
        }
    }
    fn one_like(&self) -> Self {
        Fp::new(1, self.modulus)
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        Fp::from_bigint(n, self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Fp {
            value: s as u64,
            modulus: self.modulus,
        }
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let m = self.modulus as u128;
        let s = (self.value as u128 + m - rhs.value as u128) % m;
        Fp {
            value: s as u64,
            modulus: self.modulus,
        }
    }
    fn times(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let s = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fp {
            value: s as u64,
            modulus: self.modulus,
        }
    }
    fn negated(&self) -> Self {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

/// Dense polynomial, coefficients from degree 0 upwards, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: FieldElem> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate itself; `ctx` supplies the field.
    pub fn variable(ctx: &F) -> Self {
        Poly {
            coeffs: vec![ctx.zero_like(), ctx.one_like()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(F::negated).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlead = divisor.lead().expect("division by the zero polynomial");
        let dinv = dlead.inverse().expect("nonzero field element");
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (Self::zero(), self.clone());
        }
        let zero = dlead.zero_like();
        let mut quot = vec![zero; rem.len() - ddeg];
        for shift in (0..quot.len()).rev() {
            let c = rem[shift + ddeg].times(&dinv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = rem[shift + j].minus(&c.times(d));
            }
            quot[shift] = c;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.inverse().expect("nonzero lead");
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }
}

impl Poly<BigRational> {
    /// Scales to coprime integer coefficients with a positive leading coefficient.
    pub fn primitive_integer_form(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::one(), Vec::new());
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = num::integer::gcd(g, c.clone());
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let ints = ints.into_iter().map(|c| c / &g).collect();
        (BigRational::new(g, lcm), ints)
    }
}
