//! Rational functions in one indeterminate over an exact field.

use std::collections::HashMap;

use super::poly::{FieldElem, Poly};

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Equal functions have
/// identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: FieldElem> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            let ctx = den.lead().unwrap();
            return RatFunc {
                num,
                den: Poly::constant(ctx.one_like()),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let l = den.lead().unwrap().inverse().unwrap();
        RatFunc {
            num: num.scale(&l),
            den: den.scale(&l),
        }
    }

    pub fn from_poly(p: Poly<F>, ctx: &F) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(ctx.one_like()),
        }
    }

    pub fn constant(c: F) -> Self {
        let one = c.one_like();
        RatFunc {
            num: Poly::constant(c),
            den: Poly::constant(one),
        }
    }

    pub fn variable(ctx: &F) -> Self {
        Self::from_poly(Poly::variable(ctx), ctx)
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    /// A field element of the coefficient field, for building constants.
    pub fn ctx(&self) -> &F {
        self.den.lead().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(self.num.add(&rhs.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::from_poly(Poly::zero(), self.ctx());
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc {
                num: self.num.mul(&rhs.num),
                den: self.den.clone(),
            };
        }
        Self::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    /// Value at `x`, or `None` when the denominator vanishes there.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        let inv = d.inverse()?;
        Some(self.num.eval(x).times(&inv))
    }
}

/// A sum of products of rational functions. Numerators over the same
/// denominator are added as plain polynomials; nothing is reduced until `finish`.
#[derive(Clone, Debug)]
pub struct FractionSum<F> {
    by_den: HashMap<Poly<F>, Poly<F>>,
}

impl<F: FieldElem> Default for FractionSum<F> {
    fn default() -> Self {
        FractionSum {
            by_den: HashMap::new(),
        }
    }
}

impl<F: FieldElem> FractionSum<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_product(&mut self, factors: &[&RatFunc<F>]) {
        let Some((first, rest)) = factors.split_first() else {
            return;
        };
        let mut num = first.num.clone();
        let mut den = first.den.clone();
        for f in rest {
            num = num.mul(&f.num);
            if !f.den.is_constant() {
                den = den.mul(&f.den);
            }
        }
        if num.is_zero() {
            return;
        }
        let acc = self.by_den.entry(den).or_insert_with(Poly::zero);
        *acc = acc.add(&num);
    }

    /// The reduced sum, or `None` when nothing nonzero was added.
    pub fn finish(self) -> Option<RatFunc<F>> {
        self.by_den
            .into_iter()
            .filter(|(_, num)| !num.is_zero())
            .map(|(den, num)| RatFunc::new(num, den))
            .reduce(|a, b| a.add(&b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::poly::Fp;
    use num::{BigInt, BigRational};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn p(cs: &[i64]) -> Poly<BigRational> {
        Poly::from_coeffs(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn cancels_common_factors() {
        // (d^2 - 1) / (d - 1) = d + 1
        let f = RatFunc::new(p(&[-1, 0, 1]), p(&[-1, 1]));
        assert_eq!(f, RatFunc::from_poly(p(&[1, 1]), &q(1)));
        assert!(f.is_polynomial());
    }

    #[test]
    fn denominator_is_monic() {
        let f = RatFunc::new(p(&[3]), p(&[0, 2]));
        assert_eq!(f.den(), &p(&[0, 1]));
        assert_eq!(f.num().coeffs()[0], BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn evaluation_detects_poles() {
        let f = RatFunc::new(p(&[1]), p(&[0, 1]));
        assert_eq!(f.eval(&q(0)), None);
        assert_eq!(f.eval(&q(2)), Some(BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn fraction_sum_matches_eager_arithmetic() {
        let a = RatFunc::new(p(&[1]), p(&[0, 1]));
        let b = RatFunc::new(p(&[2, 1]), p(&[-1, 1]));
        let c = RatFunc::from_poly(p(&[0, 3]), &q(1));
        let mut sum = FractionSum::new();
        sum.add_product(&[&a, &b]);
        sum.add_product(&[&c, &a]);
        sum.add_product(&[&b, &c, &b]);
        let eager = a.mul(&b).add(&c.mul(&a)).add(&b.mul(&c).mul(&b));
        assert_eq!(sum.finish(), Some(eager));
        let mut cancel = FractionSum::new();
        cancel.add_product(&[&a]);
        cancel.add_product(&[&a.neg()]);
        assert_eq!(cancel.finish(), None);
    }

    #[test]
    fn works_over_prime_fields() {
        let one = Fp::new(1, 5);
        let x = RatFunc::variable(&one);
        let inv = x.inverse().unwrap();
        let prod = x.mul(&inv);
        assert_eq!(prod, RatFunc::constant(one));
        let sq = x.mul(&x).sub(&RatFunc::constant(one));
        let lin = x.sub(&RatFunc::constant(one));
        let quot = sq.mul(&lin.inverse().unwrap());
        assert_eq!(quot, x.add(&RatFunc::constant(one)));
    }
}
