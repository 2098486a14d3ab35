//! One- and two-colored quantum numbers and binomial coefficients.
//!
//! Two-colored quantum numbers for an ordered pair `(s, t)` start from
//! `[0] = 0`, `[1] = 1`, `[2]_{s,t} = -a[s][t]` and satisfy
//! `[2]_{s,t} [m]_{t,s} = [m-1]_{s,t} + [m+1]_{s,t}`.

use std::collections::HashMap;
use std::sync::RwLock;

use num::BigInt;

use super::{CartanMatrix, RingElement, RingSpec};
use crate::color::Color;

/// `[m]` for the one-variable recursion `[2][m] = [m+1] + [m-1]` with the given `[2]`.
pub fn quantum_number(m: i64, two: &RingElement) -> RingElement {
    let (u, _) = alternating_pair(m, two, two);
    u
}

/// `([m]_{s,t}, [m]_{t,s})` given `x = [2]_{s,t}` and `y = [2]_{t,s}`.
fn alternating_pair(m: i64, x: &RingElement, y: &RingElement) -> (RingElement, RingElement) {
    let ring = x.spec();
    let (mut u_prev, mut w_prev) = (ring.zero(), ring.zero());
    let (mut u, mut w) = (ring.one(), ring.one());
    if m == 0 {
        return (u_prev, w_prev);
    }
    if m > 0 {
        for _ in 1..m {
            let u_next = &(x * &w) - &u_prev;
            let w_next = &(y * &u) - &w_prev;
            u_prev = std::mem::replace(&mut u, u_next);
            w_prev = std::mem::replace(&mut w, w_next);
        }
        return (u, w);
    }
    // Run the recursion backwards from ([1], [0]).
    let (mut u_hi, mut w_hi) = (u, w);
    let (mut u_lo, mut w_lo) = (u_prev, w_prev);
    for _ in 0..(-m) {
        let u_next = &(x * &w_lo) - &u_hi;
        let w_next = &(y * &u_lo) - &w_hi;
        u_hi = std::mem::replace(&mut u_lo, u_next);
        w_hi = std::mem::replace(&mut w_lo, w_next);
    }
    (u_lo, w_lo)
}

/// `[m]_{s,t}` for the Cartan matrix `a`.
pub fn two_colored_quantum(m: i64, s: &Color, t: &Color, a: &CartanMatrix) -> RingElement {
    let x = -a.entry(s, t);
    let y = -a.entry(t, s);
    alternating_pair(m, &x, &y).0
}

/// The value of a two-colored binomial, or `Undefined` when the factorial
/// ratio cannot be formed in the ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Binomial {
    Value(RingElement),
    Undefined,
}

impl Binomial {
    pub fn value(&self) -> Option<&RingElement> {
        match self {
            Binomial::Value(v) => Some(v),
            Binomial::Undefined => None,
        }
    }
}

/// Coefficients (constant term first) of the symmetric quantum binomial as a
/// polynomial in `[2]` with integer coefficients.
pub fn symmetric_binomial_polynomial(k: i64, m: i64) -> Vec<BigInt> {
    let qd = RingSpec::RationalFunctionDelta;
    if m < 0 || m > k {
        return Vec::new();
    }
    let delta = qd.delta().unwrap();
    let mut num = qd.one();
    let mut den = qd.one();
    for i in 0..m {
        num = &num * &quantum_number(k - i, &delta);
        den = &den * &quantum_number(i + 1, &delta);
    }
    num.checked_div(&den)
        .and_then(|b| b.as_integer_polynomial())
        .expect("quantum binomials are integer polynomials in [2]")
}

fn eval_integer_poly(coeffs: &[BigInt], at: &RingElement) -> RingElement {
    let ring = at.spec();
    let mut acc = ring.zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * at) + &ring.from_bigint(c);
    }
    acc
}

/// Quantum numbers and binomials of one Cartan matrix, memoized.
#[derive(Debug)]
pub struct QuantumCalculus {
    cartan: CartanMatrix,
    numbers: RwLock<HashMap<(Color, Color, i64), RingElement>>,
    binomials: RwLock<HashMap<(Color, Color, i64, i64), Binomial>>,
}

impl QuantumCalculus {
    pub fn new(cartan: CartanMatrix) -> Self {
        QuantumCalculus {
            cartan,
            numbers: RwLock::new(HashMap::new()),
            binomials: RwLock::new(HashMap::new()),
        }
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn ring(&self) -> RingSpec {
        self.cartan.ring()
    }

    /// `[m]_{s,t}`.
    pub fn number(&self, m: i64, s: &Color, t: &Color) -> RingElement {
        let key = (s.clone(), t.clone(), m);
        if let Some(v) = self.numbers.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = two_colored_quantum(m, s, t, &self.cartan);
        self.numbers.write().unwrap().insert(key, v.clone());
        v
    }

    /// `[k]!_{s,t} = [k]_{s,t} [k-1]_{t,s} [k-2]_{s,t} ...`, down to `[1]`.
    pub fn factorial(&self, k: i64, s: &Color, t: &Color) -> RingElement {
        let mut acc = self.ring().one();
        let (mut a, mut b) = (s, t);
        for i in (1..=k).rev() {
            acc = &acc * &self.number(i, a, b);
            std::mem::swap(&mut a, &mut b);
        }
        acc
    }

    /// The two-colored binomial `[k choose m]_{s,t}`.
    ///
    /// For a symmetric pair this is the ordinary quantum binomial evaluated at
    /// `[2] = -a[s][t]` (the integer binomial when `a = -2`). Otherwise it is
    /// the ratio `[k]!/([m]! [k-m]!)`, where every `[j]` carries the subscript
    /// `(s,t)` when `k - j` is even and `(t,s)` when it is odd. `Undefined`
    /// when the denominator is not invertible.
    pub fn binomial(&self, k: i64, m: i64, s: &Color, t: &Color) -> Binomial {
        let ring = self.ring();
        if m < 0 || m > k {
            return Binomial::Value(ring.zero());
        }
        if m == 0 || m == k {
            return Binomial::Value(ring.one());
        }
        let key = (s.clone(), t.clone(), k, m);
        if let Some(b) = self.binomials.read().unwrap().get(&key) {
            return b.clone();
        }
        let b = if self.cartan.is_symmetric_pair(s, t) {
            let two = -self.cartan.entry(s, t);
            Binomial::Value(eval_integer_poly(
                &symmetric_binomial_polynomial(k, m),
                &two,
            ))
        } else {
            let mut num = ring.one();
            let (mut a, mut c) = (s, t);
            for i in 0..m {
                num = &num * &self.number(k - i, a, c);
                std::mem::swap(&mut a, &mut c);
            }
            let den = if (k - m) % 2 == 0 {
                self.factorial(m, s, t)
            } else {
                self.factorial(m, t, s)
            };
            match num.checked_div(&den) {
                Some(v) => Binomial::Value(v),
                None => Binomial::Undefined,
            }
        };
        self.binomials.write().unwrap().insert(key, b.clone());
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::parse_colors;
    use crate::rings::poly::FieldElem;
    use num::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    fn rb() -> (Color, Color) {
        let c = parse_colors("rb").unwrap();
        (c[0].clone(), c[1].clone())
    }

    fn generic(ars: BigRational, asr: BigRational) -> CartanMatrix {
        let (r, b) = rb();
        let q = RingSpec::Rational;
        let mut e = BTreeMap::new();
        e.insert((r.clone(), b.clone()), RingElement::Rational(ars));
        e.insert((b, r), RingElement::Rational(asr));
        CartanMatrix::new(parse_colors("rb").unwrap(), q, e).unwrap()
    }

    #[test]
    fn one_variable_examples() {
        let qd = RingSpec::RationalFunctionDelta;
        let d = qd.delta().unwrap();
        assert_eq!(quantum_number(0, &d), qd.zero());
        assert_eq!(quantum_number(1, &d), qd.one());
        assert_eq!(quantum_number(2, &d), d);
        assert_eq!(quantum_number(3, &d), &(&d * &d) - &qd.one());
        for m in 0..12 {
            assert_eq!(quantum_number(-m, &d), -quantum_number(m, &d));
        }
    }

    #[test]
    fn two_colored_examples() {
        let (r, b) = rb();
        let sym = CartanMatrix::symmetric_delta(parse_colors("rb").unwrap());
        let d = RingSpec::RationalFunctionDelta.delta().unwrap();
        assert_eq!(two_colored_quantum(2, &r, &b, &sym), d);

        let a = generic(BigRational::new(3.into(), 7.into()), BigRational::from_integer((-5).into()));
        let ars = a.entry(&r, &b);
        let asr = a.entry(&b, &r);
        assert_eq!(
            two_colored_quantum(3, &r, &b, &a),
            &(&ars * &asr) - &RingSpec::Rational.one()
        );

        let cryst = CartanMatrix::crystallographic(parse_colors("rb").unwrap(), RingSpec::Rational);
        assert_eq!(two_colored_quantum(5, &r, &b, &cryst), RingSpec::Rational.from_int(5));
    }

    #[test]
    fn specializations_hold_for_small_m() {
        let (r, b) = rb();
        let sym = CartanMatrix::symmetric_delta(parse_colors("rb").unwrap());
        let d = RingSpec::RationalFunctionDelta.delta().unwrap();
        let cryst = CartanMatrix::crystallographic(parse_colors("rb").unwrap(), RingSpec::Integers);
        for m in -50..=50 {
            assert_eq!(two_colored_quantum(m, &r, &b, &sym), quantum_number(m, &d));
            assert_eq!(
                two_colored_quantum(m, &r, &b, &cryst),
                RingSpec::Integers.from_int(m)
            );
        }
    }

    #[test]
    fn odd_symmetry_and_even_twist_at_random_points() {
        let (r, b) = rb();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let ars = BigRational::new(rng.gen_range(-30..30).into(), rng.gen_range(1..9).into());
            let asr = BigRational::new(rng.gen_range(-30..30).into(), rng.gen_range(1..9).into());
            let a = generic(ars, asr);
            for m in 0..=20 {
                let st = two_colored_quantum(m, &r, &b, &a);
                let ts = two_colored_quantum(m, &b, &r, &a);
                if m % 2 == 1 {
                    assert_eq!(st, ts);
                } else {
                    assert_eq!(&st * &a.entry(&b, &r), &ts * &a.entry(&r, &b));
                }
            }
        }
    }

    #[test]
    fn binomial_examples() {
        let (r, b) = rb();
        let f3 = RingSpec::prime_field(3).unwrap();
        let calc = QuantumCalculus::new(CartanMatrix::crystallographic(parse_colors("rb").unwrap(), f3));
        assert_eq!(calc.binomial(3, 1, &r, &b), Binomial::Value(f3.zero()));
        assert_eq!(calc.binomial(9, 0, &r, &b), Binomial::Value(f3.one()));

        let qd = RingSpec::RationalFunctionDelta;
        let d = qd.delta().unwrap();
        let calc = QuantumCalculus::new(CartanMatrix::symmetric_delta(parse_colors("rb").unwrap()));
        assert_eq!(calc.binomial(3, 1, &r, &b), Binomial::Value(&(&d * &d) - &qd.one()));
        // [4 choose 2] = [4][3]/[2] = [3]([2]^2 - 2)
        let three = &(&d * &d) - &qd.one();
        let expected = &three * &(&(&d * &d) - &qd.from_int(2));
        assert_eq!(calc.binomial(4, 2, &r, &b), Binomial::Value(expected));
    }

    #[test]
    fn crystallographic_binomials_are_integer_binomials() {
        let (r, b) = rb();
        let calc = QuantumCalculus::new(CartanMatrix::crystallographic(
            parse_colors("rb").unwrap(),
            RingSpec::Integers,
        ));
        let mut row = vec![BigInt::from(1)];
        for k in 1..=14i64 {
            let mut next = vec![BigInt::from(1); (k + 1) as usize];
            for m in 1..k as usize {
                next[m] = &row[m - 1] + &row[m];
            }
            row = next;
            for m in 0..=k {
                assert_eq!(
                    calc.binomial(k, m, &r, &b),
                    Binomial::Value(RingElement::Integer(row[m as usize].clone()))
                );
            }
        }
    }

    #[test]
    fn general_binomial_matches_symmetric_when_entries_agree_up_to_order() {
        // At a generic point the ratio is defined; with equal entries it must
        // reduce to the symmetric value.
        let (r, b) = rb();
        let v = BigRational::new((-7).into(), 3.into());
        let sym = generic(v.clone(), v.clone());
        let calc = QuantumCalculus::new(sym);
        let two = RingElement::Rational(-v.clone());
        for k in 0..8 {
            for m in 0..=k {
                let direct = eval_integer_poly(&symmetric_binomial_polynomial(k, m), &two);
                assert_eq!(calc.binomial(k, m, &r, &b).value().unwrap(), &direct);
            }
        }
        let asym = QuantumCalculus::new(generic(v.clone(), v.one_like()));
        assert!(matches!(asym.binomial(5, 2, &r, &b), Binomial::Value(_)));
    }
}
