//! Helpers and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use multitl::color::parse_colors;
use multitl::diagrams::{enumerate_colored, ColorSequence};
use multitl::hecke::{CoxeterWord, HeckeElement, LaurentPoly};
use multitl::jones_wenzl::JonesWenzl;
use multitl::tl_category::TLMorphism;
use multitl::{CartanMatrix, Color, RingSpec};

pub fn seq(s: &str) -> ColorSequence {
    ColorSequence::parse(s).unwrap()
}

pub fn color(s: &str) -> Color {
    Color::new(s).unwrap()
}

pub fn rbg() -> Vec<Color> {
    parse_colors("rbg").unwrap()
}

pub fn symmetric(colors: &str) -> JonesWenzl {
    JonesWenzl::new(CartanMatrix::symmetric_delta(parse_colors(colors).unwrap()))
}

pub fn crystallographic(colors: &str, p: u64) -> JonesWenzl {
    JonesWenzl::new(CartanMatrix::crystallographic(
        parse_colors(colors).unwrap(),
        RingSpec::prime_field(p).unwrap(),
    ))
}

/// Every word over `alphabet` with distinct neighbours and length `1..=max_len`.
pub fn reduced_words(alphabet: &[Color], max_len: usize) -> Vec<ColorSequence> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Color>> = alphabet.iter().map(|c| vec![c.clone()]).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            out.push(ColorSequence::new(w.clone()).unwrap());
            for c in alphabet {
                if w.last() != Some(c) {
                    let mut v = w.clone();
                    v.push(c.clone());
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    out
}

pub fn catalan(n: u64) -> u64 {
    (0..n).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// Counts non-crossing perfect matchings of `n` points on a circle by trying
/// every perfect matching and discarding those with crossing chords.
pub fn brute_force_noncrossing(n: usize) -> usize {
    fn go(free: &mut Vec<usize>, chords: &mut Vec<(usize, usize)>, count: &mut usize) {
        if free.is_empty() {
            let crosses = chords.iter().any(|&(a, b)| {
                chords
                    .iter()
                    .any(|&(c, d)| a < c && c < b && b < d)
            });
            if !crosses {
                *count += 1;
            }
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            chords.push((a, b));
            go(free, chords, count);
            chords.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    if n % 2 == 1 {
        return 0;
    }
    let mut count = 0;
    go(&mut (0..n).collect(), &mut Vec::new(), &mut count);
    count
}

/// Checks the defining properties of a top idempotent; returns a description
/// of the first failure.
pub fn jw_properties(jw: &JonesWenzl, x: &ColorSequence, f: &TLMorphism) -> Result<(), String> {
    let tl = jw.tl();
    let one = jw.ring().one();
    if f.identity_coefficient() != Some(&one) {
        return Err(format!("JW({x}) has identity coefficient {:?}", f.identity_coefficient()));
    }
    if tl.compose(f, f).unwrap() != *f {
        return Err(format!("JW({x}) is not idempotent"));
    }
    if f.involution() != *f {
        return Err(format!("JW({x}) is not fixed by the involution"));
    }
    for i in x.cap_positions() {
        if !tl.apply_cap(f, i).unwrap().is_zero() {
            return Err(format!("cap {i} does not kill JW({x})"));
        }
        if !tl.apply_cup(f, i).unwrap().is_zero() {
            return Err(format!("cup {i} does not kill JW({x})"));
        }
    }
    for d in enumerate_colored(x, x) {
        let g = tl.basis(&d);
        let mu = g.identity_coefficient().cloned().unwrap_or_else(|| jw.ring().zero());
        let expected = f.scale(&mu);
        if tl.compose(f, &g).unwrap() != expected || tl.compose(&g, f).unwrap() != expected {
            return Err(format!("JW({x}) is not central modulo the lower ideal at {}", d.matching()));
        }
    }
    Ok(())
}

/// KL basis elements by the classical characterization: `b_w` is `b_{w'} b_s`
/// minus the multiples of shorter `b_y` needed to leave every lower standard
/// coefficient in `v Z[v]`. Uses only the quadratic relation.
pub struct ClassicalKl {
    memo: HashMap<CoxeterWord, HeckeElement>,
}

impl ClassicalKl {
    pub fn new() -> Self {
        ClassicalKl {
            memo: HashMap::new(),
        }
    }

    pub fn get(&mut self, w: &CoxeterWord) -> HeckeElement {
        if let Some(b) = self.memo.get(w) {
            return b.clone();
        }
        let b = if w.is_empty() {
            HeckeElement::one()
        } else {
            let s = w.last().unwrap().clone();
            let mut acc = self.get(&w.without_last()).mult_bs(&s);
            loop {
                let offending = acc
                    .terms()
                    .iter()
                    .filter(|(y, p)| *y != w && p.coeff(0) != 0)
                    .max_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
                    .map(|(y, p)| (y.clone(), p.coeff(0)));
                let Some((y, c)) = offending else { break };
                let by = self.get(&y);
                acc = &acc - &by.scale(&LaurentPoly::monomial(0, c));
            }
            for (y, p) in acc.terms() {
                let lowest = *p.terms().keys().next().unwrap();
                assert!(y == w || lowest > 0, "b_{w} has coefficient {p} at {y}");
            }
            assert_eq!(acc.coeff(w), LaurentPoly::one());
            acc
        };
        self.memo.insert(w.clone(), b.clone());
        b
    }

    /// `sum p_y b_y` in the standard basis.
    pub fn expand(&mut self, kl: &BTreeMap<CoxeterWord, LaurentPoly>) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (y, p) in kl {
            out = &out + &self.get(y).scale(p);
        }
        out
    }
}
