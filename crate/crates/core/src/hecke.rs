//! The Hecke algebra of the universal Coxeter group on an alphabet, in the
//! standard basis `H_w`, with `H_s^2 = (v^-1 - v) H_s + 1` and `b_s = H_s + v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::color::{format_colors, parse_colors, Color};
use crate::error::Result;

/// A group element, stored as its unique reduced word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Color>", into = "Vec<Color>")]
pub struct CoxeterWord(Vec<Color>);

/// Deletes adjacent repeated letters until none remain.
pub fn reduce(letters: &[Color]) -> CoxeterWord {
    let mut out: Vec<Color> = Vec::with_capacity(letters.len());
    for c in letters {
        if out.last() == Some(c) {
            out.pop();
        } else {
            out.push(c.clone());
        }
    }
    CoxeterWord(out)
}

/// Whether no two adjacent letters agree.
pub fn is_reduced(letters: &[Color]) -> bool {
    letters.windows(2).all(|w| w[0] != w[1])
}

impl CoxeterWord {
    pub fn identity() -> Self {
        CoxeterWord(Vec::new())
    }

    /// Parses and reduces a word; the empty string is the identity.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(reduce(&parse_colors(s)?))
    }

    pub fn letters(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<&Color> {
        self.0.last()
    }

    /// The second to last letter.
    pub fn penultimate(&self) -> Option<&Color> {
        self.0.len().checked_sub(2).map(|i| &self.0[i])
    }

    /// The group product `self * s`, reduced.
    pub fn times(&self, s: &Color) -> CoxeterWord {
        let mut v = self.0.clone();
        if v.last() == Some(s) {
            v.pop();
        } else {
            v.push(s.clone());
        }
        CoxeterWord(v)
    }

    pub fn without_last(&self) -> CoxeterWord {
        CoxeterWord(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }
}

impl From<Vec<Color>> for CoxeterWord {
    fn from(v: Vec<Color>) -> Self {
        reduce(&v)
    }
}

impl From<CoxeterWord> for Vec<Color> {
    fn from(w: CoxeterWord) -> Self {
        w.0
    }
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&format_colors(&self.0))
        }
    }
}

/// An integer Laurent polynomial in `v`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(from = "BTreeMap<i32, i64>", into = "BTreeMap<i32, i64>")]
pub struct LaurentPoly(BTreeMap<i32, i64>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c v^e`.
    pub fn monomial(e: i32, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn v_inv() -> Self {
        Self::monomial(-1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<i32, i64> {
        &self.0
    }

    fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let new = self
            .coeff(e)
            .checked_add(c)
            .expect("Laurent coefficient overflow");
        if new == 0 {
            self.0.remove(&e);
        } else {
            self.0.insert(e, new);
        }
    }

    pub fn is_positive(&self) -> bool {
        self.0.values().all(|&c| c > 0)
    }

    /// `v -> v^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly(self.0.iter().map(|(&e, &c)| (-e, c)).collect())
    }
}

impl From<BTreeMap<i32, i64>> for LaurentPoly {
    fn from(m: BTreeMap<i32, i64>) -> Self {
        let mut p = Self::zero();
        for (e, c) in m {
            p.add_term(e, c);
        }
        p
    }
}

impl From<LaurentPoly> for BTreeMap<i32, i64> {
    fn from(p: LaurentPoly) -> Self {
        p.0
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.0 {
            out.add_term(e, c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(&e, &c)| (e, -c)).collect())
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &rhs.0 {
                out.add_term(
                    e1 + e2,
                    c1.checked_mul(c2).expect("Laurent coefficient overflow"),
                );
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.0.iter().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let a = c.unsigned_abs();
            let mono = match e {
                0 => String::new(),
                1 => "v".to_string(),
                _ => format!("v^{e}"),
            };
            match (a, mono.is_empty()) {
                (_, true) => write!(f, "{sign}{a}")?,
                (1, false) => write!(f, "{sign}{mono}")?,
                (_, false) => write!(f, "{sign}{a}{mono}")?,
            }
        }
        Ok(())
    }
}

/// A finite combination of basis elements indexed by group elements. The
/// same container holds standard-basis and KL-basis expansions.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HeckeElement(BTreeMap<CoxeterWord, LaurentPoly>);

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::term(CoxeterWord::identity(), LaurentPoly::one())
    }

    pub fn term(w: CoxeterWord, p: LaurentPoly) -> Self {
        let mut h = Self::zero();
        h.add_term(w, p);
        h
    }

    /// `H_w`.
    pub fn standard(w: CoxeterWord) -> Self {
        Self::term(w, LaurentPoly::one())
    }

    pub fn terms(&self) -> &BTreeMap<CoxeterWord, LaurentPoly> {
        &self.0
    }

    pub fn coeff(&self, w: &CoxeterWord) -> LaurentPoly {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, w: CoxeterWord, p: LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let sum = &self.coeff(&w) + &p;
        if sum.is_zero() {
            self.0.remove(&w);
        } else {
            self.0.insert(w, sum);
        }
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (w, q) in &self.0 {
            out.add_term(w.clone(), q * p);
        }
        out
    }

    /// Right multiplication by `H_s` in the standard basis.
    pub fn mult_hs(&self, s: &Color) -> Self {
        let quad = &LaurentPoly::v_inv() - &LaurentPoly::v();
        let mut out = Self::zero();
        for (w, p) in &self.0 {
            if w.last() == Some(s) {
                out.add_term(w.clone(), p * &quad);
                out.add_term(w.without_last(), p.clone());
            } else {
                out.add_term(w.times(s), p.clone());
            }
        }
        out
    }

    /// Right multiplication by `b_s = H_s + v`.
    pub fn mult_bs(&self, s: &Color) -> Self {
        &self.mult_hs(s) + &self.scale(&LaurentPoly::v())
    }

    pub fn to_json(&self) -> HeckeJson {
        HeckeJson {
            terms: self
                .0
                .iter()
                .map(|(w, p)| HeckeTermJson {
                    word: w.clone(),
                    poly: p.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &HeckeJson) -> Self {
        let mut h = Self::zero();
        for t in &j.terms {
            h.add_term(t.word.clone(), t.poly.clone());
        }
        h
    }
}

impl From<BTreeMap<CoxeterWord, LaurentPoly>> for HeckeElement {
    fn from(m: BTreeMap<CoxeterWord, LaurentPoly>) -> Self {
        let mut h = Self::zero();
        for (w, p) in m {
            h.add_term(w, p);
        }
        h
    }
}

impl Add for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, p) in &rhs.0 {
            out.add_term(w.clone(), p.clone());
        }
        out
    }
}

impl Sub for &HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        self + &rhs.scale(&LaurentPoly::monomial(0, -1))
    }
}

/// Product in the standard basis, folding the right factor letter by letter.
impl Mul for &HeckeElement {
    type Output = HeckeElement;
    fn mul(self, rhs: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (u, q) in &rhs.0 {
            let mut part = self.scale(q);
            for s in u.letters() {
                part = part.mult_hs(s);
            }
            out = &out + &part;
        }
        out
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(w, p)| format!("({p})H_{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HeckeTermJson {
    pub word: CoxeterWord,
    pub poly: LaurentPoly,
}

/// `{"terms":[{"word":["r","b"],"poly":{"0":1,"2":1}}]}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HeckeJson {
    pub terms: Vec<HeckeTermJson>,
}

/// `b_w` in the standard basis by the Dyer recursion: `b_{xs} = b_x b_s`,
/// except `b_{xr} = b_x b_r - b_z` when `x = z b` ends in `r b`.
pub fn kl_basis(w: &CoxeterWord) -> HeckeElement {
    kl_prefixes(w).pop().expect("at least the identity")
}

/// `b_u` for the prefixes `u` of `w`, shortest first.
pub fn kl_prefixes(w: &CoxeterWord) -> Vec<HeckeElement> {
    let mut out = vec![HeckeElement::one()];
    for (i, s) in w.letters().iter().enumerate() {
        let mut next = out[i].mult_bs(s);
        if i >= 2 && w.letters()[i - 2] == *s {
            next = &next - &out[i - 1];
        }
        out.push(next);
    }
    out
}

/// `b_x b_s` in the KL basis by the Dyer cases.
pub fn mult_kl_by_bs(x: &CoxeterWord, s: &Color) -> HeckeElement {
    if x.last() == Some(s) {
        return HeckeElement::term(x.clone(), &LaurentPoly::v() + &LaurentPoly::v_inv());
    }
    let mut out = HeckeElement::standard(x.times(s));
    if x.penultimate() == Some(s) {
        out.add_term(x.without_last(), LaurentPoly::one());
    }
    out
}

/// Expands a KL-basis combination in the standard basis.
pub fn kl_to_standard(h: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (w, p) in h.terms() {
        out = &out + &kl_basis(w).scale(p);
    }
    out
}

/// Rewrites a standard-basis element in the KL basis, peeling off the longest
/// words first (`b_w = H_w + shorter terms`).
pub fn standard_to_kl(h: &HeckeElement) -> HeckeElement {
    let mut rest = h.clone();
    let mut out = HeckeElement::zero();
    while let Some(w) = rest
        .terms()
        .keys()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
        .cloned()
    {
        let p = rest.coeff(&w);
        rest = &rest - &kl_basis(&w).scale(&p);
        out.add_term(w, p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CoxeterWord {
        CoxeterWord::parse(s).unwrap()
    }

    fn c(s: &str) -> Color {
        Color::new(s).unwrap()
    }

    fn poly(terms: &[(i32, i64)]) -> LaurentPoly {
        terms.iter().map(|&(e, c)| (e, c)).collect::<BTreeMap<_, _>>().into()
    }

    #[test]
    fn reduction() {
        assert_eq!(w("rbbr"), CoxeterWord::identity());
        assert_eq!(w("rbrb").to_string(), "rbrb");
        assert_eq!(w("rggb"), w("rb"));
        assert_eq!(w(""), CoxeterWord::identity());
    }

    #[test]
    fn quadratic_relation() {
        let hr = HeckeElement::standard(w("r"));
        assert_eq!(hr.mult_hs(&c("b")), HeckeElement::standard(w("rb")));
        let mut expected = HeckeElement::term(w("r"), poly(&[(-1, 1), (1, -1)]));
        expected.add_term(CoxeterWord::identity(), LaurentPoly::one());
        assert_eq!(hr.mult_hs(&c("r")), expected);
        let mut expected = HeckeElement::term(w("rb"), poly(&[(-1, 1), (1, -1)]));
        expected.add_term(w("r"), LaurentPoly::one());
        assert_eq!(HeckeElement::standard(w("rb")).mult_hs(&c("b")), expected);
    }

    #[test]
    fn small_kl_elements() {
        let mut br = HeckeElement::standard(w("r"));
        br.add_term(CoxeterWord::identity(), LaurentPoly::v());
        assert_eq!(kl_basis(&w("r")), br);

        let mut brb = HeckeElement::standard(w("rb"));
        brb.add_term(w("r"), LaurentPoly::v());
        brb.add_term(w("b"), LaurentPoly::v());
        brb.add_term(CoxeterWord::identity(), poly(&[(2, 1)]));
        assert_eq!(kl_basis(&w("rb")), brb);

        assert_eq!(
            kl_basis(&w("rbr")),
            &(&kl_basis(&w("rb")) * &kl_basis(&w("r"))) - &kl_basis(&w("r"))
        );
        assert_eq!(kl_basis(&CoxeterWord::identity()), HeckeElement::one());
    }

    #[test]
    fn dyer_cases() {
        assert_eq!(
            mult_kl_by_bs(&w("rb"), &c("g")),
            HeckeElement::standard(w("rbg"))
        );
        let mut hard = HeckeElement::standard(w("rbr"));
        hard.add_term(w("r"), LaurentPoly::one());
        assert_eq!(mult_kl_by_bs(&w("rb"), &c("r")), hard);
        assert_eq!(
            mult_kl_by_bs(&w("rb"), &c("b")),
            HeckeElement::term(w("rb"), poly(&[(-1, 1), (1, 1)]))
        );
        assert_eq!(
            mult_kl_by_bs(&CoxeterWord::identity(), &c("r")),
            HeckeElement::standard(w("r"))
        );
    }

    #[test]
    fn basis_change_round_trip() {
        let h = &kl_basis(&w("rbg")) * &kl_basis(&w("gr"));
        let kl = standard_to_kl(&h);
        assert_eq!(kl_to_standard(&kl), h);
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&kl_basis(&w("r")).to_json()).unwrap();
        assert_eq!(
            j,
            r#"{"terms":[{"word":[],"poly":{"1":1}},{"word":["r"],"poly":{"0":1}}]}"#
        );
        let back: HeckeJson = serde_json::from_str(&j).unwrap();
        assert_eq!(HeckeElement::from_json(&back), kl_basis(&w("r")));
    }

    #[test]
    fn laurent_display() {
        assert_eq!((&LaurentPoly::v() + &LaurentPoly::v_inv()).to_string(), "v^-1+v");
        assert_eq!(poly(&[(0, 1), (2, -3)]).to_string(), "1-3v^2");
    }
}
