//! Deciding `[B_w] = b_w` for a realization, failing primes of the
//! crystallographic realization, and the categorified Dyer cross-check.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigUint, One, Zero};
use serde::{Deserialize, Serialize};

use crate::color::Color;
use crate::diagrams::ColorSequence;
use crate::error::{Error, Result};
use crate::hecke::{is_reduced, kl_basis, kl_to_standard, mult_kl_by_bs, reduce, CoxeterWord, HeckeJson};
use crate::jones_wenzl::{
    maximal_alternating_runs, tail_length, DecompositionResult, JonesWenzl, Obstruction,
};
use crate::rings::{primes_up_to, CartanMatrix, CartanFile, RingSpec};

/// A realization, reduced to the data every computation here uses: the
/// Cartan matrix and its coefficient ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealizationSpec {
    cartan: CartanMatrix,
}

impl RealizationSpec {
    pub fn new(cartan: CartanMatrix) -> Self {
        RealizationSpec { cartan }
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn ring(&self) -> RingSpec {
        self.cartan.ring()
    }

    pub fn alphabet(&self) -> &[Color] {
        self.cartan.alphabet()
    }

    pub fn to_file(&self) -> CartanFile {
        self.cartan.to_file()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(Self::new(CartanMatrix::from_json(s)?))
    }
}

/// Whether `[B_w] = b_w`, with the obstructions when it fails.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub word: CoxeterWord,
    pub holds: bool,
    pub witnesses: Vec<Obstruction>,
}

/// The reduced word of a group element, warning when the input was not reduced.
pub fn group_element(letters: &[Color]) -> CoxeterWord {
    let w = reduce(letters);
    if !is_reduced(letters) {
        log::warn!(
            "{} is not reduced; using {w}",
            crate::color::format_colors(letters)
        );
    }
    w
}

fn as_sequence(w: &CoxeterWord) -> Option<ColorSequence> {
    (!w.is_empty()).then(|| ColorSequence::new(w.letters().to_vec()).expect("reduced words alternate"))
}

/// The Hecke and TL sides of one step `b_x b_s`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DyerReport {
    pub x: CoxeterWord,
    pub s: Color,
    /// The KL-basis expansion of `b_x b_s`.
    pub hecke: HeckeJson,
    pub tl: TlSide,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TlSide {
    /// Labels of the summands of `JW(x)` extended by `s`.
    Summands { labels: Vec<CoxeterWord> },
    /// `s` repeats the last letter of `x`; the TL 2-category has no object for it.
    Degenerate,
    /// `x` is the identity; there is no `JW(x)` to extend.
    EmptyWord,
    Obstructed { obstruction: Obstruction },
}

/// Multiplicities of the summands `V_y` of `x`, or the obstruction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WordDecomposition {
    pub word: CoxeterWord,
    pub multiplicities: Vec<Multiplicity>,
    pub obstruction: Option<Obstruction>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Multiplicity {
    pub word: CoxeterWord,
    pub count: usize,
}

impl WordDecomposition {
    pub fn as_map(&self) -> BTreeMap<CoxeterWord, usize> {
        self.multiplicities
            .iter()
            .map(|m| (m.word.clone(), m.count))
            .collect()
    }
}

/// Verdicts and decompositions for one realization.
#[derive(Debug)]
pub struct SoergelGate {
    realization: RealizationSpec,
    jw: JonesWenzl,
}

impl SoergelGate {
    pub fn new(realization: RealizationSpec) -> Self {
        SoergelGate {
            jw: JonesWenzl::new(realization.cartan.clone()),
            realization,
        }
    }

    pub fn realization(&self) -> &RealizationSpec {
        &self.realization
    }

    pub fn jones_wenzl(&self) -> &JonesWenzl {
        &self.jw
    }

    fn check_letters(&self, w: &CoxeterWord) -> Result<()> {
        match w
            .letters()
            .iter()
            .find(|c| !self.realization.cartan.contains_color(c))
        {
            Some(c) => Err(Error::UnknownColor(c.to_string())),
            None => Ok(()),
        }
    }

    /// `[B_w] = b_w` holds exactly when `JW(w)` exists, which is decided run by
    /// run from the two-colored binomials (the oracle settles undefined ones).
    pub fn verdict(&self, w: &CoxeterWord) -> Result<Verdict> {
        self.check_letters(w)?;
        let witnesses = match as_sequence(w) {
            Some(x) => self.jw.witnesses(&x)?,
            None => Vec::new(),
        };
        Ok(Verdict {
            word: w.clone(),
            holds: witnesses.is_empty(),
            witnesses,
        })
    }

    /// Compares the summands of `JW(x)` extended by `s` with `b_x b_s`.
    pub fn categorified_dyer_check(&self, x: &CoxeterWord, s: &Color) -> Result<DyerReport> {
        self.check_letters(x)?;
        if !self.realization.cartan.contains_color(s) {
            return Err(Error::UnknownColor(s.to_string()));
        }
        let expansion = mult_kl_by_bs(x, s);
        if kl_basis(x).mult_bs(s) != kl_to_standard(&expansion) {
            return Err(Error::Invariant(format!(
                "b_{x} b_{s} differs from its Dyer expansion"
            )));
        }
        let hecke_labels: BTreeSet<CoxeterWord> = expansion.terms().keys().cloned().collect();
        let tl = if x.last() == Some(s) {
            TlSide::Degenerate
        } else if let Some(seq) = as_sequence(x) {
            self.tl_summands(&seq, s)?
        } else {
            TlSide::EmptyWord
        };
        if let TlSide::Summands { labels } = &tl {
            let tl_labels: BTreeSet<CoxeterWord> = labels.iter().cloned().collect();
            if tl_labels != hecke_labels {
                return Err(Error::Invariant(format!(
                    "summands of JW({x}) extended by {s}: TL side {tl_labels:?}, Hecke side {hecke_labels:?}"
                )));
            }
        }
        Ok(DyerReport {
            x: x.clone(),
            s: s.clone(),
            hecke: expansion.to_json(),
            tl,
        })
    }

    /// Splits `JW(x) ⊗ id_s` into `JW(xs)` and, when `x` ends in `s b`, an
    /// idempotent factoring through `V_z`; checks each piece along the way.
    fn tl_summands(&self, x: &ColorSequence, s: &Color) -> Result<TlSide> {
        let tl = self.jw.tl();
        let xs = x.push(s.clone())?;
        let obstructed = |r: crate::jones_wenzl::JWResult| TlSide::Obstructed {
            obstruction: r.obstruction.expect("missing JW carries an obstruction"),
        };
        let jw_x = self.jw.recursive(x)?;
        let Some(jw_x) = jw_x.morphism.clone() else {
            return Ok(obstructed(jw_x));
        };
        let jw_xs = self.jw.recursive(&xs)?;
        let Some(jw_xs) = jw_xs.morphism.clone() else {
            return Ok(obstructed(jw_xs));
        };
        let p = tl.extend_right(&jw_x, s)?;
        let top = CoxeterWord::from(xs.colors().to_vec());
        if x.len() < 2 || x.get(x.len() - 2) != s {
            if p != jw_xs {
                return Err(Error::Invariant(format!("JW({xs}) is not JW({x}) ⊗ id")));
            }
            return Ok(TlSide::Summands { labels: vec![top] });
        }
        let z = x.without_last().expect("length at least two");
        let jw_z = self.jw.recursive(&z)?;
        let Some(jw_z) = jw_z.morphism.clone() else {
            return Ok(obstructed(jw_z));
        };
        let lower = p.sub(&jw_xs)?;
        let b = x.last().clone();
        let k = tail_length(x) as i64;
        let q = tl.quantum();
        let c_low = (-q.number(k - 1, &b, s))
            .checked_div(&q.number(k, s, &b))
            .ok_or_else(|| Error::NotInvertible(format!("[{k}]_({s},{b})")))?;
        let i = xs.points() - 2;
        let cap = tl.cap(&xs, i)?;
        let inclusion = tl
            .compose(&p, &tl.compose(&tl.cup(&xs, i)?, &jw_z)?)?
            .scale(&c_low);
        let projection = tl.compose(&jw_z, &tl.compose(&cap, &p)?)?;
        let checks = [
            tl.compose(&projection, &inclusion)? == jw_z,
            tl.compose(&inclusion, &projection)? == lower,
            tl.compose(&cap, &jw_xs)?.is_zero(),
        ];
        if checks.contains(&false) {
            return Err(Error::Invariant(format!(
                "lower summand of JW({x}) ⊗ id does not factor through V_{z}"
            )));
        }
        Ok(TlSide::Summands {
            labels: vec![top, CoxeterWord::from(z.colors().to_vec())],
        })
    }

    /// Summand multiplicities of the identity of `x`.
    pub fn decompose_word(&self, x: &CoxeterWord) -> Result<WordDecomposition> {
        self.check_letters(x)?;
        let Some(seq) = as_sequence(x) else {
            return Ok(WordDecomposition {
                word: x.clone(),
                multiplicities: vec![Multiplicity {
                    word: CoxeterWord::identity(),
                    count: 1,
                }],
                obstruction: None,
            });
        };
        Ok(match self.jw.decompose_identity(&seq)? {
            DecompositionResult::Complete(d) => WordDecomposition {
                word: x.clone(),
                multiplicities: d
                    .multiplicities()
                    .into_iter()
                    .map(|(y, count)| Multiplicity {
                        word: CoxeterWord::from(y.colors().to_vec()),
                        count,
                    })
                    .collect(),
                obstruction: None,
            },
            DecompositionResult::Obstructed(o) => WordDecomposition {
                word: x.clone(),
                multiplicities: Vec::new(),
                obstruction: Some(o),
            },
        })
    }
}

fn binomial(k: u64, m: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..m {
        acc = acc * BigUint::from(k - i) / BigUint::from(i + 1);
    }
    acc
}

/// Primes `p <= max_prime` for which the crystallographic realization `a = -2`
/// fails at `w` over `F_p`: `p` divides `C(k, m)` for some run with `k` points.
pub fn failing_primes(w: &CoxeterWord, max_prime: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let Some(x) = as_sequence(w) else {
        return out;
    };
    for run in maximal_alternating_runs(&x) {
        let k = run.points() as u64;
        // A prime above k cannot divide k!.
        for p in primes_up_to(k.min(max_prime)) {
            let divides = (1..k).any(|m| (binomial(k, m) % BigUint::from(p)).is_zero());
            if divides {
                out.insert(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::parse_colors;
    use crate::hecke::LaurentPoly;
    use crate::jones_wenzl::ObstructionKind;

    fn w(s: &str) -> CoxeterWord {
        CoxeterWord::parse(s).unwrap()
    }

    fn c(s: &str) -> Color {
        Color::new(s).unwrap()
    }

    fn gate_mod(p: u64) -> SoergelGate {
        SoergelGate::new(RealizationSpec::new(CartanMatrix::crystallographic(
            parse_colors("rgb").unwrap(),
            RingSpec::prime_field(p).unwrap(),
        )))
    }

    fn gate_sym() -> SoergelGate {
        SoergelGate::new(RealizationSpec::new(CartanMatrix::symmetric_delta(
            parse_colors("rgb").unwrap(),
        )))
    }

    #[test]
    fn verdicts_mod_two() {
        let g = gate_mod(2);
        let v = g.verdict(&w("rbr")).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witnesses.len(), 1);
        let o = &v.witnesses[0];
        assert_eq!(o.kind, ObstructionKind::Binomial);
        assert_eq!((o.k, o.m, o.value.as_str()), (2, Some(1), "0"));
        assert_eq!(o.run, Some([1, 3]));
        assert!(g.verdict(&w("rbrb")).unwrap().holds);
        assert!(g.verdict(&w("rgb")).unwrap().holds);
        assert!(g.verdict(&w("")).unwrap().holds);
    }

    #[test]
    fn verdict_json() {
        let j = serde_json::to_string(&gate_mod(2).verdict(&w("rbr")).unwrap()).unwrap();
        assert_eq!(
            j,
            r#"{"word":["r","b","r"],"holds":false,"witnesses":[{"kind":"binomial","run":[1,3],"k":2,"m":1,"pair":["r","b"],"value":"0"}]}"#
        );
    }

    #[test]
    fn failing_prime_examples() {
        assert_eq!(failing_primes(&w("rbr"), 100), BTreeSet::from([2]));
        assert_eq!(failing_primes(&w("rbrb"), 100), BTreeSet::from([3]));
        assert!(failing_primes(&w("rgbr"), 100).is_empty());
        assert_eq!(failing_primes(&w("rgbg"), 100), BTreeSet::from([2]));
        assert_eq!(failing_primes(&w("rbrbr"), 100), BTreeSet::from([2, 3]));
        assert_eq!(failing_primes(&w("rbrbrb"), 100), BTreeSet::from([2, 5]));
        assert_eq!(failing_primes(&w("rbrbrb"), 3), BTreeSet::from([2]));
    }

    #[test]
    fn dyer_checks() {
        let g = gate_sym();
        let r = g.categorified_dyer_check(&w("rb"), &c("g")).unwrap();
        assert_eq!(r.tl, TlSide::Summands { labels: vec![w("rbg")] });
        let r = g.categorified_dyer_check(&w("rb"), &c("r")).unwrap();
        assert_eq!(
            r.tl,
            TlSide::Summands {
                labels: vec![w("rbr"), w("r")]
            }
        );
        let r = g.categorified_dyer_check(&w("rb"), &c("b")).unwrap();
        assert_eq!(r.tl, TlSide::Degenerate);
        assert_eq!(
            r.hecke.terms[0].poly,
            &LaurentPoly::v() + &LaurentPoly::v_inv()
        );
        let r = g.categorified_dyer_check(&w(""), &c("b")).unwrap();
        assert_eq!(r.tl, TlSide::EmptyWord);
    }

    #[test]
    fn word_decompositions() {
        let g = gate_sym();
        let m = |s: &str| g.decompose_word(&w(s)).unwrap().as_map();
        assert_eq!(m("rb"), BTreeMap::from([(w("rb"), 1)]));
        assert_eq!(m("rbr"), BTreeMap::from([(w("rbr"), 1), (w("r"), 1)]));
        assert_eq!(m("rgb"), BTreeMap::from([(w("rgb"), 1)]));
        assert!(gate_mod(2).decompose_word(&w("rbr")).unwrap().obstruction.is_some());
    }

    #[test]
    fn non_reduced_input_is_reduced() {
        let letters = parse_colors("rbbrg").unwrap();
        assert_eq!(group_element(&letters), w("g"));
    }

    #[test]
    fn unknown_colors_are_rejected() {
        assert!(gate_sym().verdict(&w("ry")).is_err());
    }
}
