//! Morphisms of the colored Temperley-Lieb 2-category over a Cartan matrix.
//!
//! A closed loop with inside color `t` and outside color `s` evaluates to
//! `a[s][t]`; for the symmetric `-delta` matrix every circle is `-delta`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::color::Color;
use crate::diagrams::{
    circle_colors, color_matching, enumerate_colored, stack_matchings, Circle, ColorSequence,
    ColoredMatching, CrossinglessMatching, MatchingJson, Stacked,
};
use crate::error::{Error, Result};
use crate::rings::{CartanMatrix, ProductSum, QuantumCalculus, RingElement, RingSpec};

/// A finite linear combination of colored matchings with fixed boundary.
///
/// The coloring of each matching is forced by `source` and `target`, so terms
/// are keyed by the bare matching.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TLMorphism {
    source: ColorSequence,
    target: ColorSequence,
    terms: BTreeMap<CrossinglessMatching, RingElement>,
}

impl TLMorphism {
    pub fn zero(source: ColorSequence, target: ColorSequence) -> Self {
        TLMorphism {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_basis(d: &ColoredMatching, coeff: RingElement) -> Self {
        let mut f = Self::zero(d.source().clone(), d.target().clone());
        f.add_term(d.matching().clone(), coeff);
        f
    }

    /// Builds a morphism from raw terms, checking every matching is colorable.
    pub fn from_terms(
        source: ColorSequence,
        target: ColorSequence,
        terms: impl IntoIterator<Item = (CrossinglessMatching, RingElement)>,
    ) -> Result<Self> {
        let mut f = Self::zero(source, target);
        for (d, c) in terms {
            if color_matching(&d, &f.source, &f.target).is_none() {
                return Err(Error::InvalidMatching(format!(
                    "{d} admits no coloring from {} to {}",
                    f.source, f.target
                )));
            }
            f.add_term(d, c);
        }
        Ok(f)
    }

    pub fn source(&self) -> &ColorSequence {
        &self.source
    }

    pub fn target(&self) -> &ColorSequence {
        &self.target
    }

    pub fn terms(&self) -> &BTreeMap<CrossinglessMatching, RingElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn coefficient(&self, d: &CrossinglessMatching) -> Option<&RingElement> {
        self.terms.get(d)
    }

    fn add_term(&mut self, d: CrossinglessMatching, c: RingElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&d) {
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(d, sum);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InterfaceMismatch(format!(
                "Hom({}, {}) vs Hom({}, {})",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TLMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &RingElement) -> Self {
        let mut out = Self::zero(self.source.clone(), self.target.clone());
        for (d, v) in &self.terms {
            out.add_term(d.clone(), v * c);
        }
        out
    }

    /// Flips every diagram upside down.
    pub fn involution(&self) -> Self {
        TLMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (d.flip(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the identity diagram, `None` meaning zero.
    pub fn identity_coefficient(&self) -> Option<&RingElement> {
        if !self.is_endomorphism() {
            return None;
        }
        self.terms
            .get(&CrossinglessMatching::identity(self.source.points()))
    }

    /// Whether this endomorphism lies in the span of non-identity diagrams.
    pub fn in_lower_ideal(&self) -> bool {
        self.identity_coefficient().is_none()
    }

    pub fn to_json(&self) -> TLMorphismJson {
        TLMorphismJson {
            source: self.source.clone(),
            target: self.target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(d, c)| TermJson {
                    matching: d.to_json(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &TLMorphismJson, ring: RingSpec) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| {
                Ok((
                    CrossinglessMatching::from_json(&t.matching)?,
                    ring.parse_element(&t.coeff)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(j.source.clone(), j.target.clone(), terms)
    }
}

impl fmt::Display for TLMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 : {} -> {}", self.source, self.target);
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| format!("({c})*{d}"))
            .collect();
        write!(f, "{} : {} -> {}", parts.join(" + "), self.source, self.target)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub matching: MatchingJson,
    pub coeff: String,
}

/// `{"source":[..],"target":[..],"terms":[{"matching":..,"coeff":".."}]}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TLMorphismJson {
    pub source: ColorSequence,
    pub target: ColorSequence,
    pub terms: Vec<TermJson>,
}

type ProductCache = Arc<RwLock<HashMap<(CrossinglessMatching, CrossinglessMatching), Stacked>>>;

/// The 2-category for one Cartan matrix: circle values, quantum numbers and a
/// shared cache of basis products.
#[derive(Debug)]
pub struct TlCategory {
    quantum: QuantumCalculus,
    products: ProductCache,
}

impl TlCategory {
    pub fn new(cartan: CartanMatrix) -> Self {
        TlCategory {
            quantum: QuantumCalculus::new(cartan),
            products: Arc::default(),
        }
    }

    pub fn cartan(&self) -> &CartanMatrix {
        self.quantum.cartan()
    }

    pub fn ring(&self) -> RingSpec {
        self.quantum.ring()
    }

    pub fn quantum(&self) -> &QuantumCalculus {
        &self.quantum
    }

    /// Checks that every color of `x` belongs to the alphabet.
    pub fn check_colors(&self, x: &ColorSequence) -> Result<()> {
        match x.colors().iter().find(|c| !self.cartan().contains_color(c)) {
            Some(c) => Err(Error::UnknownColor(c.to_string())),
            None => Ok(()),
        }
    }

    /// `a[outside][inside]`.
    pub fn circle_value(&self, c: &Circle) -> RingElement {
        self.cartan().entry(&c.outside, &c.inside)
    }

    pub fn identity(&self, x: &ColorSequence) -> TLMorphism {
        let mut f = TLMorphism::zero(x.clone(), x.clone());
        f.add_term(CrossinglessMatching::identity(x.points()), self.ring().one());
        f
    }

    pub fn basis(&self, d: &ColoredMatching) -> TLMorphism {
        TLMorphism::from_basis(d, self.ring().one())
    }

    /// Every basis diagram of `End(x)` as a morphism.
    pub fn end_basis(&self, x: &ColorSequence) -> Vec<TLMorphism> {
        enumerate_colored(x, x).iter().map(|d| self.basis(d)).collect()
    }

    /// Stacks two bare matchings through the shared cache.
    pub fn stack(&self, top: &CrossinglessMatching, bottom: &CrossinglessMatching) -> Stacked {
        let key = (top.clone(), bottom.clone());
        if let Some(s) = self.products.read().unwrap().get(&key) {
            return s.clone();
        }
        let s = stack_matchings(top, bottom);
        self.products.write().unwrap().insert(key, s.clone());
        s
    }

    /// Product of the circle values of `loops` found over the middle row `middle`.
    pub fn loop_scalar(&self, loops: &[usize], middle: &ColorSequence) -> RingElement {
        circle_colors(loops, middle)
            .iter()
            .fold(self.ring().one(), |acc, c| &acc * &self.circle_value(c))
    }

    /// `f ∘ g`: `g` first, then `f`.
    pub fn compose(&self, f: &TLMorphism, g: &TLMorphism) -> Result<TLMorphism> {
        if g.target != f.source {
            return Err(Error::InterfaceMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                f.source, f.target, g.source, g.target
            )));
        }
        let ring = self.ring();
        let mut circle_cache: HashMap<usize, RingElement> = HashMap::new();
        let mut sums: HashMap<CrossinglessMatching, ProductSum> = HashMap::new();
        for (df, cf) in &f.terms {
            for (dg, cg) in &g.terms {
                let s = self.stack(df, dg);
                for &a in &s.loops {
                    circle_cache.entry(a).or_insert_with(|| {
                        let circle = &circle_colors(&[a], &f.source)[0];
                        self.circle_value(circle)
                    });
                }
                let mut factors = vec![cf, cg];
                factors.extend(s.loops.iter().map(|a| &circle_cache[a]));
                sums.entry(s.matching)
                    .or_insert_with(|| ProductSum::new(ring))
                    .add_product(&factors);
            }
        }
        let mut out = TLMorphism::zero(g.source.clone(), f.target.clone());
        for (d, sum) in sums {
            out.add_term(d, sum.finish(ring));
        }
        Ok(out)
    }

    /// Side by side placement: `f` on the left, `g` on the right, glued along
    /// the shared boundary region.
    pub fn juxtapose(&self, f: &TLMorphism, g: &TLMorphism) -> Result<TLMorphism> {
        let source = f.source.glue(&g.source)?;
        let target = f.target.glue(&g.target)?;
        let mut out = TLMorphism::zero(source, target);
        for (df, cf) in &f.terms {
            for (dg, cg) in &g.terms {
                out.add_term(df.juxtapose(dg), cf * cg);
            }
        }
        Ok(out)
    }

    /// The cap joining points `i` and `i+1` (0-based) of `x`, as a map `x -> x'`.
    pub fn cap(&self, x: &ColorSequence, i: usize) -> Result<TLMorphism> {
        let y = x.capped_at(i)?;
        let mut f = TLMorphism::zero(x.clone(), y);
        f.add_term(CrossinglessMatching::cap(x.points(), i), self.ring().one());
        Ok(f)
    }

    /// The cup creating points `i` and `i+1` of `x`, as a map `x' -> x`.
    pub fn cup(&self, x: &ColorSequence, i: usize) -> Result<TLMorphism> {
        Ok(self.cap(x, i)?.involution())
    }

    /// `cap_i ∘ f`.
    pub fn apply_cap(&self, f: &TLMorphism, i: usize) -> Result<TLMorphism> {
        self.compose(&self.cap(&f.target, i)?, f)
    }

    /// `f ∘ cup_i`.
    pub fn apply_cup(&self, f: &TLMorphism, i: usize) -> Result<TLMorphism> {
        self.compose(f, &self.cup(&f.source, i)?)
    }

    /// `cup_i ∘ cap_i` in `End(x)`, the last such generator when `i = x.points() - 2`.
    pub fn cup_cap(&self, x: &ColorSequence, i: usize) -> Result<TLMorphism> {
        self.compose(&self.cup(x, i)?, &self.cap(x, i)?)
    }

    /// `f` with an identity strand appended on the right, colored `c`.
    pub fn extend_right(&self, f: &TLMorphism, c: &Color) -> Result<TLMorphism> {
        let last = f.source.last().clone();
        let strand = ColorSequence::new(vec![last, c.clone()])?;
        self.juxtapose(f, &self.identity(&strand))
    }
}
