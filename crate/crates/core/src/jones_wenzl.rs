//! Top idempotents `JW(x)`: the recursive formula, the side by side formula
//! over maximal alternating runs, the perpendicular-space oracle, and the
//! decomposition of the identity into orthogonal idempotents.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::color::Color;
use crate::diagrams::{enumerate_colored, ColorSequence, CrossinglessMatching};
use crate::error::{Error, Result};
use crate::linalg::{row_reduce, SparseRow};
use crate::rings::{Binomial, CartanMatrix, RingElement, RingSpec};
use crate::tl_category::{TLMorphism, TermJson, TlCategory};

/// Length of the maximal alternating final subsequence of `x`.
pub fn tail_length(x: &ColorSequence) -> usize {
    let c = x.colors();
    let n = c.len();
    let mut k = n.min(2);
    while k < n && c[n - 1 - k] == c[n - 1 - k + 2] {
        k += 1;
    }
    k
}

/// A maximal two-colored alternating stretch of a word, as 0-based letter
/// positions `start..=end`. It covers the points `start..end` between letters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Run {
    pub start: usize,
    pub end: usize,
}

impl Run {
    /// Number of points in the run, the `k` of its binomials.
    pub fn points(&self) -> usize {
        self.end - self.start
    }

    /// The run as 1-based letter positions.
    pub fn one_based(&self) -> [usize; 2] {
        [self.start + 1, self.end + 1]
    }

    pub fn word(&self, x: &ColorSequence) -> ColorSequence {
        x.slice(self.start, self.end)
    }

    /// `(s, t)` for a run ending in `... t s`.
    pub fn pair(&self, x: &ColorSequence) -> (Color, Color) {
        (x.get(self.end).clone(), x.get(self.end - 1).clone())
    }
}

/// The maximal alternating runs of `x`; their point sets partition all points.
pub fn maximal_alternating_runs(x: &ColorSequence) -> Vec<Run> {
    let c = x.colors();
    let points = x.points();
    let mut runs = Vec::new();
    let mut start = 0;
    for p in 0..points {
        let last_point = p + 1 == points;
        if last_point || c[p] != c[p + 2] {
            runs.push(Run { start, end: p + 1 });
            start = p + 1;
        }
    }
    runs
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    /// A divisor `[k]_{s,t}` of the recursive formula is not invertible.
    QuantumNumber,
    /// A run binomial `[k choose m]_{s,t}` is not invertible.
    Binomial,
    /// The perpendicular space forces the identity coefficient to vanish.
    Oracle,
}

/// Why a top idempotent fails to exist.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub run: Option<[usize; 2]>,
    pub k: i64,
    pub m: Option<i64>,
    pub pair: Option<[Color; 2]>,
    pub value: String,
}

/// Outcome of a construction of `JW(x)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JWResult {
    pub word: ColorSequence,
    pub morphism: Option<TLMorphism>,
    pub obstruction: Option<Obstruction>,
}

impl JWResult {
    fn found(word: &ColorSequence, f: TLMorphism) -> Self {
        JWResult {
            word: word.clone(),
            morphism: Some(f),
            obstruction: None,
        }
    }

    fn missing(word: &ColorSequence, o: Obstruction) -> Self {
        JWResult {
            word: word.clone(),
            morphism: None,
            obstruction: Some(o),
        }
    }

    pub fn exists(&self) -> bool {
        self.morphism.is_some()
    }

    pub fn to_json(&self) -> JWResultJson {
        JWResultJson {
            exists: self.exists(),
            source: self.word.clone(),
            target: self.word.clone(),
            terms: self
                .morphism
                .as_ref()
                .map(|f| f.to_json().terms)
                .unwrap_or_default(),
            obstruction: self.obstruction.clone(),
        }
    }
}

/// `{"exists":..,"source":..,"target":..,"terms":[..],"obstruction":..}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct JWResultJson {
    pub exists: bool,
    pub source: ColorSequence,
    pub target: ColorSequence,
    pub terms: Vec<TermJson>,
    pub obstruction: Option<Obstruction>,
}

/// The solved perpendicular space of `End(x)`.
#[derive(Clone, Debug)]
pub struct OracleResult {
    /// A basis of the morphisms killed by every cup on the right.
    pub kernel: Vec<TLMorphism>,
    pub jw: JWResult,
}

/// A summand of the identity: `idempotent = inclusion ∘ projection` and
/// `projection ∘ inclusion = JW(label)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Part {
    pub label: ColorSequence,
    pub idempotent: TLMorphism,
    pub inclusion: TLMorphism,
    pub projection: TLMorphism,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub word: ColorSequence,
    pub parts: Vec<Part>,
}

impl Decomposition {
    pub fn multiplicities(&self) -> BTreeMap<ColorSequence, usize> {
        let mut out = BTreeMap::new();
        for p in &self.parts {
            *out.entry(p.label.clone()).or_insert(0) += 1;
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DecompositionResult {
    Complete(Decomposition),
    Obstructed(Obstruction),
}

/// Top idempotents for one Cartan matrix, with memoized recursion.
#[derive(Debug)]
pub struct JonesWenzl {
    tl: TlCategory,
    memo: RwLock<HashMap<ColorSequence, JWResult>>,
    deformed: OnceLock<Option<Box<JonesWenzl>>>,
}

impl JonesWenzl {
    pub fn new(cartan: CartanMatrix) -> Self {
        JonesWenzl {
            tl: TlCategory::new(cartan),
            memo: RwLock::new(HashMap::new()),
            deformed: OnceLock::new(),
        }
    }

    pub fn tl(&self) -> &TlCategory {
        &self.tl
    }

    pub fn ring(&self) -> RingSpec {
        self.tl.ring()
    }

    fn number(&self, m: i64, s: &Color, t: &Color) -> RingElement {
        self.tl.quantum().number(m, s, t)
    }

    fn deformed(&self) -> Option<&JonesWenzl> {
        self.deformed
            .get_or_init(|| {
                self.tl
                    .cartan()
                    .deformed()
                    .map(|a| Box::new(JonesWenzl::new(a)))
            })
            .as_deref()
    }

    /// `JW(x)` by the recursive formula along initial subsequences.
    ///
    /// When a divisor `[k]` is not invertible over `Q` or `F_p`, the recursion
    /// is rerun over the generic deformation `a + delta` and specialized at
    /// `delta = 0`; `JW(x)` exists exactly when no coefficient has a pole there.
    pub fn recursive(&self, x: &ColorSequence) -> Result<JWResult> {
        self.tl.check_colors(x)?;
        if let Some(r) = self.memo.read().unwrap().get(x) {
            return Ok(r.clone());
        }
        let r = match self.recursive_step(x)? {
            Ok(f) => JWResult::found(x, f),
            Err(obstruction) => self.recover(x, obstruction)?,
        };
        self.memo.write().unwrap().insert(x.clone(), r.clone());
        Ok(r)
    }

    /// One application of the recursive formula on top of `JW` of the prefix.
    fn recursive_step(&self, x: &ColorSequence) -> Result<std::result::Result<TLMorphism, Obstruction>> {
        let Some(y) = x.without_last() else {
            return Ok(Ok(self.tl.identity(x)));
        };
        if y.len() == 1 {
            return Ok(Ok(self.tl.identity(x)));
        }
        let r = x.last().clone();
        let prev = self.recursive(&y)?;
        let Some(jw_y) = prev.morphism else {
            return Ok(Err(prev.obstruction.expect("missing JW carries an obstruction")));
        };
        let p = self.tl.extend_right(&jw_y, &r)?;
        if *y.get(y.len() - 2) != r {
            return Ok(Ok(p));
        }
        let b = y.last().clone();
        let k = tail_length(&y) as i64;
        let divisor = self.number(k, &r, &b);
        let Some(coeff) = self.number(k - 1, &b, &r).checked_div(&divisor) else {
            return Ok(Err(Obstruction {
                kind: ObstructionKind::QuantumNumber,
                run: Some([x.len() - k as usize, x.len()]),
                k,
                m: None,
                pair: Some([r, b]),
                value: divisor.to_string(),
            }));
        };
        let u = self.tl.cup_cap(x, x.points() - 2)?;
        let pup = self.tl.compose(&p, &self.tl.compose(&u, &p)?)?;
        Ok(Ok(p.add(&pup.scale(&coeff))?))
    }

    /// Resolves a stuck recursion through the deformation or the oracle.
    fn recover(&self, x: &ColorSequence, obstruction: Obstruction) -> Result<JWResult> {
        let ring = self.ring();
        if let Some(generic) = self.deformed() {
            let lifted = generic.recursive(x)?;
            if let Some(f) = lifted.morphism {
                let mut terms = Vec::new();
                for (d, c) in f.terms() {
                    match ring.specialize(c) {
                        Some(v) => terms.push((d.clone(), v)),
                        None => return Ok(JWResult::missing(x, obstruction)),
                    }
                }
                let f = TLMorphism::from_terms(x.clone(), x.clone(), terms)?;
                return Ok(JWResult::found(x, f));
            }
        }
        if !ring.is_field() {
            return Err(Error::NotAField(format!(
                "{ring}: cannot settle the existence of JW({x})"
            )));
        }
        let oracle = self.oracle(x)?;
        Ok(match oracle.jw.morphism {
            Some(f) => JWResult::found(x, f),
            None => JWResult::missing(x, obstruction),
        })
    }

    /// The non-invertible binomials of every run of `x`, and whether some run
    /// had an undefined binomial.
    pub fn binomial_witnesses(&self, x: &ColorSequence) -> (Vec<Obstruction>, Vec<Run>) {
        let mut witnesses = Vec::new();
        let mut undefined = Vec::new();
        for run in maximal_alternating_runs(x) {
            let k = run.points() as i64;
            let (s, t) = run.pair(x);
            for m in 1..k {
                match self.tl.quantum().binomial(k, m, &s, &t) {
                    Binomial::Value(v) if !v.is_invertible() => witnesses.push(Obstruction {
                        kind: ObstructionKind::Binomial,
                        run: Some(run.one_based()),
                        k,
                        m: Some(m),
                        pair: Some([s.clone(), t.clone()]),
                        value: v.to_string(),
                    }),
                    Binomial::Value(_) => {}
                    Binomial::Undefined => {
                        if undefined.last() != Some(&run) {
                            undefined.push(run);
                        }
                    }
                }
            }
        }
        (witnesses, undefined)
    }

    /// Existence witnesses for `JW(x)`: run binomials, with the oracle settling
    /// any run whose binomials are undefined. Empty exactly when `JW(x)` exists.
    pub fn witnesses(&self, x: &ColorSequence) -> Result<Vec<Obstruction>> {
        self.tl.check_colors(x)?;
        let (mut witnesses, undefined) = self.binomial_witnesses(x);
        for run in undefined {
            if witnesses.iter().any(|w| w.run == Some(run.one_based())) {
                continue;
            }
            let sub = run.word(x);
            if !self.oracle(&sub)?.jw.exists() {
                let (s, t) = run.pair(x);
                witnesses.push(Obstruction {
                    kind: ObstructionKind::Oracle,
                    run: Some(run.one_based()),
                    k: run.points() as i64,
                    m: None,
                    pair: Some([s, t]),
                    value: self.ring().zero().to_string(),
                });
            }
        }
        Ok(witnesses)
    }

    /// `JW(x)` as the side by side juxtaposition of the top idempotents of its
    /// maximal alternating runs.
    pub fn descriptive(&self, x: &ColorSequence) -> Result<JWResult> {
        let witnesses = self.witnesses(x)?;
        if let Some(w) = witnesses.into_iter().next() {
            return Ok(JWResult::missing(x, w));
        }
        let mut acc: Option<TLMorphism> = None;
        for run in maximal_alternating_runs(x) {
            let sub = run.word(x);
            let piece = self.recursive(&sub)?.morphism.ok_or_else(|| {
                Error::Invariant(format!(
                    "run {sub} of {x} has invertible binomials but no JW"
                ))
            })?;
            acc = Some(match acc {
                None => piece,
                Some(f) => self.tl.juxtapose(&f, &piece)?,
            });
        }
        Ok(JWResult::found(
            x,
            acc.unwrap_or_else(|| self.tl.identity(x)),
        ))
    }

    /// Solves `f ∘ cup = 0` for every cup over the matching basis of `End(x)`.
    pub fn oracle(&self, x: &ColorSequence) -> Result<OracleResult> {
        self.tl.check_colors(x)?;
        let ring = self.ring();
        if !ring.is_field() {
            return Err(Error::NotAField(ring.to_string()));
        }
        let n = x.points();
        let id = CrossinglessMatching::identity(n);
        let mut basis: Vec<CrossinglessMatching> = enumerate_colored(x, x)
            .into_iter()
            .map(|d| d.matching().clone())
            .filter(|d| *d != id)
            .collect();
        basis.push(id);
        let id_col = basis.len() - 1;

        let mut rows: BTreeMap<(usize, CrossinglessMatching), SparseRow> = BTreeMap::new();
        for i in x.cap_positions() {
            let cup = CrossinglessMatching::cup(n - 2, i);
            for (col, d) in basis.iter().enumerate() {
                let s = self.tl.stack(d, &cup);
                let c = self.tl.loop_scalar(&s.loops, x);
                let row = rows.entry((i, s.matching)).or_default();
                let v = match row.remove(&col) {
                    Some(old) => &old + &c,
                    None => c,
                };
                if !v.is_zero() {
                    row.insert(col, v);
                }
            }
        }
        let echelon = row_reduce(rows.into_values().collect(), basis.len(), ring)?;
        let to_morphism = |v: Vec<RingElement>| {
            TLMorphism::from_terms(x.clone(), x.clone(), basis.iter().cloned().zip(v))
        };
        let kernel = echelon
            .kernel(ring)
            .into_iter()
            .map(to_morphism)
            .collect::<Result<Vec<_>>>()?;
        let jw = match echelon.free_solution(id_col, ring) {
            Some(v) => JWResult::found(x, to_morphism(v)?),
            None => JWResult::missing(
                x,
                Obstruction {
                    kind: ObstructionKind::Oracle,
                    run: None,
                    k: n as i64,
                    m: None,
                    pair: None,
                    value: ring.zero().to_string(),
                },
            ),
        };
        Ok(OracleResult { kernel, jw })
    }

    fn require(&self, x: &ColorSequence) -> Result<TLMorphism> {
        self.recursive(x)?
            .morphism
            .ok_or_else(|| Error::Invariant(format!("JW({x}) does not exist")))
    }

    /// The letters `(r, b)` ending `x`, with the tail length `k` of `x`.
    fn ending(x: &ColorSequence) -> Result<(Color, Color, i64)> {
        if x.len() < 2 {
            return Err(Error::InvalidSequence(format!("{x} has fewer than two letters")));
        }
        Ok((
            x.get(x.len() - 2).clone(),
            x.last().clone(),
            tail_length(x) as i64,
        ))
    }

    /// Closes the last strand of `JW(x)` and checks it equals
    /// `-[k]_{r,b} / [k-1]_{b,r}` times `JW(z)`, `z` being `x` without its last
    /// letter. Returns that scalar.
    pub fn partial_trace_check(&self, x: &ColorSequence) -> Result<RingElement> {
        let (r, b, k) = Self::ending(x)?;
        let z = x.without_last().expect("length at least two");
        let jw_x = self.require(x)?;
        let jw_z = self.require(&z)?;
        let xr = x.push(r.clone())?;
        let i = xr.points() - 2;
        let open = self.tl.extend_right(&jw_x, &r)?;
        let closed = self.tl.compose(
            &self.tl.cap(&xr, i)?,
            &self.tl.compose(&open, &self.tl.cup(&xr, i)?)?,
        )?;
        let scalar = (-self.number(k, &r, &b))
            .checked_div(&self.number(k - 1, &b, &r))
            .ok_or_else(|| Error::NotInvertible(format!("[{}]_({b},{r})", k - 1)))?;
        if closed != jw_z.scale(&scalar) {
            return Err(Error::Invariant(format!(
                "partial trace of JW({x}) is {closed}, expected ({scalar}) JW({z})"
            )));
        }
        Ok(scalar)
    }

    /// The coefficient of `cup ∘ cap` on the last two strands of `JW(xr)`,
    /// checked against `[k-1]_{b,r} / [k]_{r,b}`.
    pub fn right_coefficient_check(&self, x: &ColorSequence) -> Result<RingElement> {
        let (r, b, k) = Self::ending(x)?;
        let xr = x.push(r.clone())?;
        let jw = self.require(&xr)?;
        let n = xr.points();
        let u = self
            .tl
            .stack(
                &CrossinglessMatching::cup(n - 2, n - 2),
                &CrossinglessMatching::cap(n, n - 2),
            )
            .matching;
        let found = jw
            .coefficient(&u)
            .cloned()
            .unwrap_or_else(|| self.ring().zero());
        let expected = self
            .number(k - 1, &b, &r)
            .checked_div(&self.number(k, &r, &b))
            .ok_or_else(|| Error::NotInvertible(format!("[{k}]_({r},{b})")))?;
        if found != expected {
            return Err(Error::Invariant(format!(
                "coefficient of the last cup-cap in JW({xr}) is {found}, expected {expected}"
            )));
        }
        Ok(found)
    }

    /// Splits the identity of `End(x)` into orthogonal idempotents, one per
    /// summand `V_y`, following the recursion letter by letter.
    pub fn decompose_identity(&self, x: &ColorSequence) -> Result<DecompositionResult> {
        self.tl.check_colors(x)?;
        let first = ColorSequence::new(vec![x.first().clone()])?;
        let one = self.tl.identity(&first);
        let mut parts = vec![(first, one.clone(), one)];
        for end in 1..x.len() {
            let prefix = x.prefix(end + 1);
            let c = prefix.last().clone();
            let mut next = Vec::new();
            for (w, inc, proj) in parts {
                let inc = self.tl.extend_right(&inc, &c)?;
                let proj = self.tl.extend_right(&proj, &c)?;
                let wc = w.push(c.clone())?;
                if w.len() < 2 || *w.get(w.len() - 2) != c {
                    next.push((wc, inc, proj));
                    continue;
                }
                let top = self.recursive(&wc)?;
                let Some(jw_top) = top.morphism else {
                    return Ok(DecompositionResult::Obstructed(top.obstruction.unwrap()));
                };
                let z = w.without_last().expect("length at least two");
                let lower = self.recursive(&z)?;
                let Some(jw_z) = lower.morphism else {
                    return Ok(DecompositionResult::Obstructed(lower.obstruction.unwrap()));
                };
                let b = w.last().clone();
                let k = tail_length(&w) as i64;
                let divisor = self.number(k, &c, &b);
                let Some(c_low) = (-self.number(k - 1, &b, &c)).checked_div(&divisor) else {
                    return Ok(DecompositionResult::Obstructed(Obstruction {
                        kind: ObstructionKind::QuantumNumber,
                        run: Some([wc.len() - k as usize, wc.len()]),
                        k,
                        m: None,
                        pair: Some([c.clone(), b]),
                        value: divisor.to_string(),
                    }));
                };
                let i = wc.points() - 2;
                let p = self.tl.extend_right(&self.require(&w)?, &c)?;
                let low_inc = self.tl.compose(
                    &inc,
                    &self.tl.compose(&p, &self.tl.compose(&self.tl.cup(&wc, i)?, &jw_z)?)?,
                )?;
                let low_proj = self.tl.compose(
                    &jw_z,
                    &self.tl.compose(&self.tl.cap(&wc, i)?, &self.tl.compose(&p, &proj)?)?,
                )?;
                next.push((
                    wc,
                    self.tl.compose(&inc, &jw_top)?,
                    self.tl.compose(&jw_top, &proj)?,
                ));
                next.push((z, low_inc.scale(&c_low), low_proj));
            }
            parts = next;
        }
        let parts = parts
            .into_iter()
            .map(|(label, inclusion, projection)| {
                Ok(Part {
                    idempotent: self.tl.compose(&inclusion, &projection)?,
                    label,
                    inclusion,
                    projection,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DecompositionResult::Complete(Decomposition {
            word: x.clone(),
            parts,
        }))
    }
}
