use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{RingElement, RingSpec};
use crate::color::Color;
use crate::error::{Error, Result};

/// Off-diagonal Cartan entries `a[s][t]` over a fixed ring; the diagonal is 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanMatrix {
    alphabet: Vec<Color>,
    entries: BTreeMap<(Color, Color), RingElement>,
    ring: RingSpec,
}

/// On-disk form: `{"alphabet":[..],"cartan":{"r,b":"-2",..},"ring":{"type":"fp","p":5}}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CartanFile {
    pub alphabet: Vec<Color>,
    pub cartan: BTreeMap<String, String>,
    pub ring: RingSpec,
}

impl CartanMatrix {
    pub fn new(
        alphabet: Vec<Color>,
        ring: RingSpec,
        entries: BTreeMap<(Color, Color), RingElement>,
    ) -> Result<Self> {
        let distinct: BTreeSet<&Color> = alphabet.iter().collect();
        if distinct.len() != alphabet.len() {
            return Err(Error::InvalidCartan("repeated color in alphabet".into()));
        }
        for s in &alphabet {
            for t in &alphabet {
                if s == t {
                    continue;
                }
                let a = entries
                    .get(&(s.clone(), t.clone()))
                    .ok_or_else(|| Error::InvalidCartan(format!("missing entry {s},{t}")))?;
                if !ring.contains(a) {
                    return Err(Error::WrongRing {
                        element: a.to_string(),
                        ring: ring.to_string(),
                    });
                }
            }
        }
        for (s, t) in entries.keys() {
            if s == t {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry {s},{s} is fixed to 2"
                )));
            }
            if !distinct.contains(s) || !distinct.contains(t) {
                return Err(Error::UnknownColor(format!("{s},{t}")));
            }
        }
        Ok(CartanMatrix {
            alphabet,
            entries,
            ring,
        })
    }

    /// Every off-diagonal entry equal to `value`.
    pub fn uniform(alphabet: Vec<Color>, value: RingElement) -> Result<Self> {
        let ring = value.spec();
        let mut entries = BTreeMap::new();
        for s in &alphabet {
            for t in &alphabet {
                if s != t {
                    entries.insert((s.clone(), t.clone()), value.clone());
                }
            }
        }
        Self::new(alphabet, ring, entries)
    }

    /// `a[s][t] = -delta` over `Q(delta)`: the original one-parameter category.
    pub fn symmetric_delta(alphabet: Vec<Color>) -> Self {
        let ring = RingSpec::RationalFunctionDelta;
        Self::uniform(alphabet, -ring.delta().unwrap()).expect("valid alphabet")
    }

    /// `a[s][t] = -2`: the crystallographic realization, reduced into `ring`.
    pub fn crystallographic(alphabet: Vec<Color>, ring: RingSpec) -> Self {
        Self::uniform(alphabet, ring.from_int(-2)).expect("valid alphabet")
    }

    pub fn alphabet(&self) -> &[Color] {
        &self.alphabet
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn contains_color(&self, c: &Color) -> bool {
        self.alphabet.contains(c)
    }

    /// `a[s][t]`; `2` on the diagonal. Panics on colors outside the alphabet.
    pub fn entry(&self, s: &Color, t: &Color) -> RingElement {
        if s == t {
            return self.ring.from_int(2);
        }
        self.entries
            .get(&(s.clone(), t.clone()))
            .unwrap_or_else(|| panic!("no Cartan entry for ({s},{t})"))
            .clone()
    }

    /// True when `a[s][t] = a[t][s]` for this pair.
    pub fn is_symmetric_pair(&self, s: &Color, t: &Color) -> bool {
        self.entry(s, t) == self.entry(t, s)
    }

    /// The generic deformation `a[s][t] + delta` over `Q(delta)` or `F_p(delta)`;
    /// `None` for rings without one.
    pub fn deformed(&self) -> Option<CartanMatrix> {
        let target = self.ring.deformation()?;
        let delta = target.delta()?;
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| Some((k.clone(), &self.ring.lift(v)? + &delta)))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(CartanMatrix {
            alphabet: self.alphabet.clone(),
            entries,
            ring: target,
        })
    }

    pub fn to_file(&self) -> CartanFile {
        CartanFile {
            alphabet: self.alphabet.clone(),
            cartan: self
                .entries
                .iter()
                .map(|((s, t), v)| (format!("{s},{t}"), v.to_string()))
                .collect(),
            ring: self.ring,
        }
    }

    pub fn from_file(file: &CartanFile) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (key, value) in &file.cartan {
            let (s, t) = key
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("Cartan key {key:?} is not \"s,t\"")))?;
            let pair = (Color::new(s)?, Color::new(t)?);
            entries.insert(pair, file.ring.parse_element(value)?);
        }
        Self::new(file.alphabet.clone(), file.ring, entries)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: CartanFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }
}
