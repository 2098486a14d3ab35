//! Building a realization from `--realization`, or from `--ring` and `--cartan`.

use std::fs;
use std::path::PathBuf;

use clap::Args;
use multitl::color::parse_colors;
use multitl::soergel_gate::RealizationSpec;
use multitl::{CartanMatrix, Color, RingSpec};

use crate::Failure;

#[derive(Args, Debug, Default)]
pub struct RealizationArgs {
    /// Cartan matrix file (JSON with alphabet, cartan and ring).
    #[arg(long, conflicts_with_all = ["ring", "cartan", "alphabet"])]
    pub realization: Option<PathBuf>,

    /// Coefficient ring: q, fp:<p>, qdelta, z.
    #[arg(long)]
    pub ring: Option<String>,

    /// Off-diagonal Cartan entry: -2, sym-delta, or any element of the ring.
    #[arg(long, allow_hyphen_values = true)]
    pub cartan: Option<String>,

    /// Colors of the realization; defaults to the colors of the input words.
    #[arg(long)]
    pub alphabet: Option<String>,
}

impl RealizationArgs {
    pub fn build(&self, words: &[&[Color]]) -> Result<RealizationSpec, Failure> {
        if let Some(path) = &self.realization {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            return Ok(RealizationSpec::from_json(&text)?);
        }
        let alphabet = match &self.alphabet {
            Some(a) => parse_colors(a)?,
            None => default_alphabet(words),
        };
        let ring = RingSpec::from_shorthand(self.ring.as_deref().unwrap_or("qdelta"))?;
        let default_cartan = if ring == RingSpec::RationalFunctionDelta {
            "sym-delta"
        } else {
            "-2"
        };
        let cartan = match self.cartan.as_deref().unwrap_or(default_cartan) {
            "sym-delta" if ring == RingSpec::RationalFunctionDelta => {
                CartanMatrix::symmetric_delta(alphabet)
            }
            "sym-delta" => {
                return Err(Failure::Usage(format!(
                    "--cartan sym-delta needs --ring qdelta, got {ring}"
                )))
            }
            "-2" => CartanMatrix::crystallographic(alphabet, ring),
            other => CartanMatrix::uniform(alphabet, ring.parse_element(other)?)?,
        };
        Ok(RealizationSpec::new(cartan))
    }
}

/// Colors in order of first appearance, or `r, b, g` when there are none.
fn default_alphabet(words: &[&[Color]]) -> Vec<Color> {
    let mut out: Vec<Color> = Vec::new();
    for c in words.iter().flat_map(|w| w.iter()) {
        if !out.contains(c) {
            out.push(c.clone());
        }
    }
    if out.is_empty() {
        out = parse_colors("rbg").expect("valid colors");
    }
    out
}
