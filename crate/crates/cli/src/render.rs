//! Human-readable renderings for `--format text`.

use multitl::hecke::{CoxeterWord, HeckeElement, LaurentPoly};
use multitl::jones_wenzl::{JWResult, Obstruction, ObstructionKind};
use multitl::soergel_gate::{DyerReport, TlSide, Verdict, WordDecomposition};

pub fn obstruction(o: &Obstruction) -> String {
    let run = o
        .run
        .map(|[a, b]| format!(" on letters {a}..{b}"))
        .unwrap_or_default();
    let pair = o
        .pair
        .as_ref()
        .map(|[s, t]| format!("_({s},{t})"))
        .unwrap_or_default();
    match o.kind {
        ObstructionKind::QuantumNumber => format!("[{}]{pair} = {} is not invertible{run}", o.k, o.value),
        ObstructionKind::Binomial => format!(
            "[{} choose {}]{pair} = {} is not invertible{run}",
            o.k,
            o.m.unwrap_or(0),
            o.value
        ),
        ObstructionKind::Oracle => format!("no top idempotent for the run{run}"),
    }
}

pub fn jw(r: &JWResult) -> String {
    match (&r.morphism, &r.obstruction) {
        (Some(f), _) => format!("JW({}) = {f}", r.word),
        (None, Some(o)) => format!("JW({}) does not exist: {}", r.word, obstruction(o)),
        (None, None) => format!("JW({}) does not exist", r.word),
    }
}

/// `sum p_w X_w`, longest words first, where `X` is the basis name.
pub fn hecke(h: &HeckeElement, basis: &str) -> String {
    let mut terms: Vec<(&CoxeterWord, &LaurentPoly)> = h.terms().iter().collect();
    terms.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .into_iter()
        .map(|(w, p)| match (w.is_empty(), *p == LaurentPoly::one()) {
            (true, _) => p.to_string(),
            (false, true) => format!("{basis}_{w}"),
            (false, false) if p.terms().len() == 1 => format!("{p} {basis}_{w}"),
            (false, false) => format!("({p}) {basis}_{w}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn decomposition(d: &WordDecomposition) -> String {
    if let Some(o) = &d.obstruction {
        return format!("{} does not decompose: {}", d.word, obstruction(o));
    }
    let parts: Vec<String> = d
        .multiplicities
        .iter()
        .map(|m| format!("{}^{}", m.word, m.count))
        .collect();
    format!("{} = {}", d.word, parts.join(" + "))
}

pub fn verdict(v: &Verdict) -> String {
    if v.holds {
        return format!("[B_{0}] = b_{0} holds", v.word);
    }
    let mut lines = vec![format!("[B_{0}] = b_{0} fails", v.word)];
    lines.extend(v.witnesses.iter().map(|o| format!("  {}", obstruction(o))));
    lines.join("\n")
}

pub fn dyer(r: &DyerReport) -> String {
    let hecke_side = hecke(&HeckeElement::from_json(&r.hecke), "b");
    let tl = match &r.tl {
        TlSide::Summands { labels } => labels
            .iter()
            .map(|w| format!("V_{w}"))
            .collect::<Vec<_>>()
            .join(" + "),
        TlSide::Degenerate => "degenerate case, Hecke side only".into(),
        TlSide::EmptyWord => "empty word, Hecke side only".into(),
        TlSide::Obstructed { obstruction: o } => format!("obstructed: {}", obstruction(o)),
    };
    format!("b_{} b_{} = {hecke_side}\nTL: {tl}", r.x, r.s)
}
