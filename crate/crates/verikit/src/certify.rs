use std::collections::HashSet;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use torelli::lpres::{relation_catalog, CatalogKind, SubstSystem};
use torelli::symgen::{alphabet_pm, interpret, Alphabet, Certificate, SymToken};
use torelli::Basis;

use crate::report::{Case, Params, SuiteReport};
use crate::VerikitError;

fn invert(w: &[SymToken]) -> Vec<SymToken> {
    w.iter().rev().map(|t| t.inverse()).collect()
}

fn cyclically_reduce(w: &[SymToken]) -> &[SymToken] {
    let (mut i, mut j) = (0, w.len());
    while j - i >= 2 && w[i] == w[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    &w[i..j]
}

fn is_cyclically_reduced(w: &[SymToken]) -> bool {
    cyclically_reduce(w).len() == w.len()
}

/// Least rotation of the cyclic reduction of w or of w⁻¹.
fn cyclic_key(w: &[SymToken]) -> Vec<SymToken> {
    let c = cyclically_reduce(w);
    let mut best: Option<Vec<SymToken>> = None;
    for v in [c.to_vec(), invert(c)] {
        for r in 0..v.len().max(1) {
            let mut rot = v.clone();
            rot.rotate_left(r.min(v.len()));
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// The relators a certificate may insert: the rank-0 kernel relations, their images under
/// one substitution from S_Q^{±1}, inverses, cyclic rotations and inverse pairs.
#[derive(Debug, Clone)]
pub struct RelatorClosure {
    pub n: usize,
    exact: HashSet<Vec<SymToken>>,
    cyclic: HashSet<Vec<SymToken>>,
}

impl RelatorClosure {
    pub fn new(n: usize) -> Result<RelatorClosure, VerikitError> {
        let rels = relation_catalog(CatalogKind::Rk0, n, 1)?;
        let sys = SubstSystem::new(n)?;
        let qs = alphabet_pm(Alphabet::Q, n)?;
        let base: Vec<_> = rels.iter().map(|r| r.relator()).collect();
        let images: Vec<Vec<SymToken>> = base
            .par_iter()
            .flat_map_iter(|r| {
                let mut out = vec![r.tokens().to_vec()];
                out.extend(qs.iter().filter_map(|&q| sys.phi_word(&[q], r).ok()).map(|w| w.tokens().to_vec()));
                out
            })
            .collect();
        let mut exact = HashSet::new();
        let mut cyclic = HashSet::new();
        for w in images {
            cyclic.insert(cyclic_key(&w));
            exact.insert(invert(&w));
            exact.insert(w);
        }
        Ok(RelatorClosure { n, exact, cyclic })
    }

    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    /// Membership of a reduced word.
    pub fn contains(&self, w: &[SymToken]) -> bool {
        // Inverse pairs t·t⁻¹ reduce to the empty word.
        w.is_empty() || self.exact.contains(w) || (is_cyclically_reduced(w) && self.cyclic.contains(&cyclic_key(w)))
    }
}

pub fn check_certificate_text(text: &str) -> Result<SuiteReport, VerikitError> {
    let start = Instant::now();
    let cert = Certificate::parse(text).map_err(|e| VerikitError::Parse(e.to_string()))?;
    let closure = RelatorClosure::new(cert.n)?;
    let mut cases = Vec::new();
    for (i, (pos, w)) in cert.steps.iter().enumerate() {
        let line = cert.step_lines.get(i).copied().unwrap_or(0);
        let id = format!("line {line}: insert @{pos}: {w}");
        cases.push(if closure.contains(w.tokens()) {
            Case::pass(id)
        } else {
            Case::fail(id, format!("line {line}: non-relator insertion {w}"))
        });
    }
    match cert.reduce() {
        Ok(end) if end == cert.expect => cases.push(Case::pass("reduction reaches expect")),
        Ok(end) => cases.push(Case::fail("reduction reaches expect", format!("reduction mismatch: got {end}, expected {}", cert.expect))),
        Err(e) => cases.push(Case::fail("reduction reaches expect", format!("reduction mismatch: {e}"))),
    }
    let b = Basis { n: cert.n, k: 1 };
    let psi = interpret(&cert.start, b).and_then(|s| Ok((s, interpret(&cert.expect, b)?)));
    cases.push(match psi {
        Ok((s, e)) if s == e => Case::pass("start and expect have equal values"),
        Ok((s, e)) => Case::fail("start and expect have equal values", format!("{s} ≠ {e}")),
        Err(e) => Case::fail("start and expect have equal values", format!("error: {e}")),
    });
    Ok(SuiteReport {
        suite: "certify".into(),
        params: Params { n: cert.n, k: 1, samples: cert.steps.len(), seed: 0 },
        cases,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn check_certificate(path: &Path) -> Result<SuiteReport, VerikitError> {
    let text = std::fs::read_to_string(path).map_err(|e| VerikitError::Io(format!("{}: {e}", path.display())))?;
    check_certificate_text(&text)
}
