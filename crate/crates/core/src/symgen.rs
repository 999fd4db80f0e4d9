//! Symbolic generator tokens, words over the alphabets S_A, S_Q, S_K, S_Z and the
//! Jensen–Wahl set S_C, their interpretation as automorphisms, and reduction certificates.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fgmap::{Endo, MapError, NamedAut};
use crate::fgword::{Basis, Gen, Letter, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("cannot parse token {0:?}")]
    Parse(String),
    #[error("invalid token {0}: {1}")]
    InvalidToken(String, &'static str),
    #[error("token {0} is not in alphabet {1}")]
    NotInAlphabet(SymToken, Alphabet),
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(Alphabet, Alphabet),
    #[error("rank n={0} is too small (need n ≥ 2)")]
    SmallRank(usize),
    #[error("alphabet {0} cannot be enumerated")]
    NotEnumerable(Alphabet),
    #[error("step {step}: position {pos} out of range for word of length {len}")]
    Position { step: usize, pos: usize, len: usize },
    #[error("line {line}: {msg}")]
    Certificate { line: usize, msg: String },
    #[error(transparent)]
    Map(#[from] MapError),
}

impl From<WordError> for SymError {
    fn from(e: WordError) -> SymError {
        SymError::Map(MapError::Word(e))
    }
}

/// A letter of a free group on named automorphisms: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymToken {
    /// M[z^α, v^ν]: z^α ↦ v^ν·z^α.
    M { z: Letter, v: Letter },
    /// C[u, w^ν]: u ↦ w^ν·u·w^-ν.
    C { u: Gen, w: Letter },
    /// Mc[z^α, p, q] = M[z^α, [p,q]].
    Mc { z: Letter, p: Letter, q: Letter },
    /// P[a,b] with a < b.
    P(u16, u16),
    I(u16),
}

impl SymToken {
    pub fn m(z: Letter, v: Letter) -> Result<SymToken, SymError> {
        SymToken::M { z, v }.checked()
    }

    /// C[u, w]; the sign of `u` is dropped, so C[x⁻¹,y] = C[x,y] and C[y⁻¹,x^γ] = C[y,x]^γ.
    pub fn c(u: Letter, w: Letter) -> Result<SymToken, SymError> {
        SymToken::C { u: u.gen, w }.checked()
    }

    pub fn mc(z: Letter, p: Letter, q: Letter) -> Result<SymToken, SymError> {
        SymToken::Mc { z, p, q }.checked()
    }

    pub fn p(a: u16, b: u16) -> Result<SymToken, SymError> {
        SymToken::P(a.min(b), a.max(b)).checked()
    }

    pub fn i(a: u16) -> Result<SymToken, SymError> {
        SymToken::I(a).checked()
    }

    fn checked(self) -> Result<SymToken, SymError> {
        let bad = |why| Err(SymError::InvalidToken(self.to_string(), why));
        match self {
            SymToken::M { z, v } => {
                if !z.gen.is_x() {
                    return bad("transvected generator must be an x");
                }
                if z.gen == v.gen {
                    return bad("transvection by itself");
                }
            }
            SymToken::C { u, w } => {
                if u == w.gen {
                    return bad("conjugation by itself");
                }
            }
            SymToken::Mc { z, p, q } => {
                if !z.gen.is_x() {
                    return bad("transvected generator must be an x");
                }
                if p.gen == q.gen || p.gen == z.gen || q.gen == z.gen {
                    return bad("commutator generators must be distinct from each other and the target");
                }
            }
            SymToken::P(a, b) => {
                if a == 0 || a == b {
                    return bad("swap indices must be distinct and positive");
                }
            }
            SymToken::I(a) => {
                if a == 0 {
                    return bad("inversion index must be positive");
                }
            }
        }
        Ok(self)
    }

    pub fn inverse(self) -> SymToken {
        match self {
            SymToken::M { z, v } => SymToken::M { z, v: v.inv() },
            SymToken::C { u, w } => SymToken::C { u, w: w.inv() },
            SymToken::Mc { z, p, q } => SymToken::Mc { z, p: q, q: p },
            other => other,
        }
    }

    /// self^e for e = ±1.
    pub fn pow(self, e: i8) -> SymToken {
        if e < 0 {
            self.inverse()
        } else {
            self
        }
    }

    fn gens(&self) -> Vec<Gen> {
        match *self {
            SymToken::M { z, v } => vec![z.gen, v.gen],
            SymToken::C { u, w } => vec![u, w.gen],
            SymToken::Mc { z, p, q } => vec![z.gen, p.gen, q.gen],
            SymToken::P(a, b) => vec![Gen::X(a), Gen::X(b)],
            SymToken::I(a) => vec![Gen::X(a)],
        }
    }

    /// The named automorphism of F_{n,k} this token stands for.
    pub fn named(&self, basis: Basis) -> Result<NamedAut, SymError> {
        for g in self.gens() {
            if !basis.contains(g) {
                return Err(WordError::OutOfRange(g, basis.n, basis.k).into());
            }
        }
        Ok(match *self {
            SymToken::M { z, v } => NamedAut::Transvection { target: z, by: Word::reduce(basis, [v])? },
            SymToken::C { u, w } => NamedAut::Conjugation { target: u, by: w },
            SymToken::Mc { z, p, q } => NamedAut::Transvection { target: z, by: Word::reduce(basis, [p, q, p.inv(), q.inv()])? },
            SymToken::P(a, b) => NamedAut::Swap(a, b),
            SymToken::I(a) => NamedAut::Inversion(a),
        })
    }

    pub fn to_endo(&self, basis: Basis) -> Result<Endo, SymError> {
        Ok(Endo::named(basis, self.named(basis)?)?)
    }
}

fn fmt_letter(l: Letter) -> String {
    l.to_string()
}

impl fmt::Display for SymToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SymToken::M { z, v } => write!(f, "M[{},{}]", fmt_letter(z), fmt_letter(v)),
            SymToken::C { u, w } => write!(f, "C[{u},{}]", fmt_letter(w)),
            SymToken::Mc { z, p, q } => write!(f, "Mc[{},{},{}]", fmt_letter(z), fmt_letter(p), fmt_letter(q)),
            SymToken::P(a, b) => write!(f, "P[{a},{b}]"),
            SymToken::I(a) => write!(f, "I[{a}]"),
        }
    }
}

impl FromStr for SymToken {
    type Err = SymError;

    /// Accepts `M[x1,y]`, `C[y,x2^-1]`, `Mc[x1^-1,y,x2]`, `P[1,2]`, `I[3]`, optionally
    /// followed by `^-1` or `^1`.
    fn from_str(s: &str) -> Result<SymToken, SymError> {
        let s = s.trim();
        let bad = || SymError::Parse(s.to_string());
        let close = s.rfind(']').ok_or_else(bad)?;
        let (body, suffix) = s.split_at(close + 1);
        let exp = match suffix.trim() {
            "" | "^1" => 1,
            "^-1" => -1,
            _ => return Err(bad()),
        };
        let open = body.find('[').ok_or_else(bad)?;
        let tag = body[..open].trim();
        let args: Vec<&str> = body[open + 1..body.len() - 1].split(',').map(str::trim).collect();
        let letters = || -> Result<Vec<Letter>, SymError> {
            args.iter().map(|a| a.parse::<Letter>().map_err(|_| bad())).collect()
        };
        let index = |a: &str| a.parse::<u16>().map_err(|_| bad());
        let tok = match (tag, args.len()) {
            ("M", 2) => {
                let l = letters()?;
                SymToken::m(l[0], l[1])?
            }
            ("C", 2) => {
                let l = letters()?;
                SymToken::c(l[0], l[1])?
            }
            ("Mc", 3) => {
                let l = letters()?;
                SymToken::mc(l[0], l[1], l[2])?
            }
            ("P", 2) => SymToken::p(index(args[0])?, index(args[1])?)?,
            ("I", 1) => SymToken::i(index(args[0])?)?,
            _ => return Err(bad()),
        };
        Ok(tok.pow(exp))
    }
}

/// The symbolic alphabets. Every alphabet except `Any` has k = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// Nielsen generators of Aut(F_n).
    A,
    /// S_A ∪ S_Z.
    Q,
    /// Generators of the kernel.
    K,
    /// M[x_a, y].
    Z,
    /// Jensen–Wahl generators of A_{n,1}.
    C,
    /// Every valid token, any k.
    Any,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Alphabet::A => "S_A",
            Alphabet::Q => "S_Q",
            Alphabet::K => "S_K",
            Alphabet::Z => "S_Z",
            Alphabet::C => "S_C",
            Alphabet::Any => "any",
        };
        f.write_str(s)
    }
}

const Y: Gen = Gen::Y(1);

impl Alphabet {
    /// Whether `t` or its inverse is a generator of this alphabet.
    pub fn contains(&self, t: SymToken) -> bool {
        let x = |l: Letter| l.gen.is_x();
        match *self {
            Alphabet::Any => true,
            Alphabet::A => match t {
                SymToken::M { v, .. } => x(v),
                SymToken::P(..) | SymToken::I(_) => true,
                _ => false,
            },
            Alphabet::Z => matches!(t, SymToken::M { z, v } if !z.inverse && v.gen == Y),
            Alphabet::Q => Alphabet::A.contains(t) || Alphabet::Z.contains(t),
            Alphabet::C => {
                Alphabet::A.contains(t)
                    || matches!(t, SymToken::M { v, .. } if v.gen == Y)
                    || matches!(t, SymToken::C { u, w } if u == Y && x(w))
            }
            Alphabet::K => match t {
                SymToken::C { u, w } => (u == Y && x(w)) || (u.is_x() && w.gen == Y),
                SymToken::Mc { p, q, .. } => (p.gen == Y && x(q)) || (q.gen == Y && x(p)),
                _ => false,
            },
        }
    }
}

/// The generators of an alphabet at rank n (k = 1).
pub fn alphabet(kind: Alphabet, n: usize) -> Result<Vec<SymToken>, SymError> {
    if n < 2 {
        return Err(SymError::SmallRank(n));
    }
    let n = n as u16;
    let signs = [1i8, -1];
    let x = |a: u16| Gen::X(a);
    let mut out = Vec::new();
    let nielsen = |out: &mut Vec<SymToken>| {
        for a in 1..=n {
            for b in 1..=n {
                if a != b {
                    for al in signs {
                        out.push(SymToken::M { z: x(a).pow(al), v: x(b).pos() });
                    }
                }
            }
        }
        for a in 1..=n {
            for b in a + 1..=n {
                out.push(SymToken::P(a, b));
            }
        }
        for a in 1..=n {
            out.push(SymToken::I(a));
        }
    };
    match kind {
        Alphabet::A => nielsen(&mut out),
        Alphabet::Z => out.extend((1..=n).map(|a| SymToken::M { z: x(a).pos(), v: Y.pos() })),
        Alphabet::Q => {
            nielsen(&mut out);
            out.extend((1..=n).map(|a| SymToken::M { z: x(a).pos(), v: Y.pos() }));
        }
        Alphabet::C => {
            nielsen(&mut out);
            for a in 1..=n {
                for al in signs {
                    out.push(SymToken::M { z: x(a).pow(al), v: Y.pos() });
                }
            }
            out.extend((1..=n).map(|a| SymToken::C { u: Y, w: x(a).pos() }));
        }
        Alphabet::K => {
            for a in 1..=n {
                out.push(SymToken::C { u: Y, w: x(a).pos() });
                out.push(SymToken::C { u: x(a), w: Y.pos() });
            }
            for a in 1..=n {
                for b in 1..=n {
                    if a == b {
                        continue;
                    }
                    for al in signs {
                        for ep in signs {
                            for be in signs {
                                out.push(SymToken::Mc { z: x(a).pow(al), p: Y.pow(ep), q: x(b).pow(be) });
                            }
                        }
                    }
                }
            }
        }
        Alphabet::Any => return Err(SymError::NotEnumerable(kind)),
    }
    Ok(out)
}

/// Generators together with their inverses, without duplicates.
pub fn alphabet_pm(kind: Alphabet, n: usize) -> Result<Vec<SymToken>, SymError> {
    let mut out = Vec::new();
    for t in alphabet(kind, n)? {
        out.push(t);
        if t.inverse() != t {
            out.push(t.inverse());
        }
    }
    Ok(out)
}

/// A freely reduced word of tokens over a declared alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymWord {
    alphabet: Alphabet,
    tokens: Vec<SymToken>,
}

fn push_token(out: &mut Vec<SymToken>, t: SymToken) {
    if out.last() == Some(&t.inverse()) {
        out.pop();
    } else {
        out.push(t);
    }
}

impl SymWord {
    pub fn empty(alphabet: Alphabet) -> SymWord {
        SymWord { alphabet, tokens: Vec::new() }
    }

    /// Check alphabet membership and freely reduce.
    pub fn new<I: IntoIterator<Item = SymToken>>(alphabet: Alphabet, tokens: I) -> Result<SymWord, SymError> {
        let mut out = Vec::new();
        for t in tokens {
            if !alphabet.contains(t) {
                return Err(SymError::NotInAlphabet(t, alphabet));
            }
            push_token(&mut out, t);
        }
        Ok(SymWord { alphabet, tokens: out })
    }

    pub(crate) fn trusted<I: IntoIterator<Item = SymToken>>(alphabet: Alphabet, tokens: I) -> SymWord {
        let mut out = Vec::new();
        for t in tokens {
            push_token(&mut out, t);
        }
        SymWord { alphabet, tokens: out }
    }

    pub fn token(alphabet: Alphabet, t: SymToken) -> Result<SymWord, SymError> {
        SymWord::new(alphabet, [t])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn tokens(&self) -> &[SymToken] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Reinterpret the same tokens over another alphabet.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<SymWord, SymError> {
        SymWord::new(alphabet, self.tokens.iter().copied())
    }

    pub fn mul(&self, other: &SymWord) -> Result<SymWord, SymError> {
        if self.alphabet != other.alphabet {
            return Err(SymError::AlphabetMismatch(self.alphabet, other.alphabet));
        }
        Ok(SymWord::trusted(self.alphabet, self.tokens.iter().chain(&other.tokens).copied()))
    }

    pub fn inv(&self) -> SymWord {
        SymWord { alphabet: self.alphabet, tokens: self.tokens.iter().rev().map(|t| t.inverse()).collect() }
    }

    /// self^e for e = ±1.
    pub fn pow(&self, e: i8) -> SymWord {
        if e < 0 {
            self.inv()
        } else {
            self.clone()
        }
    }

    /// u v u⁻¹ v⁻¹.
    pub fn commutator(&self, other: &SymWord) -> Result<SymWord, SymError> {
        self.mul(other)?.mul(&self.inv())?.mul(&other.inv())
    }

    /// Insert `w` at token position `pos` and reduce.
    pub fn insert(&self, pos: usize, w: &SymWord) -> Option<SymWord> {
        if pos > self.len() {
            return None;
        }
        let (l, r) = self.tokens.split_at(pos);
        Some(SymWord::trusted(self.alphabet, l.iter().chain(&w.tokens).chain(r).copied()))
    }

    /// Parse `*`-separated tokens; `empty` (or an empty string) is the empty word.
    pub fn parse(alphabet: Alphabet, s: &str) -> Result<SymWord, SymError> {
        let s = s.trim();
        if s.is_empty() || s == "empty" || s == "1" {
            return Ok(SymWord::empty(alphabet));
        }
        let toks = s.split('*').map(str::parse::<SymToken>).collect::<Result<Vec<_>, _>>()?;
        SymWord::new(alphabet, toks)
    }
}

impl fmt::Display for SymWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return f.write_str("empty");
        }
        let parts: Vec<String> = self.tokens.iter().map(SymToken::to_string).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Ψ: the product of the named automorphisms, left to right.
pub fn interpret(w: &SymWord, basis: Basis) -> Result<Endo, SymError> {
    interpret_tokens(w.tokens(), basis)
}

pub fn interpret_tokens(tokens: &[SymToken], basis: Basis) -> Result<Endo, SymError> {
    let mut e = Endo::identity(basis);
    for t in tokens {
        e = e.compose(&t.to_endo(basis)?)?;
    }
    Ok(e)
}

/// Insert each word at its position in turn, reducing after every step.
pub fn applyrels(start: &SymWord, steps: &[(SymWord, usize)]) -> Result<SymWord, SymError> {
    let mut w = start.clone();
    for (i, (ins, pos)) in steps.iter().enumerate() {
        if ins.alphabet() != w.alphabet() {
            return Err(SymError::AlphabetMismatch(w.alphabet(), ins.alphabet()));
        }
        w = w.insert(*pos, ins).ok_or(SymError::Position { step: i + 1, pos: *pos, len: w.len() })?;
    }
    Ok(w)
}

/// A reduction certificate over S_K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    pub start: SymWord,
    /// (position, inserted word)
    pub steps: Vec<(usize, SymWord)>,
    pub expect: SymWord,
    /// Source line of each step, when parsed from text.
    pub step_lines: Vec<usize>,
}

impl Certificate {
    pub fn parse(text: &str) -> Result<Certificate, SymError> {
        let err = |line: usize, msg: String| SymError::Certificate { line, msg };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
        let n = header
            .strip_prefix("certificate v1; n=")
            .and_then(|r| r.trim().parse::<usize>().ok())
            .ok_or_else(|| err(hl, format!("bad header {header:?}")))?;
        if n < 2 {
            return Err(err(hl, format!("n={n} is too small")));
        }
        let word = |line: usize, s: &str| SymWord::parse(Alphabet::K, s).map_err(|e| err(line, e.to_string()));
        let (sl, start) = lines.next().ok_or_else(|| err(hl + 1, "missing start line".into()))?;
        let start = word(sl, start.strip_prefix("start:").ok_or_else(|| err(sl, "expected `start:`".into()))?)?;
        let mut steps = Vec::new();
        let mut step_lines = Vec::new();
        let mut expect = None;
        for (ln, l) in lines {
            if expect.is_some() {
                return Err(err(ln, "content after `expect:`".into()));
            }
            if let Some(rest) = l.strip_prefix("insert @") {
                let (pos, w) = rest.split_once(':').ok_or_else(|| err(ln, "expected `insert @<pos>: <word>`".into()))?;
                let pos = pos.trim().parse::<usize>().map_err(|_| err(ln, format!("bad position {pos:?}")))?;
                steps.push((pos, word(ln, w)?));
                step_lines.push(ln);
            } else if let Some(rest) = l.strip_prefix("expect:") {
                expect = Some(word(ln, rest)?);
            } else {
                return Err(err(ln, format!("unrecognized line {l:?}")));
            }
        }
        let expect = expect.ok_or_else(|| err(text.lines().count() + 1, "missing `expect:` line".into()))?;
        Ok(Certificate { n, start, steps, expect, step_lines })
    }

    pub fn format(&self) -> String {
        let mut s = format!("certificate v1; n={}\nstart: {}\n", self.n, self.start);
        for (pos, w) in &self.steps {
            s.push_str(&format!("insert @{pos}: {w}\n"));
        }
        s.push_str(&format!("expect: {}\n", self.expect));
        s
    }

    /// Run the insertions.
    pub fn reduce(&self) -> Result<SymWord, SymError> {
        let steps: Vec<(SymWord, usize)> = self.steps.iter().map(|(p, w)| (w.clone(), *p)).collect();
        applyrels(&self.start, &steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SymToken {
        s.parse().unwrap()
    }

    fn w(a: Alphabet, s: &str) -> SymWord {
        SymWord::parse(a, s).unwrap()
    }

    #[test]
    fn alphabet_counts() {
        assert_eq!(alphabet(Alphabet::K, 2).unwrap().len(), 20);
        assert_eq!(alphabet(Alphabet::A, 2).unwrap().len(), 7);
        for n in 2..6 {
            assert_eq!(alphabet(Alphabet::Z, n).unwrap().len(), n);
            assert_eq!(alphabet(Alphabet::K, n).unwrap().len(), 2 * n + 8 * n * (n - 1));
        }
        assert_eq!(alphabet(Alphabet::K, 1).unwrap_err(), SymError::SmallRank(1));
        assert_eq!(alphabet_pm(Alphabet::A, 2).unwrap().len(), 4 * 2 + 1 + 2);
    }

    #[test]
    fn token_parse_and_normalize() {
        assert_eq!(t("C[x1^-1,y]"), t("C[x1,y]"));
        assert_eq!(t("C[y,x1^-1]"), t("C[y,x1]").inverse());
        assert_eq!(t("C[y^-1,x2^-1]"), t("C[y,x2]^-1"));
        assert_eq!(t("P[2,1]"), SymToken::P(1, 2));
        assert_eq!(t("Mc[x1,y,x2]").inverse(), t("Mc[x1,x2,y]"));
        assert_eq!(t("M[x1^-1,x2]").inverse(), t("M[x1^-1,x2^-1]"));
        assert_eq!(t("Mc[x1,y,x2]").to_string(), "Mc[x1,y1,x2]");
        assert_eq!(t("M[x2^-1,y1^-1]").to_string(), "M[x2^-1,y1^-1]");
        for bad in ["M[y,x1]", "Mc[x1,x1,y]", "C[y,y]", "P[1,1]", "Q[1]", "I[0]", "M[x1,y"] {
            assert!(bad.parse::<SymToken>().is_err(), "{bad}");
        }
    }

    #[test]
    fn word_ops() {
        assert!(w(Alphabet::K, "C[y,x1]*C[y,x1^-1]").is_empty());
        assert_eq!(w(Alphabet::K, "Mc[x1,y,x2]").inv(), w(Alphabet::K, "Mc[x1,x2,y]"));
        assert_eq!(w(Alphabet::A, "P[1,2]").inv(), w(Alphabet::A, "P[1,2]"));
        assert!(w(Alphabet::A, "P[1,2]*P[2,1]").is_empty());
        assert_eq!(w(Alphabet::K, "empty").to_string(), "empty");
        assert!(SymWord::parse(Alphabet::K, "M[x1,y]").is_err());
        assert!(SymWord::parse(Alphabet::Z, "M[x1^-1,y]").is_err());
        assert!(SymWord::parse(Alphabet::C, "M[x1^-1,y]").is_ok());
        let a = w(Alphabet::K, "C[x1,y]");
        assert_eq!(a.mul(&w(Alphabet::A, "I[1]")).unwrap_err(), SymError::AlphabetMismatch(Alphabet::K, Alphabet::A));
        let s = w(Alphabet::K, "C[x1,y]*Mc[x2,y^-1,x1]");
        assert_eq!(SymWord::parse(Alphabet::K, &s.to_string()).unwrap(), s);
    }

    #[test]
    fn interpret_examples() {
        let b = Basis::new(2, 1).unwrap();
        assert!(interpret(&SymWord::empty(Alphabet::K), b).unwrap().is_identity());
        let e = interpret(&w(Alphabet::K, "Mc[x1,y,x2]"), b).unwrap();
        assert_eq!(e.image(Gen::X(1)), &Word::parse(b, "y x2 y^-1 x2^-1 x1").unwrap());
        let m = interpret(&w(Alphabet::A, "M[x1^-1,x2]"), b).unwrap();
        assert_eq!(m.image(Gen::X(1)), &Word::parse(b, "x1 x2^-1").unwrap());
        assert!(matches!(interpret(&w(Alphabet::K, "C[x3,y]"), b), Err(SymError::Map(_))));
    }

    #[test]
    fn kernel_and_birman_membership() {
        let b = Basis::new(3, 1).unwrap();
        for t in alphabet(Alphabet::K, 3).unwrap() {
            assert!(t.to_endo(b).unwrap().classify().in_kia, "{t}");
        }
        let zs: Vec<Endo> = alphabet(Alphabet::Z, 3).unwrap().iter().map(|t| t.to_endo(b).unwrap()).collect();
        for z in &zs {
            assert!(z.classify().in_bker);
            for z2 in &zs {
                assert!(z.commutator(z2).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn applyrels_and_certificates() {
        let r = w(Alphabet::K, "C[x1,y]*C[x2,y]*C[x1,y^-1]*C[x2,y^-1]");
        let e = SymWord::empty(Alphabet::K);
        assert_eq!(applyrels(&r, &[]).unwrap(), r);
        assert_eq!(applyrels(&e, &[(r.clone(), 0)]).unwrap(), r);
        assert_eq!(applyrels(&e, &[(r.clone(), 1)]).unwrap_err(), SymError::Position { step: 1, pos: 1, len: 0 });
        assert!(applyrels(&r, &[(r.inv(), 4)]).unwrap().is_empty());
        let text = format!("certificate v1; n=2\nstart: empty\ninsert @0: {r}\nexpect: {r}\n");
        let c = Certificate::parse(&text).unwrap();
        assert_eq!(c.format(), text);
        assert_eq!(c.reduce().unwrap(), c.expect);
        assert_eq!(c.step_lines, vec![3]);
        for bad in ["", "certificate v2; n=2", "certificate v1; n=2\nstart: empty", "certificate v1; n=2\nstart: empty\nfoo\nexpect: empty"] {
            assert!(Certificate::parse(bad).is_err(), "{bad:?}");
        }
        match Certificate::parse("certificate v1; n=2\nstart: empty\ninsert @x: empty\nexpect: empty") {
            Err(SymError::Certificate { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }
}
