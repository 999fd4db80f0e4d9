//! Freely reduced words in the free group F_{n,k} on x_1..x_n, y_1..y_k.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("basis must have at least one generator")]
    EmptyBasis,
    #[error("generator {0} is out of range for basis (n={1}, k={2})")]
    OutOfRange(Gen, usize, usize),
    #[error("basis mismatch: (n={0}, k={1}) vs (n={2}, k={3})")]
    BasisMismatch(usize, usize, usize, usize),
    #[error("cannot parse word: {0}")]
    Parse(String),
}

/// Rank data for F_{n,k}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Basis {
    pub n: usize,
    pub k: usize,
}

impl Basis {
    pub fn new(n: usize, k: usize) -> Result<Basis, WordError> {
        if n + k == 0 {
            return Err(WordError::EmptyBasis);
        }
        Ok(Basis { n, k })
    }

    pub fn rank(&self) -> usize {
        self.n + self.k
    }

    pub fn contains(&self, g: Gen) -> bool {
        match g {
            Gen::X(i) => i >= 1 && (i as usize) <= self.n,
            Gen::Y(j) => j >= 1 && (j as usize) <= self.k,
        }
    }

    /// Position of `g` in the ordered basis x_1..x_n, y_1..y_k.
    pub fn index(&self, g: Gen) -> usize {
        match g {
            Gen::X(i) => i as usize - 1,
            Gen::Y(j) => self.n + j as usize - 1,
        }
    }

    pub fn gen_at(&self, idx: usize) -> Gen {
        if idx < self.n {
            Gen::X(idx as u16 + 1)
        } else {
            Gen::Y((idx - self.n) as u16 + 1)
        }
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.rank()).map(move |i| self.gen_at(i))
    }

    fn check(&self, other: &Basis) -> Result<(), WordError> {
        if self != other {
            return Err(WordError::BasisMismatch(self.n, self.k, other.n, other.k));
        }
        Ok(())
    }
}

/// A basis generator; indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X(u16),
    Y(u16),
}

impl Gen {
    pub fn is_x(&self) -> bool {
        matches!(self, Gen::X(_))
    }

    pub fn is_y(&self) -> bool {
        matches!(self, Gen::Y(_))
    }

    pub fn pos(self) -> Letter {
        Letter::new(self, false)
    }

    pub fn neg(self) -> Letter {
        Letter::new(self, true)
    }

    /// The letter g^e for e = ±1.
    pub fn pow(self, e: i8) -> Letter {
        Letter::new(self, e < 0)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X(i) => write!(f, "x{i}"),
            Gen::Y(j) => write!(f, "y{j}"),
        }
    }
}

/// A generator with exponent ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Gen, inverse: bool) -> Letter {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn exp(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Raise to the power e = ±1.
    pub fn pow(self, e: i8) -> Letter {
        if e < 0 {
            self.inv()
        } else {
            self
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Letter, WordError> {
        let (g, e) = parse_power(s)?;
        match e {
            1 => Ok(g.pos()),
            -1 => Ok(g.neg()),
            _ => Err(WordError::Parse(format!("letter exponent must be ±1 in {s:?}"))),
        }
    }
}

/// Parse `x3`, `y`, `y2^-1`, `x1^4` into a generator and an exponent.
pub(crate) fn parse_power(s: &str) -> Result<(Gen, i64), WordError> {
    let s = s.trim();
    let bad = || WordError::Parse(format!("bad generator {s:?}"));
    let (base, exp) = match s.split_once('^') {
        Some((b, e)) => (b.trim(), e.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s, 1),
    };
    let gen = if let Some(rest) = base.strip_prefix('x') {
        Gen::X(rest.parse::<u16>().map_err(|_| bad())?)
    } else if let Some(rest) = base.strip_prefix('y') {
        if rest.is_empty() {
            Gen::Y(1)
        } else {
            Gen::Y(rest.parse::<u16>().map_err(|_| bad())?)
        }
    } else {
        return Err(bad());
    };
    if matches!(gen, Gen::X(0) | Gen::Y(0)) {
        return Err(bad());
    }
    Ok((gen, exp))
}

/// Append `l` to a reduced letter sequence, cancelling if possible.
#[inline]
pub(crate) fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// A freely reduced word in F_{n,k}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    basis: Basis,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(basis: Basis) -> Word {
        Word { basis, letters: Vec::new() }
    }

    pub fn gen(basis: Basis, l: Letter) -> Result<Word, WordError> {
        Word::reduce(basis, [l])
    }

    /// Freely reduce a raw letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(basis: Basis, letters: I) -> Result<Word, WordError> {
        let mut out = Vec::new();
        for l in letters {
            if !basis.contains(l.gen) {
                return Err(WordError::OutOfRange(l.gen, basis.n, basis.k));
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { basis, letters: out })
    }

    /// Build from letters already known to lie in the basis.
    pub(crate) fn reduce_trusted<I: IntoIterator<Item = Letter>>(basis: Basis, letters: I) -> Word {
        let mut out = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { basis, letters: out }
    }

    pub fn parse(basis: Basis, s: &str) -> Result<Word, WordError> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "e" {
            return Ok(Word::identity(basis));
        }
        let mut raw = Vec::new();
        for tok in s.split_whitespace() {
            let (g, e) = parse_power(tok)?;
            let l = if e < 0 { g.neg() } else { g.pos() };
            for _ in 0..e.unsigned_abs() {
                raw.push(l);
            }
        }
        Word::reduce(basis, raw)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mentions(&self, g: Gen) -> bool {
        self.letters.iter().any(|l| l.gen == g)
    }

    pub fn mul(&self, other: &Word) -> Result<Word, WordError> {
        self.basis.check(&other.basis)?;
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Ok(Word { basis: self.basis, letters: out })
    }

    pub fn inv(&self) -> Word {
        Word {
            basis: self.basis,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// [u, v] = u v u⁻¹ v⁻¹.
    pub fn commutator(&self, other: &Word) -> Result<Word, WordError> {
        self.basis.check(&other.basis)?;
        let mut out = Vec::with_capacity(2 * (self.len() + other.len()));
        for &l in self.letters.iter().chain(&other.letters) {
            push_reduced(&mut out, l);
        }
        for l in self.letters.iter().rev().chain(other.letters.iter().rev()) {
            push_reduced(&mut out, l.inv());
        }
        Ok(Word { basis: self.basis, letters: out })
    }

    /// Returns (core, conjugator) with self = conjugator·core·conjugator⁻¹.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j >= i + 2 && l[i] == l[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        (
            Word { basis: self.basis, letters: l[i..j].to_vec() },
            Word { basis: self.basis, letters: l[..i].to_vec() },
        )
    }

    pub fn is_conjugate(&self, other: &Word) -> bool {
        if self.basis != other.basis {
            return false;
        }
        let (a, _) = self.cyclic_reduce();
        let (b, _) = other.cyclic_reduce();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let n = a.len();
        (0..n).any(|r| (0..n).all(|i| a.letters[(i + r) % n] == b.letters[i]))
    }

    /// Exponent-sum vector in the order x_1..x_n, y_1..y_k.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut v = vec![0; self.basis.rank()];
        for l in &self.letters {
            v[self.basis.index(l.gen)] += l.exp() as i64;
        }
        v
    }

    /// Delete every letter whose generator fails `keep` and reduce.
    pub fn retain_gens(&self, keep: impl Fn(Gen) -> bool) -> Word {
        Word::reduce_trusted(self.basis, self.letters.iter().copied().filter(|l| keep(l.gen)))
    }

    /// Reinterpret in a larger basis containing every letter.
    pub fn rebase(&self, basis: Basis) -> Result<Word, WordError> {
        Word::reduce(basis, self.letters.iter().copied())
    }

    /// Second-order Magnus coefficients c_ab (a < b) of a word with zero abelianization.
    pub fn lambda2_projection(&self) -> Result<Vec<i64>, WordError> {
        if self.abelianize().iter().any(|&c| c != 0) {
            return Err(WordError::Parse(format!("{self} has nonzero abelianization")));
        }
        Ok(self.pair_counts())
    }

    /// The ordered-pair counts behind `lambda2_projection`, without the precondition.
    pub(crate) fn pair_counts(&self) -> Vec<i64> {
        let r = self.basis.rank();
        let mut seen = vec![0i64; r];
        let mut out = vec![0i64; r * r.saturating_sub(1) / 2];
        for l in &self.letters {
            let b = self.basis.index(l.gen);
            let e = l.exp() as i64;
            for (a, &s) in seen.iter().enumerate().take(b) {
                if s != 0 {
                    out[wedge_index(r, a, b)] += s * e;
                }
            }
            seen[b] += e;
        }
        out
    }
}

/// Column of e_a∧e_b (a < b) among the C(r,2) basis wedges, lexicographic order.
pub fn wedge_index(r: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < r);
    a * (2 * r - a - 1) / 2 + (b - a - 1)
}

/// [u]∧[v] for abelianization vectors, in the wedge basis.
pub fn wedge(u: &[i64], v: &[i64]) -> Vec<i64> {
    let r = u.len();
    let mut out = vec![0; r * r.saturating_sub(1) / 2];
    for a in 0..r {
        for b in a + 1..r {
            out[wedge_index(r, a, b)] = u[a] * v[b] - u[b] * v[a];
        }
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;

    /// Panics on basis mismatch; use [`Word::mul`] for the checked form.
    fn mul(self, rhs: &Word) -> Word {
        Word::mul(self, rhs).expect("basis mismatch in word product")
    }
}
