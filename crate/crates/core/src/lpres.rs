//! The substitution system φ on the kernel generators, its extension to words, and
//! catalogs of the relation families (Nielsen, Jensen–Wahl, the seed relations R1–R10,
//! the Z^n commutators and the normality identities for s = M[x_a, y_d]).

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::fgword::{Gen, Letter};
use crate::symgen::{alphabet, alphabet_pm, Alphabet, SymError, SymToken, SymWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpresError {
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("no rule covers φ({0})({1})")]
    Unresolved(SymToken, SymToken),
    #[error("φ({0})({1}) matches several rules: {2:?}")]
    Ambiguous(SymToken, SymToken, Vec<&'static str>),
    #[error("{0} is not a substitution index (expected a token of S_Q or its inverse)")]
    NotSubstitution(SymToken),
    #[error("{0} is not a kernel token")]
    NotKernel(SymToken),
    #[error("unsupported catalog parameters: {0}")]
    Unsupported(String),
}

const Y: Gen = Gen::Y(1);

fn x(a: u16, e: i8) -> Letter {
    Gen::X(a).pow(e)
}

fn yl(e: i8) -> Letter {
    Y.pow(e)
}

/// C[y, x_a]^e.
pub(crate) fn cy(a: u16, e: i8) -> SymToken {
    SymToken::C { u: Y, w: x(a, e) }
}

/// C[x_a, y]^e.
pub(crate) fn cx(a: u16, e: i8) -> SymToken {
    SymToken::C { u: Gen::X(a), w: yl(e) }
}

pub(crate) fn mc(z: Letter, p: Letter, q: Letter) -> SymToken {
    SymToken::Mc { z, p, q }
}

fn idx(l: Letter) -> u16 {
    match l.gen {
        Gen::X(i) | Gen::Y(i) => i,
    }
}

fn inv_all(w: &[SymToken]) -> Vec<SymToken> {
    w.iter().rev().map(|t| t.inverse()).collect()
}

fn pow_all(w: Vec<SymToken>, e: i8) -> Vec<SymToken> {
    if e < 0 {
        inv_all(&w)
    } else {
        w
    }
}

/// Split a kernel token into its generator and exponent.
pub fn kernel_generator(t: SymToken) -> Result<(SymToken, i8), LpresError> {
    if !Alphabet::K.contains(t) {
        return Err(LpresError::NotKernel(t));
    }
    let positive = match t {
        SymToken::C { w, .. } => !w.inverse,
        SymToken::Mc { p, .. } => p.gen == Y,
        _ => unreachable!(),
    };
    Ok(if positive { (t, 1) } else { (t.inverse(), -1) })
}

#[derive(Debug, Clone, Copy)]
enum SShape {
    Relabel(SymToken),
    /// M[x_a^al, y]^eps
    My { a: u16, al: i8, eps: i8 },
    /// M[x_a^al, x_b]^be
    Mx { a: u16, al: i8, b: u16, be: i8 },
}

#[derive(Debug, Clone, Copy)]
enum TShape {
    Cy(u16),
    Cx(u16),
    Mc { z: Letter, e: i8, q: Letter },
}

#[derive(Debug, Clone, Copy)]
struct Shape {
    s: SShape,
    t: TShape,
    t_tok: SymToken,
}

impl Shape {
    fn of(s: SymToken, t: SymToken) -> Result<Shape, LpresError> {
        let ss = match s {
            SymToken::P(..) | SymToken::I(_) => SShape::Relabel(s),
            SymToken::M { z, v } if v.gen == Y => SShape::My { a: idx(z), al: z.exp(), eps: v.exp() },
            SymToken::M { z, v } if v.gen.is_x() => SShape::Mx { a: idx(z), al: z.exp(), b: idx(v), be: v.exp() },
            _ => return Err(LpresError::NotSubstitution(s)),
        };
        let ts = match t {
            SymToken::C { u, w } if u == Y => TShape::Cy(idx(w)),
            SymToken::C { u, .. } => TShape::Cx(idx(Letter::new(u, false))),
            SymToken::Mc { z, p, q } => TShape::Mc { z, e: p.exp(), q },
            _ => return Err(LpresError::NotKernel(t)),
        };
        Ok(Shape { s: ss, t: ts, t_tok: t })
    }

    fn my(&self) -> Option<(u16, i8)> {
        match self.s {
            SShape::My { a, al: 1, eps } => Some((a, eps)),
            _ => None,
        }
    }

    fn mx(&self) -> Option<Mx> {
        match self.s {
            SShape::Mx { a, al, b, be } => Some(Mx { a, al, b, be }),
            _ => None,
        }
    }

    fn mc(&self) -> Option<(Letter, i8, Letter)> {
        match self.t {
            TShape::Mc { z, e, q } => Some((z, e, q)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Mx {
    a: u16,
    al: i8,
    b: u16,
    be: i8,
}

impl Mx {
    fn xa(&self, e: i8) -> Letter {
        x(self.a, self.al * e)
    }

    fn xb(&self, e: i8) -> Letter {
        x(self.b, self.be * e)
    }
}

fn relabel(s: SymToken, l: Letter) -> Letter {
    match (s, l.gen) {
        (SymToken::P(a, b), Gen::X(i)) if i == a => Letter::new(Gen::X(b), l.inverse),
        (SymToken::P(a, b), Gen::X(i)) if i == b => Letter::new(Gen::X(a), l.inverse),
        (SymToken::I(a), Gen::X(i)) if i == a => l.inv(),
        _ => l,
    }
}

/// A rule of the substitution table.
struct Rule {
    id: &'static str,
    when: fn(&Shape) -> bool,
    image: fn(&Shape) -> Vec<SymToken>,
}

fn keep(sh: &Shape) -> Vec<SymToken> {
    vec![sh.t_tok]
}

fn mx_mc(sh: &Shape, f: fn(Mx, Letter, i8, Letter) -> bool) -> bool {
    match (sh.mx(), sh.mc()) {
        (Some(m), Some((z, e, q))) => f(m, z, e, q),
        _ => false,
    }
}

fn my_mc(sh: &Shape, f: fn(u16, Letter, Letter) -> bool) -> bool {
    match (sh.my(), sh.mc()) {
        (Some((a, _)), Some((z, _, q))) => f(a, z, q),
        _ => false,
    }
}

fn mx_img(sh: &Shape, f: fn(Mx, Letter, Letter, Letter) -> Vec<SymToken>) -> Vec<SymToken> {
    let m = sh.mx().unwrap();
    let (z, e, q) = sh.mc().unwrap();
    f(m, z, yl(e), q)
}

static RULES: &[Rule] = &[
    Rule {
        id: "relabel",
        when: |sh| matches!(sh.s, SShape::Relabel(_)),
        image: |sh| {
            let SShape::Relabel(s) = sh.s else { unreachable!() };
            let tok = match sh.t_tok {
                SymToken::C { u, w } => SymToken::C { u: relabel(s, u.pos()).gen, w: relabel(s, w) },
                SymToken::Mc { z, p, q } => mc(relabel(s, z), relabel(s, p), relabel(s, q)),
                other => other,
            };
            vec![tok]
        },
    },
    // s = M[x_a, y]^eps
    Rule { id: "fix:M[x_a,y]:C[x_a,y]", when: |sh| matches!((sh.my(), sh.t), (Some((a, _)), TShape::Cx(c)) if a == c), image: keep },
    Rule { id: "fix:M[x_a,y]:C[x_b,y]", when: |sh| matches!((sh.my(), sh.t), (Some((a, _)), TShape::Cx(c)) if a != c), image: keep },
    Rule { id: "fix:M[x_a,y]:Mc[x_a^-1,y,x_b]", when: |sh| my_mc(sh, |a, z, _| z == x(a, -1)), image: keep },
    Rule {
        id: "fix:M[x_a,y]:Mc[x_b,y,x_c]",
        when: |sh| my_mc(sh, |a, z, q| idx(z) != a && idx(q) != a),
        image: keep,
    },
    Rule { id: "gap:M[x_a,y]:Mc[x_b,y,x_a^-1]", when: |sh| my_mc(sh, |a, z, q| idx(z) != a && q == x(a, -1)), image: keep },
    Rule {
        id: "T4.1",
        when: |sh| matches!((sh.my(), sh.t), (Some((a, _)), TShape::Cy(c)) if a != c),
        image: |sh| {
            let (a, eps) = sh.my().unwrap();
            let TShape::Cy(c) = sh.t else { unreachable!() };
            vec![sh.t_tok, mc(x(a, 1), yl(-eps), x(c, -1))]
        },
    },
    Rule {
        id: "T4.2",
        when: |sh| matches!((sh.my(), sh.t), (Some((a, _)), TShape::Cy(c)) if a == c),
        image: |sh| {
            let (a, eps) = sh.my().unwrap();
            vec![cx(a, eps), sh.t_tok]
        },
    },
    Rule {
        id: "T4.3",
        when: |sh| my_mc(sh, |a, z, _| z == x(a, 1)),
        image: |sh| {
            let (a, eps) = sh.my().unwrap();
            vec![cx(a, eps), sh.t_tok, cx(a, -eps)]
        },
    },
    Rule {
        id: "T4.4",
        when: |sh| my_mc(sh, |a, z, q| idx(z) != a && q == x(a, 1)),
        image: |sh| {
            let (a, eps) = sh.my().unwrap();
            vec![cx(a, eps), sh.t_tok, cx(a, -eps)]
        },
    },
    // s = M[x_a^al, x_b]^be
    Rule { id: "fix:M[x_a,x_b]:C[x_c,y]", when: |sh| matches!((sh.mx(), sh.t), (Some(m), TShape::Cx(c)) if c != m.a && c != m.b), image: keep },
    Rule { id: "fix:M[x_a,x_b]:C[y,x_b]", when: |sh| matches!((sh.mx(), sh.t), (Some(m), TShape::Cy(c)) if c == m.b), image: keep },
    Rule { id: "fix:M[x_a,x_b]:C[y,x_c]", when: |sh| matches!((sh.mx(), sh.t), (Some(m), TShape::Cy(c)) if c != m.a && c != m.b), image: keep },
    Rule { id: "fix:M[x_a,x_b]:Mc[x_a^-al,y,x_b]", when: |sh| mx_mc(sh, |m, z, _, q| z == m.xa(-1) && idx(q) == m.b), image: keep },
    Rule { id: "fix:M[x_a,x_b]:Mc[x_a^-al,y,x_c]", when: |sh| mx_mc(sh, |m, z, _, q| z == m.xa(-1) && idx(q) != m.b), image: keep },
    Rule {
        id: "fix:M[x_a,x_b]:Mc[x_c,y,x_b]",
        when: |sh| mx_mc(sh, |m, z, _, q| idx(z) != m.a && idx(z) != m.b && idx(q) == m.b),
        image: keep,
    },
    Rule {
        id: "fix:M[x_a,x_b]:Mc[x_c,y,x_d]",
        when: |sh| mx_mc(sh, |m, z, _, q| idx(z) != m.a && idx(z) != m.b && idx(q) != m.a && idx(q) != m.b),
        image: keep,
    },
    Rule {
        id: "T4.5",
        when: |sh| matches!((sh.mx(), sh.t), (Some(m), TShape::Cy(c)) if c == m.a),
        image: |sh| {
            let m = sh.mx().unwrap();
            pow_all(vec![cy(m.a, m.al), cy(m.b, m.be)], m.al)
        },
    },
    Rule {
        id: "T4.6",
        when: |sh| matches!((sh.mx(), sh.t), (Some(m), TShape::Cx(c)) if c == m.a),
        image: |sh| {
            let m = sh.mx().unwrap();
            vec![sh.t_tok, mc(m.xa(1), m.xb(-1), yl(1))]
        },
    },
    Rule {
        id: "T4.7",
        when: |sh| matches!((sh.mx(), sh.t), (Some(m), TShape::Cx(c)) if c == m.b),
        image: |sh| {
            let m = sh.mx().unwrap();
            vec![sh.t_tok, mc(m.xa(1), m.xb(-1), yl(-1))]
        },
    },
    Rule {
        id: "T4.8",
        when: |sh| mx_mc(sh, |m, z, _, q| z == m.xa(1) && idx(q) != m.b),
        image: |sh| {
            mx_img(sh, |m, z, yy, q| {
                let t = mc(z, yy, q);
                vec![cy(idx(q), q.exp()), mc(m.xa(1), yy, m.xb(-1)), cy(idx(q), -q.exp()), t, mc(m.xa(1), m.xb(-1), yy)]
            })
        },
    },
    Rule {
        id: "T4.9",
        when: |sh| mx_mc(sh, |m, z, _, q| z == m.xb(1) && idx(q) != m.a),
        image: |sh| {
            mx_img(sh, |m, z, yy, q| {
                let t = mc(z, yy, q);
                let (c, g) = (idx(q), q.exp());
                vec![t, mc(m.xa(1), yy, m.xb(-1)), mc(m.xa(1), q, yy), cy(c, g), mc(m.xa(1), m.xb(-1), yy), cy(c, -g)]
            })
        },
    },
    Rule {
        id: "T4.10",
        when: |sh| mx_mc(sh, |m, z, _, q| z == m.xb(-1) && idx(q) != m.a),
        image: |sh| mx_img(sh, |m, z, yy, q| vec![mc(z, yy, q), mc(m.xa(1), yy, q)]),
    },
    Rule {
        id: "T4.11",
        when: |sh| mx_mc(sh, |m, z, _, q| idx(z) != m.a && idx(z) != m.b && q == m.xa(1)),
        image: |sh| mx_img(sh, |m, z, yy, q| vec![cy(m.a, m.al), mc(z, yy, m.xb(1)), cy(m.a, -m.al), mc(z, yy, q)]),
    },
    Rule {
        id: "T4.12",
        when: |sh| mx_mc(sh, |m, z, _, q| idx(z) != m.a && idx(z) != m.b && q == m.xa(-1)),
        image: |sh| mx_img(sh, |m, z, yy, q| vec![cy(m.b, -m.be), mc(z, yy, q), mc(z, m.xb(1), yy), cy(m.b, m.be)]),
    },
    Rule {
        id: "T4.13",
        when: |sh| mx_mc(sh, |m, z, _, q| z == m.xa(1) && q == m.xb(1)),
        image: |sh| mx_img(sh, |m, _, yy, _| vec![mc(m.xa(1), m.xb(-1), yy)]),
    },
    Rule {
        id: "T4.14",
        when: |sh| mx_mc(sh, |m, z, _, q| z == m.xa(1) && q == m.xb(-1)),
        image: |sh| mx_img(sh, |m, z, yy, q| vec![cy(m.b, -m.be), mc(z, yy, q), cy(m.b, m.be)]),
    },
    Rule {
        id: "T4.15",
        when: |sh| mx_mc(sh, |m, z, _, q| z == m.xb(1) && q == m.xa(1)),
        image: |sh| {
            let m = sh.mx().unwrap();
            let (_, e, _) = sh.mc().unwrap();
            vec![mc(m.xb(-1), yl(-e), m.xa(1)), cx(m.b, e), mc(m.xa(1), yl(e), m.xb(-1)), cx(m.a, -e)]
        },
    },
    Rule {
        id: "T4.16",
        when: |sh| mx_mc(sh, |m, z, _, q| z == m.xb(-1) && q == m.xa(1)),
        image: |sh| {
            let m = sh.mx().unwrap();
            let (_, e, _) = sh.mc().unwrap();
            let yy = yl(e);
            vec![
                cy(m.a, m.al),
                cy(m.b, m.be),
                cx(m.b, -e),
                mc(m.xa(1), m.xb(-1), yy),
                cy(m.b, -m.be),
                mc(m.xb(-1), m.xa(-1), yy),
                cy(m.a, -m.al),
                cx(m.a, e),
            ]
        },
    },
    Rule {
        id: "T4.17",
        when: |sh| mx_mc(sh, |m, z, _, q| z == m.xb(1) && q == m.xa(-1)),
        image: |sh| {
            let m = sh.mx().unwrap();
            let (_, e, _) = sh.mc().unwrap();
            let yy = yl(e);
            vec![
                cy(m.b, -m.be),
                cy(m.a, -m.al),
                cx(m.a, e),
                mc(m.xa(1), m.xb(-1), yy),
                cx(m.b, -e),
                mc(m.xb(-1), m.xa(1), yl(-e)),
                cy(m.a, m.al),
                cy(m.b, m.be),
            ]
        },
    },
    Rule {
        // The last factor carries the exponent e; without it the identity fails.
        id: "T4.18",
        when: |sh| mx_mc(sh, |m, z, _, q| z == m.xb(-1) && q == m.xa(-1)),
        image: |sh| {
            let m = sh.mx().unwrap();
            let (_, e, _) = sh.mc().unwrap();
            vec![
                cy(m.b, -m.be),
                cy(m.a, -m.al),
                cx(m.a, -e),
                cy(m.a, m.al),
                sh.t_tok,
                cy(m.b, m.be),
                mc(m.xa(1), yl(e), m.xb(-1)),
                cx(m.b, e),
            ]
        },
    },
];

/// The ids of all rules, in matching order.
pub fn rule_ids() -> Vec<&'static str> {
    RULES.iter().map(|r| r.id).collect()
}

/// φ(s)(t) for s ∈ S_Q^{±1} and a kernel token t, with the id of the rule used.
pub fn phi_gen(s: SymToken, t: SymToken) -> Result<(SymWord, &'static str), LpresError> {
    if !Alphabet::Q.contains(s) {
        return Err(LpresError::NotSubstitution(s));
    }
    let (g, e) = kernel_generator(t)?;
    let sh = Shape::of(s, g)?;
    let hits: Vec<&Rule> = RULES.iter().filter(|r| (r.when)(&sh)).collect();
    match hits.as_slice() {
        [r] => Ok((SymWord::new(Alphabet::K, pow_all((r.image)(&sh), e))?, r.id)),
        [] => Err(LpresError::Unresolved(s, g)),
        many => Err(LpresError::Ambiguous(s, g, many.iter().map(|r| r.id).collect())),
    }
}

/// Fixed cases for s = M[x_a^α, y]^{±1} with α of either sign: C[x_a,y], C[x_b,y],
/// Mc[x_a^-α, y^ε, x_b^β] and Mc[x_b^β, y^ε, x_c^γ].
pub fn is_fixed_case_general(s: SymToken, t: SymToken) -> bool {
    let SymToken::M { z, v } = s else { return false };
    if v.gen != Y {
        return false;
    }
    let Ok((g, _)) = kernel_generator(t) else { return false };
    match g {
        SymToken::C { u, .. } => u.is_x(),
        SymToken::Mc { z: tz, q, .. } => tz == z.inv() || (tz.gen != z.gen && q.gen != z.gen),
        _ => false,
    }
}

/// φ tabulated for a fixed rank n.
#[derive(Debug, Clone)]
pub struct SubstSystem {
    n: usize,
    table: HashMap<(SymToken, SymToken), (SymWord, &'static str)>,
}

impl SubstSystem {
    pub fn new(n: usize) -> Result<SubstSystem, LpresError> {
        let mut table = HashMap::new();
        for s in alphabet_pm(Alphabet::Q, n)? {
            for t in alphabet(Alphabet::K, n)? {
                table.insert((s, t), phi_gen(s, t)?);
            }
        }
        Ok(SubstSystem { n, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn lookup(&self, s: SymToken, t: SymToken) -> Result<(SymWord, i8), LpresError> {
        let (g, e) = kernel_generator(t)?;
        let (w, _) = self.table.get(&(s, g)).ok_or(LpresError::NotSubstitution(s))?;
        Ok((w.clone(), e))
    }

    pub fn phi_gen(&self, s: SymToken, t: SymToken) -> Result<SymWord, LpresError> {
        let (w, e) = self.lookup(s, t)?;
        Ok(w.pow(e))
    }

    /// How many (s, t) pairs each rule resolves.
    pub fn audit(&self) -> BTreeMap<&'static str, usize> {
        let mut counts: BTreeMap<&'static str, usize> = RULES.iter().map(|r| (r.id, 0)).collect();
        for (_, id) in self.table.values() {
            *counts.get_mut(id).unwrap() += 1;
        }
        counts
    }

    /// φ(s) applied to a kernel word.
    pub fn phi_token(&self, s: SymToken, w: &SymWord) -> Result<SymWord, LpresError> {
        let mut out = Vec::new();
        for &t in w.tokens() {
            let (img, e) = self.lookup(s, t)?;
            if e > 0 {
                out.extend_from_slice(img.tokens());
            } else {
                out.extend(inv_all(img.tokens()));
            }
        }
        Ok(SymWord::new(Alphabet::K, out)?)
    }

    /// φ(u₁⋯u_m)(w) = φ(u₁)(⋯φ(u_m)(w)), innermost first.
    pub fn phi_word(&self, u: &[SymToken], w: &SymWord) -> Result<SymWord, LpresError> {
        let mut cur = w.clone();
        for &s in u.iter().rev() {
            cur = self.phi_token(s, &cur)?;
        }
        Ok(cur)
    }
}

/// One instance of a relation family: lhs = rhs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub family: &'static str,
    pub params: String,
    pub alphabet: Alphabet,
    pub lhs: Vec<SymToken>,
    pub rhs: Vec<SymToken>,
}

impl RelationInstance {
    fn new(family: &'static str, params: String, alphabet: Alphabet, lhs: Vec<SymToken>, rhs: Vec<SymToken>) -> RelationInstance {
        RelationInstance { family, params, alphabet, lhs, rhs }
    }

    fn commutator(family: &'static str, params: String, alphabet: Alphabet, u: &[SymToken], v: &[SymToken]) -> RelationInstance {
        let lhs = [u, v, &inv_all(u), &inv_all(v)].concat();
        RelationInstance::new(family, params, alphabet, lhs, Vec::new())
    }

    /// lhs·rhs⁻¹ as an unreduced token sequence.
    pub fn relator_tokens(&self) -> Vec<SymToken> {
        [self.lhs.clone(), inv_all(&self.rhs)].concat()
    }

    /// lhs·rhs⁻¹, freely reduced.
    pub fn relator(&self) -> SymWord {
        SymWord::new(self.alphabet, self.relator_tokens()).expect("catalog tokens lie in their alphabet")
    }
}

fn join(w: &[SymToken]) -> String {
    if w.is_empty() {
        return "empty".into();
    }
    w.iter().map(SymToken::to_string).collect::<Vec<_>>().join("*")
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {} = {}", self.family, self.params, join(&self.lhs), join(&self.rhs))
    }
}

/// Parameters for the seed relations R1–R10; each row reads only the fields it uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KParams {
    pub a: u16,
    pub b: u16,
    pub c: u16,
    pub d: u16,
    pub al: i8,
    pub be: i8,
    pub ga: i8,
    pub de: i8,
    pub ep: i8,
}

impl Default for KParams {
    fn default() -> KParams {
        KParams { a: 1, b: 2, c: 3, d: 4, al: 1, be: 1, ga: 1, de: 1, ep: 1 }
    }
}

fn distinct(v: &[u16]) -> bool {
    v.iter().enumerate().all(|(i, a)| *a > 0 && !v[..i].contains(a))
}

/// The seed relation R`index`, or `None` when the parameters violate its side conditions.
pub fn krel(index: u8, p: KParams) -> Option<RelationInstance> {
    let KParams { a, b, c, d, al, be, ga, de, ep } = p;
    let (xa, xb, xc) = (x(a, al), x(b, be), x(c, ga));
    let e = yl(ep);
    let k = Alphabet::K;
    let name = ["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R10"];
    let family = *name.get(index.checked_sub(1)? as usize)?;
    let inst = |params: String, lhs: Vec<SymToken>, rhs: Vec<SymToken>| Some(RelationInstance::new(family, params, k, lhs, rhs));
    let two = || format!("a={a} b={b} al={al} be={be} ep={ep}");
    let three = || format!("a={a} b={b} c={c} al={al} be={be} ga={ga} ep={ep}");
    match index {
        1 => distinct(&[a, b]).then(|| RelationInstance::commutator(family, format!("a={a} b={b}"), k, &[cx(a, 1)], &[cx(b, 1)])),
        2 => {
            let ok = a > 0 && b > 0 && c > 0 && d > 0 && a != c && b != d && !(a == b && al == be) && a != d && b != c;
            ok.then(|| {
                RelationInstance::commutator(
                    family,
                    format!("a={a} b={b} c={c} d={d} al={al} be={be} ga={ga} de={de} ep={ep}"),
                    k,
                    &[mc(xa, e, xc)],
                    &[mc(xb, yl(1), x(d, de))],
                )
            })
        }
        3 => distinct(&[a, b, c])
            .then(|| RelationInstance::commutator(family, format!("a={a} b={b} c={c} be={be} ep={ep} ga={ga}"), k, &[cx(a, 1)], &[mc(xb, e, xc)])),
        4 if distinct(&[a, b]) => inst(two(), vec![cy(b, -be), mc(xa, e, xb), cy(b, be)], vec![mc(xa, xb.inv(), e)]),
        5 if distinct(&[a, b]) => inst(two(), vec![cx(b, -ep), mc(xa, e, xb), cx(b, ep)], vec![mc(xa, xb, e.inv())]),
        6 if distinct(&[a, b]) => inst(two(), vec![cx(a, ep), mc(xa, e, xb), cx(a, -ep)], vec![mc(xa, xb, e.inv())]),
        7 if distinct(&[a, b]) => inst(
            two(),
            vec![mc(xa, e, xb), mc(xa.inv(), e, xb)],
            vec![cy(b, be), cx(a, -ep), cy(b, -be), cx(a, ep)],
        ),
        8 if distinct(&[a, b, c]) => inst(
            three(),
            vec![mc(xb, e.inv(), xc), mc(xa, e, xb), mc(xb, xc, e.inv())],
            vec![mc(xa, xc, e.inv()), mc(xa, e, xb), mc(xa, xc, e)],
        ),
        9 if distinct(&[a, b, c]) => inst(
            three(),
            vec![cx(b, -ep), cy(c, ga), mc(xa, e, xb), cy(c, -ga), cx(b, ep)],
            vec![mc(xa, xb, e.inv()), cy(c, ga), mc(xa, e, xb), cy(c, -ga), mc(xa, e, xc), mc(xa, xb, e), mc(xa, xc, e)],
        ),
        10 if distinct(&[a, b, c]) => inst(
            three(),
            vec![cx(c, -ep), cy(c, ga), mc(xa, e, xb), cy(c, -ga), cx(c, ep)],
            vec![
                mc(xa, e.inv(), xb),
                mc(xa, xc, e.inv()),
                cy(c, ga),
                mc(xa, xb, e.inv()),
                cy(c, -ga),
                mc(xa, e, xb),
                mc(xa, e.inv(), xc),
            ],
        ),
        _ => None,
    }
}

/// The families a catalog can enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogKind {
    Nielsen,
    JensenWahl,
    Rk0,
    Zn,
    Table1,
    S1Prime,
}

impl CatalogKind {
    pub const ALL: [CatalogKind; 6] =
        [CatalogKind::Nielsen, CatalogKind::JensenWahl, CatalogKind::Rk0, CatalogKind::Zn, CatalogKind::Table1, CatalogKind::S1Prime];

    pub fn name(&self) -> &'static str {
        match self {
            CatalogKind::Nielsen => "nielsen",
            CatalogKind::JensenWahl => "jensen_wahl",
            CatalogKind::Rk0 => "rk0",
            CatalogKind::Zn => "zn",
            CatalogKind::Table1 => "table1",
            CatalogKind::S1Prime => "s1prime",
        }
    }
}

impl std::str::FromStr for CatalogKind {
    type Err = LpresError;

    fn from_str(s: &str) -> Result<CatalogKind, LpresError> {
        CatalogKind::ALL
            .into_iter()
            .find(|k| k.name() == s || k.name().replace('_', "-") == s)
            .ok_or_else(|| LpresError::Unsupported(format!("unknown catalog kind {s:?}")))
    }
}

const SIGNS: [i8; 2] = [1, -1];

fn ordered_pairs(n: u16) -> impl Iterator<Item = (u16, u16)> {
    (1..=n).flat_map(move |a| (1..=n).filter(move |&b| b != a).map(move |b| (a, b)))
}

fn ordered_triples(n: u16) -> impl Iterator<Item = (u16, u16, u16)> {
    ordered_pairs(n).flat_map(move |(a, b)| (1..=n).filter(move |&c| c != a && c != b).map(move |c| (a, b, c)))
}

fn mxx(a: Letter, b: Letter) -> SymToken {
    SymToken::M { z: a, v: b }
}

fn swap_tok(a: u16, b: u16) -> SymToken {
    SymToken::P(a.min(b), a.max(b))
}

fn nielsen(n: u16, alph: Alphabet, out: &mut Vec<RelationInstance>) {
    let fam = |f, p: String, l: Vec<SymToken>, r: Vec<SymToken>| RelationInstance::new(f, p, alph, l, r);
    // N1
    for a in 1..=n {
        out.push(fam("N1", format!("I a={a}"), vec![SymToken::I(a), SymToken::I(a)], vec![]));
        for b in a + 1..=n {
            out.push(RelationInstance::commutator("N1", format!("II a={a} b={b}"), alph, &[SymToken::I(a)], &[SymToken::I(b)]));
            out.push(fam("N1", format!("P a={a} b={b}"), vec![swap_tok(a, b), swap_tok(a, b)], vec![]));
        }
    }
    for (a, b) in ordered_pairs(n).filter(|(a, b)| a < b) {
        for (c, d) in ordered_pairs(n).filter(|(c, d)| c < d && distinct(&[a, b, *c, *d]) && (a, b) < (*c, *d)) {
            out.push(RelationInstance::commutator("N1", format!("PP a={a} b={b} c={c} d={d}"), alph, &[swap_tok(a, b)], &[swap_tok(c, d)]));
        }
    }
    for (a, b, c) in ordered_triples(n) {
        out.push(fam("N1", format!("PPP a={a} b={b} c={c}"), vec![swap_tok(a, b), swap_tok(b, c), swap_tok(a, b)], vec![swap_tok(a, c)]));
        if a < b {
            out.push(RelationInstance::commutator("N1", format!("PI a={a} b={b} c={c}"), alph, &[swap_tok(a, b)], &[SymToken::I(c)]));
        }
    }
    for (a, b) in ordered_pairs(n) {
        out.push(fam("N1", format!("PIP a={a} b={b}"), vec![swap_tok(a, b), SymToken::I(a), swap_tok(a, b)], vec![SymToken::I(b)]));
    }
    // N2
    let relabel_all = |s: SymToken, t: SymToken| -> SymToken {
        let SymToken::M { z, v } = t else { unreachable!() };
        mxx(relabel(s, z), relabel(s, v))
    };
    for (c, d) in ordered_pairs(n) {
        for ga in SIGNS {
            let t = mxx(x(c, ga), x(d, 1));
            for (a, b) in ordered_pairs(n).filter(|(a, b)| a < b) {
                let s = swap_tok(a, b);
                out.push(fam("N2", format!("P a={a} b={b} c={c} d={d} ga={ga}"), vec![s, t, s], vec![relabel_all(s, t)]));
            }
            for a in 1..=n {
                let s = SymToken::I(a);
                out.push(fam("N2", format!("I a={a} c={c} d={d} ga={ga}"), vec![s, t, s], vec![relabel_all(s, t)]));
            }
        }
    }
    for (a, b) in ordered_pairs(n) {
        for al in SIGNS {
            for be in SIGNS {
                // N3: the right side is I_b·P_ab when α = β and I_a·P_ab when α = −β.
                let lhs = vec![mxx(x(a, -al), x(b, be)), mxx(x(b, be), x(a, al)), mxx(x(a, al), x(b, -be))];
                let i = if al == be { b } else { a };
                out.push(fam("N3", format!("a={a} b={b} al={al} be={be}"), lhs, vec![SymToken::I(i), swap_tok(a, b)]));
            }
        }
    }
    // N4
    for (a, b) in ordered_pairs(n) {
        for (c, d) in ordered_pairs(n) {
            for al in SIGNS {
                for ga in SIGNS {
                    if (a == c && al == ga) || a == d || c == b {
                        continue;
                    }
                    out.push(RelationInstance::commutator(
                        "N4",
                        format!("a={a} b={b} c={c} d={d} al={al} ga={ga}"),
                        alph,
                        &[mxx(x(a, al), x(b, 1))],
                        &[mxx(x(c, ga), x(d, 1))],
                    ));
                }
            }
        }
    }
    for (a, b, c) in ordered_triples(n) {
        for al in SIGNS {
            for be in SIGNS {
                for ga in SIGNS {
                    let u = mxx(x(b, be), x(a, al));
                    let v = mxx(x(c, ga), x(b, be));
                    out.push(fam("N5", format!("a={a} b={b} c={c} al={al} be={be} ga={ga}"), vec![u, v], vec![v, u, mxx(x(c, ga), x(a, al))]));
                }
            }
        }
    }
}

fn jensen_wahl(n: u16, out: &mut Vec<RelationInstance>) {
    let alph = Alphabet::C;
    nielsen(n, alph, out);
    for r in out.iter_mut() {
        r.family = match r.family {
            "N1" => "Q1.N1",
            "N2" => "Q1.N2",
            "N3" => "Q1.N3",
            "N4" => "Q1.N4",
            _ => "Q1.N5",
        };
    }
    let my = |a: u16, al: i8| mxx(x(a, al), yl(1));
    let fam = |f, p: String, l: Vec<SymToken>, r: Vec<SymToken>| RelationInstance::new(f, p, alph, l, r);
    for a in 1..=n {
        for b in 1..=n {
            for al in SIGNS {
                for be in SIGNS {
                    if (a, al) < (b, be) {
                        out.push(RelationInstance::commutator("Q2", format!("MyMy a={a} b={b} al={al} be={be}"), alph, &[my(a, al)], &[my(b, be)]));
                    }
                }
            }
        }
    }
    for (a, b) in ordered_pairs(n) {
        for c in 1..=n {
            for al in SIGNS {
                if c != a {
                    out.push(RelationInstance::commutator("Q2", format!("MxCy a={a} b={b} c={c} al={al}"), alph, &[mxx(x(a, al), x(b, 1))], &[cy(c, 1)]));
                }
                for ga in SIGNS {
                    if c != b && (c, ga) != (a, al) {
                        out.push(RelationInstance::commutator(
                            "Q2",
                            format!("MxMy a={a} b={b} c={c} al={al} ga={ga}"),
                            alph,
                            &[mxx(x(a, al), x(b, 1))],
                            &[my(c, ga)],
                        ));
                    }
                }
            }
        }
    }
    // Q3
    let mut relabelers: Vec<SymToken> = ordered_pairs(n).filter(|(a, b)| a < b).map(|(a, b)| swap_tok(a, b)).collect();
    relabelers.extend((1..=n).map(SymToken::I));
    for s in relabelers {
        for c in 1..=n {
            let t = cy(c, 1);
            let img = SymToken::C { u: Y, w: relabel(s, x(c, 1)) };
            out.push(fam("Q3", format!("{s} C c={c}"), vec![s, t, s], vec![img]));
            for ga in SIGNS {
                let t = my(c, ga);
                out.push(fam("Q3", format!("{s} M c={c} ga={ga}"), vec![s, t, s], vec![mxx(relabel(s, x(c, ga)), yl(1))]));
            }
        }
    }
    for (a, b) in ordered_pairs(n) {
        for al in SIGNS {
            for be in SIGNS {
                let m = mxx(x(a, al), x(b, be));
                out.push(fam("Q4", format!("a={a} b={b} al={al} be={be}"), vec![m.inverse(), my(b, be), m], vec![my(a, al), my(b, be)]));
            }
        }
    }
    for a in 1..=n {
        for al in SIGNS {
            out.push(fam("Q5", format!("a={a} al={al}"), vec![cy(a, -al), my(a, -al), cy(a, al)], vec![my(a, al).inverse()]));
        }
    }
}

fn rk0(n: u16, out: &mut Vec<RelationInstance>) {
    let idx = 1..=n;
    for (a, b) in ordered_pairs(n) {
        out.extend(krel(1, KParams { a, b, ..Default::default() }));
    }
    for a in idx.clone() {
        for b in idx.clone() {
            for c in idx.clone() {
                for d in idx.clone() {
                    for s in 0..32u8 {
                        let sg = |i: u8| if s >> i & 1 == 0 { 1 } else { -1 };
                        out.extend(krel(2, KParams { a, b, c, d, al: sg(0), be: sg(1), ga: sg(2), de: sg(3), ep: sg(4) }));
                    }
                }
            }
        }
    }
    for (a, b, c) in ordered_triples(n) {
        for s in 0..8u8 {
            let sg = |i: u8| if s >> i & 1 == 0 { 1 } else { -1 };
            out.extend(krel(3, KParams { a, b, c, be: sg(0), ep: sg(1), ga: sg(2), ..Default::default() }));
        }
    }
    for index in 4..=7 {
        for (a, b) in ordered_pairs(n) {
            for s in 0..8u8 {
                let sg = |i: u8| if s >> i & 1 == 0 { 1 } else { -1 };
                out.extend(krel(index, KParams { a, b, al: sg(0), be: sg(1), ep: sg(2), ..Default::default() }));
            }
        }
    }
    for index in 8..=10 {
        for (a, b, c) in ordered_triples(n) {
            for s in 0..16u8 {
                let sg = |i: u8| if s >> i & 1 == 0 { 1 } else { -1 };
                out.extend(krel(index, KParams { a, b, c, al: sg(0), be: sg(1), ga: sg(2), ep: sg(3), ..Default::default() }));
            }
        }
    }
}

fn zn(n: u16, out: &mut Vec<RelationInstance>) {
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(RelationInstance::commutator(
                "Z",
                format!("i={i} j={j}"),
                Alphabet::Z,
                &[mxx(x(i, 1), yl(1))],
                &[mxx(x(j, 1), yl(1))],
            ));
        }
    }
}

/// The row id, conjugate s·t·s⁻¹ and inverse conjugate s⁻¹·t·s of one normality identity.
struct T1Row {
    t: SymToken,
    conj: Vec<SymToken>,
    inv_conj: Vec<SymToken>,
}

fn t1_rows(a: u16, b: u16, d: u16, e: u16, f: Option<u16>) -> Vec<(u8, T1Row)> {
    let (xa, xb) = (x(a, 1), x(b, 1));
    let (yd, ye) = (Gen::Y(d).pos(), Gen::Y(e).pos());
    let c = |u: Letter, w: Letter| SymToken::C { u: u.gen, w };
    let cad = c(xa, yd);
    let cadi = cad.inverse();
    let conj = |t: SymToken| T1Row { t, conj: vec![cad, t, cadi], inv_conj: vec![cadi, t, cad] };
    let mut rows = vec![
        (1, conj(mc(xa, yd, xb))),
        (2, conj(mc(xb, yd, xa))),
        (3, conj(mc(xa, ye, xb))),
        (4, {
            let t = mc(xb, ye, xa);
            let cbd = c(xb, yd);
            T1Row { t, conj: vec![cbd.inverse(), t, cbd, mc(xb, ye, yd)], inv_conj: vec![cbd, t, mc(xb, yd, ye), cbd.inverse()] }
        }),
        (5, conj(mc(xa, yd, ye))),
        (7, {
            let t = c(yd, ye);
            T1Row { t, conj: vec![cad, mc(xa, yd, ye), cadi, t], inv_conj: vec![mc(xa, ye, yd), t] }
        }),
        (8, {
            let t = c(yd, xa);
            T1Row { t, conj: vec![cad, t], inv_conj: vec![cadi, t] }
        }),
        (9, {
            // Both sides differ from the printed table; these are the forms that hold.
            let t = c(yd, xb);
            let m = mc(xa, yd, xb);
            T1Row { t, conj: vec![t, cad, t.inverse(), m, t, cadi], inv_conj: vec![m.inverse(), t] }
        }),
        (10, {
            let t = c(ye, xa);
            let ced = c(ye, yd);
            T1Row { t, conj: vec![t, ced], inv_conj: vec![t, ced.inverse()] }
        }),
        (11, {
            let t = c(xa, ye);
            T1Row { t, conj: vec![t, cad, mc(xa, ye, yd), cadi], inv_conj: vec![t, mc(xa, yd, ye)] }
        }),
    ];
    if let Some(f) = f {
        rows.push((6, conj(mc(xa, ye, Gen::Y(f).pos()))));
    }
    rows.sort_by_key(|(i, _)| *i);
    rows
}

/// The row-9 entries as printed, which do not hold.
pub fn table1_misprints(a: u16, b: u16, d: u16) -> Vec<RelationInstance> {
    let (xa, xb, yd) = (x(a, 1), x(b, 1), Gen::Y(d).pos());
    let s = mxx(xa, yd);
    let t = SymToken::C { u: yd.gen, w: xb };
    let cad = SymToken::C { u: xa.gen, w: yd };
    let m = mc(xa, yd, xb);
    let params = format!("a={a} b={b} d={d}");
    vec![
        RelationInstance::new("T1.9.conj.printed", params.clone(), Alphabet::Any, vec![s, t, s.inverse()], vec![t, cad, t.inverse(), m, t, cad]),
        RelationInstance::new("T1.9.invconj.printed", params, Alphabet::Any, vec![s.inverse(), t, s], vec![cad, t.inverse(), m.inverse(), t]),
    ]
}

const T1_NAMES: [(&str, &str); 11] = [
    ("T1.1.conj", "T1.1.invconj"),
    ("T1.2.conj", "T1.2.invconj"),
    ("T1.3.conj", "T1.3.invconj"),
    ("T1.4.conj", "T1.4.invconj"),
    ("T1.5.conj", "T1.5.invconj"),
    ("T1.6.conj", "T1.6.invconj"),
    ("T1.7.conj", "T1.7.invconj"),
    ("T1.8.conj", "T1.8.invconj"),
    ("T1.9.conj", "T1.9.invconj"),
    ("T1.10.conj", "T1.10.invconj"),
    ("T1.11.conj", "T1.11.invconj"),
];

/// The generating set T of the kernel at (n, k), as tokens.
pub fn torelli_tokens(n: u16, k: u16) -> Vec<SymToken> {
    let xs: Vec<Gen> = (1..=n).map(Gen::X).collect();
    let ys: Vec<Gen> = (1..=k).map(Gen::Y).collect();
    let all: Vec<Gen> = xs.iter().chain(&ys).copied().collect();
    let mut out = Vec::new();
    for &xg in &xs {
        for &yg in &ys {
            for &z in all.iter().filter(|&&z| z != xg && z != yg) {
                out.push(mc(xg.pos(), yg.pos(), z.pos()));
            }
        }
    }
    for &yg in &ys {
        for &z in all.iter().filter(|&&z| z != yg) {
            out.push(SymToken::C { u: yg, w: z.pos() });
            out.push(SymToken::C { u: z, w: yg.pos() });
        }
    }
    out
}

fn table1(n: u16, k: u16, out: &mut Vec<RelationInstance>) {
    for (a, b) in ordered_pairs(n) {
        for (d, e) in ordered_pairs(k) {
            let fs: Vec<Option<u16>> = {
                let v: Vec<Option<u16>> = (1..=k).filter(|&f| f != d && f != e).map(Some).collect();
                if v.is_empty() {
                    vec![None]
                } else {
                    v
                }
            };
            for f in fs {
                let s = mxx(x(a, 1), Gen::Y(d).pos());
                for (i, row) in t1_rows(a, b, d, e, f) {
                    // Rows other than 6 do not use f; emit them once per (a, b, d, e).
                    if i != 6 && f.is_some() && f != (1..=k).find(|&g| g != d && g != e) {
                        continue;
                    }
                    let used_b = matches!(i, 1..=4 | 9);
                    if !used_b && b != (1..=n).find(|&g| g != a).unwrap() {
                        continue;
                    }
                    let used_e = matches!(i, 3..=7 | 10 | 11);
                    if !used_e && e != (1..=k).find(|&g| g != d).unwrap() {
                        continue;
                    }
                    let mut params = format!("a={a} d={d}");
                    if used_b {
                        params.push_str(&format!(" b={b}"));
                    }
                    if used_e {
                        params.push_str(&format!(" e={e}"));
                    }
                    if i == 6 {
                        params.push_str(&format!(" f={}", f.unwrap()));
                    }
                    let (nc, ni) = T1_NAMES[i as usize - 1];
                    out.push(RelationInstance::new(nc, params.clone(), Alphabet::Any, vec![s, row.t, s.inverse()], row.conj));
                    out.push(RelationInstance::new(ni, params, Alphabet::Any, vec![s.inverse(), row.t, s], row.inv_conj));
                }
            }
        }
    }
    // Elements of T not covered by a row (or the inverse of a row) are fixed by s.
    for a in 1..=n {
        for d in 1..=k {
            let s = mxx(x(a, 1), Gen::Y(d).pos());
            let mut listed = Vec::new();
            for (b, e) in ordered_pairs(n).filter(|(a2, _)| *a2 == a).flat_map(|(_, b)| ordered_pairs(k).filter(move |(d2, _)| *d2 == d).map(move |(_, e)| (b, e))) {
                let fs: Vec<Option<u16>> = std::iter::once(None).chain((1..=k).filter(|&f| f != d && f != e).map(Some)).collect();
                for f in fs {
                    listed.extend(t1_rows(a, b, d, e, f).into_iter().map(|(_, r)| r.t));
                }
            }
            for t in torelli_tokens(n, k) {
                if listed.contains(&t) || listed.contains(&t.inverse()) {
                    continue;
                }
                let params = format!("a={a} d={d} t={t}");
                out.push(RelationInstance::new("T1.fixed.conj", params.clone(), Alphabet::Any, vec![s, t, s.inverse()], vec![t]));
                out.push(RelationInstance::new("T1.fixed.invconj", params, Alphabet::Any, vec![s.inverse(), t, s], vec![t]));
            }
        }
    }
}

fn s1prime(n: u16, k: u16, out: &mut Vec<RelationInstance>) {
    let m = |a: u16, d: u16| mxx(x(a, 1), Gen::Y(d).pos());
    for a in 1..=n {
        for (d, e) in ordered_pairs(k) {
            let lhs = [m(a, d), m(a, e), m(a, d).inverse(), m(a, e).inverse()].to_vec();
            let rhs = vec![mc(x(a, 1), Gen::Y(e).neg(), Gen::Y(d).neg())];
            out.push(RelationInstance::new("S1'.same", format!("x={a} y={d} y'={e}"), Alphabet::Any, lhs, rhs));
        }
    }
    for (a, b) in ordered_pairs(n).filter(|(a, b)| a < b) {
        for d in 1..=k {
            for e in 1..=k {
                out.push(RelationInstance::commutator("S1'.distinct", format!("x={a} x'={b} y={d} y'={e}"), Alphabet::Any, &[m(a, d)], &[m(b, e)]));
            }
        }
    }
}

/// Enumerate every instance of a relation family.
pub fn relation_catalog(kind: CatalogKind, n: usize, k: usize) -> Result<Vec<RelationInstance>, LpresError> {
    if n < 2 || n > u16::MAX as usize || k > u16::MAX as usize {
        return Err(LpresError::Unsupported(format!("{} needs n ≥ 2 (got n={n})", kind.name())));
    }
    let needs_k1 = matches!(kind, CatalogKind::JensenWahl | CatalogKind::Rk0 | CatalogKind::Zn);
    if needs_k1 && k != 1 {
        return Err(LpresError::Unsupported(format!("{} is defined for k = 1 only (got k={k})", kind.name())));
    }
    if kind == CatalogKind::Table1 && k < 2 {
        return Err(LpresError::Unsupported(format!("table1 needs k ≥ 2 (got k={k})")));
    }
    if kind == CatalogKind::S1Prime && k < 1 {
        return Err(LpresError::Unsupported("s1prime needs k ≥ 1".into()));
    }
    let (n, k) = (n as u16, k as u16);
    let mut out = Vec::new();
    match kind {
        CatalogKind::Nielsen => nielsen(n, Alphabet::A, &mut out),
        CatalogKind::JensenWahl => jensen_wahl(n, &mut out),
        CatalogKind::Rk0 => rk0(n, &mut out),
        CatalogKind::Zn => zn(n, &mut out),
        CatalogKind::Table1 => table1(n, k, &mut out),
        CatalogKind::S1Prime => s1prime(n, k, &mut out),
    }
    Ok(out)
}

/// Inverse pairs f·f⁻¹ for f in an alphabet, as unreduced relators.
pub fn inverse_pairs(kind: Alphabet, n: usize) -> Result<Vec<RelationInstance>, LpresError> {
    Ok(alphabet_pm(kind, n)?
        .into_iter()
        .map(|f| RelationInstance::new("inverse-pair", f.to_string(), kind, vec![f, f.inverse()], vec![]))
        .collect())
}

/// Rewrite a kernel token Mc[x_a^α, y^ε, x_b^β] (or its inverse) as a word in the
/// C tokens and the allowed Mc representative of its x-pair, using R4, R5 and R7.
pub fn genset_reduce(t: SymToken, allowed: &[SymToken]) -> Result<SymWord, LpresError> {
    let (g, sign) = kernel_generator(t)?;
    let SymToken::Mc { z, q, .. } = g else {
        return Ok(SymWord::new(Alphabet::K, [t])?);
    };
    let (a, b) = (idx(z), idx(q));
    let rep = allowed
        .iter()
        .copied()
        .filter_map(|r| kernel_generator(r).ok())
        .map(|(r, _)| r)
        .find(|r| matches!(r, SymToken::Mc { z, q, .. } if idx(*z) == a && idx(*q) == b))
        .ok_or(LpresError::Unsupported(format!("no allowed representative for the pair ({a}, {b})")))?;
    let key = |m: SymToken| match m {
        SymToken::Mc { z, p, q } => (z.exp(), p.exp(), q.exp()),
        _ => unreachable!(),
    };
    let token = |(al, ep, be): (i8, i8, i8)| mc(x(a, al), yl(ep), x(b, be));
    let mut known: HashMap<(i8, i8, i8), Vec<SymToken>> = HashMap::new();
    known.insert(key(rep), vec![rep]);
    let mut queue = VecDeque::from([key(rep)]);
    while let Some(st @ (al, ep, be)) = queue.pop_front() {
        let e = known[&st].clone();
        let ei = inv_all(&e);
        let next = [
            // R4: Mc(α,ε,−β) = C[y,x_b]^-β · Mc(α,ε,β)⁻¹ · C[y,x_b]^β
            ((al, ep, -be), [vec![cy(b, -be)], ei.clone(), vec![cy(b, be)]].concat()),
            // R5: Mc(α,−ε,β) = C[x_b,y]^-ε · Mc(α,ε,β)⁻¹ · C[x_b,y]^ε
            ((al, -ep, be), [vec![cx(b, -ep)], ei.clone(), vec![cx(b, ep)]].concat()),
            // R7: Mc(−α,ε,β) = Mc(α,ε,β)⁻¹ · C[y,x_b]^β C[x_a,y]^-ε C[y,x_b]^-β C[x_a,y]^ε
            ((-al, ep, be), [ei, vec![cy(b, be), cx(a, -ep), cy(b, -be), cx(a, ep)]].concat()),
        ];
        for (k, w) in next {
            if let std::collections::hash_map::Entry::Vacant(v) = known.entry(k) {
                v.insert(w);
                queue.push_back(k);
            }
        }
    }
    let w = SymWord::new(Alphabet::K, known[&key(g)].clone())?;
    debug_assert_eq!(token(key(g)), g);
    Ok(w.pow(sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgword::Basis;
    use crate::symgen::interpret;

    fn t(s: &str) -> SymToken {
        s.parse().unwrap()
    }

    fn w(s: &str) -> SymWord {
        SymWord::parse(Alphabet::K, s).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_gen(t("P[1,2]"), t("C[x1,y]")).unwrap().0, w("C[x2,y]"));
        assert_eq!(phi_gen(t("M[x1,y]"), t("C[y,x2]")).unwrap().0, w("C[y,x2]*Mc[x1,y^-1,x2^-1]"));
        assert_eq!(phi_gen(t("M[x1,y^-1]"), t("C[y,x2]")).unwrap().0, w("C[y,x2]*Mc[x1,y,x2^-1]"));
        assert_eq!(phi_gen(t("M[x1,y]"), t("C[x2,y]")).unwrap(), (w("C[x2,y]"), "fix:M[x_a,y]:C[x_b,y]"));
        assert_eq!(phi_gen(t("I[1]"), t("C[y,x1]")).unwrap().0, w("C[y,x1^-1]"));
        assert_eq!(phi_gen(t("I[1]"), t("C[x1,y]")).unwrap().0, w("C[x1,y]"));
        assert!(matches!(phi_gen(t("C[x1,y]"), t("C[x1,y]")), Err(LpresError::NotSubstitution(_))));
        assert!(matches!(phi_gen(t("M[x1^-1,y]"), t("C[x1,y]")), Err(LpresError::NotSubstitution(_))));
    }

    #[test]
    fn phi_is_semantic_conjugation_n3() {
        let b = Basis::new(3, 1).unwrap();
        for s in alphabet_pm(Alphabet::Q, 3).unwrap() {
            let se = s.to_endo(b).unwrap();
            for tk in alphabet_pm(Alphabet::K, 3).unwrap() {
                let (img, id) = phi_gen(s, tk).unwrap();
                let lhs = interpret(&img, b).unwrap();
                let rhs = se.conjugate(&tk.to_endo(b).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "φ({s})({tk}) via {id}");
            }
        }
    }

    #[test]
    fn alpha_general_fixed_cases_commute() {
        let b = Basis::new(4, 1).unwrap();
        let mut checked = 0;
        for a in 1..=4u16 {
            for al in SIGNS {
                for eps in SIGNS {
                    let s = mxx(x(a, al), yl(eps));
                    let se = s.to_endo(b).unwrap();
                    for tk in alphabet(Alphabet::K, 4).unwrap() {
                        if is_fixed_case_general(s, tk) {
                            let te = tk.to_endo(b).unwrap();
                            assert_eq!(se.conjugate(&te).unwrap(), te, "{s} {tk}");
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn krel_examples() {
        let r1 = krel(1, KParams { a: 1, b: 2, ..Default::default() }).unwrap();
        assert_eq!(r1.relator(), w("C[x1,y]*C[x2,y]*C[x1,y^-1]*C[x2,y^-1]"));
        let r4 = krel(4, KParams { a: 1, b: 2, ..Default::default() }).unwrap();
        assert_eq!(r4.lhs, w("C[y,x2^-1]*Mc[x1,y,x2]*C[y,x2]").tokens());
        assert_eq!(r4.rhs, w("Mc[x1,x2^-1,y]").tokens());
        let bad = KParams { a: 1, b: 1, c: 2, d: 3, ..Default::default() };
        assert!(krel(2, bad).is_none());
        assert!(krel(2, KParams { al: -1, ..bad }).is_some());
        assert!(krel(0, KParams::default()).is_none());
        assert!(krel(11, KParams::default()).is_none());
        assert!(krel(8, KParams { c: 1, ..Default::default() }).is_none());
    }

    #[test]
    fn rk0_counts_match_brute_force() {
        // Independent count over the side conditions of each row.
        let n = 2u16;
        let cat = relation_catalog(CatalogKind::Rk0, 2, 1).unwrap();
        let mut brute = 0;
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    for d in 1..=n {
                        for bits in 0..32 {
                            let al = bits & 1;
                            let be = bits >> 1 & 1;
                            if a != c && b != d && a != d && b != c && !(a == b && al == be) {
                                brute += 1;
                            }
                        }
                    }
                }
            }
        }
        brute += 2 + 4 * 2 * 8; // R1 over ordered pairs, R4–R7; no triples at n = 2
        assert_eq!(cat.len(), brute);
    }

    #[test]
    fn catalog_shapes() {
        let nielsen = relation_catalog(CatalogKind::Nielsen, 2, 1).unwrap();
        let n3 = nielsen.iter().find(|r| r.family == "N3" && r.params == "a=1 b=2 al=1 be=1").unwrap();
        assert_eq!(n3.rhs, vec![SymToken::I(2), SymToken::P(1, 2)]);
        let t1 = relation_catalog(CatalogKind::Table1, 3, 3).unwrap();
        assert!(t1.iter().any(|r| r.family == "T1.7.conj"));
        assert!(relation_catalog(CatalogKind::Rk0, 4, 2).is_err());
        assert!(relation_catalog(CatalogKind::Table1, 3, 1).is_err());
        assert!(relation_catalog(CatalogKind::Nielsen, 1, 0).is_err());
        assert_eq!(relation_catalog(CatalogKind::Zn, 4, 1).unwrap().len(), 6);
        for k in CatalogKind::ALL {
            assert_eq!(k.name().parse::<CatalogKind>().unwrap(), k);
        }
    }

    #[test]
    fn table1_printed_row9_fails() {
        let b = Basis::new(3, 3).unwrap();
        for r in table1_misprints(1, 2, 1) {
            assert!(!interpret(&r.relator(), b).unwrap().is_identity(), "{r}");
        }
    }

    #[test]
    fn genset_reduce_examples() {
        let b = Basis::new(2, 1).unwrap();
        let allowed = [t("Mc[x1,y,x2]")];
        assert_eq!(genset_reduce(t("Mc[x1,y,x2]"), &allowed).unwrap(), w("Mc[x1,y,x2]"));
        assert_eq!(genset_reduce(t("C[y,x1]"), &allowed).unwrap(), w("C[y,x1]"));
        for target in ["Mc[x1,y^-1,x2]", "Mc[x1^-1,y,x2]", "Mc[x1^-1,y^-1,x2^-1]", "Mc[x1,x2,y]"] {
            let r = genset_reduce(t(target), &allowed).unwrap();
            assert!(r.tokens().iter().all(|k| matches!(k, SymToken::C { .. }) || kernel_generator(*k).unwrap().0 == allowed[0]));
            assert_eq!(interpret(&r, b).unwrap(), t(target).to_endo(b).unwrap(), "{target}");
        }
        assert!(genset_reduce(t("Mc[x2,y,x1]"), &allowed).is_err());
    }
}
