//! Group extensions built from twisted bilinear data: the concrete model Δ′_n with
//! kernel inside KIA, the inverse of the comparison map on Jensen–Wahl generators,
//! and the abelian triple-product splice.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::fgmap::{Endo, MapError};
use crate::fgword::{Basis, Gen};
use crate::glsemi::{iota1, iota2, semi_inv, semi_mul, MatrixError, QElement};
use crate::symgen::{Alphabet, SymError, SymToken};
use crate::twisted::{lambda_bar_vec, AbelianBilinear, TwistedBilinearData};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("elements belong to different groups: {0}")]
    Mismatch(String),
    #[error("{0} is not a Jensen–Wahl generator")]
    UnknownToken(SymToken),
    #[error("{0}")]
    Twisted(String),
}

/// Minimal group interface used by the samplers.
pub trait GroupOps {
    type Elem: Clone + fmt::Debug;
    type Error: fmt::Display;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    fn inv(&self, x: &Self::Elem) -> Result<Self::Elem, Self::Error>;
    fn eq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
}

/// A pair (k, q) with k in the kernel and q = (z, a) in Z^n ⋊ Aut(F_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    pub k: Endo,
    pub q: QElement,
}

impl ExtElement {
    pub fn new(k: Endo, q: QElement) -> Result<ExtElement, ExtendError> {
        if k.basis() != (Basis { n: q.n(), k: 1 }) {
            return Err(ExtendError::Mismatch(format!("kernel basis {:?} vs quotient rank {}", k.basis(), q.n())));
        }
        Ok(ExtElement { k, q })
    }

    pub fn is_identity(&self) -> bool {
        self.k.is_identity() && self.q.is_identity()
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.q)
    }
}

/// The extension of Z^n ⋊ Aut(F_n) by KIA ⊂ Aut(F_{n,1}) defined by λ̄ and the
/// conjugation actions.
#[derive(Debug, Clone)]
pub struct ExtGroup {
    n: usize,
    gamma_mutation: Option<(QElement, QElement, Endo)>,
}

impl ExtGroup {
    pub fn new(n: usize) -> ExtGroup {
        ExtGroup { n, gamma_mutation: None }
    }

    /// The same group with γ(q₁, q₂) multiplied on the right by `extra`.
    pub fn with_gamma_mutation(n: usize, q1: QElement, q2: QElement, extra: Endo) -> ExtGroup {
        ExtGroup { n, gamma_mutation: Some((q1, q2, extra)) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        Basis { n: self.n, k: 1 }
    }

    fn check(&self, q: &QElement) -> Result<(), ExtendError> {
        if q.n() != self.n {
            return Err(ExtendError::Mismatch(format!("rank {} in a group of rank {}", q.n(), self.n)));
        }
        Ok(())
    }

    pub fn kernel(&self, k: Endo) -> Result<ExtElement, ExtendError> {
        ExtElement::new(k, QElement::identity(self.n))
    }

    pub fn quotient(&self, q: QElement) -> Result<ExtElement, ExtendError> {
        self.check(&q)?;
        ExtElement::new(Endo::identity(self.basis()), q)
    }

    /// φ(q)(k) = ^{b}(^{a}k) for q = (b, a).
    pub fn phi(&self, q: &QElement, k: &Endo) -> Result<Endo, ExtendError> {
        Ok(iota2(&q.z)?.conjugate(&iota1(&q.a)?.conjugate(k)?)?)
    }

    /// φ(q)⁻¹(k) = ^{a⁻¹}(^{−b}k).
    pub fn phi_inv(&self, q: &QElement, k: &Endo) -> Result<Endo, ExtendError> {
        let minus: Vec<i64> = q.z.iter().map(|v| -v).collect();
        Ok(iota1(&q.a.inverse()?)?.conjugate(&iota2(&minus)?.conjugate(k)?)?)
    }

    /// γ(q₁, q₂) = ^{b₁}λ̄(a₁, b₂).
    pub fn gamma(&self, q1: &QElement, q2: &QElement) -> Result<Endo, ExtendError> {
        let l = lambda_bar_vec(&q1.a, &q2.z).map_err(|e| ExtendError::Twisted(e.to_string()))?;
        let g = iota2(&q1.z)?.conjugate(&l)?;
        match &self.gamma_mutation {
            Some((m1, m2, extra)) if m1 == q1 && m2 == q2 => Ok(g.compose(extra)?),
            _ => Ok(g),
        }
    }

    pub fn ext_mul(&self, g1: &ExtElement, g2: &ExtElement) -> Result<ExtElement, ExtendError> {
        self.check(&g1.q)?;
        self.check(&g2.q)?;
        let k = g1.k.compose(&self.phi(&g1.q, &g2.k)?)?.compose(&self.gamma(&g1.q, &g2.q)?)?;
        ExtElement::new(k, semi_mul(&g1.q, &g2.q)?)
    }

    pub fn ext_inv(&self, g: &ExtElement) -> Result<ExtElement, ExtendError> {
        self.check(&g.q)?;
        let q2 = semi_inv(&g.q)?;
        let rhs = g.k.inverse()?.compose(&self.gamma(&g.q, &q2)?.inverse()?)?;
        ExtElement::new(self.phi_inv(&g.q, &rhs)?, q2)
    }

    /// Φ(k, (z, a)) = k·ι₂(z)·ι₁(a) in Aut(F_{n,1}).
    pub fn forward(&self, g: &ExtElement) -> Result<Endo, ExtendError> {
        Ok(g.k.compose(&iota2(&g.q.z)?)?.compose(&iota1(&g.q.a)?)?)
    }

    /// φ(q₁)(φ(q₂)(k)) = γ(q₁,q₂)·φ(q₁q₂)(k)·γ(q₁,q₂)⁻¹
    pub fn check_action(&self, q1: &QElement, q2: &QElement, k: &Endo) -> Result<bool, ExtendError> {
        let lhs = self.phi(q1, &self.phi(q2, k)?)?;
        let g = self.gamma(q1, q2)?;
        let rhs = g.conjugate(&self.phi(&semi_mul(q1, q2)?, k)?)?;
        Ok(lhs == rhs)
    }

    /// γ(q₁,q₂)·γ(q₁q₂,q₃) = φ(q₁)(γ(q₂,q₃))·γ(q₁,q₂q₃)
    pub fn check_cocycle(&self, q1: &QElement, q2: &QElement, q3: &QElement) -> Result<bool, ExtendError> {
        let lhs = self.gamma(q1, q2)?.compose(&self.gamma(&semi_mul(q1, q2)?, q3)?)?;
        let rhs = self.phi(q1, &self.gamma(q2, q3)?)?.compose(&self.gamma(q1, &semi_mul(q2, q3)?)?)?;
        Ok(lhs == rhs)
    }

    /// The lift of a Jensen–Wahl generator (or its inverse) to Δ′_n.
    pub fn phi_inverse_gen(&self, c: SymToken) -> Result<ExtElement, ExtendError> {
        let n = self.n;
        let basis_n = Basis { n, k: 0 };
        let in_c = crate::symgen::alphabet(Alphabet::C, n)?.contains(&c);
        if !in_c {
            if Alphabet::C.contains(c) && crate::symgen::alphabet(Alphabet::C, n)?.contains(&c.inverse()) {
                return self.ext_inv(&self.phi_inverse_gen(c.inverse())?);
            }
            return Err(ExtendError::UnknownToken(c));
        }
        match c {
            SymToken::M { z, v } if v.gen == Gen::Y(1) => {
                let Gen::X(a) = z.gen else { return Err(ExtendError::UnknownToken(c)) };
                let mut e = vec![0; n];
                e[a as usize - 1] = 1;
                let m = self.quotient(QElement::new(e, Endo::identity(basis_n))?)?;
                if z.exp() == 1 {
                    Ok(m)
                } else {
                    let kc = self.kernel(SymToken::c(Gen::X(a).pos(), Gen::Y(1).pos())?.to_endo(self.basis())?)?;
                    self.ext_mul(&kc, &self.ext_inv(&m)?)
                }
            }
            SymToken::C { .. } => self.kernel(c.to_endo(self.basis())?),
            _ => self.quotient(QElement::new(vec![0; n], c.to_endo(basis_n)?)?),
        }
    }

    /// The product of lifts over a word of Jensen–Wahl tokens.
    pub fn lift_word(&self, w: &[SymToken]) -> Result<ExtElement, ExtendError> {
        let mut acc = self.identity();
        for &t in w {
            acc = self.ext_mul(&acc, &self.phi_inverse_gen(t)?)?;
        }
        Ok(acc)
    }
}

impl GroupOps for ExtGroup {
    type Elem = ExtElement;
    type Error = ExtendError;

    fn identity(&self) -> ExtElement {
        ExtElement { k: Endo::identity(self.basis()), q: QElement::identity(self.n) }
    }
    fn mul(&self, x: &ExtElement, y: &ExtElement) -> Result<ExtElement, ExtendError> {
        self.ext_mul(x, y)
    }
    fn inv(&self, x: &ExtElement) -> Result<ExtElement, ExtendError> {
        self.ext_inv(x)
    }
    fn eq(&self, x: &ExtElement, y: &ExtElement) -> bool {
        x == y
    }
}

/// Which group law failed, with the offending sample index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawFailure {
    pub law: &'static str,
    pub sample: usize,
    pub witness: String,
}

/// Associativity on triples, two-sided inverses and neutrality on singles.
pub fn check_group_laws<G: GroupOps>(g: &G, triples: &[(G::Elem, G::Elem, G::Elem)]) -> Vec<LawFailure> {
    let mut out = Vec::new();
    let mut fail = |law, sample, witness: String| out.push(LawFailure { law, sample, witness });
    for (i, (x, y, z)) in triples.iter().enumerate() {
        let assoc = (|| -> Result<bool, G::Error> {
            let l = g.mul(&g.mul(x, y)?, z)?;
            let r = g.mul(x, &g.mul(y, z)?)?;
            Ok(g.eq(&l, &r))
        })();
        match assoc {
            Ok(true) => {}
            Ok(false) => fail("associativity", i, format!("{x:?} {y:?} {z:?}")),
            Err(e) => fail("associativity", i, format!("{x:?} {y:?} {z:?}: {e}")),
        }
        let inverse = (|| -> Result<bool, G::Error> {
            let xi = g.inv(x)?;
            let e = g.identity();
            Ok(g.eq(&g.mul(x, &xi)?, &e) && g.eq(&g.mul(&xi, x)?, &e) && g.eq(&g.mul(x, &e)?, x) && g.eq(&g.mul(&e, x)?, x))
        })();
        match inverse {
            Ok(true) => {}
            Ok(false) => fail("inverse", i, format!("{x:?}")),
            Err(e) => fail("inverse", i, format!("{x:?}: {e}")),
        }
    }
    out
}

type SpliceMap = Arc<dyn Fn(&[i64], &[i64]) -> Vec<i64> + Send + Sync>;

/// Triples (k, b, a) ∈ Z^r × Z^q × Z^p with (k,b,a)(k′,b′,a′) = (k+k′+λ(a,b′), b+b′, a+a′).
#[derive(Clone)]
pub struct SpliceGroup {
    pub dims: (usize, usize, usize),
    lambda: SpliceMap,
}

impl fmt::Debug for SpliceGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpliceGroup").field("dims", &self.dims).finish_non_exhaustive()
    }
}

/// An element (k, b, a) of a [`SpliceGroup`].
pub type Triple = (Vec<i64>, Vec<i64>, Vec<i64>);

fn vadd(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn vneg(x: &[i64]) -> Vec<i64> {
    x.iter().map(|v| -v).collect()
}

/// The splice for a bilinear table, `table[i][j] = λ(e_i, e_j)` ∈ Z^r.
pub fn splice_direct(a_rank: usize, b_rank: usize, k_rank: usize, table: Vec<Vec<Vec<i64>>>) -> SpliceGroup {
    let bil = AbelianBilinear { table, rank_k: k_rank };
    debug_assert_eq!(bil.table.len(), a_rank);
    SpliceGroup {
        dims: (a_rank, b_rank, k_rank),
        lambda: Arc::new(move |a, b| match bil.lambda(&a.to_vec(), &b.to_vec()) {
            Ok(v) => v,
            Err(e) => match e {},
        }),
    }
}

impl SpliceGroup {
    /// The triple construction for an arbitrary map; associativity then fails
    /// exactly when the map is not bilinear.
    pub fn with_map(a_rank: usize, b_rank: usize, k_rank: usize, map: impl Fn(&[i64], &[i64]) -> Vec<i64> + Send + Sync + 'static) -> SpliceGroup {
        SpliceGroup { dims: (a_rank, b_rank, k_rank), lambda: Arc::new(map) }
    }

    pub fn lambda(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        (self.lambda)(a, b)
    }

    pub fn iota1(&self, a: &[i64]) -> Triple {
        (vec![0; self.dims.2], vec![0; self.dims.1], a.to_vec())
    }

    pub fn iota2(&self, b: &[i64]) -> Triple {
        (vec![0; self.dims.2], b.to_vec(), vec![0; self.dims.0])
    }

    pub fn commutator(&self, x: &Triple, y: &Triple) -> Triple {
        let xy = self.mul(x, y).unwrap_or_else(|e| match e {});
        let xyx = self.mul(&xy, &self.inv(x).unwrap_or_else(|e| match e {})).unwrap_or_else(|e| match e {});
        self.mul(&xyx, &self.inv(y).unwrap_or_else(|e| match e {})).unwrap_or_else(|e| match e {})
    }
}

impl GroupOps for SpliceGroup {
    type Elem = Triple;
    type Error = std::convert::Infallible;

    fn identity(&self) -> Triple {
        (vec![0; self.dims.2], vec![0; self.dims.1], vec![0; self.dims.0])
    }
    fn mul(&self, x: &Triple, y: &Triple) -> Result<Triple, Self::Error> {
        let k = vadd(&vadd(&x.0, &y.0), &self.lambda(&x.2, &y.1));
        Ok((k, vadd(&x.1, &y.1), vadd(&x.2, &y.2)))
    }
    fn inv(&self, x: &Triple) -> Result<Triple, Self::Error> {
        // x·x′ = 1 forces a′ = −a, b′ = −b and k′ = −k + λ(a, b).
        let k = vadd(&vneg(&x.0), &self.lambda(&x.2, &x.1));
        Ok((k, vneg(&x.1), vneg(&x.2)))
    }
    fn eq(&self, x: &Triple, y: &Triple) -> bool {
        x == y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SymToken {
        s.parse().unwrap()
    }

    #[test]
    fn identity_and_kernel_embedding() {
        let g = ExtGroup::new(2);
        let e = g.identity();
        let k1 = g.kernel(t("C[x1,y]").to_endo(g.basis()).unwrap()).unwrap();
        let k2 = g.kernel(t("C[y,x2]").to_endo(g.basis()).unwrap()).unwrap();
        assert_eq!(g.ext_mul(&e, &k1).unwrap(), k1);
        assert_eq!(g.ext_mul(&k1, &e).unwrap(), k1);
        let p = g.ext_mul(&k1, &k2).unwrap();
        assert_eq!(p.k, k1.k.compose(&k2.k).unwrap());
        assert!(p.q.is_identity());
        let inv = g.ext_inv(&k1).unwrap();
        assert_eq!(inv.k, k1.k.inverse().unwrap());
        assert!(g.ext_inv(&e).unwrap().is_identity());
    }

    #[test]
    fn generators_lift_and_map_back() {
        let g = ExtGroup::new(2);
        assert_eq!(g.phi_inverse_gen(t("C[y,x1]")).unwrap().k, t("C[y,x1]").to_endo(g.basis()).unwrap());
        let m = g.phi_inverse_gen(t("M[x1,y]")).unwrap();
        assert!(m.k.is_identity());
        assert_eq!(m.q.z, vec![1, 0]);
        for c in crate::symgen::alphabet_pm(Alphabet::C, 2).unwrap() {
            let lifted = g.phi_inverse_gen(c).unwrap();
            assert_eq!(g.forward(&lifted).unwrap(), c.to_endo(g.basis()).unwrap(), "{c}");
        }
        assert!(g.phi_inverse_gen(t("C[x1,y]")).is_err());
    }

    #[test]
    fn heisenberg_splice() {
        let h = splice_direct(1, 1, 1, vec![vec![vec![1]]]);
        let c = h.commutator(&h.iota1(&[1]), &h.iota2(&[1]));
        assert_eq!(c, (vec![1], vec![0], vec![0]));
        for (a, b) in [(2, 3), (-1, 4), (0, 5)] {
            assert_eq!(h.commutator(&h.iota1(&[a]), &h.iota2(&[b])).0, vec![a * b]);
        }
        let zero = splice_direct(1, 1, 1, vec![vec![vec![0]]]);
        assert_eq!(zero.mul(&(vec![1], vec![2], vec![3]), &(vec![4], vec![5], vec![6])).unwrap(), (vec![5], vec![7], vec![9]));
    }

    #[test]
    fn non_bilinear_splice_is_not_associative() {
        let bad = SpliceGroup::with_map(1, 1, 1, |a, b| vec![a[0] * a[0] * b[0]]);
        let x = (vec![0], vec![1], vec![1]);
        let fails = check_group_laws(&bad, &[(x.clone(), x.clone(), x)]);
        assert!(fails.iter().any(|f| f.law == "associativity"));
    }
}
