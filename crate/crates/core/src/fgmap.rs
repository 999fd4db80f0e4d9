//! Endomorphisms of F_{n,k}: named generators, composition, membership predicates
//! and the Johnson homomorphism.

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::fgword::{push_reduced, Basis, Gen, Letter, Word, WordError};
use crate::glsemi::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("transvection of {0} by a word mentioning it")]
    TransvectionOverlap(Gen),
    #[error("conjugation of {0} by itself")]
    SelfConjugation(Gen),
    #[error("swap/inversion index {0} out of range or colliding")]
    BadIndex(u16),
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("no factorization available for inversion")]
    NoFactorization,
    #[error("not in IA: image of {0} times its inverse has nonzero abelianization")]
    NotIa(Gen),
}

/// A named generator of Aut(F_{n,k}).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NamedAut {
    /// M_{z^α,v}: z^α ↦ v·z^α.
    Transvection { target: Letter, by: Word },
    /// C_{z,w}: z ↦ w·z·w⁻¹.
    Conjugation { target: Gen, by: Letter },
    /// P_{a,b}: exchanges x_a and x_b.
    Swap(u16, u16),
    /// I_a: x_a ↦ x_a⁻¹.
    Inversion(u16),
}

impl NamedAut {
    pub fn inverse(&self) -> NamedAut {
        match self {
            NamedAut::Transvection { target, by } => NamedAut::Transvection { target: *target, by: by.inv() },
            NamedAut::Conjugation { target, by } => NamedAut::Conjugation { target: *target, by: by.inv() },
            other => other.clone(),
        }
    }

    /// The generator that this automorphism moves, with its new image.
    fn moved(&self, basis: Basis) -> Vec<(Gen, Word)> {
        match self {
            NamedAut::Transvection { target, by } => {
                let g = target.gen;
                let img = if target.inverse {
                    Word::reduce_trusted(basis, std::iter::once(g.pos()).chain(by.inv().letters().iter().copied()))
                } else {
                    Word::reduce_trusted(basis, by.letters().iter().copied().chain(std::iter::once(g.pos())))
                };
                vec![(g, img)]
            }
            NamedAut::Conjugation { target, by } => {
                vec![(*target, Word::reduce_trusted(basis, [*by, target.pos(), by.inv()]))]
            }
            NamedAut::Swap(a, b) => vec![
                (Gen::X(*a), Word::reduce_trusted(basis, [Gen::X(*b).pos()])),
                (Gen::X(*b), Word::reduce_trusted(basis, [Gen::X(*a).pos()])),
            ],
            NamedAut::Inversion(a) => vec![(Gen::X(*a), Word::reduce_trusted(basis, [Gen::X(*a).neg()]))],
        }
    }

    fn validate(&self, basis: Basis) -> Result<(), MapError> {
        match self {
            NamedAut::Transvection { target, by } => {
                if !basis.contains(target.gen) {
                    return Err(WordError::OutOfRange(target.gen, basis.n, basis.k).into());
                }
                if by.basis() != basis {
                    let b = by.basis();
                    return Err(WordError::BasisMismatch(basis.n, basis.k, b.n, b.k).into());
                }
                if by.mentions(target.gen) {
                    return Err(MapError::TransvectionOverlap(target.gen));
                }
            }
            NamedAut::Conjugation { target, by } => {
                for g in [*target, by.gen] {
                    if !basis.contains(g) {
                        return Err(WordError::OutOfRange(g, basis.n, basis.k).into());
                    }
                }
                if *target == by.gen {
                    return Err(MapError::SelfConjugation(*target));
                }
            }
            NamedAut::Swap(a, b) => {
                for i in [*a, *b] {
                    if i == 0 || i as usize > basis.n {
                        return Err(MapError::BadIndex(i));
                    }
                }
                if a == b {
                    return Err(MapError::BadIndex(*a));
                }
            }
            NamedAut::Inversion(a) => {
                if *a == 0 || *a as usize > basis.n {
                    return Err(MapError::BadIndex(*a));
                }
            }
        }
        Ok(())
    }

    /// Recognize v = p·q·p⁻¹·q⁻¹ for letters p, q.
    fn commutator_letters(by: &Word) -> Option<(Letter, Letter)> {
        let l = by.letters();
        if l.len() == 4 && l[2] == l[0].inv() && l[3] == l[1].inv() && l[0].gen != l[1].gen {
            Some((l[0], l[1]))
        } else {
            None
        }
    }
}

impl fmt::Display for NamedAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedAut::Transvection { target, by } => {
                if by.len() == 1 {
                    write!(f, "M[{target},{}]", by.letters()[0])
                } else if let Some((p, q)) = NamedAut::commutator_letters(by) {
                    write!(f, "Mc[{target},{p},{q}]")
                } else {
                    write!(f, "M[{target},({by})]")
                }
            }
            NamedAut::Conjugation { target, by } => write!(f, "C[{target},{by}]"),
            NamedAut::Swap(a, b) => write!(f, "P[{a},{b}]"),
            NamedAut::Inversion(a) => write!(f, "I[{a}]"),
        }
    }
}

#[derive(Debug)]
enum Factors {
    Leaf(NamedAut),
    Product(Arc<Factors>, Arc<Factors>),
    Inverse(Arc<Factors>),
    /// Placeholder left behind when a node's children are detached on drop.
    Detached,
}

fn detached() -> Arc<Factors> {
    static NODE: OnceLock<Arc<Factors>> = OnceLock::new();
    NODE.get_or_init(|| Arc::new(Factors::Detached)).clone()
}

impl Factors {
    fn flatten(&self, inverted: bool, out: &mut Vec<NamedAut>) {
        // Trees from long products are deep, so walk with an explicit stack.
        let mut stack = vec![(self, inverted)];
        while let Some((node, inv)) = stack.pop() {
            match node {
                Factors::Leaf(a) => out.push(if inv { a.inverse() } else { a.clone() }),
                Factors::Product(l, r) => {
                    if inv {
                        stack.push((l, true));
                        stack.push((r, true));
                    } else {
                        stack.push((r, false));
                        stack.push((l, false));
                    }
                }
                Factors::Inverse(t) => stack.push((t, !inv)),
                Factors::Detached => {}
            }
        }
    }

    fn detach_children(&mut self, out: &mut Vec<Arc<Factors>>) {
        match self {
            Factors::Product(l, r) => {
                out.push(std::mem::replace(l, detached()));
                out.push(std::mem::replace(r, detached()));
            }
            Factors::Inverse(t) => out.push(std::mem::replace(t, detached())),
            Factors::Leaf(_) | Factors::Detached => {}
        }
    }
}

impl Drop for Factors {
    fn drop(&mut self) {
        let mut pending = Vec::new();
        self.detach_children(&mut pending);
        while let Some(node) = pending.pop() {
            if let Ok(mut inner) = Arc::try_unwrap(node) {
                inner.detach_children(&mut pending);
            }
        }
    }
}

/// An endomorphism of F_{n,k}, given by the images of the basis.
#[derive(Debug, Clone)]
pub struct Endo {
    basis: Basis,
    images: Vec<Word>,
    /// `None` inside `Some` marks the empty product (identity).
    factors: Option<Option<Arc<Factors>>>,
}

/// Membership flags for the subgroups of Aut(F_{n,k}) used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Membership {
    pub in_a: bool,
    pub in_ia: bool,
    pub in_bker: bool,
    pub in_kia: bool,
}

impl Endo {
    pub fn identity(basis: Basis) -> Endo {
        Endo {
            basis,
            images: basis.gens().map(|g| Word::reduce_trusted(basis, [g.pos()])).collect(),
            factors: Some(None),
        }
    }

    /// An endomorphism without factorization.
    pub fn from_images(basis: Basis, images: Vec<Word>) -> Result<Endo, MapError> {
        if images.len() != basis.rank() {
            return Err(MapError::ImageCount { expected: basis.rank(), got: images.len() });
        }
        for w in &images {
            if w.basis() != basis {
                let b = w.basis();
                return Err(WordError::BasisMismatch(basis.n, basis.k, b.n, b.k).into());
            }
        }
        Ok(Endo { basis, images, factors: None })
    }

    pub fn named(basis: Basis, a: NamedAut) -> Result<Endo, MapError> {
        a.validate(basis)?;
        let mut e = Endo::identity(basis);
        for (g, img) in a.moved(basis) {
            e.images[basis.index(g)] = img;
        }
        e.factors = Some(Some(Arc::new(Factors::Leaf(a))));
        Ok(e)
    }

    /// M_{z^α,v}.
    pub fn transvection(basis: Basis, z: Gen, alpha: i8, v: Word) -> Result<Endo, MapError> {
        Endo::named(basis, NamedAut::Transvection { target: z.pow(alpha), by: v })
    }

    /// C_{z,w^e}.
    pub fn conjugation(basis: Basis, z: Gen, by: Letter) -> Result<Endo, MapError> {
        Endo::named(basis, NamedAut::Conjugation { target: z, by })
    }

    pub fn swap(basis: Basis, a: u16, b: u16) -> Result<Endo, MapError> {
        Endo::named(basis, NamedAut::Swap(a, b))
    }

    pub fn inversion(basis: Basis, a: u16) -> Result<Endo, MapError> {
        Endo::named(basis, NamedAut::Inversion(a))
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn image(&self, g: Gen) -> &Word {
        &self.images[self.basis.index(g)]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn has_factorization(&self) -> bool {
        self.factors.is_some()
    }

    /// The factorization as a left-to-right product of named generators.
    pub fn factorization(&self) -> Option<Vec<NamedAut>> {
        self.factors.as_ref().map(|f| {
            let mut out = Vec::new();
            if let Some(t) = f {
                t.flatten(false, &mut out);
            }
            out
        })
    }

    /// Apply to letters known to lie in the basis.
    pub(crate) fn apply_letters(&self, letters: &[Letter]) -> Word {
        let mut out = Vec::new();
        for l in letters {
            let img = &self.images[self.basis.index(l.gen)];
            if l.inverse {
                for m in img.letters().iter().rev() {
                    push_reduced(&mut out, m.inv());
                }
            } else {
                for &m in img.letters() {
                    push_reduced(&mut out, m);
                }
            }
        }
        Word::reduce_trusted(self.basis, out)
    }

    pub fn apply(&self, w: &Word) -> Result<Word, MapError> {
        if w.basis() != self.basis {
            let b = w.basis();
            return Err(WordError::BasisMismatch(self.basis.n, self.basis.k, b.n, b.k).into());
        }
        Ok(self.apply_letters(w.letters()))
    }

    /// compose(f, g) = f∘g: g is applied first.
    pub fn compose(&self, g: &Endo) -> Result<Endo, MapError> {
        if g.basis != self.basis {
            return Err(WordError::BasisMismatch(self.basis.n, self.basis.k, g.basis.n, g.basis.k).into());
        }
        let images = g.images.iter().map(|w| self.apply_letters(w.letters())).collect();
        let factors = match (&self.factors, &g.factors) {
            (Some(a), Some(b)) => Some(match (a, b) {
                (None, x) | (x, None) => x.clone(),
                (Some(a), Some(b)) => Some(Arc::new(Factors::Product(a.clone(), b.clone()))),
            }),
            _ => None,
        };
        Ok(Endo { basis: self.basis, images, factors })
    }

    pub fn equals(&self, g: &Endo) -> Result<bool, MapError> {
        if g.basis != self.basis {
            return Err(WordError::BasisMismatch(self.basis.n, self.basis.k, g.basis.n, g.basis.k).into());
        }
        Ok(self.images == g.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, w)| w.len() == 1 && w.letters()[0] == self.basis.gen_at(i).pos())
    }

    /// Inverse by reversing the factorization.
    pub fn inverse(&self) -> Result<Endo, MapError> {
        let tree = self.factors.as_ref().ok_or(MapError::NoFactorization)?;
        let mut flat = Vec::new();
        if let Some(t) = tree {
            t.flatten(true, &mut flat);
        }
        // flat = f_m⁻¹, …, f_1⁻¹ in left-to-right order; build the product right to left.
        let mut images: Vec<Word> = self.basis.gens().map(|g| Word::reduce_trusted(self.basis, [g.pos()])).collect();
        for a in flat.iter().rev() {
            let step = Endo::named(self.basis, a.clone())?;
            for w in images.iter_mut() {
                *w = step.apply_letters(w.letters());
            }
        }
        Ok(Endo {
            basis: self.basis,
            images,
            factors: Some(tree.as_ref().map(|t| Arc::new(Factors::Inverse(t.clone())))),
        })
    }

    /// Group commutator f g f⁻¹ g⁻¹.
    pub fn commutator(&self, g: &Endo) -> Result<Endo, MapError> {
        self.compose(g)?.compose(&self.inverse()?)?.compose(&g.inverse()?)
    }

    /// Conjugate `k` by self: self∘k∘self⁻¹.
    pub fn conjugate(&self, k: &Endo) -> Result<Endo, MapError> {
        self.compose(k)?.compose(&self.inverse()?)
    }

    /// Whether composing the factorization reproduces the images.
    pub fn verify_factorization(&self) -> Option<bool> {
        let fs = self.factorization()?;
        let mut e = Endo::identity(self.basis);
        for a in fs {
            e = e.compose(&Endo::named(self.basis, a).ok()?).ok()?;
        }
        Some(e.images == self.images)
    }

    /// Extend to a larger basis (same n, more y's) by fixing the new generators.
    pub fn extend(&self, basis: Basis) -> Result<Endo, MapError> {
        if basis.n != self.basis.n || basis.k < self.basis.k {
            return Err(WordError::BasisMismatch(self.basis.n, self.basis.k, basis.n, basis.k).into());
        }
        let mut images = Vec::with_capacity(basis.rank());
        for g in basis.gens() {
            if self.basis.contains(g) {
                images.push(self.image(g).rebase(basis)?);
            } else {
                images.push(Word::reduce_trusted(basis, [g.pos()]));
            }
        }
        let factors = match &self.factors {
            None => None,
            Some(None) => Some(None),
            Some(Some(_)) => {
                let fs = self.factorization().unwrap_or_default();
                let mut tree: Option<Arc<Factors>> = None;
                for a in fs {
                    let a = match a {
                        NamedAut::Transvection { target, by } => NamedAut::Transvection { target, by: by.rebase(basis)? },
                        other => other,
                    };
                    let leaf = Arc::new(Factors::Leaf(a));
                    tree = Some(match tree {
                        None => leaf,
                        Some(t) => Arc::new(Factors::Product(t, leaf)),
                    });
                }
                Some(tree)
            }
        };
        Ok(Endo { basis, images, factors })
    }

    /// Column j is the abelianization of the image of the j-th generator.
    pub fn abel_matrix(&self) -> IntMatrix {
        let r = self.basis.rank();
        let mut m = IntMatrix::zeros(r, r);
        for (j, w) in self.images.iter().enumerate() {
            for (i, c) in w.abelianize().into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    pub fn classify(&self) -> Membership {
        let b = self.basis;
        let in_a = (1..=b.k as u16).all(|j| {
            let y = Word::reduce_trusted(b, [Gen::Y(j).pos()]);
            self.image(Gen::Y(j)).is_conjugate(&y)
        });
        let in_ia = self.abel_matrix() == IntMatrix::identity(b.rank());
        let in_bker = in_a
            && (1..=b.n as u16).all(|i| {
                let w = self.image(Gen::X(i)).retain_gens(|g| g.is_x());
                w.len() == 1 && w.letters()[0] == Gen::X(i).pos()
            });
        Membership { in_a, in_ia, in_bker, in_kia: in_bker && in_ia }
    }

    /// τ(f): row per basis generator z, holding the wedge coefficients of f(z)·z⁻¹.
    pub fn johnson(&self) -> Result<JohnsonImage, MapError> {
        let r = self.basis.rank();
        let cols = r * (r - 1) / 2;
        let mut data = Vec::with_capacity(r * cols);
        for (i, img) in self.images.iter().enumerate() {
            let g = self.basis.gen_at(i);
            let mut letters = img.letters().to_vec();
            push_reduced(&mut letters, g.neg());
            let w = Word::reduce_trusted(self.basis, letters);
            let row = w.lambda2_projection().map_err(|_| MapError::NotIa(g))?;
            data.extend(row);
        }
        Ok(JohnsonImage { rows: r, cols, data })
    }
}

impl PartialEq for Endo {
    fn eq(&self, other: &Endo) -> bool {
        self.basis == other.basis && self.images == other.images
    }
}

impl Eq for Endo {}

impl std::ops::Mul for &Endo {
    type Output = Endo;

    /// Panics on basis mismatch; use [`Endo::compose`] for the checked form.
    fn mul(self, rhs: &Endo) -> Endo {
        self.compose(rhs).expect("basis mismatch in composition")
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moved: Vec<String> = self
            .basis
            .gens()
            .zip(&self.images)
            .filter(|(g, w)| !(w.len() == 1 && w.letters()[0] == g.pos()))
            .map(|(g, w)| format!("{g} -> {w}"))
            .collect();
        if moved.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{{{}}}", moved.join(", "))
        }
    }
}

/// τ(f) as an (n+k) × C(n+k,2) integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JohnsonImage {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl JohnsonImage {
    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &JohnsonImage) -> JohnsonImage {
        JohnsonImage {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Integer rank of the stacked, flattened Johnson images.
pub fn johnson_rank(gens: &[Endo]) -> Result<usize, MapError> {
    if gens.is_empty() {
        return Ok(0);
    }
    let images = gens.iter().map(Endo::johnson).collect::<Result<Vec<_>, _>>()?;
    let width = images[0].data.len();
    let mut m = IntMatrix::zeros(images.len(), width);
    for (i, img) in images.iter().enumerate() {
        for (j, &c) in img.data.iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m.rank())
}

fn comm_word(basis: Basis, p: Gen, q: Gen) -> Word {
    Word::reduce_trusted(basis, [p.pos(), q.pos(), p.neg(), q.neg()])
}

/// M_{x,[p,q]}.
pub fn mc(basis: Basis, x: Gen, p: Gen, q: Gen) -> Result<Endo, MapError> {
    Endo::transvection(basis, x, 1, comm_word(basis, p, q))
}

/// The generating set T of the Torelli Birman kernel: all M_{x,[y,z]} and the C_{y,z}, C_{z,y}.
/// With `y_pairs_ordered`, M_{x,[y_a,y_b]} is restricted to a < b.
pub fn torelli_generators(basis: Basis, y_pairs_ordered: bool) -> Vec<Endo> {
    let mut out = Vec::new();
    let xs: Vec<Gen> = (1..=basis.n as u16).map(Gen::X).collect();
    let ys: Vec<Gen> = (1..=basis.k as u16).map(Gen::Y).collect();
    for &x in &xs {
        for &y in &ys {
            for z in basis.gens() {
                if z == x || z == y {
                    continue;
                }
                if y_pairs_ordered && z.is_y() && z < y {
                    continue;
                }
                out.push(mc(basis, x, y, z).expect("valid generator"));
            }
        }
    }
    for &y in &ys {
        for z in basis.gens() {
            if z == y {
                continue;
            }
            out.push(Endo::conjugation(basis, y, z.pos()).expect("valid generator"));
            if z.is_x() {
                out.push(Endo::conjugation(basis, z, y.pos()).expect("valid generator"));
            }
        }
    }
    out
}

/// Expected rank n(n−1)k + n·C(k,2) + 2nk + k(k−1).
pub fn expected_johnson_rank(n: usize, k: usize) -> usize {
    n * (n.saturating_sub(1)) * k + n * (k * k.saturating_sub(1) / 2) + 2 * n * k + k * k.saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgword::wedge_index;

    fn b21() -> Basis {
        Basis::new(2, 1).unwrap()
    }

    fn w(basis: Basis, s: &str) -> Word {
        Word::parse(basis, s).unwrap()
    }

    const X1: Gen = Gen::X(1);
    const X2: Gen = Gen::X(2);
    const Y1: Gen = Gen::Y(1);

    #[test]
    fn transvection_examples() {
        let b = b21();
        let m = Endo::transvection(b, X1, 1, w(b, "y1")).unwrap();
        assert_eq!(m.image(X1), &w(b, "y1 x1"));
        let m = Endo::transvection(b, X1, -1, w(b, "y1")).unwrap();
        assert_eq!(m.image(X1), &w(b, "x1 y1^-1"));
        let c = w(b, "y1").commutator(&w(b, "x2")).unwrap();
        let m = Endo::transvection(b, X1, 1, c).unwrap();
        assert_eq!(m.image(X1), &w(b, "y1 x2 y1^-1 x2^-1 x1"));
        assert_eq!(
            Endo::transvection(b, X1, 1, w(b, "x1 y1")).unwrap_err(),
            MapError::TransvectionOverlap(X1)
        );
    }

    #[test]
    fn conjugation_swap_inversion() {
        let b = b21();
        let c = Endo::conjugation(b, Y1, X1.pos()).unwrap();
        assert_eq!(c.image(Y1), &w(b, "x1 y1 x1^-1"));
        let p = Endo::swap(b, 1, 2).unwrap();
        assert_eq!(p.image(X1), &w(b, "x2"));
        assert!((&p * &p).is_identity());
        let i = Endo::inversion(b, 1).unwrap();
        assert_eq!(i.image(X1), &w(b, "x1^-1"));
        assert!((&i * &i).is_identity());
        assert!(Endo::conjugation(b, Y1, Y1.neg()).is_err());
        assert!(Endo::swap(b, 1, 1).is_err());
        assert!(Endo::swap(b, 1, 3).is_err());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let b = b21();
        let f = Endo::transvection(b, X1, 1, w(b, "x2")).unwrap();
        let g = Endo::swap(b, 1, 2).unwrap();
        let fg = f.compose(&g).unwrap();
        let x = w(b, "x1 y1 x2^-1");
        assert_eq!(fg.apply(&x).unwrap(), f.apply(&g.apply(&x).unwrap()).unwrap());
        assert_eq!(fg.verify_factorization(), Some(true));
    }

    #[test]
    fn remark_identity_holds_in_corrected_form() {
        // M_{x⁻¹,y} = C_{x,y}·M_{x,y}⁻¹; the other order is not equal.
        let b = b21();
        let m = Endo::transvection(b, X1, 1, w(b, "y1")).unwrap();
        let c = Endo::conjugation(b, X1, Y1.pos()).unwrap();
        let target = Endo::transvection(b, X1, -1, w(b, "y1")).unwrap();
        assert_eq!(c.compose(&m.inverse().unwrap()).unwrap(), target);
        assert_ne!(m.compose(&c.inverse().unwrap()).unwrap(), target);
    }

    #[test]
    fn invert_factored_examples() {
        let b = b21();
        let p = Endo::swap(b, 1, 2).unwrap();
        assert_eq!(p.inverse().unwrap(), p);
        let m = Endo::transvection(b, X1, 1, w(b, "y1")).unwrap();
        let mi = m.inverse().unwrap();
        assert_eq!(mi, Endo::transvection(b, X1, 1, w(b, "y1^-1")).unwrap());
        assert_eq!(mi.factorization().unwrap()[0].to_string(), "M[x1,y1^-1]");
        let c = Endo::conjugation(b, Y1, X1.pos()).unwrap();
        assert_eq!(c.inverse().unwrap(), Endo::conjugation(b, Y1, X1.neg()).unwrap());
        let unfactored = Endo::from_images(b, m.images().to_vec()).unwrap();
        assert_eq!(unfactored.inverse().unwrap_err(), MapError::NoFactorization);
        let prod = &(&m * &c) * &p;
        let inv = prod.inverse().unwrap();
        assert!((&prod * &inv).is_identity());
        assert!((&inv * &prod).is_identity());
        assert_eq!(inv.verify_factorization(), Some(true));
    }

    #[test]
    fn abel_matrix_examples() {
        let b = b21();
        assert_eq!(Endo::identity(b).abel_matrix(), IntMatrix::identity(3));
        let m = Endo::transvection(b, X1, 1, w(b, "y1")).unwrap().abel_matrix();
        let mut e = IntMatrix::identity(3);
        e.set(2, 0, 1);
        assert_eq!(m, e);
        let mc = mc(b, X1, Y1, X2).unwrap();
        assert_eq!(mc.abel_matrix(), IntMatrix::identity(3));
    }

    #[test]
    fn classify_examples() {
        let b = b21();
        let all = Membership { in_a: true, in_ia: true, in_bker: true, in_kia: true };
        assert_eq!(Endo::conjugation(b, Y1, X1.pos()).unwrap().classify(), all);
        let m = Endo::transvection(b, X1, 1, w(b, "y1")).unwrap().classify();
        assert_eq!(m, Membership { in_a: true, in_ia: false, in_bker: true, in_kia: false });
        let p = Endo::swap(b, 1, 2).unwrap().classify();
        assert_eq!(p, Membership { in_a: true, in_ia: false, in_bker: false, in_kia: false });
    }

    #[test]
    fn johnson_examples() {
        let b = Basis::new(3, 2).unwrap();
        let r = b.rank();
        let c = Endo::conjugation(b, Gen::Y(1), Gen::X(2).pos()).unwrap().johnson().unwrap();
        for i in 0..r {
            let row = c.row(i);
            if i == b.index(Gen::Y(1)) {
                // y1 ↦ x2 y1 x2⁻¹ gives [x2, y1], hence [x2]∧[y1].
                let mut e = vec![0; c.cols];
                e[wedge_index(r, b.index(Gen::X(2)), b.index(Gen::Y(1)))] = 1;
                assert_eq!(row, &e[..]);
            } else {
                assert!(row.iter().all(|&v| v == 0));
            }
        }
        assert!(Endo::identity(b).johnson().unwrap().is_zero());
        let m = Endo::transvection(b, X1, 1, Word::parse(b, "y1").unwrap()).unwrap();
        assert_eq!(m.johnson().unwrap_err(), MapError::NotIa(X1));
    }

    #[test]
    fn johnson_rank_small_cases() {
        for (n, k) in [(2, 1), (2, 2)] {
            let b = Basis::new(n, k).unwrap();
            let t = torelli_generators(b, true);
            assert_eq!(t.len(), expected_johnson_rank(n, k));
            assert_eq!(johnson_rank(&t).unwrap(), expected_johnson_rank(n, k));
        }
        assert_eq!(expected_johnson_rank(2, 1), 6);
        assert_eq!(expected_johnson_rank(2, 2), 16);
        let b = b21();
        assert_eq!(johnson_rank(&[Endo::conjugation(b, Y1, X1.pos()).unwrap()]).unwrap(), 1);
    }

    #[test]
    fn theorem_generators_lie_in_kia() {
        for n in 1..=4 {
            for k in 1..=3 {
                let b = Basis::new(n, k).unwrap();
                for t in torelli_generators(b, false) {
                    assert!(t.classify().in_kia, "{t}");
                }
            }
        }
    }

    #[test]
    fn transvections_along_a_common_y_commute() {
        let b = Basis::new(3, 2).unwrap();
        for x in 1..=3u16 {
            for x2 in 1..=3u16 {
                if x == x2 {
                    continue;
                }
                for y in 1..=2u16 {
                    let yw = Word::reduce(b, [Gen::Y(y).pos()]).unwrap();
                    let m1 = Endo::transvection(b, Gen::X(x), 1, yw.clone()).unwrap();
                    let m2 = Endo::transvection(b, Gen::X(x2), 1, yw).unwrap();
                    assert!(m1.commutator(&m2).unwrap().is_identity());
                }
            }
        }
    }
}
