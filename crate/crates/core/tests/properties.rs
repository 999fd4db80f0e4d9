use proptest::prelude::*;

use torelli::fgmap::torelli_generators;
use torelli::fgword::wedge;
use torelli::glsemi::{aut_act_on_zn, semi_inv, semi_mul, semi_mul_matrix, stab_compose, stab_decompose, QElement};
use torelli::lpres::{relation_catalog, CatalogKind};
use torelli::sample::Sampler;
use torelli::symgen::{alphabet, alphabet_pm, interpret, interpret_tokens, Alphabet, SymToken, SymWord};
use torelli::twisted::lambda_bar_vec;
use torelli::{Basis, Endo, Letter, Word};

fn b32() -> Basis {
    Basis::new(3, 2).unwrap()
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    let b = b32();
    prop::collection::vec((0..b.rank(), any::<bool>()), 0..=max)
        .prop_map(move |ls| Word::reduce(b, ls.into_iter().map(|(i, inv)| Letter::new(b.gen_at(i), inv))).unwrap())
}

fn tokens(kind: Alphabet, n: usize, max: usize) -> impl Strategy<Value = Vec<SymToken>> {
    let letters = alphabet_pm(kind, n).unwrap();
    prop::collection::vec(prop::sample::select(letters), 0..=max)
}

fn aut(w: &[SymToken], n: usize) -> Endo {
    interpret_tokens(w, Basis::new(n, 0).unwrap()).unwrap()
}

fn vector(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reduce_is_idempotent(w in word(8)) {
        prop_assert_eq!(Word::reduce(w.basis(), w.letters().iter().copied()).unwrap(), w);
    }

    #[test]
    fn mul_associative_inv_involutive(u in word(8), v in word(8), w in word(8)) {
        prop_assert_eq!(u.mul(&v).unwrap().mul(&w).unwrap(), u.mul(&v.mul(&w).unwrap()).unwrap());
        prop_assert_eq!(u.inv().inv(), u.clone());
        prop_assert!(u.mul(&u.inv()).unwrap().is_empty());
    }

    #[test]
    fn abelianize_is_homomorphism(u in word(8), v in word(8)) {
        let s: Vec<i64> = u.abelianize().iter().zip(v.abelianize()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(u.mul(&v).unwrap().abelianize(), s);
    }

    #[test]
    fn conjugacy_is_equivalence(u in word(6), c in word(4), d in word(4)) {
        let v = c.mul(&u).unwrap().mul(&c.inv()).unwrap();
        let w = d.mul(&v).unwrap().mul(&d.inv()).unwrap();
        prop_assert!(u.is_conjugate(&u));
        prop_assert!(u.is_conjugate(&v) && v.is_conjugate(&u));
        prop_assert!(u.is_conjugate(&w));
    }

    #[test]
    fn magnus_commutator_is_wedge(u in word(8), v in word(8)) {
        let c = u.commutator(&v).unwrap();
        prop_assert_eq!(c.lambda2_projection().unwrap(), wedge(&u.abelianize(), &v.abelianize()));
    }

    #[test]
    fn magnus_kills_gamma3(u in word(5), v in word(5), w in word(5), p in word(5), q in word(5)) {
        let base = p.commutator(&q).unwrap();
        let g3 = u.commutator(&v).unwrap().commutator(&w).unwrap();
        prop_assert_eq!(base.mul(&g3).unwrap().lambda2_projection().unwrap(), base.lambda2_projection().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn compose_matches_apply(f in tokens(Alphabet::Q, 3, 5), g in tokens(Alphabet::K, 3, 4), w in word(6)) {
        let b = Basis::new(3, 1).unwrap();
        let w = w.retain_gens(|x| b.contains(x)).rebase(b).unwrap();
        let (f, g) = (interpret_tokens(&f, b).unwrap(), interpret_tokens(&g, b).unwrap());
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.apply(&w).unwrap(), f.apply(&g.apply(&w).unwrap()).unwrap());
        let h = fg.compose(&g.inverse().unwrap()).unwrap();
        prop_assert!(h.equals(&f).unwrap());
        prop_assert_eq!(h.apply(&w).unwrap(), f.apply(&w).unwrap());
    }

    #[test]
    fn johnson_is_homomorphism(xs in prop::collection::vec(0usize..1000, 1..4), ys in prop::collection::vec(0usize..1000, 1..4)) {
        let gens = torelli_generators(b32(), false);
        let build = |ix: &[usize]| ix.iter().fold(Endo::identity(b32()), |acc, &i| acc.compose(&gens[i % gens.len()]).unwrap());
        let (f, g) = (build(&xs), build(&ys));
        prop_assert_eq!(f.compose(&g).unwrap().johnson().unwrap(), f.johnson().unwrap().add(&g.johnson().unwrap()));
    }

    #[test]
    fn stabilizer_block_round_trip(seed in any::<u64>()) {
        let m = Sampler::new(seed).stabilizer(3, 5);
        let (z, hat) = stab_decompose(&m).unwrap();
        prop_assert_eq!(stab_compose(&z, &hat).unwrap(), m);
    }

    #[test]
    fn psi_is_homomorphism(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (m1, m2) = (s.stabilizer(3, 5), s.stabilizer(3, 5));
        let prod = stab_decompose(&m1.mul(&m2).unwrap()).unwrap();
        let expected = semi_mul_matrix(&stab_decompose(&m1).unwrap(), &stab_decompose(&m2).unwrap()).unwrap();
        prop_assert_eq!(prod, expected);
    }

    #[test]
    fn semidirect_product_is_a_group(a in tokens(Alphabet::A, 3, 6), b in tokens(Alphabet::A, 3, 6), c in tokens(Alphabet::A, 3, 6),
                                      x in vector(3), y in vector(3), z in vector(3)) {
        let p = QElement::new(x, aut(&a, 3)).unwrap();
        let q = QElement::new(y, aut(&b, 3)).unwrap();
        let r = QElement::new(z, aut(&c, 3)).unwrap();
        let l = semi_mul(&semi_mul(&p, &q).unwrap(), &r).unwrap();
        prop_assert_eq!(l, semi_mul(&p, &semi_mul(&q, &r).unwrap()).unwrap());
        prop_assert!(semi_mul(&p, &semi_inv(&p).unwrap()).unwrap().is_identity());
        prop_assert!(semi_mul(&semi_inv(&p).unwrap(), &p).unwrap().is_identity());
    }

    #[test]
    fn aut_action_is_left_action(a in tokens(Alphabet::A, 3, 6), b in tokens(Alphabet::A, 3, 6), z in vector(3)) {
        let (fa, fb) = (aut(&a, 3), aut(&b, 3));
        let lhs = aut_act_on_zn(&fa.compose(&fb).unwrap(), &z).unwrap();
        prop_assert_eq!(lhs, aut_act_on_zn(&fa, &aut_act_on_zn(&fb, &z).unwrap()).unwrap());
    }

    #[test]
    fn interpret_is_homomorphism(u in tokens(Alphabet::K, 3, 5), v in tokens(Alphabet::Q, 3, 5)) {
        let b = Basis::new(3, 1).unwrap();
        let (u, v) = (SymWord::new(Alphabet::Any, u).unwrap(), SymWord::new(Alphabet::Any, v).unwrap());
        let lhs = interpret(&u.mul(&v).unwrap(), b).unwrap();
        prop_assert_eq!(lhs, interpret(&u, b).unwrap().compose(&interpret(&v, b).unwrap()).unwrap());
        prop_assert!(interpret(&u.mul(&u.inv()).unwrap(), b).unwrap().is_identity());
    }

    #[test]
    fn relator_insertion_preserves_value(w in tokens(Alphabet::K, 3, 6), pick in 0usize..10_000, pos in 0usize..7) {
        let b = Basis::new(3, 1).unwrap();
        let rels = relation_catalog(CatalogKind::Rk0, 3, 1).unwrap();
        let r = &rels[pick % rels.len()];
        let w = SymWord::new(Alphabet::K, w).unwrap();
        let pos = pos.min(w.len());
        let inserted = w.insert(pos, &r.relator()).unwrap();
        prop_assert_eq!(interpret(&inserted, b).unwrap(), interpret(&w, b).unwrap());
    }
}

#[test]
fn birman_compatibility_lands_in_kia() {
    for n in [2, 3] {
        for s in alphabet(Alphabet::A, n).unwrap() {
            for a in 0..n {
                let mut e = vec![0; n];
                e[a] = 1;
                let l = lambda_bar_vec(&aut(&[s], n), &e).unwrap();
                assert!(l.classify().in_kia, "n={n} s={s} e{}", a + 1);
            }
        }
    }
}
