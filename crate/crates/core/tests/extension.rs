use torelli::extend::{check_group_laws, ExtGroup, GroupOps};
use torelli::glsemi::QElement;
use torelli::lpres::{relation_catalog, CatalogKind};
use torelli::sample::{Sampler, DEFAULT_SEED};
use torelli::symgen::{alphabet_pm, interpret_tokens, Alphabet, SymToken};
use torelli::{Basis, Endo};

#[test]
fn delta_group_laws() {
    for n in [2, 3] {
        let g = ExtGroup::new(n);
        let mut s = Sampler::new(DEFAULT_SEED);
        let triples: Vec<_> = (0..100).map(|_| (s.ext_element(n), s.ext_element(n), s.ext_element(n))).collect();
        let fails = check_group_laws(&g, &triples);
        assert!(fails.is_empty(), "n={n}: {:?}", fails.first());
    }
}

#[test]
fn cocycle_claims() {
    for n in [2, 3] {
        let g = ExtGroup::new(n);
        let mut s = Sampler::new(DEFAULT_SEED ^ 3);
        for i in 0..100 {
            let (q1, q2, q3) = (s.q_element(n), s.q_element(n), s.q_element(n));
            let k = s.kernel_element(n);
            assert!(g.check_action(&q1, &q2, &k).unwrap(), "n={n} sample {i}");
            assert!(g.check_cocycle(&q1, &q2, &q3).unwrap(), "n={n} sample {i}");
        }
    }
}

#[test]
fn mutated_gamma_breaks_cocycle() {
    let n = 2;
    let b = Basis::new(2, 1).unwrap();
    let q1 = QElement::new(vec![0, 0], "I[1]".parse::<SymToken>().unwrap().to_endo(Basis::new(2, 0).unwrap()).unwrap()).unwrap();
    let q2 = QElement::new(vec![1, 0], Endo::identity(Basis::new(2, 0).unwrap())).unwrap();
    let extra = "C[x1,y]".parse::<SymToken>().unwrap().to_endo(b).unwrap();
    let g = ExtGroup::with_gamma_mutation(n, q1.clone(), q2.clone(), extra);
    // γ(q₁,q₂) enters only the left side of the identity for (q₁, q₂, q₂).
    assert!(!g.check_cocycle(&q1, &q2, &q2).unwrap());
    assert!(ExtGroup::new(n).check_cocycle(&q1, &q2, &q2).unwrap());
}

#[test]
fn forward_map_is_homomorphism() {
    for n in [2, 3] {
        let g = ExtGroup::new(n);
        let mut s = Sampler::new(DEFAULT_SEED ^ 4);
        for i in 0..100 {
            let (x, y) = (s.ext_element(n), s.ext_element(n));
            let lhs = g.forward(&g.ext_mul(&x, &y).unwrap()).unwrap();
            let rhs = g.forward(&x).unwrap().compose(&g.forward(&y).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "n={n} sample {i}");
        }
    }
}

#[test]
fn kernel_is_normal() {
    let n = 3;
    let g = ExtGroup::new(n);
    let mut s = Sampler::new(DEFAULT_SEED ^ 5);
    for _ in 0..100 {
        let q = g.quotient(s.q_element(n)).unwrap();
        let k = g.kernel(s.kernel_element(n)).unwrap();
        let c = g.ext_mul(&g.ext_mul(&q, &k).unwrap(), &g.ext_inv(&q).unwrap()).unwrap();
        assert!(c.q.is_identity());
    }
}

#[test]
fn jensen_wahl_relators_lift_to_identity() {
    let n = 3;
    let g = ExtGroup::new(n);
    let rels = relation_catalog(CatalogKind::JensenWahl, n, 1).unwrap();
    assert!(!rels.is_empty());
    for r in &rels {
        let lifted = g.lift_word(&r.relator_tokens()).unwrap();
        assert!(g.eq(&lifted, &g.identity()), "{r}");
    }
    let b = g.basis();
    for c in alphabet_pm(Alphabet::C, n).unwrap() {
        let back = g.forward(&g.phi_inverse_gen(c).unwrap()).unwrap();
        assert_eq!(back, interpret_tokens(&[c], b).unwrap(), "{c}");
    }
}
