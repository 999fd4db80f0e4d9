use torelli::lpres::{inverse_pairs, relation_catalog, CatalogKind, SubstSystem};
use torelli::symgen::{alphabet, alphabet_pm, interpret, interpret_tokens, Alphabet};
use torelli::Basis;

fn all_identity(kind: CatalogKind, n: usize, k: usize, basis: Basis) -> usize {
    let cat = relation_catalog(kind, n, k).unwrap();
    assert!(!cat.is_empty());
    for r in &cat {
        let e = interpret_tokens(&r.relator_tokens(), basis).unwrap();
        assert!(e.is_identity(), "{r}");
    }
    cat.len()
}

#[test]
fn nielsen_relations_hold() {
    for n in 2..=4 {
        all_identity(CatalogKind::Nielsen, n, 0, Basis::new(n, 0).unwrap());
    }
}

#[test]
fn jensen_wahl_relations_hold() {
    for n in 2..=3 {
        all_identity(CatalogKind::JensenWahl, n, 1, Basis::new(n, 1).unwrap());
    }
}

#[test]
fn seed_relations_hold_at_rank_four() {
    let cat = relation_catalog(CatalogKind::Rk0, 4, 1).unwrap();
    let count = |f: &str| cat.iter().filter(|r| r.family == f).count();
    assert_eq!(count("R1"), 12);
    assert_eq!(count("R2"), 2112);
    assert_eq!(count("R3"), 192);
    for f in ["R4", "R5", "R6", "R7"] {
        assert_eq!(count(f), 96);
    }
    for f in ["R8", "R9", "R10"] {
        assert_eq!(count(f), 384);
    }
    all_identity(CatalogKind::Rk0, 4, 1, Basis::new(4, 1).unwrap());
}

#[test]
fn table1_and_s1prime_hold() {
    let n = all_identity(CatalogKind::Table1, 3, 3, Basis::new(3, 3).unwrap());
    assert!(n > 0);
    all_identity(CatalogKind::S1Prime, 3, 2, Basis::new(3, 2).unwrap());
    all_identity(CatalogKind::Zn, 4, 1, Basis::new(4, 1).unwrap());
}

#[test]
fn substitution_audit_is_total() {
    let sys = SubstSystem::new(4).unwrap();
    let audit = sys.audit();
    let total: usize = audit.values().sum();
    assert_eq!(total, alphabet_pm(Alphabet::Q, 4).unwrap().len() * alphabet(Alphabet::K, 4).unwrap().len());
    for (id, c) in &audit {
        assert!(*c > 0, "rule {id} never fires");
    }
}

#[test]
fn phi_of_inverse_pairs_is_trivial() {
    let sys = SubstSystem::new(3).unwrap();
    let b = Basis::new(3, 1).unwrap();
    for r in inverse_pairs(Alphabet::A, 3).unwrap() {
        for t in alphabet(Alphabet::K, 3).unwrap() {
            let w = torelli::symgen::SymWord::new(Alphabet::K, [t]).unwrap();
            let img = sys.phi_word(&r.lhs, &w).unwrap();
            assert_eq!(interpret(&img, b).unwrap(), t.to_endo(b).unwrap(), "{r} {t}");
        }
    }
}
