use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exact_linalg::{frac, int, permutations};

fn n() -> Letter {
    Letter::plain(0)
}

fn nd() -> Letter {
    Letter::dual(0)
}

#[test]
fn hom_basis_examples() {
    assert_eq!(hom_basis(&Word::power(0, 3), &Word::power(0, 3)).len(), 6);
    assert!(hom_basis(&Word(vec![n()]), &Word(vec![nd()])).is_empty());
    let b = hom_basis(&Word::unit(), &Word(vec![nd(), n()]));
    assert_eq!(b.len(), 1);
    assert_eq!(Morphism::from_diagram(b[0].clone()), Morphism::eta(0));
    // N ⊗ N^∨ → N ⊗ N^∨: identity and cap-cup
    assert_eq!(hom_basis(&Word(vec![n(), nd()]), &Word(vec![n(), nd()])).len(), 2);
}

#[test]
fn five_case_and_triangles() {
    for rank in -4..=4 {
        let cat = RigidCategory::single(rank);
        let loop_val = cat.compose(&Morphism::eps(0), &Morphism::eta_tilde(0)).unwrap();
        assert_eq!(loop_val.as_scalar(), Some(int(rank)));
        let other = cat.compose(&Morphism::eps_tilde(0), &Morphism::eta(0)).unwrap();
        assert_eq!(other.as_scalar(), Some(int(rank)));

        let id_n = Morphism::identity(&Word(vec![n()]));
        let id_nd = Morphism::identity(&Word(vec![nd()]));
        let t1 = cat
            .compose(&Morphism::eps(0).tensor(&id_n), &id_n.tensor(&Morphism::eta(0)))
            .unwrap();
        assert_eq!(t1, id_n);
        let t2 = cat
            .compose(&id_nd.tensor(&Morphism::eps(0)), &Morphism::eta(0).tensor(&id_nd))
            .unwrap();
        assert_eq!(t2, id_nd);
    }
}

#[test]
fn word_triangles() {
    let table = GeneratorTable::parse("N:-2,M:3").unwrap();
    let cat = RigidCategory::new(table.clone());
    let w = table.parse_word("N,M*,N").unwrap();
    let id_w = Morphism::identity(&w);
    let id_wd = Morphism::identity(&w.dual());
    let t1 = cat
        .compose(
            &Morphism::eps_word(&w).tensor(&id_w),
            &id_w.tensor(&Morphism::eta_word(&w)),
        )
        .unwrap();
    assert_eq!(t1, id_w);
    let t2 = cat
        .compose(
            &id_wd.tensor(&Morphism::eps_word(&w)),
            &Morphism::eta_word(&w).tensor(&id_wd),
        )
        .unwrap();
    assert_eq!(t2, id_wd);
    let closed = cat
        .compose(&Morphism::eps_word(&w), &Morphism::eta_word(&w.dual()))
        .unwrap();
    assert_eq!(closed.as_scalar(), Some(int(12)));
}

#[test]
fn tensor_units() {
    let cat = RigidCategory::single(-2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let w = Word::power(0, 2);
    let f = random_morphism(&mut rng, &w, &w, 4);
    assert_eq!(f.tensor(&Morphism::identity(&Word::unit())), f);
    let id1 = Morphism::identity(&Word::power(0, 1));
    assert_eq!(id1.tensor(&id1), Morphism::identity(&w));
    // η ⊗ ε closed up: ε ∘ (ε ⊗ id) ∘ (id ⊗ η̃ ... ) reproduces loop evaluation
    let e = Morphism::eta_tilde(0).tensor(&Morphism::eta_tilde(0));
    let c = Morphism::eps(0).tensor(&Morphism::eps(0));
    assert_eq!(cat.compose(&c, &e).unwrap().as_scalar(), Some(int(4)));
}

#[test]
fn symmetry_action() {
    let cat = RigidCategory::single(3);
    let w = Word::power(0, 3);
    let perms = permutations(3);
    for s in &perms {
        for t in &perms {
            let st: Vec<usize> = (0..3).map(|i| s[t[i]]).collect();
            let lhs = Morphism::symmetry(&st, &w);
            let rhs = cat
                .compose(&Morphism::symmetry(s, &w), &Morphism::symmetry(t, &w))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
    assert_eq!(Morphism::symmetry(&[0, 1, 2], &w), Morphism::identity(&w));
    let mixed = Word(vec![n(), nd()]);
    let d = Diagram::symmetry(&[1, 0], &mixed);
    assert_eq!(d.dst, Word(vec![nd(), n()]));
}

#[test]
fn traces() {
    for rank in -4..=4 {
        let cat = RigidCategory::single(rank);
        let w2 = Word::power(0, 2);
        assert_eq!(cat.trace(&Morphism::identity(&Word::power(0, 1))).unwrap(), int(rank));
        assert_eq!(cat.trace(&Morphism::symmetry(&[1, 0], &w2)).unwrap(), int(rank));
        assert_eq!(cat.trace(&Morphism::identity(&w2)).unwrap(), int(rank * rank));
    }
    let cat = RigidCategory::single(-2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = Word(vec![n(), n(), nd()]);
    let q = Word(vec![n()]);
    for _ in 0..20 {
        let f = random_morphism(&mut rng, &p, &q, 3);
        let g = random_morphism(&mut rng, &q, &p, 3);
        let a = cat.trace(&cat.compose(&g, &f).unwrap()).unwrap();
        let b = cat.trace(&cat.compose(&f, &g).unwrap()).unwrap();
        assert_eq!(a, b);
        let h = random_morphism(&mut rng, &p, &p, 4);
        assert_eq!(cat.trace(&h.transpose()).unwrap(), cat.trace(&h).unwrap());
    }
}

#[test]
fn contraction_examples() {
    let cat = RigidCategory::single(-3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = Word::power(0, 2);
    let m = Word(vec![n(), nd()]);
    let l = random_morphism(&mut rng, &w, &w, 3);
    let j = random_morphism(&mut rng, &m, &m, 3);
    let lhs = cat.contract_last(&l.tensor(&j), 2).unwrap();
    assert_eq!(lhs, l.scale(&cat.trace(&j).unwrap()));
    let id = Morphism::identity(&Word::power(0, 3));
    assert_eq!(
        cat.contract_last(&id, 1).unwrap(),
        Morphism::identity(&w).scale(&int(-3))
    );
    assert!(cat.contract_last(&Morphism::eta(0), 1).is_err());
}

#[test]
fn transpose_laws() {
    let cat = RigidCategory::single(2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let m = Word(vec![n(), nd(), n()]);
    let nn = Word(vec![n()]);
    assert_eq!(Morphism::identity(&m).transpose(), Morphism::identity(&m.dual()));
    for _ in 0..10 {
        let f = random_morphism(&mut rng, &m, &nn, 3);
        let g = random_morphism(&mut rng, &nn, &m, 3);
        assert_eq!(f.transpose().transpose(), f);
        let lhs = cat.compose(&g, &f).unwrap().transpose();
        let rhs = cat.compose(&f.transpose(), &g.transpose()).unwrap();
        assert_eq!(lhs, rhs);
        // f^∨ = (M^∨ ⊗ ε_N) ∘ (M^∨ ⊗ f ⊗ N^∨) ∘ (η_M ⊗ N^∨)
        let id_md = Morphism::identity(&m.dual());
        let id_nd = Morphism::identity(&nn.dual());
        let formula = cat
            .compose_chain(&[
                &Morphism::eta_word(&m).tensor(&id_nd),
                &id_md.tensor(&f).tensor(&id_nd),
                &id_md.tensor(&Morphism::eps_word(&nn)),
            ])
            .unwrap();
        assert_eq!(formula, f.transpose());
    }
}

#[test]
fn associativity_and_bifunctoriality() {
    let cat = RigidCategory::single(-2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = Word(vec![n(), nd(), n()]);
    let b = Word(vec![n()]);
    let c = Word(vec![n(), n(), nd()]);
    for _ in 0..10 {
        let f = random_morphism(&mut rng, &a, &b, 3);
        let g = random_morphism(&mut rng, &b, &c, 3);
        let h = random_morphism(&mut rng, &c, &a, 3);
        let left = cat.compose(&h, &cat.compose(&g, &f).unwrap()).unwrap();
        let right = cat.compose(&cat.compose(&h, &g).unwrap(), &f).unwrap();
        assert_eq!(left, right);
        assert_eq!(cat.compose(&f, &Morphism::identity(&a)).unwrap(), f);
        assert_eq!(cat.compose(&Morphism::identity(&b), &f).unwrap(), f);
        let f2 = random_morphism(&mut rng, &b, &b, 2);
        let g2 = random_morphism(&mut rng, &b, &b, 2);
        let lhs = cat.compose(&g, &f).unwrap().tensor(&cat.compose(&g2, &f2).unwrap());
        let rhs = cat.compose(&g.tensor(&g2), &f.tensor(&f2)).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn serialization_round_trip() {
    let table = GeneratorTable::parse("N:-2,M:1").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let p = table.parse_word("N,M*,N*").unwrap();
    let q = table.parse_word("M*,N*,N,N*").unwrap();
    for _ in 0..10 {
        let f = random_morphism(&mut rng, &p, &q, 4).scale(&frac(-3, 7));
        let text = format_morphism(&table, &f);
        let back = parse_morphism(&table, &text).unwrap();
        assert_eq!(back, f);
        assert_eq!(format_morphism(&table, &back), text);
    }
    let line = "src=N; dst=N; edges=(0,1); coeff=1/2";
    let (d, c) = parse_diagram(&table, line).unwrap();
    assert_eq!(c, frac(1, 2));
    assert_eq!(format_diagram(&table, &d, &c), line);
    assert!(parse_diagram(&table, "src=N; dst=N*; edges=(0,1); coeff=1").is_err());
    assert!(parse_diagram(&table, "src=X; dst=N; edges=(0,1); coeff=1").is_err());
}

#[test]
fn charge_mismatch_vanishes() {
    let table = GeneratorTable::parse("N:1,M:1").unwrap();
    let p = table.parse_word("N,M").unwrap();
    let q = table.parse_word("M,M").unwrap();
    assert!(hom_basis(&p, &q).is_empty());
    assert_eq!(hom_basis(&p, &table.parse_word("M,N").unwrap()).len(), 1);
}

#[test]
fn trace_pair_matches_trace_of_composite() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let table = GeneratorTable::parse("N:-3,M:2").unwrap();
    let cat = RigidCategory::new(table.clone());
    for (a, b) in [("N,N", "N,M,M*,N"), ("N,M", "M,N"), ("N,N*", "1"), ("1", "1")] {
        let x = table.parse_word(a).unwrap();
        let y = table.parse_word(b).unwrap();
        for _ in 0..5 {
            let f = random_morphism(&mut rng, &x, &y, 3);
            let g = random_morphism(&mut rng, &y, &x, 3);
            let direct = cat.trace(&cat.compose(&g, &f).unwrap()).unwrap();
            assert_eq!(cat.trace_pair(&g, &f).unwrap(), direct);
        }
    }
}
