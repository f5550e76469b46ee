use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::diagram_cat::{random_morphism, GeneratorTable, Morphism, RigidCategory, Word};
use crate::exact_linalg::{cayley_hamilton_residual, frac, generalized_binomial, int, schur_weyl_dim, to_i64};
use crate::exterior_model::Realization;

fn n_obj() -> FormalObject {
    FormalObject::whole(Word::power(0, 1))
}

#[test]
fn symmetrizer_basics() {
    let cat = RigidCategory::single(-2);
    let w = Word::power(0, 1);
    assert_eq!(symmetrizer(1, &w), Morphism::identity(&w));
    let swap = Morphism::symmetry(&[1, 0], &Word::power(0, 2));
    let half = frac(1, 2);
    let expected = Morphism::identity(&Word::power(0, 2)).add(&swap).unwrap().scale(&half);
    assert_eq!(symmetrizer(2, &w), expected);
    for n in 1..=4 {
        let s = symmetrizer(n, &w);
        let a = antisymmetrizer(n, &w);
        assert_eq!(cat.compose(&s, &s).unwrap(), s);
        assert_eq!(cat.compose(&a, &a).unwrap(), a);
        if n >= 2 {
            assert!(cat.compose(&s, &a).unwrap().is_zero());
            assert!(cat.compose(&a, &s).unwrap().is_zero());
        }
    }
}

#[test]
fn ranks_of_powers() {
    for alpha in -4..=4i64 {
        let cat = RigidCategory::single(alpha);
        for r in 1..=5u32 {
            let s = rank(&cat, &sym_power(&cat, &n_obj(), r as usize).unwrap()).unwrap();
            assert_eq!(s, generalized_binomial(alpha + r as i64 - 1, r), "S^{r} at {alpha}");
            let l = rank(&cat, &ext_power(&cat, &n_obj(), r as usize).unwrap()).unwrap();
            assert_eq!(l, generalized_binomial(alpha, r), "Λ^{r} at {alpha}");
        }
    }
    let cat = RigidCategory::single(-2);
    assert_eq!(rank(&cat, &sym_power(&cat, &n_obj(), 2).unwrap()).unwrap(), int(1));
    assert_eq!(rank(&cat, &ext_power(&cat, &n_obj(), 2).unwrap()).unwrap(), int(3));
}

#[test]
fn twists_and_formal_objects() {
    let cat = RigidCategory::single(3);
    let x = n_obj().twisted(2);
    let y = sym_power(&cat, &n_obj(), 2).unwrap().twisted(-1);
    let t = x.tensor(&y);
    assert_eq!(t.twist, 1);
    assert_eq!(rank(&cat, &x).unwrap(), int(3));
    assert_eq!(rank(&cat, &t).unwrap(), int(18));
    let bad = Morphism::identity(&Word::power(0, 1)).scale(&int(2));
    assert!(matches!(
        FormalObject::new(&cat, Word::power(0, 1), bad, 0),
        Err(KaroubiError::NotIdempotent)
    ));
    // Hom((P,e),(Q,f)) = f ∘ Hom(P,Q) ∘ e
    let s2 = sym_power(&cat, &n_obj(), 2).unwrap();
    let a2 = ext_power(&cat, &n_obj(), 2).unwrap();
    assert_eq!(hom_space(&cat, &s2, &s2).unwrap().len(), 1);
    assert!(hom_space(&cat, &s2, &a2).unwrap().is_empty());
}

#[test]
fn radical_dimensions() {
    let cat = RigidCategory::single(-2);
    let w2 = FormalObject::whole(Word::power(0, 2));
    let w3 = FormalObject::whole(Word::power(0, 3));
    assert_eq!(radical_subspace(&cat, &w2, &w2).unwrap().len(), 0);
    let rad = radical_subspace(&cat, &w3, &w3).unwrap();
    assert_eq!(rad.len(), 1);
    // at rank -2 the radical of End(N^{⊗3}) is spanned by the symmetrizer
    let q = quotient_hom(&cat, &w3, &w3, &QuotientSpec::Radical).unwrap();
    assert!(q.contains(&symmetrizer(3, &Word::power(0, 1))));
    assert!(!q.contains(&antisymmetrizer(3, &Word::power(0, 1))));
    assert!(radical_subspace(&cat, &FormalObject::unit(), &n_obj())
        .unwrap()
        .is_empty());
    assert!(hom_space(&cat, &FormalObject::unit(), &n_obj()).unwrap().is_empty());
    let (_, _, g) = gram_matrix(&cat, &w2, &w2).unwrap();
    assert_eq!(
        g,
        crate::exact_linalg::RationalMatrix::from_i64(&[vec![4, -2], vec![-2, 4]])
    );
}

#[test]
fn radical_is_a_tensor_ideal() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cat = RigidCategory::single(-2);
    let w3 = Word::power(0, 3);
    let x = FormalObject::whole(w3.clone());
    let rad = radical_subspace(&cat, &x, &x).unwrap();
    let r = &rad[0];
    for _ in 0..4 {
        let h = random_morphism(&mut rng, &w3, &w3, 3);
        for c in [cat.compose(&h, r).unwrap(), cat.compose(r, &h).unwrap()] {
            assert!(in_radical(&cat, &x, &x, &c).unwrap());
        }
        let k = random_morphism(&mut rng, &Word::power(0, 1), &Word::power(0, 1), 2);
        let t = r.tensor(&k);
        let x4 = FormalObject::whole(Word::power(0, 4));
        assert!(in_radical(&cat, &x4, &x4, &t).unwrap());
        assert!(standard_realization_kills(&cat, &t).unwrap());
    }
    let id = Morphism::identity(&w3);
    assert!(!in_radical(&cat, &x, &x, &id).unwrap());
}

#[test]
fn quotient_by_radical_is_nondegenerate() {
    for alpha in [-2, -1, 1, 2] {
        let cat = RigidCategory::single(alpha);
        for r in 1..=4 {
            let x = FormalObject::whole(Word::power(0, r));
            let q = quotient_hom(&cat, &x, &x, &QuotientSpec::Radical).unwrap();
            let (_, _, g) = gram_matrix(&cat, &x, &x).unwrap();
            assert_eq!(g.rank(), q.dim());
            let expected: usize = schur_weyl_dim(alpha.unsigned_abs() as usize, r).try_into().unwrap();
            assert_eq!(q.dim(), expected, "rank {alpha}, r = {r}");
        }
    }
}

#[test]
fn symmetric_group_ideal_quotients() {
    let cat = RigidCategory::single(7);
    let n = Word::power(0, 1);
    for k in 1..=3usize {
        let gen = antisymmetrizer(k + 1, &n);
        for r in 1..=5usize {
            let x = FormalObject::whole(Word::power(0, r));
            let q = quotient_hom(&cat, &x, &x, &QuotientSpec::Ideal(vec![gen.clone()])).unwrap();
            let expected: usize = schur_weyl_dim(k, r).try_into().unwrap();
            assert_eq!(q.dim(), expected, "n = {k}, r = {r}");
        }
    }
    let mixed = FormalObject::whole(Word(vec![
        crate::diagram_cat::Letter::plain(0),
        crate::diagram_cat::Letter::dual(0),
    ]));
    let err = quotient_hom(&cat, &mixed, &mixed, &QuotientSpec::Ideal(vec![])).unwrap_err();
    assert!(matches!(err, KaroubiError::Unsupported(_)));
}

#[test]
fn positivity_and_negativity() {
    let cat = RigidCategory::single(-2);
    assert!(is_positive(&cat, &FormalObject::unit(), 4).unwrap().holds());
    assert_eq!(is_negative(&cat, &n_obj(), 4).unwrap(), Verdict::Holds { m: 3 });
    assert!(!is_positive(&cat, &n_obj(), 4).unwrap().holds());
    let nn = n_obj().tensor(&n_obj());
    assert_eq!(is_positive(&cat, &nn, 5).unwrap(), Verdict::Holds { m: 5 });
    assert_eq!(is_positive(&cat, &nn, 4).unwrap(), Verdict::Inconclusive { bound: 4 });
    let a2 = ext_power(&cat, &n_obj(), 2).unwrap();
    assert!(is_positive(&cat, &a2, 4).unwrap().holds());
    let pos = RigidCategory::single(2);
    assert!(is_positive(&pos, &n_obj(), 3).unwrap().holds());
    assert!(!is_negative(&pos, &n_obj(), 3).unwrap().holds());
}

#[test]
fn cayley_hamilton() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let cat = RigidCategory::single(-2);
    let id_case = cayley_hamilton_check(
        &RigidCategory::single(2),
        &n_obj(),
        &Morphism::identity(&Word::power(0, 1)),
        2,
    );
    assert!(id_case.unwrap().is_zero());
    let table = GeneratorTable::single(-2);
    let mixed = table.parse_word("N,N*").unwrap();
    let cases = [
        (FormalObject::whole(mixed.clone()), 4),
        (FormalObject::whole(Word::power(0, 2)), 4),
        (ext_power(&cat, &n_obj(), 2).unwrap(), 3),
        (sym_power(&cat, &n_obj(), 2).unwrap(), 1),
    ];
    for (x, m) in cases {
        assert_eq!(to_i64(&rank(&cat, &x).unwrap()), Some(m as i64));
        for _ in 0..2 {
            let f = random_morphism(&mut rng, &x.word, &x.word, 3);
            let res = cayley_hamilton_check(&cat, &x, &f, m).unwrap();
            assert!(in_radical(&cat, &x, &x, &res).unwrap());
        }
    }
    // realized matrices satisfy the classical identity
    let even = RigidCategory::single(2);
    let real = Realization::standard(&even.table);
    let f = random_morphism(&mut rng, &Word::power(0, 2), &Word::power(0, 2), 3);
    let mat = real.realize_diagram(&f).unwrap().matrix;
    assert!(cayley_hamilton_residual(&mat).unwrap().is_zero());
}

#[test]
fn hopf_structure() {
    let h = sym_hopf(1, 3).unwrap();
    let rep = hopf_axiom_check(&h, 3).unwrap();
    assert!(rep.all_pass(), "{:?}", rep.checks);
    assert!(rep.checks.iter().any(|(n, _)| n == "rank-vanishing"));
    let s2 = &h.components[2].idempotent;
    assert_eq!(h.comult[&(1, 1)], s2.scale(&int(2)));
    for r in 0..=3 {
        let sign = if r % 2 == 0 { int(1) } else { int(-1) };
        assert_eq!(h.antipode[r], h.components[r].idempotent.scale(&sign));
    }
    assert_eq!(h.cat.compose(&h.counit, &h.unit).unwrap(), Morphism::scalar(int(1)));
    assert!(rank(&h.cat, &h.components[3]).unwrap().is_zero());
    let h2 = sym_hopf(2, 5).unwrap();
    assert!(hopf_axiom_check(&h2, 5).unwrap().all_pass());
}

#[test]
fn eigen_splitting() {
    let h = sym_hopf(1, 2).unwrap();
    let objs: Vec<FormalObject> = h.components.clone();
    let t = MorphismMatrix::diagonal(objs.clone(), (0..=2).map(|r| h.multiple(2, r)).collect());
    let parts = eigen_split(&h.cat, &t, &[1, 2, 4], None).unwrap();
    assert_eq!(parts.len(), 3);
    for (r, (l, e)) in parts.iter().enumerate() {
        assert_eq!(*l, 1 << r);
        let mut diag: Vec<Morphism> = objs
            .iter()
            .map(|o| Morphism::zero(o.word.clone(), o.word.clone()))
            .collect();
        diag[r] = objs[r].idempotent.clone();
        assert_eq!(*e, MorphismMatrix::diagonal(objs.clone(), diag));
    }
    let id = MorphismMatrix::identity(objs.clone());
    let single = eigen_split(&h.cat, &id, &[1], Some(1)).unwrap();
    assert_eq!(single[0].1, id);
    let err = eigen_split(&h.cat, &t, &[1, 2], Some(2)).unwrap_err();
    assert!(matches!(err, KaroubiError::Residual(_)));
}

#[test]
fn inclusion_exclusion() {
    for n in 1..=3 {
        assert!(kimura_incl_excl_check(n).unwrap(), "n = {n}");
    }
    let (l, _) = incl_excl_sides(2);
    let mut expected = MultiPoly::zero(4);
    let x = |i| MultiPoly::var(4, i);
    let two = MultiPoly::one(4).add(&MultiPoly::one(4));
    expected = expected.add(&two.mul(&x(0).mul(&x(3)).add(&x(1).mul(&x(2)))));
    assert_eq!(l, expected);
    let (l1, r1) = incl_excl_sides(1);
    assert_eq!(l1, MultiPoly::var(1, 0));
    assert_eq!(r1, l1);
}

#[test]
fn positive_contraction_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    // L of rank 1, 2 and 3 with a second generator carrying N and N'
    let cases = [
        ("L:-2,M:3", "sym", "M", "M,M"),
        ("L:2,M:-1", "whole", "M", "M"),
        ("L:-2,M:1", "ext", "M", "1"),
    ];
    for (spec, kind, np, n) in cases {
        let table = GeneratorTable::parse(spec).unwrap();
        let cat = RigidCategory::new(table.clone());
        let base = FormalObject::whole(table.parse_word("L").unwrap());
        let l = match kind {
            "sym" => sym_power(&cat, &base, 2).unwrap(),
            "ext" => ext_power(&cat, &base, 2).unwrap(),
            _ => base,
        };
        let src = table.parse_word(np).unwrap().concat(&l.word);
        let dst = table.parse_word(n).unwrap().concat(&l.word);
        for _ in 0..2 {
            let f = random_morphism(&mut rng, &src, &dst, 4);
            assert!(poscontr_identity_check(&cat, &l, &f).unwrap(), "{spec}");
        }
        let f = random_morphism(&mut rng, &l.word, &l.word, 4);
        assert!(poscontr_identity_check(&cat, &l, &f).unwrap(), "{spec} with N = N' = 1");
    }
    // for rank one, a = e and f₀ ⊗ e = (1 ⊗ e) ∘ f ∘ (1 ⊗ e) after realization
    let cat = RigidCategory::single(1);
    let l = FormalObject::whole(Word::power(0, 1));
    let f = random_morphism(&mut rng, &Word::power(0, 2), &Word::power(0, 2), 3);
    let (lhs, rhs) = poscontr_sides(&cat, &l, &f).unwrap();
    assert!(standard_realization_kills(&cat, &lhs.sub(&rhs).unwrap()).unwrap());
    // contraction of l ⊗ j is tr(j)·l
    let table = GeneratorTable::parse("N:3,L:2").unwrap();
    let cat = RigidCategory::new(table.clone());
    let nw = table.parse_word("N").unwrap();
    let lw = table.parse_word("L").unwrap();
    let lm = random_morphism(&mut rng, &nw.concat(&nw), &nw.concat(&nw), 3);
    let j = random_morphism(&mut rng, &lw.concat(&lw), &lw.concat(&lw), 3);
    let c = cat.contract_last(&lm.tensor(&j), 2).unwrap();
    assert_eq!(c, lm.scale(&cat.trace(&j).unwrap()));
}
