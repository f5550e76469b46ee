use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::chow_theory::HomMatrix;
use crate::diagram_cat::{random_morphism, GeneratorTable, Letter, Morphism, RigidCategory, Word};
use crate::exact_linalg::int;

fn w(letters: &[(usize, bool)]) -> Word {
    Word(letters.iter().map(|&(g, d)| Letter { gen: g, dual: d }).collect())
}

#[test]
fn swap_is_negated_coordinate_swap() {
    let r = Realization::symplectic(1);
    let swap = Morphism::symmetry(&[1, 0], &Word::power(0, 2));
    let m = r.realize_diagram(&swap).unwrap().matrix;
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    let expect = if a == d && b == c { -int(1) } else { int(0) };
                    assert_eq!(m.get(c * 2 + d, a * 2 + b), expect);
                }
            }
        }
    }
}

#[test]
fn loop_and_triangles_realize() {
    for g in 1..=2 {
        let r = Realization::symplectic(g);
        let loop_map = RigidCategory::single(-2 * g as i64)
            .compose(&Morphism::eps(0), &Morphism::eta_tilde(0))
            .unwrap();
        assert_eq!(loop_map.as_scalar(), Some(int(-2 * g as i64)));
        let eps = r.realize_diagram(&Morphism::eps(0)).unwrap().matrix;
        let eta_t = r.realize_diagram(&Morphism::eta_tilde(0)).unwrap().matrix;
        assert_eq!(eps.mul(&eta_t).get(0, 0), int(-2 * g as i64));
        let id = Morphism::identity(&Word::power(0, 1));
        let tri = Morphism::eps(0).tensor(&id);
        let tri2 = id.tensor(&Morphism::eta(0));
        let prod = r
            .realize_diagram(&tri)
            .unwrap()
            .matrix
            .mul(&r.realize_diagram(&tri2).unwrap().matrix);
        assert!(prod.is_identity());
    }
}

#[test]
fn functoriality_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (table, real) in [
        (GeneratorTable::single(-2), Realization::symplectic(1)),
        (GeneratorTable::single(-4), Realization::symplectic(2)),
        (
            GeneratorTable::parse("N:3,M:-2").unwrap(),
            Realization::standard(&GeneratorTable::parse("N:3,M:-2").unwrap()),
        ),
    ] {
        let cat = RigidCategory::new(table.clone());
        let two = table.len() > 1;
        let words = [
            w(&[(0, false)]),
            w(&[(0, false), (0, true), (0, false)]),
            if two {
                w(&[(1, false), (0, false), (1, true)])
            } else {
                w(&[(0, false), (0, false), (0, true)])
            },
        ];
        for _ in 0..10 {
            let p = &words[rng.gen_range(0..3)];
            let q = &words[rng.gen_range(0..3)];
            let s = &words[rng.gen_range(0..3)];
            let f = random_morphism(&mut rng, p, q, 3);
            let g = random_morphism(&mut rng, q, s, 3);
            let rf = real.realize_diagram(&f).unwrap().matrix;
            let rg = real.realize_diagram(&g).unwrap().matrix;
            let rgf = real.realize_diagram(&cat.compose(&g, &f).unwrap()).unwrap().matrix;
            assert_eq!(rgf, rg.mul(&rf));
            let rt = real.realize_diagram(&f.tensor(&g)).unwrap().matrix;
            assert_eq!(rt, rf.kron(&rg));
            let e = random_morphism(&mut rng, p, p, 4);
            let re = real.realize_diagram(&e).unwrap().matrix;
            assert_eq!(real.supertrace(p, &re).unwrap(), cat.trace(&e).unwrap());
        }
    }
}

#[test]
fn pairing_normalization() {
    for g in 1..=2 {
        for m in 0..=2 {
            let vol = ExteriorVector::volume(g, m);
            assert_eq!(poincare_pair(&vol, &ExteriorVector::one(g, m)).unwrap(), int(1));
            for d in 0..=2 * g * m {
                let p = pairing_matrix(g, m, d);
                assert!(p.det().abs().is_one());
            }
        }
    }
    let x = ExteriorVector::e(1, 2, 0, 0);
    assert!(poincare_pair(&x, &x).is_err());
}

#[test]
fn pushforward_identity_and_functoriality() {
    let g = 1;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for d in 0..=4 {
        let pm = pushforward_matrix(g, &HomMatrix::identity(2), d).unwrap();
        assert!(pm.matrix.is_identity());
    }
    for _ in 0..5 {
        let f = HomMatrix::new(2, 2, (0..4).map(|_| rng.gen_range(-2..=2)).collect());
        let h = HomMatrix::new(2, 1, (0..2).map(|_| rng.gen_range(-2..=2)).collect());
        let x = random_vector(&mut rng, g, 1, 2);
        let lhs = x.pushforward(&f.compose(&h)).unwrap();
        let rhs = x.pushforward(&h).unwrap().pushforward(&f).unwrap();
        assert_eq!(lhs, rhs);
        let y = random_vector(&mut rng, g, 2, 2);
        assert_eq!(
            y.pullback(&f.compose(&h)).unwrap(),
            y.pullback(&f).unwrap().pullback(&h).unwrap()
        );
        // projection formula h_*(x · h^*y) = h_*x · y
        let lhs = x.wedge(&y.pullback(&h).unwrap()).unwrap().pushforward(&h).unwrap();
        let rhs = x.pushforward(&h).unwrap().wedge(&y).unwrap();
        assert_eq!(lhs, rhs);
    }
}

fn random_vector(rng: &mut ChaCha8Rng, g: usize, m: usize, d: usize) -> ExteriorVector {
    let mut v = ExteriorVector::zero(g, m);
    for k in masks_of_degree(2 * g * m, d) {
        let c = rng.gen_range(-2..=2);
        v = v.add(&ExteriorVector::monomial(g, m, k, int(c))).unwrap();
    }
    v
}

#[test]
fn invariant_dimensions() {
    assert_eq!(sp_invariants(1, 1, 2).len(), 1);
    assert_eq!(sp_invariants(1, 2, 2).len(), 3);
    assert_eq!(sp_invariants(1, 1, 0).len(), 1);
    for (g, m) in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)] {
        for d in 0..=2 * g * m {
            let basis = sp_invariants(g, m, d);
            if d % 2 == 1 {
                assert!(basis.is_empty());
            }
            assert_eq!(basis.len(), sp_invariants(g, m, 2 * g * m - d).len());
            for v in &basis {
                assert!(is_invariant(v));
            }
        }
    }
    let h = symplectic_class(1, 1, 0);
    assert_eq!(sp_invariants(1, 1, 2), vec![h]);
    // g = 2, m = 1: Λ^2 V ⊃ ℚω, Λ^4 V = ℚ vol
    assert_eq!(sp_invariants(2, 1, 2).len(), 1);
    assert_eq!(sp_invariants(2, 1, 4).len(), 1);
}

#[test]
fn text_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let v = random_vector(&mut rng, 1, 2, 2).scale(&crate::exact_linalg::frac(2, 3));
    let back = ExteriorVector::from_text(1, 2, &v.to_text()).unwrap();
    assert_eq!(back, v);
    assert_eq!(
        ExteriorVector::from_text(1, 1, "0").unwrap(),
        ExteriorVector::zero(1, 1)
    );
    assert!(ExteriorVector::from_text(1, 1, "(1,0):1/1").is_err());
    assert_eq!(ExteriorVector::volume(1, 1).to_text(), "(0,1):1/1");
}

#[test]
fn symplectic_pfaffian() {
    for g in 1..=4 {
        let s = SymplecticSpace::new(g);
        assert_eq!(s.pfaffian(), int(1));
        assert_eq!(s.pfaffian() * s.pfaffian(), s.omega().det());
        let direct = crate::exact_linalg::pfaffian(&s.omega()).unwrap();
        let expect = if (g * (g - 1) / 2) % 2 == 0 { int(1) } else { int(-1) };
        assert_eq!(direct, expect);
    }
}

#[test]
fn pullback_matches_generator_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (g, n, m) in [(1, 2, 3), (2, 3, 2), (2, 2, 2)] {
        for _ in 0..5 {
            let entries: Vec<i64> = (0..m * n).map(|_| rng.gen_range(-2..=2)).collect();
            let f = HomMatrix::new(m, n, entries);
            let mask: Mask = rng.gen::<u128>() & full_mask(g, m);
            let mut expected = ExteriorVector::one(g, n);
            for idx in mask_indices(mask) {
                let (j, a) = (idx / (2 * g), idx % (2 * g));
                let mut img = ExteriorVector::zero(g, n);
                for i in 0..n {
                    img = img
                        .add(&ExteriorVector::generator(g, n, i, a).scale(&int(f.get(j, i))))
                        .unwrap();
                }
                expected = expected.wedge(&img).unwrap();
            }
            assert_eq!(pullback_monomial(g, &f, mask), expected);
        }
    }
}

#[test]
fn realized_objects() {
    use crate::karoubi_kimura::{ext_power, sym_power, FormalObject};
    let n = FormalObject::whole(Word::power(0, 1));
    for g in 1..=2usize {
        let cat = RigidCategory::single(-2 * g as i64);
        let v = realize_object(g, &n).unwrap();
        assert_eq!((v.even_dim, v.odd_dim, v.superdim), (0, 2 * g, -2 * g as i64));
        for r in 0..=2 * g + 1 {
            let s = realize_object(g, &sym_power(&cat, &n, r).unwrap()).unwrap();
            let binom = (0..r).fold(1usize, |acc, i| acc * (2 * g - i.min(2 * g)) / (i + 1));
            assert_eq!(s.even_dim + s.odd_dim, binom, "S^{r} at g = {g}");
            assert_eq!(s.superdim, if r % 2 == 0 { binom as i64 } else { -(binom as i64) });
        }
        let l2 = realize_object(g, &ext_power(&cat, &n, 2).unwrap()).unwrap();
        assert_eq!(l2.superdim, (2 * g * (2 * g + 1) / 2) as i64);
    }
    let bad = FormalObject::whole(GeneratorTable::parse("N:-2,M:1").unwrap().parse_word("M").unwrap());
    assert!(realize_object(1, &bad).is_err());
}
