use asai_core::finite_fields::{Field, FieldElement, FieldId, FieldTower};
use proptest::prelude::*;

/// Every `(p, k)` with `p^k <= 81`.
fn small_fields() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p in (2u32..=81).filter(|&p| (2..p).all(|d| p % d != 0)) {
        let mut k = 1;
        while (p as u64).pow(k) <= 81 {
            out.push((p, k));
            k += 1;
        }
    }
    out
}

fn all(f: &Field) -> Vec<FieldElement> {
    f.elements().collect()
}

#[test]
fn field_axioms_exhaustive_up_to_81() {
    let fields = small_fields();
    assert_eq!(fields.len(), 22 + 10);
    for (p, k) in fields {
        let tower = FieldTower::new(p).unwrap();
        let f = tower.field(k).unwrap();
        let xs = all(&f);
        assert_eq!(xs.len() as u64, f.size().unwrap());
        let (zero, one) = (f.zero(), f.one());
        for a in &xs {
            assert_eq!(f.add(a, &zero), *a);
            assert_eq!(f.mul(a, &one), *a);
            assert_eq!(f.add(a, &f.neg(a)), zero);
            match f.inv(a) {
                Some(i) => assert!(f.mul(a, &i).is_one()),
                None => assert!(a.is_zero()),
            }
            for b in &xs {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                let ab = f.mul(a, b);
                let a_b = f.add(a, b);
                for c in &xs {
                    assert_eq!(f.mul(&ab, c), f.mul(a, &f.mul(b, c)));
                    assert_eq!(f.add(&a_b, c), f.add(a, &f.add(b, c)));
                    assert_eq!(f.mul(&a_b, c), f.add(&f.mul(a, c), &f.mul(b, c)));
                }
            }
        }
    }
}

#[test]
fn frobenius_is_an_automorphism_up_to_81() {
    for (p, k) in small_fields() {
        let tower = FieldTower::new(p).unwrap();
        let f = tower.field(k).unwrap();
        let xs = all(&f);
        let mut images: Vec<FieldElement> = xs.iter().map(|x| f.frobenius_p(x)).collect();
        for (x, fx) in xs.iter().zip(&images) {
            assert_eq!(*fx, f.pow(x, p as u64));
            for y in &xs {
                assert_eq!(f.frobenius_p(&f.mul(x, y)), f.mul(fx, &f.frobenius_p(y)));
                assert_eq!(f.frobenius_p(&f.add(x, y)), f.add(fx, &f.frobenius_p(y)));
            }
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), xs.len());
    }
}

#[test]
fn frobenius_power_fixes_its_level() {
    for (p, n, m) in [(2, 1, 3), (2, 2, 2), (3, 1, 2), (3, 2, 2), (5, 1, 2), (2, 3, 2)] {
        let tower = FieldTower::new(p).unwrap();
        let q = (p as u64).pow(n);
        let f = tower.field(n * m).unwrap();
        for x in f.elements() {
            let mut y = x.clone();
            for _ in 0..m {
                y = tower.frobenius(&y, q).unwrap();
            }
            assert_eq!(y, x);
        }
        // F_q itself is fixed by a single application.
        let fq = tower.field(n).unwrap();
        for x in fq.elements() {
            assert_eq!(tower.frobenius(&x, q).unwrap(), x);
        }
    }
}

#[test]
fn frobenius_moves_the_f9_generator() {
    let tower = FieldTower::new(3).unwrap();
    let f = tower.field(2).unwrap();
    let g = (0..9u64)
        .map(|i| f.from_ordinal(i))
        .find(|x| !x.is_zero() && (1..8).all(|k| !f.pow(x, k).is_one()))
        .unwrap();
    assert_ne!(tower.frobenius(&g, 3).unwrap(), g);
    assert_eq!(tower.frobenius(&g, 3).unwrap(), f.pow(&g, 3));
    assert!(tower.frobenius(&g, 4).is_err());
}

#[test]
fn make_field_is_idempotent() {
    let tower = FieldTower::new(3).unwrap();
    assert_eq!(tower.make_field(1).unwrap(), FieldId::new(3, 1));
    assert_eq!(tower.make_field(2).unwrap(), tower.make_field(2).unwrap());
    assert_eq!(tower.field(2).unwrap().size(), Some(9));
    let small = FieldTower::new(2).unwrap().with_max_degree(4);
    assert!(small.make_field(5).is_err());
    assert!(FieldTower::new(6).is_err());
}

fn check_triangle(p: u32, a: u32, b: u32, c: u32) {
    let tower = FieldTower::new(p).unwrap();
    let (fb, fc) = (tower.field(b).unwrap().id(), tower.field(c).unwrap().id());
    let fa = tower.field(a).unwrap();
    for x in fa.elements() {
        let direct = tower.embed(&x, fc).unwrap();
        let via = tower.embed(&tower.embed(&x, fb).unwrap(), fc).unwrap();
        assert_eq!(direct, via, "{x} along {a} -> {b} -> {c}");
        assert_eq!(tower.restrict(&direct, fa.id()).unwrap(), x);
    }
}

#[test]
fn embedding_triangles_for_degree_six() {
    for p in [2, 3] {
        for (a, b, c) in [(1, 2, 6), (1, 3, 6), (2, 6, 6), (1, 1, 6), (2, 2, 6), (3, 6, 12), (2, 6, 12), (2, 4, 12)] {
            check_triangle(p, a, b, c);
        }
    }
}

#[test]
fn embeddings_are_ring_homomorphisms() {
    for (p, a, c) in [(2, 2, 6), (2, 3, 6), (3, 2, 6), (3, 3, 6), (2, 1, 6), (5, 2, 4)] {
        let tower = FieldTower::new(p).unwrap();
        let fa = tower.field(a).unwrap();
        let fc = tower.field(c).unwrap();
        let e = |x: &FieldElement| tower.embed(x, fc.id()).unwrap();
        let xs = all(&fa);
        let mut images: Vec<_> = xs.iter().map(e).collect();
        for x in &xs {
            for y in &xs {
                assert_eq!(e(&fa.mul(x, y)), fc.mul(&e(x), &e(y)));
                assert_eq!(e(&fa.add(x, y)), fc.add(&e(x), &e(y)));
            }
        }
        for k in 0..p {
            assert_eq!(e(&fa.from_prime(k)), fc.from_prime(k));
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), xs.len());
    }
}

#[test]
fn embedding_examples() {
    let t3 = FieldTower::new(3).unwrap();
    let f9 = t3.field(2).unwrap();
    assert!(t3.embed(&t3.field(1).unwrap().zero(), f9.id()).unwrap().is_zero());
    assert!(t3.embed(&f9.one(), FieldId::new(3, 3)).is_err());

    let t2 = FieldTower::new(2).unwrap();
    let f64 = t2.field(6).unwrap();
    assert!(t2.embed(&t2.field(1).unwrap().one(), f64.id()).unwrap().is_one());
    let f4 = t2.field(2).unwrap();
    let g = f4.generator();
    let h = t2.embed(&g, f64.id()).unwrap();
    assert!(!h.is_one());
    assert!(f64.mul(&h, &f64.mul(&h, &h)).is_one());
}

#[test]
fn trace_examples() {
    let t3 = FieldTower::new(3).unwrap();
    let f3 = t3.field(1).unwrap();
    let f9 = t3.field(2).unwrap();
    let f27 = t3.field(3).unwrap();
    // A root of t^2 - t - 1 in F_9: its conjugates sum to 1.
    let root = f9
        .elements()
        .find(|x| {
            let v = f9.sub(&f9.sub(&f9.square(x), x), &f9.one());
            v.is_zero()
        })
        .unwrap();
    assert_eq!(t3.trace_to(&root, f3.id()).unwrap(), f3.one());
    // Subfield elements: relative degree times x.
    let two = t3.embed(&f3.from_prime(2), f27.id()).unwrap();
    assert_eq!(t3.trace_to(&two, f3.id()).unwrap(), f3.zero());
    let two9 = t3.embed(&f3.from_prime(2), f9.id()).unwrap();
    assert_eq!(t3.trace_to(&two9, f3.id()).unwrap(), f3.from_prime(1));
    assert!(t3.trace_to(&f9.one(), FieldId::new(3, 3)).is_err());
}

fn brute_force_solutions(tower: &FieldTower, level: u32, c: &FieldElement, q: u64, m: u32) -> Vec<FieldElement> {
    let f = tower.field(level).unwrap();
    let c = tower.embed(c, f.id()).unwrap();
    let qm = q.pow(m);
    f.elements()
        .filter(|t| f.sub(&f.pow(t, qm), t) == c)
        .collect()
}

#[test]
fn artin_schreier_examples() {
    let t2 = FieldTower::new(2).unwrap();
    let f2 = t2.field(1).unwrap();
    let (t, id) = t2.artin_schreier_solve(&f2.zero(), 2, 1).unwrap();
    assert!(t.is_zero());
    assert_eq!(id, f2.id());
    let (t, id) = t2.artin_schreier_solve(&f2.one(), 2, 1).unwrap();
    assert_eq!(id.degree, 2);
    assert!(brute_force_solutions(&t2, 1, &f2.one(), 2, 1).is_empty());
    assert!(brute_force_solutions(&t2, 2, &f2.one(), 2, 1).contains(&t));

    let t3 = FieldTower::new(3).unwrap();
    let f3 = t3.field(1).unwrap();
    let (t, id) = t3.artin_schreier_solve(&f3.one(), 3, 1).unwrap();
    assert_eq!(id.degree, 3);
    assert!(brute_force_solutions(&t3, 1, &f3.one(), 3, 1).is_empty());
    assert!(brute_force_solutions(&t3, 3, &f3.one(), 3, 1).contains(&t));
}

/// Solution level, least solution, and the full solution set, all against
/// enumeration.
fn check_artin_schreier(p: u32, n: u32, m: u32, c_level: u32) {
    let tower = FieldTower::new(p).unwrap();
    let q = (p as u64).pow(n);
    let fc = tower.field(c_level).unwrap();
    for c in fc.elements() {
        let (t, id) = tower.artin_schreier_solve(&c, q, m).unwrap();
        let f = tower.field(id.degree).unwrap();
        let ce = tower.embed(&c, id).unwrap();
        assert_eq!(f.sub(&f.pow(&t, q.pow(m)), &t), ce);
        let mut level = c_level * (n * m) / asai_core::finite_fields::gcd(c_level, n * m);
        while level < id.degree {
            assert!(brute_force_solutions(&tower, level, &c, q, m).is_empty());
            level *= p;
        }
        let sols = brute_force_solutions(&tower, id.degree, &c, q, m);
        assert_eq!(sols.iter().min(), Some(&t));
        assert_eq!(sols.len() as u64, q.pow(m));
        let base = tower.field(n * m).unwrap();
        let mut coset: Vec<_> = base
            .elements()
            .map(|u| f.add(&t, &tower.embed(&u, id).unwrap()))
            .collect();
        coset.sort();
        assert_eq!(coset, sols);
    }
}

#[test]
fn artin_schreier_against_enumeration() {
    check_artin_schreier(2, 1, 1, 1);
    check_artin_schreier(2, 1, 1, 2);
    check_artin_schreier(2, 1, 2, 2);
    check_artin_schreier(2, 2, 1, 2);
    check_artin_schreier(2, 1, 1, 3);
    check_artin_schreier(3, 1, 1, 1);
    check_artin_schreier(3, 1, 1, 2);
    check_artin_schreier(3, 1, 2, 1);
    check_artin_schreier(5, 1, 1, 1);
}

#[test]
fn artin_schreier_respects_the_cap() {
    let tower = FieldTower::new(3).unwrap().with_max_degree(2);
    let one = tower.field(1).unwrap().one();
    assert!(matches!(
        tower.artin_schreier_solve(&one, 3, 1),
        Err(asai_core::Error::ResourceLimit { .. })
    ));
}

fn element_strategy(size: u64) -> impl Strategy<Value = u64> {
    0..size
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn large_field_arithmetic(a in element_strategy(3u64.pow(7)), b in element_strategy(3u64.pow(7)), c in element_strategy(3u64.pow(7))) {
        let tower = FieldTower::new(3).unwrap();
        let f = tower.field(7).unwrap();
        let (a, b, c) = (f.from_ordinal(a), f.from_ordinal(b), f.from_ordinal(c));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&f.add(&a, &b), &c), f.add(&f.mul(&a, &c), &f.mul(&b, &c)));
        if let Some(i) = f.inv(&a) {
            prop_assert!(f.mul(&a, &i).is_one());
        }
    }

    #[test]
    fn trace_is_additive(a in element_strategy(1 << 12), b in element_strategy(1 << 12)) {
        let tower = FieldTower::new(2).unwrap();
        let f = tower.field(12).unwrap();
        let (a, b) = (f.from_ordinal(a), f.from_ordinal(b));
        for sub in [1, 2, 3, 4, 6] {
            let id = FieldId::new(2, sub);
            let sum = tower.field(sub).unwrap().add(&tower.trace_to(&a, id).unwrap(), &tower.trace_to(&b, id).unwrap());
            prop_assert_eq!(tower.trace_to(&f.add(&a, &b), id).unwrap(), sum);
        }
    }

    #[test]
    fn artin_schreier_reverifies(c in element_strategy(1 << 8), m in 1u32..4) {
        let tower = FieldTower::new(2).unwrap();
        let f = tower.field(8).unwrap();
        let c = f.from_ordinal(c);
        let (t, id) = tower.artin_schreier_solve(&c, 2, m).unwrap();
        let big = tower.field(id.degree).unwrap();
        let lhs = big.sub(&big.pow(&t, 2u64.pow(m)), &t);
        prop_assert_eq!(lhs, tower.embed(&c, id).unwrap());
    }
}
