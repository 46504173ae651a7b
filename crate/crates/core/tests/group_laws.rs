use asai_core::finite_fields::{Field, FieldElement, FieldTower};
use asai_core::group_laws::{builtin, parse_group_dsl, validate_law, Family, GroupLaw, Polynomial};
use asai_core::Error;

type Matrix = Vec<Vec<FieldElement>>;

/// Strictly upper entries, ordered by distance from the diagonal, then row.
fn positions(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 1..n {
        for i in 0..n - k {
            out.push((i, i + k));
        }
    }
    out
}

fn to_matrix(f: &Field, n: usize, coords: &[FieldElement]) -> Matrix {
    let mut m = vec![vec![f.zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    for (&(i, j), c) in positions(n).iter().zip(coords) {
        m[i][j] = c.clone();
    }
    m
}

fn mat_mul(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

fn points(f: &Field, dim: usize) -> Vec<Vec<FieldElement>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                f.elements().map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

#[test]
fn ul_matches_matrix_multiplication() {
    for p in [2, 3] {
        let tower = FieldTower::new(p).unwrap();
        let f = tower.field(1).unwrap();
        for n in 2..=4 {
            let law = builtin(Family::Ul(n), p).unwrap();
            let dim = n * (n - 1) / 2;
            assert_eq!(law.dim(), dim);
            let pts = points(&f, dim);
            for a in &pts {
                let ma = to_matrix(&f, n, a);
                let inv = law.inverse(&f, a);
                assert_eq!(mat_mul(&f, &ma, &to_matrix(&f, n, &inv)), to_matrix(&f, n, &vec![f.zero(); dim]));
                for b in &pts {
                    let prod = law.multiply(&f, a, b);
                    assert_eq!(to_matrix(&f, n, &prod), mat_mul(&f, &ma, &to_matrix(&f, n, b)));
                }
            }
        }
    }
}

#[test]
fn ul3_over_f2_is_nonabelian_of_order_8() {
    let tower = FieldTower::new(2).unwrap();
    let f = tower.field(1).unwrap();
    let law = builtin(Family::Ul(3), 2).unwrap();
    let pts = points(&f, 3);
    assert_eq!(pts.len(), 8);
    assert!(pts.iter().any(|a| pts.iter().any(|b| law.multiply(&f, a, b) != law.multiply(&f, b, a))));
}

#[test]
fn ga_power_is_componentwise_addition() {
    let tower = FieldTower::new(3).unwrap();
    let f = tower.field(1).unwrap();
    let law = builtin(Family::GaPower(2), 3).unwrap();
    for a in points(&f, 2) {
        assert_eq!(law.inverse(&f, &a), a.iter().map(|c| f.neg(c)).collect::<Vec<_>>());
        for b in points(&f, 2) {
            let sum: Vec<_> = a.iter().zip(&b).map(|(x, y)| f.add(x, y)).collect();
            assert_eq!(law.multiply(&f, &a, &b), sum);
            assert_eq!(law.multiply(&f, &b, &a), sum);
        }
    }
}

#[test]
fn n2_is_noncommutative_over_f9() {
    let tower = FieldTower::new(3).unwrap();
    let f9 = tower.field(2).unwrap();
    let law = builtin(Family::N2, 3).unwrap();
    let a = vec![f9.generator(), f9.zero()];
    let b = vec![f9.one(), f9.zero()];
    let ab = law.multiply(&f9, &a, &b);
    let ba = law.multiply(&f9, &b, &a);
    assert_ne!(ab, ba);
    // (a,b)(a',b') = (a + a', b + b' + a a'^3)
    let t = f9.generator();
    assert_eq!(ab[1], t.clone());
    assert_eq!(ba[1], f9.pow(&t, 3));
}

#[test]
fn n2_inverse_formula() {
    for p in [2, 3, 5] {
        let tower = FieldTower::new(p).unwrap();
        let f = tower.field(2).unwrap();
        let law = builtin(Family::N2, p).unwrap();
        for a in points(&f, 2) {
            let expected = vec![f.neg(&a[0]), f.add(&f.neg(&a[1]), &f.pow(&a[0], p as u64 + 1))];
            assert_eq!(law.inverse(&f, &a), expected);
            assert_eq!(law.multiply(&f, &a, &expected), vec![f.zero(), f.zero()]);
        }
    }
}

#[test]
fn dsl_round_trips() {
    let text = "group n2 dim 2 char 3\nmul[1] = x1 + y1\nmul[2] = x2 + y2 + x1 * y1^3\n";
    assert_eq!(parse_group_dsl(text).unwrap(), builtin(Family::N2, 3).unwrap());
    for (family, p) in [(Family::Ul(4), 2), (Family::GaPower(3), 5), (Family::N2, 2), (Family::Ul(3), 7)] {
        let law = builtin(family, p).unwrap();
        let back = parse_group_dsl(&law.to_dsl()).unwrap();
        assert_eq!(back, law);
        assert_eq!(back.to_dsl(), law.to_dsl());
    }
}

#[test]
fn dsl_rejections() {
    let bad = "group g dim 2 char 3\nmul[1] = x1 + y1 + x2*y2\nmul[2] = x2 + y2\n";
    assert_eq!(
        parse_group_dsl(bad).unwrap_err(),
        Error::NotTriangular {
            coordinate: 1,
            depends_on: 2
        }
    );
    let bad = "group g dim 1 char 4\nmul[1] = x1 + y1\n";
    assert_eq!(parse_group_dsl(bad).unwrap_err(), Error::NotPrime(4));
    let bad = "group g dim 1 char 3\nmul[1] = x1 + y1 +\n";
    assert!(matches!(parse_group_dsl(bad).unwrap_err(), Error::Syntax { line: 3, column: 1, .. }));
    let bad = "group g dim 1 char 3\nmul[1] = x1 + * y1\n";
    assert!(matches!(parse_group_dsl(bad).unwrap_err(), Error::Syntax { line: 2, column: 15, .. }));
    let bad = "group g dim 2 char 3\nmul[1] = x1 + y1\nmul[2] = x2 + y2 + x1*y1 + x1\n";
    assert!(matches!(parse_group_dsl(bad).unwrap_err(), Error::InvalidLaw(_)));
}

#[test]
fn validation_examples() {
    let t2 = FieldTower::new(2).unwrap();
    let r = validate_law(&builtin(Family::Ul(3), 2).unwrap(), &t2, 2, 1000).unwrap();
    assert!(r.passed());
    assert!(r.checks.iter().filter(|c| c.level == 2).all(|c| c.exhaustive));

    let t3 = FieldTower::new(3).unwrap();
    let r = validate_law(&builtin(Family::N2, 3).unwrap(), &t3, 3, 1000).unwrap();
    assert!(r.passed());
    let assoc: Vec<_> = r.checks.iter().filter(|c| c.name == "associativity").collect();
    assert!(assoc[0].exhaustive && assoc[0].level == 3);
    assert!(assoc.iter().any(|c| c.level == 27 && c.cases >= 1000));

    // mul[2] = x2 + y2 + x1*y1 + x1 breaks the identity.
    let v = |i| Polynomial::var(2, 4, i);
    let mul = vec![v(0).add(&v(2)), v(1).add(&v(3)).add(&v(0).mul(&v(2))).add(&v(0))];
    let broken = GroupLaw::without_identity_check("broken", 2, mul).unwrap();
    let r = validate_law(&broken, &t2, 2, 100).unwrap();
    assert!(!r.passed());
    assert!(r.failed().any(|c| c.name.starts_with("identity")));
}

#[test]
fn frobenius_is_an_endomorphism_for_custom_laws() {
    let law = parse_group_dsl(
        "group w dim 3 char 3\nmul[1] = x1 + y1\nmul[2] = x2 + y2 + x1*y1^9\nmul[3] = x3 + y3 + x1^2*y2 - 2 x2*y1^3\n",
    );
    // Not every triangular polynomial law is associative; validation must say so.
    if let Ok(law) = law {
        let t3 = FieldTower::new(3).unwrap();
        let r = validate_law(&law, &t3, 3, 500).unwrap();
        assert!(r.checks.iter().filter(|c| c.name.starts_with("frobenius")).all(|c| c.passed));
    }
}
