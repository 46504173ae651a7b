use asai_core::asai::{norm_image, norm_map};
use asai_core::easiness::*;
use asai_core::finite_fields::FieldTower;
use asai_core::group_laws::{builtin, Family};
use asai_core::points::{conjugacy_classes, enumerate, Point};
use asai_core::{Execution, Limits};

const EXEC: Execution = Execution::Parallel;

fn scan(family: Family, p: u32, q: u64, max_m: u32) -> EasinessVerdict {
    let law = builtin(family, p).unwrap();
    let tower = FieldTower::new(p).unwrap();
    easiness_scan(&law, &tower, q, max_m, &Limits::default(), EXEC).unwrap()
}

#[test]
fn scan_examples() {
    let v = scan(Family::N2, 3, 3, 3);
    let f3 = FieldTower::new(3).unwrap().field(1).unwrap();
    match &v.verdict {
        Verdict::NotEasy { witness, image, m } => {
            assert_eq!(*witness, Point::from_prime(&f3, &[1, 0]));
            assert_eq!(*image, Point::from_prime(&f3, &[1, 2]));
            assert_eq!(*m, 1);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(v.evidence, vec![(1, false)]);

    assert_eq!(scan(Family::Ul(3), 2, 2, 3).verdict, Verdict::EasyUpTo(3));
    let v = scan(Family::GaPower(2), 2, 2, 5);
    assert_eq!(v.verdict, Verdict::EasyUpTo(5));
    assert_eq!(v.evidence, (1..=5).map(|m| (m, true)).collect::<Vec<_>>());
}

#[test]
fn not_easy_witness_is_reproducible() {
    let law = builtin(Family::N2, 3).unwrap();
    let tower = FieldTower::new(3).unwrap();
    let v = easiness_scan(&law, &tower, 3, 2, &Limits::default(), EXEC).unwrap();
    let Verdict::NotEasy { witness, image, m } = v.verdict else { panic!() };
    let view = enumerate(&law, &tower, 3, m, 1 << 20).unwrap();
    let table = conjugacy_classes(&view, Execution::Sequential);
    let r = norm_map(&view, &table, &Limits::default(), Execution::Sequential).unwrap();
    let c = table.class_of(view.ordinal(&witness).unwrap());
    assert_ne!(r.perm[c], c);
    assert_eq!(r.perm[c], table.class_of(view.ordinal(&image).unwrap()));
    let (_, again) = norm_image(&view, &witness, &Limits::default()).unwrap();
    assert_eq!(again, image);
}

#[test]
fn scan_hits_the_cap() {
    let law = builtin(Family::Ul(3), 3).unwrap();
    let tower = FieldTower::new(3).unwrap();
    let limits = Limits { max_group_order: 1000, max_extension: None };
    let v = easiness_scan(&law, &tower, 3, 3, &limits, EXEC).unwrap();
    assert!(matches!(v.verdict, Verdict::Inconclusive { reached_m: 2, .. }));
    assert_eq!(v.evidence, vec![(1, true), (2, true)]);
}

fn crosscheck(family: Family, p: u32, q: u64, max_m: u32) -> ConsistencyReport {
    let law = builtin(family, p).unwrap();
    let tower = FieldTower::new(p).unwrap();
    easiness_crosscheck(&law, &tower, q, max_m, &Limits::default(), EXEC).unwrap()
}

#[test]
fn crosscheck_n2() {
    let r = crosscheck(Family::N2, 3, 3, 1);
    assert!(r.is_consistent());
    assert_eq!(r.label_status, LabelStatus::Confirmed);
    let level = &r.levels[0];
    assert_eq!(level.classes.len(), 9);
    for c in &level.classes {
        let a_is_zero = c.rep.starts_with("(0,");
        assert_eq!(c.fixed, a_is_zero, "{}", c.rep);
        assert_eq!(c.witness, a_is_zero);
        assert!(c.agree);
    }
}

#[test]
fn crosscheck_easy_families() {
    let r = crosscheck(Family::Ul(3), 2, 2, 2);
    assert!(r.is_consistent());
    assert_eq!(r.label_status, LabelStatus::Confirmed);
    assert!(r.levels.iter().flat_map(|l| &l.classes).all(|c| c.fixed && c.witness));
    assert_eq!(r.verdict.verdict, Verdict::EasyUpTo(2));

    let r = crosscheck(Family::GaPower(1), 2, 2, 3);
    assert!(r.is_consistent());
    assert_eq!(r.verdict.verdict, Verdict::EasyUpTo(3));
}

#[test]
fn n2_in_characteristic_two_is_exploratory() {
    let r = crosscheck(Family::N2, 2, 2, 3);
    assert_eq!(r.label.label, Label::Unknown);
    assert_eq!(r.label_status, LabelStatus::Exploratory);
    assert_eq!(r.inconsistencies, 0);
}

#[test]
fn n2_norm_map_closed_form_in_every_characteristic() {
    // second coordinate of x^-1 g x is b + a s^p - s a^p = b - a^2 when
    // a lies in F_p and s - s^p = a
    for p in [2u32, 3, 5, 7] {
        let law = builtin(Family::N2, p).unwrap();
        let tower = FieldTower::new(p).unwrap();
        let view = enumerate(&law, &tower, p as u64, 1, 1 << 20).unwrap();
        let table = conjugacy_classes(&view, EXEC);
        let r = norm_map(&view, &table, &Limits::default(), EXEC).unwrap();
        for c in 0..table.len() {
            let g = view.element(table.rep(c));
            let a = g.coords()[0].as_prime().unwrap();
            let b = g.coords()[1].as_prime().unwrap();
            let shift = (a * a) % p;
            let expected = Point::from_prime(view.field(), &[a, (b + p - shift) % p]);
            assert_eq!(r.images[c], expected);
        }
        let report = crosscheck(Family::N2, p, p as u64, 1);
        assert_eq!(report.inconsistencies, 0);
        let expected = if p == 2 { LabelStatus::Exploratory } else { LabelStatus::Confirmed };
        assert_eq!(report.label_status, expected);
        assert!(matches!(report.verdict.verdict, Verdict::NotEasy { m: 1, .. }));
    }
}
