use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::GroupLaw;
use crate::error::{Error, Result};
use crate::finite_fields::{log_p, Field, FieldElement, FieldTower};

/// Triple checks are exhaustive up to this many triples.
const EXHAUSTIVE_TRIPLES: u64 = 1_000_000;
/// Single-element checks are exhaustive up to this group order.
const EXHAUSTIVE_POINTS: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    /// Field size `q^k` the check ran over.
    pub level: u64,
    pub passed: bool,
    pub cases: u64,
    pub exhaustive: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub law: String,
    pub q: u64,
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Pt = Vec<FieldElement>;

fn show(pts: &[&Pt]) -> String {
    pts.iter()
        .map(|pt| {
            let coords: Vec<String> = pt.iter().map(|c| c.to_string()).collect();
            format!("({})", coords.join(", "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

struct Level<'a> {
    law: &'a GroupLaw,
    field: &'a Field,
    size: Option<u64>,
}

impl Level<'_> {
    fn point(&self, mut code: u64) -> Pt {
        let fs = self.field.size().unwrap();
        let mut coords: Vec<FieldElement> = (0..self.law.dim())
            .map(|_| {
                let c = self.field.from_ordinal(code % fs);
                code /= fs;
                c
            })
            .collect();
        coords.reverse();
        coords
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Pt {
        (0..self.law.dim()).map(|_| self.field.random(rng)).collect()
    }

    fn identity(&self) -> Pt {
        vec![self.field.zero(); self.law.dim()]
    }

    fn mul(&self, a: &Pt, b: &Pt) -> Pt {
        self.law.multiply(self.field, a, b)
    }

    fn frob(&self, a: &Pt, n: u32) -> Pt {
        a.iter().map(|c| self.field.frobenius_pow(c, n)).collect()
    }
}

/// Pointwise checks of the group axioms and of the Frobenius being an
/// endomorphism, over `G(F_q)` and sampled extension levels `F_{q^2}`,
/// `F_{q^3}`.
pub fn validate_law(
    law: &GroupLaw,
    tower: &FieldTower,
    q: u64,
    sample_budget: usize,
) -> Result<ValidationReport> {
    if tower.p() != law.p() {
        return Err(Error::NotPowerOfP { q, p: law.p() });
    }
    let n = log_p(q, law.p()).ok_or(Error::NotPowerOfP { q, p: law.p() })?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xa55_0c1a7);
    let mut checks = vec![identity_polynomial(law)];
    for k in 1..=3u32 {
        let field = tower.field(n * k)?;
        let size = field
            .size()
            .and_then(|s| s.checked_pow(law.dim() as u32));
        let level = Level {
            law,
            field: &field,
            size,
        };
        let level_q = q.pow(k);
        checks.push(identity_pointwise(&level, level_q, sample_budget, &mut rng));
        checks.push(associativity(&level, level_q, sample_budget, &mut rng));
        checks.push(inverses(&level, level_q, sample_budget, &mut rng));
        checks.push(frobenius_hom(&level, level_q, n, sample_budget, &mut rng));
    }
    Ok(ValidationReport {
        law: law.name().to_string(),
        q,
        checks,
    })
}

fn identity_polynomial(law: &GroupLaw) -> CheckOutcome {
    let res = law.check_identity();
    CheckOutcome {
        name: "identity (polynomial)".into(),
        level: 0,
        passed: res.is_ok(),
        cases: law.dim() as u64,
        exhaustive: true,
        counterexample: res.err().map(|e| e.to_string()),
    }
}

/// Runs `check` over all points (when `|G| <= limit`) or over samples.
#[allow(clippy::too_many_arguments)]
fn run_points(
    level: &Level<'_>,
    name: &str,
    level_q: u64,
    limit: u64,
    budget: usize,
    rng: &mut ChaCha8Rng,
    arity: u32,
    check: impl Fn(&[Pt]) -> bool,
) -> CheckOutcome {
    let exhaustive_cases = level.size.and_then(|s| s.checked_pow(arity)).filter(|&c| c <= limit);
    let mut failure = None;
    let mut cases = 0;
    if let (Some(total), Some(size)) = (exhaustive_cases, level.size) {
        for code in 0..total {
            let mut rest = code;
            let pts: Vec<Pt> = (0..arity)
                .map(|_| {
                    let pt = level.point(rest % size);
                    rest /= size;
                    pt
                })
                .collect();
            cases += 1;
            if !check(&pts) {
                failure = Some(show(&pts.iter().collect::<Vec<_>>()));
                break;
            }
        }
    } else {
        for _ in 0..budget {
            let pts: Vec<Pt> = (0..arity).map(|_| level.random(rng)).collect();
            cases += 1;
            if !check(&pts) {
                failure = Some(show(&pts.iter().collect::<Vec<_>>()));
                break;
            }
        }
    }
    CheckOutcome {
        name: name.into(),
        level: level_q,
        passed: failure.is_none(),
        cases,
        exhaustive: exhaustive_cases.is_some(),
        counterexample: failure,
    }
}

fn identity_pointwise(level: &Level<'_>, q: u64, budget: usize, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let e = level.identity();
    run_points(level, "identity", q, EXHAUSTIVE_POINTS, budget, rng, 1, |pts| {
        level.mul(&pts[0], &e) == pts[0] && level.mul(&e, &pts[0]) == pts[0]
    })
}

fn associativity(level: &Level<'_>, q: u64, budget: usize, rng: &mut ChaCha8Rng) -> CheckOutcome {
    run_points(level, "associativity", q, EXHAUSTIVE_TRIPLES, budget, rng, 3, |pts| {
        let (a, b, c) = (&pts[0], &pts[1], &pts[2]);
        level.mul(&level.mul(a, b), c) == level.mul(a, &level.mul(b, c))
    })
}

fn inverses(level: &Level<'_>, q: u64, budget: usize, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let e = level.identity();
    run_points(level, "inverse", q, EXHAUSTIVE_POINTS, budget, rng, 1, |pts| {
        let inv = level.law.inverse(level.field, &pts[0]);
        level.mul(&pts[0], &inv) == e && level.mul(&inv, &pts[0]) == e
    })
}

fn frobenius_hom(
    level: &Level<'_>,
    q: u64,
    n: u32,
    budget: usize,
    rng: &mut ChaCha8Rng,
) -> CheckOutcome {
    run_points(level, "frobenius homomorphism", q, EXHAUSTIVE_POINTS, budget, rng, 2, |pts| {
        let (a, b) = (&pts[0], &pts[1]);
        level.frob(&level.mul(a, b), n) == level.mul(&level.frob(a, n), &level.frob(b, n))
    })
}
