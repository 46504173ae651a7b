//! Solving the Lang equation `x F^m(x)^{-1} = g` for `g` in `G(F_{q^m})`.

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::finite_fields::{lcm, log_p, FieldId, FieldTower};
use crate::group_laws::GroupLaw;
use crate::points::{enumerate, GroupLevel, Point};

/// `x` with `x F^m(x)^{-1} = g`; `x` is rational over `F_{q^{mN}}` with
/// `N = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LangWitness {
    pub g: Point,
    pub x: Point,
    pub n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteForceOutcome {
    Found(LangWitness),
    /// No witness over `F_{q^{mN}}` for any `N <= searched_up_to`. Says
    /// nothing about larger `N`.
    NotFound { searched_up_to: u32 },
}

/// Degree over `F_p` of `F_{q^m}`.
pub(crate) fn frobenius_degree(law: &GroupLaw, q: u64, m: u32) -> Result<u32> {
    let n = log_p(q, law.p()).ok_or(Error::NotPowerOfP { q, p: law.p() })?;
    Ok(n * m)
}

fn at_level(tower: &FieldTower, g: &Point, degree: u32) -> Result<Point> {
    let id = FieldId::new(tower.p(), degree);
    if degree.is_multiple_of(g.field().degree) {
        g.embed(tower, id)
    } else {
        g.restrict(tower, id)
    }
}

/// Solves the Lang equation one coordinate at a time.
///
/// For a triangular law, coordinate `i` of `x F^m(x)^{-1}` is
/// `t_i - t_i^{q^m}` plus a term in the already solved `t_j`, `j < i`. Each
/// step is therefore an Artin-Schreier equation `t^{q^m} - t = c`, which may
/// extend the field by a factor `p`.
pub fn lang_solve_triangular(
    law: &GroupLaw,
    tower: &FieldTower,
    g: &Point,
    q: u64,
    m: u32,
    max_extension: u32,
) -> Result<LangWitness> {
    let e = frobenius_degree(law, q, m)?;
    if g.dim() != law.dim() {
        return Err(Error::NotInGroup(format!("{g} has the wrong dimension")));
    }
    let g_base = at_level(tower, g, e)
        .map_err(|_| Error::NotInGroup(format!("{g} is not rational over F_(q^m)")))?;
    let mut level = GroupLevel::at(law, tower, e)?;
    let mut target = g_base.clone();
    let mut x = level.identity();
    for i in 0..law.dim() {
        let partial = level.lang(&x, e);
        let field = level.field().clone();
        let c = field.sub(&partial.coords()[i], &target.coords()[i]);
        let (t, fid) = tower.artin_schreier_solve(&c, q, m)?;
        let current = level.field().degree();
        if fid.degree != current {
            if fid.degree / e > max_extension {
                return Err(Error::ResourceLimit {
                    what: "Lang extension multiplier",
                    value: (fid.degree / e) as u64,
                    cap: max_extension as u64,
                });
            }
            level = GroupLevel::at(law, tower, fid.degree)?;
            x = x.embed(tower, fid)?;
            target = target.embed(tower, fid)?;
        }
        let mut coords = x.coords().to_vec();
        coords[i] = t;
        x = Point::new(coords)?;
    }
    if level.lang(&x, e) != target {
        return Err(Error::Internal(format!("triangular Lang solve failed for {g}")));
    }
    let n = level.field().degree() / e;
    Ok(LangWitness { g: g_base, x, n })
}

/// Exhaustive search over `G(F_{q^{mN}})` for `N = 1, 2, ..., cap`; returns
/// the canonically least witness at the least `N` that has one.
#[allow(clippy::too_many_arguments)]
pub fn lang_solve_bruteforce(
    law: &GroupLaw,
    tower: &FieldTower,
    g: &Point,
    q: u64,
    m: u32,
    cap: u32,
    max_order: u64,
    exec: Execution,
) -> Result<BruteForceOutcome> {
    let e = frobenius_degree(law, q, m)?;
    let g_base = at_level(tower, g, e)
        .map_err(|_| Error::NotInGroup(format!("{g} is not rational over F_(q^m)")))?;
    for big_n in 1..=cap {
        let view = match enumerate(law, tower, q, m * big_n, max_order) {
            Ok(v) => v,
            Err(Error::ResourceLimit { .. }) => {
                return Ok(BruteForceOutcome::NotFound {
                    searched_up_to: big_n - 1,
                })
            }
            Err(err) => return Err(err),
        };
        let target = g_base.embed(tower, view.field().id())?;
        let level = view.level();
        if let Some(i) = exec.find_first(view.order(), |i| level.lang(&view.element(i), e) == target) {
            return Ok(BruteForceOutcome::Found(LangWitness {
                g: g_base,
                x: view.element(i),
                n: big_n,
            }));
        }
    }
    Ok(BruteForceOutcome::NotFound { searched_up_to: cap })
}

/// Re-evaluates `x F^m(x)^{-1}` and compares with `g` over a common field.
pub fn verify_witness(
    law: &GroupLaw,
    tower: &FieldTower,
    w: &LangWitness,
    q: u64,
    m: u32,
) -> Result<bool> {
    let e = frobenius_degree(law, q, m)?;
    if w.x.dim() != law.dim() || w.g.dim() != law.dim() {
        return Ok(false);
    }
    let degree = lcm(lcm(w.x.field().degree, w.g.field().degree), e);
    let level = GroupLevel::at(law, tower, degree)?;
    let id = level.field().id();
    let x = w.x.embed(tower, id)?;
    let g = w.g.embed(tower, id)?;
    Ok(level.lang(&x, e) == g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_laws::{builtin, Family};

    #[test]
    fn identity_has_trivial_witness() {
        let tower = FieldTower::new(3).unwrap();
        let law = builtin(Family::N2, 3).unwrap();
        let f = tower.field(1).unwrap();
        let w = lang_solve_triangular(&law, &tower, &Point::identity(&f, 2), 3, 1, 9).unwrap();
        assert!(w.x.is_identity());
        assert_eq!(w.n, 1);
    }

    #[test]
    fn extension_cap_is_enforced() {
        let tower = FieldTower::new(3).unwrap();
        let law = builtin(Family::GaPower(1), 3).unwrap();
        let f = tower.field(1).unwrap();
        let g = Point::from_prime(&f, &[1]);
        assert!(matches!(
            lang_solve_triangular(&law, &tower, &g, 3, 1, 2),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
