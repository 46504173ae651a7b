//! The finite groups `G(F_{q^m})`, their conjugacy classes and centralizers.

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::finite_fields::{log_p, Field, FieldElement, FieldId, FieldTower};
use crate::group_laws::GroupLaw;

/// A point of the group; all coordinates live in one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<FieldElement>,
}

impl Point {
    pub fn new(coords: Vec<FieldElement>) -> Result<Self> {
        let Some(first) = coords.first() else {
            return Err(Error::NotInGroup("a point needs at least one coordinate".into()));
        };
        if coords.iter().any(|c| c.field() != first.field()) {
            return Err(Error::NotInGroup("coordinates lie in different fields".into()));
        }
        Ok(Self { coords })
    }

    pub fn identity(field: &Field, dim: usize) -> Self {
        Self {
            coords: vec![field.zero(); dim],
        }
    }

    /// A point with coordinates in the prime field.
    pub fn from_prime(field: &Field, coords: &[u32]) -> Self {
        Self {
            coords: coords.iter().map(|&c| field.from_prime(c)).collect(),
        }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn field(&self) -> FieldId {
        self.coords[0].field()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn embed(&self, tower: &FieldTower, target: FieldId) -> Result<Point> {
        let coords = self
            .coords
            .iter()
            .map(|c| tower.embed(c, target))
            .collect::<Result<_>>()?;
        Ok(Point { coords })
    }

    pub fn restrict(&self, tower: &FieldTower, sub: FieldId) -> Result<Point> {
        let coords = self
            .coords
            .iter()
            .map(|c| tower.restrict(c, sub))
            .collect::<Result<_>>()?;
        Ok(Point { coords })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Group operations of a law on points over one field.
#[derive(Clone)]
pub struct GroupLevel<'a> {
    law: &'a GroupLaw,
    field: Arc<Field>,
}

impl<'a> GroupLevel<'a> {
    pub fn new(law: &'a GroupLaw, field: Arc<Field>) -> Self {
        Self { law, field }
    }

    pub fn at(law: &'a GroupLaw, tower: &FieldTower, degree: u32) -> Result<Self> {
        if tower.p() != law.p() {
            return Err(Error::IncompatibleFields {
                from: FieldId::new(law.p(), degree),
                to: FieldId::new(tower.p(), degree),
            });
        }
        Ok(Self::new(law, tower.field(degree)?))
    }

    pub fn law(&self) -> &'a GroupLaw {
        self.law
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn identity(&self) -> Point {
        Point::identity(&self.field, self.law.dim())
    }

    pub fn mul(&self, a: &Point, b: &Point) -> Point {
        Point {
            coords: self.law.multiply(&self.field, &a.coords, &b.coords),
        }
    }

    pub fn inv(&self, a: &Point) -> Point {
        Point {
            coords: self.law.inverse(&self.field, &a.coords),
        }
    }

    /// `h^{-1} g h`.
    pub fn conj(&self, g: &Point, h: &Point) -> Point {
        self.mul(&self.inv(h), &self.mul(g, h))
    }

    pub fn commutes(&self, a: &Point, b: &Point) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Coordinatewise `x -> x^{p^n}`.
    pub fn frobenius(&self, a: &Point, n: u32) -> Point {
        Point {
            coords: a.coords.iter().map(|c| self.field.frobenius_pow(c, n)).collect(),
        }
    }

    /// The Lang map `x F(x)^{-1}` for `F = (x -> x^{p^e})`.
    pub fn lang(&self, x: &Point, e: u32) -> Point {
        self.mul(x, &self.inv(&self.frobenius(x, e)))
    }

    /// The norm map on witnesses, `F(x)^{-1} x`.
    pub fn norm(&self, x: &Point, e: u32) -> Point {
        self.mul(&self.inv(&self.frobenius(x, e)), x)
    }
}

/// `G(F_{q^m})` with its elements in canonical order: coordinate 1 most
/// significant, each coordinate ordered by [`Field::ordinal`]. The identity
/// has ordinal 0.
pub struct FiniteGroupView<'a> {
    level: GroupLevel<'a>,
    tower: &'a FieldTower,
    q: u64,
    m: u32,
    /// `q^m = p^e`
    e: u32,
    field_size: u64,
    order: usize,
}

impl<'a> FiniteGroupView<'a> {
    pub fn level(&self) -> &GroupLevel<'a> {
        &self.level
    }

    pub fn law(&self) -> &'a GroupLaw {
        self.level.law
    }

    pub fn tower(&self) -> &'a FieldTower {
        self.tower
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.level.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Degree of `F_{q^m}` over `F_p`.
    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn element(&self, ordinal: usize) -> Point {
        let mut code = ordinal as u64;
        let mut coords: Vec<FieldElement> = (0..self.law().dim())
            .map(|_| {
                let c = self.field().from_ordinal(code % self.field_size);
                code /= self.field_size;
                c
            })
            .collect();
        coords.reverse();
        Point { coords }
    }

    pub fn elements(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.order).map(|i| self.element(i))
    }

    pub fn ordinal(&self, g: &Point) -> Result<usize> {
        if g.dim() != self.law().dim() || g.field() != self.field().id() {
            return Err(Error::NotInGroup(format!(
                "{g} is not a point of {} over {}",
                self.law().name(),
                self.field().id()
            )));
        }
        let f = self.field();
        Ok(g.coords
            .iter()
            .fold(0u64, |acc, c| acc * self.field_size + f.ordinal(c)) as usize)
    }

    /// Brings `g` to this level, from a subfield or from a larger field in
    /// which it happens to be rational.
    pub fn coerce(&self, g: &Point) -> Result<Point> {
        let (have, want) = (g.field().degree, self.e);
        if have == want {
            Ok(g.clone())
        } else if want % have == 0 {
            g.embed(self.tower, self.field().id())
        } else {
            g.restrict(self.tower, self.field().id())
                .map_err(|_| Error::NotInGroup(format!("{g} is not rational over {}", self.field().id())))
        }
    }

    /// The q-power Frobenius applied `j` times.
    pub fn frobenius(&self, g: &Point, j: u32) -> Point {
        let n = self.e / self.m;
        self.level.frobenius(g, n * j)
    }
}

/// Enumerates `G(F_{q^m})`.
pub fn enumerate<'a>(
    law: &'a GroupLaw,
    tower: &'a FieldTower,
    q: u64,
    m: u32,
    max_order: u64,
) -> Result<FiniteGroupView<'a>> {
    let n = log_p(q, law.p()).ok_or(Error::NotPowerOfP { q, p: law.p() })?;
    if m == 0 {
        return Err(Error::InvalidLaw("m must be positive".into()));
    }
    let e = n * m;
    let too_big = Error::ResourceLimit {
        what: "group order",
        value: u64::MAX,
        cap: max_order,
    };
    let field_size = (law.p() as u64).checked_pow(e).ok_or(too_big.clone())?;
    let order = field_size
        .checked_pow(law.dim() as u32)
        .ok_or(too_big)?;
    if order > max_order {
        return Err(Error::ResourceLimit {
            what: "group order",
            value: order,
            cap: max_order,
        });
    }
    let level = GroupLevel::at(law, tower, e)?;
    Ok(FiniteGroupView {
        level,
        tower,
        q,
        m,
        e,
        field_size,
        order: order as usize,
    })
}

/// Identifies the group a class table was computed for.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableKey {
    /// Canonical DSL print of the law.
    pub law: String,
    pub q: u64,
    pub m: u32,
}

impl TableKey {
    pub fn of(view: &FiniteGroupView<'_>) -> Self {
        Self {
            law: view.law().to_dsl(),
            q: view.q,
            m: view.m,
        }
    }
}

/// Conjugacy classes of a [`FiniteGroupView`], ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTable {
    key: TableKey,
    /// Sorted member ordinals per class; the first member is the representative.
    members: Vec<Vec<usize>>,
    class_of: Vec<u32>,
}

impl ClassTable {
    pub fn key(&self) -> &TableKey {
        &self.key
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }

    pub fn rep(&self, class: usize) -> usize {
        self.members[class][0]
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    pub fn size(&self, class: usize) -> usize {
        self.members[class].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn class_of(&self, ordinal: usize) -> usize {
        self.class_of[ordinal] as usize
    }

    /// Structural consistency: the classes partition `0..order`, each is
    /// sorted, and `class_of` agrees with the member lists.
    pub fn is_consistent(&self) -> bool {
        let mut seen = vec![false; self.class_of.len()];
        for (c, members) in self.members.iter().enumerate() {
            if members.is_empty() || !members.windows(2).all(|w| w[0] < w[1]) {
                return false;
            }
            for &g in members {
                if g >= seen.len() || seen[g] || self.class_of[g] as usize != c {
                    return false;
                }
                seen[g] = true;
            }
        }
        seen.iter().all(|&s| s) && self.members.windows(2).all(|w| w[0][0] < w[1][0])
    }
}

/// Groups up to this order keep all elements and inverses in memory while
/// expanding orbits.
const MATERIALIZE_LIMIT: usize = 1 << 18;

/// Conjugacy classes by explicit orbit expansion.
pub fn conjugacy_classes(view: &FiniteGroupView<'_>, exec: Execution) -> ClassTable {
    let n = view.order();
    let level = view.level();
    let cache: Option<(Vec<Point>, Vec<Point>)> = (n <= MATERIALIZE_LIMIT).then(|| {
        let elements: Vec<Point> = exec.map(n, |i| view.element(i));
        let inverses = exec.map(n, |i| level.inv(&elements[i]));
        (elements, inverses)
    });
    let conj = |g: &Point, h: usize| -> usize {
        let c = match &cache {
            Some((elements, inverses)) => level.mul(&inverses[h], &level.mul(g, &elements[h])),
            None => level.conj(g, &view.element(h)),
        };
        view.ordinal(&c).expect("conjugate stays in the group")
    };
    let mut class_of = vec![u32::MAX; n];
    let mut members = Vec::new();
    for g in 0..n {
        if class_of[g] != u32::MAX {
            continue;
        }
        let gp = view.element(g);
        let mut orbit: Vec<usize> = exec.map(n, |h| conj(&gp, h));
        orbit.sort_unstable();
        orbit.dedup();
        let idx = members.len() as u32;
        for &o in &orbit {
            class_of[o] = idx;
        }
        members.push(orbit);
    }
    ClassTable {
        key: TableKey::of(view),
        members,
        class_of,
    }
}

/// Ordinals of `Z(g)(F_{q^m})`.
pub fn centralizer(view: &FiniteGroupView<'_>, g: &Point, exec: Execution) -> Result<Vec<usize>> {
    let g = view.coerce(g)?;
    view.ordinal(&g)?;
    let level = view.level();
    Ok(exec.filter(view.order(), |h| level.commutes(&g, &view.element(h))))
}

/// Shape of `N -> |Z(g)(F_{q^{mN}})|`, read as `c * (q^{mN})^dim`.
///
/// Heuristic: both values are reported only when they are constant across
/// the whole window of consecutive `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthEstimate {
    pub dimension: Option<u32>,
    pub components: Option<u64>,
    pub heuristic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerGrowth {
    pub counts: Vec<(u32, u64)>,
    pub estimate: GrowthEstimate,
}

/// Counts `|Z(g) ∩ G(F_{q^{mN}})|` for each `N` in the range.
#[allow(clippy::too_many_arguments)]
pub fn centralizer_counts(
    law: &GroupLaw,
    tower: &FieldTower,
    g: &Point,
    q: u64,
    m: u32,
    range: RangeInclusive<u32>,
    max_order: u64,
    exec: Execution,
) -> Result<CentralizerGrowth> {
    let mut counts = Vec::new();
    for big_n in range {
        let view = enumerate(law, tower, q, m * big_n, max_order)?;
        let count = centralizer(&view, g, exec)?.len() as u64;
        counts.push((big_n, count));
    }
    let base = q.checked_pow(m).ok_or(Error::ResourceLimit {
        what: "field size",
        value: u64::MAX,
        cap: u64::MAX,
    })?;
    let estimate = estimate_growth(&counts, base);
    Ok(CentralizerGrowth { counts, estimate })
}

/// Reads dimension and component count off consecutive counts at field
/// sizes `base^N`.
pub fn estimate_growth(counts: &[(u32, u64)], base: u64) -> GrowthEstimate {
    let consecutive = counts.windows(2).all(|w| w[1].0 == w[0].0 + 1);
    let mut dims = counts.windows(2).map(|w| {
        let (a, b) = (w[0].1, w[1].1);
        if a == 0 || b % a != 0 {
            return None;
        }
        let mut ratio = b / a;
        let mut d = 0;
        while ratio > 1 && ratio % base == 0 {
            ratio /= base;
            d += 1;
        }
        (ratio == 1).then_some(d)
    });
    let dimension = match dims.next() {
        Some(Some(d)) if consecutive && dims.all(|x| x == Some(d)) => Some(d),
        _ => None,
    };
    let components = dimension.and_then(|d| {
        let mut comps = counts.iter().map(|&(n, c)| {
            let scale = base.checked_pow(n * d)?;
            (c % scale == 0).then(|| c / scale)
        });
        let first = comps.next()??;
        comps.all(|c| c == Some(first)).then_some(first)
    });
    GrowthEstimate {
        dimension,
        components,
        heuristic: true,
    }
}
