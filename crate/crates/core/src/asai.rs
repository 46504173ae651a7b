//! The norm map `N_1` on conjugacy classes of `G(F_{q^m})`, the twisting
//! operator it induces on class functions, twisted conjugacy, and
//! centralizer witnesses `z` with `z^{-1} F^m(z) = g`.

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::finite_fields::{lcm, FieldTower};
use crate::group_laws::GroupLaw;
use crate::lang::{frobenius_degree, lang_solve_triangular, LangWitness};
use crate::limits::Limits;
use crate::points::{conjugacy_classes, enumerate, ClassTable, FiniteGroupView, GroupLevel, Point, TableKey};

/// `N_1` on the classes of one table.
#[derive(Clone, Debug)]
pub struct NormMapResult {
    pub table: ClassTable,
    /// `perm[c]` is the class of `N_1(rep(c))`.
    pub perm: Vec<usize>,
    pub witnesses: Vec<LangWitness>,
    /// `N_1(rep(c))` as a point of `G(F_{q^m})`.
    pub images: Vec<Point>,
}

impl NormMapResult {
    pub fn moved_classes(&self) -> Vec<usize> {
        (0..self.perm.len()).filter(|&c| self.perm[c] != c).collect()
    }

    pub fn fixed(&self, class: usize) -> bool {
        self.perm[class] == class
    }
}

/// Lang witness for `g` and the norm image `x^{-1} g x = F^m(x)^{-1} x`,
/// brought back to `G(F_{q^m})`.
pub fn norm_image(view: &FiniteGroupView<'_>, g: &Point, limits: &Limits) -> Result<(LangWitness, Point)> {
    let law = view.law();
    let tower = view.tower();
    let g = view.coerce(g)?;
    let cap = limits.extension_cap(law.p(), law.dim());
    let w = lang_solve_triangular(law, tower, &g, view.q(), view.m(), cap)?;
    let level = GroupLevel::at(law, tower, w.x.field().degree)?;
    let g_big = g.embed(tower, w.x.field())?;
    let conj = level.conj(&g_big, &w.x);
    if conj != level.norm(&w.x, view.e()) {
        return Err(Error::Internal(format!(
            "x^-1 g x differs from F^m(x)^-1 x for g = {g}"
        )));
    }
    let image = conj.restrict(tower, view.field().id()).map_err(|_| {
        Error::Internal(format!("norm image of {g} is not rational over F_(q^m)"))
    })?;
    Ok((w, image))
}

/// Computes `N_1` on every class representative.
pub fn norm_map(
    view: &FiniteGroupView<'_>,
    table: &ClassTable,
    limits: &Limits,
    exec: Execution,
) -> Result<NormMapResult> {
    if table.key() != &TableKey::of(view) {
        return Err(Error::TableMismatch);
    }
    let per_class: Vec<Result<(LangWitness, Point, usize)>> = exec.map(table.len(), |c| {
        let g = view.element(table.rep(c));
        let (w, image) = norm_image(view, &g, limits)?;
        let class = table.class_of(view.ordinal(&image)?);
        Ok((w, image, class))
    });
    let mut witnesses = Vec::with_capacity(table.len());
    let mut images = Vec::with_capacity(table.len());
    let mut perm = Vec::with_capacity(table.len());
    for r in per_class {
        let (w, image, class) = r?;
        witnesses.push(w);
        images.push(image);
        perm.push(class);
    }
    let mut hit = vec![false; perm.len()];
    for &c in &perm {
        if std::mem::replace(&mut hit[c], true) {
            return Err(Error::Internal("norm map is not a bijection on classes".into()));
        }
    }
    Ok(NormMapResult {
        table: table.clone(),
        perm,
        witnesses,
        images,
    })
}

/// `N_1` fixes every class, i.e. its pullback is the identity on class
/// functions (class indicator functions separate classes).
pub fn is_asai_trivial(r: &NormMapResult) -> bool {
    r.perm.iter().enumerate().all(|(c, &d)| c == d)
}

/// Order of a permutation: lcm of its cycle lengths.
pub fn perm_order(perm: &[usize]) -> u64 {
    let mut seen = vec![false; perm.len()];
    let mut order = 1u64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            c = perm[c];
            len += 1;
        }
        order = order / gcd_u64(order, len as u64) * len as u64;
    }
    order
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// A function on the classes of one table, with exact rational values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    key: TableKey,
    values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn from_values(table: &ClassTable, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != table.len() {
            return Err(Error::TableMismatch);
        }
        Ok(Self {
            key: table.key().clone(),
            values,
        })
    }

    pub fn from_integers(table: &ClassTable, values: &[i64]) -> Result<Self> {
        Self::from_values(
            table,
            values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(),
        )
    }

    pub fn constant(table: &ClassTable, value: BigRational) -> Self {
        Self {
            key: table.key().clone(),
            values: vec![value; table.len()],
        }
    }

    /// Indicator function of one class.
    pub fn delta(table: &ClassTable, class: usize) -> Self {
        let mut values = vec![BigRational::zero(); table.len()];
        values[class] = BigRational::one();
        Self {
            key: table.key().clone(),
            values,
        }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn key(&self) -> &TableKey {
        &self.key
    }
}

/// `(Θ f)(c) = f(perm(c))`, the pullback of `f` along `N_1`.
pub fn asai_apply(r: &NormMapResult, f: &ClassFunction) -> Result<ClassFunction> {
    if f.key != *r.table.key() || f.values.len() != r.perm.len() {
        return Err(Error::TableMismatch);
    }
    Ok(ClassFunction {
        key: f.key.clone(),
        values: r.perm.iter().map(|&d| f.values[d].clone()).collect(),
    })
}

/// `<f1 | f2> = sum over group elements of f1(g) f2(g)`; the scalars are
/// rational, so conjugation is trivial.
pub fn inner_product(f1: &ClassFunction, f2: &ClassFunction, table: &ClassTable) -> Result<BigRational> {
    if f1.key != *table.key() || f2.key != *table.key() || f1.values.len() != table.len() {
        return Err(Error::TableMismatch);
    }
    Ok(f1
        .values
        .iter()
        .zip(&f2.values)
        .enumerate()
        .fold(BigRational::zero(), |acc, (c, (a, b))| {
            acc + a * b * BigRational::from_integer(BigInt::from(table.size(c)))
        }))
}

/// A partition of `0..n`, classes ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Orbits of twisted conjugation `g -> endo(h)^{-1} g h` on a finite group
/// given by its multiplication and inverse on indices `0..n`.
///
/// `endo` returns `None` when an image falls outside the set.
pub fn twisted_classes<M, I, F>(n: usize, mul: M, inv: I, endo: F, exec: Execution) -> Result<Partition>
where
    M: Fn(usize, usize) -> usize + Sync + Send,
    I: Fn(usize) -> usize + Sync + Send,
    F: Fn(usize) -> Option<usize> + Sync + Send,
{
    let images: Vec<Option<usize>> = exec.map(n, &endo);
    let twisted_inv: Vec<usize> = images
        .into_iter()
        .map(|i| i.map(&inv).ok_or(Error::NotClosed))
        .collect::<Result<_>>()?;
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for g in 0..n {
        if class_of[g] != usize::MAX {
            continue;
        }
        let mut orbit = exec.map(n, |h| mul(twisted_inv[h], mul(g, h)));
        orbit.sort_unstable();
        orbit.dedup();
        for &o in &orbit {
            class_of[o] = classes.len();
        }
        classes.push(orbit);
    }
    Ok(Partition { classes, class_of })
}

/// Twisted classes of `G(F_{q^m})` for the `j`-th power of the q-Frobenius
/// (`j = 0` gives ordinary conjugacy).
pub fn twisted_classes_in(view: &FiniteGroupView<'_>, j: u32, exec: Execution) -> Result<Partition> {
    let level = view.level();
    let ord = |p: &Point| view.ordinal(p).expect("closed under the group law");
    twisted_classes(
        view.order(),
        |a, b| ord(&level.mul(&view.element(a), &view.element(b))),
        |a| ord(&level.inv(&view.element(a))),
        |a| view.ordinal(&view.frobenius(&view.element(a), j)).ok(),
        exec,
    )
}

/// `z` in `Z(g)` with `z^{-1} F^m(z) = g`, built as `z = (x y)^{-1}` from
/// the Lang witness `x` of `g` and some `y` in `G(F_{q^m})` with
/// `y^{-1} N_1(g) y = g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerWitness {
    pub g: Point,
    pub y: Point,
    pub z: Point,
    /// `z` is rational over `F_{q^{mN}}`.
    pub n: u32,
}

/// Finds the witness for class `class`, or `None` when no `y` in
/// `G(F_{q^m})` conjugates `N_1(g)` back to `g`, in which case no `z`
/// exists at all. Independent of the class table: the search conjugates
/// points directly.
pub fn centralizer_witness(
    view: &FiniteGroupView<'_>,
    r: &NormMapResult,
    class: usize,
    exec: Execution,
) -> Result<Option<CentralizerWitness>> {
    let level = view.level();
    let g = view.element(r.table.rep(class));
    let image = &r.images[class];
    let Some(yi) = exec.find_first(view.order(), |y| level.conj(image, &view.element(y)) == g) else {
        return Ok(None);
    };
    let w = &r.witnesses[class];
    let tower = view.tower();
    let big = GroupLevel::at(view.law(), tower, w.x.field().degree)?;
    let y = view.element(yi);
    let z = big.inv(&big.mul(&w.x, &y.embed(tower, w.x.field())?));
    let witness = CentralizerWitness { g, y, z, n: w.n };
    if !verify_centralizer_witness(view.law(), tower, &witness, view.q(), view.m())? {
        return Err(Error::Internal(format!(
            "centralizer witness for {} failed verification",
            witness.g
        )));
    }
    Ok(Some(witness))
}

/// Re-checks `z g = g z` and `z^{-1} F^m(z) = g` over a common field.
pub fn verify_centralizer_witness(
    law: &GroupLaw,
    tower: &FieldTower,
    w: &CentralizerWitness,
    q: u64,
    m: u32,
) -> Result<bool> {
    let e = frobenius_degree(law, q, m)?;
    let degree = lcm(lcm(w.z.field().degree, w.g.field().degree), e);
    let level = GroupLevel::at(law, tower, degree)?;
    let id = level.field().id();
    let z = w.z.embed(tower, id)?;
    let g = w.g.embed(tower, id)?;
    let twisted = level.mul(&level.inv(&z), &level.frobenius(&z, e));
    Ok(level.commutes(&z, &g) && twisted == g)
}

/// Everything computed for one `(law, q, m)`.
pub struct LevelAnalysis {
    pub norm: NormMapResult,
    pub centralizer: Vec<Option<CentralizerWitness>>,
}

impl LevelAnalysis {
    /// Classes where "fixed by `N_1`" and "has a centralizer witness" disagree.
    pub fn disagreements(&self) -> Vec<usize> {
        (0..self.norm.perm.len())
            .filter(|&c| self.norm.fixed(c) != self.centralizer[c].is_some())
            .collect()
    }
}

/// Enumerates, classifies, and runs the norm map and witness search.
pub fn analyze_level(
    law: &GroupLaw,
    tower: &FieldTower,
    q: u64,
    m: u32,
    limits: &Limits,
    exec: Execution,
) -> Result<LevelAnalysis> {
    let view = enumerate(law, tower, q, m, limits.max_group_order)?;
    let table = conjugacy_classes(&view, exec);
    analyze_with_table(&view, table, limits, exec)
}

/// Like [`analyze_level`] with a precomputed (e.g. cached) class table.
pub fn analyze_with_table(
    view: &FiniteGroupView<'_>,
    table: ClassTable,
    limits: &Limits,
    exec: Execution,
) -> Result<LevelAnalysis> {
    let norm = norm_map(view, &table, limits, exec)?;
    let centralizer = (0..table.len())
        .map(|c| centralizer_witness(view, &norm, c, exec))
        .collect::<Result<_>>()?;
    Ok(LevelAnalysis { norm, centralizer })
}

/// Summary row for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub class: usize,
    pub rep: String,
    pub size: usize,
    pub image_class: usize,
    pub fixed: bool,
}

pub fn class_summaries(view: &FiniteGroupView<'_>, r: &NormMapResult) -> Vec<ClassSummary> {
    (0..r.table.len())
        .map(|c| ClassSummary {
            class: c,
            rep: view.element(r.table.rep(c)).to_string(),
            size: r.table.size(c),
            image_class: r.perm[c],
            fixed: r.fixed(c),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_orders() {
        assert_eq!(perm_order(&[0, 1, 2]), 1);
        assert_eq!(perm_order(&[1, 0, 3, 4, 2]), 6);
        assert_eq!(perm_order(&[]), 1);
    }

    #[test]
    fn twisted_classes_need_closure() {
        let res = twisted_classes(3, |a, b| (a + b) % 3, |a| (3 - a) % 3, |a| (a < 2).then_some(a), Execution::Sequential);
        assert_eq!(res.unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn identity_endo_on_cyclic_group() {
        let p = twisted_classes(5, |a, b| (a + b) % 5, |a| (5 - a) % 5, Some, Execution::Parallel).unwrap();
        assert_eq!(p.len(), 5);
    }
}
