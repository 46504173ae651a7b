use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, RwLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::linalg::LinearSolver;
use super::upoly;
use super::{divisors, is_prime, lcm, log_p, Field, FieldElement, FieldId};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: u32 = 512;

/// A fixed embedding `F_{p^a} -> F_{p^b}`.
#[derive(Debug)]
pub struct Embedding {
    source: FieldId,
    target: FieldId,
    /// Images of `1, t, ..., t^{a-1}`.
    basis_images: Vec<FieldElement>,
    preimage: LinearSolver,
}

impl Embedding {
    fn new(source: FieldId, target: &Field, image_of_generator: FieldElement) -> Self {
        let mut basis_images = Vec::with_capacity(source.degree as usize);
        let mut acc = target.one();
        for _ in 0..source.degree {
            basis_images.push(acc.clone());
            acc = target.mul(&acc, &image_of_generator);
        }
        let rows: Vec<Vec<u32>> = (0..target.degree() as usize)
            .map(|r| basis_images.iter().map(|b| b.coeffs()[r]).collect())
            .collect();
        let preimage = LinearSolver::new(target.p(), &rows, source.degree as usize);
        Self {
            source,
            target: target.id(),
            basis_images,
            preimage,
        }
    }

    pub fn source(&self) -> FieldId {
        self.source
    }

    pub fn target(&self) -> FieldId {
        self.target
    }

    /// Image of the source field's generator `t`.
    pub fn image_of_generator(&self) -> &FieldElement {
        if self.source.degree == 1 {
            // degree-1 fields are generated by 1 over F_p; there is no t
            &self.basis_images[0]
        } else {
            &self.basis_images[1]
        }
    }

    fn apply(&self, target: &Field, x: &FieldElement) -> FieldElement {
        if self.source.degree == 1 {
            return target.from_prime(x.coeffs()[0]);
        }
        x.coeffs()
            .iter()
            .zip(&self.basis_images)
            .filter(|(&c, _)| c != 0)
            .fold(target.zero(), |acc, (&c, b)| target.add(&acc, &target.scale(b, c)))
    }

    fn invert(&self, x: &FieldElement) -> Option<Vec<u32>> {
        self.preimage.solve(x.coeffs())
    }
}

#[derive(Default)]
struct TowerState {
    fields: BTreeMap<u32, Arc<Field>>,
    embeddings: HashMap<(u32, u32), Arc<Embedding>>,
}

/// All finite fields of characteristic `p` built so far, with a compatible
/// system of embeddings between them.
///
/// Construction is append-only and serialized behind a lock; built fields are
/// shared immutably.
pub struct FieldTower {
    p: u32,
    max_degree: u32,
    state: RwLock<TowerState>,
    // keyed by (level degree, e) for the map t -> t^{p^e} - t
    artin_schreier: Mutex<HashMap<(u32, u32), Arc<LinearSolver>>>,
}

impl std::fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p)
            .field("max_degree", &self.max_degree)
            .finish()
    }
}

impl FieldTower {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p >= 1 << 20 {
            return Err(Error::ResourceLimit {
                what: "characteristic",
                value: p as u64,
                cap: 1 << 20,
            });
        }
        Ok(Self {
            p,
            max_degree: DEFAULT_MAX_DEGREE,
            state: RwLock::new(TowerState::default()),
            artin_schreier: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_max_degree(mut self, max_degree: u32) -> Self {
        self.max_degree = max_degree;
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Builds `F_{p^degree}` (and every subfield) if needed. Idempotent.
    pub fn make_field(&self, degree: u32) -> Result<FieldId> {
        self.field(degree).map(|f| f.id())
    }

    pub fn field(&self, degree: u32) -> Result<Arc<Field>> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if degree > self.max_degree {
            return Err(Error::ResourceLimit {
                what: "field degree",
                value: degree as u64,
                cap: self.max_degree as u64,
            });
        }
        if let Some(f) = self.state.read().unwrap().fields.get(&degree) {
            return Ok(f.clone());
        }
        let mut state = self.state.write().unwrap();
        self.build(&mut state, degree);
        Ok(state.fields[&degree].clone())
    }

    pub fn field_of(&self, x: &FieldElement) -> Result<Arc<Field>> {
        self.check_p(x.field())?;
        self.field(x.field().degree)
    }

    fn check_p(&self, id: FieldId) -> Result<()> {
        if id.p != self.p {
            return Err(Error::IncompatibleFields {
                from: id,
                to: FieldId::new(self.p, id.degree),
            });
        }
        Ok(())
    }

    fn build(&self, state: &mut TowerState, degree: u32) {
        if state.fields.contains_key(&degree) {
            return;
        }
        let subs: Vec<u32> = divisors(degree).into_iter().filter(|&d| d < degree).collect();
        for &d in &subs {
            self.build(state, d);
        }
        let field = Arc::new(Field::new(self.p, upoly::least_irreducible(self.p, degree)));
        for &a in &subs {
            let image = if a == 1 {
                field.one()
            } else {
                choose_image(state, &field, a)
            };
            let emb = Embedding::new(FieldId::new(self.p, a), &field, image);
            state.embeddings.insert((a, degree), Arc::new(emb));
        }
        state.fields.insert(degree, field);
    }

    pub fn embedding(&self, from: u32, to: u32) -> Result<Arc<Embedding>> {
        let src = FieldId::new(self.p, from);
        let dst = FieldId::new(self.p, to);
        if from == 0 || !to.is_multiple_of(from) {
            return Err(Error::IncompatibleFields { from: src, to: dst });
        }
        self.field(to)?;
        if from == to {
            let f = self.field(to)?;
            return Ok(Arc::new(Embedding::new(src, &f, f.generator())));
        }
        Ok(self.state.read().unwrap().embeddings[&(from, to)].clone())
    }

    /// Moves `x` into the larger field `target`.
    pub fn embed(&self, x: &FieldElement, target: FieldId) -> Result<FieldElement> {
        self.check_p(x.field())?;
        self.check_p(target)?;
        let (a, b) = (x.field().degree, target.degree);
        if a == b {
            return Ok(x.clone());
        }
        if b % a != 0 {
            return Err(Error::IncompatibleFields {
                from: x.field(),
                to: target,
            });
        }
        let f = self.field(b)?;
        let emb = self.embedding(a, b)?;
        Ok(emb.apply(&f, x))
    }

    /// Expresses `x` as an element of the subfield `sub`, if it lies there.
    pub fn restrict(&self, x: &FieldElement, sub: FieldId) -> Result<FieldElement> {
        self.check_p(x.field())?;
        self.check_p(sub)?;
        let (a, b) = (sub.degree, x.field().degree);
        if a == b {
            return Ok(x.clone());
        }
        if b % a != 0 {
            return Err(Error::IncompatibleFields {
                from: x.field(),
                to: sub,
            });
        }
        let emb = self.embedding(a, b)?;
        let coeffs = emb.invert(x).ok_or(Error::NotInSubfield(sub))?;
        self.field(a)?.element(&coeffs)
    }

    /// Moves `x` to the smallest field containing both its own field and `other`.
    pub fn lift_to_common(&self, x: &FieldElement, other: FieldId) -> Result<FieldElement> {
        let d = lcm(x.field().degree, other.degree);
        self.embed(x, FieldId::new(self.p, d))
    }

    /// `x -> x^q` for `q` a power of `p`.
    pub fn frobenius(&self, x: &FieldElement, q: u64) -> Result<FieldElement> {
        let n = log_p(q, self.p).ok_or(Error::NotPowerOfP { q, p: self.p })?;
        let f = self.field_of(x)?;
        Ok(f.frobenius_pow(x, n))
    }

    /// Relative trace from `x`'s field down to `sub`.
    pub fn trace_to(&self, x: &FieldElement, sub: FieldId) -> Result<FieldElement> {
        self.check_p(sub)?;
        let f = self.field_of(x)?;
        let (s, k) = (sub.degree, f.degree());
        if s == 0 || k % s != 0 {
            return Err(Error::IncompatibleFields {
                from: x.field(),
                to: sub,
            });
        }
        let mut acc = f.zero();
        let mut term = x.clone();
        for _ in 0..k / s {
            acc = f.add(&acc, &term);
            term = f.frobenius_pow(&term, s);
        }
        self.restrict(&acc, sub)
    }

    fn artin_schreier_solver(&self, level: u32, e: u32) -> Result<Arc<LinearSolver>> {
        if let Some(s) = self.artin_schreier.lock().unwrap().get(&(level, e)) {
            return Ok(s.clone());
        }
        let f = self.field(level)?;
        let k = level as usize;
        let columns: Vec<FieldElement> = (0..k)
            .map(|j| {
                let mut c = vec![0; k];
                c[j] = 1;
                let basis = f.element(&c).expect("basis vector");
                f.sub(&f.frobenius_pow(&basis, e), &basis)
            })
            .collect();
        let rows: Vec<Vec<u32>> = (0..k).map(|r| columns.iter().map(|c| c.coeffs()[r]).collect()).collect();
        let solver = Arc::new(LinearSolver::new(self.p, &rows, k));
        self.artin_schreier
            .lock()
            .unwrap()
            .insert((level, e), solver.clone());
        Ok(solver)
    }

    /// Solves `t^{q^m} - t = c`.
    ///
    /// Searches the chain `L, pL, p^2 L, ...` starting from the least common
    /// level `L` of `c` and `F_{q^m}`, and returns the least solution (highest
    /// coefficient most significant) in the first field that has one.
    pub fn artin_schreier_solve(
        &self,
        c: &FieldElement,
        q: u64,
        m: u32,
    ) -> Result<(FieldElement, FieldId)> {
        self.check_p(c.field())?;
        let n = log_p(q, self.p).ok_or(Error::NotPowerOfP { q, p: self.p })?;
        let e = n * m;
        let mut level = lcm(c.field().degree, e);
        loop {
            if level > self.max_degree {
                return Err(Error::ResourceLimit {
                    what: "Artin-Schreier extension degree",
                    value: level as u64,
                    cap: self.max_degree as u64,
                });
            }
            let f = self.field(level)?;
            let target = self.embed(c, f.id())?;
            let solver = self.artin_schreier_solver(level, e)?;
            if let Some(t) = solver.solve(target.coeffs()) {
                return Ok((f.element(&t)?, f.id()));
            }
            level *= self.p;
        }
    }
}

/// Image of the generator of `F_{p^a}` in `field`: the least root of the
/// defining polynomial of `F_{p^a}` compatible with every embedding already
/// fixed for the proper subfields of `F_{p^a}`.
fn choose_image(state: &TowerState, field: &Field, a: u32) -> FieldElement {
    let sub = &state.fields[&a];
    let poly: Vec<FieldElement> = sub.modulus().iter().map(|&c| field.from_prime(c)).collect();
    let mut roots = roots_split(field, &poly);
    roots.sort();
    let c = field.degree();
    let constraints: Vec<(Arc<Embedding>, FieldElement)> = divisors(a)
        .into_iter()
        .filter(|&b| b > 1 && b < a)
        .map(|b| {
            let inner = state.embeddings[&(b, a)].clone();
            let outer = state.embeddings[&(b, c)].image_of_generator().clone();
            (inner, outer)
        })
        .collect();
    roots
        .into_iter()
        .find(|r| {
            constraints.iter().all(|(inner, outer)| {
                // image of t_b under (F_a -> field, t_a -> r) after (F_b -> F_a)
                let via = inner.image_of_generator();
                let mut acc = field.zero();
                let mut pw = field.one();
                for &coef in via.coeffs() {
                    acc = field.add(&acc, &field.scale(&pw, coef));
                    pw = field.mul(&pw, r);
                }
                &acc == outer
            })
        })
        .expect("compatible embedding always exists")
}

/// All roots of a polynomial that splits into distinct linear factors over
/// `field` (Cantor-Zassenhaus equal-degree splitting).
fn roots_split(field: &Field, f: &[FieldElement]) -> Vec<FieldElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0ff1_e1d0);
    let mut out = Vec::new();
    let mut stack = vec![upoly::make_monic(field, f.to_vec())];
    while let Some(g) = stack.pop() {
        match g.len() {
            0 | 1 => {}
            2 => out.push(field.neg(&g[0])),
            _ => {
                let h = split_candidate(field, &g, &mut rng);
                let d = upoly::gcd(field, &g, &h);
                if d.len() > 1 && d.len() < g.len() {
                    let (quot, _) = upoly::divrem(field, &g, &d);
                    stack.push(d);
                    stack.push(upoly::make_monic(field, quot));
                } else {
                    stack.push(g);
                }
            }
        }
    }
    out
}

fn split_candidate(field: &Field, g: &[FieldElement], rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    let delta = field.random(rng);
    let k = field.degree();
    let p = field.p();
    if p == 2 {
        // absolute trace of delta * x: sum of (delta x)^{2^i}
        let base = vec![field.zero(), delta];
        let mut term = upoly::rem(field, &base, g);
        let mut acc = term.clone();
        for _ in 1..k {
            term = upoly::mulmod(field, &term, &term, g);
            acc = upoly::add(field, &acc, &term);
        }
        acc
    } else {
        // (x + delta)^{(p^k - 1)/2} - 1, using (p^k-1)/2 = sum ((p-1)/2) p^i
        let base = vec![delta, field.one()];
        let r = upoly::powmod(field, &base, (p as u64 - 1) / 2, g);
        let mut term = r.clone();
        let mut acc = r;
        for _ in 1..k {
            term = upoly::powmod(field, &term, p as u64, g);
            acc = upoly::mulmod(field, &acc, &term, g);
        }
        upoly::sub(field, &acc, &[field.one()])
    }
}
