use std::collections::BTreeMap;
use std::fmt;

use crate::finite_fields::{Field, FieldElement};

/// A monomial with its coefficient; `exps[v]` is the exponent of variable `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub exps: Vec<u32>,
}

impl Term {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// A polynomial over `F_p` in `2d` variables `x1..xd, y1..yd`
/// (variable `i < d` is `x_{i+1}`, variable `d + i` is `y_{i+1}`).
///
/// Terms are kept in canonical order: ascending total degree, then
/// descending lexicographic exponent vector. Coefficients are nonzero
/// residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    p: u32,
    nvars: usize,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(p: u32, nvars: usize) -> Self {
        Self {
            p,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(p: u32, nvars: usize, c: u32) -> Self {
        Self::from_terms(
            p,
            nvars,
            [Term {
                coeff: c,
                exps: vec![0; nvars],
            }],
        )
    }

    pub fn var(p: u32, nvars: usize, v: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[v] = 1;
        Self::from_terms(p, nvars, [Term { coeff: 1, exps }])
    }

    /// Collects like terms, reduces coefficients and sorts canonically.
    pub fn from_terms(p: u32, nvars: usize, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut acc: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for t in terms {
            assert_eq!(t.exps.len(), nvars, "exponent vector length");
            *acc.entry(t.exps).or_insert(0) += t.coeff as u64 % p as u64;
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter_map(|(exps, c)| {
                let coeff = (c % p as u64) as u32;
                (coeff != 0).then_some(Term { coeff, exps })
            })
            .collect();
        terms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exps.cmp(&a.exps)));
        Self { p, nvars, terms }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Variables occurring with a positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.iter().any(|t| t.exps[v] > 0))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(
            self.p,
            self.nvars,
            self.terms.iter().chain(&other.terms).cloned(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(self.p - 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p as u64;
        Self::from_terms(
            self.p,
            self.nvars,
            self.terms.iter().map(|t| Term {
                coeff: (t.coeff as u64 * (c as u64 % p) % p) as u32,
                exps: t.exps.clone(),
            }),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.p as u64;
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                out.push(Term {
                    coeff: (a.coeff as u64 * b.coeff as u64 % p) as u32,
                    exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect(),
                });
            }
        }
        Self::from_terms(self.p, self.nvars, out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.p, self.nvars, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Replaces variable `v` by `images[v]` (all images share `p` and arity).
    pub fn substitute(&self, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let nvars = images.first().map_or(self.nvars, |i| i.nvars);
        let mut acc = Self::zero(self.p, nvars);
        for t in &self.terms {
            let mut prod = Self::constant(self.p, nvars, t.coeff);
            for (v, &e) in t.exps.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&images[v].pow(e));
                }
            }
            acc = acc.add(&prod);
        }
        acc
    }

    /// Evaluates at `vals` (one value per variable, or fewer if the trailing
    /// variables do not occur).
    pub fn eval(&self, field: &Field, vals: &[&FieldElement]) -> FieldElement {
        let mut acc = field.zero();
        for t in &self.terms {
            let mut prod = field.from_prime(t.coeff);
            for (v, &e) in t.exps.iter().enumerate() {
                if e > 0 {
                    prod = field.mul(&prod, &field.pow(vals[v], e as u64));
                }
            }
            acc = field.add(&acc, &prod);
        }
        acc
    }

    pub(crate) fn display_with(&self, dim: usize) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, dim }
    }
}

pub(crate) struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    dim: usize,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.poly.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut parts = Vec::new();
            if t.coeff != 1 || t.degree() == 0 {
                parts.push(t.coeff.to_string());
            }
            for (v, &e) in t.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (name, idx) = if v < self.dim {
                    ('x', v + 1)
                } else {
                    ('y', v - self.dim + 1)
                };
                if e == 1 {
                    parts.push(format!("{name}{idx}"));
                } else {
                    parts.push(format!("{name}{idx}^{e}"));
                }
            }
            f.write_str(&parts.join(" * "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_printing() {
        let x = |i| Polynomial::var(3, 4, i);
        let poly = x(0).mul(&x(2).pow(3)).add(&x(3)).add(&x(1));
        assert_eq!(poly.display_with(2).to_string(), "x2 + y2 + x1 * y1^3");
        let cancelled = poly.sub(&x(3)).sub(&x(1)).sub(&x(0).mul(&x(2).pow(3)));
        assert!(cancelled.is_zero());
    }

    #[test]
    fn frobenius_is_additive_on_polynomials() {
        let x = |i| Polynomial::var(3, 2, i);
        let lhs = x(0).add(&x(1)).pow(3);
        let rhs = x(0).pow(3).add(&x(1).pow(3));
        assert_eq!(lhs, rhs);
    }
}
