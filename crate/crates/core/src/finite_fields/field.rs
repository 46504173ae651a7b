use rand::Rng;

use super::upoly::{self, Fp, Scalars};
use super::{Coeffs, FieldElement, FieldId};
use crate::error::{Error, Result};

/// `F_p[t]/(f)` for a monic irreducible `f`.
#[derive(Debug)]
pub struct Field {
    id: FieldId,
    /// Monic defining polynomial, lowest coefficient first.
    modulus: Vec<u32>,
    /// `frob[i]` holds the coordinates of `(t^i)^p`.
    frob: Vec<Coeffs>,
}

impl Field {
    pub(crate) fn new(p: u32, modulus: Vec<u32>) -> Self {
        let k = modulus.len() - 1;
        let id = FieldId::new(p, k as u32);
        let mut field = Self {
            id,
            modulus,
            frob: Vec::new(),
        };
        let t = if k == 1 {
            // t is the root of the degree-1 modulus
            let c = Fp(p).sub(&0, &field.modulus[0]);
            field.from_prime(c)
        } else {
            let mut c = Coeffs::from_elem(0, k);
            c[1] = 1;
            FieldElement::from_raw(id, c)
        };
        let tp = field.pow(&t, p as u64);
        let mut acc = field.one();
        let mut frob = Vec::with_capacity(k);
        for _ in 0..k {
            frob.push(acc.coeffs.clone());
            acc = field.mul(&acc, &tp);
        }
        field.frob = frob;
        field
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    pub fn p(&self) -> u32 {
        self.id.p
    }

    pub fn degree(&self) -> u32 {
        self.id.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn size(&self) -> Option<u64> {
        self.id.size()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_raw(self.id, Coeffs::from_elem(0, self.id.degree as usize))
    }

    pub fn one(&self) -> FieldElement {
        self.from_prime(1)
    }

    pub fn from_prime(&self, c: u32) -> FieldElement {
        let mut coeffs = Coeffs::from_elem(0, self.id.degree as usize);
        coeffs[0] = c % self.id.p;
        FieldElement::from_raw(self.id, coeffs)
    }

    pub fn from_int(&self, c: i64) -> FieldElement {
        self.from_prime(c.rem_euclid(self.id.p as i64) as u32)
    }

    /// The class of `t`, a root of the defining polynomial.
    pub fn generator(&self) -> FieldElement {
        if self.id.degree == 1 {
            self.from_prime(Fp(self.id.p).sub(&0, &self.modulus[0]))
        } else {
            let mut c = Coeffs::from_elem(0, self.id.degree as usize);
            c[1] = 1;
            FieldElement::from_raw(self.id, c)
        }
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.id.degree as usize {
            return Err(Error::InvalidElement(format!(
                "{} coefficients given for {}",
                coeffs.len(),
                self.id
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.id.p) {
            return Err(Error::InvalidElement(format!(
                "coefficient {c} not reduced mod {}",
                self.id.p
            )));
        }
        Ok(FieldElement::from_raw(self.id, coeffs.into()))
    }

    /// Element with base-`p` digits `code` (constant coefficient least
    /// significant). Inverse of [`Field::ordinal`].
    pub fn from_ordinal(&self, mut code: u64) -> FieldElement {
        let p = self.id.p as u64;
        let coeffs = (0..self.id.degree)
            .map(|_| {
                let c = (code % p) as u32;
                code /= p;
                c
            })
            .collect();
        FieldElement::from_raw(self.id, coeffs)
    }

    pub fn ordinal(&self, x: &FieldElement) -> u64 {
        let p = self.id.p as u64;
        x.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c as u64)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let n = self.size().expect("field too large to enumerate");
        (0..n).map(move |i| self.from_ordinal(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let coeffs = (0..self.id.degree).map(|_| rng.gen_range(0..self.id.p)).collect();
        FieldElement::from_raw(self.id, coeffs)
    }

    #[inline]
    fn check(&self, x: &FieldElement) {
        debug_assert_eq!(x.field, self.id, "element of {} used in {}", x.field, self.id);
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let p = self.id.p;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        FieldElement::from_raw(self.id, coeffs)
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.check(a);
        let p = self.id.p;
        let coeffs = a.coeffs.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect();
        FieldElement::from_raw(self.id, coeffs)
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &FieldElement, c: u32) -> FieldElement {
        self.check(a);
        let p = self.id.p as u64;
        let c = c as u64 % p;
        let coeffs = a.coeffs.iter().map(|&x| (x as u64 * c % p) as u32).collect();
        FieldElement::from_raw(self.id, coeffs)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let k = self.id.degree as usize;
        let p = self.id.p as u64;
        if k == 1 {
            let v = a.coeffs[0] as u64 * b.coeffs[0] as u64 % p;
            return FieldElement::from_raw(self.id, Coeffs::from_elem(v as u32, 1));
        }
        let mut acc: SmallAcc = SmallAcc::from_elem(0, 2 * k - 1);
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                acc[i + j] += x as u64 * y as u64;
            }
        }
        // t^k = -(m_0 + m_1 t + ... + m_{k-1} t^{k-1})
        for i in (k..2 * k - 1).rev() {
            let c = acc[i] % p;
            if c == 0 {
                continue;
            }
            let base = i - k;
            for (j, &m) in self.modulus[..k].iter().enumerate() {
                if m != 0 {
                    acc[base + j] += c * (p - m as u64);
                }
            }
        }
        let coeffs = acc[..k].iter().map(|&v| (v % p) as u32).collect();
        FieldElement::from_raw(self.id, coeffs)
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        self.check(a);
        if a.is_zero() {
            return None;
        }
        let s = Fp(self.id.p);
        let f = upoly::trim(&s, a.coeffs.to_vec());
        let g = upoly::invmod(&s, &f, &self.modulus)?;
        let mut coeffs = Coeffs::from_elem(0, self.id.degree as usize);
        coeffs[..g.len()].copy_from_slice(&g);
        Some(FieldElement::from_raw(self.id, coeffs))
    }

    /// The absolute Frobenius `x -> x^p`, as a linear map on coordinates.
    pub fn frobenius_p(&self, a: &FieldElement) -> FieldElement {
        self.check(a);
        let k = self.id.degree as usize;
        let p = self.id.p as u64;
        let mut acc = SmallAcc::from_elem(0, k);
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in self.frob[i].iter().enumerate() {
                acc[j] += x as u64 * y as u64;
            }
        }
        let coeffs = acc.iter().map(|&v| (v % p) as u32).collect();
        FieldElement::from_raw(self.id, coeffs)
    }

    /// `x -> x^{p^n}`.
    pub fn frobenius_pow(&self, a: &FieldElement, n: u32) -> FieldElement {
        let n = n % self.id.degree;
        let mut x = a.clone();
        for _ in 0..n {
            x = self.frobenius_p(&x);
        }
        x
    }

    /// Whether `x` lies in the subfield `F_{p^d}`, i.e. is fixed by `x -> x^{p^d}`.
    pub fn in_subfield(&self, x: &FieldElement, d: u32) -> bool {
        self.degree().is_multiple_of(d) && &self.frobenius_pow(x, d) == x
    }
}

type SmallAcc = smallvec::SmallVec<[u64; 16]>;

impl Scalars for Field {
    type E = FieldElement;

    fn zero(&self) -> FieldElement {
        Field::zero(self)
    }
    fn one(&self) -> FieldElement {
        Field::one(self)
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::add(self, a, b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::sub(self, a, b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::mul(self, a, b)
    }
    fn inv(&self, a: &FieldElement) -> FieldElement {
        Field::inv(self, a).expect("inverse of zero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Field {
        Field::new(3, upoly::least_irreducible(3, 2))
    }

    #[test]
    fn ordinals_round_trip() {
        let f = f9();
        for i in 0..9 {
            assert_eq!(f.ordinal(&f.from_ordinal(i)), i);
        }
        assert_eq!(f.elements().count(), 9);
    }

    #[test]
    fn frobenius_matches_power() {
        let f = Field::new(2, upoly::least_irreducible(2, 5));
        for x in f.elements() {
            assert_eq!(f.frobenius_p(&x), f.pow(&x, 2));
            assert_eq!(f.frobenius_pow(&x, 5), x);
        }
    }

    #[test]
    fn generator_is_root_of_modulus() {
        for (p, k) in [(2, 1), (3, 1), (2, 4), (3, 3), (5, 2)] {
            let f = Field::new(p, upoly::least_irreducible(p, k));
            let g = f.generator();
            let mut acc = f.zero();
            let mut pw = f.one();
            for &c in f.modulus() {
                acc = f.add(&acc, &f.scale(&pw, c));
                pw = f.mul(&pw, &g);
            }
            assert!(acc.is_zero(), "p={p} k={k}");
        }
    }

    #[test]
    fn inverse_of_zero_is_none() {
        let f = f9();
        assert!(f.inv(&f.zero()).is_none());
        let x = f.from_ordinal(5);
        assert!(f.mul(&x, &f.inv(&x).unwrap()).is_one());
    }
}
