//! Exact arithmetic in a compatible tower of finite fields `F_{p^k}`.
//!
//! Every field in a [`FieldTower`] is `F_p[t]/(f)` for the least monic
//! irreducible `f` of its degree. Embeddings between levels are chosen so
//! that they compose: for `a | b | c`, embedding through `F_{p^b}` agrees
//! with the direct embedding `F_{p^a} -> F_{p^c}`.

mod field;
pub(crate) mod linalg;
mod tower;
pub(crate) mod upoly;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub use field::Field;
pub use tower::{Embedding, FieldTower, DEFAULT_MAX_DEGREE};

pub(crate) type Coeffs = SmallVec<[u32; 8]>;

/// Identifies `F_{p^degree}` inside a tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldId {
    pub p: u32,
    pub degree: u32,
}

impl FieldId {
    pub fn new(p: u32, degree: u32) -> Self {
        Self { p, degree }
    }

    /// Number of elements, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.degree)
    }

    pub fn contains(&self, sub: FieldId) -> bool {
        self.p == sub.p && self.degree.is_multiple_of(sub.degree)
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.degree)
        }
    }
}

/// An element of `F_{p^k}` in the power basis `1, t, ..., t^{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldId,
    coeffs: Coeffs,
}

impl FieldElement {
    pub(crate) fn from_raw(field: FieldId, coeffs: Coeffs) -> Self {
        debug_assert_eq!(coeffs.len(), field.degree as usize);
        debug_assert!(coeffs.iter().all(|&c| c < field.p));
        Self { field, coeffs }
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The value as an element of `F_p`, if it lies there.
    pub fn as_prime(&self) -> Option<u32> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }
}

/// Canonical order: by field, then coefficient-lexicographic with the
/// highest power of `t` most significant. This is the numeric order of
/// `sum c_i p^i`.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{c}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `n` with `q = p^n`, `n >= 1`.
pub fn log_p(q: u64, p: u32) -> Option<u32> {
    let p = p as u64;
    if p < 2 || q < p {
        return None;
    }
    let (mut rest, mut n) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some(n)
}

/// Splits a prime power `q` into `(p, n)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let p = u32::try_from(p).ok()?;
    log_p(q, p).map(|n| (p, n))
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

pub(crate) fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}
