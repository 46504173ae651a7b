//! Unipotent groups presented by polynomial multiplication laws on affine
//! `d`-space over `F_p`, with the identity at the origin.

mod parser;
mod poly;
mod validate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_fields::{is_prime, Field, FieldElement};

pub use parser::parse_group_dsl;
pub use poly::{Polynomial, Term};
pub use validate::{validate_law, CheckOutcome, ValidationReport};

/// The built-in families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Unipotent upper triangular `n x n` matrices.
    Ul(usize),
    /// The vector group `G_a^d`.
    GaPower(usize),
    /// The noncommutative dimension-2 law `(a, b)(a', b') = (a + a', b + b' + a a'^p)`.
    N2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Ul(n) => write!(f, "ul({n})"),
            Family::GaPower(d) => write!(f, "ga_power({d})"),
            Family::N2 => f.write_str("n2"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `ul(3)`, `ul3`, `ga_power(2)`, `ga_power2`, `n2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let arg = |prefix: &str| -> Option<usize> {
            let rest = s.strip_prefix(prefix)?;
            let rest = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .unwrap_or(rest);
            rest.parse().ok()
        };
        if s == "n2" {
            Ok(Family::N2)
        } else if let Some(d) = arg("ga_power") {
            Ok(Family::GaPower(d))
        } else if let Some(n) = arg("ul") {
            Ok(Family::Ul(n))
        } else {
            Err(Error::UnknownFamily(s))
        }
    }
}

/// A triangular polynomial group law.
///
/// Coordinate `i` of the product is `x_i + y_i + h_i` where `h_i` only
/// involves coordinates `j < i`. Equality compares the characteristic and
/// the multiplication polynomials; the name is cosmetic.
#[derive(Clone, Debug)]
pub struct GroupLaw {
    name: String,
    p: u32,
    dim: usize,
    mul: Vec<Polynomial>,
    inv: Vec<Polynomial>,
    family: Option<Family>,
}

impl PartialEq for GroupLaw {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.dim == other.dim && self.mul == other.mul
    }
}

impl Eq for GroupLaw {}

impl GroupLaw {
    /// Builds a law after checking the identity axiom at the origin and
    /// triangularity, and derives the inverse.
    pub fn new(name: impl Into<String>, p: u32, mul: Vec<Polynomial>) -> Result<Self> {
        let law = Self::without_identity_check(name, p, mul)?;
        law.check_identity()?;
        Ok(law)
    }

    /// Like [`GroupLaw::new`] but skips the identity axiom, so that
    /// [`validate_law`] can report on broken laws.
    pub fn without_identity_check(
        name: impl Into<String>,
        p: u32,
        mul: Vec<Polynomial>,
    ) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let dim = mul.len();
        if dim == 0 {
            return Err(Error::InvalidLaw("dimension must be at least 1".into()));
        }
        for m in &mul {
            if m.p() != p || m.nvars() != 2 * dim {
                return Err(Error::InvalidLaw(
                    "polynomials disagree with the law's characteristic or dimension".into(),
                ));
            }
        }
        let mut law = Self {
            name: name.into(),
            p,
            dim,
            mul,
            inv: Vec::new(),
            family: None,
        };
        law.check_triangular()?;
        law.inv = derive_inverse(&law)?;
        Ok(law)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul_polys(&self) -> &[Polynomial] {
        &self.mul
    }

    pub fn inv_polys(&self) -> &[Polynomial] {
        &self.inv
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// Accepted laws are always triangular.
    pub fn is_triangular(&self) -> bool {
        self.check_triangular().is_ok()
    }

    fn x(&self, i: usize) -> Polynomial {
        Polynomial::var(self.p, 2 * self.dim, i)
    }

    fn y(&self, i: usize) -> Polynomial {
        Polynomial::var(self.p, 2 * self.dim, self.dim + i)
    }

    /// `h_i = mul_i - x_i - y_i`.
    fn correction(&self, i: usize) -> Polynomial {
        self.mul[i].sub(&self.x(i)).sub(&self.y(i))
    }

    pub(crate) fn check_identity(&self) -> Result<()> {
        let d = self.dim;
        let zero = Polynomial::zero(self.p, 2 * d);
        let kill_y: Vec<Polynomial> = (0..2 * d)
            .map(|v| if v < d { self.x(v) } else { zero.clone() })
            .collect();
        let kill_x: Vec<Polynomial> = (0..2 * d)
            .map(|v| if v < d { zero.clone() } else { self.y(v - d) })
            .collect();
        for i in 0..d {
            if self.mul[i].substitute(&kill_y) != self.x(i) {
                return Err(Error::InvalidLaw(format!(
                    "identity axiom violated: mul[{}](x, 0) != x{}",
                    i + 1,
                    i + 1
                )));
            }
            if self.mul[i].substitute(&kill_x) != self.y(i) {
                return Err(Error::InvalidLaw(format!(
                    "identity axiom violated: mul[{}](0, y) != y{}",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(())
    }

    fn check_triangular(&self) -> Result<()> {
        for i in 0..self.dim {
            let h = self.correction(i);
            if let Some(&v) = h.variables().iter().find(|&&v| v % self.dim >= i) {
                return Err(Error::NotTriangular {
                    coordinate: i + 1,
                    depends_on: v % self.dim + 1,
                });
            }
        }
        Ok(())
    }

    /// Coordinates of `a * b`.
    pub fn multiply(&self, field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let vals: Vec<&FieldElement> = a.iter().chain(b).collect();
        self.mul.iter().map(|m| m.eval(field, &vals)).collect()
    }

    pub fn inverse(&self, field: &Field, a: &[FieldElement]) -> Vec<FieldElement> {
        let vals: Vec<&FieldElement> = a.iter().collect();
        self.inv.iter().map(|m| m.eval(field, &vals)).collect()
    }

    /// The law in DSL form; parses back to an equal law.
    pub fn to_dsl(&self) -> String {
        let mut out = format!("group {} dim {} char {}\n", self.name, self.dim, self.p);
        for (i, m) in self.mul.iter().enumerate() {
            out.push_str(&format!("mul[{}] = {}\n", i + 1, m.display_with(self.dim)));
        }
        out
    }
}

/// Builds one of the built-in families over `F_p`.
pub fn builtin(family: Family, p: u32) -> Result<GroupLaw> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let (name, mul) = match family {
        Family::Ul(n) => {
            if n < 2 {
                return Err(Error::InvalidLaw("ul(n) needs n >= 2".into()));
            }
            // coordinates: strictly upper entries by diagonal distance, then row
            let coords: Vec<(usize, usize)> = (1..n)
                .flat_map(|k| (0..n - k).map(move |i| (i, i + k)))
                .collect();
            let d = coords.len();
            let index = |e: (usize, usize)| coords.iter().position(|&c| c == e).unwrap();
            let mul = coords
                .iter()
                .enumerate()
                .map(|(c, &(i, j))| {
                    let var = |v| Polynomial::var(p, 2 * d, v);
                    let mut poly = var(c).add(&var(d + c));
                    for k in i + 1..j {
                        poly = poly.add(&var(index((i, k))).mul(&var(d + index((k, j)))));
                    }
                    poly
                })
                .collect();
            (format!("ul{n}"), mul)
        }
        Family::GaPower(d) => {
            if d == 0 {
                return Err(Error::InvalidLaw("ga_power(d) needs d >= 1".into()));
            }
            let mul = (0..d)
                .map(|i| Polynomial::var(p, 2 * d, i).add(&Polynomial::var(p, 2 * d, d + i)))
                .collect();
            (format!("ga_power{d}"), mul)
        }
        Family::N2 => {
            let var = |v| Polynomial::var(p, 4, v);
            let mul = vec![
                var(0).add(&var(2)),
                var(1).add(&var(3)).add(&var(0).mul(&var(2).pow(p))),
            ];
            ("n2".to_string(), mul)
        }
    };
    let mut law = GroupLaw::new(name, p, mul)?;
    law.family = Some(family);
    Ok(law)
}

/// Inverse polynomials of a triangular law, solved coordinate by
/// coordinate: `inv_i = -x_i - h_i(x_{<i}, inv_{<i}(x))`.
pub fn derive_inverse(law: &GroupLaw) -> Result<Vec<Polynomial>> {
    law.check_triangular()?;
    let d = law.dim;
    let zero = Polynomial::zero(law.p, 2 * d);
    let mut inv: Vec<Polynomial> = Vec::with_capacity(d);
    for i in 0..d {
        let images: Vec<Polynomial> = (0..2 * d)
            .map(|v| {
                if v < d {
                    law.x(v)
                } else if v - d < i {
                    inv[v - d].clone()
                } else {
                    zero.clone()
                }
            })
            .collect();
        let h = law.correction(i).substitute(&images);
        inv.push(law.x(i).neg().sub(&h));
    }
    Ok(inv)
}
