//! Dense univariate polynomials over a coefficient ring described by
//! [`Scalars`]. Coefficients are stored lowest degree first; the zero
//! polynomial is the empty vector.

pub(crate) trait Scalars {
    type E: Clone + PartialEq;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Inverse of a nonzero scalar.
    fn inv(&self, a: &Self::E) -> Self::E;
}

/// The prime field `F_p` on plain residues.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp(pub u32);

impl Fp {
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let p = self.0 as u64;
        let (mut base, mut acc) = (a as u64 % p, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl Scalars for Fp {
    type E = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.0 as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.0 as u64 - *b as u64) % self.0 as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.0 as u64) as u32
    }
    fn inv(&self, a: &u32) -> u32 {
        debug_assert!(*a != 0);
        self.pow(*a, self.0 as u64 - 2)
    }
}

pub(crate) fn trim<S: Scalars>(s: &S, mut f: Vec<S::E>) -> Vec<S::E> {
    while f.last().is_some_and(|c| s.is_zero(c)) {
        f.pop();
    }
    f
}

pub(crate) fn degree<E>(f: &[E]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub(crate) fn add<S: Scalars>(s: &S, f: &[S::E], g: &[S::E]) -> Vec<S::E> {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| match (f.get(i), g.get(i)) {
            (Some(a), Some(b)) => s.add(a, b),
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(s, out)
}

pub(crate) fn sub<S: Scalars>(s: &S, f: &[S::E], g: &[S::E]) -> Vec<S::E> {
    let n = f.len().max(g.len());
    let zero = s.zero();
    let out = (0..n)
        .map(|i| s.sub(f.get(i).unwrap_or(&zero), g.get(i).unwrap_or(&zero)))
        .collect();
    trim(s, out)
}

pub(crate) fn mul<S: Scalars>(s: &S, f: &[S::E], g: &[S::E]) -> Vec<S::E> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![s.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if s.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = s.add(&out[i + j], &s.mul(a, b));
        }
    }
    trim(s, out)
}

/// Quotient and remainder; `g` must be nonzero.
pub(crate) fn divrem<S: Scalars>(s: &S, f: &[S::E], g: &[S::E]) -> (Vec<S::E>, Vec<S::E>) {
    let dg = degree(g).expect("division by the zero polynomial");
    let lead_inv = s.inv(&g[dg]);
    let mut rem = f.to_vec();
    if rem.len() <= dg {
        return (Vec::new(), rem);
    }
    let mut quot = vec![s.zero(); rem.len() - dg];
    for k in (dg..rem.len()).rev() {
        let c = s.mul(&rem[k], &lead_inv);
        if s.is_zero(&c) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            let idx = k - dg + j;
            rem[idx] = s.sub(&rem[idx], &s.mul(&c, b));
        }
        quot[k - dg] = c;
    }
    rem.truncate(dg);
    (trim(s, quot), trim(s, rem))
}

pub(crate) fn rem<S: Scalars>(s: &S, f: &[S::E], g: &[S::E]) -> Vec<S::E> {
    divrem(s, f, g).1
}

pub(crate) fn make_monic<S: Scalars>(s: &S, f: Vec<S::E>) -> Vec<S::E> {
    match f.last() {
        None => f,
        Some(lead) => {
            let inv = s.inv(lead);
            f.iter().map(|c| s.mul(c, &inv)).collect()
        }
    }
}

/// Monic gcd.
pub(crate) fn gcd<S: Scalars>(s: &S, f: &[S::E], g: &[S::E]) -> Vec<S::E> {
    let (mut a, mut b) = (trim(s, f.to_vec()), trim(s, g.to_vec()));
    while !b.is_empty() {
        let r = rem(s, &a, &b);
        a = b;
        b = r;
    }
    make_monic(s, a)
}

pub(crate) fn mulmod<S: Scalars>(s: &S, f: &[S::E], g: &[S::E], modulus: &[S::E]) -> Vec<S::E> {
    rem(s, &mul(s, f, g), modulus)
}

pub(crate) fn powmod<S: Scalars>(s: &S, f: &[S::E], mut e: u64, modulus: &[S::E]) -> Vec<S::E> {
    let mut base = rem(s, f, modulus);
    let mut acc = rem(s, &[s.one()], modulus);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(s, &acc, &base, modulus);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(s, &base, &base, modulus);
        }
    }
    acc
}

/// Inverse of `f` modulo `modulus` via the extended Euclidean algorithm.
/// Returns `None` when they are not coprime.
pub(crate) fn invmod<S: Scalars>(s: &S, f: &[S::E], modulus: &[S::E]) -> Option<Vec<S::E>> {
    let (mut r0, mut r1) = (modulus.to_vec(), rem(s, f, modulus));
    let (mut t0, mut t1): (Vec<S::E>, Vec<S::E>) = (Vec::new(), vec![s.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(s, &r0, &r1);
        let t = sub(s, &t0, &mul(s, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = s.inv(&r0[0]);
    Some(rem(s, &t0.iter().map(|a| s.mul(a, &c)).collect::<Vec<_>>(), modulus))
}

/// Ben-Or test: `f` of degree `k` over `F_p` is irreducible iff
/// `gcd(f, t^{p^i} - t) = 1` for every `1 <= i <= k/2`.
pub(crate) fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let s = Fp(p);
    let k = match degree(f) {
        Some(k) if k >= 1 => k,
        _ => return false,
    };
    let x = vec![0, 1];
    let mut h = rem(&s, &x, f);
    for _ in 1..=k / 2 {
        h = powmod(&s, &h, p as u64, f);
        let g = gcd(&s, f, &sub(&s, &h, &x));
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Least monic irreducible polynomial of degree `k` over `F_p`, ordered by
/// its lower coefficients read as base-`p` digits (constant term least
/// significant).
pub(crate) fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    let mut lower = vec![0u32; k];
    loop {
        let mut f = lower.clone();
        f.push(1);
        if (k == 1 || f[0] != 0) && is_irreducible(p, &f) {
            return f;
        }
        // odometer increment, constant term first
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible polynomial of degree {k} over F_{p}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducibles_small() {
        assert_eq!(least_irreducible(2, 1), vec![0, 1]);
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        // t^3 + 2t + 1 is the least cubic over F_3
        assert_eq!(least_irreducible(3, 3), vec![1, 2, 0, 1]);
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducibles of degree 4 over F_2 is 3, degree 3 over F_3 is 8
        let count = |p: u32, k: usize| {
            let mut n = 0;
            let total = (p as usize).pow(k as u32);
            for code in 0..total {
                let mut f: Vec<u32> = (0..k)
                    .map(|i| (code / (p as usize).pow(i as u32) % p as usize) as u32)
                    .collect();
                f.push(1);
                if is_irreducible(p, &f) {
                    n += 1;
                }
            }
            n
        };
        assert_eq!(count(2, 4), 3);
        assert_eq!(count(3, 3), 8);
        assert_eq!(count(2, 6), 9);
    }

    #[test]
    fn inverse_mod() {
        let s = Fp(3);
        let m = vec![1, 2, 0, 1];
        let f = vec![2, 1];
        let g = invmod(&s, &f, &m).unwrap();
        assert_eq!(mulmod(&s, &f, &g, &m), vec![1]);
    }
}
