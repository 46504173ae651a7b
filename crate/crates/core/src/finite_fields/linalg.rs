//! Linear algebra over `F_p`.

use super::upoly::{Fp, Scalars};

/// A precomputed solver for `A x = b` over `F_p`.
///
/// Among all solutions, [`LinearSolver::solve`] returns the least one in the
/// order where the highest coordinate is most significant.
#[derive(Clone, Debug)]
pub(crate) struct LinearSolver {
    p: u32,
    cols: usize,
    /// `transform * A = rref`, one row per equation.
    transform: Vec<Vec<u32>>,
    /// Pivot column of each of the first `rank` rows of the rref.
    pivot_cols: Vec<usize>,
    /// Kernel basis; vector `i` has a 1 at `kernel_pivots[i]`, which is its
    /// highest nonzero entry, and zeros at every other kernel pivot.
    kernel: Vec<Vec<u32>>,
    kernel_pivots: Vec<usize>,
}

impl LinearSolver {
    /// `matrix` is row-major with `rows x cols` entries in `[0, p)`.
    pub fn new(p: u32, matrix: &[Vec<u32>], cols: usize) -> Self {
        let s = Fp(p);
        let rows = matrix.len();
        let mut a: Vec<Vec<u32>> = matrix.to_vec();
        let mut t: Vec<Vec<u32>> = (0..rows)
            .map(|i| {
                let mut r = vec![0; rows];
                r[i] = 1;
                r
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, pr);
            t.swap(r, pr);
            let inv = s.inv(&a[r][c]);
            for v in a[r].iter_mut() {
                *v = s.mul(v, &inv);
            }
            for v in t[r].iter_mut() {
                *v = s.mul(v, &inv);
            }
            let (pa, pt) = (a[r].clone(), t[r].clone());
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for (x, y) in a[i].iter_mut().zip(&pa) {
                        *x = s.sub(x, &s.mul(&f, y));
                    }
                    for (x, y) in t[i].iter_mut().zip(&pt) {
                        *x = s.sub(x, &s.mul(&f, y));
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }

        let mut kernel: Vec<Vec<u32>> = (0..cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut v = vec![0; cols];
                v[free] = 1;
                for (row, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = s.sub(&0, &a[row][free]);
                }
                v
            })
            .collect();
        let mut kernel_pivots = Vec::with_capacity(kernel.len());
        let mut done = 0;
        for c in (0..cols).rev() {
            let Some(k) = (done..kernel.len()).find(|&i| kernel[i][c] != 0) else {
                continue;
            };
            kernel.swap(done, k);
            let inv = s.inv(&kernel[done][c]);
            for v in kernel[done].iter_mut() {
                *v = s.mul(v, &inv);
            }
            let pivot = kernel[done].clone();
            for (i, row) in kernel.iter_mut().enumerate() {
                if i != done && row[c] != 0 {
                    let f = row[c];
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x = s.sub(x, &s.mul(&f, y));
                    }
                }
            }
            kernel_pivots.push(c);
            done += 1;
        }

        Self {
            p,
            cols,
            transform: t,
            pivot_cols,
            kernel,
            kernel_pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    #[cfg(test)]
    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn solve(&self, rhs: &[u32]) -> Option<Vec<u32>> {
        let s = Fp(self.p);
        let reduced: Vec<u32> = self
            .transform
            .iter()
            .map(|row| row.iter().zip(rhs).fold(0, |acc, (a, b)| s.add(&acc, &s.mul(a, b))))
            .collect();
        if reduced[self.rank()..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (row, &pc) in self.pivot_cols.iter().enumerate() {
            x[pc] = reduced[row];
        }
        for (v, &pc) in self.kernel.iter().zip(&self.kernel_pivots) {
            let f = x[pc];
            if f != 0 {
                for j in 0..self.cols {
                    x[j] = s.sub(&x[j], &s.mul(&f, &v[j]));
                }
            }
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(p: u32, m: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
        m.iter()
            .map(|row| {
                (row.iter().zip(x).map(|(a, b)| (*a as u64) * (*b as u64)).sum::<u64>() % p as u64)
                    as u32
            })
            .collect()
    }

    #[test]
    fn least_solution_by_enumeration() {
        let p = 3;
        let m = vec![vec![1, 2, 0, 1], vec![2, 1, 0, 2], vec![0, 0, 1, 1]];
        let solver = LinearSolver::new(p, &m, 4);
        assert_eq!(solver.rank(), 2);
        assert_eq!(solver.kernel_dim(), 2);
        for code in 0..81u32 {
            let x0: Vec<u32> = (0..4).map(|i| code / 3u32.pow(i) % 3).collect();
            let b = apply(p, &m, &x0);
            let got = solver.solve(&b).unwrap();
            assert_eq!(apply(p, &m, &got), b);
            // brute force least, highest coordinate most significant
            let least = (0..81u32)
                .map(|c| (0..4).map(|i| c / 3u32.pow(i) % 3).collect::<Vec<u32>>())
                .filter(|x| apply(p, &m, x) == b)
                .min_by(|a, b| a.iter().rev().cmp(b.iter().rev()))
                .unwrap();
            assert_eq!(got, least);
        }
        assert!(solver.solve(&[1, 0, 0]).is_none());
    }
}
