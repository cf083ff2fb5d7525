//! Direct solvers for banded and cyclic banded linear systems.
//!
//! Factorizations are Gaussian elimination without pivoting, which is what
//! the curve solvers need: every matrix assembled in this crate is either
//! symmetric positive definite or diagonally dominant. Nothing is cached
//! between calls.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Square matrix with `kl` sub- and `ku` super-diagonals.
#[derive(Debug, Clone)]
pub struct BandedMatrix<T> {
    n: usize,
    kl: usize,
    ku: usize,
    // row-major, row i holds columns i-kl ..= i+ku
    data: Vec<T>,
}

impl<T: Scalar> BandedMatrix<T> {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        Self { n, kl, ku, data: vec![T::zero(); n * (kl + ku + 1)] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if j + self.kl < i || j > i + self.ku || i >= self.n || j >= self.n {
            return None;
        }
        Some(i * (self.kl + self.ku + 1) + (j + self.kl - i))
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.slot(i, j).map_or(T::zero(), |k| self.data[k])
    }

    /// Panics if `(i, j)` lies outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let k = self.slot(i, j).expect("entry outside band");
        self.data[k] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: T) {
        let k = self.slot(i, j).expect("entry outside band");
        self.data[k] = self.data[k] + v;
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.ku).min(self.n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }

    pub fn factor(&self) -> Result<BandedLu<T>> {
        let mut lu = self.clone();
        let n = lu.n;
        for k in 0..n {
            let pivot = lu.get(k, k);
            if pivot == T::zero() || !pivot.is_finite() {
                return Err(Error::SolveFailure(k));
            }
            let rows = (k + lu.kl).min(n - 1);
            let cols = (k + lu.ku).min(n - 1);
            for i in k + 1..=rows {
                let l = lu.get(i, k) / pivot;
                lu.set(i, k, l);
                if l == T::zero() {
                    continue;
                }
                for j in k + 1..=cols {
                    let v = lu.get(i, j) - l * lu.get(k, j);
                    lu.set(i, j, v);
                }
            }
        }
        Ok(BandedLu { lu })
    }

    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        let lu = self.factor()?;
        let mut x = rhs.to_vec();
        lu.solve_in_place(&mut x);
        Ok(x)
    }
}

/// LU factors of a [`BandedMatrix`], stored in the same band.
#[derive(Debug, Clone)]
pub struct BandedLu<T> {
    lu: BandedMatrix<T>,
}

impl<T: Scalar> BandedLu<T> {
    pub fn solve_in_place(&self, x: &mut [T]) {
        let m = &self.lu;
        let n = m.n;
        assert_eq!(x.len(), n);
        for i in 0..n {
            let lo = i.saturating_sub(m.kl);
            let mut acc = x[i];
            for j in lo..i {
                acc = acc - m.get(i, j) * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let hi = (i + m.ku).min(n - 1);
            let mut acc = x[i];
            for j in i + 1..=hi {
                acc = acc - m.get(i, j) * x[j];
            }
            x[i] = acc / m.get(i, i);
        }
    }
}

/// Banded matrix whose band wraps around the corners, i.e. entry
/// `(i, (i + d) mod n)` for `-kl <= d <= ku`. Circulant difference operators
/// on closed curves have this shape.
#[derive(Debug, Clone)]
pub struct CyclicBandedMatrix<T> {
    n: usize,
    kl: usize,
    ku: usize,
    // row i, offset d stored at i*(kl+ku+1) + (d + kl)
    data: Vec<T>,
}

impl<T: Scalar> CyclicBandedMatrix<T> {
    /// Requires `n > kl + ku` so that the wrapped entries do not collide.
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        assert!(n > kl + ku, "cyclic band too wide for dimension {n}");
        Self { n, kl, ku, data: vec![T::zero(); n * (kl + ku + 1)] }
    }

    /// Circulant matrix with the same stencil `[a_{-kl}, ..., a_{ku}]` on every row.
    pub fn circulant(n: usize, kl: usize, stencil: &[T]) -> Self {
        let ku = stencil.len() - 1 - kl;
        let mut m = Self::zeros(n, kl, ku);
        for i in 0..n {
            for (k, &v) in stencil.iter().enumerate() {
                m.data[i * stencil.len() + k] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Sets the entry at row `i`, signed offset `d` from the diagonal.
    pub fn set_offset(&mut self, i: usize, d: isize, v: T) {
        let w = self.kl + self.ku + 1;
        let k = (d + self.kl as isize) as usize;
        assert!(k < w, "offset outside band");
        self.data[i * w + k] = v;
    }

    pub fn get_offset(&self, i: usize, d: isize) -> T {
        let w = self.kl + self.ku + 1;
        self.data[i * w + (d + self.kl as isize) as usize]
    }

    #[inline]
    fn col(&self, i: usize, d: isize) -> usize {
        (i as isize + d).rem_euclid(self.n as isize) as usize
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| (-(self.kl as isize)..=self.ku as isize).map(|d| self.get_offset(i, d) * x[self.col(i, d)]).sum())
            .collect()
    }

    /// Factors `A = B + U Vᵀ`, with `B` the non-wrapping band and the corner
    /// entries as a rank-(kl+ku) update handled by Sherman–Morrison–Woodbury.
    pub fn factor(&self) -> Result<CyclicLu<T>> {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        let mut band = BandedMatrix::zeros(n, kl, ku);
        // rows carrying wrapped entries, with their wrapped (column, value) pairs
        let mut wrapped: Vec<(usize, Vec<(usize, T)>)> = Vec::new();
        for i in 0..n {
            let mut extra = Vec::new();
            for d in -(kl as isize)..=ku as isize {
                let v = self.get_offset(i, d);
                let j = i as isize + d;
                if (0..n as isize).contains(&j) {
                    band.set(i, j as usize, v);
                } else if v != T::zero() {
                    extra.push((self.col(i, d), v));
                }
            }
            if !extra.is_empty() {
                wrapped.push((i, extra));
            }
        }
        let b = band.factor()?;
        let p = wrapped.len();
        // Z = B⁻¹ U, one column per wrapped row
        let mut z = Vec::with_capacity(p);
        for (row, _) in &wrapped {
            let mut e = vec![T::zero(); n];
            e[*row] = T::one();
            b.solve_in_place(&mut e);
            z.push(e);
        }
        // capacitance C = I + Vᵀ Z
        let mut cap = vec![T::zero(); p * p];
        for (a, (_, vrow)) in wrapped.iter().enumerate() {
            for c in 0..p {
                let dot: T = vrow.iter().map(|&(j, v)| v * z[c][j]).sum();
                cap[a * p + c] = dot + if a == c { T::one() } else { T::zero() };
            }
        }
        let cap = DenseLu::factor(cap, p)?;
        Ok(CyclicLu { b, z, v: wrapped.into_iter().map(|(_, r)| r).collect(), cap })
    }

    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        let f = self.factor()?;
        let mut x = rhs.to_vec();
        f.solve_in_place(&mut x);
        Ok(x)
    }
}

/// Factorization of a [`CyclicBandedMatrix`].
#[derive(Debug, Clone)]
pub struct CyclicLu<T> {
    b: BandedLu<T>,
    z: Vec<Vec<T>>,
    v: Vec<Vec<(usize, T)>>,
    cap: DenseLu<T>,
}

impl<T: Scalar> CyclicLu<T> {
    pub fn solve_in_place(&self, x: &mut [T]) {
        self.b.solve_in_place(x);
        if self.v.is_empty() {
            return;
        }
        let mut w: Vec<T> = self.v.iter().map(|row| row.iter().map(|&(j, v)| v * x[j]).sum()).collect();
        self.cap.solve_in_place(&mut w);
        for (zc, &wc) in self.z.iter().zip(&w) {
            for (xi, &zi) in x.iter_mut().zip(zc) {
                *xi = *xi - zi * wc;
            }
        }
    }
}

/// Small dense LU with partial pivoting, used for the Woodbury capacitance matrix.
#[derive(Debug, Clone)]
struct DenseLu<T> {
    n: usize,
    a: Vec<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> DenseLu<T> {
    fn factor(mut a: Vec<T>, n: usize) -> Result<Self> {
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[i * n + k].abs().partial_cmp(&a[j * n + k].abs()).unwrap()).unwrap();
            if a[p * n + k] == T::zero() || !a[p * n + k].is_finite() {
                return Err(Error::SolveFailure(k));
            }
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            for i in k + 1..n {
                let l = a[i * n + k] / a[k * n + k];
                a[i * n + k] = l;
                for c in k + 1..n {
                    a[i * n + c] = a[i * n + c] - l * a[k * n + c];
                }
            }
        }
        Ok(Self { n, a, perm })
    }

    fn solve_in_place(&self, x: &mut [T]) {
        let n = self.n;
        let mut y: Vec<T> = self.perm.iter().map(|&p| x[p]).collect();
        for i in 0..n {
            for j in 0..i {
                y[i] = y[i] - self.a[i * n + j] * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                y[i] = y[i] - self.a[i * n + j] * y[j];
            }
            y[i] = y[i] / self.a[i * n + i];
        }
        x.copy_from_slice(&y);
    }
}
