//! Dense matrices over the rationals, exact throughout.
//!
//! Sizes here are tiny (at most a few dozen rows), so plain Gaussian
//! elimination over `BigRational` is both exact and fast enough.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::{rat, Int, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMat { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        QMat::from_fn(r, c, |i, j| rat(rows[i][j]))
    }

    pub fn from_columns(cols: &[Vec<Rat>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        assert!(cols.iter().all(|col| col.len() == r));
        QMat::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: Rat) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Rat) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * s)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == QMat::identity(self.rows)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                let x = self.get(r, c);
                if !x.is_integer() {
                    return None;
                }
                row.push(i64::try_from(x.to_integer()).ok()?);
            }
            out.push(row);
        }
        Some(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for (c, vc) in v.iter().enumerate() {
                    if !vc.is_zero() {
                        acc += self.get(r, c) * vc;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: usize) -> QMat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = QMat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Reduced row echelon form; returns `(rref, pivot columns)`.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r0 = 0;
        for c in 0..m.cols {
            if r0 == m.rows {
                break;
            }
            let pivot = (r0..m.rows).find(|&r| !m.get(r, c).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(r0, p);
            let inv = m.get(r0, c).recip();
            for j in c..m.cols {
                let v = m.get(r0, j) * &inv;
                m.set(r0, j, v);
            }
            for r in 0..m.rows {
                if r != r0 && !m.get(r, c).is_zero() {
                    let f = m.get(r, c).clone();
                    for j in c..m.cols {
                        let v = m.get(r, j) - &(m.get(r0, j) * &f);
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(c);
            r0 += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..m.cols {
            let pivot = (c..m.rows).find(|&r| !m.get(r, c).is_zero());
            let Some(p) = pivot else { return Rat::zero() };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det *= m.get(c, c);
            let inv = m.get(c, c).recip();
            for r in c + 1..m.rows {
                if !m.get(r, c).is_zero() {
                    let f = m.get(r, c) * &inv;
                    for j in c..m.cols {
                        let v = m.get(r, j) - &(m.get(c, j) * &f);
                        m.set(r, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        self.solve(&QMat::identity(self.rows))
    }

    /// Solves `self · X = rhs` exactly, `None` if the system is unsolvable.
    pub fn solve(&self, rhs: &QMat) -> Option<QMat> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let k = self.cols;
        // augmented RREF
        let mut aug = QMat::zeros(n, k + rhs.cols);
        for r in 0..n {
            for c in 0..k {
                aug.set(r, c, self.get(r, c).clone());
            }
            for c in 0..rhs.cols {
                aug.set(r, k + c, rhs.get(r, c).clone());
            }
        }
        let (red, pivots) = aug.rref();
        // any pivot in the rhs block means inconsistency
        if pivots.iter().any(|&p| p >= k) {
            return None;
        }
        let mut x = QMat::zeros(k, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, red.get(row, k + c).clone());
            }
        }
        // verify (free columns were set to zero; the candidate must check out)
        if &(self * &x) != rhs {
            return None;
        }
        Some(x)
    }

    /// A deterministic basis of the right null space (pivoting on the
    /// smallest column index first).
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (red, pivots) = self.rref();
        let mut out = Vec::new();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut vec_ = vec![Rat::zero(); self.cols];
            vec_[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                vec_[pc] = -red.get(row, free).clone();
            }
            out.push(vec_);
        }
        out
    }

    /// Commutator `self·other - other·self`.
    pub fn bracket(&self, other: &QMat) -> QMat {
        &(self * other) - &(other * self)
    }

    pub fn flatten(&self) -> Vec<Rat> {
        self.data.clone()
    }
}

impl Add for &QMat {
    type Output = QMat;
    fn add(self, rhs: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &QMat {
    type Output = QMat;
    fn sub(self, rhs: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMat::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Neg for &QMat {
    type Output = QMat;
    fn neg(self) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| -self.get(i, j).clone())
    }
}

impl Mul for &QMat {
    type Output = QMat;
    fn mul(self, rhs: &QMat) -> QMat {
        assert_eq!(self.cols, rhs.rows);
        QMat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Rat::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * rhs.get(k, j);
                }
            }
            acc
        })
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Row Hermite-style echelon over the integers with a unimodular transform:
/// returns `(u, echelon)` with `u · m = echelon`, `u` invertible over `Z`.
///
/// Only the staircase shape matters to callers (pivot normalization is not
/// performed); `u` is built from elementary integer row operations.
pub fn integer_row_echelon(m: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut u: Vec<Vec<Int>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut r0 = 0;
    for c in 0..cols {
        if r0 == rows {
            break;
        }
        // gcd-reduce column c among rows r0..
        loop {
            let mut best: Option<usize> = None;
            for r in r0..rows {
                if !a[r][c].is_zero() && best.is_none_or(|b| a[r][c].abs() < a[b][c].abs()) {
                    best = Some(r);
                }
            }
            let Some(p) = best else { break };
            a.swap(r0, p);
            u.swap(r0, p);
            let mut done = true;
            for r in r0 + 1..rows {
                if !a[r][c].is_zero() {
                    let q = div_round(&a[r][c], &a[r0][c]);
                    row_sub(&mut a, r, r0, &q);
                    row_sub(&mut u, r, r0, &q);
                    if !a[r][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !a[r0][c].is_zero() {
            r0 += 1;
        }
    }
    (u, a)
}

fn row_sub(m: &mut [Vec<Int>], target: usize, source: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src.iter()) {
        *t -= q * s;
    }
}

/// Rounded division keeps the remainders small (plain floor also terminates).
fn div_round(a: &Int, b: &Int) -> Int {
    let two = Int::from(2);
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    if (r * two) >= b.abs() {
        q + Int::one()
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_inverse() {
        let a = QMat::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        let b = QMat::from_i64_rows(&[&[3], &[2]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(&a * &x, b);
        // inconsistent system
        let sing = QMat::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert!(sing.solve(&QMat::from_i64_rows(&[&[1], &[2]])).is_none());
    }

    #[test]
    fn nullspace_kernel() {
        let a = QMat::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn det_and_rank() {
        let a = QMat::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        assert_eq!(a.det(), rat(1));
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn echelon_is_unimodular() {
        let m: Vec<Vec<Int>> = [[2i64, 4, 4], [-6, 6, 12], [10, 4, 16]]
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        let (u, e) = integer_row_echelon(&m);
        // check u·m = e and |det u| = 1
        let um: Vec<Vec<Int>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| (0..3).map(|k| &u[i][k] * &m[k][j]).sum())
                    .collect()
            })
            .collect();
        assert_eq!(um, e);
        let uq = QMat::from_fn(3, 3, |i, j| Rat::from_integer(u[i][j].clone()));
        assert_eq!(uq.det().abs(), rat(1));
        // staircase: each row's first nonzero strictly right of the previous
        let lead = |r: &Vec<Int>| r.iter().position(|x| !x.is_zero());
        let l0 = lead(&e[0]);
        let l1 = lead(&e[1]);
        if let (Some(a), Some(b)) = (l0, l1) {
            assert!(a < b);
        }
    }
}
