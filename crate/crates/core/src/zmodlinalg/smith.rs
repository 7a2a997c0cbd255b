//! The Smith elimination, generic over the entry type so that a run which
//! overflows `i128` can be repeated with unbounded integers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Euclid, FromPrimitive, Signed, ToPrimitive, Zero};

use super::{IntMatrix, SmithForm};
use crate::{Error, Result};

const SMITH: Error = Error::Overflow("Smith normal form");

pub(super) trait Entry: Clone + PartialEq + Sized {
    fn from_i128(x: i128) -> Self;
    fn to_i128(&self) -> Option<i128>;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn to_f64(&self) -> f64;
    fn from_f64(x: f64) -> Option<Self>;
    /// `a·x + b·y`
    fn linear(a: &Self, x: &Self, b: &Self, y: &Self) -> Result<Self>;
    fn neg(&self) -> Result<Self>;
    /// `(⌊self / d⌋, self mod d)` with `0 ≤ self mod d < |d|`.
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self);
    /// Quotient of an exact division.
    fn div_exact(&self, d: &Self) -> Self;

    fn zero() -> Self {
        Self::from_i128(0)
    }

    fn one() -> Self {
        Self::from_i128(1)
    }

    fn abs(&self) -> Result<Self> {
        if self.is_negative() {
            self.neg()
        } else {
            Ok(self.clone())
        }
    }
}

impl Entry for i128 {
    fn from_i128(x: i128) -> Self {
        x
    }

    fn to_i128(&self) -> Option<i128> {
        Some(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn is_negative(&self) -> bool {
        *self < 0
    }

    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn from_f64(x: f64) -> Option<Self> {
        (x.abs() < 1e37).then_some(x as i128)
    }

    fn linear(a: &Self, x: &Self, b: &Self, y: &Self) -> Result<Self> {
        a.checked_mul(*x)
            .and_then(|s| b.checked_mul(*y).and_then(|t| s.checked_add(t)))
            .ok_or(SMITH)
    }

    fn neg(&self) -> Result<Self> {
        self.checked_neg().ok_or(SMITH)
    }

    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        (i128::div_euclid(*self, *d), i128::rem_euclid(*self, *d))
    }

    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

impl Entry for BigInt {
    fn from_i128(x: i128) -> Self {
        BigInt::from(x)
    }

    fn to_i128(&self) -> Option<i128> {
        ToPrimitive::to_i128(self)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::INFINITY)
    }

    fn from_f64(x: f64) -> Option<Self> {
        FromPrimitive::from_f64(x)
    }

    fn linear(a: &Self, x: &Self, b: &Self, y: &Self) -> Result<Self> {
        Ok(a * x + b * y)
    }

    fn neg(&self) -> Result<Self> {
        Ok(-self)
    }

    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        (Euclid::div_euclid(self, d), Euclid::rem_euclid(self, d))
    }

    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

/// Dense row-major matrix over an [`Entry`] type.
#[derive(Clone)]
struct Grid<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Entry> Grid<T> {
    fn from_int(m: &IntMatrix) -> Self {
        Grid {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&x| T::from_i128(x)).collect(),
        }
    }

    fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Grid { rows: n, cols: n, data }
    }

    fn to_int(&self) -> Result<IntMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.to_i128().ok_or(SMITH))
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::new(self.rows, self.cols, data)
    }

    fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Grid {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(T::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `row[target] -= factor * row[source]`
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &T) -> Result<()> {
        if factor.is_zero() {
            return Ok(());
        }
        let minus = factor.neg()?;
        for j in 0..self.cols {
            let v = T::linear(&T::one(), self.get(target, j), &minus, self.get(source, j))?;
            self.set(target, j, v);
        }
        Ok(())
    }

    /// `col[target] -= factor * col[source]`
    fn sub_col_multiple(&mut self, target: usize, source: usize, factor: &T) -> Result<()> {
        if factor.is_zero() {
            return Ok(());
        }
        let minus = factor.neg()?;
        for i in 0..self.rows {
            let v = T::linear(&T::one(), self.get(i, target), &minus, self.get(i, source))?;
            self.set(i, target, v);
        }
        Ok(())
    }

    /// `(row[i], row[k]) ← (a·row[i] + b·row[k], c·row[i] + e·row[k])`
    fn combine_rows(&mut self, i: usize, k: usize, [a, b, c, e]: &[T; 4]) -> Result<()> {
        for j in 0..self.cols {
            let (x, y) = (self.get(i, j), self.get(k, j));
            let (nx, ny) = (T::linear(a, x, b, y)?, T::linear(c, x, e, y)?);
            self.set(i, j, nx);
            self.set(k, j, ny);
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            let v = self.get(i, j).neg()?;
            self.set(i, j, v);
        }
        Ok(())
    }
}

/// See [`super::smith_normal_form`].
pub(super) fn smith<T: Entry>(m: &IntMatrix) -> Result<SmithForm> {
    let mut d = Grid::<T>::from_int(m);
    let mut u = Grid::identity(m.rows);
    let mut v = Grid::identity(m.cols);
    loop {
        row_hermite(&mut d, &mut u)?;
        reduce_kernel_rows(&d, &mut u)?;
        if d.is_diagonal() {
            break;
        }
        let (mut dt, mut vt) = (d.transpose(), v.transpose());
        row_hermite(&mut dt, &mut vt)?;
        reduce_kernel_rows(&dt, &mut vt)?;
        d = dt.transpose();
        v = vt.transpose();
        if d.is_diagonal() {
            break;
        }
    }

    // Hermite passes leave the nonzero diagonal entries first.
    let rank = (0..d.rows.min(d.cols)).take_while(|&i| !d.get(i, i).is_zero()).count();
    for i in 0..rank {
        if d.get(i, i).is_negative() {
            d.negate_row(i)?;
            u.negate_row(i)?;
        }
    }
    for i in 0..rank {
        for j in i + 1..rank {
            let (a, b) = (d.get(i, i).clone(), d.get(j, j).clone());
            if b.div_rem_euclid(&a).1.is_zero() {
                continue;
            }
            // diag(a, b) → diag(gcd, lcm): add column j to column i, combine
            // rows i and j by Bezout, then clear the leftover in row i.
            let minus_one = T::one().neg()?;
            d.sub_col_multiple(i, j, &minus_one)?;
            v.sub_col_multiple(i, j, &minus_one)?;
            let (g, s, t) = gcdx(&a, &b)?;
            let rows = [s, t, b.div_exact(&g).neg()?, a.div_exact(&g)];
            d.combine_rows(i, j, &rows)?;
            u.combine_rows(i, j, &rows)?;
            let q = d.get(i, j).div_exact(&g);
            d.sub_col_multiple(j, i, &q)?;
            v.sub_col_multiple(j, i, &q)?;
        }
    }
    Ok(SmithForm {
        u: u.to_int()?,
        d: d.to_int()?,
        v: v.to_int()?,
    })
}

/// `(g, s, t)` with `g = gcd(a, b) ≥ 0` and `s·a + t·b = g`.
fn gcdx<T: Entry>(a: &T, b: &T) -> Result<(T, T, T)> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (T::one(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem_euclid(&r1);
        let mq = q.neg()?;
        let s = T::linear(&T::one(), &s0, &mq, &s1)?;
        let t = T::linear(&T::one(), &t0, &mq, &t1)?;
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    if r0.is_negative() {
        Ok((r0.neg()?, s0.neg()?, t0.neg()?))
    } else {
        Ok((r0, s0, t0))
    }
}

/// The integer nearest to `b / a`.
fn nearest_quotient<T: Entry>(b: &T, a: &T) -> Result<T> {
    let (q, r) = b.div_rem_euclid(a);
    // r ∈ [0, |a|); step once more if |a| − r is the smaller remainder.
    let rest = T::linear(&T::one(), &a.abs()?, &T::one().neg()?, &r)?;
    if r.cmp_abs(&rest) == Ordering::Greater {
        let step = if a.is_negative() { T::one().neg()? } else { T::one() };
        T::linear(&T::one(), &q, &T::one(), &step)
    } else {
        Ok(q)
    }
}

/// Brings `d` to row Hermite form, applying the same row operations to `u`.
/// Pivots are positive and the entries above a pivot lie in `[0, pivot)`.
fn row_hermite<T: Entry>(d: &mut Grid<T>, u: &mut Grid<T>) -> Result<()> {
    let mut row = 0;
    for col in 0..d.cols {
        if row == d.rows {
            break;
        }
        // Euclid across every candidate row at once: the smallest entry is
        // the pivot, the others are reduced modulo it.
        while let Some(p) = (row..d.rows)
            .filter(|&i| !d.get(i, col).is_zero())
            .min_by(|&i, &k| d.get(i, col).cmp_abs(d.get(k, col)))
        {
            d.swap_rows(row, p);
            u.swap_rows(row, p);
            let a = d.get(row, col).clone();
            let mut done = true;
            for i in row + 1..d.rows {
                if !d.get(i, col).is_zero() {
                    let q = nearest_quotient(d.get(i, col), &a)?;
                    d.sub_row_multiple(i, row, &q)?;
                    u.sub_row_multiple(i, row, &q)?;
                    done &= d.get(i, col).is_zero();
                }
            }
            if done {
                break;
            }
        }
        if d.get(row, col).is_zero() {
            continue;
        }
        if d.get(row, col).is_negative() {
            d.negate_row(row)?;
            u.negate_row(row)?;
        }
        let p = d.get(row, col).clone();
        for k in 0..row {
            let q = d.get(k, col).div_rem_euclid(&p).0;
            d.sub_row_multiple(k, row, &q)?;
            u.sub_row_multiple(k, row, &q)?;
        }
        row += 1;
    }
    Ok(())
}

fn norm2<T: Entry>(v: &[T]) -> f64 {
    v.iter().map(|x| x.to_f64() * x.to_f64()).sum()
}

/// Replaces `target` by `target − k·source` if that shortens it, with `k`
/// the rounded projection coefficient.
fn try_shorten<T: Entry>(m: &mut Grid<T>, target: usize, source: usize) -> Result<bool> {
    let (t, s) = (m.row(target), m.row(source));
    let ss = norm2(s);
    if ss == 0.0 {
        return Ok(false);
    }
    let ts: f64 = t.iter().zip(s).map(|(x, y)| x.to_f64() * y.to_f64()).sum();
    let k = (ts / ss).round();
    if k == 0.0 || !k.is_finite() {
        return Ok(false);
    }
    let Some(minus_k) = T::from_f64(-k) else {
        return Ok(false);
    };
    let candidate: Option<Vec<T>> = t
        .iter()
        .zip(s)
        .map(|(x, y)| T::linear(&T::one(), x, &minus_k, y).ok())
        .collect();
    let Some(candidate) = candidate else {
        return Ok(false);
    };
    if norm2(&candidate) < norm2(t) {
        for (j, x) in candidate.into_iter().enumerate() {
            m.set(target, j, x);
        }
        return Ok(true);
    }
    Ok(false)
}

/// Rows of `u` opposite zero rows of `d` lie in the left kernel of the
/// original matrix. Size-reduces them among themselves, then reduces every
/// other row of `u` against them; `u · m · v` is unchanged.
fn reduce_kernel_rows<T: Entry>(d: &Grid<T>, u: &mut Grid<T>) -> Result<()> {
    let kernel: Vec<usize> = (0..d.rows).filter(|&i| d.is_zero_row(i)).collect();
    if kernel.is_empty() {
        return Ok(());
    }
    let limit = 64 * u.rows * u.rows;
    for _ in 0..limit {
        let mut changed = false;
        for &i in &kernel {
            for &j in &kernel {
                if i != j {
                    changed |= try_shorten(u, i, j)?;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for i in (0..d.rows).filter(|i| !kernel.contains(i)) {
        for _ in 0..limit {
            let mut changed = false;
            for &j in &kernel {
                changed |= try_shorten(u, i, j)?;
            }
            if !changed {
                break;
            }
        }
    }
    Ok(())
}
