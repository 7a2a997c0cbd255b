//! Dense exact linear algebra over `Z` and `Z/n`.
//!
//! `Z/n` is never assumed to be a field. Row spans over `Z/n` are
//! canonicalized with the Howell normal form, which plays the role reduced
//! row echelon form plays over a field: two matrices have the same row span
//! iff their Howell forms are identical.

use std::fmt;

use num_bigint::BigInt;

use crate::{Error, Result};

mod smith;

/// A dense integer matrix with fixed-width (`i128`) entries.
///
/// Arithmetic on these matrices is checked and reports [`Error::Overflow`]
/// instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn new<T: Into<i128>>(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            data: data.into_iter().map(Into::into).collect(),
        })
    }

    pub fn from_rows<R: AsRef<[T]>, T: Copy + Into<i128>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| x.into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn set(&mut self, i: usize, j: usize, value: i128) {
        self.data[i * self.cols + j] = value;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    let term = self
                        .get(i, k)
                        .checked_mul(other.get(k, j))
                        .ok_or(Error::Overflow("matrix product"))?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow("matrix product"))?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Whether all off-diagonal entries vanish.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i128> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a = self.data.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        let ovf = || Error::Overflow("determinant");
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                match (k + 1..n).find(|&i| a[i * n + k] != 0) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let lhs = a[i * n + j].checked_mul(a[k * n + k]).ok_or_else(ovf)?;
                    let rhs = a[i * n + k].checked_mul(a[k * n + j]).ok_or_else(ovf)?;
                    a[i * n + j] = lhs.checked_sub(rhs).ok_or_else(ovf)? / prev;
                }
            }
            prev = a[k * n + k];
        }
        Ok(sign * a[n * n - 1])
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn invariants(&self) -> Vec<i128> {
        self.d.diagonal().into_iter().filter(|&x| x != 0).collect()
    }
}

/// Smith normal form with unimodular transforms.
///
/// The diagonal of `d` is nonnegative, forms a divisibility chain, and any
/// zeros come last.
///
/// Row and column Hermite passes alternate until `d` is diagonal. After each
/// pass the transform rows that map into the zero rows of `d` form a kernel
/// basis; that basis is size-reduced and the remaining transform rows are
/// reduced against it, which leaves `d` unchanged and keeps `u` and `v`
/// small. A final pass of 2×2 gcd steps repairs the divisibility chain.
///
/// Intermediate values that leave `i128` are recomputed with unbounded
/// integers; [`Error::Overflow`] is returned only if `u`, `d` or `v` itself
/// does not fit.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    match smith::smith::<i128>(m) {
        Err(Error::Overflow(_)) => smith::smith::<BigInt>(m),
        other => other,
    }
}

// ---------------------------------------------------------------------------
// Z/n arithmetic

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`.
fn gcdx(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

#[inline]
pub(crate) fn neg_mod(a: u64, n: u64) -> u64 {
    if a == 0 {
        0
    } else {
        n - a
    }
}

pub(crate) fn reduce_signed(a: i128, n: u64) -> u64 {
    a.rem_euclid(n as i128) as u64
}

/// A unit `u` of `Z/n` with `u * a ≡ gcd(a, n) (mod n)`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    if a == 0 {
        return 1;
    }
    let g = gcd(a, n);
    let (a1, n1) = (a / g, n / g);
    let inv = if n1 == 1 {
        0
    } else {
        reduce_signed(gcdx(a1 as i128, n1 as i128).1, n1)
    };
    // lift inv (mod n1) to a unit mod n; such a lift always exists
    let mut u = inv;
    while gcd(u, n) != 1 {
        u += n1;
    }
    u % n
}

/// A dense matrix over `Z/n`, all entries reduced into `[0, n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn new(modulus: u64, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        let data = data.into_iter().map(|x| x % modulus).collect();
        Ok(ModMatrix {
            modulus,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Result<Self> {
        Self::new(modulus, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(modulus: u64, n: usize) -> Result<Self> {
        let mut m = Self::zeros(modulus, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    /// Builds a matrix from rows of (possibly negative) integers, reducing
    /// each entry mod `modulus`. An empty row list needs `cols` spelled out,
    /// hence the separate argument.
    pub fn from_rows<R: AsRef<[i64]>>(modulus: u64, cols: usize, rows: &[R]) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| reduce_signed(x as i128, modulus)));
        }
        Ok(ModMatrix {
            modulus,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub(crate) fn from_residue_rows(modulus: u64, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols && r.iter().all(|&x| x < modulus)));
        ModMatrix {
            modulus,
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        ModMatrix {
            modulus: self.modulus,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `self · x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let n = self.modulus;
        Ok(self
            .row_iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b % n, n), n))
            })
            .collect())
    }

    /// Stacks the rows of `other` below the rows of `self`.
    pub fn stack(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.modulus != other.modulus {
            return Err(Error::InvalidArgument(format!(
                "cannot stack matrices over Z/{} and Z/{}",
                self.modulus, other.modulus
            )));
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ModMatrix {
            modulus: self.modulus,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn howell_form(&self) -> HowellForm {
        howell_form(self)
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{} ", self.modulus)?;
        f.debug_list().entries(self.row_iter()).finish()
    }
}

/// A matrix in Howell normal form: the canonical generator matrix of its row
/// span over `Z/n`. Zero rows are dropped, so the matrix has one row per
/// pivot column.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HowellForm(ModMatrix);

impl HowellForm {
    pub fn matrix(&self) -> &ModMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ModMatrix {
        self.0
    }

    pub fn modulus(&self) -> u64 {
        self.0.modulus
    }

    pub fn cols(&self) -> usize {
        self.0.cols
    }

    /// `(column, pivot)` per row; each pivot divides the modulus.
    pub fn pivots(&self) -> Vec<(usize, u64)> {
        self.0
            .row_iter()
            .map(|row| {
                let c = row.iter().position(|&x| x != 0).expect("Howell rows are nonzero");
                (c, row[c])
            })
            .collect()
    }

    /// Number of elements in the row span.
    pub fn span_size(&self) -> Result<u128> {
        let n = self.0.modulus as u128;
        self.pivots()
            .into_iter()
            .try_fold(1u128, |acc, (_, p)| acc.checked_mul(n / p as u128))
            .ok_or(Error::Overflow("span size"))
    }

    /// Reduces `v` against the pivot rows. The residual is zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let n = self.0.modulus;
        let mut v: Vec<u64> = v.iter().map(|&x| x % n).collect();
        self.reduce_in_place(&mut v);
        v
    }

    /// [`HowellForm::reduce`] on a buffer of already reduced residues.
    pub fn reduce_in_place(&self, v: &mut [u64]) {
        let n = self.0.modulus;
        for row in self.0.row_iter() {
            let c = row.iter().position(|&x| x != 0).expect("Howell rows are nonzero");
            if v[..c].iter().any(|&x| x != 0) {
                break;
            }
            let p = row[c];
            if v[c] % p != 0 {
                break;
            }
            let q = v[c] / p;
            if q != 0 {
                for (x, &a) in v.iter_mut().zip(row).skip(c) {
                    *x = add_mod(*x, n - mul_mod(q, a, n), n);
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.0.cols && self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Whether the span of `self` is contained in the span of `other`.
    pub fn is_subspan_of(&self, other: &HowellForm) -> bool {
        self.0.modulus == other.0.modulus
            && self.0.cols == other.0.cols
            && self.0.row_iter().all(|row| other.contains(row))
    }
}

/// Howell normal form of the row span of `m` over `Z/n`.
pub fn howell_form(m: &ModMatrix) -> HowellForm {
    let n = m.modulus;
    let cols = m.cols;
    let mut pool: Vec<Vec<u64>> = m
        .row_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(<[u64]>::to_vec)
        .collect();
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();

    for j in 0..cols {
        let Some(first) = pool.iter().position(|r| r[j] != 0) else {
            continue;
        };
        let mut pivot = pool.swap_remove(first);
        for other in pool.iter_mut().filter(|r| r[j] != 0) {
            // unimodular 2x2 step: pivot <- s*pivot + t*other, other <- 0 at j
            let (x, y) = (pivot[j] as i128, other[j] as i128);
            let (g, s, t) = gcdx(x, y);
            let (s, t) = (reduce_signed(s, n), reduce_signed(t, n));
            let (ay, ax) = (reduce_signed(-(y / g), n), reduce_signed(x / g, n));
            for k in j..cols {
                let (a, b) = (pivot[k], other[k]);
                pivot[k] = add_mod(mul_mod(s, a, n), mul_mod(t, b, n), n);
                other[k] = add_mod(mul_mod(ay, a, n), mul_mod(ax, b, n), n);
            }
        }
        pool.retain(|r| r.iter().any(|&x| x != 0));

        let u = normalizing_unit(pivot[j], n);
        if u != 1 {
            for x in pivot[j..].iter_mut() {
                *x = mul_mod(*x, u, n);
            }
        }
        let p = pivot[j];
        let ann: Vec<u64> = pivot.iter().map(|&x| mul_mod(x, n / p, n)).collect();
        if ann.iter().any(|&x| x != 0) {
            pool.push(ann);
        }
        echelon.push((j, pivot));
    }
    debug_assert!(pool.is_empty());

    // reduce entries above each pivot into [0, p)
    for k in 0..echelon.len() {
        let (c, ref pivot_row) = echelon[k];
        let pivot_row = pivot_row.clone();
        let p = pivot_row[c];
        for (_, row) in echelon[..k].iter_mut() {
            let q = row[c] / p;
            if q != 0 {
                for (x, &a) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = add_mod(*x, n - mul_mod(q, a, n), n);
                }
            }
        }
    }

    HowellForm(ModMatrix::from_residue_rows(
        n,
        cols,
        echelon.into_iter().map(|(_, r)| r).collect(),
    ))
}

/// A solution set `{particular + k : k ∈ span(kernel)}` of `A·x = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<u64>,
    pub kernel: HowellForm,
}

/// Solves `A·x = c` over `Z/n`; `None` when no solution exists.
pub fn solve_mod(a: &ModMatrix, c: &[u64]) -> Result<Option<Solution>> {
    if c.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: c.len(),
        });
    }
    let n = a.modulus;
    let (m, k) = (a.rows, a.cols);

    // rows (A e_i | e_i) span {(A x | x)}
    let mut data = Vec::with_capacity(k * (m + k));
    for i in 0..k {
        data.extend((0..m).map(|r| a.get(r, i)));
        data.extend((0..k).map(|j| u64::from(i == j)));
    }
    let hf = howell_form(&ModMatrix::new(n, k, m + k, data)?);

    let mut kernel_rows = Vec::new();
    let mut v: Vec<u64> = c.iter().map(|&x| x % n).chain(std::iter::repeat_n(0, k)).collect();
    for row in hf.0.row_iter() {
        let col = row.iter().position(|&x| x != 0).expect("nonzero row");
        if col >= m {
            kernel_rows.push(row[m..].to_vec());
            continue;
        }
        if v[..col].iter().any(|&x| x != 0) {
            return Ok(None);
        }
        let p = row[col];
        if v[col] % p != 0 {
            return Ok(None);
        }
        let q = v[col] / p;
        for (x, &y) in v.iter_mut().zip(row) {
            *x = add_mod(*x, n - mul_mod(q, y, n), n);
        }
    }
    if v[..m].iter().any(|&x| x != 0) {
        return Ok(None);
    }
    // v = (c | 0) - (A y | y) with A y = c
    let particular = v[m..].iter().map(|&x| neg_mod(x, n)).collect();
    // rows with pivot in the right block are already in Howell form there
    let kernel = HowellForm(ModMatrix::from_residue_rows(n, k, kernel_rows));
    debug_assert_eq!(kernel, howell_form(kernel.matrix()));
    Ok(Some(Solution { particular, kernel }))
}

/// Generators of `{x : A·x = 0}`.
pub fn kernel_mod(a: &ModMatrix) -> HowellForm {
    solve_mod(a, &vec![0; a.rows])
        .expect("dimensions agree")
        .expect("the homogeneous system is solvable")
        .kernel
}

/// Intersection of two row spans, via the span of `(u | u)` and `(w | 0)`.
pub fn intersect_spans(a: &HowellForm, b: &HowellForm) -> Result<HowellForm> {
    if a.modulus() != b.modulus() || a.cols() != b.cols() {
        return Err(Error::InvalidArgument("spans live in different modules".into()));
    }
    let (n, k) = (a.modulus(), a.cols());
    let mut rows = Vec::new();
    for r in a.0.row_iter() {
        rows.push(r.iter().chain(r).copied().collect::<Vec<_>>());
    }
    for r in b.0.row_iter() {
        rows.push(r.iter().copied().chain(std::iter::repeat_n(0, k)).collect());
    }
    let hf = howell_form(&ModMatrix::from_residue_rows(n, 2 * k, rows));
    let tails =
        hf.0.row_iter()
            .filter(|r| r[..k].iter().all(|&x| x == 0))
            .map(|r| r[k..].to_vec())
            .collect();
    Ok(HowellForm(ModMatrix::from_residue_rows(n, k, tails)))
}
