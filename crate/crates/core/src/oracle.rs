//! Brute-force reference computations.
//!
//! Nothing here touches Howell or Smith forms or the constraint solver: spans
//! are closed under addition element by element, forms are filtered one by
//! one, and pairings are evaluated from their Gram matrices. These are the
//! oracles the property suites and the `selftest` command compare against,
//! so they only work on small inputs.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::{BigInt, BigUint, Sign};

use crate::zmodlinalg::IntMatrix;
use crate::{Error, Result};

fn check_size(size: u128, cap: u64) -> Result<()> {
    if size > cap as u128 {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(())
}

/// Every vector of `(Z/n)^len`, first coordinate fastest.
pub fn all_vectors(n: u64, len: usize, cap: u64) -> Result<Vec<Vec<u64>>> {
    let size = (n as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    check_size(size, cap)?;
    let mut out = Vec::with_capacity(size as usize);
    let mut v = vec![0u64; len];
    for _ in 0..size {
        out.push(v.clone());
        for c in v.iter_mut() {
            *c += 1;
            if *c < n {
                break;
            }
            *c = 0;
        }
    }
    Ok(out)
}

/// The additive closure of `gens` in `⊕ Z/moduli[i]`, by breadth-first search.
pub fn span(moduli: &[u64], gens: &[Vec<u64>], cap: u64) -> Result<BTreeSet<Vec<u64>>> {
    let zero = vec![0u64; moduli.len()];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u64> = x
                .iter()
                .zip(g)
                .zip(moduli)
                .map(|((&a, &b), &d)| (a + b % d) % d)
                .collect();
            if seen.insert(y.clone()) {
                check_size(seen.len() as u128, cap)?;
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Row span of a matrix over `Z/n` given as rows.
pub fn row_span(n: u64, cols: usize, rows: &[Vec<u64>], cap: u64) -> Result<BTreeSet<Vec<u64>>> {
    span(&vec![n; cols], rows, cap)
}

/// All `x` with `A·x = c` over `Z/n`, `A` given as rows.
pub fn solutions(n: u64, a: &[Vec<u64>], cols: usize, c: &[u64], cap: u64) -> Result<Vec<Vec<u64>>> {
    Ok(all_vectors(n, cols, cap)?
        .into_iter()
        .filter(|x| {
            a.iter()
                .zip(c)
                .all(|(row, &ci)| row.iter().zip(x).map(|(&p, &q)| p * q % n).sum::<u64>() % n == ci % n)
        })
        .collect())
}

/// Order of `x` in `⊕ Z/moduli[i]` by repeated addition.
pub fn element_order(moduli: &[u64], x: &[u64]) -> u64 {
    let mut acc = x.to_vec();
    let mut m = 1;
    while acc.iter().any(|&a| a != 0) {
        for ((a, &b), &d) in acc.iter_mut().zip(x).zip(moduli) {
            *a = (*a + b) % d;
        }
        m += 1;
    }
    m
}

/// Number of `x` with `k·x = c`, by enumeration.
pub fn count_solutions(moduli: &[u64], k: u64, c: &[u64], cap: u64) -> Result<u128> {
    let size = moduli.iter().map(|&d| d as u128).product::<u128>();
    check_size(size, cap)?;
    let mut count = 0;
    let mut x = vec![0u64; moduli.len()];
    for _ in 0..size {
        if x.iter().zip(c).zip(moduli).all(|((&a, &b), &d)| (k % d) * a % d == b) {
            count += 1;
        }
        for (a, &d) in x.iter_mut().zip(moduli) {
            *a += 1;
            if *a < d {
                break;
            }
            *a = 0;
        }
    }
    Ok(count)
}

/// The standard symplectic pairing `Σ x_{2i} y_{2i+1} − x_{2i+1} y_{2i}` on
/// `(Z/r)^2g`.
pub fn weil(r: u64, x: &[u64], y: &[u64]) -> u64 {
    let mut acc = 0i64;
    for i in (0..x.len()).step_by(2) {
        acc += (x[i] * y[i + 1]) as i64 - (x[i + 1] * y[i]) as i64;
    }
    acc.rem_euclid(r as i64) as u64
}

/// A form given by strictly upper triangular coefficients (row-major), as
/// its full antisymmetric Gram matrix.
pub fn gram(n: usize, coeffs: &[u64]) -> Vec<Vec<i64>> {
    let mut b = vec![vec![0i64; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            b[i][j] = coeffs[k] as i64;
            b[j][i] = -(coeffs[k] as i64);
            k += 1;
        }
    }
    debug_assert_eq!(k, coeffs.len());
    b
}

/// `xᵀ B y mod r`.
pub fn eval_gram(r: u64, b: &[Vec<i64>], x: &[u64], y: &[u64]) -> u64 {
    let mut acc = 0i64;
    for (i, row) in b.iter().enumerate() {
        for (j, &bij) in row.iter().enumerate() {
            acc += x[i] as i64 * bij * y[j] as i64;
        }
    }
    acc.rem_euclid(r as i64) as u64
}

/// Whether `σ, τ` are both of order `r` and generate `r²` elements.
pub fn is_bicyclic(r: u64, sigma: &[u64], tau: &[u64]) -> bool {
    let moduli = vec![r; sigma.len()];
    element_order(&moduli, sigma) == r
        && element_order(&moduli, tau) == r
        && span(&moduli, &[sigma.to_vec(), tau.to_vec()], u64::MAX)
            .map(|s| s.len() as u64 == r * r)
            .unwrap_or(false)
}

/// Coefficient vectors of all forms vanishing on every `e`-isotropic pair;
/// with `primitive_only`, on every isotropic bicyclic pair.
pub fn isotropic_annihilator(g: usize, r: u64, primitive_only: bool, cap: u64) -> Result<BTreeSet<Vec<u64>>> {
    let n = 2 * g;
    let elements = all_vectors(r, n, cap)?;
    let mut pairs = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        for y in &elements[i + 1..] {
            if weil(r, x, y) == 0 && (!primitive_only || is_bicyclic(r, x, y)) {
                pairs.push((x, y));
            }
        }
    }
    let forms = all_vectors(r, n * (n - 1) / 2, cap)?;
    Ok(forms
        .into_iter()
        .filter(|c| {
            let b = gram(n, c);
            pairs.iter().all(|(x, y)| eval_gram(r, &b, x, y) == 0)
        })
        .collect())
}

/// Every subgroup `≅ (Z/r)²` of `(Z/r)^2g`, as element sets; only isotropic
/// ones when `isotropic_only`.
pub fn bicyclic_subgroups(g: usize, r: u64, isotropic_only: bool, cap: u64) -> Result<BTreeSet<BTreeSet<Vec<u64>>>> {
    let n = 2 * g;
    let moduli = vec![r; n];
    let elements = all_vectors(r, n, cap)?;
    let mut out = BTreeSet::new();
    for x in &elements {
        for y in &elements {
            if isotropic_only && weil(r, x, y) != 0 {
                continue;
            }
            if !is_bicyclic(r, x, y) {
                continue;
            }
            out.insert(span(&moduli, &[x.clone(), y.clone()], cap)?);
        }
    }
    Ok(out)
}

/// Coefficient vectors of all forms vanishing identically on `A × A` for
/// every `A` in `family`.
pub fn kernel_intersection(
    g: usize,
    r: u64,
    family: &BTreeSet<BTreeSet<Vec<u64>>>,
    cap: u64,
) -> Result<BTreeSet<Vec<u64>>> {
    let n = 2 * g;
    let forms = all_vectors(r, n * (n - 1) / 2, cap)?;
    Ok(forms
        .into_iter()
        .filter(|c| {
            let b = gram(n, c);
            family
                .iter()
                .all(|a| a.iter().all(|x| a.iter().all(|y| eval_gram(r, &b, x, y) == 0)))
        })
        .collect())
}

/// Exact copy of an integer matrix, for products that may leave `i128`.
pub fn to_big(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Integer matrix product, for checking transforms.
pub fn int_matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Whether a square matrix has determinant `±1`.
pub fn is_unimodular(m: &[Vec<BigInt>]) -> bool {
    int_det(m).magnitude() == &BigUint::from(1u32)
}

/// Determinant by cofactor expansion; fine up to 8×8.
pub fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    match n {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        _ => (0..n)
            .filter(|&j| m[0][j].sign() != Sign::NoSign)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * int_det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}
