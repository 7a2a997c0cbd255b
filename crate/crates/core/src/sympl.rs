//! The symplectic group `Γ = (Z/r)^2g` with its Weil pairing, and alternating
//! bi-additive forms on it.
//!
//! Basis order is `a₁, b₁, a₂, b₂, …`: `a_i` is coordinate `2i` and `b_i` is
//! coordinate `2i + 1` (zero-based `i`). A form is stored by its strictly
//! upper triangular coefficients `c_ij`, `i < j`, flattened row by row:
//! `(0,1), (0,2), …, (0,n-1), (1,2), …`, and evaluates as
//!
//! ```text
//! b(x, y) = Σ_{i<j} c_ij (x_i y_j − x_j y_i)  mod r.
//! ```
//!
//! These forms are exactly the alternating bi-additive maps `Γ × Γ → Z/r`,
//! i.e. the dual of `Λ²Γ`, which models `H²(Γ, C*)`.

use serde::{Deserialize, Serialize};

use crate::brauer::FormSubmodule;
use crate::finab::{FinAbGroup, GroupElement, Subgroup};
use crate::zmodlinalg::{add_mod, kernel_mod, mul_mod, neg_mod, ModMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymplecticSpace {
    g: usize,
    r: u64,
}

impl SymplecticSpace {
    pub fn new(g: usize, r: u64) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidArgument("genus must be at least 1".into()));
        }
        if r < 2 {
            return Err(Error::InvalidModulus(r));
        }
        Ok(SymplecticSpace { g, r })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// `2g`, the rank of `Γ`.
    pub fn dim(&self) -> usize {
        2 * self.g
    }

    /// `g(2g − 1)`, the rank of the free module of alternating forms.
    pub fn form_rank(&self) -> usize {
        self.dim() * (self.dim() - 1) / 2
    }

    pub fn group(&self) -> FinAbGroup {
        FinAbGroup::homocyclic(self.r, self.dim()).expect("r >= 2")
    }

    /// `a_i`, zero-based.
    pub fn a(&self, i: usize) -> GroupElement {
        self.group().basis_element(2 * i)
    }

    /// `b_i`, zero-based.
    pub fn b(&self, i: usize) -> GroupElement {
        self.group().basis_element(2 * i + 1)
    }

    /// Position of the coefficient `c_ij`, `i < j`, in the flattened layout.
    pub fn coeff_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim());
        let n = self.dim();
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    /// The vector `w` with `b(x, y) = ⟨coeffs(b), w⟩` for every form `b`:
    /// the coordinates of `x ∧ y`.
    pub fn wedge(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let (n, r) = (self.dim(), self.r);
        let mut w = Vec::with_capacity(self.form_rank());
        for i in 0..n {
            for j in i + 1..n {
                let plus = mul_mod(x[i], y[j], r);
                let minus = mul_mod(x[j], y[i], r);
                w.push(add_mod(plus, neg_mod(minus, r), r));
            }
        }
        w
    }

    /// The Weil pairing on raw coordinates.
    pub fn weil(&self, x: &[u64], y: &[u64]) -> u64 {
        let r = self.r;
        (0..self.g).fold(0, |acc, i| {
            let t = add_mod(
                mul_mod(x[2 * i], y[2 * i + 1], r),
                neg_mod(mul_mod(x[2 * i + 1], y[2 * i], r), r),
                r,
            );
            add_mod(acc, t, r)
        })
    }

    fn check_element(&self, x: &GroupElement) -> Result<()> {
        if x.coords().len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.coords().len(),
            });
        }
        if x.coords().iter().any(|&c| c >= self.r) {
            return Err(Error::InvalidArgument(format!("{x:?} is not reduced mod {}", self.r)));
        }
        Ok(())
    }
}

/// An alternating bi-additive form `Γ × Γ → Z/r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AltForm {
    space: SymplecticSpace,
    coeffs: Vec<u64>,
}

impl AltForm {
    pub fn new(space: SymplecticSpace, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != space.form_rank() {
            return Err(Error::DimensionMismatch {
                expected: space.form_rank(),
                found: coeffs.len(),
            });
        }
        let coeffs = coeffs.into_iter().map(|c| c % space.r).collect();
        Ok(AltForm { space, coeffs })
    }

    pub fn zero(space: SymplecticSpace) -> Self {
        AltForm {
            space,
            coeffs: vec![0; space.form_rank()],
        }
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `c_ij` for `i < j`.
    pub fn coeff(&self, i: usize, j: usize) -> u64 {
        self.coeffs[self.space.coeff_index(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: u64) -> AltForm {
        let r = self.space.r;
        AltForm {
            space: self.space,
            coeffs: self.coeffs.iter().map(|&c| mul_mod(c, k % r, r)).collect(),
        }
    }

    pub fn add(&self, other: &AltForm) -> Result<AltForm> {
        if self.space != other.space {
            return Err(Error::InvalidArgument("forms on different spaces".into()));
        }
        let r = self.space.r;
        Ok(AltForm {
            space: self.space,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| add_mod(a, b, r))
                .collect(),
        })
    }

    /// Evaluates the defining double sum on raw coordinates.
    pub fn eval_coords(&self, x: &[u64], y: &[u64]) -> u64 {
        let (n, r) = (self.space.dim(), self.space.r);
        let mut acc = 0;
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                let c = self.coeffs[k];
                k += 1;
                if c == 0 {
                    continue;
                }
                let t = add_mod(mul_mod(x[i], y[j], r), neg_mod(mul_mod(x[j], y[i], r), r), r);
                acc = add_mod(acc, mul_mod(c, t, r), r);
            }
        }
        acc
    }

    /// The antisymmetric Gram matrix `B` with `b(x, y) = xᵀ B y`.
    pub fn gram_matrix(&self) -> ModMatrix {
        let (n, r) = (self.space.dim(), self.space.r);
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let c = self.coeff(i, j);
                data[i * n + j] = c;
                data[j * n + i] = neg_mod(c, r);
            }
        }
        ModMatrix::new(r, n, n, data).expect("square")
    }
}

/// The Weil pairing `e`: `e(a_i, b_j) = δ_ij`, `e(a_i, a_j) = e(b_i, b_j) = 0`.
pub fn weil_form(space: SymplecticSpace) -> AltForm {
    let mut e = AltForm::zero(space);
    for i in 0..space.g {
        let k = space.coeff_index(2 * i, 2 * i + 1);
        e.coeffs[k] = 1;
    }
    e
}

pub fn eval_form(b: &AltForm, x: &GroupElement, y: &GroupElement) -> Result<u64> {
    b.space.check_element(x)?;
    b.space.check_element(y)?;
    Ok(b.eval_coords(x.coords(), y.coords()))
}

/// `{x : b(x, y) = 0 for all y}`, the kernel of `xᵀ B`.
pub fn radical(b: &AltForm) -> Subgroup {
    // xᵀ B = 0  ⇔  Bᵀ x = 0
    let kernel = kernel_mod(&b.gram_matrix().transpose());
    Subgroup::from_howell(&b.space.group(), kernel)
}

/// The module of all alternating forms, free of rank `g(2g − 1)`.
pub fn form_space(space: SymplecticSpace) -> FormSubmodule {
    FormSubmodule::full(space)
}
