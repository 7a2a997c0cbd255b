//! Finite abelian groups `⊕ Z/d_i`, their elements, and canonical subgroups.
//!
//! Everything is written additively. A subgroup is stored as the Howell form
//! of its generators after embedding `⊕ Z/d_i` into `(Z/E)^k`, `E` the
//! exponent, by scaling coordinate `i` with `E/d_i`. Equal subgroups then
//! have identical canonical generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::zmodlinalg::{gcd, howell_form, lcm, smith_normal_form, HowellForm, IntMatrix, ModMatrix};
use crate::{Error, Result};

/// A finite abelian group given by a decomposition into cyclic factors.
///
/// Groups built with [`FinAbGroup::new`] carry invariant factors
/// `d₁ | d₂ | … | d_k`. [`FinAbGroup::from_cyclic_factors`] accepts any
/// decomposition such as `Z/4 ⊕ Z/6`; element coordinates always refer to the
/// factors as given.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

/// An element of a [`FinAbGroup`], as reduced coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl FinAbGroup {
    /// A group from invariant factors; each must be at least 2 and each must
    /// divide the next.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        let chain_ok =
            invariant_factors.iter().all(|&d| d >= 2) && invariant_factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !chain_ok {
            return Err(Error::InvalidFactors(invariant_factors));
        }
        Ok(FinAbGroup {
            factors: invariant_factors,
        })
    }

    pub fn from_cyclic_factors(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidFactors(factors));
        }
        Ok(FinAbGroup { factors })
    }

    /// `(Z/r)^n`; `r = 1` gives the trivial group.
    pub fn homocyclic(r: u64, n: usize) -> Result<Self> {
        match r {
            0 => Err(Error::InvalidFactors(vec![0])),
            1 => Ok(Self::trivial()),
            _ => Ok(FinAbGroup { factors: vec![r; n] }),
        }
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: vec![] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Group order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.factors.iter().fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
    }

    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    /// `Some(r)` when the group is `(Z/r)^n` with `n ≥ 1`.
    pub fn homocyclic_exponent(&self) -> Option<u64> {
        let first = *self.factors.first()?;
        self.factors.iter().all(|&d| d == first).then_some(first)
    }

    /// The canonical invariant factors, computed from the Smith form of the
    /// diagonal relation matrix.
    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        let k = self.factors.len();
        let mut rel = vec![0i128; k * k];
        for (i, &d) in self.factors.iter().enumerate() {
            rel[i * k + i] = d.into();
        }
        let snf = smith_normal_form(&IntMatrix::new(k, k, rel)?)?;
        Ok(snf
            .invariants()
            .into_iter()
            .map(|d| d as u64)
            .filter(|&d| d > 1)
            .collect())
    }

    pub fn is_isomorphic(&self, other: &FinAbGroup) -> Result<bool> {
        Ok(self.invariant_factors()? == other.invariant_factors()?)
    }

    /// Errors with [`Error::CapExceeded`] if enumerating the group would
    /// visit more than `cap` elements.
    pub fn check_cap(&self, cap: u64) -> Result<()> {
        let size = self.order();
        if size > cap as u128 {
            return Err(Error::CapExceeded { size, cap });
        }
        Ok(())
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_len(coords.len())?;
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &d)| (x as i128).rem_euclid(d as i128) as u64)
                .collect(),
        })
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.factors.len()],
        }
    }

    /// The `i`-th standard generator.
    pub fn basis_element(&self, i: usize) -> GroupElement {
        let mut x = self.zero();
        x.coords[i] = 1;
        x
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                found: len,
            });
        }
        Ok(())
    }

    fn check_element(&self, x: &GroupElement) -> Result<()> {
        self.check_len(x.coords.len())?;
        if x.coords.iter().zip(&self.factors).any(|(&c, &d)| c >= d) {
            return Err(Error::InvalidArgument(format!("{x:?} is not reduced in {self:?}")));
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.factors)
                .map(|((&a, &b), &d)| ((a as u128 + b as u128) % d as u128) as u64)
                .collect(),
        })
    }

    pub fn scale(&self, k: i64, x: &GroupElement) -> Result<GroupElement> {
        self.check_element(x)?;
        Ok(GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&a, &d)| (k as i128 * a as i128).rem_euclid(d as i128) as u64)
                .collect(),
        })
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.scale(-1, x)
    }

    /// Least `m ≥ 1` with `m·x = 0`.
    pub fn element_order(&self, x: &GroupElement) -> Result<u64> {
        self.check_element(x)?;
        Ok(x.coords
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&a, &d)| lcm(acc, d / gcd(a, d))))
    }

    fn require_homocyclic(&self, r: u64) -> Result<()> {
        match self.homocyclic_exponent() {
            Some(e) if e == r => Ok(()),
            Some(e) => Err(Error::InvalidArgument(format!("group has exponent {e}, expected {r}"))),
            None => Err(Error::NonHomocyclic),
        }
    }

    /// Whether `x` has exact order `r` in the homocyclic group `(Z/r)^n`.
    pub fn is_primitive(&self, x: &GroupElement, r: u64) -> Result<bool> {
        self.require_homocyclic(r)?;
        Ok(self.element_order(x)? == r)
    }

    /// Whether `σ, τ` are primitive and generate a subgroup `≅ (Z/r)²`.
    pub fn is_bicyclic_rr(&self, sigma: &GroupElement, tau: &GroupElement, r: u64) -> Result<bool> {
        if !(self.is_primitive(sigma, r)? && self.is_primitive(tau, r)?) {
            return Ok(false);
        }
        let span = Subgroup::generated_by(self, &[sigma.clone(), tau.clone()])?;
        Ok(span.order() == (r as u128) * (r as u128))
    }

    /// Number of `x` with `k·x = c`: `0`, or the order of the `k`-torsion.
    pub fn count_solutions(&self, k: i64, c: &GroupElement) -> Result<u128> {
        self.check_element(c)?;
        let mut count = 1u128;
        for (&ci, &d) in c.coords.iter().zip(&self.factors) {
            // k·x ≡ c (mod d) is solvable iff gcd(k, d) | c, with gcd(k, d) solutions
            let kd = (k as i128).rem_euclid(d as i128) as u64;
            let g = gcd(kd, d);
            if ci % g != 0 {
                return Ok(0);
            }
            count = count.saturating_mul(g as u128);
        }
        Ok(count)
    }

    /// The `k`-torsion subgroup `{x : k·x = 0}`.
    pub fn torsion_subgroup(&self, k: i64) -> Result<Subgroup> {
        let gens: Vec<GroupElement> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let kd = (k as i128).rem_euclid(d as i128) as u64;
                let mut x = self.zero();
                x.coords[i] = d / gcd(kd, d) % d;
                x
            })
            .collect();
        Subgroup::generated_by(self, &gens)
    }

    /// All elements in mixed-radix order, first coordinate fastest.
    pub fn elements(&self, cap: u64) -> Result<impl Iterator<Item = GroupElement> + '_> {
        self.check_cap(cap)?;
        let total = self.order();
        Ok((0..total).map(move |mut idx| {
            let coords = self
                .factors
                .iter()
                .map(|&d| {
                    let c = (idx % d as u128) as u64;
                    idx /= d as u128;
                    c
                })
                .collect();
            GroupElement { coords }
        }))
    }

    // modulus used for the scaled embedding; the trivial group still needs one
    fn embedding_modulus(&self) -> u64 {
        self.exponent().max(2)
    }

    fn embed(&self, x: &GroupElement) -> Vec<u64> {
        let e = self.exponent();
        x.coords.iter().zip(&self.factors).map(|(&c, &d)| c * (e / d)).collect()
    }

    fn unembed(&self, v: &[u64]) -> GroupElement {
        let e = self.exponent();
        GroupElement {
            coords: v.iter().zip(&self.factors).map(|(&c, &d)| c / (e / d)).collect(),
        }
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Hom(G, C*)`, which is (non-canonically) isomorphic to `G`.
pub fn cartier_dual(group: &FinAbGroup) -> Result<FinAbGroup> {
    FinAbGroup::new(group.invariant_factors()?)
}

/// A subgroup in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subgroup {
    parent: FinAbGroup,
    generators: HowellForm,
    order: u128,
}

impl PartialOrd for FinAbGroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FinAbGroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.factors.cmp(&other.factors)
    }
}

impl Subgroup {
    pub fn generated_by(parent: &FinAbGroup, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            parent.check_element(g)?;
        }
        let rows: Vec<Vec<u64>> = gens.iter().map(|g| parent.embed(g)).collect();
        Ok(Self::from_embedded_rows(parent, rows))
    }

    pub fn trivial(parent: &FinAbGroup) -> Self {
        Self::from_embedded_rows(parent, vec![])
    }

    pub fn whole(parent: &FinAbGroup) -> Self {
        let gens: Vec<Vec<u64>> = (0..parent.rank())
            .map(|i| parent.embed(&parent.basis_element(i)))
            .collect();
        Self::from_embedded_rows(parent, gens)
    }

    /// Subgroup of a homocyclic group spanned by an already canonical form.
    pub(crate) fn from_howell(parent: &FinAbGroup, generators: HowellForm) -> Self {
        debug_assert_eq!(parent.homocyclic_exponent(), Some(generators.modulus()));
        let order = generators.span_size().unwrap_or(u128::MAX);
        Subgroup {
            parent: parent.clone(),
            generators,
            order,
        }
    }

    fn from_embedded_rows(parent: &FinAbGroup, rows: Vec<Vec<u64>>) -> Self {
        let m = ModMatrix::from_residue_rows(parent.embedding_modulus(), parent.rank(), rows);
        let generators = howell_form(&m);
        let order = generators.span_size().unwrap_or(u128::MAX);
        Subgroup {
            parent: parent.clone(),
            generators,
            order,
        }
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// Howell form of the generators in the scaled embedding.
    pub fn canonical_generators(&self) -> &HowellForm {
        &self.generators
    }

    /// The canonical generators as elements of the parent group.
    pub fn generators(&self) -> Vec<GroupElement> {
        self.generators
            .matrix()
            .row_iter()
            .map(|r| self.parent.unembed(r))
            .collect()
    }

    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        self.parent.check_element(x)?;
        Ok(self.generators.contains(&self.parent.embed(x)))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.generators.is_subspan_of(&other.generators)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Invariant factors of the subgroup as an abstract group.
    ///
    /// With `Λ` the lattice spanned by the embedded generators and `E·Z^k`,
    /// the subgroup is `Λ / E·Z^k`; if the Smith form of `Λ`'s generator
    /// matrix has diagonal `d_i` then this is `⊕ Z/(E/d_i)`.
    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        let k = self.parent.rank();
        if k == 0 {
            return Ok(vec![]);
        }
        let e = self.parent.exponent();
        let ei = i128::from(e);
        let mut rows: Vec<Vec<i128>> = self
            .generators
            .matrix()
            .row_iter()
            .map(|r| r.iter().map(|&x| i128::from(x)).collect())
            .collect();
        for i in 0..k {
            let mut row = vec![0; k];
            row[i] = ei;
            rows.push(row);
        }
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows)?)?;
        let mut factors: Vec<u64> = snf
            .invariants()
            .into_iter()
            .map(|d| e / d as u64)
            .filter(|&f| f > 1)
            .collect();
        factors.reverse();
        Ok(factors)
    }

    pub fn as_group(&self) -> Result<FinAbGroup> {
        FinAbGroup::new(self.invariant_factors()?)
    }
}

/// Whether two coordinate vectors span a free rank-two summand of `(Z/r)^n`:
/// the 2×2 minors generate the unit ideal mod `r`. Equivalent to
/// [`FinAbGroup::is_bicyclic_rr`] and much cheaper.
pub fn spans_free_rank_two(sigma: &[u64], tau: &[u64], r: u64) -> bool {
    let r128 = r as i128;
    let mut g = r;
    for i in 0..sigma.len() {
        for j in i + 1..sigma.len() {
            let minor = (sigma[i] as i128 * tau[j] as i128 - sigma[j] as i128 * tau[i] as i128).rem_euclid(r128) as u64;
            g = gcd(g, minor);
            if g == 1 {
                return true;
            }
        }
    }
    false
}
