//! The obstruction computations on `H²(Γ, C*)`, modelled as alternating forms:
//!
//! * `G`, the forms vanishing on every isotropic pair of the Weil pairing,
//! * families of bicyclic subgroups `A ≅ (Z/r)²` and the kernels of
//!   restriction to them,
//! * `G'`, the intersection of those kernels over a family, and the checks
//!   `e ∈ G'`, `G' ⊆ G` and `G = ⟨e⟩`.
//!
//! A form vanishes on `A = ⟨σ, τ⟩` iff `b(σ, τ) = 0`, and every such
//! condition is the linear equation `⟨coeffs(b), σ ∧ τ⟩ = 0` in the form
//! coefficients, so every submodule here is the kernel of a stack of wedge
//! vectors over `Z/r`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::finab::{spans_free_rank_two, GroupElement, Subgroup};
use crate::sympl::{weil_form, AltForm, SymplecticSpace};
use crate::zmodlinalg::{gcd, howell_form, kernel_mod, HowellForm, ModMatrix};
use crate::{Error, Result};

/// A submodule of the alternating forms on a [`SymplecticSpace`], stored as
/// the Howell form of its flattened coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormSubmodule {
    space: SymplecticSpace,
    generators: HowellForm,
}

impl FormSubmodule {
    pub fn full(space: SymplecticSpace) -> Self {
        let id = ModMatrix::identity(space.r(), space.form_rank()).expect("r >= 2");
        FormSubmodule {
            space,
            generators: howell_form(&id),
        }
    }

    pub fn zero(space: SymplecticSpace) -> Self {
        let z = ModMatrix::zeros(space.r(), 0, space.form_rank()).expect("r >= 2");
        FormSubmodule {
            space,
            generators: howell_form(&z),
        }
    }

    pub fn spanned_by(space: SymplecticSpace, forms: &[AltForm]) -> Result<Self> {
        if forms.iter().any(|f| f.space() != space) {
            return Err(Error::InvalidArgument("form from a different space".into()));
        }
        let rows = forms.iter().map(|f| f.coeffs().to_vec()).collect();
        let m = ModMatrix::from_residue_rows(space.r(), space.form_rank(), rows);
        Ok(FormSubmodule {
            space,
            generators: howell_form(&m),
        })
    }

    /// Forms whose coefficient vectors are orthogonal to every row of
    /// `constraints`.
    pub fn annihilator_of(space: SymplecticSpace, constraints: &ModMatrix) -> Result<Self> {
        if constraints.modulus() != space.r() {
            return Err(Error::InvalidModulus(constraints.modulus()));
        }
        if constraints.cols() != space.form_rank() {
            return Err(Error::DimensionMismatch {
                expected: space.form_rank(),
                found: constraints.cols(),
            });
        }
        Ok(FormSubmodule {
            space,
            generators: kernel_mod(constraints),
        })
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn generators(&self) -> &HowellForm {
        &self.generators
    }

    /// The canonical generators as forms.
    pub fn forms(&self) -> Vec<AltForm> {
        self.generators
            .matrix()
            .row_iter()
            .map(|row| AltForm::new(self.space, row.to_vec()).expect("row width is the form rank"))
            .collect()
    }

    pub fn order(&self) -> Result<u128> {
        self.generators.span_size()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.matrix().rows() == 0
    }

    pub fn contains(&self, form: &AltForm) -> bool {
        form.space() == self.space && self.generators.contains(form.coeffs())
    }

    pub fn is_subset_of(&self, other: &FormSubmodule) -> bool {
        self.space == other.space && self.generators.is_subspan_of(&other.generators)
    }

    pub fn intersect(&self, other: &FormSubmodule) -> Result<FormSubmodule> {
        if self.space != other.space {
            return Err(Error::InvalidArgument("submodules of different spaces".into()));
        }
        Ok(FormSubmodule {
            space: self.space,
            generators: crate::zmodlinalg::intersect_spans(&self.generators, &other.generators)?,
        })
    }
}

/// `H = ⟨e⟩`, the submodule generated by the Weil pairing.
pub fn weil_subgroup(space: SymplecticSpace) -> FormSubmodule {
    FormSubmodule::spanned_by(space, &[weil_form(space)]).expect("same space")
}

/// Which isotropic pairs constrain `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMode {
    /// Every pair `(σ, τ)` with `e(σ, τ) = 0`.
    AllPairs,
    /// Only isotropic pairs of primitive elements generating `(Z/r)²`.
    PrimitivePairs,
}

impl PairMode {
    pub fn name(self) -> &'static str {
        match self {
            PairMode::AllPairs => "all-pairs",
            PairMode::PrimitivePairs => "primitive-pairs",
        }
    }
}

/// Incrementally grown span of constraint vectors, kept in Howell form.
#[derive(Clone)]
struct ConstraintSpan {
    basis: HowellForm,
    size: u128,
    scratch: Vec<u64>,
}

impl ConstraintSpan {
    fn new(space: SymplecticSpace) -> Self {
        let basis = howell_form(&ModMatrix::zeros(space.r(), 0, space.form_rank()).expect("r >= 2"));
        ConstraintSpan {
            basis,
            size: 1,
            scratch: vec![0; space.form_rank()],
        }
    }

    /// Adds `w` (reduced residues); returns whether the span grew.
    fn insert(&mut self, w: &[u64]) -> bool {
        self.scratch.copy_from_slice(w);
        self.basis.reduce_in_place(&mut self.scratch);
        if self.scratch.iter().all(|&x| x == 0) {
            return false;
        }
        let extra = ModMatrix::from_residue_rows(self.basis.modulus(), w.len(), vec![w.to_vec()]);
        let stacked = self.basis.matrix().stack(&extra).expect("same shape");
        self.basis = howell_form(&stacked);
        self.size = self.basis.span_size().unwrap_or(u128::MAX);
        true
    }

    fn merge(&mut self, other: &ConstraintSpan) {
        for row in other.basis.matrix().row_iter() {
            self.insert(row);
        }
    }
}

/// Mixed-radix decoding of `idx` into `out`, first coordinate fastest; the
/// same order as [`crate::finab::FinAbGroup::elements`].
fn decode(mut idx: u64, r: u64, out: &mut [u64]) {
    for c in out.iter_mut() {
        *c = idx % r;
        idx /= r;
    }
}

fn encode(coords: &[u64], r: u64) -> u64 {
    coords.iter().rev().fold(0, |acc, &c| acc * r + c)
}

fn increment(coords: &mut [u64], r: u64) {
    for c in coords.iter_mut() {
        *c += 1;
        if *c < r {
            return;
        }
        *c = 0;
    }
}

const SIGMA_BATCH: u64 = 64;

/// `G`: alternating forms `b` with `b(σ, τ) = 0` whenever `e(σ, τ) = 0`,
/// over the pairs selected by `mode`.
///
/// Pairs are visited in index order. Every isotropic constraint is
/// orthogonal to `e`, so the constraint span lies in the annihilator of `e`;
/// once it fills that annihilator, no further pair can change the answer and
/// the enumeration stops.
pub fn compute_g(space: SymplecticSpace, mode: PairMode, cap: u64) -> Result<FormSubmodule> {
    let group = space.group();
    group.check_cap(cap)?;
    let (r, n) = (space.r(), space.dim());
    let total = u64::try_from(group.order()).expect("checked against cap");

    let e = weil_form(space);
    let e_row = ModMatrix::from_residue_rows(r, space.form_rank(), vec![e.coeffs().to_vec()]);
    let saturated = kernel_mod(&e_row).span_size()?;

    let mut span = ConstraintSpan::new(space);
    let mut start = 0;
    while start < total && span.size < saturated {
        let end = (start + SIGMA_BATCH).min(total);
        let seed = span.clone();
        let partials: Vec<ConstraintSpan> = (start..end)
            .into_par_iter()
            .map(|s| {
                let mut local = seed.clone();
                let mut sigma = vec![0; n];
                let mut tau = vec![0; n];
                decode(s, r, &mut sigma);
                decode(s, r, &mut tau);
                for _ in s + 1..total {
                    increment(&mut tau, r);
                    if space.weil(&sigma, &tau) != 0 {
                        continue;
                    }
                    if mode == PairMode::PrimitivePairs && !spans_free_rank_two(&sigma, &tau, r) {
                        continue;
                    }
                    let w = space.wedge(&sigma, &tau);
                    if local.insert(&w) && local.size >= saturated {
                        break;
                    }
                }
                local
            })
            .collect();
        for p in &partials {
            span.merge(p);
        }
        start = end;
    }
    FormSubmodule::annihilator_of(space, span.basis.matrix())
}

/// The first pair in index order, among those selected by `mode`, on which
/// `form` fails to vanish although `e` does. `None` means `form ∈ G`.
pub fn find_violated_pair(form: &AltForm, mode: PairMode, cap: u64) -> Result<Option<(GroupElement, GroupElement)>> {
    let space = form.space();
    let group = space.group();
    group.check_cap(cap)?;
    let (r, n) = (space.r(), space.dim());
    let total = u64::try_from(group.order()).expect("checked against cap");
    let mut sigma = vec![0; n];
    for s in 0..total {
        decode(s, r, &mut sigma);
        let mut tau = sigma.clone();
        for _ in s + 1..total {
            increment(&mut tau, r);
            if space.weil(&sigma, &tau) != 0 || form.eval_coords(&sigma, &tau) == 0 {
                continue;
            }
            if mode == PairMode::PrimitivePairs && !spans_free_rank_two(&sigma, &tau, r) {
                continue;
            }
            let to_elem = |v: &[u64]| {
                let v: Vec<i64> = v.iter().map(|&x| x as i64).collect();
                group.element(&v).expect("coordinates fit the group")
            };
            return Ok(Some((to_elem(&sigma), to_elem(&tau))));
        }
    }
    Ok(None)
}

/// Forms vanishing on `A × A`: `b(x, y) = 0` for all `x, y ∈ A`. By
/// bilinearity the conditions on pairs of generators suffice.
pub fn restriction_kernel(space: SymplecticSpace, a: &Subgroup) -> Result<FormSubmodule> {
    if a.parent() != &space.group() {
        return Err(Error::InvalidArgument("subgroup of a different group".into()));
    }
    let mut span = ConstraintSpan::new(space);
    push_subgroup_constraints(space, a, &mut span);
    FormSubmodule::annihilator_of(space, span.basis.matrix())
}

fn push_subgroup_constraints(space: SymplecticSpace, a: &Subgroup, span: &mut ConstraintSpan) {
    let gens = a.generators();
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            span.insert(&space.wedge(x.coords(), y.coords()));
        }
    }
}

/// Why a subgroup belongs to a [`BicyclicFamily`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Generated by an isotropic bicyclic pair.
    IsotropicPair,
    /// Generated by a bicyclic pair with nonzero pairing.
    NonIsotropicPair,
    UserSupplied,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub subgroup: Subgroup,
    pub provenance: Provenance,
}

/// A deduplicated family of subgroups `≅ (Z/r)²`, sorted by canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicyclicFamily {
    space: SymplecticSpace,
    members: Vec<FamilyMember>,
}

impl BicyclicFamily {
    pub fn empty(space: SymplecticSpace) -> Self {
        BicyclicFamily { space, members: vec![] }
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: &Subgroup) -> bool {
        self.members.binary_search_by(|m| m.subgroup.cmp(a)).is_ok()
    }

    /// Adds `⟨σ, τ⟩` unless it is already present. Fails if the pair is not
    /// bicyclic. Returns whether the family grew.
    pub fn insert_pair(&mut self, sigma: &GroupElement, tau: &GroupElement) -> Result<bool> {
        let group = self.space.group();
        let r = self.space.r();
        if !group.is_bicyclic_rr(sigma, tau, r)? {
            return Err(Error::InvalidArgument(format!(
                "({sigma:?}, {tau:?}) does not generate (Z/{r})^2"
            )));
        }
        let subgroup = Subgroup::generated_by(&group, &[sigma.clone(), tau.clone()])?;
        match self.members.binary_search_by(|m| m.subgroup.cmp(&subgroup)) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.members.insert(
                    pos,
                    FamilyMember {
                        subgroup,
                        provenance: Provenance::UserSupplied,
                    },
                );
                Ok(true)
            }
        }
    }
}

/// Every `⟨σ, τ⟩ ≅ (Z/r)²` with `e(σ, τ) = 0`.
pub fn isotropic_bicyclics(space: SymplecticSpace, cap: u64) -> Result<BicyclicFamily> {
    enumerate_bicyclics(space, cap, true)
}

/// Every subgroup `≅ (Z/r)²`, isotropic or not.
pub fn all_bicyclics(space: SymplecticSpace, cap: u64) -> Result<BicyclicFamily> {
    enumerate_bicyclics(space, cap, false)
}

fn enumerate_bicyclics(space: SymplecticSpace, cap: u64, isotropic_only: bool) -> Result<BicyclicFamily> {
    let group = space.group();
    group.check_cap(cap)?;
    let (r, n) = (space.r(), space.dim());
    let total = u64::try_from(group.order()).expect("checked against cap");
    let units: Vec<u64> = (2..r).filter(|&u| gcd(u, r) == 1).collect();

    // Each subgroup is reached through some σ that is smallest among its unit
    // multiples, paired with the smallest representative of τ + ⟨σ⟩.
    let found: Vec<Vec<(HowellForm, bool)>> = (0..total)
        .into_par_iter()
        .map(|s| {
            let mut sigma = vec![0; n];
            decode(s, r, &mut sigma);
            let mut out = Vec::new();
            let mut shifted = vec![0; n];
            let smallest_in_class = units.iter().all(|&u| {
                for (d, &c) in shifted.iter_mut().zip(&sigma) {
                    *d = c * u % r;
                }
                encode(&shifted, r) > s
            });
            if !smallest_in_class {
                return out;
            }
            let mut tau = vec![0; n];
            for t in 0..total {
                if t > 0 {
                    increment(&mut tau, r);
                }
                let isotropic = space.weil(&sigma, &tau) == 0;
                if isotropic_only && !isotropic {
                    continue;
                }
                if !spans_free_rank_two(&sigma, &tau, r) {
                    continue;
                }
                let coset_min = (1..r).all(|k| {
                    for ((d, &x), &y) in shifted.iter_mut().zip(&tau).zip(&sigma) {
                        *d = (x + k * y) % r;
                    }
                    encode(&shifted, r) > t
                });
                if !coset_min {
                    continue;
                }
                let m = ModMatrix::from_residue_rows(r, n, vec![sigma.clone(), tau.clone()]);
                out.push((howell_form(&m), isotropic));
            }
            out
        })
        .collect();

    let mut canon: BTreeSet<(HowellForm, bool)> = BTreeSet::new();
    for batch in found {
        canon.extend(batch);
    }
    let members = canon
        .into_iter()
        .map(|(h, isotropic)| FamilyMember {
            subgroup: Subgroup::from_howell(&group, h),
            provenance: if isotropic {
                Provenance::IsotropicPair
            } else {
                Provenance::NonIsotropicPair
            },
        })
        .collect();
    Ok(BicyclicFamily { space, members })
}

/// `G' = ⋂_{A ∈ family} ker(H²(Γ) → H²(A))`, from the combined constraints.
pub fn bogomolov_intersection(space: SymplecticSpace, family: &BicyclicFamily) -> Result<FormSubmodule> {
    if family.space != space {
        return Err(Error::InvalidArgument("family over a different space".into()));
    }
    let mut span = ConstraintSpan::new(space);
    for m in &family.members {
        push_subgroup_constraints(space, &m.subgroup, &mut span);
    }
    FormSubmodule::annihilator_of(space, span.basis.matrix())
}

/// Orders and inclusion checks for one `(g, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub g: usize,
    pub r: u64,
    pub form_space_rank: usize,
    pub form_space_order: u128,
    /// `|⟨e⟩|`, which is `r`.
    pub weil_order: u128,
    /// Whether `⟨e⟩` has order two; true only for `r = 2`.
    pub weil_order_is_two: bool,
    pub g_order_all_pairs: Option<u128>,
    pub g_order_primitive_pairs: Option<u128>,
    /// `None` unless both modes were computed.
    pub g_modes_agree: Option<bool>,
    pub weil_in_g: bool,
    pub g_equals_weil: bool,
    pub family_size: usize,
    pub g_prime_order: u128,
    pub weil_in_g_prime: bool,
    pub g_prime_in_g: bool,
    pub g_prime_equals_weil: bool,
}

impl InclusionReport {
    /// Names of the inclusion flags that failed, in a fixed order.
    pub fn violations(&self) -> Vec<&'static str> {
        [
            ("weil_in_g", self.weil_in_g),
            ("g_equals_weil", self.g_equals_weil),
            ("weil_in_g_prime", self.weil_in_g_prime),
            ("g_prime_in_g", self.g_prime_in_g),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect()
    }
}

/// Computes `G` in both modes, `G'` over the isotropic bicyclic family, and
/// checks `e ∈ G'`, `G' ⊆ G` and `G = ⟨e⟩`.
pub fn verify_main_inclusions(space: SymplecticSpace, cap: u64) -> Result<InclusionReport> {
    verify_inclusions_with(space, &[PairMode::AllPairs, PairMode::PrimitivePairs], cap)
}

/// [`verify_main_inclusions`] restricted to the given modes. Flags about `G`
/// hold when they hold for every requested mode.
pub fn verify_inclusions_with(space: SymplecticSpace, modes: &[PairMode], cap: u64) -> Result<InclusionReport> {
    if modes.is_empty() {
        return Err(Error::InvalidArgument("no pair mode selected".into()));
    }
    let e = weil_form(space);
    let h = weil_subgroup(space);
    let family = isotropic_bicyclics(space, cap)?;
    let g_prime = bogomolov_intersection(space, &family)?;

    let mut g_all = None;
    let mut g_prim = None;
    for &mode in modes {
        let g = compute_g(space, mode, cap)?;
        match mode {
            PairMode::AllPairs => g_all = Some(g),
            PairMode::PrimitivePairs => g_prim = Some(g),
        }
    }
    let computed: Vec<&FormSubmodule> = g_all.iter().chain(g_prim.iter()).collect();

    Ok(InclusionReport {
        g: space.genus(),
        r: space.r(),
        form_space_rank: space.form_rank(),
        form_space_order: FormSubmodule::full(space).order()?,
        weil_order: h.order()?,
        weil_order_is_two: h.order()? == 2,
        g_order_all_pairs: g_all.as_ref().map(FormSubmodule::order).transpose()?,
        g_order_primitive_pairs: g_prim.as_ref().map(FormSubmodule::order).transpose()?,
        g_modes_agree: match (&g_all, &g_prim) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        },
        weil_in_g: computed.iter().all(|g| g.contains(&e)),
        g_equals_weil: computed.iter().all(|g| **g == h),
        family_size: family.len(),
        g_prime_order: g_prime.order()?,
        weil_in_g_prime: g_prime.contains(&e),
        g_prime_in_g: computed.iter().all(|g| g_prime.is_subset_of(g)),
        g_prime_equals_weil: g_prime == h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ENUMERATION_CAP as CAP;

    fn sp(g: usize, r: u64) -> SymplecticSpace {
        SymplecticSpace::new(g, r).unwrap()
    }

    #[test]
    fn g_for_genus_two_mod_two() {
        let s = sp(2, 2);
        for mode in [PairMode::AllPairs, PairMode::PrimitivePairs] {
            let g = compute_g(s, mode, CAP).unwrap();
            assert_eq!(g.order().unwrap(), 2);
            assert_eq!(g, weil_subgroup(s));
        }
    }

    #[test]
    fn g_for_genus_one_is_everything() {
        for r in 2..7 {
            let s = sp(1, r);
            let g = compute_g(s, PairMode::AllPairs, CAP).unwrap();
            assert_eq!(g, FormSubmodule::full(s));
            assert_eq!(g, weil_subgroup(s));
        }
    }

    #[test]
    fn g_respects_cap() {
        assert!(matches!(
            compute_g(sp(3, 5), PairMode::AllPairs, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn restriction_kernels() {
        let s = sp(2, 2);
        let group = s.group();
        assert_eq!(
            restriction_kernel(s, &Subgroup::trivial(&group)).unwrap(),
            FormSubmodule::full(s)
        );
        let a = Subgroup::generated_by(&group, &[s.a(0), s.a(1)]).unwrap();
        assert_eq!(restriction_kernel(s, &a).unwrap().order().unwrap(), 32);
        assert!(restriction_kernel(s, &a).unwrap().contains(&weil_form(s)));
    }

    #[test]
    fn genus_one_mod_two_has_no_isotropic_bicyclics() {
        let fam = isotropic_bicyclics(sp(1, 2), CAP).unwrap();
        assert!(fam.is_empty());
        assert_eq!(all_bicyclics(sp(1, 2), CAP).unwrap().len(), 1);
    }

    #[test]
    fn isotropic_family_dedups() {
        let s = sp(2, 2);
        let fam = isotropic_bicyclics(s, CAP).unwrap();
        let group = s.group();
        let a = Subgroup::generated_by(&group, &[s.a(0), s.a(1)]).unwrap();
        assert!(fam.contains(&a));
        // ⟨σ, τ⟩ and ⟨τ, σ+τ⟩ coincide
        let mut fam2 = BicyclicFamily::empty(s);
        assert!(fam2.insert_pair(&s.a(0), &s.a(1)).unwrap());
        let sum = group.add(&s.a(0), &s.a(1)).unwrap();
        assert!(!fam2.insert_pair(&s.a(1), &sum).unwrap());
        assert_eq!(fam2.len(), 1);
        assert!(fam2.insert_pair(&s.a(0), &s.a(0)).is_err());
        // isotropic planes in a 4-dim symplectic space over F_2
        assert_eq!(fam.len(), 15);
    }

    #[test]
    fn empty_family_gives_everything() {
        let s = sp(2, 3);
        let gp = bogomolov_intersection(s, &BicyclicFamily::empty(s)).unwrap();
        assert_eq!(gp, FormSubmodule::full(s));
    }

    #[test]
    fn full_family_kills_everything() {
        let s = sp(2, 2);
        let fam = all_bicyclics(s, CAP).unwrap();
        assert_eq!(fam.len(), 35);
        assert!(bogomolov_intersection(s, &fam).unwrap().is_trivial());
    }

    #[test]
    fn main_inclusions_small() {
        let rep = verify_main_inclusions(sp(2, 2), CAP).unwrap();
        assert!(rep.violations().is_empty());
        assert_eq!(rep.g_order_all_pairs, Some(2));
        assert!(rep.weil_order_is_two);
        let rep = verify_main_inclusions(sp(2, 4), CAP).unwrap();
        assert!(rep.violations().is_empty());
        assert_eq!(rep.weil_order, 4);
        assert!(!rep.weil_order_is_two);
        assert_eq!(rep.g_modes_agree, Some(true));
    }

    #[test]
    fn submodule_intersection() {
        let s = sp(2, 2);
        let e = weil_subgroup(s);
        let full = FormSubmodule::full(s);
        assert_eq!(full.intersect(&e).unwrap(), e);
        assert!(e.intersect(&FormSubmodule::zero(s)).unwrap().is_trivial());
    }
}
