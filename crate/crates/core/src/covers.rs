//! Finite shadows of the cyclic-cover geometry: component counts, the twist
//! exponent of the twisted norm, the Picard quotient order, and the rank-two
//! fixed-locus count on torsion models.
//!
//! None of the varieties involved are modelled; only the counts and
//! exponents that the vanishing argument consumes.

use serde::{Deserialize, Serialize};

use crate::finab::{cartier_dual, FinAbGroup, GroupElement, Subgroup};
use crate::zmodlinalg::gcd;
use crate::{Error, Result};

/// An étale cyclic cover of degree `r` of a genus `g` curve, for bundles of
/// topological type `d`. `kernel` is the order-`r` kernel of pullback,
/// generated by the defining torsion class `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverModel {
    r: u64,
    g: usize,
    d: i64,
    kernel: Subgroup,
}

/// Summary row for one `(r, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCounts {
    pub r: u64,
    pub d: i64,
    pub prym_components: u64,
    pub quotient_components: u64,
    pub picard_quotient_order: u64,
    pub twist_exponent: u64,
}

impl CoverModel {
    /// The cover defined by `τ = a₁`.
    pub fn new(g: usize, r: u64, d: i64) -> Result<Self> {
        let group = FinAbGroup::homocyclic(r, 2 * g)?;
        let tau = if r == 1 || g == 0 {
            group.zero()
        } else {
            group.basis_element(0)
        };
        Self::with_tau(g, r, d, &tau)
    }

    /// The cover defined by a primitive `τ ∈ (Z/r)^2g`.
    pub fn with_tau(g: usize, r: u64, d: i64, tau: &GroupElement) -> Result<Self> {
        let group = FinAbGroup::homocyclic(r, 2 * g)?;
        if group.element_order(tau)? != r {
            return Err(Error::InvalidArgument(format!("τ = {tau:?} does not have order {r}")));
        }
        let kernel = Subgroup::generated_by(&group, std::slice::from_ref(tau))?;
        Ok(CoverModel { r, g, d, kernel })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn counts(&self) -> Result<ComponentCounts> {
        Ok(ComponentCounts {
            r: self.r,
            d: self.d,
            prym_components: prym_component_count(self)?,
            quotient_components: quotient_component_count(self),
            picard_quotient_order: picard_quotient_order(self.r, self.d),
            twist_exponent: if self.r >= 2 { twisted_norm_exponent(self.r)? } else { 0 },
        })
    }
}

/// Components of the twisted-norm fiber: `|K^∨|`, which is `r`.
pub fn prym_component_count(model: &CoverModel) -> Result<u64> {
    let dual = cartier_dual(&model.kernel.as_group()?)?;
    u64::try_from(dual.order()).map_err(|_| Error::Overflow("component count"))
}

/// Components of the Galois quotient: `gcd(r, d)`, with `gcd(r, 0) = r`.
pub fn quotient_component_count(model: &CoverModel) -> u64 {
    gcd_signed(model.r, model.d)
}

/// `r(r − 1)/2 mod r`, the power of `τ` separating the twisted norm from the
/// plain norm.
pub fn twisted_norm_exponent(r: u64) -> Result<u64> {
    if r < 2 {
        return Err(Error::InvalidModulus(r));
    }
    let t = (r as u128) * (r as u128 - 1) / 2;
    Ok((t % r as u128) as u64)
}

/// `l = gcd(r, d)`, the order of the Picard quotient `Z/l`.
pub fn picard_quotient_order(r: u64, d: i64) -> u64 {
    gcd_signed(r, d)
}

fn gcd_signed(r: u64, d: i64) -> u64 {
    gcd(r, d.unsigned_abs())
}

/// Count of `x ∈ (Z/N)^2g` with `2x = −τ`, the torsion-level model of
/// `L ⊗ τ ≅ L*`. `τ` must be killed by 2, and `4 | N`.
pub fn fixed_locus_count_r2(g: usize, modulus: u64, tau_class: &GroupElement) -> Result<u128> {
    if modulus % 4 != 0 || modulus == 0 {
        return Err(Error::BadModel(format!("modulus {modulus} is not divisible by 4")));
    }
    let group = FinAbGroup::homocyclic(modulus, 2 * g)?;
    if tau_class.coords().len() != 2 * g {
        return Err(Error::DimensionMismatch {
            expected: 2 * g,
            found: tau_class.coords().len(),
        });
    }
    if group.element_order(tau_class)? > 2 {
        return Err(Error::BadModel(format!("{tau_class:?} is not 2-torsion")));
    }
    group.count_solutions(2, &group.neg(tau_class)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prym_counts() {
        for (r, expected) in [(2, 2), (5, 5), (1, 1)] {
            let m = CoverModel::new(2, r, 0).unwrap();
            assert_eq!(prym_component_count(&m).unwrap(), expected);
            assert_eq!(m.kernel().order(), r as u128);
        }
    }

    #[test]
    fn quotient_counts() {
        let q = |r, d| quotient_component_count(&CoverModel::new(2, r, d).unwrap());
        assert_eq!(q(2, 0), 2);
        assert_eq!(q(4, 2), 2);
        assert_eq!(q(3, 1), 1);
        assert_eq!(q(6, -4), 2);
    }

    #[test]
    fn twist_exponents() {
        assert_eq!(twisted_norm_exponent(2).unwrap(), 1);
        assert_eq!(twisted_norm_exponent(3).unwrap(), 0);
        assert_eq!(twisted_norm_exponent(4).unwrap(), 2);
        assert!(twisted_norm_exponent(1).is_err());
    }

    #[test]
    fn picard_orders() {
        assert_eq!(picard_quotient_order(2, 0), 2);
        assert_eq!(picard_quotient_order(6, 4), 2);
        assert_eq!(picard_quotient_order(5, 3), 1);
    }

    #[test]
    fn fixed_locus() {
        let grp = FinAbGroup::homocyclic(4, 4).unwrap();
        let tau = grp.element(&[2, 0, 0, 0]).unwrap();
        assert_eq!(fixed_locus_count_r2(2, 4, &tau).unwrap(), 16);
        assert_eq!(fixed_locus_count_r2(2, 4, &grp.zero()).unwrap(), 16);
        let odd = grp.element(&[1, 0, 0, 0]).unwrap();
        assert!(matches!(fixed_locus_count_r2(2, 4, &odd), Err(Error::BadModel(_))));
        assert!(matches!(
            fixed_locus_count_r2(2, 6, &grp.zero()),
            Err(Error::BadModel(_))
        ));
    }

    #[test]
    fn non_primitive_tau_rejected() {
        let grp = FinAbGroup::homocyclic(4, 4).unwrap();
        assert!(CoverModel::with_tau(2, 4, 0, &grp.element(&[2, 0, 0, 0]).unwrap()).is_err());
    }
}
