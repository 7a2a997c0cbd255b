//! The constraint solver and family enumeration against exhaustive search.

use std::collections::BTreeSet;

use bicyclic::brauer::{
    all_bicyclics, bogomolov_intersection, compute_g, isotropic_bicyclics, restriction_kernel, weil_subgroup,
    FormSubmodule, PairMode,
};
use bicyclic::covers::fixed_locus_count_r2;
use bicyclic::finab::{FinAbGroup, Subgroup};
use bicyclic::oracle;
use bicyclic::sympl::{radical, weil_form, AltForm, SymplecticSpace};
use bicyclic::DEFAULT_ENUMERATION_CAP as CAP;

fn assert_matches(m: &FormSubmodule, brute: &BTreeSet<Vec<u64>>) {
    let space = m.space();
    assert_eq!(m.order().unwrap(), brute.len() as u128);
    for c in oracle::all_vectors(space.r(), space.form_rank(), CAP).unwrap() {
        let f = AltForm::new(space, c.clone()).unwrap();
        assert_eq!(m.contains(&f), brute.contains(&c), "form {c:?}");
    }
}

#[test]
fn g_matches_enumeration_on_small_spaces() {
    for (g, r) in [(1, 2), (1, 5), (2, 2), (2, 3)] {
        let space = SymplecticSpace::new(g, r).unwrap();
        for (mode, primitive) in [(PairMode::AllPairs, false), (PairMode::PrimitivePairs, true)] {
            let fast = compute_g(space, mode, CAP).unwrap();
            assert_matches(&fast, &oracle::isotropic_annihilator(g, r, primitive, CAP).unwrap());
        }
    }
}

#[test]
fn isotropic_families_match_enumeration() {
    for (g, r) in [(2, 2), (2, 3), (2, 4)] {
        let space = SymplecticSpace::new(g, r).unwrap();
        let fam = isotropic_bicyclics(space, CAP).unwrap();
        let brute = oracle::bicyclic_subgroups(g, r, true, CAP).unwrap();
        assert_eq!(fam.len(), brute.len(), "g={g}, r={r}");
        let grp = space.group();
        let listed: BTreeSet<BTreeSet<Vec<u64>>> = fam
            .members()
            .iter()
            .map(|m| {
                grp.elements(CAP)
                    .unwrap()
                    .filter(|x| m.subgroup.contains(x).unwrap())
                    .map(|x| x.coords().to_vec())
                    .collect()
            })
            .collect();
        assert_eq!(listed, brute);
        let g_prime = bogomolov_intersection(space, &fam).unwrap();
        assert_matches(&g_prime, &oracle::kernel_intersection(g, r, &brute, CAP).unwrap());
    }
}

#[test]
fn full_families_match_enumeration() {
    for (g, r) in [(1, 3), (2, 2), (2, 3)] {
        let space = SymplecticSpace::new(g, r).unwrap();
        let fam = all_bicyclics(space, CAP).unwrap();
        let brute = oracle::bicyclic_subgroups(g, r, false, CAP).unwrap();
        assert_eq!(fam.len(), brute.len(), "g={g}, r={r}");
        let g_prime = bogomolov_intersection(space, &fam).unwrap();
        assert_matches(&g_prime, &oracle::kernel_intersection(g, r, &brute, CAP).unwrap());
    }
}

#[test]
fn restriction_kernels_match_enumeration() {
    let space = SymplecticSpace::new(2, 4).unwrap();
    let grp = space.group();
    let gens = [[1, 0, 2, 0], [0, 2, 1, 3], [2, 2, 0, 0]];
    for k in 1..=gens.len() {
        let elems: Vec<_> = gens[..k].iter().map(|v| grp.element(v).unwrap()).collect();
        let a = Subgroup::generated_by(&grp, &elems).unwrap();
        let members: BTreeSet<BTreeSet<Vec<u64>>> = BTreeSet::from([grp
            .elements(CAP)
            .unwrap()
            .filter(|x| a.contains(x).unwrap())
            .map(|x| x.coords().to_vec())
            .collect()]);
        let fast = restriction_kernel(space, &a).unwrap();
        assert_matches(&fast, &oracle::kernel_intersection(2, 4, &members, CAP).unwrap());
    }
}

#[test]
fn radical_matches_enumeration() {
    for (g, r) in [(1, 4), (2, 2), (2, 3)] {
        let space = SymplecticSpace::new(g, r).unwrap();
        let vectors = oracle::all_vectors(r, 2 * g, CAP).unwrap();
        for coeffs in [
            weil_form(space).coeffs().to_vec(),
            (0..space.form_rank() as u64).map(|k| k % r).collect(),
            (0..space.form_rank() as u64).map(|k| (k * k) % r).collect(),
        ] {
            let b = AltForm::new(space, coeffs).unwrap();
            let rad = radical(&b);
            let brute: Vec<&Vec<u64>> = vectors
                .iter()
                .filter(|x| vectors.iter().all(|y| b.eval_coords(x, y) == 0))
                .collect();
            assert_eq!(rad.order(), brute.len() as u128);
            for x in brute {
                let xe = space
                    .group()
                    .element(&x.iter().map(|&c| c as i64).collect::<Vec<_>>())
                    .unwrap();
                assert!(rad.contains(&xe).unwrap());
            }
        }
    }
}

#[test]
fn weil_span_is_g_for_genus_one() {
    // In genus one every isotropic pair is dependent, so G is everything.
    let space = SymplecticSpace::new(1, 6).unwrap();
    let g = compute_g(space, PairMode::AllPairs, CAP).unwrap();
    assert_eq!(g, FormSubmodule::full(space));
    assert!(weil_subgroup(space).is_subset_of(&g));
}

#[test]
fn fixed_locus_counts_match_enumeration() {
    let grp = FinAbGroup::homocyclic(4, 4).unwrap();
    for tau in grp.elements(CAP).unwrap() {
        if grp.element_order(&tau).unwrap() > 2 {
            continue;
        }
        let neg: Vec<u64> = tau.coords().iter().map(|&c| (4 - c) % 4).collect();
        let brute = oracle::count_solutions(&[4; 4], 2, &neg, CAP).unwrap();
        assert_eq!(fixed_locus_count_r2(2, 4, &tau).unwrap(), brute);
    }
}
