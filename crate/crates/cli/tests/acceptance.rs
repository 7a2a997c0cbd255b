//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed, in
//! order. Criterion 6 is a known failure (see `EXPECTED_FAILURES`); the
//! process fails if any other criterion fails or if that one starts passing.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bicyclic::brauer::{
    all_bicyclics, bogomolov_intersection, compute_g, isotropic_bicyclics, weil_subgroup, FormSubmodule, PairMode,
};
use bicyclic::covers::{
    fixed_locus_count_r2, picard_quotient_order, prym_component_count, quotient_component_count, CoverModel,
};
use bicyclic::finab::FinAbGroup;
use bicyclic::oracle;
use bicyclic::sympl::{eval_form, weil_form, AltForm, SymplecticSpace};
use bicyclic::zmodlinalg::{howell_form, smith_normal_form, IntMatrix, ModMatrix};
use bicyclic::DEFAULT_ENUMERATION_CAP as CAP;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `e(a_i + b_j, a_j − b_i) = −2` in `Z/r`, which vanishes only for `r = 2`.
const EXPECTED_FAILURES: &[usize] = &[6];

const GRID: [(usize, u64); 8] = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4), (3, 5)];
const MODES: [(PairMode, bool); 2] = [(PairMode::AllPairs, false), (PairMode::PrimitivePairs, true)];

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

/// Whether `m` has exactly the members `brute` among all forms of its space.
fn agrees_with(m: &FormSubmodule, brute: &BTreeSet<Vec<u64>>) -> bool {
    let space = m.space();
    m.order().ok() == Some(brute.len() as u128)
        && oracle::all_vectors(space.r(), space.form_rank(), CAP)
            .unwrap()
            .into_iter()
            .all(|c| m.contains(&AltForm::new(space, c.clone()).unwrap()) == brute.contains(&c))
}

fn exhaustive(g: usize, r: u64) -> bool {
    (r as f64).powi((g * (2 * g - 1)) as i32) <= 1e6
}

fn g_is_weil(g: &mut BTreeMap<(usize, u64), FormSubmodule>) -> Outcome {
    let mut oracle_points = Vec::new();
    for (genus, r) in GRID {
        let space = SymplecticSpace::new(genus, r).unwrap();
        let h = weil_subgroup(space);
        for (mode, primitive) in MODES {
            let got = match compute_g(space, mode, CAP) {
                Ok(m) => m,
                Err(e) => return fail(format!("g={genus} r={r} {}: {e}", mode.name())),
            };
            if got != h || got.order().unwrap() != r as u128 {
                return fail(format!(
                    "g={genus} r={r} {}: |G| = {}",
                    mode.name(),
                    got.order().unwrap()
                ));
            }
            if exhaustive(genus, r) {
                let brute = oracle::isotropic_annihilator(genus, r, primitive, CAP).unwrap();
                if !agrees_with(&got, &brute) {
                    return fail(format!("g={genus} r={r} {}: differs from enumeration", mode.name()));
                }
                oracle_points.push(format!("({genus},{r})"));
            }
            g.insert((genus, r), got);
        }
    }
    oracle_points.dedup();
    pass(format!(
        "G = <e> of order r on all 8 points, both modes; enumeration agrees at {}",
        oracle_points.join(" ")
    ))
}

fn g_prime_in_g(g: &BTreeMap<(usize, u64), FormSubmodule>) -> Outcome {
    let mut equal = Vec::new();
    for (genus, r) in GRID {
        let space = SymplecticSpace::new(genus, r).unwrap();
        let family = isotropic_bicyclics(space, CAP).unwrap();
        let gp = bogomolov_intersection(space, &family).unwrap();
        let h = weil_subgroup(space);
        let Some(g_mod) = g.get(&(genus, r)) else {
            return fail(format!("g={genus} r={r}: G unavailable"));
        };
        if !gp.is_subset_of(g_mod) || !h.is_subset_of(&gp) {
            return fail(format!("g={genus} r={r}: <e> ⊆ G' ⊆ G does not hold"));
        }
        equal.push(format!("({genus},{r}):{}", if gp == h { "=<e>" } else { "≠<e>" }));
    }
    pass(format!("<e> ⊆ G' ⊆ G everywhere; G' {}", equal.join(" ")))
}

fn full_family_trivial() -> Outcome {
    let space = SymplecticSpace::new(2, 2).unwrap();
    let family = all_bicyclics(space, CAP).unwrap();
    let gp = bogomolov_intersection(space, &family).unwrap();
    let brute = oracle::kernel_intersection(2, 2, &oracle::bicyclic_subgroups(2, 2, false, CAP).unwrap(), CAP).unwrap();
    let forms = oracle::all_vectors(2, space.form_rank(), CAP).unwrap().len();
    if !gp.is_trivial() || brute.len() != 1 || !agrees_with(&gp, &brute) {
        return fail(format!(
            "|G'| = {:?}, enumeration keeps {} forms",
            gp.order(),
            brute.len()
        ));
    }
    pass(format!(
        "{} bicyclic subgroups, G' = 0, enumeration keeps 1 of {forms} forms",
        family.len()
    ))
}

fn component_table() -> Outcome {
    let gcd = |r: u64, d: u64| (1..=r).rev().find(|k| r % k == 0 && d % k == 0).unwrap();
    let mut rows = 0;
    for r in 2..=12u64 {
        for d in 0..r {
            let model = CoverModel::new(2, r, d as i64).unwrap();
            let prym = prym_component_count(&model).unwrap();
            let quot = quotient_component_count(&model);
            let l = picard_quotient_order(r, d as i64);
            if prym != r || quot != gcd(r, d) || l != quot {
                return fail(format!("r={r} d={d}: prym {prym}, quotient {quot}, picard {l}"));
            }
            rows += 1;
        }
    }
    pass(format!("{rows} (r, d) pairs, r = 2..=12"))
}

fn fixed_locus() -> Outcome {
    let mut checked = 0;
    for g in [2usize, 3] {
        let group = FinAbGroup::homocyclic(4, 2 * g).unwrap();
        let full = 1u128 << (2 * g);
        for tau in group.elements(CAP).unwrap() {
            if group.element_order(&tau).unwrap() != 2 {
                continue;
            }
            let count = fixed_locus_count_r2(g, 4, &tau).unwrap();
            if count != 0 && count != full {
                return fail(format!("g={g} tau={:?}: {count}", tau.coords()));
            }
            if g == 2 {
                let neg: Vec<u64> = tau.coords().iter().map(|&c| (4 - c) % 4).collect();
                let brute = oracle::count_solutions(&[4; 4], 2, &neg, CAP).unwrap();
                if brute != count {
                    return fail(format!("tau={:?}: {count} vs enumeration {brute}", tau.coords()));
                }
            }
            checked += 1;
        }
    }
    pass(format!(
        "{checked} order-2 classes, counts in {{0, 2^2g}}, enumeration agrees at g=2"
    ))
}

fn weil_identity() -> Outcome {
    let mut nonzero = BTreeMap::new();
    let mut minus_two = true;
    for r in 2..=8u64 {
        for g in [2usize, 3] {
            let space = SymplecticSpace::new(g, r).unwrap();
            let grp = space.group();
            let e = weil_form(space);
            for i in 0..g {
                for j in (0..g).filter(|&j| j != i) {
                    let x = grp.add(&space.a(i), &space.b(j)).unwrap();
                    let y = grp.add(&space.a(j), &grp.neg(&space.b(i)).unwrap()).unwrap();
                    let v = eval_form(&e, &x, &y).unwrap();
                    minus_two &= v == (2 * r - 2) % r;
                    if v != 0 {
                        nonzero.insert(r, v);
                    }
                }
            }
        }
    }
    if nonzero.is_empty() {
        return pass("identity holds for r = 2..=8");
    }
    let values: Vec<String> = nonzero.iter().map(|(r, v)| format!("r={r}:{v}")).collect();
    let shape = if minus_two {
        "= -2 mod r for every i ≠ j"
    } else {
        "is nonzero"
    };
    fail(format!("e(a_i+b_j, a_j-b_i) {shape}: {}", values.join(" ")))
}

fn linear_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..1000 {
        let (rows, cols) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let data: Vec<i64> = (0..rows * cols).map(|_| rng.random_range(-50..=50)).collect();
        let m = IntMatrix::new(rows, cols, data).unwrap();
        let s = match smith_normal_form(&m) {
            Ok(s) => s,
            Err(e) => return fail(format!("Smith case {k}: {e}")),
        };
        let big = oracle::to_big;
        let umv = oracle::int_matmul(&oracle::int_matmul(&big(&s.u), &big(&m)), &big(&s.v));
        let inv = s.invariants();
        let chain = inv.windows(2).all(|w| w[1] % w[0] == 0);
        if umv != big(&s.d) || !s.d.is_diagonal() || !chain || inv.iter().any(|&x| x < 0) {
            return fail(format!("Smith case {k}: {m:?}"));
        }
        if !oracle::is_unimodular(&big(&s.u)) || !oracle::is_unimodular(&big(&s.v)) {
            return fail(format!("Smith case {k}: transform not unimodular"));
        }
    }
    for k in 0..200 {
        let n = [2u64, 3, 4, 6, 8][rng.random_range(0..5)];
        let max_cols = (1..).take_while(|&c| n.pow(c) <= 10_000).last().unwrap() as usize;
        let cols = rng.random_range(1..=max_cols.min(5));
        let random = |rng: &mut ChaCha8Rng| {
            let rows = rng.random_range(1..=4);
            let data = (0..rows * cols).map(|_| rng.random_range(0..n)).collect();
            ModMatrix::new(n, rows, cols, data).unwrap()
        };
        let rows_of = |m: &ModMatrix| m.row_iter().map(<[u64]>::to_vec).collect::<Vec<_>>();
        let (a, b) = (random(&mut rng), random(&mut rng));
        let (ha, hb) = (howell_form(&a), howell_form(&b));
        let sa = oracle::row_span(n, cols, &rows_of(&a), CAP).unwrap();
        let sb = oracle::row_span(n, cols, &rows_of(&b), CAP).unwrap();
        // a stacked with combinations of its own rows spans the same module
        let mut mixed = rows_of(&a);
        for _ in 0..2 {
            let c: Vec<u64> = (0..a.rows()).map(|_| rng.random_range(0..n)).collect();
            mixed.push(
                (0..cols)
                    .map(|j| (0..a.rows()).map(|i| c[i] * a.get(i, j)).sum::<u64>() % n)
                    .collect(),
            );
        }
        let flat: Vec<u64> = mixed.concat();
        let hm = howell_form(&ModMatrix::new(n, mixed.len(), cols, flat).unwrap());
        let members_ok = oracle::all_vectors(n, cols, CAP)
            .unwrap()
            .iter()
            .all(|v| ha.contains(v) == sa.contains(v));
        if !members_ok || ha.span_size().unwrap() != sa.len() as u128 || (ha == hb) != (sa == sb) || hm != ha {
            return fail(format!("Howell case {k} over Z/{n}: {a:?} vs {b:?}"));
        }
    }
    pass("1000 Smith forms (≤ 6×6, |entries| ≤ 50) and 200 Howell spans agree with exact checks")
}

fn run_table(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bicyclic"))
        .arg("table")
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn deterministic_table() -> Outcome {
    for format in ["json", "csv"] {
        let args = [
            "--g", "1..2", "--r", "2..4", "--d", "1", "--seed", "11", "--format", format,
        ];
        let runs: Result<Vec<_>, _> = ["1", "1", "4"].iter().map(|t| run_table(&args, t)).collect();
        let runs = match runs {
            Ok(r) => r,
            Err(e) => return fail(e),
        };
        if runs.iter().any(|r| r != &runs[0]) || runs[0].is_empty() {
            return fail(format!("{format} reports differ between runs"));
        }
    }
    pass("json and csv reports byte-identical across runs and thread counts")
}

fn main() -> ExitCode {
    let g_cache = RefCell::new(BTreeMap::new());
    type Check<'a> = Box<dyn FnOnce() -> Outcome + 'a>;
    let criteria: Vec<(usize, &str, Option<Duration>, Check)> = vec![
        (
            1,
            "isotropic-pair subgroup G is <e>",
            Some(Duration::from_secs(60)),
            Box::new(|| g_is_weil(&mut g_cache.borrow_mut())),
        ),
        (
            2,
            "G' over isotropic bicyclics",
            Some(Duration::from_secs(120)),
            Box::new(|| g_prime_in_g(&g_cache.borrow())),
        ),
        (
            3,
            "full family on (Z/2)^4",
            Some(Duration::from_secs(5)),
            Box::new(full_family_trivial),
        ),
        (
            4,
            "component counts",
            Some(Duration::from_secs(1)),
            Box::new(component_table),
        ),
        (
            5,
            "fixed-locus counts",
            Some(Duration::from_secs(5)),
            Box::new(fixed_locus),
        ),
        (6, "Weil identity on mixed pairs", None, Box::new(weil_identity)),
        (
            7,
            "Smith and Howell substrate",
            Some(Duration::from_secs(60)),
            Box::new(linear_algebra),
        ),
        (8, "deterministic table reports", None, Box::new(deterministic_table)),
    ];
    let mut unexpected = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let Some(limit) = budget.filter(|&l| elapsed > l) {
            outcome = fail(format!("{} (took {elapsed:.1?}, budget {limit:?})", outcome.detail));
        }
        let expected_fail = EXPECTED_FAILURES.contains(&id);
        let tag = match (outcome.ok, expected_fail) {
            (true, false) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
            (true, true) => "PASS (unexpected)",
        };
        if outcome.ok == expected_fail {
            unexpected += 1;
        }
        println!("{tag} [{id}] {name}: {} [{elapsed:.2?}]", outcome.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criterion outcome(s) differ from expectation");
        ExitCode::FAILURE
    }
}
