//! Built-in property suites, run by the `selftest` command.
//!
//! Each suite compares a fast routine against an independent reference in
//! [`crate::oracle`] or against an algebraic identity. Random inputs come
//! from a ChaCha8 stream seeded per suite, so a summary depends only on the
//! seed and the injected fault.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::brauer::{
    all_bicyclics, bogomolov_intersection, compute_g, isotropic_bicyclics, weil_subgroup, FormSubmodule, PairMode,
};
use crate::oracle;
use crate::sympl::{radical, weil_form, AltForm, SymplecticSpace};
use crate::zmodlinalg::{howell_form, smith_normal_form, solve_mod, IntMatrix, ModMatrix};

/// Faults that can be injected to check that the suites notice them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Zero the `(a₁, b₁)` coefficient of the Weil form handed to the suites.
    FlipWeilCoefficient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    /// First failing case, if any.
    pub failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestSummary {
    pub seed: u64,
    pub fault: Option<Fault>,
    pub suites: Vec<SuiteOutcome>,
}

impl SelftestSummary {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteOutcome::passed)
    }

    pub fn failed_suites(&self) -> Vec<&'static str> {
        self.suites.iter().filter(|s| !s.passed()).map(|s| s.name).collect()
    }
}

impl fmt::Display for SelftestSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest seed={}", self.seed)?;
        if let Some(fault) = self.fault {
            writeln!(f, "injected fault: {fault:?}")?;
        }
        for s in &self.suites {
            match &s.failure {
                None => writeln!(f, "PASS {} ({} cases)", s.name, s.cases)?,
                Some(why) => writeln!(f, "FAIL {} ({} cases): {}", s.name, s.cases, why)?,
            }
        }
        let failed = self.failed_suites();
        if failed.is_empty() {
            writeln!(f, "all {} suites passed", self.suites.len())
        } else {
            writeln!(f, "failed: {}", failed.join(", "))
        }
    }
}

/// A suite body: returns the number of cases checked, or the first failure.
type Suite = fn(&mut ChaCha8Rng, &Context) -> Result<usize, String>;

struct Context {
    fault: Option<Fault>,
}

impl Context {
    fn weil(&self, space: SymplecticSpace) -> AltForm {
        let e = weil_form(space);
        match self.fault {
            None => e,
            Some(Fault::FlipWeilCoefficient) => {
                let mut c = e.coeffs().to_vec();
                c[space.coeff_index(0, 1)] = 0;
                AltForm::new(space, c).expect("same width")
            }
        }
    }
}

const SUITES: [(&str, Suite); 7] = [
    ("smith_normal_form", smith_suite),
    ("howell_form", howell_suite),
    ("solve_mod", solve_suite),
    ("form_bilinearity", bilinearity_suite),
    ("weil_nondegeneracy", nondegeneracy_suite),
    ("weil_basis", basis_suite),
    ("submodule_oracle", submodule_suite),
];

pub fn run_selftest(seed: u64, fault: Option<Fault>) -> SelftestSummary {
    let ctx = Context { fault };
    let suites = SUITES
        .iter()
        .enumerate()
        .map(|(k, &(name, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            match suite(&mut rng, &ctx) {
                Ok(cases) => SuiteOutcome {
                    name,
                    cases,
                    failure: None,
                },
                Err(why) => SuiteOutcome {
                    name,
                    cases: 0,
                    failure: Some(why),
                },
            }
        })
        .collect();
    SelftestSummary { seed, fault, suites }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn smith_suite(rng: &mut ChaCha8Rng, _: &Context) -> Result<usize, String> {
    const CASES: usize = 300;
    for _ in 0..CASES {
        let (rows, cols) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let data = (0..rows * cols).map(|_| rng.random_range(-50..=50)).collect();
        let m = IntMatrix::new(rows, cols, data).map_err(|e| e.to_string())?;
        let s = smith_normal_form(&m).map_err(|e| format!("{m:?}: {e}"))?;
        let (u, d, v) = (oracle::to_big(&s.u), oracle::to_big(&s.d), oracle::to_big(&s.v));
        let umv = oracle::int_matmul(&oracle::int_matmul(&u, &oracle::to_big(&m)), &v);
        ensure(umv == d, || format!("U·M·V ≠ D for {m:?}"))?;
        ensure(oracle::is_unimodular(&u) && oracle::is_unimodular(&v), || {
            format!("non-unimodular transform for {m:?}")
        })?;
        let inv = s.invariants();
        let chain = inv
            .windows(2)
            .all(|w| if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 });
        ensure(s.d.is_diagonal() && inv.iter().all(|&x| x >= 0) && chain, || {
            format!("bad diagonal {inv:?} for {m:?}")
        })?;
    }
    Ok(CASES)
}

fn random_mod_matrix(rng: &mut ChaCha8Rng, n: u64, max_rows: usize, max_cols: usize) -> ModMatrix {
    let (rows, cols) = (rng.random_range(1..=max_rows), rng.random_range(1..=max_cols));
    let data = (0..rows * cols).map(|_| rng.random_range(0..n)).collect();
    ModMatrix::new(n, rows, cols, data).expect("valid shape")
}

fn rows_of(m: &ModMatrix) -> Vec<Vec<u64>> {
    m.row_iter().map(<[u64]>::to_vec).collect()
}

fn howell_suite(rng: &mut ChaCha8Rng, _: &Context) -> Result<usize, String> {
    const CASES: usize = 100;
    for _ in 0..CASES {
        let n = [2, 3, 4, 6, 8][rng.random_range(0..5)];
        let m = random_mod_matrix(rng, n, 4, 4);
        let h = howell_form(&m);
        let want = oracle::row_span(n, m.cols(), &rows_of(&m), u64::MAX).map_err(|e| e.to_string())?;
        let got = oracle::row_span(n, m.cols(), &rows_of(h.matrix()), u64::MAX).map_err(|e| e.to_string())?;
        ensure(want == got, || format!("span changed for {m:?}"))?;
        ensure(h.span_size() == Ok(want.len() as u128), || {
            format!("span size wrong for {m:?}")
        })?;
        ensure(howell_form(h.matrix()) == h, || format!("not idempotent for {m:?}"))?;
    }
    Ok(CASES)
}

fn solve_suite(rng: &mut ChaCha8Rng, _: &Context) -> Result<usize, String> {
    const CASES: usize = 100;
    for _ in 0..CASES {
        let n = [2, 3, 4, 6][rng.random_range(0..4)];
        let a = random_mod_matrix(rng, n, 3, 3);
        let c: Vec<u64> = (0..a.rows()).map(|_| rng.random_range(0..n)).collect();
        let brute = oracle::solutions(n, &rows_of(&a), a.cols(), &c, u64::MAX).map_err(|e| e.to_string())?;
        let sol = solve_mod(&a, &c).map_err(|e| e.to_string())?;
        match sol {
            None => ensure(brute.is_empty(), || format!("missed a solution of {a:?} x = {c:?}"))?,
            Some(s) => {
                ensure(a.mul_vec(&s.particular) == Ok(c.clone()), || {
                    format!("bad particular solution of {a:?} x = {c:?}")
                })?;
                ensure(s.kernel.span_size() == Ok(brute.len() as u128), || {
                    format!("solution count wrong for {a:?} x = {c:?}")
                })?;
            }
        }
    }
    Ok(CASES)
}

fn random_coords(rng: &mut ChaCha8Rng, space: SymplecticSpace) -> Vec<u64> {
    (0..space.dim()).map(|_| rng.random_range(0..space.r())).collect()
}

fn bilinearity_suite(rng: &mut ChaCha8Rng, _: &Context) -> Result<usize, String> {
    const CASES: usize = 200;
    for _ in 0..CASES {
        let space = SymplecticSpace::new(rng.random_range(1..=3), rng.random_range(2..=8)).expect("valid");
        let r = space.r();
        let coeffs = (0..space.form_rank()).map(|_| rng.random_range(0..r)).collect();
        let b = AltForm::new(space, coeffs).expect("width");
        let (x, y, z) = (
            random_coords(rng, space),
            random_coords(rng, space),
            random_coords(rng, space),
        );
        let xz: Vec<u64> = x.iter().zip(&z).map(|(&p, &q)| (p + q) % r).collect();
        let lhs = b.eval_coords(&xz, &y);
        let rhs = (b.eval_coords(&x, &y) + b.eval_coords(&z, &y)) % r;
        ensure(lhs == rhs, || format!("not additive: {b:?}"))?;
        ensure(b.eval_coords(&x, &x) == 0, || format!("not alternating: {b:?}"))?;
        let gram = oracle::gram(space.dim(), b.coeffs());
        ensure(b.eval_coords(&x, &y) == oracle::eval_gram(r, &gram, &x, &y), || {
            format!("disagrees with its Gram matrix: {b:?}")
        })?;
    }
    Ok(CASES)
}

fn nondegeneracy_suite(_: &mut ChaCha8Rng, ctx: &Context) -> Result<usize, String> {
    let mut cases = 0;
    for g in 1..=3 {
        for r in 2..=8 {
            let space = SymplecticSpace::new(g, r).expect("valid");
            let e = ctx.weil(space);
            ensure(radical(&e).is_trivial(), || {
                format!("Weil form degenerate at g={g}, r={r}")
            })?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn basis_suite(_: &mut ChaCha8Rng, ctx: &Context) -> Result<usize, String> {
    let mut cases = 0;
    for g in 1..=3 {
        for r in 2..=8 {
            let space = SymplecticSpace::new(g, r).expect("valid");
            let e = ctx.weil(space);
            for i in 0..g {
                for j in 0..g {
                    let (ai, bi, aj, bj) = (space.a(i), space.b(i), space.a(j), space.b(j));
                    let ab = e.eval_coords(ai.coords(), bj.coords());
                    let aa = e.eval_coords(ai.coords(), aj.coords());
                    let bb = e.eval_coords(bi.coords(), bj.coords());
                    ensure(ab == u64::from(i == j) && aa == 0 && bb == 0, || {
                        format!("e(a{i}, b{j}) = {ab}, e(a{i}, a{j}) = {aa}, e(b{i}, b{j}) = {bb} at g={g}, r={r}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

fn matches_oracle(m: &FormSubmodule, brute: &std::collections::BTreeSet<Vec<u64>>) -> bool {
    let space = m.space();
    m.order() == Ok(brute.len() as u128)
        && brute
            .iter()
            .all(|c| m.contains(&AltForm::new(space, c.clone()).expect("width")))
}

fn submodule_suite(_: &mut ChaCha8Rng, _: &Context) -> Result<usize, String> {
    const CAP: u64 = 1 << 20;
    let mut cases = 0;
    for r in [2, 3] {
        let g = 2;
        let space = SymplecticSpace::new(g, r).expect("valid");
        for (mode, primitive) in [(PairMode::AllPairs, false), (PairMode::PrimitivePairs, true)] {
            let fast = compute_g(space, mode, CAP).map_err(|e| e.to_string())?;
            let brute = oracle::isotropic_annihilator(g, r, primitive, CAP).map_err(|e| e.to_string())?;
            ensure(matches_oracle(&fast, &brute), || {
                format!("G ({}) disagrees with enumeration at g={g}, r={r}", mode.name())
            })?;
            ensure(fast == weil_subgroup(space), || format!("G ≠ ⟨e⟩ at g={g}, r={r}"))?;
            cases += 1;
        }
        let family = isotropic_bicyclics(space, CAP).map_err(|e| e.to_string())?;
        let brute_family = oracle::bicyclic_subgroups(g, r, true, CAP).map_err(|e| e.to_string())?;
        ensure(family.len() == brute_family.len(), || {
            format!(
                "{} isotropic bicyclic subgroups, expected {} at g={g}, r={r}",
                family.len(),
                brute_family.len()
            )
        })?;
        let fast = bogomolov_intersection(space, &family).map_err(|e| e.to_string())?;
        let brute = oracle::kernel_intersection(g, r, &brute_family, CAP).map_err(|e| e.to_string())?;
        ensure(matches_oracle(&fast, &brute), || {
            format!("G′ disagrees with enumeration at g={g}, r={r}")
        })?;
        cases += 1;
    }
    let space = SymplecticSpace::new(2, 2).expect("valid");
    let all = all_bicyclics(space, CAP).map_err(|e| e.to_string())?;
    let g_prime = bogomolov_intersection(space, &all).map_err(|e| e.to_string())?;
    ensure(g_prime.is_trivial(), || {
        "full bicyclic family leaves a nonzero form at g=2, r=2".into()
    })?;
    Ok(cases + 1)
}
