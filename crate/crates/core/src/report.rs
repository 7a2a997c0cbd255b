//! Grid runs over `(g, r, d)` and their machine-readable reports.
//!
//! JSON reports are one object `{"schema_version", "config", "records"}`.
//! CSV reports are a flat projection with the columns of [`CSV_COLUMNS`];
//! the run configuration is repeated on every CSV row.
//!
//! Reports are byte-identical for identical configurations: records come out
//! sorted by `(g, r, d)` whatever order the grid points finish in, and
//! wall-clock timing is only recorded when asked for.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::brauer::{compute_g, find_violated_pair, verify_inclusions_with, InclusionReport, PairMode};
use crate::covers::{ComponentCounts, CoverModel};
use crate::sympl::{AltForm, SymplecticSpace};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Random forms per `(g, r)` that get checked for an explicit violated pair.
pub const WITNESS_SAMPLES: usize = 4;

/// An inclusive integer range written `a..b`, or a single value `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntRange {
    pub start: i64,
    pub end: i64,
}

impl IntRange {
    pub fn new(start: i64, end: i64) -> Self {
        IntRange { start, end }
    }

    pub fn single(v: i64) -> Self {
        IntRange { start: v, end: v }
    }

    pub fn is_empty(&self) -> bool {
        self.start > self.end
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.start..=self.end
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad range {s:?}, expected a..b or a single integer"));
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
        match s.split_once("..") {
            Some((a, b)) => Ok(IntRange::new(parse(a)?, parse(b.trim_start_matches('='))?)),
            None => Ok(IntRange::single(parse(s)?)),
        }
    }
}

impl Serialize for IntRange {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntRange {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeSelection {
    AllPairs,
    PrimitivePairs,
    Both,
}

impl ModeSelection {
    pub fn modes(self) -> &'static [PairMode] {
        match self {
            ModeSelection::AllPairs => &[PairMode::AllPairs],
            ModeSelection::PrimitivePairs => &[PairMode::PrimitivePairs],
            ModeSelection::Both => &[PairMode::AllPairs, PairMode::PrimitivePairs],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModeSelection::AllPairs => "all-pairs",
            ModeSelection::PrimitivePairs => "primitive-pairs",
            ModeSelection::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub g: IntRange,
    pub r: IntRange,
    pub d: IntRange,
    pub mode: ModeSelection,
    pub cap: u64,
    pub seed: u64,
    pub format: OutputFormat,
    pub out: Option<String>,
    #[serde(default)]
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            g: IntRange::single(2),
            r: IntRange::single(2),
            d: IntRange::single(0),
            mode: ModeSelection::Both,
            cap: crate::DEFAULT_ENUMERATION_CAP,
            seed: 0,
            format: OutputFormat::Json,
            out: None,
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, range) in [("g", self.g), ("r", self.r), ("d", self.d)] {
            if range.is_empty() {
                return Err(Error::InvalidArgument(format!("empty range for {name}: {range}")));
            }
        }
        if self.g.start < 1 {
            return Err(Error::InvalidArgument("genus must be at least 1".into()));
        }
        if self.r.start < 2 {
            return Err(Error::InvalidArgument("r must be at least 2".into()));
        }
        if self.cap < 1 {
            return Err(Error::InvalidArgument("cap must be at least 1".into()));
        }
        Ok(())
    }

    pub fn spaces(&self) -> Result<Vec<SymplecticSpace>> {
        self.validate()?;
        let mut out = Vec::new();
        for g in self.g.iter() {
            for r in self.r.iter() {
                out.push(SymplecticSpace::new(g as usize, r as u64)?);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordStatus {
    Ok,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub g: usize,
    pub r: u64,
    pub d: i64,
    pub status: RecordStatus,
    pub skip_reason: Option<String>,
    pub inclusions: Option<InclusionReport>,
    /// Random forms outside `G` checked for an explicit violated pair.
    pub witnesses_sampled: usize,
    pub witnesses_found: usize,
    pub components: ComponentCounts,
    pub violations: Vec<String>,
    pub elapsed_ms: Option<u64>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: RunConfig,
    pub records: Vec<Record>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

pub mod exit_code {
    pub const OK: i32 = 0;
    pub const INCLUSION_VIOLATED: i32 = 1;
    pub const BAD_CONFIG: i32 = 2;
    pub const CAP_EXCEEDED: i32 = 3;
}

impl Report {
    /// First violated flag, as `(g, r, d, flag)`.
    pub fn first_violation(&self) -> Option<(usize, u64, i64, &str)> {
        self.records
            .iter()
            .find_map(|rec| rec.violations.first().map(|v| (rec.g, rec.r, rec.d, v.as_str())))
    }

    /// 1 if any inclusion flag failed, else 3 if any record was skipped,
    /// else 0.
    pub fn exit_code(&self) -> i32 {
        if self.first_violation().is_some() {
            exit_code::INCLUSION_VIOLATED
        } else if self.records.iter().any(|r| r.status == RecordStatus::Skipped) {
            exit_code::CAP_EXCEEDED
        } else {
            exit_code::OK
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("bad report: {e}")))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).expect("in-memory write");
        for rec in &self.records {
            w.write_record(csv_row(&self.config, rec)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn render(&self) -> String {
        match self.config.format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

/// Column order of the CSV projection.
pub const CSV_COLUMNS: [&str; 29] = [
    "g",
    "r",
    "d",
    "status",
    "skip_reason",
    "form_space_rank",
    "form_space_order",
    "weil_order",
    "weil_order_is_two",
    "g_order_all_pairs",
    "g_order_primitive_pairs",
    "g_modes_agree",
    "weil_in_g",
    "g_equals_weil",
    "family_size",
    "g_prime_order",
    "weil_in_g_prime",
    "g_prime_in_g",
    "g_prime_equals_weil",
    "witnesses_sampled",
    "witnesses_found",
    "prym_components",
    "quotient_components",
    "picard_quotient_order",
    "twist_exponent",
    "violations",
    "mode",
    "cap",
    "seed",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_row(config: &RunConfig, rec: &Record) -> Vec<String> {
    let inc = rec.inclusions.as_ref();
    let c = &rec.components;
    vec![
        rec.g.to_string(),
        rec.r.to_string(),
        rec.d.to_string(),
        match rec.status {
            RecordStatus::Ok => "ok".into(),
            RecordStatus::Skipped => "skipped".into(),
        },
        rec.skip_reason.clone().unwrap_or_default(),
        opt(inc.map(|i| i.form_space_rank)),
        opt(inc.map(|i| i.form_space_order)),
        opt(inc.map(|i| i.weil_order)),
        opt(inc.map(|i| i.weil_order_is_two)),
        opt(inc.and_then(|i| i.g_order_all_pairs)),
        opt(inc.and_then(|i| i.g_order_primitive_pairs)),
        opt(inc.and_then(|i| i.g_modes_agree)),
        opt(inc.map(|i| i.weil_in_g)),
        opt(inc.map(|i| i.g_equals_weil)),
        opt(inc.map(|i| i.family_size)),
        opt(inc.map(|i| i.g_prime_order)),
        opt(inc.map(|i| i.weil_in_g_prime)),
        opt(inc.map(|i| i.g_prime_in_g)),
        opt(inc.map(|i| i.g_prime_equals_weil)),
        rec.witnesses_sampled.to_string(),
        rec.witnesses_found.to_string(),
        c.prym_components.to_string(),
        c.quotient_components.to_string(),
        c.picard_quotient_order.to_string(),
        c.twist_exponent.to_string(),
        rec.violations.join(";"),
        config.mode.name().into(),
        config.cap.to_string(),
        config.seed.to_string(),
    ]
}

/// The `d`-independent part of a record.
struct SpaceResult {
    inclusions: std::result::Result<InclusionReport, Error>,
    witnesses_sampled: usize,
    witnesses_found: usize,
    elapsed_ms: u64,
}

/// A deterministic generator for one `(g, r)` grid point.
fn grid_rng(seed: u64, space: SymplecticSpace) -> ChaCha8Rng {
    let mix = seed
        ^ (space.genus() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ space.r().wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    ChaCha8Rng::seed_from_u64(mix)
}

fn run_space(space: SymplecticSpace, config: &RunConfig) -> SpaceResult {
    let started = Instant::now();
    let inclusions = verify_inclusions_with(space, config.mode.modes(), config.cap);
    let (mut sampled, mut found) = (0, 0);
    if inclusions.is_ok() {
        let mode = config.mode.modes()[0];
        if let Ok(g) = compute_g(space, mode, config.cap) {
            let mut rng = grid_rng(config.seed, space);
            for _ in 0..WITNESS_SAMPLES {
                let coeffs = (0..space.form_rank()).map(|_| rng.random_range(0..space.r())).collect();
                let form = AltForm::new(space, coeffs).expect("width matches");
                if g.contains(&form) {
                    continue;
                }
                sampled += 1;
                if let Ok(Some(_)) = find_violated_pair(&form, mode, config.cap) {
                    found += 1;
                }
            }
        }
    }
    SpaceResult {
        inclusions,
        witnesses_sampled: sampled,
        witnesses_found: found,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

/// Runs every grid point of `config`.
pub fn run_table(config: &RunConfig) -> Result<Report> {
    let spaces = config.spaces()?;
    let results: Vec<SpaceResult> = spaces.par_iter().map(|&s| run_space(s, config)).collect();

    let mut records = Vec::new();
    for (space, res) in spaces.iter().zip(&results) {
        for d in config.d.iter() {
            let components = CoverModel::new(space.genus(), space.r(), d)?.counts()?;
            let (status, skip_reason, inclusions) = match &res.inclusions {
                Ok(rep) => (RecordStatus::Ok, None, Some(rep.clone())),
                Err(e) => (RecordStatus::Skipped, Some(e.to_string()), None),
            };
            let mut violations: Vec<String> = inclusions
                .as_ref()
                .map(|i| i.violations().into_iter().map(String::from).collect())
                .unwrap_or_default();
            if res.witnesses_found != res.witnesses_sampled {
                violations.push("witness_missing".into());
            }
            records.push(Record {
                g: space.genus(),
                r: space.r(),
                d,
                status,
                skip_reason,
                inclusions,
                witnesses_sampled: res.witnesses_sampled,
                witnesses_found: res.witnesses_found,
                components,
                violations,
                elapsed_ms: config.timing.then_some(res.elapsed_ms),
                extra: BTreeMap::new(),
            });
        }
    }
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        records,
        extra: BTreeMap::new(),
    })
}
