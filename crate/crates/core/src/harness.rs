//! Sweeps of one symbol entry comparing exact and asymptotic values.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::asymptotics::{
    asym_12j_two_small, asym_15j_three_small, asym_9j_one_small, asym_9j_two_small, is_forbidden,
    ponzano_regge_6j, AsymResult,
};
use crate::error::{AsymError, HarnessError};
use crate::exact::{Engine, SymbolArgs, SymbolKind};
use crate::geometry::{is_classically_allowed, EdgeSet};
use crate::halfint::{triad_allowed, HalfInt};

/// Symbol and asymptotic formula compared by a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// 6j against the Ponzano-Regge formula.
    PonzanoRegge6j,
    NineJOneSmall,
    NineJTwoSmall,
    TwelveJTwoSmall,
    FifteenJThreeSmall,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::PonzanoRegge6j,
        Family::NineJOneSmall,
        Family::NineJTwoSmall,
        Family::TwelveJTwoSmall,
        Family::FifteenJThreeSmall,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::PonzanoRegge6j => "pr6j",
            Family::NineJOneSmall => "9j1s",
            Family::NineJTwoSmall => "9j2s",
            Family::TwelveJTwoSmall => "12j2s",
            Family::FifteenJThreeSmall => "15j3s",
        }
    }

    pub fn kind(self) -> SymbolKind {
        match self {
            Family::PonzanoRegge6j => SymbolKind::SixJ,
            Family::NineJOneSmall | Family::NineJTwoSmall => SymbolKind::NineJ,
            Family::TwelveJTwoSmall => SymbolKind::TwelveJFirst,
            Family::FifteenJThreeSmall => SymbolKind::FifteenJFirst,
        }
    }

    /// Role names of the entries, row-major.
    pub fn roles(self) -> &'static [&'static str] {
        match self {
            Family::PonzanoRegge6j => &["j1", "j2", "j3", "j4", "j5", "j6"],
            Family::NineJOneSmall => &["j1", "j2", "j12", "s", "j4", "j34", "j13", "j24", "j5"],
            Family::NineJTwoSmall => &["j1", "s2", "j12", "s3", "j4", "j34", "j13", "j24", "j5"],
            Family::TwelveJTwoSmall => &[
                "s1", "j2", "j12", "j125", "j3", "j4", "j34", "j135", "j13", "j24", "s5", "j6",
            ],
            Family::FifteenJThreeSmall => &[
                "j1", "j2", "j12", "j125", "j1256", "s3", "j4", "j34", "j135", "j1356", "j13",
                "j24", "s5", "s6", "j7",
            ],
        }
    }

    /// Asymptotic value at `entries` (row-major, [`Family::roles`] order).
    pub fn asymptotic(self, entries: &[HalfInt]) -> Result<AsymResult<f64>, AsymError> {
        match self {
            Family::PonzanoRegge6j => ponzano_regge_6j(arr(entries)),
            Family::NineJOneSmall => asym_9j_one_small(arr(entries)),
            Family::NineJTwoSmall => asym_9j_two_small(arr(entries)),
            Family::TwelveJTwoSmall => asym_12j_two_small(arr(entries)),
            Family::FifteenJThreeSmall => asym_15j_three_small(arr(entries)),
        }
    }

    /// Classical-region test for `entries`, recomputed from edge lengths alone.
    pub fn classically_allowed(self, entries: &[HalfInt]) -> bool {
        let e = entries;
        match self {
            Family::PonzanoRegge6j => is_classically_allowed(&EdgeSet::<f64>::six_j(arr(e))),
            Family::NineJOneSmall => {
                is_classically_allowed(&EdgeSet::<f64>::nine_j([e[0], e[1], e[4], e[8], e[2], e[7]]))
            }
            Family::NineJTwoSmall => {
                let (a, b, c) = (e[0].length::<f64>(), e[4].length::<f64>(), e[8].length::<f64>());
                c <= a + b && c >= (a - b).abs()
            }
            Family::TwelveJTwoSmall => {
                is_classically_allowed(&EdgeSet::<f64>::twelve_j([e[1], e[5], e[4], e[11], e[9], e[6]]))
            }
            Family::FifteenJThreeSmall => {
                is_classically_allowed(&EdgeSet::<f64>::fifteen_j([e[0], e[1], e[6], e[14], e[2], e[11]]))
            }
        }
    }
}

fn arr<const N: usize>(e: &[HalfInt]) -> [HalfInt; N] {
    e.try_into().expect("entry count checked by SweepSpec")
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| HarnessError::InvalidSpec(format!("unknown family `{s}`")))
    }
}

/// One sweep: every entry fixed except `free_role`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub family: Family,
    pub fixed: BTreeMap<String, HalfInt>,
    pub free_role: String,
    /// Inclusive bounds; defaults to the whole selection-rule range.
    pub range: Option<(HalfInt, HalfInt)>,
    /// Working precision of the exact values; `None` uses the default.
    pub precision_bits: Option<u32>,
    /// Keep all certified digits of each exact value in the rows.
    pub full_precision: bool,
}

impl SweepSpec {
    pub fn new(family: Family, fixed: &[(&str, HalfInt)], free_role: &str) -> Self {
        SweepSpec {
            family,
            fixed: fixed.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            free_role: free_role.to_string(),
            range: None,
            precision_bits: None,
            full_precision: false,
        }
    }

    fn free_index(&self) -> Result<usize, HarnessError> {
        let roles = self.family.roles();
        let free = roles
            .iter()
            .position(|r| *r == self.free_role)
            .ok_or_else(|| {
                HarnessError::InvalidSpec(format!(
                    "`{}` is not a role of {} (roles: {})",
                    self.free_role,
                    self.family,
                    roles.join(",")
                ))
            })?;
        if self.fixed.contains_key(&self.free_role) {
            return Err(HarnessError::InvalidSpec(format!(
                "free role `{}` also given a fixed value",
                self.free_role
            )));
        }
        if let Some(extra) = self.fixed.keys().find(|k| !roles.contains(&k.as_str())) {
            return Err(HarnessError::InvalidSpec(format!(
                "`{extra}` is not a role of {}",
                self.family
            )));
        }
        if let Some(missing) = roles
            .iter()
            .find(|r| **r != self.free_role && !self.fixed.contains_key(**r))
        {
            return Err(HarnessError::InvalidSpec(format!("role `{missing}` has no value")));
        }
        Ok(free)
    }

    /// Template entries with the free slot set to zero.
    fn template(&self) -> Vec<HalfInt> {
        self.family
            .roles()
            .iter()
            .map(|r| self.fixed.get(*r).copied().unwrap_or(HalfInt::ZERO))
            .collect()
    }

    /// Free values allowed by the triangle rules, ascending.
    pub fn free_values(&self) -> Result<Vec<HalfInt>, HarnessError> {
        let free = self.free_index()?;
        let entries = self.template();
        let mut lo = 0u32;
        let mut hi = u32::MAX;
        let mut parity = None;
        for &(a, b, c) in self.family.kind().triads() {
            let slots = [a, b, c];
            match slots.iter().position(|&k| k == free) {
                None => {
                    if !triad_allowed(entries[a], entries[b], entries[c]) {
                        return Ok(Vec::new());
                    }
                }
                Some(p) => {
                    let others: Vec<u32> = slots
                        .iter()
                        .enumerate()
                        .filter(|&(q, _)| q != p)
                        .map(|(_, &k)| entries[k].twice())
                        .collect();
                    let (x, y) = (others[0], others[1]);
                    lo = lo.max(x.abs_diff(y));
                    hi = hi.min(x + y);
                    let par = (x + y) % 2;
                    if parity.is_some_and(|q| q != par) {
                        return Ok(Vec::new());
                    }
                    parity = Some(par);
                }
            }
        }
        let Some(par) = parity else {
            return Err(HarnessError::InvalidSpec(format!(
                "role `{}` is in no triad",
                self.free_role
            )));
        };
        if let Some((a, b)) = self.range {
            if a.twice() < lo || b.twice() > hi || a > b {
                return Err(HarnessError::InvalidSpec(format!(
                    "range {a}:{b} is not inside the allowed range {}:{}",
                    HalfInt::from_twice(lo),
                    HalfInt::from_twice(hi)
                )));
            }
            lo = a.twice();
            hi = b.twice();
        }
        Ok((lo..=hi)
            .filter(|t| t % 2 == par)
            .map(HalfInt::from_twice)
            .collect())
    }
}

/// One point of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub free_value: HalfInt,
    pub exact: f64,
    pub asym: Option<f64>,
    pub abs_err: Option<f64>,
    pub volume: Option<f64>,
    pub allowed: bool,
    /// Certified decimal expansion of `exact`, when requested.
    pub exact_digits: Option<String>,
    /// Why `asym` is missing inside the allowed region.
    pub failure: Option<String>,
}

/// Evaluates every point of `spec` with the shared engine.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<ComparisonRow>, HarnessError> {
    run_sweep_with(Engine::global(), spec)
}

pub fn run_sweep_with(engine: &Engine, spec: &SweepSpec) -> Result<Vec<ComparisonRow>, HarnessError> {
    let free = spec.free_index()?;
    let values = spec.free_values()?;
    let template = spec.template();
    let rows = values
        .par_iter()
        .map(|&v| {
            let mut entries = template.clone();
            entries[free] = v;
            evaluate_point(engine, spec, v, entries)
        })
        .collect();
    Ok(rows)
}

fn evaluate_point(engine: &Engine, spec: &SweepSpec, v: HalfInt, entries: Vec<HalfInt>) -> ComparisonRow {
    let family = spec.family;
    let allowed = family.classically_allowed(&entries);
    let asym = family.asymptotic(&entries);
    let args = SymbolArgs::new(family.kind(), entries).expect("arity fixed by family");
    let bits = spec.precision_bits.unwrap_or_else(|| args.default_precision());
    let exact_value = engine.evaluate_with_precision(&args, bits);
    let exact = exact_value.to_f64();
    let exact_digits = spec.full_precision.then(|| exact_value.certified());
    let (asym, volume, failure) = match asym {
        Ok(r) if allowed => (Some(r.value), r.volume, None),
        Ok(_) => (None, None, Some("outside the allowed region".to_string())),
        Err(e) if is_forbidden(&e) => (None, None, None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    ComparisonRow {
        free_value: v,
        exact,
        asym,
        abs_err: asym.map(|a| (a - exact).abs()),
        volume,
        allowed,
        exact_digits,
        failure,
    }
}

/// Error statistics over a set of rows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorStats {
    pub count: usize,
    pub max_abs_err: f64,
    pub rms_err: f64,
    pub rms_exact: f64,
    pub max_abs_exact: f64,
}

impl ErrorStats {
    fn over<'a>(rows: impl Iterator<Item = &'a ComparisonRow>) -> Option<Self> {
        let (mut n, mut max_err, mut se, mut sx, mut max_ex) = (0usize, 0f64, 0f64, 0f64, 0f64);
        for r in rows {
            let err = r.abs_err?;
            n += 1;
            max_err = max_err.max(err);
            se += err * err;
            sx += r.exact * r.exact;
            max_ex = max_ex.max(r.exact.abs());
        }
        (n > 0).then(|| ErrorStats {
            count: n,
            max_abs_err: max_err,
            rms_err: (se / n as f64).sqrt(),
            rms_exact: (sx / n as f64).sqrt(),
            max_abs_exact: max_ex,
        })
    }

    /// RMS error over RMS exact value.
    pub fn relative_rms(&self) -> f64 {
        self.rms_err / self.rms_exact
    }

    /// Largest error over the largest exact magnitude.
    pub fn max_err_ratio(&self) -> f64 {
        self.max_abs_err / self.max_abs_exact
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorSummary {
    pub rows: usize,
    pub allowed_rows: usize,
    pub volume_floor_fraction: f64,
    pub max_volume: Option<f64>,
    /// Free value at the largest volume and the relative error there.
    pub at_max_volume: Option<(HalfInt, f64)>,
    /// Rows with `volume >= floor · max volume` (all compared rows when no volume is reported).
    pub above_floor: Option<ErrorStats>,
    pub all_allowed: Option<ErrorStats>,
    /// Allowed rows below the volume floor, i.e. near a caustic.
    pub caustic_adjacent: Vec<HalfInt>,
}

pub fn error_report(rows: &[ComparisonRow], volume_floor_fraction: f64) -> Result<ErrorSummary, HarnessError> {
    if rows.is_empty() {
        return Err(HarnessError::EmptyInput);
    }
    let compared: Vec<&ComparisonRow> = rows.iter().filter(|r| r.allowed && r.abs_err.is_some()).collect();
    let peak = compared
        .iter()
        .filter_map(|r| r.volume.map(|v| (v, *r)))
        .max_by(|a, b| a.0.total_cmp(&b.0));
    let max_volume = peak.map(|(v, _)| v);
    let floor = max_volume.map(|v| v * volume_floor_fraction);
    let above = |r: &&&ComparisonRow| match (floor, r.volume) {
        (Some(f), Some(v)) => v >= f,
        (None, _) => true,
        (Some(_), None) => false,
    };
    let caustic_adjacent = compared
        .iter()
        .filter(|r| !above(r))
        .map(|r| r.free_value)
        .collect();
    Ok(ErrorSummary {
        rows: rows.len(),
        allowed_rows: rows.iter().filter(|r| r.allowed).count(),
        volume_floor_fraction,
        max_volume,
        at_max_volume: peak.map(|(_, r)| (r.free_value, r.abs_err.unwrap() / r.exact.abs())),
        above_floor: ErrorStats::over(compared.iter().filter(above).copied()),
        all_allowed: ErrorStats::over(compared.iter().copied()),
        caustic_adjacent,
    })
}

impl fmt::Display for ErrorSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rows: {} ({} allowed)", self.rows, self.allowed_rows)?;
        if let (Some(v), Some((j, rel))) = (self.max_volume, self.at_max_volume) {
            writeln!(f, "max volume: {v:.6e} at {} (relative error {rel:.4e})", j.to_decimal())?;
        }
        let mut block = |name: &str, s: &Option<ErrorStats>| match s {
            Some(s) => writeln!(
                f,
                "{name}: n={} max_abs_err={:.4e} rms_err={:.4e} relative_rms={:.4e} max_err/max_exact={:.4e}",
                s.count,
                s.max_abs_err,
                s.rms_err,
                s.relative_rms(),
                s.max_err_ratio()
            ),
            None => writeln!(f, "{name}: no rows"),
        };
        block(&format!("volume >= {} * max", self.volume_floor_fraction), &self.above_floor)?;
        block("all allowed", &self.all_allowed)?;
        let near: Vec<String> = self.caustic_adjacent.iter().map(|j| j.to_decimal()).collect();
        write!(f, "near caustic: {}", if near.is_empty() { "none".into() } else { near.join(" ") })
    }
}

pub const CSV_HEADER: [&str; 6] = ["free_value", "exact", "asym", "abs_err", "volume", "allowed"];

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Writes rows as CSV; `exact` carries all certified digits when present.
pub fn write_csv<W: Write>(rows: &[ComparisonRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let exact = r.exact_digits.clone().unwrap_or_else(|| num(r.exact));
        w.write_record([
            r.free_value.to_decimal(),
            exact,
            opt(r.asym),
            opt(r.abs_err),
            opt(r.volume),
            r.allowed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(rows: &[ComparisonRow], path: &Path) -> Result<(), HarnessError> {
    let file = std::fs::File::create(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(rows, std::io::BufWriter::new(file)).map_err(|source| HarnessError::Csv {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_csv<R: Read>(input: R) -> Result<Vec<ComparisonRow>, String> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rd.headers().map_err(|e| e.to_string())?.clone();
    if header.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(format!("unexpected header `{}`", header.iter().collect::<Vec<_>>().join(",")));
    }
    let field = |s: &str, what: &str| -> Result<Option<f64>, String> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse().map(Some).map_err(|_| format!("bad {what} `{s}`"))
        }
    };
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        if rec.len() != CSV_HEADER.len() {
            return Err(format!("expected 6 fields, found {}", rec.len()));
        }
        let free_value = rec[0].parse::<HalfInt>().map_err(|e| e.to_string())?;
        let exact = field(&rec[1], "exact")?.ok_or("missing exact value")?;
        let allowed = match &rec[5] {
            "true" => true,
            "false" => false,
            other => return Err(format!("bad allowed flag `{other}`")),
        };
        rows.push(ComparisonRow {
            free_value,
            exact,
            asym: field(&rec[2], "asym")?,
            abs_err: field(&rec[3], "abs_err")?,
            volume: field(&rec[4], "volume")?,
            allowed,
            exact_digits: None,
            failure: None,
        });
    }
    Ok(rows)
}

pub fn read_csv(path: &Path) -> Result<Vec<ComparisonRow>, HarnessError> {
    let file = std::fs::File::open(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(std::io::BufReader::new(file))
        .map_err(|msg| HarnessError::InvalidSpec(format!("{}: {msg}", path.display())))
}

/// Parses `role=value,role=value,...`.
pub fn parse_assignments(s: &str) -> Result<BTreeMap<String, HalfInt>, HarnessError> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| HarnessError::InvalidSpec(format!("expected role=value, got `{part}`")))?;
        let v = v
            .parse::<HalfInt>()
            .map_err(|e| HarnessError::InvalidSpec(e.to_string()))?;
        if out.insert(k.trim().to_string(), v).is_some() {
            return Err(HarnessError::InvalidSpec(format!("role `{}` given twice", k.trim())));
        }
    }
    Ok(out)
}

/// Parses a comma- or space-separated list of half-integers.
pub fn parse_entries(s: &str) -> Result<Vec<HalfInt>, HarnessError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|e: crate::halfint::ParseHalfIntError| HarnessError::InvalidSpec(e.to_string())))
        .collect()
}
