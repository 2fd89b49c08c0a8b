//! Table emission and parsing, the embedded appendix tables, and the on-disk
//! result cache.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::enumerate::{count_table, max_inv, row_differences, CountTable, SignedTable, TABULATED};
use crate::error::{Error, Result};
use crate::perm::PatternBasis;

/// Bumped whenever cached tables could change.
pub const ENGINE_VERSION: u32 = 1;

pub const CACHE_ENV: &str = "PERMSEQ_CACHE_DIR";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Md,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format {s}"))),
        }
    }
}

/// Counts with structurally empty cells (`k > n(n-1)/2`) left blank.
pub fn counts_grid(t: &CountTable) -> SignedTable {
    let rows = (1..=t.n_max)
        .map(|n| {
            (0..=t.k_max)
                .map(|k| if CountTable::is_blank(n, k) { None } else { Some(t.get(n, k) as i64) })
                .collect()
        })
        .collect();
    SignedTable::new(1, t.k_max, rows)
}

pub fn emit_csv(t: &SignedTable) -> String {
    let mut out = String::from("n\\k");
    for k in 0..=t.k_max {
        let _ = write!(out, ",{k}");
    }
    out.push('\n');
    for (i, row) in t.rows().iter().enumerate() {
        let _ = write!(out, "{}", t.n_min + i);
        for c in row {
            match c {
                Some(v) => {
                    let _ = write!(out, ",{v}");
                }
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

pub fn parse_csv(s: &str) -> Result<SignedTable> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Table("empty input".into()))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() < 2 {
        return Err(Error::Table("header has no k columns".into()));
    }
    for (i, c) in cols[1..].iter().enumerate() {
        if c.trim().parse::<usize>().ok() != Some(i) {
            return Err(Error::Table(format!("header column {} is {c:?}", i + 1)));
        }
    }
    let k_max = cols.len() - 2;
    let mut n_min = None;
    let mut rows = Vec::new();
    for (li, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != cols.len() {
            return Err(Error::Table(format!("row {} has {} cells, expected {}", li + 1, cells.len(), cols.len())));
        }
        let n: usize = cells[0].trim().parse().map_err(|_| Error::Table(format!("bad row label {:?}", cells[0])))?;
        let first = *n_min.get_or_insert(n);
        if n != first + rows.len() {
            return Err(Error::Table(format!("row label {n} out of sequence")));
        }
        let row = cells[1..]
            .iter()
            .map(|c| {
                let c = c.trim();
                if c.is_empty() {
                    Ok(None)
                } else {
                    c.parse::<i64>().map(Some).map_err(|_| Error::Table(format!("bad cell {c:?} in row {n}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(SignedTable::new(n_min.unwrap_or(1), k_max, rows))
}

pub fn count_table_to_csv(t: &CountTable) -> String {
    emit_csv(&counts_grid(t))
}

/// Inverse of [`count_table_to_csv`]; blank cells read back as zero.
pub fn count_table_from_csv(basis: PatternBasis, s: &str) -> Result<CountTable> {
    let g = parse_csv(s)?;
    if g.n_min != 1 {
        return Err(Error::Table("count tables start at n = 1".into()));
    }
    let rows = g
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| match c {
                    Some(v) if *v >= 0 => Ok(*v as u64),
                    Some(v) => Err(Error::Table(format!("negative count {v}"))),
                    None => Ok(0),
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<u64>>>>()?;
    CountTable::from_rows(basis, g.k_max, rows)
}

pub fn emit_markdown(t: &SignedTable, title: &str) -> String {
    let mut out = String::new();
    if !title.is_empty() {
        let _ = writeln!(out, "**{title}**\n");
    }
    out.push_str("| n\\k |");
    for k in 0..=t.k_max {
        let _ = write!(out, " {k} |");
    }
    out.push_str("\n|---|");
    for _ in 0..=t.k_max {
        out.push_str("---:|");
    }
    out.push('\n');
    for (i, row) in t.rows().iter().enumerate() {
        let _ = write!(out, "| {} |", t.n_min + i);
        for c in row {
            match c {
                Some(v) => {
                    let _ = write!(out, " {v} |");
                }
                None => out.push_str("  |"),
            }
        }
        out.push('\n');
    }
    out
}

/// JSON form of a grid: `{"n_min", "k_max", "rows"}` with `null` blanks.
pub fn emit_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn emit_grid(t: &SignedTable, format: Format, title: &str) -> Result<String> {
    match format {
        Format::Csv => Ok(emit_csv(t)),
        Format::Md => Ok(emit_markdown(t, title)),
        Format::Json => emit_json(t),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoldenKind {
    Counts,
    Diffs,
}

impl GoldenKind {
    fn suffix(self) -> &'static str {
        match self {
            GoldenKind::Counts => "counts",
            GoldenKind::Diffs => "diff",
        }
    }
}

/// Size of the appendix tables.
pub const GOLDEN_N: usize = 15;
pub const GOLDEN_K: usize = 15;

macro_rules! golden_files {
    ($($p:literal),*) => {
        &[$(
            ($p, include_str!(concat!("../golden/1324_", $p, "_counts.csv")),
                 include_str!(concat!("../golden/1324_", $p, "_diff.csv"))),
        )*]
    };
}

const GOLDEN_FILES: &[(&str, &str, &str)] =
    golden_files!("1243", "2143", "1342", "1432", "4231", "4321", "2341", "2413", "2431", "3412", "3421");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTable {
    pub basis: PatternBasis,
    pub kind: GoldenKind,
    pub table: SignedTable,
}

impl GoldenTable {
    /// `1324_{p}_{counts|diff}`, matching the file names.
    pub fn name(&self) -> String {
        let p1324 = crate::perm::perm("1324");
        let other: Vec<String> =
            self.basis.patterns().iter().filter(|q| **q != p1324).map(|q| q.to_text()).collect();
        format!("1324_{}_{}", other.join("_"), self.kind.suffix())
    }
}

/// The 22 embedded tables, count table before difference table for each
/// pair.
pub fn golden_tables() -> Result<Vec<GoldenTable>> {
    debug_assert_eq!(GOLDEN_FILES.len(), TABULATED.len());
    let mut out = Vec::new();
    for (p, counts, diffs) in GOLDEN_FILES {
        let basis = PatternBasis::parse(&format!("1324,{p}"))?;
        out.push(GoldenTable { basis: basis.clone(), kind: GoldenKind::Counts, table: parse_csv(counts)? });
        out.push(GoldenTable { basis, kind: GoldenKind::Diffs, table: parse_csv(diffs)? });
    }
    Ok(out)
}

/// Reads `1324_{p}_counts.csv` and `1324_{p}_diff.csv` from `dir` in place
/// of the embedded copies.
pub fn golden_tables_from_dir(dir: &Path) -> Result<Vec<GoldenTable>> {
    let mut out = Vec::new();
    for (p, _, _) in GOLDEN_FILES {
        let basis = PatternBasis::parse(&format!("1324,{p}"))?;
        for kind in [GoldenKind::Counts, GoldenKind::Diffs] {
            let text = fs::read_to_string(dir.join(format!("1324_{p}_{}.csv", kind.suffix())))?;
            out.push(GoldenTable { basis: basis.clone(), kind, table: parse_csv(&text)? });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellMismatch {
    pub n: usize,
    pub k: usize,
    pub expected: Option<i64>,
    pub actual: Option<i64>,
}

/// Cell-by-cell comparison over the expected table's shape.
pub fn compare(expected: &SignedTable, actual: &SignedTable) -> Vec<CellMismatch> {
    let mut out = Vec::new();
    for (i, row) in expected.rows().iter().enumerate() {
        let n = expected.n_min + i;
        for (k, &e) in row.iter().enumerate() {
            let a = actual.get(n, k);
            if a != e {
                out.push(CellMismatch { n, k, expected: e, actual: a });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenResult {
    pub name: String,
    pub basis: PatternBasis,
    pub kind: GoldenKind,
    pub mismatches: Vec<CellMismatch>,
}

impl GoldenResult {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares a computed table (`n_max, k_max >= 15`) against a golden table.
pub fn check_golden(g: &GoldenTable, computed: &CountTable) -> GoldenResult {
    let actual = match g.kind {
        GoldenKind::Counts => counts_grid(computed),
        GoldenKind::Diffs => row_differences(computed),
    };
    GoldenResult { name: g.name(), basis: g.basis.clone(), kind: g.kind, mismatches: compare(&g.table, &actual) }
}

/// Recomputes every embedded table.
pub fn run_golden(cache: Option<&Cache>) -> Result<Vec<GoldenResult>> {
    run_golden_against(&golden_tables()?, cache)
}

/// `goldens` must come in (counts, diffs) pairs per basis.
pub fn run_golden_against(goldens: &[GoldenTable], cache: Option<&Cache>) -> Result<Vec<GoldenResult>> {
    let mut out = Vec::new();
    for pair in goldens.chunks(2) {
        let t = count_table_cached(cache, &pair[0].basis, GOLDEN_N, GOLDEN_K)?;
        for g in pair {
            out.push(check_golden(g, &t));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CacheEntry {
    engine_version: u32,
    basis: PatternBasis,
    n_max: usize,
    k_max: usize,
    table: CountTable,
}

/// One JSON file per `(basis, n_max, k_max)`.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// The directory named by `PERMSEQ_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, basis: &PatternBasis, n_max: usize, k_max: usize) -> PathBuf {
        self.dir.join(format!("{}_n{n_max}_k{k_max}.json", basis.id()))
    }

    /// A stored table, or `None` when absent, unreadable or stale.
    pub fn load(&self, basis: &PatternBasis, n_max: usize, k_max: usize) -> Option<CountTable> {
        let text = fs::read_to_string(self.path(basis, n_max, k_max)).ok()?;
        let e: CacheEntry = serde_json::from_str(&text).ok()?;
        let fresh = e.engine_version == ENGINE_VERSION
            && e.basis == *basis
            && e.n_max == n_max
            && e.k_max == k_max
            && e.table.basis == *basis
            && e.table.n_max == n_max
            && e.table.k_max == k_max;
        fresh.then_some(e.table)
    }

    /// Writes to a temporary file in the cache directory, then renames.
    pub fn store(&self, t: &CountTable) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(&t.basis, t.n_max, t.k_max);
        let entry = CacheEntry {
            engine_version: ENGINE_VERSION,
            basis: t.basis.clone(),
            n_max: t.n_max,
            k_max: t.k_max,
            table: t.clone(),
        };
        let tmp = self.dir.join(format!(".{}.{}.tmp", path.file_name().unwrap().to_string_lossy(), std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

pub fn count_table_cached(cache: Option<&Cache>, basis: &PatternBasis, n_max: usize, k_max: usize) -> Result<CountTable> {
    if let Some(c) = cache {
        if let Some(t) = c.load(basis, n_max, k_max) {
            return Ok(t);
        }
    }
    let t = count_table(basis, n_max, k_max)?;
    if let Some(c) = cache {
        c.store(&t)?;
    }
    Ok(t)
}

/// Blank cells of a difference table: `k > (n+1)n/2`.
pub fn diff_is_blank(n: usize, k: usize) -> bool {
    k > max_inv(n + 1)
}
