use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permseq::almost_decomp::{compat_table, FPriority, Verdict};
use permseq::enumerate::{
    diagonal_limit, limit_report, monotonicity_scan, provable_threshold, row_differences, second_differences,
    symmetry_representative, CountTable, DEFAULT_TAIL_WINDOW,
};
use permseq::injections::{inject_1324_231, inject_1324_231_inverse, trivial_injection};
use permseq::partitions::{lambda_inverse, partitions_of, verify_named_family, Family};
use permseq::qseries::named_gf;
use permseq::report::{
    count_table_cached, counts_grid, emit_grid, emit_json, golden_tables, golden_tables_from_dir, run_golden_against,
    Cache, Format, CACHE_ENV,
};
use permseq::{PatternBasis, Permutation};

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

const EXIT_ERROR: u8 = 1;
const EXIT_GOLDEN: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "permseq", version, about = "Inversion-refined pattern avoidance tables and checks")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Fmt::Csv)]
    format: Fmt,
    /// Directory for cached count tables
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Case order of the f-map
    #[arg(long, global = true, value_enum, default_value_t = Priority::Paper)]
    f_priority: Priority,
    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Csv,
    Md,
    Json,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Format {
        match f {
            Fmt::Csv => Format::Csv,
            Fmt::Md => Format::Md,
            Fmt::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Priority {
    Paper,
    Alternate,
}

#[derive(Args)]
struct TableArgs {
    /// Comma-separated patterns, e.g. 1324,1342
    #[arg(long)]
    basis: PatternBasis,
    #[arg(long, default_value_t = 15)]
    n: usize,
    #[arg(long, default_value_t = 15)]
    k: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count table a(n,k)
    Table(TableArgs),
    /// Row differences a(n+1,k) - a(n,k), or combined second differences
    Diff {
        #[command(flatten)]
        t: TableArgs,
        #[arg(long)]
        second: bool,
    },
    /// Recompute the 22 appendix tables and compare cell by cell
    Golden {
        /// Accepted for compatibility; every table is always checked
        #[arg(long)]
        all: bool,
        /// Read golden CSV files from this directory instead of the embedded copies
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
    /// List monotonicity violations a(n,k) > a(n+1,k)
    Monotone(TableArgs),
    /// Limit sequence and stabilized diagonals
    Limit {
        #[arg(long)]
        basis: PatternBasis,
        /// Defaults to the provable stabilization length for k
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 12)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_TAIL_WINDOW)]
        tail_window: usize,
    },
    /// f-compatibility verdicts for all 1324-avoiding patterns of a length
    Compat {
        #[arg(long, default_value_t = 4)]
        length: usize,
    },
    /// Coefficients of a catalogued generating function
    Gf {
        /// e.g. 1324,1342
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 20)]
        k: usize,
        /// Compare with the stabilized limit values of the pair's table
        #[arg(long)]
        compare_table: bool,
    },
    /// Compare Λ(I_k(132,p)) with the matching partition family
    Bijection {
        #[arg(long)]
        pattern: Permutation,
        #[arg(long, default_value_t = 12)]
        k: usize,
    },
    /// Apply a length-increasing injection to one permutation
    Inject {
        #[arg(long, default_value = "1324,231")]
        basis: PatternBasis,
        #[arg(long)]
        perm: Permutation,
        /// Apply the inverse map instead
        #[arg(long)]
        inverse: bool,
    },
}

struct Ctx {
    format: Format,
    cache: Option<Cache>,
    priority: FPriority,
    out: Option<PathBuf>,
}

impl Ctx {
    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(p) => fs::write(p, text)?,
            None => {
                let mut o = std::io::stdout().lock();
                o.write_all(text.as_bytes())?;
                if !text.ends_with('\n') {
                    o.write_all(b"\n")?;
                }
            }
        }
        Ok(())
    }

    fn table(&self, b: &PatternBasis, n: usize, k: usize) -> permseq::Result<CountTable> {
        count_table_cached(self.cache.as_ref(), b, n, k)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    }
    let ctx = Ctx {
        format: cli.common.format.into(),
        cache: cli.common.cache_dir.map(Cache::new),
        priority: match cli.common.f_priority {
            Priority::Paper => FPriority::Paper,
            Priority::Alternate => FPriority::Alternate,
        },
        out: cli.common.out,
    };
    match run(&ctx, cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(ctx: &Ctx, cmd: Cmd) -> CliResult<u8> {
    match cmd {
        Cmd::Table(a) => {
            let t = ctx.table(&a.basis, a.n, a.k)?;
            let text = match ctx.format {
                Format::Json => emit_json(&t)?,
                f => emit_grid(&counts_grid(&t), f, &format!("av_n^k({})", a.basis))?,
            };
            ctx.emit(&text)?;
            Ok(0)
        }
        Cmd::Diff { t: a, second } => {
            let t = ctx.table(&a.basis, a.n, a.k)?;
            let (d, title) = if second {
                (second_differences(&t), format!("b(n,k) for {}", a.basis))
            } else {
                (row_differences(&t), format!("a(n+1,k) - a(n,k) for {}", a.basis))
            };
            ctx.emit(&emit_grid(&d, ctx.format, &title)?)?;
            Ok(0)
        }
        Cmd::Golden { all: _, golden_dir } => {
            let goldens = match golden_dir {
                Some(d) => golden_tables_from_dir(&d)?,
                None => golden_tables()?,
            };
            let results = run_golden_against(&goldens, ctx.cache.as_ref())?;
            let failed = results.iter().filter(|r| !r.ok()).count();
            let text = if ctx.format == Format::Json {
                emit_json(&results)?
            } else {
                let mut s = String::new();
                for r in &results {
                    if r.ok() {
                        s.push_str(&format!("PASS {}\n", r.name));
                    } else {
                        s.push_str(&format!("FAIL {} ({} cells)\n", r.name, r.mismatches.len()));
                        for m in &r.mismatches {
                            s.push_str(&format!(
                                "  n={} k={} expected={} actual={}\n",
                                m.n,
                                m.k,
                                cell(m.expected),
                                cell(m.actual)
                            ));
                        }
                    }
                }
                s.push_str(&format!("{}/{} tables match\n", results.len() - failed, results.len()));
                s
            };
            ctx.emit(&text)?;
            Ok(if failed == 0 { 0 } else { EXIT_GOLDEN })
        }
        Cmd::Monotone(a) => {
            let t = ctx.table(&a.basis, a.n, a.k)?;
            let v = monotonicity_scan(&t);
            let text = if ctx.format == Format::Json {
                emit_json(&v)?
            } else {
                let mut s = String::from("n,k,a(n,k),a(n+1,k)\n");
                for x in &v {
                    s.push_str(&format!("{},{},{},{}\n", x.n, x.k, x.a_n, x.a_next));
                }
                if v.is_empty() {
                    s.push_str(&format!("no violation up to n={}, k={}\n", a.n, a.k));
                }
                if let Some(c) = zero_row_offset(&t) {
                    s.push_str(&format!(
                        "certificate: av_n^k = 0 for k >= 1, n >= k+{c} (checked n <= {}, k <= {})\n",
                        a.n, a.k
                    ));
                }
                s
            };
            ctx.emit(&text)?;
            Ok(0)
        }
        Cmd::Limit { basis, n, k, tail_window } => {
            let n = match n {
                Some(n) => n,
                None => provable_threshold(&basis, k).unwrap_or(k + 2 + basis.max_len()).max(tail_window),
            };
            let t = ctx.table(&basis, n, k)?;
            let rep = limit_report(&t, tail_window);
            let secondary = diagonal_limit(&row_differences(&t), tail_window);
            let tertiary = diagonal_limit(&second_differences(&t), tail_window);
            let text = if ctx.format == Format::Json {
                emit_json(&serde_json::json!({
                    "basis": basis,
                    "n_max": n,
                    "limit": rep,
                    "secondary": secondary,
                    "tertiary": tertiary,
                }))?
            } else {
                let mut s = String::new();
                s.push_str(&format!("limit: {}\n", join(&rep.stable_prefix())));
                let unstable: Vec<String> =
                    rep.stabilized.iter().enumerate().filter(|(_, s)| !**s).map(|(k, _)| k.to_string()).collect();
                if !unstable.is_empty() {
                    s.push_str(&format!("unstable within n <= {n}: k = {}\n", unstable.join(",")));
                }
                s.push_str(&format!("thresholds: {}\n", join(&rep.m)));
                s.push_str(&format!("secondary: {}\n", join(&secondary.sequence())));
                s.push_str(&format!("tertiary: {}\n", join(&tertiary.sequence())));
                if let Some(note) = limit_note(&basis) {
                    s.push_str(&format!("note: {note}\n"));
                }
                s
            };
            ctx.emit(&text)?;
            Ok(0)
        }
        Cmd::Compat { length } => {
            let (row, verdicts) = compat_table(length, ctx.priority)?;
            let undecided: Vec<String> =
                verdicts.iter().filter(|v| v.witness.is_none()).map(|v| v.pattern.to_text()).collect();
            match &ctx.out {
                Some(p) => fs::write(p, emit_json(&verdicts)?)?,
                None if ctx.format == Format::Json => println!("{}", emit_json(&verdicts)?),
                None => {}
            }
            println!("| n | Thm sufficient | CLB | Thm necessary | Thm necessary (compatible) | CUB | Thm sufficient (compatible) |");
            println!("|---|---:|---:|---:|---:|---:|---:|");
            println!(
                "| {} | {} | {} | {} | {} | {} | {} |",
                row.n,
                row.sufficient_incompatible,
                row.clb,
                row.necessary_incompatible,
                row.necessary_compatible,
                row.cub,
                row.sufficient_compatible
            );
            println!("no witness found: {}", undecided.join(","));
            let proven: Vec<String> = verdicts
                .iter()
                .filter(|v| v.verdict == Verdict::CompatibleByTheorem)
                .map(|v| v.pattern.to_text())
                .collect();
            println!("compatible by theorem: {}", proven.join(","));
            let clash = verdicts.iter().any(|v| v.verdict == Verdict::CompatibleByTheorem && v.witness.is_some());
            Ok(if clash { EXIT_VERIFY } else { 0 })
        }
        Cmd::Gf { name, k, compare_table } => {
            let s = named_gf(&name, k)?;
            ctx.emit(&s.to_string())?;
            if !compare_table {
                return Ok(0);
            }
            let key = name.trim().strip_prefix("1324,").unwrap_or(name.trim());
            let basis = PatternBasis::parse(&format!("1324,{key}"))?;
            let n = provable_threshold(&basis, k).unwrap_or(k + 6);
            let t = ctx.table(&basis, n, k)?;
            let lim = limit_report(&t, DEFAULT_TAIL_WINDOW).stable_prefix();
            let series = s.to_i64()?;
            let agree = lim.iter().enumerate().all(|(i, &c)| series[i] == c as i64);
            eprintln!(
                "{}: series vs limit values of {basis} for k <= {} (n_max={n})",
                if agree { "PASS" } else { "FAIL" },
                lim.len().saturating_sub(1)
            );
            Ok(if agree && lim.len() == k + 1 { 0 } else { EXIT_VERIFY })
        }
        Cmd::Bijection { pattern, k } => {
            let fam = Family::from_pattern(&pattern)
                .ok_or_else(|| format!("no partition family is known for {pattern}"))?;
            let rep = verify_named_family(fam, k)?;
            let text = if ctx.format == Format::Json {
                emit_json(&rep)?
            } else {
                let mut s = format!("pattern {pattern} family {}\n", rep.family);
                for l in &rep.levels {
                    let fam_count = partitions_of(l.k).iter().filter(|x| fam.test(x)).count();
                    s.push_str(&format!("k={} permutations={} family={}", l.k, l.count, fam_count));
                    for p in &l.only_perm {
                        s.push_str(&format!(" only-perm:{p}({})", lambda_inverse(p)));
                    }
                    for p in &l.only_family {
                        s.push_str(&format!(" only-family:{p}"));
                    }
                    s.push('\n');
                }
                s.push_str(if rep.ok() { "PASS\n" } else { "FAIL\n" });
                s
            };
            ctx.emit(&text)?;
            Ok(if rep.ok() { 0 } else { EXIT_VERIFY })
        }
        Cmd::Inject { basis, perm, inverse } => {
            if !perm.avoids(&basis) && !inverse {
                return Err(format!("{perm} does not avoid {basis}").into());
            }
            let is_231 = basis == PatternBasis::parse("1324,231")?;
            let line = if is_231 && inverse {
                format!("{}\n", inject_1324_231_inverse(&perm)?)
            } else if is_231 {
                let (img, branch) = inject_1324_231(&perm)?;
                format!("{img}\n{branch} inv={}\n", perm.inv())
            } else if let Some(f) = trivial_injection(&basis) {
                if inverse {
                    return Err("the trivial injections have no inverse here".into());
                }
                let img = f(&perm);
                let how = if img.last() == Some(img.len()) { "append-max" } else { "prepend-min" };
                format!("{img}\nbranch={how} inv={}\n", perm.inv())
            } else {
                return Err(format!("no explicit injection for {basis}").into());
            };
            ctx.emit(&line)?;
            Ok(0)
        }
    }
}

fn cell(c: Option<i64>) -> String {
    c.map_or_else(|| "blank".to_string(), |v| v.to_string())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Smallest `c` with `a(n,k) = 0` for all computed `k >= 1`, `n >= k+c`,
/// provided some such cell exists.
fn zero_row_offset(t: &CountTable) -> Option<usize> {
    (0..t.n_max).find(|&c| {
        let cells: Vec<u64> =
            (1..=t.k_max).flat_map(|k| (k + c..=t.n_max).map(move |n| (n, k))).map(|(n, k)| t.get(n, k)).collect();
        !cells.is_empty() && cells.iter().all(|&v| v == 0)
    })
}

fn limit_note(b: &PatternBasis) -> Option<&'static str> {
    let (rep, _) = symmetry_representative(b).ok()?;
    let other = rep.patterns().iter().find(|p| p.to_text() != "1324")?.to_text();
    Some(match other.as_str() {
        "1243" => "partition numbers (A000041)",
        "2143" => "twice the partition numbers for k >= 1",
        "1342" => "overpartitions (A015128)",
        "1432" => "partitions into blue and red parts, blue parts at least the red ones",
        "4231" => "square of the convex-partition series; not in OEIS",
        "4321" => "square of the series of partitions with at most two distinct parts (A265250)",
        "2341" => "square of the sand pile model series",
        "2413" => "square of the partition series",
        "2431" => "partitions times steep partitions",
        "3412" => "square of the convex penny arrangement series (A005576)",
        "3421" => "square of the A115029 series",
        _ => return None,
    })
}
