//! Generation of `Av_n^{<=K}(B)` and the derived counting tables.
//!
//! The generator builds permutations left to right. Placing value `v` adds
//! exactly the number of still unused values below `v` to the inversion
//! count, so the running count is exact and the budget prunes directly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{contains_ending_at, PatternBasis, Permutation};

pub const MAX_LEN: usize = 64;

struct Dfs<'a> {
    n: usize,
    k_max: usize,
    patterns: &'a [Vec<usize>],
    prefix: Vec<usize>,
    used: u64,
}

impl Dfs<'_> {
    fn new(n: usize, k_max: usize, patterns: &[Vec<usize>]) -> Dfs<'_> {
        Dfs { n, k_max, patterns, prefix: Vec::with_capacity(n), used: 0 }
    }

    fn cost(&self, v: usize) -> usize {
        let below = if v == 1 { 0 } else { (1u64 << (v - 1)) - 1 };
        (below & !self.used).count_ones() as usize
    }

    fn push(&mut self, v: usize) -> bool {
        self.prefix.push(v);
        self.used |= 1u64 << (v - 1);
        let len = self.prefix.len();
        let ok = self
            .patterns
            .iter()
            .all(|q| q.len() > len || !contains_ending_at(&self.prefix, q));
        if !ok {
            self.pop();
        }
        ok
    }

    fn pop(&mut self) {
        let v = self.prefix.pop().expect("nonempty prefix");
        self.used &= !(1u64 << (v - 1));
    }

    fn run(&mut self, inv: usize, visit: &mut dyn FnMut(&[usize], usize)) {
        if self.prefix.len() == self.n {
            visit(&self.prefix, inv);
            return;
        }
        for v in 1..=self.n {
            if self.used & (1u64 << (v - 1)) != 0 {
                continue;
            }
            let c = self.cost(v);
            if inv + c > self.k_max {
                // costs grow with v
                break;
            }
            if self.push(v) {
                self.run(inv + c, visit);
                self.pop();
            }
        }
    }

    /// Visits every completion of the one-entry prefix `first`.
    fn run_from(&mut self, first: usize, visit: &mut dyn FnMut(&[usize], usize)) {
        let c = self.cost(first);
        if c > self.k_max {
            return;
        }
        if self.push(first) {
            self.run(c, visit);
            self.pop();
        }
    }
}

fn check_len(n: usize) -> Result<()> {
    if n > MAX_LEN {
        Err(Error::TooLong(n))
    } else {
        Ok(())
    }
}

fn raw_patterns(basis: &PatternBasis) -> Vec<Vec<usize>> {
    basis.patterns().iter().map(|p| p.values().to_vec()).collect()
}

/// All `B`-avoiders of length `n` with at most `k_max` inversions, in
/// lexicographic order.
pub fn generate_avoiders(basis: &PatternBasis, n: usize, k_max: usize) -> Result<Vec<Permutation>> {
    check_len(n)?;
    if n == 0 {
        return Ok(vec![Permutation::empty()]);
    }
    let pats = raw_patterns(basis);
    let chunks: Vec<Vec<Permutation>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut dfs = Dfs::new(n, k_max, &pats);
            dfs.run_from(first, &mut |p, _| out.push(Permutation::from_vec_unchecked(p.to_vec())));
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// `Av_n^k(B)`: avoiders with exactly `k` inversions.
pub fn generate_exact(basis: &PatternBasis, n: usize, k: usize) -> Result<Vec<Permutation>> {
    Ok(generate_avoiders(basis, n, k)?.into_iter().filter(|p| p.inv() == k).collect())
}

/// All `B`-avoiders of length `n`, with no inversion budget.
pub fn generate_all_avoiders(basis: &PatternBasis, n: usize) -> Result<Vec<Permutation>> {
    generate_avoiders(basis, n, n * n.saturating_sub(1) / 2)
}

/// `av_n^k(B)` for `k = 0..=k_max`.
pub fn count_row(basis: &PatternBasis, n: usize, k_max: usize) -> Result<Vec<u64>> {
    check_len(n)?;
    let mut row = vec![0u64; k_max + 1];
    if n == 0 {
        row[0] = 1;
        return Ok(row);
    }
    let pats = raw_patterns(basis);
    let parts: Vec<Result<Vec<u64>>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut counts = vec![0u64; k_max + 1];
            let mut overflow = None;
            let mut dfs = Dfs::new(n, k_max, &pats);
            dfs.run_from(first, &mut |_, inv| match counts[inv].checked_add(1) {
                Some(c) => counts[inv] = c,
                None => overflow = Some(inv),
            });
            match overflow {
                Some(k) => Err(Error::Overflow { n, k }),
                None => Ok(counts),
            }
        })
        .collect();
    for part in parts {
        for (k, c) in part?.into_iter().enumerate() {
            row[k] = row[k].checked_add(c).ok_or(Error::Overflow { n, k })?;
        }
    }
    Ok(row)
}

/// The matrix `a(n,k) = av_n^k(B)` for `1 <= n <= n_max`, `0 <= k <= k_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub basis: PatternBasis,
    pub n_max: usize,
    pub k_max: usize,
    rows: Vec<Vec<u64>>,
}

/// Largest inversion number of a permutation of length `n`.
pub fn max_inv(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl CountTable {
    pub fn from_rows(basis: PatternBasis, k_max: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != k_max + 1) {
            return Err(Error::Table("row width differs from k_max + 1".into()));
        }
        Ok(CountTable { basis, n_max: rows.len(), k_max, rows })
    }

    /// `a(n,k)`; zero outside the computed range.
    pub fn get(&self, n: usize, k: usize) -> u64 {
        if n == 0 {
            return u64::from(k == 0);
        }
        if n > self.n_max || k > self.k_max {
            return 0;
        }
        self.rows[n - 1][k]
    }

    pub fn row(&self, n: usize) -> &[u64] {
        &self.rows[n - 1]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Whether the cell is structurally empty (`k > n(n-1)/2`).
    pub fn is_blank(n: usize, k: usize) -> bool {
        k > max_inv(n)
    }
}

pub fn count_table(basis: &PatternBasis, n_max: usize, k_max: usize) -> Result<CountTable> {
    check_len(n_max)?;
    let rows: Result<Vec<Vec<u64>>> =
        (1..=n_max).into_par_iter().map(|n| count_row(basis, n, k_max)).collect();
    CountTable::from_rows(basis.clone(), k_max, rows?)
}

/// A signed matrix indexed by `n` starting at `n_min`, with optional blank
/// cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedTable {
    pub n_min: usize,
    pub k_max: usize,
    rows: Vec<Vec<Option<i64>>>,
}

impl SignedTable {
    pub fn new(n_min: usize, k_max: usize, rows: Vec<Vec<Option<i64>>>) -> Self {
        SignedTable { n_min, k_max, rows }
    }

    pub fn n_max(&self) -> usize {
        self.n_min + self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Option<i64> {
        if n < self.n_min || k > self.k_max {
            return None;
        }
        self.rows.get(n - self.n_min).and_then(|r| r[k])
    }

    pub fn rows(&self) -> &[Vec<Option<i64>>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// `d(n,k) = a(n+1,k) - a(n,k)` for `1 <= n < n_max`; blank where both
/// terms are structurally zero.
pub fn row_differences(t: &CountTable) -> SignedTable {
    let rows = (1..t.n_max)
        .map(|n| {
            (0..=t.k_max)
                .map(|k| {
                    if k > max_inv(n + 1) {
                        None
                    } else {
                        Some(t.get(n + 1, k) as i64 - t.get(n, k) as i64)
                    }
                })
                .collect()
        })
        .collect();
    SignedTable::new(1, t.k_max, rows)
}

/// Combined second differences `b(n,k) = d(n+1,k+1) - d(n,k)` for
/// `n + 2 <= n_max`, `k + 1 <= k_max`. Constant diagonals of `b` are the
/// tertiary limit sequences.
pub fn second_differences(t: &CountTable) -> SignedTable {
    let a = |n: usize, k: usize| t.get(n, k) as i64;
    let rows = (1..=t.n_max.saturating_sub(2))
        .map(|n| {
            (0..t.k_max)
                .map(|k| Some((a(n + 2, k + 1) - a(n + 1, k + 1)) - (a(n + 1, k) - a(n, k))))
                .collect()
        })
        .collect();
    SignedTable::new(1, t.k_max.saturating_sub(1), rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub n: usize,
    pub k: usize,
    pub a_n: u64,
    pub a_next: u64,
}

/// Every `(n,k)` with `a(n,k) > a(n+1,k)`, ordered by `(k,n)`.
pub fn monotonicity_scan(t: &CountTable) -> Vec<Violation> {
    let mut out = Vec::new();
    for k in 0..=t.k_max {
        for n in 1..t.n_max {
            let (a, b) = (t.get(n, k), t.get(n + 1, k));
            if a > b {
                out.push(Violation { n, k, a_n: a, a_next: b });
            }
        }
    }
    out
}

pub const DEFAULT_TAIL_WINDOW: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    /// `a(n_max, k)`, the candidate limit value.
    pub c: Vec<u64>,
    /// Observed threshold: smallest `m` with `a(n,k)` constant on `m..=n_max`.
    pub m: Vec<usize>,
    pub stabilized: Vec<bool>,
}

impl LimitReport {
    /// The limit values `c_0, c_1, ...` up to the first unstable `k`.
    pub fn stable_prefix(&self) -> Vec<u64> {
        self.c.iter().zip(&self.stabilized).take_while(|(_, &s)| s).map(|(&c, _)| c).collect()
    }
}

/// Length from which `a(n,k)` is provably constant, when the basis contains
/// a pattern with at most one inversion. A pattern `id_a ⊕ 21 ⊕ id_b` gives
/// `k + a + b + max|q|`; an identity `id_m` forces zero from `k + m` on.
pub fn provable_threshold(basis: &PatternBasis, k: usize) -> Option<usize> {
    let max_len = basis.max_len();
    let mut best: Option<usize> = None;
    for p in basis.patterns() {
        let bound = match p.inv() {
            0 => k + p.len(),
            1 => k + p.len() - 2 + max_len,
            _ => continue,
        };
        best = Some(best.map_or(bound, |b| b.min(bound)));
    }
    if best.is_none() && k == 0 {
        return Some(1);
    }
    best
}

pub fn limit_report(t: &CountTable, tail_window: usize) -> LimitReport {
    let mut rep = LimitReport { c: Vec::new(), m: Vec::new(), stabilized: Vec::new() };
    for k in 0..=t.k_max {
        let top = t.get(t.n_max, k);
        let mut m = t.n_max;
        while m > 1 && t.get(m - 1, k) == top {
            m -= 1;
        }
        let tail_ok = t.n_max >= tail_window && t.n_max + 1 - m >= tail_window;
        let bound_ok = provable_threshold(&t.basis, k).is_some_and(|b| t.n_max >= b);
        rep.c.push(top);
        rep.m.push(m);
        rep.stabilized.push(tail_ok && bound_ok);
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalEntry {
    /// `k - n` along the diagonal.
    pub offset: i64,
    pub value: i64,
    /// First `n` from which the diagonal is constant.
    pub threshold: usize,
}

/// Stabilized diagonals `(n+i, k+i)` of a signed matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalLimit {
    pub entries: Vec<DiagonalEntry>,
}

impl DiagonalLimit {
    /// Values from the first nonzero diagonal onward, stopping at the first
    /// diagonal that did not stabilize.
    pub fn sequence(&self) -> Vec<i64> {
        let start = self.entries.iter().position(|e| e.value != 0);
        match start {
            None => Vec::new(),
            Some(s) => self.entries[s..].iter().map(|e| e.value).collect(),
        }
    }

    pub fn value_at(&self, offset: i64) -> Option<i64> {
        self.entries.iter().find(|e| e.offset == offset).map(|e| e.value)
    }
}

/// Scans diagonals by increasing offset `k - n` and keeps the contiguous run
/// of those constant over their last `tail_window` cells.
pub fn diagonal_limit(m: &SignedTable, tail_window: usize) -> DiagonalLimit {
    let mut entries = Vec::new();
    if m.is_empty() {
        return DiagonalLimit { entries };
    }
    let n_max = m.n_max();
    let lowest = -(n_max as i64);
    let mut started = false;
    for offset in lowest..=m.k_max as i64 {
        let cells: Vec<(usize, i64)> = (m.n_min..=n_max)
            .filter_map(|n| {
                let k = n as i64 + offset;
                if k < 0 || k > m.k_max as i64 {
                    return None;
                }
                m.get(n, k as usize).map(|v| (n, v))
            })
            .collect();
        if cells.len() < tail_window || tail_window == 0 {
            if started {
                break;
            }
            continue;
        }
        let last = cells[cells.len() - 1].1;
        let tail = &cells[cells.len() - tail_window..];
        if tail.iter().any(|&(_, v)| v != last) {
            if started {
                break;
            }
            continue;
        }
        let mut i = cells.len() - 1;
        while i > 0 && cells[i - 1].1 == last {
            i -= 1;
        }
        started = true;
        entries.push(DiagonalEntry { offset, value: last, threshold: cells[i].0 });
    }
    DiagonalLimit { entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symmetry {
    Identity,
    Inverse,
    ReverseComplement,
    /// `p ↦ (p^{-1})^{rc}`.
    InverseReverseComplement,
}

impl Symmetry {
    pub fn apply(self, p: &Permutation) -> Permutation {
        match self {
            Symmetry::Identity => p.clone(),
            Symmetry::Inverse => p.inverse(),
            Symmetry::ReverseComplement => p.reverse_complement(),
            Symmetry::InverseReverseComplement => p.inverse().reverse_complement(),
        }
    }
}

/// The twelve representatives of the pairs `{1324, p}`, `p ∈ S_4`, up to the
/// inversion-preserving symmetries fixing 1324.
pub const REPRESENTATIVES: [&str; 12] = [
    "1234", "1243", "1342", "1432", "2143", "2341", "2413", "2431", "3412", "3421", "4231", "4321",
];

/// The eleven representatives whose counting tables are tabulated.
pub const TABULATED: [&str; 11] =
    ["1243", "2143", "1342", "1432", "4231", "4321", "2341", "2413", "2431", "3412", "3421"];

/// Maps the second pattern of `{1324, p}` to its representative.
pub fn symmetry_representative(pair: &PatternBasis) -> Result<(PatternBasis, Symmetry)> {
    let p1324 = crate::perm::perm("1324");
    let others: Vec<&Permutation> = pair.patterns().iter().filter(|&q| *q != p1324).collect();
    if pair.len() != 2 || others.len() != 1 || others[0].len() != 4 {
        return Err(Error::Precondition(format!("expected {{1324, p}} with p in S_4, got {pair}")));
    }
    let p = others[0];
    let reps: Vec<Permutation> = REPRESENTATIVES.iter().map(|s| crate::perm::perm(s)).collect();
    for sym in [
        Symmetry::Identity,
        Symmetry::Inverse,
        Symmetry::ReverseComplement,
        Symmetry::InverseReverseComplement,
    ] {
        let q = sym.apply(p);
        if reps.contains(&q) {
            return Ok((PatternBasis::new([p1324, q])?, sym));
        }
    }
    Err(Error::Precondition(format!("{p} has no representative")))
}
