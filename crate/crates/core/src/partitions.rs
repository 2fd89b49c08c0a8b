//! Integer partitions, the Λ map from indecomposable 132-avoiders, and the
//! partition families that describe `I_k(132, p)`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::enumerate::generate_exact;
use crate::error::{Error, Result};
use crate::perm::{PatternBasis, Permutation};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ_i` (1-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// `(value, multiplicity)` from largest to smallest.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `k` in reverse-lexicographic order.
pub fn partitions_of(k: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Lehmer code with trailing zeros removed.
pub fn lambda(p: &Permutation) -> Result<Partition> {
    if p.contains(&crate::perm::perm("132")) {
        return Err(Error::Precondition(format!("{p} contains 132")));
    }
    if p.len() > 1 && !p.is_indecomposable() {
        return Err(Error::Precondition(format!("{p} is decomposable")));
    }
    let mut parts = p.lehmer_code().entries().to_vec();
    while parts.last() == Some(&0) {
        parts.pop();
    }
    Partition::new(parts)
}

/// `π_i` is the least unused value exceeding `λ_i` (zero past the end),
/// continued until the prefix is a permutation of `1..=i`.
pub fn lambda_inverse(l: &Partition) -> Permutation {
    let mut used = vec![false; l.size() + l.len() + 3];
    let mut values = Vec::new();
    let mut max = 0;
    for i in 1.. {
        let mut v = l.part(i) + 1;
        while used[v] {
            v += 1;
        }
        used[v] = true;
        values.push(v);
        max = max.max(v);
        if i >= l.len() && max == i {
            break;
        }
    }
    Permutation::standardize(&values)
}

/// No three equal parts, and between two repeated parts some drop of two.
pub fn is_spm(l: &Partition) -> bool {
    let mut last_pair: Option<usize> = None;
    let mut big_drop_since = false;
    for i in 1..=l.len() {
        let (a, b) = (l.part(i), l.part(i + 1));
        if a == b {
            if l.part(i + 2) == a {
                return false;
            }
            if last_pair.is_some() && !big_drop_since {
                return false;
            }
            last_pair = Some(i);
            big_drop_since = false;
        } else if a >= b + 2 {
            big_drop_since = true;
        }
    }
    true
}

/// Closure of `(k)` under moving one grain from a part to the next one
/// whenever the first exceeds the second by at least two.
pub fn spm_generate(k: usize) -> BTreeSet<Partition> {
    let start = if k == 0 { Partition::empty() } else { Partition { parts: vec![k] } };
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut stack = vec![start];
    while let Some(l) = stack.pop() {
        for i in 1..=l.len() {
            if l.part(i) >= l.part(i + 1) + 2 {
                let mut parts = l.parts.clone();
                parts[i - 1] -= 1;
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                let next = Partition { parts };
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

pub fn is_steep(l: &Partition) -> bool {
    l.multiplicities().windows(2).all(|w| w[0].0 - w[1].0 >= w[1].1)
}

/// No `i < j` with `λ_i = λ_{i+1}` and `λ_j - λ_{j+1} >= 2`.
pub fn is_convex_penny(l: &Partition) -> bool {
    let mut seen_equal = false;
    for i in 1..=l.len() {
        let (a, b) = (l.part(i), l.part(i + 1));
        if a >= b + 2 && seen_equal {
            return false;
        }
        if a == b {
            seen_equal = true;
        }
    }
    true
}

pub fn is_distinct_except_smallest(l: &Partition) -> bool {
    let m = l.multiplicities();
    m.iter().rev().skip(1).all(|&(_, c)| c == 1)
}

/// After any drop of at least two, the remaining parts are distinct.
pub fn is_convex_4231(l: &Partition) -> bool {
    let mut strict = false;
    for i in 1..=l.len() {
        let (a, b) = (l.part(i), l.part(i + 1));
        if strict && b > 0 && a == b {
            return false;
        }
        if a >= b + 2 {
            strict = true;
        }
    }
    true
}

pub fn distinct_part_count(l: &Partition) -> usize {
    l.multiplicities().len()
}

pub fn is_distinct(l: &Partition) -> bool {
    l.parts.windows(2).all(|w| w[0] > w[1])
}

/// A partition in which the first occurrence of each part value may be
/// overlined. Parts are stored largest first, with an overlined part ahead of
/// its plain copies.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Overpartition {
    parts: Vec<(usize, bool)>,
}

impl Overpartition {
    pub fn new(mut parts: Vec<(usize, bool)>) -> Result<Self> {
        parts.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
        let bad = parts.iter().any(|&(v, _)| v == 0)
            || parts.windows(2).any(|w| w[0].0 == w[1].0 && w[1].1);
        if bad {
            return Err(Error::InvalidPartition(parts.iter().map(|p| p.0).collect()));
        }
        Ok(Overpartition { parts })
    }

    pub fn parts(&self) -> &[(usize, bool)] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|p| p.0).sum()
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .parts
            .iter()
            .map(|&(v, o)| if o { format!("{v}\u{305}") } else { v.to_string() })
            .collect();
        write!(f, "({})", s.join(","))
    }
}

/// Overlines every part of the distinct-parts partition `mu` and merges it
/// into `l`.
pub fn overpartition_merge(l: &Partition, mu: &Partition) -> Result<Overpartition> {
    if !is_distinct(mu) {
        return Err(Error::InvalidPartition(mu.parts.clone()));
    }
    let parts = l.parts.iter().map(|&v| (v, false)).chain(mu.parts.iter().map(|&v| (v, true))).collect();
    Overpartition::new(parts)
}

pub fn overpartition_split(o: &Overpartition) -> (Partition, Partition) {
    let plain = o.parts.iter().filter(|p| !p.1).map(|p| p.0).collect();
    let over = o.parts.iter().filter(|p| p.1).map(|p| p.0).collect();
    (Partition { parts: plain }, Partition { parts: over })
}

/// All overpartitions of `k`.
pub fn overpartitions_of(k: usize) -> Vec<Overpartition> {
    let mut out = Vec::new();
    for j in 0..=k {
        let distinct: Vec<Partition> = partitions_of(j).into_iter().filter(is_distinct).collect();
        for l in partitions_of(k - j) {
            for mu in &distinct {
                out.push(overpartition_merge(&l, mu).expect("distinct parts"));
            }
        }
    }
    out
}

/// A partition family matched with the pattern `p` of `I_k(132, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// 2341
    SandPile,
    /// 3241
    Steep,
    /// 3412
    ConvexPenny,
    /// 3421
    DistinctExceptSmallest,
    /// 4231
    Convex4231,
    /// Decreasing pattern of length `m`: at most `m-2` distinct parts.
    FewDistinct(usize),
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::SandPile,
        Family::Steep,
        Family::ConvexPenny,
        Family::DistinctExceptSmallest,
        Family::Convex4231,
        Family::FewDistinct(4),
    ];

    pub fn pattern(self) -> Permutation {
        match self {
            Family::SandPile => crate::perm::perm("2341"),
            Family::Steep => crate::perm::perm("3241"),
            Family::ConvexPenny => crate::perm::perm("3412"),
            Family::DistinctExceptSmallest => crate::perm::perm("3421"),
            Family::Convex4231 => crate::perm::perm("4231"),
            Family::FewDistinct(m) => Permutation::decreasing(m),
        }
    }

    pub fn test(self, l: &Partition) -> bool {
        match self {
            Family::SandPile => is_spm(l),
            Family::Steep => is_steep(l),
            Family::ConvexPenny => is_convex_penny(l),
            Family::DistinctExceptSmallest => is_distinct_except_smallest(l),
            Family::Convex4231 => is_convex_4231(l),
            Family::FewDistinct(m) => distinct_part_count(l) + 2 <= m,
        }
    }

    pub fn name(self) -> String {
        match self {
            Family::SandPile => "spm".into(),
            Family::Steep => "steep".into(),
            Family::ConvexPenny => "convex-penny".into(),
            Family::DistinctExceptSmallest => "distinct-except-smallest".into(),
            Family::Convex4231 => "convex-4231".into(),
            Family::FewDistinct(m) => format!("at-most-{}-distinct", m.saturating_sub(2)),
        }
    }

    pub fn from_pattern(p: &Permutation) -> Option<Family> {
        if p.is_decreasing() && p.len() >= 2 {
            return Some(Family::FewDistinct(p.len()));
        }
        Family::ALL.into_iter().find(|f| f.pattern() == *p)
    }

    pub fn count(self, k: usize) -> usize {
        partitions_of(k).iter().filter(|l| self.test(l)).count()
    }
}

/// Indecomposable permutations avoiding `basis` with `k` inversions.
pub fn indecomposable_avoiders(basis: &PatternBasis, k: usize) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for n in 1..=k + 1 {
        out.extend(generate_exact(basis, n, k)?.into_iter().filter(|p| p.is_indecomposable()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyLevel {
    pub k: usize,
    pub count: usize,
    /// In `Λ(I_k(132,p))` but failing the test.
    pub only_perm: Vec<Partition>,
    /// Passing the test but not an image.
    pub only_family: Vec<Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub pattern: Permutation,
    pub family: String,
    pub levels: Vec<FamilyLevel>,
}

impl FamilyReport {
    pub fn ok(&self) -> bool {
        self.levels.iter().all(|l| l.only_perm.is_empty() && l.only_family.is_empty())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.count).collect()
    }
}

/// Compares `Λ(I_k(132, p))` with the partitions of `k` passing `test`.
pub fn verify_family(p: &Permutation, test: impl Fn(&Partition) -> bool, family: &str, k_max: usize) -> Result<FamilyReport> {
    let b = PatternBasis::new([crate::perm::perm("132"), p.clone()])?;
    let mut levels = Vec::new();
    for k in 0..=k_max {
        let images: BTreeSet<Partition> =
            indecomposable_avoiders(&b, k)?.iter().map(lambda).collect::<Result<_>>()?;
        let wanted: BTreeSet<Partition> = partitions_of(k).into_iter().filter(|l| test(l)).collect();
        levels.push(FamilyLevel {
            k,
            count: images.len(),
            only_perm: images.difference(&wanted).cloned().collect(),
            only_family: wanted.difference(&images).cloned().collect(),
        });
    }
    Ok(FamilyReport { pattern: p.clone(), family: family.to_string(), levels })
}

pub fn verify_named_family(f: Family, k_max: usize) -> Result<FamilyReport> {
    verify_family(&f.pattern(), |l| f.test(l), &f.name(), k_max)
}

/// `π ↦ (π⁻¹)^{rc}`, carrying `{213, 2431}` to `{132, 3241}`.
pub fn transfer_213_2431(p: &Permutation) -> Permutation {
    p.inverse().reverse_complement()
}

/// Checks that the transfer maps `Av_n^k(213,2431)` onto `Av_n^k(132,3241)`
/// for all `n <= n_max` and `k <= k_max`, preserving indecomposability.
pub fn verify_transfer(n_max: usize, k_max: usize) -> Result<bool> {
    let from = crate::perm::basis("213,2431");
    let to = crate::perm::basis("132,3241");
    for n in 1..=n_max {
        for k in 0..=k_max {
            let a: BTreeSet<Permutation> = generate_exact(&from, n, k)?.iter().map(transfer_213_2431).collect();
            let b: BTreeSet<Permutation> = generate_exact(&to, n, k)?.into_iter().collect();
            if a != b {
                return Ok(false);
            }
        }
    }
    let sample = generate_exact(&from, n_max, k_max.min(n_max))?;
    Ok(sample.iter().all(|p| p.is_indecomposable() == transfer_213_2431(p).is_indecomposable()))
}
