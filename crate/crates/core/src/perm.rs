//! Permutations in one-line notation, their statistics and symmetries, and
//! classical pattern containment.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation. The empty permutation is
/// a valid value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation, checking that `values` is a bijection on `1..=n`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{values:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    /// Standardizes a sequence of distinct integers to the order-isomorphic
    /// permutation.
    pub fn standardize(seq: &[usize]) -> Self {
        let mut idx: Vec<usize> = (0..seq.len()).collect();
        idx.sort_by_key(|&i| seq[i]);
        let mut values = vec![0; seq.len()];
        for (rank, &i) in idx.iter().enumerate() {
            values[i] = rank + 1;
        }
        Permutation { values }
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (1..=n).collect() }
    }

    /// The decreasing permutation `n (n-1) ... 1`.
    pub fn decreasing(n: usize) -> Self {
        Permutation { values: (1..=n).rev().collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn first(&self) -> Option<usize> {
        self.values.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.values.last().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn is_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] > w[1])
    }

    /// Number of pairs `i < j` with `p_i > p_j`.
    pub fn inv(&self) -> usize {
        let v = &self.values;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn lehmer_code(&self) -> LehmerCode {
        let v = &self.values;
        let entries = (0..v.len())
            .map(|i| v[i + 1..].iter().filter(|&&x| x < v[i]).count())
            .collect();
        LehmerCode { entries }
    }

    pub fn from_lehmer(code: &LehmerCode) -> Self {
        let n = code.entries.len();
        let mut pool: Vec<usize> = (1..=n).collect();
        let values = code.entries.iter().map(|&b| pool.remove(b)).collect();
        Permutation { values }
    }

    pub fn inverse(&self) -> Self {
        let mut values = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v - 1] = i + 1;
        }
        Permutation { values }
    }

    pub fn reverse(&self) -> Self {
        Permutation { values: self.values.iter().rev().copied().collect() }
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation { values: self.values.iter().map(|&v| n + 1 - v).collect() }
    }

    /// `p^rc_i = n + 1 - p_{n+1-i}`.
    pub fn reverse_complement(&self) -> Self {
        self.reverse().complement()
    }

    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let n = self.len();
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + n));
        Permutation { values }
    }

    pub fn skew_sum(&self, other: &Permutation) -> Self {
        let m = other.len();
        let mut values: Vec<usize> = self.values.iter().map(|&v| v + m).collect();
        values.extend_from_slice(&other.values);
        Permutation { values }
    }

    /// Lengths of the components, left to right.
    pub fn component_lengths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut max = 0;
        for (i, &v) in self.values.iter().enumerate() {
            max = max.max(v);
            if max == i + 1 {
                out.push(i + 1 - start);
                start = i + 1;
            }
        }
        out
    }

    /// The unique decomposition into indecomposable direct summands.
    pub fn components(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut start = 0;
        for len in self.component_lengths() {
            let values = self.values[start..start + len].iter().map(|&v| v - start).collect();
            out.push(Permutation { values });
            start += len;
        }
        out
    }

    pub fn comp(&self) -> usize {
        self.component_lengths().len()
    }

    /// At least two nonempty direct summands.
    pub fn is_decomposable(&self) -> bool {
        self.comp() >= 2
    }

    pub fn is_indecomposable(&self) -> bool {
        self.comp() == 1
    }

    /// Removes the entries with the given values and standardizes.
    pub fn delete(&self, removed: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut gone = vec![false; n + 1];
        for &v in removed {
            if v == 0 || v > n {
                return Err(Error::ValueOutOfRange { value: v, n });
            }
            gone[v] = true;
        }
        let kept: Vec<usize> = self.values.iter().copied().filter(|&v| !gone[v]).collect();
        Ok(Permutation::standardize(&kept))
    }

    /// Removes the single entry with value `v`.
    pub fn delete_value(&self, v: usize) -> Self {
        let values = self
            .values
            .iter()
            .filter(|&&x| x != v)
            .map(|&x| if x > v { x - 1 } else { x })
            .collect();
        Permutation { values }
    }

    /// Removes the entry at 0-based index `i`.
    pub fn delete_at(&self, i: usize) -> Self {
        self.delete_value(self.values[i])
    }

    /// Inserts a new entry with value `v` (in `1..=n+1`) before 0-based index
    /// `pos`; existing values `>= v` move up by one.
    pub fn insert(&self, pos: usize, v: usize) -> Self {
        assert!(pos <= self.len() && v >= 1 && v <= self.len() + 1);
        let mut values: Vec<usize> =
            self.values.iter().map(|&x| if x >= v { x + 1 } else { x }).collect();
        values.insert(pos, v);
        Permutation { values }
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        find_occurrence(&self.values, &pattern.values, false).is_some()
    }

    /// Indices (0-based) of some occurrence of `pattern`.
    pub fn occurrence(&self, pattern: &Permutation) -> Option<Vec<usize>> {
        find_occurrence(&self.values, &pattern.values, false)
    }

    /// Whether some occurrence of `pattern` uses the last entry.
    pub fn contains_ending_at(&self, pattern: &Permutation) -> bool {
        contains_ending_at(&self.values, &pattern.values)
    }

    pub fn avoids(&self, basis: &PatternBasis) -> bool {
        basis.patterns.iter().all(|q| !self.contains(q))
    }

    /// Text form: plain digits when `n <= 9`, comma separated otherwise.
    pub fn to_text(&self) -> String {
        if self.len() <= 9 {
            self.values.iter().map(|v| v.to_string()).collect()
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            parts.join(",")
        }
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some((1..=n).collect::<Vec<usize>>());
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut v = cur.clone();
            if next_permutation(&mut v) {
                next = Some(v);
            }
            Some(Permutation { values: cur })
        })
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Backtracking matcher. Pattern positions are filled left to right; each
/// candidate value must sit strictly between the values already chosen for
/// the nearest smaller and nearest larger pattern values.
fn find_occurrence(text: &[usize], pattern: &[usize], pin_last: bool) -> Option<Vec<usize>> {
    let m = pattern.len();
    let n = text.len();
    if m > n {
        return None;
    }
    if m == 0 {
        return Some(Vec::new());
    }
    if pin_last && m == 1 {
        return Some(vec![n - 1]);
    }
    let mut chosen = vec![usize::MAX; m];
    let limit = if pin_last { m - 1 } else { m };
    if pin_last {
        chosen[m - 1] = n - 1;
    }
    let text_end = if pin_last { n - 1 } else { n };

    fn bounds(text: &[usize], pattern: &[usize], chosen: &[usize], j: usize) -> (usize, usize) {
        let r = pattern[j];
        let mut lo = 0;
        let mut hi = usize::MAX;
        for (t, &c) in chosen.iter().enumerate() {
            if c == usize::MAX || t == j {
                continue;
            }
            let v = text[c];
            if pattern[t] < r {
                lo = lo.max(v);
            } else {
                hi = hi.min(v);
            }
        }
        (lo, hi)
    }

    fn go(
        text: &[usize],
        pattern: &[usize],
        chosen: &mut Vec<usize>,
        j: usize,
        start: usize,
        limit: usize,
        text_end: usize,
    ) -> bool {
        if j == limit {
            return true;
        }
        let (lo, hi) = bounds(text, pattern, chosen, j);
        let last_start = text_end - (limit - j);
        for i in start..=last_start {
            let v = text[i];
            if v > lo && v < hi {
                chosen[j] = i;
                if go(text, pattern, chosen, j + 1, i + 1, limit, text_end) {
                    return true;
                }
                chosen[j] = usize::MAX;
            }
        }
        false
    }

    if go(text, pattern, &mut chosen, 0, 0, limit, text_end) {
        Some(chosen)
    } else {
        None
    }
}

/// Slice form of [`Permutation::contains_ending_at`]; `text` may be any
/// sequence of distinct values.
pub fn contains_ending_at(text: &[usize], pattern: &[usize]) -> bool {
    find_occurrence(text, pattern, true).is_some()
}

/// Slice form of [`Permutation::contains`].
pub fn contains_slice(text: &[usize], pattern: &[usize]) -> bool {
    find_occurrence(text, pattern, false).is_some()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "e" {
            return Ok(Permutation::empty());
        }
        let values: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse::<usize>().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        let values = values.ok_or_else(|| Error::Parse(s.to_string()))?;
        Permutation::new(values)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.values
    }
}

/// Inversion table `(b_1, ..., b_n)`, `b_i` = number of later smaller entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LehmerCode {
    entries: Vec<usize>,
}

impl LehmerCode {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        for (i, &b) in entries.iter().enumerate() {
            if b > n - 1 - i {
                return Err(Error::InvalidLehmer { position: i + 1, entry: b });
            }
        }
        Ok(LehmerCode { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn sum(&self) -> usize {
        self.entries.iter().sum()
    }
}

/// A nonempty set of patterns, deduplicated and kept in sorted order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PatternBasis {
    patterns: Vec<Permutation>,
}

impl PatternBasis {
    pub fn new(patterns: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let mut patterns: Vec<Permutation> = patterns.into_iter().collect();
        if patterns.is_empty() {
            return Err(Error::EmptyBasis);
        }
        if patterns.iter().any(|p| p.is_empty()) {
            return Err(Error::Parse("empty pattern in basis".into()));
        }
        patterns.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        patterns.dedup();
        Ok(PatternBasis { patterns })
    }

    /// Parses a comma separated list such as `1324,1342`. Patterns longer
    /// than nine are written with commas and separated by `;`.
    pub fn parse(s: &str) -> Result<Self> {
        let semi = s.contains(';');
        let pats: Result<Vec<Permutation>> = s
            .split(|c: char| if semi { c == ';' } else { c == ',' || c == ' ' })
            .filter(|t| !t.is_empty())
            .map(|t| t.parse())
            .collect();
        PatternBasis::new(pats?)
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.patterns.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn map(&self, f: impl Fn(&Permutation) -> Permutation) -> Self {
        PatternBasis::new(self.patterns.iter().map(f)).expect("nonempty")
    }

    /// Identifier used in file names, e.g. `1324_1342`.
    pub fn id(&self) -> String {
        let parts: Vec<String> = self.patterns.iter().map(|p| p.to_text().replace(',', "-")).collect();
        parts.join("_")
    }
}

impl fmt::Display for PatternBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.patterns.iter().map(|p| p.to_text()).collect();
        if self.patterns.iter().any(|p| p.len() > 9) {
            write!(f, "{}", parts.join(";"))
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for PatternBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternBasis({self})")
    }
}

impl TryFrom<String> for PatternBasis {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        PatternBasis::parse(&s)
    }
}

impl From<PatternBasis> for String {
    fn from(b: PatternBasis) -> String {
        b.to_string()
    }
}

impl FromStr for PatternBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PatternBasis::parse(s)
    }
}

/// Shorthand for tests and examples: `perm("34152")`.
pub fn perm(s: &str) -> Permutation {
    s.parse().unwrap_or_else(|e| panic!("bad permutation {s:?}: {e}"))
}

/// Shorthand: `basis("1324,1342")`.
pub fn basis(s: &str) -> PatternBasis {
    PatternBasis::parse(s).unwrap_or_else(|e| panic!("bad basis {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statistics() {
        assert_eq!(perm("1").inv(), 0);
        assert_eq!(perm("21453").inv(), 3);
        assert_eq!(perm("1324").inv(), 1);
        assert_eq!(perm("21").lehmer_code().entries(), &[1, 0]);
        let c = LehmerCode::new(vec![2, 1, 0]).unwrap();
        assert_eq!(Permutation::from_lehmer(&c), perm("321"));
        assert!(LehmerCode::new(vec![0, 2, 0]).is_err());
    }

    #[test]
    fn symmetries() {
        assert_eq!(perm("1324").reverse_complement(), perm("1324"));
        assert_eq!(perm("231").inverse(), perm("312"));
        assert_eq!(Permutation::identity(4).complement(), Permutation::decreasing(4));
        let p = perm("34152");
        assert_eq!(p.reverse().complement(), p.complement().reverse());
    }

    #[test]
    fn sums_and_components() {
        let s = perm("21");
        let t = perm("231");
        assert_eq!(s.direct_sum(&t), perm("21453"));
        assert_eq!(s.skew_sum(&t), perm("54231"));
        assert_eq!(Permutation::empty().direct_sum(&t), t);
        assert_eq!(perm("21453").components(), vec![perm("21"), perm("231")]);
        assert_eq!(Permutation::identity(3).components().len(), 3);
        assert_eq!(perm("3142").components(), vec![perm("3142")]);
        assert!(Permutation::empty().components().is_empty());
    }

    #[test]
    fn deletion() {
        let p = perm("34152");
        assert_eq!(p.delete(&[5]).unwrap(), perm("3412"));
        assert_eq!(p.delete(&[]).unwrap(), p);
        assert_eq!(p.delete(&[1, 2, 3, 4, 5]).unwrap(), Permutation::empty());
        assert!(p.delete(&[6]).is_err());
    }

    #[test]
    fn containment() {
        assert!(perm("241563").contains(&perm("1342")));
        assert!(!perm("34152").contains(&perm("1324")));
        assert!(perm("132").contains_ending_at(&perm("132")));
        assert!(!perm("132").contains_ending_at(&perm("1324")));
        assert!(perm("31524").contains_ending_at(&perm("132")));
        assert!(!perm("31245").contains_ending_at(&perm("132")));
    }

    #[test]
    fn text_forms() {
        let p: Permutation = "12,11,10,9,8,5,3,1,2,4,7,6".parse().unwrap();
        assert_eq!(p.len(), 12);
        assert_eq!(p.to_text(), "12,11,10,9,8,5,3,1,2,4,7,6");
        assert_eq!(perm("34152").to_text(), "34152");
        assert!("1224".parse::<Permutation>().is_err());
        assert!("1a".parse::<Permutation>().is_err());
        assert_eq!(basis("1342,1324,1324").len(), 2);
    }

    #[test]
    fn all_is_lexicographic() {
        let v: Vec<Permutation> = Permutation::all(3).collect();
        let texts: Vec<String> = v.iter().map(|p| p.to_text()).collect();
        assert_eq!(texts, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(Permutation::all(0).count(), 1);
    }
}
