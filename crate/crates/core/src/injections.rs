//! Inversion-preserving, length-increasing injections.
//!
//! * single-point insertion and deletion on indecomposable
//!   `{213,231}`-avoiders;
//! * the injection `Av_n^k(1324,231) -> Av_{n+1}^k(1324,231)` and its inverse;
//! * one-entry basis extensions and the injections they inherit;
//! * a generic checker for the three injection properties.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{PatternBasis, Permutation};

fn basis_213_231() -> PatternBasis {
    crate::perm::basis("213,231")
}

fn basis_1324_231() -> PatternBasis {
    crate::perm::basis("1324,231")
}

/// Split of an indecomposable `{213,231}`-avoider into entries above the
/// last entry (the decreasing upper arm) and the rest (the increasing lower
/// arm, which holds the last entry).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArmProfile {
    pub upper: usize,
    pub lower: usize,
}

impl ArmProfile {
    pub fn of(p: &Permutation) -> Result<Self> {
        if p.is_empty() || !p.is_indecomposable() || !p.avoids(&basis_213_231()) {
            return Err(Error::Precondition(format!("{p} is not an indecomposable {{213,231}}-avoider")));
        }
        let last = p.last().unwrap_or(0);
        Ok(ArmProfile { upper: p.len() - last, lower: last })
    }
}

/// Adds one point to `p` so that exactly `r` inversions appear, `0 <= r <= |p|`.
pub fn lemma_insert(p: &Permutation, r: usize) -> Result<Permutation> {
    let arms = ArmProfile::of(p)?;
    let n = p.len();
    if r > n {
        return Err(Error::Precondition(format!("r = {r} exceeds |p| = {n}")));
    }
    let last = arms.lower;
    let v = p.values();
    if r <= arms.upper {
        // lower arm, right after the r-th upper point
        let pos = if r == 0 {
            0
        } else {
            let mut seen = 0;
            let mut at = 0;
            for (i, &x) in v.iter().enumerate() {
                if x > last {
                    seen += 1;
                    if seen == r {
                        at = i + 1;
                        break;
                    }
                }
            }
            at
        };
        let value = v[..pos].iter().filter(|&&x| x <= last).count() + 1;
        Ok(p.insert(pos, value))
    } else {
        // upper arm, with r - a lower points after it
        let after = r - arms.upper;
        let before = arms.lower - after;
        let pos = if before == 0 {
            0
        } else {
            let mut seen = 0;
            let mut at = 0;
            for (i, &x) in v.iter().enumerate() {
                if x <= last {
                    seen += 1;
                    if seen == before {
                        at = i + 1;
                        break;
                    }
                }
            }
            at
        };
        let value = arms.lower + v[pos..].iter().filter(|&&x| x > last).count() + 1;
        Ok(p.insert(pos, value))
    }
}

/// Removes one point of `p` so that exactly `r` inversions disappear,
/// `1 <= r <= |p| - 1`.
pub fn lemma_delete(p: &Permutation, r: usize) -> Result<Permutation> {
    ArmProfile::of(p)?;
    let n = p.len();
    if r == 0 || r >= n {
        return Err(Error::Precondition(format!("r = {r} outside 1..{}", n.saturating_sub(1))));
    }
    let Some(target) = p.inv().checked_sub(r) else {
        return Err(Error::Precondition(format!("{p} has fewer than {r} inversions")));
    };
    let mut found: Option<Permutation> = None;
    for i in 0..n {
        let t = p.delete_at(i);
        if t.inv() == target {
            match &found {
                Some(prev) if *prev != t => {
                    return Err(Error::Precondition(format!("two deletions of {p} remove {r} inversions")))
                }
                _ => found = Some(t),
            }
        }
    }
    found.ok_or_else(|| Error::Precondition(format!("no deletion of {p} removes {r} inversions")))
}

/// Moves the entry with value `e` down `m` steps, one adjacent value swap at
/// a time: `e -> e-m`, and values `e-m..e-1` move up by one.
pub fn shift_down(p: &Permutation, e: usize, m: usize) -> Result<Permutation> {
    if e == 0 || e > p.len() || m >= e {
        return Err(Error::Precondition(format!("cannot shift {e} down {m} in {p}")));
    }
    let values = p
        .values()
        .iter()
        .map(|&x| {
            if x == e {
                e - m
            } else if x >= e - m && x < e {
                x + 1
            } else {
                x
            }
        })
        .collect();
    Ok(Permutation::from_vec_unchecked(values))
}

/// Inverse of [`shift_down`]: `e -> e+m`, values `e+1..e+m` move down.
pub fn shift_up(p: &Permutation, e: usize, m: usize) -> Result<Permutation> {
    if e == 0 || e + m > p.len() {
        return Err(Error::Precondition(format!("cannot shift {e} up {m} in {p}")));
    }
    let values = p
        .values()
        .iter()
        .map(|&x| {
            if x == e {
                e + m
            } else if x > e && x <= e + m {
                x - 1
            } else {
                x
            }
        })
        .collect();
    Ok(Permutation::from_vec_unchecked(values))
}

/// Shifts the entries at the given 0-based positions down `m` steps each,
/// smallest value first.
pub fn shift_entries_down(p: &Permutation, positions: &[usize], m: usize) -> Result<Permutation> {
    let mut order: Vec<usize> = positions.to_vec();
    order.sort_by_key(|&i| p.values()[i]);
    let mut cur = p.clone();
    for i in order {
        cur = shift_down(&cur, cur.values()[i], m)?;
    }
    Ok(cur)
}

/// Shifts the entries at the given positions up `m` steps each, largest
/// value first.
pub fn shift_entries_up(p: &Permutation, positions: &[usize], m: usize) -> Result<Permutation> {
    let mut order: Vec<usize> = positions.to_vec();
    order.sort_by_key(|&i| std::cmp::Reverse(p.values()[i]));
    let mut cur = p.clone();
    for i in order {
        cur = shift_up(&cur, cur.values()[i], m)?;
    }
    Ok(cur)
}

/// Parameters of the third branch: `l = q(m+1) - r` with `q > 0`, `0 <= r <= m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch3Data {
    pub l: usize,
    pub m: usize,
    pub q: usize,
    pub r: usize,
}

impl Branch3Data {
    pub fn new(l: usize, m: usize) -> Self {
        let q = l.div_ceil(m + 1);
        Branch3Data { l, m, q, r: q * (m + 1) - l }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Empty,
    /// `id_n^rev ↦ id_n^rev ⊕ 1`.
    Decreasing,
    /// `π1 ⊕ C ↦ π1 ⊕ 1 ⊕ C`, `C` the last component.
    Decomposable,
    Indecomposable(Branch3Data),
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Empty => write!(f, "branch=empty"),
            Branch::Decreasing => write!(f, "branch=1"),
            Branch::Decomposable => write!(f, "branch=2"),
            Branch::Indecomposable(d) => write!(f, "branch=3 l={} m={} q={} r={}", d.l, d.m, d.q, d.r),
        }
    }
}

/// The injection on `Av(1324,231)`, with the branch taken.
pub fn inject_1324_231(p: &Permutation) -> Result<(Permutation, Branch)> {
    if !p.avoids(&basis_1324_231()) {
        return Err(Error::Precondition(format!("{p} does not avoid {{1324,231}}")));
    }
    let n = p.len();
    if n == 0 {
        return Ok((Permutation::identity(1), Branch::Empty));
    }
    if p.is_decreasing() {
        return Ok((p.direct_sum(&Permutation::identity(1)), Branch::Decreasing));
    }
    let comps = p.components();
    if comps.len() >= 2 {
        let (last, init) = comps.split_last().expect("two components");
        let mut img = Permutation::empty();
        for c in init {
            img = img.direct_sum(c);
        }
        let img = img.direct_sum(&Permutation::identity(1)).direct_sum(last);
        return Ok((img, Branch::Decomposable));
    }
    let v = p.values();
    let l = (0..n).take_while(|&i| v[i] == n - i).count();
    let rest = Permutation::from_vec_unchecked(v[l..].to_vec());
    let rest_comps = rest.components();
    debug_assert!(rest_comps.len() >= 2, "indecomposable branch with indecomposable tail: {p}");
    let (last, init) = rest_comps.split_last().expect("nonempty tail");
    let data = Branch3Data::new(l, last.len());
    let grown = lemma_insert(last, data.r)?;
    let mut tail = Permutation::empty();
    for c in init {
        tail = tail.direct_sum(c);
    }
    let tail = tail.direct_sum(&grown);
    let mut values: Vec<usize> = (0..l).map(|i| n + 1 - i).collect();
    values.extend_from_slice(tail.values());
    let sigma = Permutation::from_vec_unchecked(values);
    let positions: Vec<usize> = (l - data.q..l).collect();
    let img = shift_entries_down(&sigma, &positions, data.m + 1)?;
    Ok((img, Branch::Indecomposable(data)))
}

/// Recovers the preimage under [`inject_1324_231`] of any image.
pub fn inject_1324_231_inverse(s: &Permutation) -> Result<Permutation> {
    let none = || Error::Precondition(format!("{s} is not in the image"));
    let check = |p: Permutation| -> Result<Permutation> {
        if p.avoids(&basis_1324_231()) && inject_1324_231(&p)?.0 == *s {
            Ok(p)
        } else {
            Err(none())
        }
    };
    let big = s.len();
    if big == 0 {
        return Err(none());
    }
    if big == 1 {
        return check(Permutation::empty());
    }
    let comps = s.components();
    if comps.len() == 2 && comps[1].len() == 1 && comps[0].is_decreasing() {
        return check(comps[0].clone());
    }
    if comps.len() >= 3 {
        let c = comps.len();
        if comps[c - 2].len() != 1 {
            return Err(none());
        }
        let mut p = Permutation::empty();
        for (i, x) in comps.iter().enumerate() {
            if i != c - 2 {
                p = p.direct_sum(x);
            }
        }
        return check(p);
    }
    let v = s.values();
    let l0 = (0..big)
        .find(|&j| Permutation::standardize(&v[j..]).is_decomposable())
        .ok_or_else(none)?;
    let m1 = big.checked_sub(v[l0] + l0).filter(|&x| x >= 2).ok_or_else(none)?;
    let eligible = (0..big - l0).take_while(|&i| v[l0 + i] + i == v[l0]).count();
    let k = s.inv();
    let mut found: Option<Permutation> = None;
    for q in 1..=eligible {
        let positions: Vec<usize> = (l0..l0 + q).collect();
        let Ok(up) = shift_entries_up(s, &positions, m1) else { continue };
        if !up.inv().checked_sub(k + l0 + q).is_some_and(|r| r < m1) {
            continue;
        }
        for e in big - m1..big {
            let cand = up.delete_at(e);
            if let Ok(p) = check(cand) {
                if found.as_ref().is_some_and(|f| *f != p) {
                    return Err(Error::Precondition(format!("{s} has two preimages")));
                }
                found = Some(p);
            }
        }
    }
    found.ok_or_else(none)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Left,
    Right,
    Up,
    Down,
}

/// All one-entry extensions: a new first entry (`Left`), last entry
/// (`Right`), maximum (`Up`) or minimum (`Down`).
pub fn basis_extend(b: &PatternBasis, dir: Direction) -> PatternBasis {
    let mut out = Vec::new();
    for p in b.patterns() {
        let m = p.len();
        for i in 0..=m {
            out.push(match dir {
                Direction::Left => p.insert(0, i + 1),
                Direction::Right => p.insert(m, i + 1),
                Direction::Up => p.insert(i, m + 1),
                Direction::Down => p.insert(i, 1),
            });
        }
    }
    PatternBasis::new(out).expect("nonempty")
}

pub type Injection<'a> = Box<dyn Fn(&Permutation) -> Permutation + Send + Sync + 'a>;

fn keep_first<'a>(f: Injection<'a>) -> Injection<'a> {
    Box::new(move |p: &Permutation| {
        let Some(first) = p.first() else {
            return Permutation::identity(1);
        };
        let rest = f(&p.delete_at(0));
        rest.insert(0, first)
    })
}

/// The injection on `Av(B^dir)` inherited from an injection `f` on `Av(B)`.
/// For `Left`, `g(π)_1 = π_1` and `g(π) ∖ π_1 = f(π ∖ π_1)`; the other
/// directions are conjugates by reverse-complement and inverse.
pub fn induced_injection<'a>(f: Injection<'a>, dir: Direction) -> Injection<'a> {
    let rc = |p: &Permutation| p.reverse_complement();
    let inv = |p: &Permutation| p.inverse();
    match dir {
        Direction::Left => keep_first(f),
        Direction::Right => {
            let g = keep_first(Box::new(move |p: &Permutation| rc(&f(&rc(p)))));
            Box::new(move |p: &Permutation| rc(&g(&rc(p))))
        }
        Direction::Down => {
            let g = keep_first(Box::new(move |p: &Permutation| inv(&f(&inv(p)))));
            Box::new(move |p: &Permutation| inv(&g(&inv(p))))
        }
        Direction::Up => {
            let g = induced_injection(Box::new(move |p: &Permutation| inv(&f(&inv(p)))), Direction::Right);
            Box::new(move |p: &Permutation| inv(&g(&inv(p))))
        }
    }
}

/// `π ↦ π ⊕ 1`, valid when no pattern ends with its maximum.
pub fn append_max(p: &Permutation) -> Permutation {
    p.direct_sum(&Permutation::identity(1))
}

/// `π ↦ 1 ⊕ π`, valid when no pattern starts with 1.
pub fn prepend_min(p: &Permutation) -> Permutation {
    Permutation::identity(1).direct_sum(p)
}

/// One of the two trivial injections if the basis allows it.
pub fn trivial_injection(b: &PatternBasis) -> Option<Injection<'static>> {
    let pats = b.patterns();
    if pats.iter().all(|p| p.last() != Some(p.len())) {
        Some(Box::new(append_max))
    } else if pats.iter().all(|p| p.first() != Some(1)) {
        Some(Box::new(prepend_min))
    } else {
        None
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectionReport {
    pub checked: usize,
    /// Inputs whose image has the wrong length, inversion number, or
    /// contains a pattern of the target basis.
    pub failures: Vec<(Permutation, Permutation, String)>,
    /// Pairs of distinct inputs with the same image.
    pub collisions: Vec<(Permutation, Permutation)>,
}

impl InjectionReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.collisions.is_empty()
    }
}

/// Checks length+1, inversion preservation, avoidance of `target`, and
/// injectivity of `map` over `domain`.
pub fn verify_injection<F>(domain: &[Permutation], target: &PatternBasis, map: F) -> InjectionReport
where
    F: Fn(&Permutation) -> Permutation + Sync,
{
    let images: Vec<(Permutation, Option<String>)> = domain
        .par_iter()
        .map(|p| {
            let s = map(p);
            let problem = if s.len() != p.len() + 1 {
                Some("length".to_string())
            } else if s.inv() != p.inv() {
                Some("inversions".to_string())
            } else if !s.avoids(target) {
                Some("avoidance".to_string())
            } else {
                None
            };
            (s, problem)
        })
        .collect();
    let mut report = InjectionReport { checked: domain.len(), ..Default::default() };
    let mut seen: HashMap<&Permutation, &Permutation> = HashMap::new();
    for (p, (s, problem)) in domain.iter().zip(&images) {
        if let Some(why) = problem {
            report.failures.push((p.clone(), s.clone(), why.clone()));
        }
        if let Some(prev) = seen.insert(s, p) {
            if prev != p {
                report.collisions.push((prev.clone(), p.clone()));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{basis, perm};

    #[test]
    fn insert_small() {
        assert_eq!(lemma_insert(&perm("1"), 0).unwrap(), perm("12"));
        assert_eq!(lemma_insert(&perm("1"), 1).unwrap(), perm("21"));
        assert_eq!(lemma_insert(&perm("312"), 1).unwrap(), perm("4123"));
        assert!(lemma_insert(&perm("12"), 0).is_err());
        assert!(lemma_insert(&perm("21"), 3).is_err());
    }

    #[test]
    fn delete_small() {
        assert_eq!(lemma_delete(&perm("21"), 1).unwrap(), perm("1"));
        assert_eq!(lemma_delete(&perm("312"), 2).unwrap(), perm("12"));
    }

    #[test]
    fn shifts() {
        assert_eq!(shift_down(&perm("231"), 3, 1).unwrap(), perm("321"));
        assert_eq!(shift_down(&perm("231"), 3, 0).unwrap(), perm("231"));
        assert_eq!(shift_up(&perm("321"), 2, 1).unwrap(), perm("231"));
    }

    #[test]
    fn worked_example() {
        let p = perm("12,11,10,9,8,5,3,1,2,4,7,6");
        assert_eq!(p.inv(), 52);
        let (s, br) = inject_1324_231(&p).unwrap();
        assert_eq!(s, perm("13,12,11,7,6,5,3,1,2,4,10,8,9"));
        assert_eq!(br, Branch::Indecomposable(Branch3Data { l: 5, m: 2, q: 2, r: 1 }));
        assert_eq!(s.inv(), 52);
        assert_eq!(inject_1324_231_inverse(&s).unwrap(), p);
    }

    #[test]
    fn first_branches() {
        assert_eq!(inject_1324_231(&perm("321")).unwrap().0, perm("3214"));
        assert_eq!(inject_1324_231(&perm("2134")).unwrap().0, perm("21345"));
        assert_eq!(inject_1324_231(&Permutation::empty()).unwrap().0, perm("1"));
    }

    #[test]
    fn extensions() {
        assert_eq!(basis_extend(&basis("213"), Direction::Left), basis("1324,2314,3214,4213"));
        assert_eq!(basis_extend(&basis("213"), Direction::Right), basis("3241,3142,2143,2134"));
        assert_eq!(basis_extend(&basis("213"), Direction::Up), basis("4213,2413,2143,2134"));
        assert_eq!(basis_extend(&basis("213"), Direction::Down), basis("1324,3124,3214,3241"));
        assert_eq!(basis_extend(&basis("1"), Direction::Up), basis("12,21"));
    }
}
