//! The f-map on decomposable and almost decomposable 1324-avoiders, pattern
//! compatibility with it, and the `{1324,1342}` difference sets.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{generate_all_avoiders, generate_avoiders, generate_exact};
use crate::error::{Error, Result};
use crate::perm::{basis, perm, PatternBasis, Permutation};

fn p1324() -> Permutation {
    perm("1324")
}

/// `σ ⊕ id_m ⊕ τ` with `σ` the first and `τ` the last component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompForm {
    pub sigma: Permutation,
    pub m: usize,
    pub tau: Permutation,
}

impl DecompForm {
    pub fn of(p: &Permutation) -> Result<Self> {
        let comps = p.components();
        if comps.len() < 2 {
            return Err(Error::Precondition(format!("{p} is not decomposable")));
        }
        if comps[1..comps.len() - 1].iter().any(|c| c.len() != 1) || p.contains(&p1324()) {
            return Err(Error::Precondition(format!("{p} does not avoid 1324")));
        }
        Ok(DecompForm {
            sigma: comps[0].clone(),
            m: comps.len() - 2,
            tau: comps[comps.len() - 1].clone(),
        })
    }

    pub fn assemble(&self) -> Permutation {
        self.sigma.direct_sum(&Permutation::identity(self.m)).direct_sum(&self.tau)
    }
}

/// `σ ⊕ id_m ⊕ τ ↦ σ ⊕ id_{m+1} ⊕ τ`.
pub fn f_tilde(p: &Permutation) -> Result<Permutation> {
    let mut form = DecompForm::of(p)?;
    form.m += 1;
    Ok(form.assemble())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FTag {
    Decomposable,
    /// `π ∖ π_1` decomposable.
    F1,
    /// `π ∖ 1` decomposable.
    F2,
    /// `π ∖ π_n` decomposable.
    F3Prime,
    /// `π ∖ n` decomposable.
    F4Prime,
}

/// Which rule defines `f(π)`, and the deleted entry (by value) that makes
/// `π` decomposable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FCase {
    pub tag: FTag,
    pub witness: usize,
}

/// Order in which the four deletions are tried.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FPriority {
    /// `π_1`, then `1`, then the reverse-complement cases.
    #[default]
    Paper,
    /// Reverse-complement cases first.
    Alternate,
}

/// The rule used by `f`, or `None` when `p` is indecomposable but not almost
/// decomposable.
pub fn f_case(p: &Permutation, priority: FPriority) -> Option<FCase> {
    let n = p.len();
    if n == 0 {
        return None;
    }
    if p.is_decomposable() {
        return Some(FCase { tag: FTag::Decomposable, witness: 0 });
    }
    let first = p.values()[0];
    let last = p.values()[n - 1];
    let lr = [(FTag::F1, first), (FTag::F2, 1)];
    let rc = [(FTag::F3Prime, last), (FTag::F4Prime, n)];
    let order: Vec<(FTag, usize)> = match priority {
        FPriority::Paper => lr.into_iter().chain(rc).collect(),
        FPriority::Alternate => rc.into_iter().chain(lr).collect(),
    };
    debug_assert!(
        !(p.delete_value(first).is_decomposable() && p.delete_value(1).is_decomposable()),
        "both π∖π_1 and π∖1 decomposable for {p}"
    );
    order
        .into_iter()
        .find(|&(_, e)| p.delete_value(e).is_decomposable())
        .map(|(tag, witness)| FCase { tag, witness })
}

/// `Some` only for almost decomposable permutations (paper priority).
pub fn almost_decomposable(p: &Permutation) -> Option<FCase> {
    f_case(p, FPriority::Paper).filter(|c| c.tag != FTag::Decomposable)
}

pub fn is_decomp_or_almost(p: &Permutation) -> bool {
    f_case(p, FPriority::Paper).is_some()
}

/// `f(π)_1 = π_1` and `f(π) ∖ π_1 = f̃(π ∖ π_1)`.
fn keep_first(p: &Permutation) -> Result<Permutation> {
    let first = p.values()[0];
    Ok(f_tilde(&p.delete_at(0))?.insert(0, first))
}

pub fn f_map(p: &Permutation) -> Result<Permutation> {
    f_map_with(p, FPriority::Paper)
}

pub fn f_map_with(p: &Permutation, priority: FPriority) -> Result<Permutation> {
    if p.contains(&p1324()) {
        return Err(Error::Precondition(format!("{p} contains 1324")));
    }
    let case = f_case(p, priority)
        .ok_or_else(|| Error::Precondition(format!("{p} is neither decomposable nor almost decomposable")))?;
    match case.tag {
        FTag::Decomposable => f_tilde(p),
        FTag::F1 => keep_first(p),
        FTag::F2 => Ok(keep_first(&p.inverse())?.inverse()),
        FTag::F3Prime => Ok(keep_first(&p.reverse_complement())?.reverse_complement()),
        FTag::F4Prime => {
            let q = p.reverse_complement().inverse();
            Ok(keep_first(&q)?.inverse().reverse_complement())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostDecompCheck {
    pub n: usize,
    /// Permutations with `inv <= 2n-7` examined.
    pub checked: usize,
    /// Those that are neither decomposable nor almost decomposable.
    pub failures: Vec<Permutation>,
    /// Smallest inversion number of a non-(almost-)decomposable avoider seen
    /// with `inv <= scan_budget`.
    pub min_inv_other: Option<usize>,
    pub scan_budget: usize,
}

/// Every `π ∈ Av_n(1324)` with `inv(π) <= 2n-7` is (almost) decomposable.
/// Also scans up to `2n-5` inversions for the smallest exception.
pub fn theorem_almost_decomp_check(n_max: usize) -> Result<Vec<AlmostDecompCheck>> {
    let b = basis("1324");
    let mut out = Vec::new();
    for n in 1..=n_max {
        let bound = (2 * n).checked_sub(7);
        let scan_budget = (2 * n).saturating_sub(5);
        let all = generate_avoiders(&b, n, scan_budget)?;
        let mut rep = AlmostDecompCheck { n, checked: 0, failures: Vec::new(), min_inv_other: None, scan_budget };
        for p in &all {
            let k = p.inv();
            let ok = is_decomp_or_almost(p);
            if bound.is_some_and(|bd| k <= bd) {
                rep.checked += 1;
                if !ok {
                    rep.failures.push(p.clone());
                }
            }
            if !ok && rep.min_inv_other.is_none_or(|m| k < m) {
                rep.min_inv_other = Some(k);
            }
        }
        out.push(rep);
    }
    Ok(out)
}

fn symmetric_images(p: &Permutation) -> [(Permutation, bool); 4] {
    let rc = p.reverse_complement();
    [(p.clone(), false), (p.inverse(), false), (rc.inverse(), true), (rc, true)]
}

fn first_component_starts_with_max(q: &Permutation) -> bool {
    q.components().first().is_some_and(|c| c.first() == Some(c.len()))
}

/// Necessary condition for f-incompatibility: `false` proves compatibility.
/// On the reverse-complement side both the two-component condition and the
/// 213-avoidance condition also require `q_n < n`.
pub fn classify_necessary(p: &Permutation) -> bool {
    let n = p.len();
    symmetric_images(p).iter().any(|(q, rc_side)| {
        if n == 0 {
            return false;
        }
        let q1 = q.values()[0];
        let comp = q.comp();
        let rest = q.delete_value(q1);
        comp >= 3
            || rest.comp() > comp
            || (q1 > 1
                && comp == 2
                && first_component_starts_with_max(q)
                && (!rc_side || q.values()[n - 1] < n))
            || (q1 > 1 && q1 < n && !rest.contains(&perm("213")) && (!rc_side || q.values()[n - 1] < n))
    })
}

/// Sufficient condition for f-incompatibility.
pub fn classify_sufficient(p: &Permutation) -> bool {
    let n = p.len();
    symmetric_images(p).iter().any(|(q, rc_side)| {
        if n == 0 {
            return false;
        }
        let q1 = q.values()[0];
        let comp = q.comp();
        let rest = q.delete_value(q1);
        let extra = !rc_side || q1 + 1 < n;
        comp >= 3
            || (extra && q1 < n && rest.comp() > comp)
            || (extra && q1 > 1 && comp == 2 && first_component_starts_with_max(q))
            || (extra && q1 > 1 && q1 < n && !rest.contains(&perm("213")))
    })
}

/// The two explicit families of compatible patterns.
pub fn corollary_families(p: &Permutation) -> bool {
    let n = p.len();
    if n == 0 {
        return false;
    }
    if p.values()[0] == n && p.values()[n - 1] == 1 {
        return true;
    }
    if n >= 4 && p.values()[0] == 1 {
        let tau = p.delete_value(1);
        let m = tau.len();
        return tau.is_indecomposable()
            && tau.delete_at(m - 1).is_indecomposable()
            && tau.delete_value(m).is_indecomposable();
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pi: Permutation,
    pub image: Permutation,
    /// 0-based positions in `image` of an occurrence of the pattern.
    pub occurrence: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    IncompatibleByTheorem,
    IncompatibleByWitness,
    CompatibleByTheorem,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatVerdict {
    pub pattern: Permutation,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// All `(π, f(π))` with `π` a (almost) decomposable 1324-avoider of length `m`.
pub fn f_images(m: usize, priority: FPriority) -> Result<Vec<(Permutation, Permutation)>> {
    let all = generate_all_avoiders(&basis("1324"), m)?;
    all.into_par_iter()
        .filter(is_decomp_or_almost)
        .map(|p| {
            let img = f_map_with(&p, priority)?;
            Ok((p, img))
        })
        .collect()
}

/// Precomputed f-images for the lengths searched by [`compat_search`].
pub struct ImageBank {
    lengths: Vec<(usize, Vec<(Permutation, Permutation)>)>,
}

impl ImageBank {
    pub fn new(lengths: impl IntoIterator<Item = usize>, priority: FPriority) -> Result<Self> {
        let lengths = lengths
            .into_iter()
            .map(|m| Ok((m, f_images(m, priority)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ImageBank { lengths })
    }

    /// Window `n-1..=n+2` around the pattern length `n`.
    pub fn window(n: usize, priority: FPriority) -> Result<Self> {
        ImageBank::new(n.saturating_sub(1).max(1)..=n + 2, priority)
    }

    pub fn find_witness(&self, p: &Permutation, lengths: &[usize]) -> Option<Witness> {
        for (m, imgs) in &self.lengths {
            if !lengths.contains(m) {
                continue;
            }
            for (pi, image) in imgs {
                if let Some(occ) = image.occurrence(p) {
                    if !pi.contains(p) {
                        return Some(Witness { pi: pi.clone(), image: image.clone(), occurrence: occ });
                    }
                }
            }
        }
        None
    }
}

/// Searches the window `|p|-1 ..= |p|+2` for `π ∈ Av(1324,p)` with `f(π)`
/// containing `p`, and combines the result with the two theorems.
pub fn compat_search(p: &Permutation, bank: &ImageBank) -> CompatVerdict {
    let n = p.len();
    let window: Vec<usize> = (n.saturating_sub(1)..=n + 2).collect();
    let witness = bank.find_witness(p, &window);
    let verdict = if classify_sufficient(p) {
        Verdict::IncompatibleByTheorem
    } else if witness.is_some() {
        Verdict::IncompatibleByWitness
    } else if !classify_necessary(p) {
        Verdict::CompatibleByTheorem
    } else {
        Verdict::Unknown
    };
    CompatVerdict { pattern: p.clone(), verdict, witness }
}

/// One row of the incompatibility bounds table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table4Row {
    pub n: usize,
    pub total: usize,
    pub sufficient_incompatible: usize,
    pub clb: usize,
    pub necessary_incompatible: usize,
    pub necessary_compatible: usize,
    pub cub: usize,
    pub sufficient_compatible: usize,
}

/// Verdicts for every pattern in `Av_n(1324)` and the bounds row.
pub fn compat_table(n: usize, priority: FPriority) -> Result<(Table4Row, Vec<CompatVerdict>)> {
    let bank = ImageBank::window(n, priority)?;
    let patterns = generate_all_avoiders(&basis("1324"), n)?;
    let verdicts: Vec<CompatVerdict> = patterns.par_iter().map(|p| compat_search(p, &bank)).collect();
    let total = patterns.len();
    let suff = patterns.iter().filter(|p| classify_sufficient(p)).count();
    let nec = patterns.iter().filter(|p| classify_necessary(p)).count();
    let clb = verdicts.iter().filter(|v| v.witness.is_some()).count();
    let row = Table4Row {
        n,
        total,
        sufficient_incompatible: suff,
        clb,
        necessary_incompatible: nec,
        necessary_compatible: total - nec,
        cub: total - clb,
        sufficient_compatible: total - suff,
    };
    Ok((row, verdicts))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound1342Row {
    pub n: usize,
    /// (Almost) decomposable members of `Av_n(1324,1342)` examined.
    pub checked: usize,
    /// Those whose image contains 1342.
    pub counterexamples: usize,
    pub min_counterexample_inv: Option<usize>,
    /// Counterexamples with `inv < 2n-5`; expected empty.
    pub below_bound: Vec<Permutation>,
    /// Counterexamples with `inv = 2n-5` exactly.
    pub at_boundary: Vec<Permutation>,
    /// (Almost) decomposable 1324-avoiders containing 1342 whose image
    /// avoids 1342; expected empty.
    pub containment_lost: Vec<Permutation>,
}

/// Scans `f` on `Av_n(1324,1342)` for images containing 1342.
pub fn check_1342_bound(n_max: usize) -> Result<Vec<Bound1342Row>> {
    let q = perm("1342");
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let imgs = f_images(n, FPriority::Paper)?;
        let mut row = Bound1342Row {
            n,
            checked: 0,
            counterexamples: 0,
            min_counterexample_inv: None,
            below_bound: Vec::new(),
            at_boundary: Vec::new(),
            containment_lost: Vec::new(),
        };
        for (pi, img) in &imgs {
            let has = pi.contains(&q);
            let img_has = img.contains(&q);
            if has {
                if !img_has {
                    row.containment_lost.push(pi.clone());
                }
                continue;
            }
            row.checked += 1;
            if img_has {
                let k = pi.inv();
                row.counterexamples += 1;
                row.min_counterexample_inv = Some(row.min_counterexample_inv.map_or(k, |m| m.min(k)));
                if k + 5 < 2 * n {
                    row.below_bound.push(pi.clone());
                } else if k + 5 == 2 * n {
                    row.at_boundary.push(pi.clone());
                }
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceSets {
    pub n: usize,
    pub k: usize,
    pub r1: Vec<Permutation>,
    pub r2: Vec<Permutation>,
    pub r3: Vec<Permutation>,
    /// Members of the difference not in any `R_i`.
    pub unexplained: Vec<Permutation>,
    /// Members of some `R_i` that are in the image of `f`.
    pub spurious: Vec<Permutation>,
}

/// `τ ∖ {τ_1, τ_{n+1}}` has at least three components, `τ_1 = ℓ+1` and
/// `τ_{n+1} = ℓ+2`, with `ℓ` the length of its first component.
fn r3_shape(t: &Permutation) -> bool {
    let len = t.len();
    if len < 3 {
        return false;
    }
    let (a, b) = (t.values()[0], t.values()[len - 1]);
    let Ok(core) = t.delete(&[a, b]) else { return false };
    let lens = core.component_lengths();
    lens.len() >= 3 && a == lens[0] + 1 && b == lens[0] + 2
}

/// The part of `Av_{n+1}^k(1324,1342)` missed by `f` on
/// `Av_n^k(1324,1342)`, split into the three described families.
pub fn difference_sets(n: usize, k: usize) -> Result<DifferenceSets> {
    let b = basis("1324,1342");
    let domain = generate_exact(&b, n, k)?;
    let mut image = HashSet::new();
    for p in &domain {
        if is_decomp_or_almost(p) {
            image.insert(f_map(p)?);
        }
    }
    let big = n + 1;
    let mut out = DifferenceSets {
        n,
        k,
        r1: Vec::new(),
        r2: Vec::new(),
        r3: Vec::new(),
        unexplained: Vec::new(),
        spurious: Vec::new(),
    };
    for s in generate_exact(&b, big, k)? {
        let v = s.values();
        let class = if v[0] == big || v[big - 1] == 1 {
            Some(1)
        } else if (big >= 2 && v[1] == big) || v[big - 1] == 2 {
            Some(2)
        } else if r3_shape(&s) || r3_shape(&s.inverse()) {
            Some(3)
        } else {
            None
        };
        let in_image = image.contains(&s);
        match (class, in_image) {
            (Some(c), false) => match c {
                1 => out.r1.push(s),
                2 => out.r2.push(s),
                _ => out.r3.push(s),
            },
            (Some(_), true) => out.spurious.push(s),
            (None, false) => out.unexplained.push(s),
            (None, true) => {}
        }
    }
    Ok(out)
}

/// `av_n^k(B)` computed through `f` on the smaller length, for a sanity
/// comparison with direct counts.
pub fn image_size(b: &PatternBasis, n: usize, k: usize) -> Result<usize> {
    let mut set = HashSet::new();
    for p in generate_exact(b, n, k)? {
        if is_decomp_or_almost(&p) {
            set.insert(f_map(&p)?);
        }
    }
    Ok(set.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases() {
        assert_eq!(almost_decomposable(&perm("34152")).unwrap().tag, FTag::F3Prime);
        assert_eq!(almost_decomposable(&perm("12")), None);
        assert_eq!(almost_decomposable(&perm("231")), Some(FCase { tag: FTag::F2, witness: 1 }));
        assert_eq!(almost_decomposable(&perm("312")).unwrap().tag, FTag::F1);
    }

    #[test]
    fn tilde() {
        assert_eq!(f_tilde(&perm("132")).unwrap(), perm("1243"));
        assert_eq!(f_tilde(&Permutation::identity(4)).unwrap(), Permutation::identity(5));
        assert_eq!(f_tilde(&perm("2143")).unwrap(), perm("21354"));
        assert!(f_tilde(&perm("3142")).is_err());
    }

    #[test]
    fn worked_f() {
        let img = f_map(&perm("34152")).unwrap();
        assert_eq!(img, perm("241563"));
        assert!(img.contains(&perm("1342")));
        assert!(!perm("34152").contains(&perm("1342")));
    }

    #[test]
    fn families() {
        for s in ["4231", "4321", "52341", "54321", "1432"] {
            assert!(corollary_families(&perm(s)), "{s}");
            assert!(!classify_necessary(&perm(s)), "{s}");
        }
        assert!(!corollary_families(&perm("34125")));
        assert!(!classify_necessary(&perm("34125")));
    }
}
