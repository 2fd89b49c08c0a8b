//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use permseq::{PatternBasis, Permutation};

/// All permutations of `1..=n` as plain vectors, lexicographic.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    out
}

pub fn inversions(v: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                c += 1;
            }
        }
    }
    c
}

fn same_order(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] < a[j]) == (b[i] < b[j])))
}

/// Tries every index subset of the right size.
pub fn contains(text: &[usize], pat: &[usize]) -> bool {
    fn rec(text: &[usize], pat: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == pat.len() {
            return same_order(chosen, pat);
        }
        let need = pat.len() - chosen.len();
        for i in start..text.len() {
            if text.len() - i < need {
                break;
            }
            chosen.push(text[i]);
            if rec(text, pat, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(text, pat, 0, &mut Vec::new())
}

pub fn avoids(text: &[usize], basis: &PatternBasis) -> bool {
    basis.patterns().iter().all(|p| !contains(text, p.values()))
}

/// `Av_n^k(B)` by filtering `S_n`.
pub fn avoiders(basis: &PatternBasis, n: usize, k: usize) -> Vec<Permutation> {
    all_perms(n)
        .into_iter()
        .filter(|v| inversions(v) == k && avoids(v, basis))
        .map(|v| Permutation::new(v).unwrap())
        .collect()
}

/// Counts `a(n,k)` for `1 <= n <= n_max`, `0 <= k <= k_max` by filtering.
pub fn count_rows(basis: &PatternBasis, n_max: usize, k_max: usize) -> Vec<Vec<u64>> {
    (1..=n_max)
        .map(|n| {
            let mut row = vec![0u64; k_max + 1];
            for v in all_perms(n) {
                let k = inversions(&v);
                if k <= k_max && avoids(&v, basis) {
                    row[k] += 1;
                }
            }
            row
        })
        .collect()
}

/// Whether some proper prefix of length `j` holds exactly `1..=j`.
pub fn decomposable(v: &[usize]) -> bool {
    let mut max = 0;
    for (i, &x) in v.iter().enumerate().take(v.len().saturating_sub(1)) {
        max = max.max(x);
        if max == i + 1 {
            return true;
        }
    }
    false
}

/// Deletes the entry with value `x` and standardizes.
pub fn remove_value(v: &[usize], x: usize) -> Vec<usize> {
    v.iter().filter(|&&y| y != x).map(|&y| if y > x { y - 1 } else { y }).collect()
}

pub fn almost_decomposable(v: &[usize]) -> bool {
    let n = v.len();
    !decomposable(v) && n > 0 && [1, v[0], n, v[n - 1]].iter().any(|&e| decomposable(&remove_value(v, e)))
}

/// Partitions of `k` as weakly decreasing vectors.
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in 1..=max.min(rest) {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}
