mod common;

use std::collections::BTreeSet;

use permseq::enumerate::{count_table, generate_all_avoiders, monotonicity_scan};
use permseq::injections::{
    basis_extend, induced_injection, inject_1324_231, inject_1324_231_inverse, lemma_delete, lemma_insert,
    shift_down, shift_entries_down, shift_up, trivial_injection, verify_injection, Branch, Direction,
};
use permseq::{basis, perm, PatternBasis, Permutation};

fn single_insertions(p: &Permutation) -> BTreeSet<Permutation> {
    let n = p.len();
    let mut out = BTreeSet::new();
    for pos in 0..=n {
        for v in 1..=n + 1 {
            out.insert(p.insert(pos, v));
        }
    }
    out
}

fn arm_class(n: usize) -> Vec<Permutation> {
    generate_all_avoiders(&basis("213,231"), n).unwrap().into_iter().filter(|p| p.is_indecomposable()).collect()
}

#[test]
fn lemma_insert_is_the_unique_extension() {
    let b = basis("213,231");
    for n in 1..=7 {
        for p in arm_class(n) {
            let mut images = BTreeSet::new();
            for r in 0..=n {
                let s = lemma_insert(&p, r).unwrap();
                let candidates: Vec<Permutation> = single_insertions(&p)
                    .into_iter()
                    .filter(|q| q.avoids(&b) && q.inv() == p.inv() + r && q.is_indecomposable() == s.is_indecomposable())
                    .collect();
                assert!(candidates.contains(&s), "{p} r={r} -> {s}");
                assert_eq!(s.len(), n + 1);
                assert_eq!(s.inv(), p.inv() + r);
                assert!(s.avoids(&b));
                assert!((1..=n + 1).any(|v| s.delete_value(v) == p));
                images.insert(s);
            }
            assert_eq!(images.len(), n + 1, "{p}");
        }
    }
    assert_eq!(lemma_insert(&perm("1"), 0).unwrap(), perm("12"));
    assert_eq!(lemma_insert(&perm("1"), 1).unwrap(), perm("21"));
}

#[test]
fn lemma_insert_312_oracle() {
    let b = basis("213,231");
    let found: Vec<Permutation> = single_insertions(&perm("312"))
        .into_iter()
        .filter(|q| q.avoids(&b) && q.inv() == 3 && q.is_indecomposable())
        .collect();
    assert_eq!(found, vec![lemma_insert(&perm("312"), 1).unwrap()]);
}

#[test]
fn lemma_delete_round_trip() {
    for n in 1..=6 {
        for p in arm_class(n) {
            for r in 1..=n {
                let s = lemma_insert(&p, r).unwrap();
                assert_eq!(lemma_delete(&s, r).unwrap(), p, "{p} r={r}");
            }
        }
    }
    assert_eq!(lemma_delete(&perm("21"), 1).unwrap(), perm("1"));
    let single: Vec<Permutation> =
        (0..3).map(|i| perm("312").delete_at(i)).filter(|t| t.inv() == 0).collect();
    assert_eq!(single, vec![lemma_delete(&perm("312"), 2).unwrap()]);
}

fn transposition_steps(p: &Permutation, e: usize, m: usize) -> Permutation {
    let mut v = p.values().to_vec();
    let mut cur = e;
    for _ in 0..m {
        for x in v.iter_mut() {
            if *x == cur {
                *x = cur - 1;
            } else if *x == cur - 1 {
                *x = cur;
            }
        }
        cur -= 1;
    }
    Permutation::new(v).unwrap()
}

#[test]
fn shifts_match_transpositions() {
    for n in 1..=6 {
        for p in Permutation::all(n) {
            for e in 1..=n {
                for m in 0..e {
                    let s = shift_down(&p, e, m).unwrap();
                    assert_eq!(s, transposition_steps(&p, e, m));
                    assert_eq!(shift_up(&s, e - m, m).unwrap(), p);
                }
            }
            for mask in 0u32..(1 << n) {
                let pos: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let min = pos.iter().map(|&i| p.values()[i]).min().unwrap_or(n + 1);
                if pos.is_empty() || min <= 1 {
                    continue;
                }
                let mut order = pos.clone();
                order.sort_by_key(|&i| p.values()[i]);
                let mut want = p.clone();
                for &i in &order {
                    want = transposition_steps(&want, want.values()[i], 1);
                }
                assert_eq!(shift_entries_down(&p, &pos, 1).unwrap(), want);
            }
        }
    }
    assert_eq!(shift_down(&perm("231"), 3, 1).unwrap(), perm("321"));
    assert_eq!(shift_down(&perm("231"), 3, 0).unwrap(), perm("231"));
}

#[test]
fn injection_exhaustive_to_9() {
    let b = basis("1324,231");
    for n in 0..=9 {
        let domain = generate_all_avoiders(&b, n).unwrap();
        let oracle: usize = (0..=n * n.saturating_sub(1) / 2).map(|k| common::avoiders(&b, n, k).len()).sum();
        assert_eq!(domain.len(), oracle);
        let rep = verify_injection(&domain, &b, |p| inject_1324_231(p).unwrap().0);
        assert!(rep.ok(), "n={n}: {:?}", rep);
        let mut first = BTreeSet::new();
        let mut third = BTreeSet::new();
        for p in &domain {
            let (s, br) = inject_1324_231(p).unwrap();
            assert_eq!(inject_1324_231_inverse(&s).unwrap(), *p);
            match br {
                Branch::Indecomposable(d) => {
                    assert!(s.comp() <= 2, "{p} -> {s}");
                    assert_eq!(d.l, d.q * (d.m + 1) - d.r);
                    assert!(d.q > 0 && d.r <= d.m);
                    third.insert(s);
                }
                Branch::Decreasing => {
                    assert_eq!(s, Permutation::decreasing(n).direct_sum(&perm("1")));
                    first.insert(s);
                }
                Branch::Decomposable => {
                    assert!(s.comp() >= 3, "{p} -> {s}");
                    first.insert(s);
                }
                Branch::Empty => assert_eq!(n, 0),
            }
        }
        assert!(first.is_disjoint(&third));
    }
}

#[test]
fn injection_rejects_outside_class() {
    assert!(inject_1324_231(&perm("231")).is_err());
    assert!(inject_1324_231(&perm("1324")).is_err());
}

#[test]
fn extension_sizes_and_avoidance() {
    for (b, d) in [("213", Direction::Left), ("1324,231", Direction::Right), ("132", Direction::Up), ("21", Direction::Down)] {
        let b = basis(b);
        let e = basis_extend(&b, d);
        let raw: usize = b.patterns().iter().map(|p| p.len() + 1).sum();
        assert!(e.len() <= raw);
        if d == Direction::Left {
            for n in 0..=8 {
                for p in generate_all_avoiders(&e, n).unwrap() {
                    if !p.is_empty() {
                        assert!(p.delete_at(0).avoids(&b), "{p}");
                    }
                }
            }
        }
    }
    let mut bi = basis("213");
    for i in 1..=3usize {
        bi = basis_extend(&bi, Direction::Left);
        let want = (4..=3 + i).product::<usize>();
        assert_eq!(bi.len(), want, "i={i}");
    }
}

#[test]
fn iterated_extensions_monotone() {
    let mut bi = basis("213");
    for i in 0..=2 {
        let with = PatternBasis::new(bi.patterns().iter().cloned().chain([perm("1324")])).unwrap();
        let t = count_table(&with, 10, 15).unwrap();
        assert!(monotonicity_scan(&t).is_empty(), "i={i}");
        bi = basis_extend(&bi, Direction::Left);
    }
}

#[test]
fn induced_injection_213() {
    let b = basis("213");
    let ext = basis_extend(&b, Direction::Left);
    for n in 0..=8 {
        let g = induced_injection(trivial_injection(&b).unwrap(), Direction::Left);
        let domain = generate_all_avoiders(&ext, n).unwrap();
        let rep = verify_injection(&domain, &ext, &g);
        assert!(rep.ok(), "n={n} {:?}", rep);
        for p in &domain {
            if let Some(first) = p.first() {
                assert_eq!(g(p).first(), Some(first));
            }
        }
    }
    for dir in [Direction::Right, Direction::Up, Direction::Down] {
        let ext = basis_extend(&b, dir);
        for n in 0..=7 {
            let g = induced_injection(trivial_injection(&b).unwrap(), dir);
            let domain = generate_all_avoiders(&ext, n).unwrap();
            assert!(verify_injection(&domain, &ext, &g).ok(), "{dir:?} n={n}");
        }
    }
}
