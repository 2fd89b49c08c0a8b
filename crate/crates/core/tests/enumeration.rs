mod common;

use permseq::enumerate::{
    count_table, diagonal_limit, generate_avoiders, limit_report, monotonicity_scan, row_differences,
    second_differences, symmetry_representative, CountTable, SignedTable, Symmetry, DEFAULT_TAIL_WINDOW,
    REPRESENTATIVES,
};
use permseq::{basis, perm, PatternBasis, Permutation};

fn texts(v: &[Permutation]) -> Vec<String> {
    v.iter().map(|p| p.to_text()).collect()
}

#[test]
fn generator_examples() {
    let got = generate_avoiders(&basis("132"), 3, 3).unwrap();
    assert_eq!(texts(&got), ["123", "213", "231", "312", "321"]);
    assert_eq!(generate_avoiders(&basis("1324"), 0, 0).unwrap(), vec![Permutation::empty()]);
    assert_eq!(generate_avoiders(&basis("1324,1243"), 4, 2).unwrap().iter().filter(|p| p.inv() == 2).count(), 5);
    assert!(generate_avoiders(&basis("12"), 65, 0).is_err());
}

#[test]
fn generator_is_sorted_and_matches_oracle() {
    for b in ["132", "1324", "1324,231", "1324,1342", "1324,2143", "2413,3142", "12,21"] {
        let b = basis(b);
        for n in 0usize..=7 {
            let k_max = n * n.saturating_sub(1) / 2;
            let got = generate_avoiders(&b, n, k_max).unwrap();
            let mut sorted = got.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(got, sorted, "{b} n={n}");
            let mut want: Vec<Permutation> = (0..=k_max).flat_map(|k| common::avoiders(&b, n, k)).collect();
            want.sort();
            assert_eq!(got, want, "{b} n={n}");
        }
    }
}

#[test]
fn table_examples() {
    let t = count_table(&basis("1324,1342"), 8, 9).unwrap();
    assert_eq!(t.get(5, 3), 8);
    assert_eq!(t.get(8, 9), 134);
    let d = row_differences(&t);
    assert_eq!(d.get(8, 8), None);
    let t9 = count_table(&basis("1324,1342"), 9, 8).unwrap();
    assert_eq!(row_differences(&t9).get(8, 8), Some(6));
    let t = count_table(&basis("1324,1243"), 5, 3).unwrap();
    let d = row_differences(&t);
    assert_eq!(d.get(3, 1), Some(-1));
    for n in 1..5 {
        assert_eq!(d.get(n, 0), Some(0));
    }
    assert_eq!(monotonicity_scan(&t)[0], permseq::enumerate::Violation { n: 3, k: 1, a_n: 2, a_next: 1 });
}

#[test]
fn counterexample_321() {
    let t = count_table(&basis("1324,321"), 11, 15).unwrap();
    assert_eq!((t.get(10, 15), t.get(11, 15)), (60, 52));
    let v = monotonicity_scan(&t);
    assert!(v.iter().any(|x| (x.n, x.k, x.a_n, x.a_next) == (10, 15, 60, 52)));
    assert!(v.windows(2).all(|w| (w[0].k, w[0].n) < (w[1].k, w[1].n)));
}

#[test]
fn monotone_213() {
    let t = count_table(&basis("213"), 10, 20).unwrap();
    assert!(monotonicity_scan(&t).is_empty());
}

#[test]
fn identity_zero_rows() {
    let t = count_table(&basis("1234"), 10, 6).unwrap();
    for k in 0..=6 {
        for n in k + 4..=10 {
            assert_eq!(t.get(n, k), 0, "n={n} k={k}");
        }
    }
}

#[test]
fn one_inversion_patterns_zero_rows() {
    for a in 0..=2 {
        for b in 0..=2 {
            let left = Permutation::identity(a).direct_sum(&perm("21"));
            let right = perm("21").direct_sum(&Permutation::identity(b));
            let pair = PatternBasis::new([left, right]).unwrap();
            let t = count_table(&pair, 12, 5).unwrap();
            for k in 1..=5 {
                for n in k + a + b..=12 {
                    assert_eq!(t.get(n, k), 0, "{pair} n={n} k={k}");
                }
            }
        }
    }
    let t = count_table(&basis("1243,2134"), 12, 6).unwrap();
    for k in 1..=6 {
        for n in k + 4..=12 {
            assert_eq!(t.get(n, k), 0);
        }
    }
}

#[test]
fn catalan_row_sums() {
    let catalan = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
    for p in ["123", "132", "213", "231", "312", "321"] {
        let t = count_table(&basis(p), 8, 28).unwrap();
        for n in 1..=8 {
            assert_eq!(t.row(n).iter().sum::<u64>(), catalan[n], "{p} n={n}");
        }
    }
}

#[test]
fn blank_and_trivial_cells() {
    let t = count_table(&basis("1324,1342"), 6, 15).unwrap();
    for n in 1..=6 {
        assert_eq!(t.get(n, 0), 1);
        for k in n * (n - 1) / 2 + 1..=15 {
            assert_eq!(t.get(n, k), 0);
            assert!(CountTable::is_blank(n, k));
        }
    }
}

#[test]
fn inv_wilf_symmetry_singletons() {
    for p in permseq::Permutation::all(4) {
        let b = PatternBasis::new([p.clone()]).unwrap();
        let t = count_table(&b, 8, 12).unwrap();
        for q in [p.inverse(), p.reverse_complement()] {
            let u = count_table(&PatternBasis::new([q]).unwrap(), 8, 12).unwrap();
            assert_eq!(t.rows(), u.rows(), "{p}");
        }
    }
}

#[test]
fn limit_examples() {
    let t = count_table(&basis("1324,1243"), 18, 12).unwrap();
    let r = limit_report(&t, DEFAULT_TAIL_WINDOW);
    assert_eq!(r.stable_prefix(), [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    let t = count_table(&basis("1324,2143"), 16, 10).unwrap();
    let c = limit_report(&t, DEFAULT_TAIL_WINDOW).stable_prefix();
    let p = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
    assert_eq!(c[0], 1);
    for k in 1..=10 {
        assert_eq!(c[k], 2 * p[k]);
    }
    let t = count_table(&basis("2413,3142"), 10, 3).unwrap();
    let r = limit_report(&t, DEFAULT_TAIL_WINDOW);
    assert!(!r.stabilized[1]);
    for n in 1..=10 {
        assert_eq!(t.get(n, 1), n as u64 - 1);
    }
}

#[test]
fn secondary_and_tertiary_diagonals() {
    let t = count_table(&basis("1324,1342"), 15, 19).unwrap();
    let s = diagonal_limit(&row_differences(&t), DEFAULT_TAIL_WINDOW).sequence();
    assert_eq!(s[..7], [2, 6, 12, 24, 44, 76, 128]);

    let t = count_table(&basis("1324,2143"), 15, 15).unwrap();
    let s = diagonal_limit(&second_differences(&t), DEFAULT_TAIL_WINDOW).sequence();
    assert!(s.len() >= 4);
    assert_eq!(s[..4], [-2, 0, 0, 0]);

    let t = count_table(&basis("1324,2413"), 15, 15).unwrap();
    let s = diagonal_limit(&second_differences(&t), DEFAULT_TAIL_WINDOW).sequence();
    assert_eq!(s[..4], [3, 6, 15, 30]);

    let t = count_table(&basis("1324"), 13, 11).unwrap();
    assert!(!diagonal_limit(&row_differences(&t), DEFAULT_TAIL_WINDOW).entries.is_empty());

    let zero = SignedTable::new(1, 4, vec![vec![Some(0); 5]; 6]);
    assert!(diagonal_limit(&zero, DEFAULT_TAIL_WINDOW).sequence().is_empty());
}

#[test]
fn second_differences_formula() {
    let t = count_table(&basis("1324,2143"), 9, 8).unwrap();
    let b = second_differences(&t);
    let a = |n: usize, k: usize| t.get(n, k) as i64;
    for n in 1..=7 {
        for k in 0..8 {
            if let Some(v) = b.get(n, k) {
                assert_eq!(v, a(n + 2, k + 1) - a(n + 1, k + 1) - (a(n + 1, k) - a(n, k)));
            }
        }
    }
    let constant = CountTable::from_rows(basis("12"), 3, vec![vec![1, 0, 0, 0]; 6]).unwrap();
    let b = second_differences(&constant);
    assert!(b.rows().iter().flatten().all(|v| v.unwrap_or(0) == 0));
}

#[test]
fn symmetry_representatives() {
    let (r, s) = symmetry_representative(&basis("1324,3142")).unwrap();
    assert_eq!((r, s), (basis("1324,2413"), Symmetry::Inverse));
    let (r, s) = symmetry_representative(&basis("1324,4312")).unwrap();
    assert_eq!((r, s), (basis("1324,3421"), Symmetry::Inverse));
    let (r, s) = symmetry_representative(&basis("1324,2431")).unwrap();
    assert_eq!((r, s), (basis("1324,2431"), Symmetry::Identity));
    for p in Permutation::all(4).filter(|p| *p != perm("1324")) {
        let pair = PatternBasis::new([perm("1324"), p.clone()]).unwrap();
        let (r, s) = symmetry_representative(&pair).unwrap();
        let t1 = count_table(&pair, 7, 10).unwrap();
        let t2 = count_table(&r, 7, 10).unwrap();
        assert_eq!(t1.rows(), t2.rows(), "{pair} -> {r} via {s:?}");
    }
}

#[test]
fn representatives_have_distinct_limits() {
    let k_max = 8;
    let mut seen: Vec<(String, Vec<u64>)> = Vec::new();
    for p in REPRESENTATIVES {
        let b = basis(&format!("1324,{p}"));
        let t = count_table(&b, k_max + 6, k_max).unwrap();
        let r = limit_report(&t, DEFAULT_TAIL_WINDOW);
        let c = r.stable_prefix();
        assert_eq!(c.len(), k_max + 1, "{b}");
        for (q, d) in &seen {
            assert_ne!(&c, d, "{p} vs {q}");
        }
        seen.push((p.to_string(), c));
    }
}

#[test]
fn count_row_oracle_small() {
    for b in ["1324,1432", "1324,4321", "1324,3412"] {
        let b = basis(b);
        let t = count_table(&b, 7, 21).unwrap();
        assert_eq!(t.rows(), common::count_rows(&b, 7, 21).as_slice(), "{b}");
    }
}
