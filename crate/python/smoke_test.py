"""Smoke test for the permseq_py extension module.

Build and run from the repository root:

    cargo build --release -p permseq-py --features extension-module
    cp target/release/libpermseq_py.so python/permseq_py.so
    python3 python/smoke_test.py
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import permseq_py as ps


def main():
    p = ps.Permutation("34152")
    assert p.inv() == 5
    assert p.lehmer_code() == [2, 2, 0, 1, 0]
    assert p.inverse().inverse() == p
    assert str(ps.Permutation([2, 1])) == "21"
    assert p.contains(ps.Permutation("231"))

    img = ps.f_map(p)
    assert str(img) == "241563"
    assert img.contains(ps.Permutation("1342"))

    table = ps.count_table("1324,1342", 8, 9)
    assert table[4][3] == 8 and table[7][9] == 134

    t321 = ps.count_table("1324,321", 11, 15)
    assert (t321[9][15], t321[10][15]) == (60, 52)

    avoiders = ps.generate_avoiders("132", 3, 3)
    assert [str(a) for a in avoiders] == ["123", "213", "231", "312", "321"]

    q = ps.Permutation("13,12,11,7,6,5,3,1,2,4,10,8,9")
    s, cert = ps.inject_1324_231(q)
    assert len(s) == len(q) + 1 and s.inv() == q.inv()
    assert ps.inject_1324_231_inverse(s) == q
    assert cert.startswith("branch=")

    assert ps.named_gf("1324,1342", 9) == [1, 2, 4, 8, 14, 24, 40, 64, 100, 154]
    assert ps.av_1324_1342(15, 15) == 1464
    assert sorted(ps.spm_generate(5)) == sorted([[5], [4, 1], [3, 2], [3, 1, 1], [2, 2, 1]])
    assert ps.lambda_inverse(ps.lambda_(ps.Permutation("4213"))) == ps.Permutation("4213")
    assert ps.verify_family(ps.Permutation("2341"), 8)

    row = ps.compat_row(4)
    assert (row["sufficient_incompatible"], row["clb"], row["cub"]) == (18, 20, 3)

    print("permseq_py smoke test passed")


if __name__ == "__main__":
    main()
