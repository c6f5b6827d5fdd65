"""Quick check that the zetaxray extension imports and answers correctly."""

import math

import zetaxray as zx


def main():
    r = zx.zeta_value(2 + 0j)
    assert abs(r.value - math.pi**2 / 6) < 1e-10, r
    assert r.method == "euler_maclaurin"

    zeros = zx.find_zeros(10.0, 40.0)
    assert [n for n, _ in zeros] == [1, 2, 3, 4, 5, 6]
    assert abs(zeros[0][1] - 14.134725141734693) < 1e-6

    assert zx.count_n(100.0) == 29
    assert zx.gram_point(-1).index == -1

    report = zx.audit(-1, 127)
    assert report.gram_violations == [(125, 0), (126, 2)], report.gram_violations
    assert report.rosser_violations == []

    assert abs(zx.sigma0(12) - 1.19234733719) < 1e-11

    x = zx.xray("hermite7", (-4.0, 4.0, -3.0, 3.0))
    kinds = [s.kind for s in x.singularities]
    assert kinds.count("zero") == 7 and kinds.count("saddle") == 6, kinds
    assert x.svg().lstrip().startswith("<?xml")

    assert zx.sheet_permutation(-1, 9) == [1, 2, 3, 4, 5, 7, 6, 8, 10, 9]

    try:
        zx.zeta_value(1 + 0j)
    except zx.DomainError:
        pass
    else:
        raise AssertionError("zeta(1) should raise")

    print("zetaxray smoke test passed")


if __name__ == "__main__":
    main()
