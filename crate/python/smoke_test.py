"""Smoke test for the genlie_py extension. Exits nonzero on the first failure."""

import itertools
import sys

import genlie_py as g


def sl2_order(q):
    # brute force over F_q, q prime
    return sum(1 for a, b, c, d in itertools.product(range(q), repeat=4) if (a * d - b * c) % q == 1)


def main():
    a1 = g.RootDatum("A1")
    assert a1.rank == 1 and a1.cartan == [[2]], a1.summary()
    g2 = g.RootDatum("G2")
    assert g2.num_positive_roots == 6
    assert g.RootDatum("2A3").phi == [2, 1, 0]

    for q in (2, 3, 5, 7):
        assert g.generic_order("A1").evaluate(q) == sl2_order(q)
    # |E_8(2)| is far beyond 64 bits and must come back as an exact int
    e8 = g.generic_order("E8")
    assert e8.qpower == 120
    assert e8.evaluate(2) % 2**120 == 0 and e8.evaluate(2) > 2**200
    assert g.generic_order("GL3").evaluate(2) == 168
    assert g.generic_order("A2").ell_part(2, 7) == (3, 1)

    w = g.WeylGroup("B3")
    assert len(w) == 48 and sorted(w.degrees()) == [2, 4, 6]
    assert w.poincare() == [1, 3, 5, 7, 8, 8, 7, 5, 3, 1]
    assert len(g.WeylGroup("A3").twisted_classes()) == 5
    assert g.WeylGroup("A3").regular(5) is None
    assert g.WeylGroup("E6").regular(12)["centralizer_order"] == 12
    assert g.WeylGroup("A2").verify_regular_braid(3)["holds"]

    s = g.sylow("GL3", 2, 7)
    assert s["d"] == 3 and s["nu"] == 1

    b = g.blocks("A1", 5)
    assert [len(x["weights"]) for x in b["blocks"]] == [2, 2] and len(b["defect_zero"]) == 1
    assert g.kr_sum("A2", 2)["sum"] == "0"
    assert g.alperin_weights("A1", 3)["total"] == 3

    m = g.LltMatrix(2, 2)
    assert m.partitions == [[2], [1, 1]]
    assert m.at_one() == [[1, 0], [1, 1]]
    assert m.entry(1, 0) == {1: 1}

    r = g.degenerate(3, [(1, 2)], [[[0, 1], [1, 0]]])
    assert r["certificate"]["passed"] and r["certificate"]["e_order"] == 2
    assert r["dg"]["higher_vanish"]

    try:
        g.RootDatum("Q5")
    except ValueError:
        pass
    else:
        raise AssertionError("bad label accepted")
    try:
        g.WeylGroup("E8", limit=10)
    except g.GuardExceededError:
        pass
    else:
        raise AssertionError("guard not raised")
    try:
        g.degenerate(2, [(1, 2)], [[[0, 1], [1, 0]]])
    except ValueError:
        pass
    else:
        raise AssertionError("l dividing |E| accepted")
    assert issubclass(g.GuardExceededError, g.GenlieError)

    print("smoke test: all checks passed")


if __name__ == "__main__":
    try:
        main()
    except AssertionError as e:
        print(f"smoke test FAILED: {e!r}", file=sys.stderr)
        raise
