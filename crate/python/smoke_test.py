"""Smoke test for the nflcup extension module.

Build and install first:  maturin develop -m crates/py/Cargo.toml
"""

import math

import nflcup


def main():
    assert nflcup.compose([3, 1, 2], [2, 0, 1]) == [2, 3, 1]
    assert nflcup.histogram_of([0, 1, 1], 2) == [1, 2]
    p = nflcup.find_permutation([0, 0, 1], [1, 0, 0], 2)
    assert nflcup.compose([0, 0, 1], p) == [1, 0, 0]
    assert nflcup.find_permutation([0, 0, 1], [1, 1, 0], 2) is None
    assert len(nflcup.orbit([0, 1, 1], 2)) == 3

    assert nflcup.multinomial([1, 1, 1]) == 6
    assert nflcup.count_histograms(8, 2) == 9
    assert nflcup.count_cup_subsets(2, 3) == 63
    assert nflcup.count_all_subsets(8, 2) == 2**256 - 1
    assert abs(nflcup.cup_fraction(8, 2) - (math.log10(511) - 256 * math.log10(2))) < 1e-9
    try:
        nflcup.count_all_subsets(40, 10)
    except nflcup.CapacityError:
        pass
    else:
        raise AssertionError("expected CapacityError")

    s = nflcup.FunctionSet(2, 2, [[0, 1]])
    assert not s.is_cup()
    assert s.decompose() == [([1, 1], 2, 1)]
    c = s.closure()
    assert c.is_cup() and c.functions == [[0, 1], [1, 0]]
    assert [1, 0] in c and [1, 1] not in c

    full = nflcup.FunctionSet.full(3, 2)
    assert nflcup.verify_nfl(full, 3, ["all"]) == (True, None)
    single = nflcup.FunctionSet(3, 2, [[0, 0, 1]])
    assert nflcup.verify_nfl(single, 1, ["lex", "rev"]) == (False, (0, 1))
    assert nflcup.verify_nfl(nflcup.orbit([0, 1, 1], 2), 2, ["lex", "rev", "random:5"])[0]

    cycle = nflcup.Neighborhood.hypercube(2)
    assert cycle.edges == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert cycle.is_nontrivial()
    assert cycle.noninvariant_permutation() == [0, 2, 3, 1]
    assert nflcup.count_local_minima([0, 1, 1, 0], 2, cycle) == 2
    assert nflcup.max_steepness([0, 3, 1, 2], 4, cycle) == 3.0
    cls, witness = nflcup.constraint_class(4, 2, cycle, "minima", 2)
    assert len(cls) == 14 and not cls.is_cup()
    g, perm, measure = witness
    assert measure == 2.0 and nflcup.compose(g, perm) not in cls
    cls, witness = nflcup.constraint_class(4, 3, cycle, "steepness", 1)
    assert cls.is_cup() and witness is None

    print("nflcup smoke test passed")


if __name__ == "__main__":
    main()
