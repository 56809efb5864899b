"""Smoke test for the galmod extension module."""

from fractions import Fraction

import galmod


def main():
    s3 = galmod.Group("S3")
    assert s3.order == 6
    assert sorted(s3.class_sizes()) == [1, 2, 3]
    assert s3.subgroup_order("S2") == 2

    d4 = galmod.Decomposition(galmod.Group("D4"))
    assert sorted(c["dim"] for c in d4.components()) == [1, 1, 1, 1, 4]

    c2 = galmod.Decomposition(galmod.Group("C2"))
    assert c2.rank_u(["whole"])[1] == 0
    assert c2.rank_u(["trivial"])[1] == 1

    table = c2.table([2], [(3, 1)], 27, places=["whole"])
    weights = [w for _, w, _ in table.rows()]
    assert weights == [1, Fraction(1, 2), Fraction(1, 48), Fraction(1, 11232)]
    assert sum(p for _, _, p in table.rows()) == 1
    z3 = galmod.ModuleType("2:3:(1)")
    assert c2.closed_form_moment(z3, [2], u=[0, 1]) == Fraction(1, 3)

    types = [t for t, _, _ in table.rows()]
    moments = [table.moment(t) for t in types]
    assert c2.invert_moments(types, moments) == [p for _, _, p in table.rows()]
    assert table.sample(9, 20) == table.sample(9, 20)

    assert c2.class_triple(z3, "(1 2)") == (2, 2, True)
    assert c2.class_triple(z3, "()") == (6, 6, True)
    assert d4.hecke_rank("tau", [3]) == 2

    s3d = galmod.Decomposition(s3)
    rows = s3d.nongalois("S2", 2, 1, 4, places=["trivial"])
    assert all(a == b for _, a, b in rows)
    assert (2, Fraction(1, 4), Fraction(1, 4)) in rows

    code, out, _ = galmod.run_cli(["--group", "C2", "decompose"])
    assert code == 0 and "components: 2" in out
    code, _, err = galmod.run_cli(["--group", "C2", "--primes", "4", "enumerate"])
    assert code == 2 and "not prime" in err
    try:
        galmod.ModuleType("2:3:(")
    except ValueError:
        pass
    else:
        raise AssertionError("bad type text accepted")

    assert galmod.verify_suite(1)[0]
    print("galmod smoke test passed")


if __name__ == "__main__":
    main()
