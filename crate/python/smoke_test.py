"""Smoke test for the thetagw extension module.

Build and install first, e.g.

    pip install maturin
    maturin develop -m crates/python/Cargo.toml

or copy target/release/libthetagw.so next to this script as thetagw.so.
"""

from fractions import Fraction
import json

import thetagw


def main():
    table = thetagw.compute(2)
    assert table.solved_through_degree == 2
    assert table.two_point(1, 2) == 1
    assert table.two_point(2, 1) == 4
    assert table.three_point_r0(2, 1) == 6
    assert table.two_point(2, 4) == Fraction(7, 2)
    assert table.three_point_r0(3, 3) == 54
    assert table.two_point(2, 2) == 0
    assert table.verify_degree_two_relations()

    assert table.product(1, 5) == "θ_6 + 2 t θ_3 + 30 t^2 θ_0"
    assert table.product(1, 2, bound=1, ascii=True) == "theta_3 + 6 t theta_0"
    assert table.punctured(5, 2, 1, 2) == 39
    assert table.punctured(2, 3, 5, 0) == 1
    try:
        table.punctured(2, 2, 2, 1)
    except ValueError as e:
        assert "grading violation" in str(e)
    else:
        raise AssertionError("off-grade query accepted")
    assert table.punctured(2, 2, 2, 1, allow_offgrade=True) == 0

    back = thetagw.InvariantTable.from_json(table.to_json())
    assert back.degree_values(2) == table.degree_values(2)

    assert thetagw.default_slab()[4] == 286
    assert thetagw.seed_top(3) == 256
    assert thetagw.seed_bottom(3, 256) == 4
    assert thetagw.degree_zero_three_point(2, 3, 5) == 1

    reports = json.loads(thetagw.solve_reports(3))
    assert [r["rank"] for r in reports] == [r["num_unknowns"] for r in reports]

    try:
        thetagw.compute(6)
    except ValueError as e:
        assert "coefficient not configured for d=6" in str(e)
    else:
        raise AssertionError("degree 6 solved without slab data")
    d6 = thetagw.compute(6, slab={6: "-40"})
    assert d6.two_point(17, 1) == -680

    print(table)
    print("degree 3:", thetagw.compute(3).degree_values(3))
    print("ok")


if __name__ == "__main__":
    main()
