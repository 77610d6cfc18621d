"""End-to-end smoke test of the Python bindings.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import pathlib
import sys

import factoriality as fx

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"


def poly_fixture(name):
    return fx.Polynomial.from_poly_file((FIXTURES / name).read_text())


def main():
    f = fx.Polynomial("x0^2 + x1^2", 3)
    assert f.degree == 2 and f.nvars == 3 and f.field == "Q"
    assert (f * f) == f**2
    assert fx.Polynomial.from_poly_file(f.to_poly_file()) == f

    assert fx.check(5, [2, 2])["verdict"] == "Factorial"
    assert fx.check(3, [2, 2, 2, 2], position="plane")["verdict"] == "NonFactorial"
    assert fx.check(3, [2, 2, 2, 2])["verdict"] == "Unknown"

    assert fx.intersection_number(3, [1, 1, 1, 1]) == 77
    assert fx.intersection_number(4, [4]) == 0
    # exact integers, no overflow
    assert fx.intersection_number(10**6, [], n=4) == 10**24

    node = fx.analyze(poly_fixture("single_point_d4_m2.poly"))
    (pt,) = node["primary"]["points"]
    assert (pt["multiplicity"], pt["ordinary"], pt["milnor"]) == (2, True, 1)
    assert node["agreement"]["status"] == "agree"

    kollar = fx.analyze(poly_fixture("kollar.poly"))
    assert [p["ordinary"] for p in kollar["primary"]["points"]] == [False]

    assert fx.analyze(poly_fixture("fermat_quintic.poly"))["primary"]["points"] == []

    g, record = fx.construct("plane-pencil", t=1, delta=2, seed=7)
    assert g.degree == 3 and len(record["expected_singular_points"]) == 4
    assert "x0=x1=0" in record["non_factorial_witness"]
    again, _ = fx.construct("plane-pencil", t=1, delta=2, seed=7)
    assert again == g
    assert len(fx.analyze(g)["primary"]["points"]) == 4

    cone, record = fx.construct("cone", g=fx.Polynomial("x0^4+x1^4+x2^4+x3^4", 4))
    assert cone.nvars == 5 and record["expected_multiplicity"] == 4

    nodes = [[0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 1, 1, 1]]
    rep = fx.defect(nodes, 3)
    assert (rep["defect"], rep["b4"], rep["coplanar"]) == (1, 2, True)
    assert fx.defect([[1, 0, 0, 0, 0], ["1/2", 0, 1, 0, 0]], 3)["defect"] == 0

    for bad in (lambda: fx.Polynomial("x9", 3), lambda: fx.check(3, [1]), lambda: fx.construct("nope")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    try:
        fx.analyze(poly_fixture("fermat_quintic.poly"), groebner_budget=3)
    except fx.BudgetExceeded:
        pass
    else:
        raise AssertionError("expected BudgetExceeded")
    assert issubclass(fx.ConstructionFailed, fx.FactorialityError)

    print("python smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
