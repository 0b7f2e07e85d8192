import pytest

import voa


@pytest.fixture(scope="module")
def n4():
    return voa.Algebra.preset("n4")


def test_scalars():
    assert voa.normalize("(2*k^2+4*k)/(k+2)") == "2*k"
    assert voa.evaluate("6*k", "-5/2") == "-15"
    with pytest.raises(voa.PoleError):
        voa.evaluate("3*k*(3+2*k)/(2+k)", "-2")
    roots, residual = voa.rational_roots("k^2+2*k")
    assert roots == ["-2", "0"] and residual == []
    assert voa.rational_roots("k^2+1") == ([], ["k^2+1"])


def test_generators(n4):
    gens = n4.generators
    assert [g["name"] for g in gens] == ["J", "Jp", "Jm", "T", "Gp", "Gm", "Qp", "Qm"]
    assert [g["charge"] for g in gens] == [0, 1, -1, 0, 1, -1, 0, 0]
    assert gens[4]["weight"] == "3/2" and gens[4]["parity"] == "odd"


def test_products(n4):
    assert n4.product("J", "J", 1) == "(2*k)"
    assert n4.product("Jp", "Jm", 0) == "J"
    assert n4.ope("T", "T") == {3: "(3*k)", 1: "2 T", 0: "d T"}
    assert n4.field("NO(Jm, Jp)") == n4.field("NO(Jp, Jm) - d J")
    ok, residual = n4.verify("NO(Jp, Jm) - NO(Jm, Jp) - d J")
    assert ok and residual == "0"
    ok, residual = n4.verify("NO(Jp, Jm) - NO(Jm, Jp)")
    assert not ok and residual == "d J"


def test_errors(n4):
    with pytest.raises(voa.ParseError):
        n4.field("NO(J,")
    with pytest.raises(voa.UnknownField):
        n4.field("Nope[1]")
    with pytest.raises(voa.UnknownSuite):
        voa.run_suite("nosuchsuite")


def test_jacobi_and_charges():
    sl2 = voa.Algebra.preset("affine_sl2")
    ok, checked = sl2.jacobi("3")
    assert ok and checked > 0
    assert sl2.enumerate("2", charge=0) == ["d J", "NO(J, J)", "NO(Jp, Jm)"]
    assert len(sl2.enumerate("1")) == 3
    assert sl2.central_charge("1/(2*(k+2)) * (1/2 NO(J, J) + NO(Jp, Jm) + NO(Jm, Jp))") == "3*k/(k+2)"


def test_decouple():
    sl2 = voa.Algebra.preset("affine_sl2")
    sol = sl2.decouple("U[4,0]", ["J", "U[0,0]", "U[1,0]", "U[2,0]", "U[3,0]"])
    assert sol["exceptional_levels"] == ["0"]
    assert sl2.decouple("U[4,0]", ["J", "U[0,0]", "U[1,0]", "U[2,0]", "U[3,0]"], level="0") is None


def test_singular(n4):
    gens = ["J", "Qp", "Qm", "T", "U[0,0]", "U[1,0]", "U[2,0]", "A[0,0]", "A[1,0]", "A[2,0]",
            "B[0,0]", "B[1,0]", "B[2,0]", "V[0,0]", "V[1,0]", "V[2,0]"]
    v = "4*U[0,0] - 2*T - 2*d J + NO(J, J)"
    assert n4.singular(v, gens, level="-3/2")
    assert not n4.singular(v, gens, level="1")


def test_gf():
    gf = voa.strong_gen_gf(2, 1, 8)
    assert gf["offset"] == "5/2"
    assert all(c == 1 for c in gf["reduced"])


def test_suite():
    records = voa.run_suite("gf-counts")
    summary = records[-1]
    assert summary["suiteId"] == "gf-counts" and summary["status"] == "pass"
    assert summary["cases"] == len(records) - 1
    assert all("elapsed" not in r for r in records[:-1])
