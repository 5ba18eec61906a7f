import numpy as np
import pytest
from _util import brute_force_dim

from ausgen.algfile import AlgebraFileError, example_text, load_example, parse_algebra
from ausgen.presentations import PresentationError, build, opposite, validate_hypotheses
from ausgen.repmod import projective

KX2 = """\
vertices: 1
arrows:
  x: 1 -> 1
relations:
  x*x
bound: 3
"""

A2 = """\
vertices: 1, 2
arrows:
  a: 1 -> 2
bound: 2
"""


@pytest.mark.parametrize("number", [1, 2, 3])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_dimension_matches_path_enumeration(number, p):
    pres = load_example(number, p)
    assert pres.dim == brute_force_dim(pres)


def test_cartan_matrix_of_example_one(ex1):
    # Paths out of vertex 1: e1, c, a, c*c = a*b; out of vertex 2: e2, d, b, d*d = b*a.
    assert [projective(ex1, i).dims for i in range(2)] == [(3, 1), (1, 3)]
    assert ex1.radical_layers() == [2, 4, 2]


def test_projectives_of_longer_examples():
    pres = load_example(3, 2)
    dims = [projective(pres, i).dims for i in range(pres.n)]
    assert dims[2] == (0, 1, 2, 1, 0)
    assert sum(sum(d) for d in dims) == pres.dim == 20


def test_opposite_is_an_involution(ex1):
    op = opposite(ex1)
    assert opposite(op) is ex1
    assert op.dim == ex1.dim
    assert [projective(op, i).dims for i in range(2)] == [(3, 1), (1, 3)]


def test_diagrammatic_convention():
    pres = load_example(1, 2)
    ab = pres.normal_form(0, (0, 1))  # a then b: a loop at vertex 1
    cc = pres.normal_form(0, (2, 2))
    assert np.any(ab) and np.array_equal(ab, cc)
    with pytest.raises(PresentationError):
        pres.normal_form(0, (1,))  # b starts at vertex 2


@pytest.mark.parametrize("number", [1, 2, 3])
def test_examples_satisfy_hypotheses(number):
    rep = validate_hypotheses(load_example(number, 3))
    assert rep.rad_cube_zero and rep.selfinjective and rep.ok
    assert rep.weakly_symmetric
    assert rep.to_json()["infinite_type"] == "assumed"


def test_hypotheses_detect_non_selfinjective():
    rep = validate_hypotheses(parse_algebra(A2))
    assert not rep.selfinjective and not rep.ok
    assert validate_hypotheses(parse_algebra(KX2)).selfinjective


def test_build_rejects_bad_input():
    with pytest.raises(PresentationError):
        build(["1"], [("a", "1", "2")], [], 2)
    with pytest.raises(PresentationError):
        build(["1", "2"], [("a", "1", "2"), ("a", "2", "1")], [], 2)
    with pytest.raises(ValueError):
        build(["1"], [], [], 2, p=6)


def test_example_text_round_trips():
    text = example_text(1)
    pres = parse_algebra(text, p=5)
    assert pres.p == 5 and pres.dim == 8 and pres.name == "ex1"


def test_prime_line_and_default():
    assert parse_algebra(A2).p == 2
    assert parse_algebra("prime: 3\n" + A2).p == 3
    assert parse_algebra("prime: 3\n" + A2, p=5).p == 5


@pytest.mark.parametrize("text,line,fragment", [
    ("vertices: 1\narrows:\n  a 1 -> 1\nbound: 2\n", 3, "expected 'label"),
    ("vertices: 1\narrows:\n  a: 1 -> 3\nbound: 2\n", 3, "unknown vertex"),
    ("vertices: 1\narrows:\n  a: 1 -> 1\nrelations:\n  a*q\nbound: 2\n", 5, "unknown arrow"),
    ("vertices: 1, 2\narrows:\n  a: 1 -> 2\nrelations:\n  a*a\nbound: 3\n", 5, "a"),
    ("vertices: 1\ncolour: red\nbound: 2\n", 2, "unknown key"),
    ("vertices: 1\nbound: two\n", 2, "integer"),
    ("vertices: 1\nprime: x\nbound: 2\n", 2, "integer"),
])
def test_line_precise_errors(text, line, fragment):
    with pytest.raises(AlgebraFileError) as err:
        parse_algebra(text, source="f.alg")
    assert err.value.line == line
    assert f"f.alg:{line}:" in str(err.value)
    assert fragment in str(err.value)


def test_missing_fields():
    with pytest.raises(AlgebraFileError, match="bound"):
        parse_algebra("vertices: 1\n")
