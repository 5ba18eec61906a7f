import copy

import pytest

from ausgen import mutation as mu
from ausgen.algfile import load_example, parse_algebra
from ausgen.repmod import RepError

A2 = "vertices: 1, 2\narrows:\n  a: 1 -> 2\nbound: 2\n"


@pytest.fixture
def m0(ex1):
    return mu.canonical_M0(ex1)


def test_canonical_generators(ex1, m0):
    assert sorted(m0.labels()) == sorted(["P1", "P2", "P1/soc", "P2/soc", "S1", "S2"])
    assert [e.rep.dims for e in m0.entries if e.projective] == [(3, 1), (1, 3)]
    l0 = mu.canonical_L0(ex1)
    assert sorted(l0.labels()) == sorted(["P1", "P2", "radP1", "radP2", "S1", "S2"])
    assert not m0.slice_form() and m0.min_level() == 0


def test_canonical_needs_selfinjective():
    with pytest.raises(RepError):
        mu.canonical_M0(parse_algebra(A2))


def test_levels_and_labels(m0):
    moved = mu.shift(m0, 1)
    assert moved.slice_form()
    assert {e.label: e.level for e in moved.nonprojective} == {
        "tau^-1(P1/soc)": 3, "tau^-1(P2/soc)": 3, "tau^-1S1": 2, "tau^-1S2": 2}
    assert mu.shift(moved, -1).equivalent(m0)
    assert mu.shift(m0, -1).labels()[-1] == "tauS2"


def test_example_one_certificates(m0):
    gens, certs = m0, []
    for pos in ("S1", "S2", "P1/soc", "P2/soc"):
        gens, cert = mu.mutate_via_shift(gens, pos)
        certs.append(cert)
    n = m0.pres.n
    for cert in certs:
        assert cert.verdict == "accept" == mu.recheck(cert)
        assert cert.slice_form and cert.branch == "stable-hom"
        assert cert.fast_verdict == cert.general_verdict == "accept"
        assert len(cert.top_coverage) == n
        assert cert.stable_hom_dim and cert.stable_hom_dim_unshifted
    assert gens.equivalent(mu.shift(m0, 1))


def test_general_branch_outside_slice_form(m0):
    _, cert = mu.mutate(m0, "S1")
    assert cert.branch == "relative-syzygy" and cert.verdict == "accept"
    assert not cert.slice_form and cert.fast_verdict is None
    assert mu.recheck(cert) == "accept"


def test_not_applicable_positions(m0):
    same, cert = mu.mutate(m0, "P1")
    assert same is m0 and cert.verdict == "not-applicable"
    same, cert = mu.mutate(m0, "P1/soc")
    assert same is m0 and cert.verdict == "not-applicable"
    assert "middle term" in cert.reason
    assert mu.recheck(cert) == "not-applicable"


def test_tampered_certificate_is_detected(m0):
    _, cert = mu.mutate_via_shift(m0, "S1")
    bad = copy.deepcopy(cert)
    label = next(iter(bad.middle_term["multiplicities"]))
    bad.middle_term["multiplicities"][label] += 1
    with pytest.raises(RepError):
        mu.recheck(bad)
    flipped = copy.deepcopy(cert)
    flipped.stable_hom_dim = 0
    flipped.omega = {"dims": [0, 0], "summands": [], "multiplicities": None}
    with pytest.raises(RepError):
        mu.recheck(flipped)


def test_shift_equivariance(m0):
    one = mu.shift(m0, 1)
    two = mu.shift(m0, 2)
    a, ca = mu.mutate(one, "tau^-1S1")
    b, cb = mu.mutate(two, "tau^-2S1")
    assert ca.verdict == cb.verdict == "accept"
    assert ca.stable_hom_dim == cb.stable_hom_dim
    assert mu.shift(a, 1).equivalent(b)


def test_source_test(m0):
    one = mu.shift(m0, 1)
    sources = [e.label for k, e in enumerate(one.entries) if mu.is_source(one, k)]
    assert sources == ["tau^-1S1", "tau^-1S2"]


def test_enumeration_is_deterministic(ex1):
    a = mu.enumerate_family(ex1, "M", 4)
    b = mu.enumerate_family(ex1, "M", 4)
    assert a.graphml() == b.graphml()
    assert [s.labels() for s in a.sets] == [s.labels() for s in b.sets]
    assert len(a.sets) == 4 and "<graphml" in a.graphml()


def test_simples_first_strategy(ex1):
    fam = mu.enumerate_family(ex1, "M", 3, "simples-first")
    for s in fam.sets[1:]:
        assert any(lab.startswith("tau^-1S") for lab in s.labels())
    with pytest.raises(ValueError):
        mu.enumerate_family(ex1, "M", 3, "bogus")


def test_left_side_family(ex1):
    fam = mu.enumerate_family(ex1, "L", 3)
    assert fam.sets[0].labels() == mu.canonical_L0(ex1).labels()
    assert any("tauS1" in s.labels() for s in fam.sets[1:])


def test_reach_and_json(ex1, m0):
    gens, certs = mu.reach(m0, {"S1": 1, "S2": 1})
    assert all(c.verdict == "accept" for c in certs)
    js = gens.to_json(matrices=True)
    assert {e["label"] for e in js["entries"]} >= {"tau^-1S1", "tau^-1S2"}
    assert all("arrows" in e for e in js["entries"])


def test_example_three_rejection_agrees():
    pres = load_example(3, 2)
    from ausgen.flows import EXAMPLE3_CANDIDATE, EXAMPLE3_TARGET
    m, _ = mu.reach(mu.canonical_M0(pres), EXAMPLE3_TARGET)
    same, cert = mu.mutate(mu.shift(m, 1), EXAMPLE3_CANDIDATE)
    assert cert.verdict == "reject" == mu.recheck(cert)
    assert cert.branch == "syzygy-membership" and cert.stable_hom_dim == 0
    assert cert.general_verdict == "reject"
