from fractions import Fraction as Q

import numpy as np
import pytest

from tempered import _exact as ex
from tempered.presets import all_presets, group_from_spec, preset
from tempered.realform import (
    COMPACT,
    NONCOMPACT,
    RealFormError,
    attach_involution,
    cayley_transform,
    classify_cartans,
    cuspidal_parabolic,
    merge_positive_systems,
    real_weyl_group,
    restricted_roots,
)
from tempered.rootsys import build_root_datum

A1 = build_root_datum([[2]])
A2 = build_root_datum([[2, -1], [-1, 2]])


def test_attach_rank_one():
    c = attach_involution(A1, [[-1]], {0: "noncompact"})
    assert (c.dim_t, c.dim_a) == (1, 0)
    s = attach_involution(A1, [[1]], {})
    assert (s.dim_t, s.dim_a) == (0, 1)


def _su21_grading_from_matrices():
    """Grade the roots of sl(3) for su(2,1) from the Cartan involution X -> J X J.

    With J = diag(1,1,-1) it acts on each root space by a sign; +1 means compact.
    """
    j = np.diag([1, 1, -1])
    roots = {(0, 1): (Q(1), Q(0)), (1, 2): (Q(0), Q(1)), (0, 2): (Q(1), Q(1))}
    out = {}
    for (i, k), root in roots.items():
        e = np.zeros((3, 3))
        e[i, k] = 1
        sign = (j @ e @ j)[i, k]
        out[root] = COMPACT if sign > 0 else NONCOMPACT
    return out


def test_su21_grading_matches_defining_matrices():
    c = preset("su21").cartan("compact")
    for root, grade in _su21_grading_from_matrices().items():
        assert c.grade[root] == grade


def test_invalid_involutions():
    with pytest.raises(RealFormError, match="invalid involution"):
        attach_involution(A2, [[0, 1], [1, 1]], {})
    with pytest.raises(RealFormError, match="cover exactly the imaginary roots"):
        attach_involution(A1, [[-1]], {})
    with pytest.raises(RealFormError):
        attach_involution(A1, [[-1]], {"1": "compact", "-1": "noncompact"})


def test_cayley_examples():
    g = preset("sl2r")
    split = cayley_transform(g.cartan("compact"), (1,))
    assert split.tau == ((Q(1),),)
    su21 = preset("su21").cartan("compact")
    c = cayley_transform(su21, (0, 1))
    assert c.dim_a == 1 and c.imaginary_roots == ()
    with pytest.raises(RealFormError, match="Cayley transform undefined"):
        cayley_transform(preset("su2").cartan("compact"), (1,))


@pytest.mark.parametrize("gid,count", [("sl2r", 2), ("su11", 2), ("su2", 1), ("su21", 2), ("a1a1", 1)])
def test_classification_counts_any_order(gid, count):
    g = preset(gid)
    expected = sorted(c.key for c in g.cartans)
    for seed in [None, 0, 1, 2, 3, 4, 5]:
        got = classify_cartans(g.fundamental, seed=seed)
        assert len(got) == count
        assert sorted(c.key for c in got) == expected


def test_classification_needs_fundamental():
    with pytest.raises(RealFormError):
        classify_cartans(preset("sl2r").cartan("split"))


@pytest.mark.parametrize("g", all_presets(), ids=lambda g: g.id)
def test_one_compact_class_when_equal_rank(g):
    if g.fundamental.dim_a == 0:
        assert sum(c.dim_a == 0 for c in g.cartans) == 1


def test_restricted_examples():
    split = preset("sl2r").cartan("split")
    rs = restricted_roots(split)
    assert set(rs.restricted_roots) == {(Q(1),), (Q(-1),)}
    assert rs.mult[(Q(1),)] == 1 and rs.rho_a == (Q(1, 2),)
    empty = restricted_roots(preset("sl2r").cartan("compact"))
    assert not empty and empty.empty_reason


@pytest.mark.parametrize("g", all_presets(), ids=lambda g: g.id)
def test_multiplicity_conservation_and_trace(g):
    for c in g.cartans:
        rs = restricted_roots(c)
        nonzero = [r for r in c.datum.roots if not ex.is_zero(c.restrict_a(r))]
        assert sum(rs.mult.values()) == len(nonzero)
        p = cuspidal_parabolic(c)
        total = ex.zero(c.datum.rank)
        for r in p.n_roots:
            total = ex.add(total, c.restrict_a(r))
        assert total == ex.neg(p.modular_exponent)
        assert p.modular_exponent == ex.scale(2, rs.rho_a)


def test_su21_restricted_bc1():
    c = preset("su21").cartan("split")
    rs = restricted_roots(c)
    assert sorted(rs.mult[v] for v in rs.positive) == [1, 2]
    assert sum(rs.mult[v] for v in rs.positive) == 3
    p = cuspidal_parabolic(c)
    assert len(p.n_roots) == 3 and p.m_roots == ()


def test_compact_parabolic_is_everything():
    c = preset("su21").cartan("compact")
    p = cuspidal_parabolic(c)
    assert set(p.m_roots) == set(c.datum.roots) and p.n_roots == ()
    assert ex.is_zero(p.modular_exponent)


@pytest.mark.parametrize("g", all_presets(), ids=lambda g: g.id)
def test_merge_restricts_back(g):
    for c in g.cartans:
        pos = merge_positive_systems(c)
        assert len(pos) == len(c.datum.positive_roots)
        restricted = {c.restrict_a(r) for r in pos} - {ex.zero(c.datum.rank)}
        assert restricted == set(restricted_roots(c).positive)
        assert {r for r in pos if ex.is_zero(c.restrict_a(r))} == set(c.positive_imaginary)


def test_su21_merge_exhaustive():
    """Brute force: of all 6 Weyl chambers exactly one induces the chosen a- and t-systems."""
    c = preset("su21").cartan("split")
    a_plus = set(restricted_roots(c).positive)
    hits = []
    for w in range(c.weyl.order):
        pos = {c.weyl.act(w, r) for r in c.datum.positive_roots}
        if {c.restrict_a(r) for r in pos} - {ex.zero(2)} == a_plus:
            hits.append(pos)
    assert len(hits) == 1
    assert set(merge_positive_systems(c)) == hits[0]


def test_merge_incompatible():
    c = preset("sl2r").cartan("split")
    with pytest.raises(RealFormError, match="no compatible positive system"):
        merge_positive_systems(c, [(1,), (-1,)])


def test_real_weyl_group_orders():
    assert len(real_weyl_group(preset("sl2r").cartan("compact"))) == 1
    assert len(real_weyl_group(preset("sl2r").cartan("split"))) == 2
    assert len(real_weyl_group(preset("su2").cartan("compact"))) == 2
    assert len(real_weyl_group(preset("a1a1").fundamental)) == 2


def test_group_spec_json(tmp_path):
    spec = tmp_path / "g.json"
    spec.write_text('{"cartan_matrix": [[2]], "tau": [[-1]], "grading": {"0": "noncompact"}, "name": "mine"}')
    g = group_from_spec(str(spec))
    assert g.id == "mine" and len(g.cartans) == 2
    assert group_from_spec({"preset": "su21"}) is preset("su21")
