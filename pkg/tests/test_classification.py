import pytest

from tetragonal.classification import (
    FamilyTag,
    compare_BB1,
    family_vertices,
    intrinsicness_verdict,
    koelman_type,
    make_family,
    matching_families,
    recognize_family,
    scrollar_disambiguation,
    tags_for_genus,
    unique_delta,
)
from tetragonal.errors import FamilyParameterError, TrichotomyViolation, NotInteriorPolygon, NotTetragonal, NotWidthTwo
from tetragonal.invariants import TWO_UPSILON, B_pair, scrollar_invariants
from tetragonal.lattice import SIGMA, LatticePolygon, equivalent, interior_hull, relax

EXAMPLE1 = LatticePolygon([(0, 0), (6, 2), (6, 4), (0, 2)])

ALL_TAGS = [t for g in range(4, 34) for t in tags_for_genus(g)]


def test_tag_validation():
    with pytest.raises(FamilyParameterError):
        FamilyTag("Gamma4k5", 1, 4)
    with pytest.raises(FamilyParameterError):
        FamilyTag("Gamma4k5", 1)
    with pytest.raises(FamilyParameterError):
        FamilyTag("Gamma4k1", 1)
    with pytest.raises(FamilyParameterError):
        FamilyTag("Gamma4k4", 0, 1)
    with pytest.raises(FamilyParameterError):
        FamilyTag("Gamma7", 1)


def test_labels():
    assert FamilyTag("Gamma4k5", 1, 0).label() == "Gamma_9^0"
    assert FamilyTag("Gamma4k1", 2).label() == "Gamma_9"
    assert FamilyTag("Gamma4k4", 1).to_json() == {"tag": "Gamma4k4", "params": {"k": 1}, "label": "Gamma_8"}


def test_tags_per_genus():
    assert [t.label() for t in tags_for_genus(4)] == ["Gamma_4"]
    assert [t.label() for t in tags_for_genus(5)] == ["Gamma_5^0", "Gamma_5^1", "Gamma_5^2"]
    assert [t.label() for t in tags_for_genus(9)] == ["Gamma_9^0", "Gamma_9^1", "Gamma_9^2", "Gamma_9^3", "Gamma_9"]
    assert tags_for_genus(6) == [] and tags_for_genus(10) == []
    assert [t.label() for t in tags_for_genus(7)] == ["Gamma_7"]


@pytest.mark.parametrize("tag", ALL_TAGS, ids=lambda t: t.label())
def test_family_polygons_have_stated_invariants(tag):
    P = make_family(tag)
    assert len(P.points) == tag.genus
    delta = relax(P).polygon
    assert interior_hull(delta) == P
    assert B_pair(delta) == tag.expected_B
    assert tag in matching_families(P)


def test_family_members_are_pairwise_inequivalent():
    for g in range(4, 34):
        tags = tags_for_genus(g)
        polys = [make_family(t) for t in tags]
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                assert not equivalent(polys[i], polys[j])[0], (tags[i], tags[j])


def test_gamma4_relaxes_to_two_upsilon():
    assert equivalent(relax(make_family(FamilyTag("Gamma4k4", 0))).polygon, TWO_UPSILON)[0]


def test_recognize_example1_interior():
    gamma = interior_hull(EXAMPLE1)
    assert recognize_family(gamma) == FamilyTag("Gamma4k5", 1, 3)


def test_koelman_types():
    # middle-row boundary points after strip normalization
    assert koelman_type(make_family(FamilyTag("Gamma4k5", 1, 0))) == 2
    assert koelman_type(make_family(FamilyTag("Gamma4k4", 1))) == 1
    assert koelman_type(make_family(FamilyTag("Gamma4k3", 2))) == 1
    assert koelman_type(LatticePolygon([(0, 0), (2, 0), (0, 2)])) == 2
    assert koelman_type(LatticePolygon([(0, 0), (2, 0), (1, 2)])) == 0
    with pytest.raises(NotWidthTwo):
        koelman_type(SIGMA.scale(3))


def test_compare_strict_and_mutation():
    gamma = make_family(FamilyTag("Gamma4k4", 1))
    cmp = compare_BB1(gamma)
    assert cmp.relation == "less" and cmp.consistent

    def broken(tag):
        v = family_vertices(tag)
        if tag.kind == "Gamma4k4":
            # widen the rows by one column: no longer the family polygon
            return [(x + (1 if x > 0 else 0), y) for x, y in v]
        return v

    with pytest.raises(TrichotomyViolation):
        compare_BB1(gamma, builder=broken)
    assert not compare_BB1(gamma, strict=False, builder=broken).consistent


def test_unique_delta():
    gamma = make_family(FamilyTag("Gamma4k3", 1))
    assert unique_delta(gamma) == relax(gamma).polygon
    non_family = interior_hull(LatticePolygon([(0, 0), (8, 0), (8, 4), (0, 4)]))
    with pytest.raises(NotInteriorPolygon):
        unique_delta(non_family)


# ---------------------------------------------------------------- intrinsicness


def test_disambiguation_values():
    assert scrollar_disambiguation(9) == {"Gamma_g": [1, 2, 3], "Gamma_g^0": [1, 1, 4]}
    assert scrollar_disambiguation(13) == {"Gamma_g": [2, 3, 5], "Gamma_g^0": [2, 2, 6]}


def test_example1_verdict_is_conditional():
    v = intrinsicness_verdict(EXAMPLE1)
    assert v.status == "conditional_on_family"
    assert v.family == FamilyTag("Gamma4k5", 1, 3)
    assert v.scrollar_expected["observed"] == [1, 1, 4]
    assert v.scrollar_expected["matches"] == ["Gamma_g^0"]
    assert v.g_mod_4 == 1


def test_verdict_cases():
    assert intrinsicness_verdict(relax(make_family(FamilyTag("Gamma4k4", 1))).polygon).status == "not_guaranteed"
    assert intrinsicness_verdict(relax(make_family(FamilyTag("Gamma4k5", 1, 0))).polygon).status == "guaranteed"
    assert intrinsicness_verdict(relax(make_family(FamilyTag("Gamma4k5", 1, 2))).polygon).status == "conditional_on_family"
    assert intrinsicness_verdict(relax(make_family(FamilyTag("Gamma4k3", 1))).polygon).status == "guaranteed"
    rect = LatticePolygon([(0, 0), (5, 0), (5, 4), (0, 4)])  # g = 12, not a family member
    assert intrinsicness_verdict(rect).status == "guaranteed"
    with pytest.raises(NotTetragonal):
        intrinsicness_verdict(SIGMA.scale(4))


@pytest.mark.parametrize("g", [9, 13, 17])
def test_family_scrollar_formulas(g):
    k = (g - 5) // 4
    zero = relax(make_family(FamilyTag("Gamma4k5", k, 0))).polygon
    assert list(scrollar_invariants(zero)) == scrollar_disambiguation(g)["Gamma_g^0"]
    one = relax(make_family(FamilyTag("Gamma4k1", (g - 1) // 4))).polygon
    assert list(scrollar_invariants(one)) == scrollar_disambiguation(g)["Gamma_g"]
