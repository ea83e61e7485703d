from __future__ import annotations
import json
import logging
import pytest
from pytest_mock import MockerFixture
from fusionkit.prv import (
    FusionMismatchError,
    PRVReport,
    classical_prv_weights,
    collapsed_fusion,
    collapsed_multiplicities,
    dominating_pairs,
    explicit_fusion,
    grouped_tensor,
    proposition_check,
    verify_theorem,
)
from fusionkit.fusion import (
    OnWall,
    Reduced,
    affine_reflect_theta,
    alcove_reduce_shifted,
    fusion_product,
    pi_map,
)
from fusionkit.repcalc import VirtualModule, tensor_decompose
from fusionkit.rootsys import AlgebraData, build_algebra
from fusionkit.util import NotDominatingError, NotInAlcoveError, Weight


def V(*coords: int) -> Weight:
    return Weight(coords)


def test_classical_prv_weights(a1: AlgebraData, a2: AlgebraData) -> None:
    assert classical_prv_weights(a1, V(4), V(2)) == {V(6), V(2)}
    prv = classical_prv_weights(a2, V(2, 2), V(1, 1))
    assert len(prv) == 6
    assert V(3, 3) in prv
    assert V(1, 1) not in prv


def test_grouped_tensor_folded(a1: AlgebraData) -> None:
    g = grouped_tensor(a1, V(4), V(2), 4)
    assert [t.nu for t in g.non_extremal_in_alcove] == [V(0)]
    assert [t.nu for t in g.extremal_in_alcove] == [V(-2)]
    assert [t.xi for t in g.extremal_folded] == [V(6)]
    assert g.non_extremal_on_wall == ()
    assert g.extremal_on_wall == ()
    assert g.non_extremal_folded == ()
    assert g.to_module() == tensor_decompose(a1, V(4), V(2))


def test_grouped_tensor_wall(a1: AlgebraData) -> None:
    g = grouped_tensor(a1, V(3), V(2), 4)
    assert [t.xi for t in g.extremal_on_wall] == [V(5)]
    assert [t.xi for t in g.extremal_in_alcove] == [V(1)]
    assert [t.xi for t in g.non_extremal_in_alcove] == [V(3)]
    assert all(not group for group in (g.extremal_folded, g.non_extremal_folded))


def test_grouped_tensor_errors(a1: AlgebraData, a2: AlgebraData) -> None:
    with pytest.raises(NotDominatingError) as excinfo:
        grouped_tensor(a2, V(1, 1), V(1, 1), 2)
    assert excinfo.value.mu == V(1, 1)
    with pytest.raises(NotInAlcoveError):
        grouped_tensor(a1, V(5), V(2), 4)


def test_proposition_check_a1(a1: AlgebraData) -> None:
    (w,) = proposition_check(a1, V(4), V(2), 4)
    assert w.xi == V(6)
    assert w.image == V(4)
    assert w.kind == "extremal"
    assert w.image_level == 4
    assert w.in_p_ell
    assert w.level_in_range
    assert not w.is_prv
    assert (w.string_lower, w.string_position, w.string_upper) == (-2, -1, 0)
    assert w.strictly_inside
    assert w.holds


def test_proposition_check_non_extremal(a2: AlgebraData) -> None:
    # (4,1) and (1,4) sit on the wall; only (3,3) folds
    witnesses = proposition_check(a2, V(2, 2), V(1, 1), 4)
    assert {w.xi for w in witnesses} == {V(3, 3)}
    assert all(w.holds for w in witnesses)
    assert all(w.kind == "extremal" for w in witnesses)


@pytest.mark.parametrize(
    "ell,s",
    [
        (4, "V(2)"),
        (5, "V(2)+V(4)"),
        (6, "V(2)+V(4)+V(6)"),
    ],
)
def test_explicit_fusion_a1(a1: AlgebraData, ell: int, s: str) -> None:
    assert str(explicit_fusion(a1, V(4), V(2), ell)) == s
    assert str(collapsed_fusion(a1, V(4), V(2), ell)) == s


def test_collapsed_multiplicities_a1(a1: AlgebraData) -> None:
    assert collapsed_multiplicities(a1, V(4), V(2), 4) == {V(0): 0}
    assert collapsed_multiplicities(a1, V(4), V(2), 6) == {V(0): 1}


def test_explicit_fusion_mismatch(a1: AlgebraData, mocker: MockerFixture) -> None:
    mocker.patch(
        "fusionkit.prv.fusion_product", return_value=VirtualModule.irreducible(V(0))
    )
    with pytest.raises(FusionMismatchError) as excinfo:
        explicit_fusion(a1, V(4), V(2), 4)
    assert excinfo.value.expected == VirtualModule.irreducible(V(0))
    assert excinfo.value.got == VirtualModule.irreducible(V(2))


def test_verify_theorem_a1(a1: AlgebraData) -> None:
    report = verify_theorem(a1, V(4), V(2), 4)
    assert report.applicable
    assert [(p.orbit_weight, p.weight) for p in report.prv_weights_in_p_ell] == [
        (V(-2), V(2))
    ]
    assert [(m.weight, m.multiplicity) for m in report.fusion_multiplicities] == [
        (V(2), 1)
    ]
    assert len(report.proposition_witnesses) == 1
    assert report.passed
    assert report.proposition_holds
    assert report.explicit_formula_agrees
    assert report.bounded_by_tensor
    assert report.ok


def test_verify_theorem_wall_only(a1: AlgebraData) -> None:
    report = verify_theorem(a1, V(3), V(2), 4)
    assert report.ok
    assert report.proposition_witnesses == []
    assert [p.weight for p in report.prv_weights_in_p_ell] == [V(1)]


def test_verify_theorem_not_applicable(a2: AlgebraData) -> None:
    report = verify_theorem(a2, V(1, 1), V(1, 1), 2)
    assert not report.applicable
    assert report.prv_weights_in_p_ell == []
    assert report.ok


def test_verify_theorem_failure(
    a1: AlgebraData, mocker: MockerFixture, caplog: pytest.LogCaptureFixture
) -> None:
    mocker.patch(
        "fusionkit.prv.fusion_product", return_value=VirtualModule.irreducible(V(0))
    )
    with caplog.at_level(logging.WARNING, logger="fusionkit.prv"):
        report = verify_theorem(a1, V(4), V(2), 4)
    assert report.applicable
    assert not report.passed
    assert not report.explicit_formula_agrees
    assert report.proposition_holds
    assert not report.ok
    assert "PRV check failed for A1" in caplog.text


def test_report_json(a1: AlgebraData) -> None:
    report = verify_theorem(a1, V(4), V(2), 4)
    data = json.loads(report.model_dump_json(by_alias=True))
    assert data["algebra"] == "A1"
    assert data["level"] == 4
    assert data["lambda"] == [4]
    assert data["mu"] == [2]
    assert data["proposition_witnesses"][0]["image"] == [4]
    assert PRVReport.model_validate(data) == report


def test_dominating_pairs_a1(a1: AlgebraData) -> None:
    assert dominating_pairs(a1, 2) == [(V(1), V(1)), (V(2), V(1)), (V(2), V(2))]
    assert dominating_pairs(a1, 2, include_zero_mu=True) == [
        (V(0), V(0)),
        (V(1), V(0)),
        (V(1), V(1)),
        (V(2), V(0)),
        (V(2), V(1)),
        (V(2), V(2)),
    ]


def test_dominating_pairs_a2(a2: AlgebraData) -> None:
    assert dominating_pairs(a2, 2) == [(V(1, 1), V(0, 1)), (V(1, 1), V(1, 0))]
    pairs = dominating_pairs(a2, 3)
    assert (V(1, 1), V(1, 0)) in pairs
    assert (V(2, 1), V(1, 1)) not in pairs
    assert (V(2, 2), V(1, 1)) not in pairs


@pytest.mark.parametrize(
    "series,rank,max_level",
    [("A", 1, 6), ("A", 2, 6), ("B", 2, 6), ("G", 2, 6), ("A", 3, 3), ("C", 3, 3)],
)
def test_theorem_grid(series: str, rank: int, max_level: int) -> None:
    alg = build_algebra(series, rank)
    for ell in range(1, max_level + 1):
        for lam, mu in dominating_pairs(alg, ell):
            report = verify_theorem(alg, lam, mu, ell)
            assert report.applicable
            assert report.ok, report.model_dump_json(by_alias=True)
            fusion = fusion_product(alg, lam, mu, ell)
            assert explicit_fusion(alg, lam, mu, ell) == fusion
            for p in report.prv_weights_in_p_ell:
                assert fusion.coefficient(p.weight) == 1


@pytest.mark.parametrize(
    "series,rank,max_level",
    [("A", 1, 6), ("A", 2, 6), ("B", 2, 6), ("G", 2, 6), ("A", 3, 3), ("C", 3, 3)],
)
def test_folded_terms_map_to_reflection(series: str, rank: int, max_level: int) -> None:
    alg = build_algebra(series, rank)
    for ell in range(1, max_level + 1):
        for lam, mu in dominating_pairs(alg, ell):
            g = grouped_tensor(alg, lam, mu, ell)
            for t in g.non_extremal_on_wall + g.extremal_on_wall:
                assert alg.level(t.xi) == ell + 1
                assert alcove_reduce_shifted(alg, t.xi, ell) == OnWall()
                assert pi_map(alg, VirtualModule.irreducible(t.xi), ell) == VirtualModule()
            for t in g.non_extremal_folded + g.extremal_folded:
                assert ell + 1 < alg.level(t.xi) <= 2 * ell
                image = affine_reflect_theta(alg, t.xi, ell)
                assert alcove_reduce_shifted(alg, t.xi, ell) == Reduced(image, -1), (lam, mu, t)
                assert pi_map(alg, VirtualModule.irreducible(t.xi), ell) == (
                    VirtualModule.irreducible(image, -1)
                )
