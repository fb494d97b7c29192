import pytest

from k3salem import matrix as mx
from k3salem.isometry import so_plus_generator
from k3salem.k3class import (
    BIRO_EXCEPTIONS,
    ClassificationError,
    biro_slice,
    classify_trace,
    fixed_point_count,
    in_A_eps,
    oguiso_classification,
    realizable,
    witness,
)
from k3salem.qform import EvenLattice, gl2_equivalent, narrow_class_number
from k3salem.sweeps import biro, completeness, soundness

G = EvenLattice.from_gram
CO = G(((4, 2), (2, -4)))
U = ((5, 8), (8, 13))


@pytest.mark.parametrize("eps, alpha, expected", [
    (1, 4, True), (1, 3, False), (-1, 13, False), (-1, 9, True),
    (-1, 4, True), (-1, 5, False), (-1, 17, False), (-1, 18, True), (1, 5, True),
])
def test_in_A_eps(eps, alpha, expected):
    assert in_A_eps(eps, alpha) is expected


def test_in_A_eps_rejects_bad_eps():
    with pytest.raises(ValueError):
        in_A_eps(0, 4)


@pytest.mark.parametrize("eps, alpha, gram, g, trace", [
    (1, 4, ((2, 4), (4, 2)), ((-1, -4), (4, 15)), 14),
    (-1, 4, ((4, 2), (2, -4)), ((5, 8), (8, 13)), 18),
    (-1, 11, ((10, 5), (5, -10)), ((34, 55), (55, 89)), 123),
])
def test_witness_examples(eps, alpha, gram, g, trace):
    rep = witness(eps, alpha)
    assert rep.lattice.gram == gram
    assert rep.g.m == g
    assert rep.trace == trace
    assert rep.checks.passed


def test_witness_rejects_inadmissible():
    for eps, alpha in [(1, 3), (-1, 5), (-1, 13)]:
        with pytest.raises(ValueError):
            witness(eps, alpha)


def test_witness_json_has_salem_polynomial():
    js = witness(1, 4).to_json()
    assert js["salem_polynomial"] == [1, -14, 1]
    assert js["checks"]["passed"] is True


def test_witness_squarefree_odd_case_uses_class_search():
    # 9^2 + 4 = 85 is squarefree with two narrow classes
    rep = witness(-1, 9)
    assert "class search" in rep.construction
    assert rep.trace == 83 and rep.checks.passed


def test_soundness_sweep():
    res = soundness(50)
    assert res.passed, res.failures


def test_realizable_examples():
    assert realizable(CO, U, -1).passed
    bad = realizable(G(((2, 1), (1, -2))), so_plus_generator(G(((2, 1), (1, -2)))).m, -1)
    assert not bad.passed and "in_L_prime" in bad.failing()
    ident = realizable(CO, mx.IDENTITY, 1)
    assert ident.failing() == ["nontrivial_so_plus"]
    assert realizable(CO, U, 1).failing() == ["acts_eps"]


def test_realizable_rejects_non_isometry_and_det_minus_one():
    assert "nontrivial_so_plus" in realizable(CO, ((1, 1), (0, 1)), 1).failing()
    assert "nontrivial_so_plus" in realizable(CO, ((1, 0), (1, -1)), 1).failing()


def test_classify_18_minus_one():
    res = classify_trace(18, -1)
    assert res.alpha == 4
    assert len(res.realizations) == 1
    r = res.realizations[0]
    assert r.D == 20 and gl2_equivalent(r.lattice, CO) is not None
    assert {D for D, _, _ in res.rejected} == {20, 5}


def test_classify_14_plus_one_includes_d12():
    res = classify_trace(14, 1)
    assert any(r.D == 12 and gl2_equivalent(r.lattice, G(((2, 4), (4, 2)))) is not None
               for r in res.realizations)


@pytest.mark.parametrize("eps", [1, -1])
def test_classify_7_is_empty(eps):
    assert classify_trace(7, eps).realizations == ()


def test_classify_non_square_shift_is_empty():
    res = classify_trace(20, 1)
    assert res.alpha is None and res.realizations == ()


def test_classify_traces_match_witnesses():
    for eps in (1, -1):
        for alpha in range(1, 25):
            res = classify_trace(alpha * alpha - 2 * eps, eps) if alpha * alpha - 2 * eps > 2 else None
            if res is None:
                continue
            assert bool(res.realizations) == in_A_eps(eps, alpha), (eps, alpha)


def test_classify_rejects_small_trace():
    with pytest.raises(ValueError):
        classify_trace(2, 1)


@pytest.mark.parametrize("alpha, D, h", [(5, 29, 1), (9, 85, 2), (17, 293, 1)])
def test_biro_rows(alpha, D, h):
    row = next(r for r in biro_slice(99) if r.alpha == alpha)
    assert (row.D, row.narrow_class_number) == (D, h)


def test_biro_slice_exceptions():
    ones = {r.alpha for r in biro_slice(99) if r.narrow_class_number == 1}
    assert ones == set(BIRO_EXCEPTIONS)
    assert biro(99).passed


def test_biro_slice_skips_non_squarefree():
    # 11^2 + 4 = 125
    assert 11 not in {r.alpha for r in biro_slice(99)}


def test_biro_rows_agree_with_inventory():
    for r in biro_slice(41):
        assert narrow_class_number(r.D) == r.narrow_class_number


@pytest.mark.parametrize("eps, alpha, n", [(-1, 4, 0), (1, 4, 36), (-1, 6, 20)])
def test_fixed_point_count(eps, alpha, n):
    assert fixed_point_count(eps, alpha) == n


def test_fixed_point_count_is_lefschetz_sum():
    # 1 + (tr on S_X + tr on T_X) + 1 with T_X of rank 20 acting as eps
    for eps in (1, -1):
        for alpha in range(4, 60):
            if in_A_eps(eps, alpha):
                assert fixed_point_count(eps, alpha) == 1 + (alpha * alpha - 2 * eps) + 20 * eps + 1


def test_fixed_point_free_only_at_cayley_oguiso():
    zeros = [(e, a) for e in (1, -1) for a in range(4, 200) if in_A_eps(e, a)
             and fixed_point_count(e, a) == 0]
    assert zeros == [(-1, 4)]


def test_oguiso_report():
    rep = oguiso_classification()
    assert rep["gram"] == [[4, 2], [2, -4]]
    assert rep["matrix"] == [[5, 8], [8, 13]]
    assert rep["conjugator"] == [[1, 0], [1, -1]]
    assert rep["fixed_point_count"] == 0
    assert sorted(r["gram"] for r in rep["rejected"]) == sorted([[[-2, 0], [0, 10]], [[2, 1], [1, -2]]])
    assert rep["found_action"] in (rep["matrix"], rep["inverse"])


def test_completeness_small():
    res = completeness(300, 10**5)
    assert res.passed, res.failures[:5]


def test_classification_error_is_runtime_error():
    assert issubclass(ClassificationError, RuntimeError)
