import pytest
from hypothesis import given
from hypothesis import strategies as st

from augtor.cyclotomic import cyclotomic_poly, divisors
from augtor.errors import PreconditionError, ResourceLimitError
from augtor.linalg import (
    IntMatrix,
    PresentationMatrix,
    annihilator_identity_check,
    charpoly,
    companion,
    det_int,
    rational_invariant_factors,
    smith_normal_form,
    substitute_blocks,
)
from augtor.parsing import parse_poly as P
from augtor.poly import ZERO, LaurentPoly
from augtor.resultants import res_cyclic, resultant, t_power_minus_one
from conftest import laurent

FIG8 = P("t^2-3t+1")


def cyc(text):
    return PresentationMatrix.cyclic(P(text))


def test_companion_examples():
    assert companion(1).tolist() == [[1]]
    assert companion(2).tolist() == [[0, 1], [1, 0]]
    assert companion(3).tolist() == [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    assert charpoly(companion(5).tolist()) == [-1, 0, 0, 0, 0, 1]


def test_substitute_examples():
    assert substitute_blocks(cyc("t-1"), 2).tolist() == [[-1, 1], [1, -1]]
    assert substitute_blocks(cyc("t"), 3).tolist() == companion(3).tolist()
    # the block matrix of 6(t - 1), up to row order
    rows = substitute_blocks(cyc("6(t-1)"), 4).tolist()
    displayed = [[6, 0, 0, -6], [-6, 6, 0, 0], [0, -6, 6, 0], [0, 0, -6, 6]]
    assert sorted(map(tuple, rows)) == sorted(map(tuple, displayed))


def test_negative_exponents_preserve_the_cokernel():
    for r in range(1, 8):
        a = smith_normal_form(substitute_blocks(cyc("t^-1 - 3 + t"), r))
        b = smith_normal_form(substitute_blocks(cyc("t^2-3t+1"), r))
        assert a.diagonal == b.diagonal
    unit = smith_normal_form(substitute_blocks(cyc("t^-1"), 4))
    assert unit.torsion_order == 1 and unit.free_rank == 0


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == (1, 6)
    res = smith_normal_form(substitute_blocks(cyc("6(t-1)"), 4))
    assert res.diagonal == (6, 6, 6, 0) and res.torsion_order == 216 and res.free_rank == 1
    res = smith_normal_form([[0]])
    assert res.diagonal == (0,) and res.free_rank == 1 and res.torsion_order == 1


def test_snf_frozen_oracle_values():
    # sympy smith_normal_form of the same blocks
    trefoil = [smith_normal_form(substitute_blocks(cyc("t^2-t+1"), r)) for r in range(1, 13)]
    assert [(s.free_rank, s.torsion_order) for s in trefoil] == [
        (0, 1), (0, 3), (0, 4), (0, 3), (0, 1), (2, 1), (0, 1), (0, 3), (0, 4), (0, 3), (0, 1), (2, 1)]


def test_size_guard(monkeypatch):
    monkeypatch.setenv("AUGTOR_MAX_SNF_DIM", "20")
    with pytest.raises(ResourceLimitError):
        substitute_blocks(cyc("t-2"), 21)
    substitute_blocks(cyc("t-2"), 20)


def test_annihilator_examples():
    det, eig = annihilator_identity_check(P("t-1"), 2)
    assert abs(det) == abs(eig) == 2
    det, eig = annihilator_identity_check(P("t^2-1"), 4)
    assert abs(det) == abs(eig) == 4
    det, eig = annihilator_identity_check(P("1"), 3)
    assert abs(det) == abs(eig) == 1
    with pytest.raises(PreconditionError):
        annihilator_identity_check(P("t-2"), 3)


def test_rational_invariant_factors_examples():
    assert rational_invariant_factors(cyc("2t^2-6t+2")) == [FIG8]
    ex211 = PresentationMatrix([[P("2(t^2-3t+1)"), P("(t-1)(t^2-3t+1)")]])
    assert rational_invariant_factors(ex211) == [FIG8]
    diag = PresentationMatrix.diagonal([P("t-1"), P("t^2-1")])
    assert rational_invariant_factors(diag) == [P("t-1"), P("t^2-1")]
    # zero rows give free summands
    assert rational_invariant_factors(PresentationMatrix([[ZERO]])) == [ZERO]


def test_presentation_adjoins_columns():
    a = PresentationMatrix([[P("t")], [P("1")]])
    assert a.n_rows == 2 and a.n_cols == 2


@given(laurent(max_deg=4), st.integers(1, 8))
def test_det_of_block_is_resultant(f, r):
    block = substitute_blocks(PresentationMatrix.cyclic(f), r).tolist()
    assert det_int(block) == resultant(t_power_minus_one(r), f.representative())


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=3, max_size=3))
def test_snf_chain_and_determinant(rows):
    res = smith_normal_form(rows)
    nz = [d for d in res.diagonal if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert res.rank + res.free_rank == 3
    # gcd of entries is the first elementary divisor
    from math import gcd
    g = 0
    for row in rows:
        for x in row:
            g = gcd(g, x)
    assert (nz[0] if nz else 0) == g


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_snf_torsion_equals_abs_det(rows):
    det = det_int(rows)
    res = smith_normal_form(rows)
    if det:
        assert res.torsion_order == abs(det) and res.free_rank == 0


@given(laurent(max_deg=4), st.integers(0, 5), st.sampled_from([-1, 1]), st.integers(1, 7))
def test_unit_multiples_do_not_change_torsion(f, k, sign, r):
    a = smith_normal_form(substitute_blocks(PresentationMatrix.cyclic(f), r))
    b = smith_normal_form(substitute_blocks(PresentationMatrix.cyclic(f.shift(k).scale(sign)), r))
    assert (a.torsion_order, a.free_rank) == (b.torsion_order, b.free_rank)


def test_annihilator_identity_all_small_cases():
    for r in range(1, 13):
        ds = divisors(r)
        for mask in range(1, 1 << len(ds)):
            phi = P("1")
            for i, d in enumerate(ds):
                if mask >> i & 1:
                    phi = phi * cyclotomic_poly(d)
            if phi.degree > 4:
                continue
            det, eig = annihilator_identity_check(phi, r)
            assert abs(det) == abs(eig), (phi, r)
