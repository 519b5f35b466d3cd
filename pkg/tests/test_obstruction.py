import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discmethod.obstruction import (
    ObstructionError,
    RatMatrix,
    conjugation_space,
    equivalence_verdict,
    general_element,
    in_span,
    load_pairs,
    nullspace,
    pairs_from_json,
    parametric_det,
)
from discmethod.poly import MPoly

from reference_data import H0_MINUS, H0_PLUS, H1_MINUS, H1_PLUS, intertwiner

FPM_PAIRS = [(RatMatrix(H0_PLUS), RatMatrix(H0_MINUS)), (RatMatrix(H1_PLUS), RatMatrix(H1_MINUS))]
DIAG_PAIR = [(RatMatrix([[1, 0], [0, 2]]), RatMatrix([[2, 0], [0, 1]]))]


def residual(p, pairs):
    return [p @ b - a @ p for a, b in pairs]


class TestRatMatrix:
    def test_product_and_inverse(self):
        m = RatMatrix([[2, 1], [1, 1]])
        assert m @ m.inverse() == RatMatrix.identity(2)
        assert m.det() == 1

    def test_singular(self):
        with pytest.raises(ObstructionError):
            RatMatrix([[1, 2], [2, 4]]).inverse()
        assert RatMatrix([[1, 2], [2, 4]]).det() == 0

    def test_ragged(self):
        with pytest.raises(ObstructionError):
            RatMatrix([[1, 2], [3]])

    def test_json(self):
        assert RatMatrix([[Fraction(1, 2), 3]]).to_json() == [["1/2", 3]]


class TestNullspace:
    def test_simple(self):
        assert nullspace([[1, 1]], 2) == [[Fraction(-1), Fraction(1)]]

    def test_full_rank(self):
        assert nullspace([[1, 0], [0, 1]], 2) == []

    def test_no_equations(self):
        assert len(nullspace([], 3)) == 3


class TestConjugationSpace:
    def test_fpm_dimension(self):
        basis = conjugation_space(FPM_PAIRS)
        assert len(basis) == 2

    def test_fpm_contains_reference_family(self):
        basis = conjugation_space(FPM_PAIRS)
        assert in_span(basis, intertwiner(1, 0))
        assert in_span(basis, intertwiner(0, 1))
        assert in_span(basis, intertwiner(3, -2))
        assert not in_span(basis, RatMatrix.identity(6))

    def test_identity_pair(self):
        basis = conjugation_space([(RatMatrix.identity(2), RatMatrix.identity(2))])
        assert len(basis) == 4

    def test_same_matrix_contains_identity(self):
        a = RatMatrix([[1, 2], [3, 4]])
        assert in_span(conjugation_space([(a, a)]), RatMatrix.identity(2))

    def test_residual_zero(self):
        for pairs in (FPM_PAIRS, DIAG_PAIR):
            for p in conjugation_space(pairs):
                assert all(r.is_zero() for r in residual(p, pairs))

    def test_dimension_mismatch(self):
        with pytest.raises(ObstructionError):
            conjugation_space([(RatMatrix.identity(2), RatMatrix.identity(3))])

    def test_no_pairs(self):
        with pytest.raises(ObstructionError):
            conjugation_space([])


class TestGeneralElement:
    def test_diagonal(self):
        e11 = RatMatrix([[1, 0], [0, 0]])
        e22 = RatMatrix([[0, 0], [0, 1]])
        g = general_element([e11, e22])
        names = ("a1", "a2")
        assert g[0][0] == MPoly.var(names, "a1")
        assert g[1][1] == MPoly.var(names, "a2")
        assert g[0][1].is_zero() and g[1][0].is_zero()

    def test_empty(self):
        with pytest.raises(ObstructionError):
            general_element([])


class TestParametricDet:
    def test_diagonal(self):
        g = general_element([RatMatrix([[1, 0], [0, 0]]), RatMatrix([[0, 0], [0, 1]])])
        assert str(parametric_det(g)) == "a1*a2"

    def test_identity(self):
        g = general_element([RatMatrix.identity(3)])
        assert str(parametric_det(g)) == "a1^3"
        one = [[MPoly.const(("a",), int(r == c)) for c in range(4)] for r in range(4)]
        assert parametric_det(one) == MPoly.const(("a",), 1)

    def test_reference_family_is_singular(self):
        names = ("a", "b")
        a, b = MPoly.var(names, "a"), MPoly.var(names, "b")
        zero = MPoly(names)
        rows = [
            [zero, zero, a, a, zero, a],
            [zero, zero, -a, -a, zero, -a],
            [zero, zero, a + b, a + b, zero, a + b],
            [zero, zero, b, b, zero, b],
            [zero, zero, -b, -b, zero, -b],
            [zero, zero, a + b, a + b, zero, a + b],
        ]
        assert parametric_det(rows).is_zero()

    def test_matches_numeric(self):
        basis = conjugation_space(DIAG_PAIR + [(RatMatrix.identity(2), RatMatrix.identity(2))])
        det = parametric_det(general_element(basis))
        for point in itertools.product(range(-2, 3), repeat=len(basis)):
            m = RatMatrix.identity(2).scale(0)
            for c, p in zip(point, basis):
                m = m + p.scale(c)
            assert det.evaluate(dict(zip(det.vars, point))) == m.det()


class TestVerdict:
    def test_fpm_obstructed(self):
        v = equivalence_verdict(FPM_PAIRS)
        assert v.obstructed and v.dimension == 2
        assert v.det_poly.is_zero()
        assert v.witness is None
        assert v.to_json()["verdict"] == "obstructed"
        assert v.to_json()["det_poly"] == "0"

    def test_identity_pair(self):
        v = equivalence_verdict([(RatMatrix.identity(2), RatMatrix.identity(2))])
        assert not v.obstructed
        assert v.witness == RatMatrix.identity(2)

    def test_diag_antidiagonal_witness(self):
        v = equivalence_verdict(DIAG_PAIR)
        assert not v.obstructed
        w = v.witness
        assert w[0, 0] == 0 and w[1, 1] == 0 and w.det() != 0
        assert all(r.is_zero() for r in residual(w, DIAG_PAIR))

    def test_diag_against_brute_force(self):
        # every invertible intertwiner with entries in {-1,0,1} is antidiagonal
        a, b = DIAG_PAIR[0]
        found = []
        for vals in itertools.product((-1, 0, 1), repeat=4):
            p = RatMatrix([vals[:2], vals[2:]])
            if p.det() != 0 and (p @ b - a @ p).is_zero():
                found.append(p)
        assert found
        assert all(p[0, 0] == 0 and p[1, 1] == 0 for p in found)
        basis = conjugation_space(DIAG_PAIR)
        assert all(in_span(basis, p) for p in found)

    def test_empty_space_is_obstructed(self):
        v = equivalence_verdict([(RatMatrix([[1]]), RatMatrix([[2]]))])
        assert v.obstructed and v.dimension == 0

    def test_json_round_trip(self):
        v = equivalence_verdict(DIAG_PAIR)
        assert json.loads(json.dumps(v.to_json())) == v.to_json()


class TestLoading:
    def test_bundled(self):
        from pathlib import Path

        import discmethod

        pairs = load_pairs(Path(discmethod.__file__).parent / "data" / "fpm_pairs.json")
        assert pairs == FPM_PAIRS

    def test_declared_size(self):
        with pytest.raises(ObstructionError):
            pairs_from_json({"n": 3, "pairs": [{"A": [[1]], "B": [[1]]}]})


# verdict invariant under independent changes of basis on each side

small_invertible = st.lists(st.integers(-2, 2), min_size=4, max_size=4).filter(
    lambda v: v[0] * v[3] - v[1] * v[2] != 0
)


@settings(max_examples=100, deadline=None)
@given(small_invertible, small_invertible, st.lists(st.integers(-3, 3), min_size=8, max_size=8))
def test_basis_change_invariance(q, r, entries):
    Q = RatMatrix([q[:2], q[2:]])
    R = RatMatrix([r[:2], r[2:]])
    A = RatMatrix([entries[0:2], entries[2:4]])
    B = RatMatrix([entries[4:6], entries[6:8]])
    v1 = equivalence_verdict([(A, B)])
    v2 = equivalence_verdict([(Q @ A @ Q.inverse(), R @ B @ R.inverse())])
    assert v1.dimension == v2.dimension
    assert v1.obstructed == v2.obstructed
