import math

import pytest

from paraquant.chsh import bell_phi_plus, entangled_state, product_state
from paraquant.lp import (
    TruthDegree,
    TruthValue3,
    and3,
    angle_to_truth_degree,
    assign_superposition,
    implies3,
    is_designated,
    neg3,
    or3,
    truth_table_csv,
)

F, B, T = TruthValue3.F, TruthValue3.B, TruthValue3.T
ALL = (F, B, T)


class TestConnectives:
    def test_both_conjunction(self):
        assert and3(B, B) == B

    def test_both_disjunction(self):
        assert or3(B, B) == B

    def test_negation(self):
        assert neg3(T) == F
        assert neg3(F) == T
        assert neg3(B) == B

    def test_lattice_tables(self):
        assert and3(T, F) == F
        assert and3(T, B) == B
        assert or3(F, B) == B
        assert or3(T, B) == T
        assert implies3(T, F) == F
        assert implies3(B, F) == B
        assert implies3(F, F) == T

    def test_de_morgan_all_pairs(self):
        for a in ALL:
            for b in ALL:
                assert neg3(and3(a, b)) == or3(neg3(a), neg3(b))
                assert neg3(or3(a, b)) == and3(neg3(a), neg3(b))

    def test_designation(self):
        assert is_designated(T) and is_designated(B) and not is_designated(F)

    def test_no_explosion_at_three_values(self):
        # a glutty premise is designated together with its negation, yet an
        # unrelated false proposition stays undesignated
        glut = and3(B, neg3(B))
        assert is_designated(B) and is_designated(neg3(B)) and is_designated(glut)
        unrelated = F
        assert not is_designated(unrelated)


class TestSuperpositionAssignment:
    def test_bell_state_both_b(self):
        assert assign_superposition(bell_phi_plus(), 0) == {"p": B, "q": B}
        assert assign_superposition(bell_phi_plus(), 1) == {"p": B, "q": B}

    def test_basis_states(self):
        zero_zero = entangled_state(1, 0)
        assert assign_superposition(zero_zero, 0) == {"p": T, "q": F}
        one_one = entangled_state(0, 1)
        assert assign_superposition(one_one, 1) == {"p": F, "q": T}

    def test_b_iff_both_weights_nonzero(self):
        for amp in (0.3, 0.8):
            st = entangled_state(amp, math.sqrt(1 - amp * amp))
            assert assign_superposition(st, 0) == {"p": B, "q": B}
        product = product_state([1, 0], [0.6, 0.8])
        assert assign_superposition(product, 0) == {"p": T, "q": F}
        assert assign_superposition(product, 1) == {"p": B, "q": B}


class TestTruthDegrees:
    def test_endpoints(self):
        assert angle_to_truth_degree(0.0) == TruthDegree(1.0, 0.0)
        d = angle_to_truth_degree(math.pi)
        assert d.degree_true == pytest.approx(0.0, abs=1e-12)
        assert d.degree_false == pytest.approx(1.0, abs=1e-12)

    def test_bob_angle(self):
        d = angle_to_truth_degree(math.radians(22.5))
        assert d.degree_true == pytest.approx(math.cos(math.radians(11.25)) ** 2, abs=1e-12)
        assert d.degree_true == pytest.approx(0.9619397662556434, abs=1e-12)

    def test_monotone_decreasing_on_half_turn(self):
        prev = 1.1
        for k in range(0, 101):
            theta = math.pi * k / 100
            dt = angle_to_truth_degree(theta).degree_true
            assert dt < prev + 1e-15
            prev = dt

    def test_periodic(self):
        for theta in (0.3, 1.2, 2.9):
            a = angle_to_truth_degree(theta)
            b = angle_to_truth_degree(theta + 2 * math.pi)
            assert a.degree_true == pytest.approx(b.degree_true, abs=1e-12)

    def test_degrees_sum_to_one(self):
        with pytest.raises(ValueError):
            TruthDegree(0.7, 0.7)


def test_truth_table_csv_shape():
    lines = truth_table_csv().strip().splitlines()
    assert lines[0] == "op,a,b,result"
    assert len(lines) == 1 + 3 + 3 * 9
    assert "and,B,B,B" in lines
    assert "or,B,B,B" in lines
    assert "neg,B,,B" in lines
