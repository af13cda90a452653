"""Unit tests for entanglement quantifiers and protocol classification."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.domain.exceptions import InvalidPartitionError, MixedStateError
from src.domain.models import Bipartition, Classification, Grouping, MeasureKind
from src.domain.services.measures import (
    cut_values,
    entropy_of_cut,
    lemma1_residual,
    linear_entropy,
    log_negativity,
    negativity,
    protocol_record,
    schmidt_negativity,
    subadditivity_residual,
    theorem1_residual,
    theorem2_residual,
    von_neumann_entropy,
)
from src.domain.services.states import (
    ancilla_alpha,
    basis_state,
    bell_phi_plus,
    ghz,
    haar_random_pure,
    product_pure,
    product_density,
    reduced_state,
    theorem1_counterexample,
    theorem2_counterexample,
    werner,
    werner_negativity,
)

ABC = Grouping.parse("1:2:3")
seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestNegativity:
    """Test cases for negativity and logarithmic negativity."""

    def test_bell_state(self):
        """Test |φ+> has negativity 1/2 and log-negativity 1."""
        cut = Bipartition.of({0}, 2)

        assert negativity(bell_phi_plus(), cut) == pytest.approx(0.5)
        assert log_negativity(bell_phi_plus(), cut) == pytest.approx(1.0)

    def test_product_state_is_exactly_zero(self):
        """Test PPT states give exactly 0.0."""
        assert negativity(basis_state([2, 2], [0, 1]), Bipartition.of({0}, 2)) == 0.0
        assert negativity(werner(1 / 3), Bipartition.of({0}, 2)) == 0.0

    @pytest.mark.parametrize("p", [0.2, 0.34, 0.5, 0.9])
    def test_werner_matches_closed_form(self, p):
        """Test numerical negativity of werner(p) matches (3p - 1)/4."""
        assert negativity(werner(p), Bipartition.of({1}, 2)) == pytest.approx(werner_negativity(p), abs=1e-12)

    def test_cut_size_mismatch(self):
        """Test a cut over the wrong number of subsystems is refused."""
        with pytest.raises(InvalidPartitionError, match="covers 3 subsystems"):
            negativity(bell_phi_plus(), Bipartition.of({0}, 3))

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_schmidt_formula_agrees(self, seed):
        """Test the Schmidt-coefficient formula agrees with the partial transpose."""
        psi = haar_random_pure([3, 2, 2], seed)
        cut = Bipartition.of({0}, 3)

        assert schmidt_negativity(psi, cut) == pytest.approx(negativity(psi, cut), abs=1e-9)

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_pure_state_cut_is_symmetric(self, seed):
        """Test both sides of a cut of a pure state give the same negativity."""
        psi = haar_random_pure([2, 2, 3], seed)
        cut = Bipartition.of({0, 2}, 3)

        assert negativity(psi, cut) == pytest.approx(negativity(psi, cut.complement()), abs=1e-10)


class TestEntropies:
    """Test cases for entropy-of-cut measures."""

    def test_bell_entropies(self):
        """Test one ebit of von Neumann entropy and linear entropy 1/2."""
        cut = Bipartition.of({0}, 2)

        assert entropy_of_cut(bell_phi_plus(), cut, MeasureKind.VON_NEUMANN_ENTROPY_OF_CUT) == pytest.approx(1.0)
        assert entropy_of_cut(bell_phi_plus(), cut, MeasureKind.LINEAR_ENTROPY_OF_CUT) == pytest.approx(0.5)

    def test_pure_state_has_zero_entropy(self):
        """Test a pure density matrix has zero entropy."""
        rho = werner(1.0)

        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-12)
        assert linear_entropy(rho) == pytest.approx(0.0, abs=1e-12)

    def test_negativity_is_not_an_entropy(self):
        """Test entropy_of_cut refuses non-entropy measures."""
        with pytest.raises(ValueError, match="not an entropy measure"):
            entropy_of_cut(bell_phi_plus(), Bipartition.of({0}, 2), MeasureKind.NEGATIVITY)

    def test_mixed_state_refused(self):
        """Test entropy measures need a globally pure state."""
        rho = product_density(werner(0.5), ancilla_alpha(0.5))

        with pytest.raises(MixedStateError, match="globally pure"):
            protocol_record(rho, ABC, MeasureKind.VON_NEUMANN_ENTROPY_OF_CUT)

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_subadditivity(self, seed):
        """Test S_B + S_C - S_BC is nonnegative."""
        assert subadditivity_residual(haar_random_pure([2, 2, 2, 2], seed), Grouping.parse("1,2:3:4")) >= -1e-10


class TestResiduals:
    """Test cases for the inequality residuals."""

    def test_negativity_counterexample(self):
        """Test the [3, 2, 2] state gains more than it communicates."""
        record = protocol_record(theorem1_counterexample(), ABC, MeasureKind.NEGATIVITY)

        assert record.e_com == pytest.approx(math.sqrt(2) / 3, abs=1e-9)
        assert record.delta_e == pytest.approx(1 - math.sqrt(2) / 3, abs=1e-9)
        assert record.classification is Classification.EXCESSIVE
        assert theorem1_residual(theorem1_counterexample(), ABC) < 0

    def test_log_negativity_counterexample(self):
        """Test the [4, 2, 2] state violates the log-negativity bound."""
        record = protocol_record(theorem2_counterexample(), ABC, MeasureKind.LOG_NEGATIVITY)

        assert record.e_com == pytest.approx(0.352, abs=1e-3)
        assert record.delta_e == pytest.approx(0.363, abs=1e-3)
        assert theorem2_residual(theorem2_counterexample(), ABC) < 0

    def test_ghz_residual(self):
        """Test every cut of GHZ carries negativity 1/2."""
        values = cut_values(ghz(3), ABC, MeasureKind.NEGATIVITY)

        assert values == pytest.approx({"e_in": 0.5, "e_com": 0.5, "e_fin": 0.5})
        assert theorem1_residual(ghz(3), ABC) == pytest.approx(0.5)

    def test_lemma_residual_vacuous_for_product_a(self):
        """Test Schmidt rank one across A:BC returns +inf."""
        assert lemma1_residual(basis_state([2, 2, 2], [0, 1, 1]), ABC) == math.inf

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds, d_b=st.integers(min_value=2, max_value=3), d_c=st.integers(min_value=2, max_value=3))
    def test_qubit_a_bound_holds(self, seed, d_b, d_c):
        """Test N_AC:B + N_AB:C >= N_A:CB whenever A is a qubit."""
        psi = haar_random_pure([2, d_b, d_c], seed)

        assert theorem1_residual(psi, ABC) >= -1e-9
        assert theorem2_residual(psi, ABC) >= -1e-9

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_lemma_bound_holds(self, seed):
        """Test the Schmidt-rank weighted bound on [3, 2, 2]."""
        assert lemma1_residual(haar_random_pure([3, 2, 2], seed), ABC) >= -1e-9

    def test_grouping_size_mismatch(self):
        """Test a grouping must cover the state."""
        with pytest.raises(InvalidPartitionError, match="covers 3 subsystems"):
            cut_values(haar_random_pure([2, 2, 2, 2], 0), ABC, MeasureKind.NEGATIVITY)


class TestProtocolRecord:
    """Test cases for protocol_record."""

    def test_mixed_state_negativity_record(self):
        """Test a marginal of a pure state can be classified by negativity."""
        rho = reduced_state(haar_random_pure([2, 2, 2, 2], 9), [0, 1, 2])
        record = protocol_record(rho, ABC)

        assert record.measure is MeasureKind.NEGATIVITY
        assert record.delta_e == pytest.approx(record.e_fin - record.e_in)

    def test_no_gain_for_unentangled_ancilla(self):
        """Test sending an ancilla that never touched A gives NoGain."""
        psi = product_pure(bell_phi_plus(), basis_state([2], [0]))
        record = protocol_record(psi, ABC)

        assert record.e_in == pytest.approx(0.5)
        assert record.e_com == 0.0
        assert record.classification is Classification.NO_GAIN
