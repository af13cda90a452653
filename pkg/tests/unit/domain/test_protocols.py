"""Unit tests for the distribution protocols."""

import numpy as np
import pytest

from src.domain.exceptions import DimensionMismatchError, ParameterRangeError
from src.domain.models import Classification, Grouping, KrausChannel, MeasureKind
from src.domain.services.channels import (
    amplitude_damping,
    dephasing,
    depolarizing,
    identity,
    lambda1,
)
from src.domain.services.protocols import (
    CATALYSIS_GROUPING,
    FIG3_GROUPING,
    FIG4_GROUPING,
    NOISY_GROUPING,
    NPT,
    PPT,
    TABLE1_PARTITIONS,
    CommunicationTiming,
    ame_protocol,
    catalysis_compare,
    cphase,
    direct_gain,
    direct_then_indirect,
    eb_no_gain_check,
    indirect_noisy,
    noisy_labs,
    rho_q,
    table1_expected,
    table1_scan,
)
from src.domain.services.states import density_from_pure, haar_random_pure, werner_negativity

FIELDS = ("e_in", "e_com", "e_fin")


def assert_same_record(left, right, tol=1e-12):
    for name in FIELDS:
        assert getattr(left, name) == pytest.approx(getattr(right, name), abs=tol)


class TestAMEFamily:
    """Test cases for ρ(q) and its separability pattern."""

    def test_groupings(self):
        """Test the named groupings use 0-based indices."""
        assert FIG3_GROUPING == Grouping.of({1, 3, 4}, {0}, {2})
        assert FIG4_GROUPING == Grouping.of({0, 3, 4}, {1}, {2})
        assert CATALYSIS_GROUPING == Grouping.of({3, 4}, {0, 1}, {2})

    def test_rho_q_is_a_state(self):
        """Test ρ(q) has unit trace and is no longer pure."""
        rho = rho_q(0.3)

        assert np.trace(rho.matrix).real == pytest.approx(1.0)
        assert not rho.is_pure()

    def test_rho_q_range(self):
        """Test q outside [0, 1] is refused."""
        with pytest.raises(ParameterRangeError):
            rho_q(1.1)

    @pytest.mark.parametrize("q", [0.1, 0.3, 0.45, 0.6, 0.9])
    def test_table1_pattern(self, q):
        """Test the PPT/NPT pattern matches the tabulated one."""
        scanned = {entry.partition: entry.status for entry in table1_scan(q)}

        assert scanned == table1_expected(q)

    def test_table1_expected(self):
        """Test three PPT cuts up to q = 1/2 and one above."""
        assert sum(v == PPT for v in table1_expected(0.5).values()) == 3
        assert sum(v == PPT for v in table1_expected(0.55).values()) == 1
        assert set(table1_expected(0.2)) == set(TABLE1_PARTITIONS)

    def test_npt_entries_have_positive_negativity(self):
        """Test NPT status agrees with the stored negativity."""
        for entry in table1_scan(0.7):
            assert entry.is_npt == (entry.negativity > 0)
            assert entry.status in (PPT, NPT)


class TestAMEProtocol:
    """Test cases for ame_protocol and catalysis."""

    @pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
    def test_first_grouping_is_excessive_without_initial_entanglement(self, q):
        """Test E_in = 0 and an excessive gain."""
        record = ame_protocol(q, FIG3_GROUPING)

        assert record.e_in <= 1e-12
        assert record.classification is Classification.EXCESSIVE

    def test_second_grouping_below_first_transition(self):
        """Test q = 0.45 is excessive with E_in = 0."""
        record = ame_protocol(0.45, FIG4_GROUPING)

        assert record.e_in == 0.0
        assert record.is_excessive

    def test_second_grouping_initial_entanglement_above_half(self):
        """Test E_in > 0 once q exceeds 1/2."""
        assert ame_protocol(0.6, FIG4_GROUPING).e_in > 0

    def test_swap_exchanges_b_and_c(self):
        """Test swap=True evaluates the grouping with B and C exchanged."""
        swapped = ame_protocol(0.45, FIG4_GROUPING, swap=True)
        direct = ame_protocol(0.45, FIG4_GROUPING.swapped())

        assert_same_record(swapped, direct)
        assert swapped.e_in == pytest.approx(ame_protocol(0.45, FIG4_GROUPING).e_com, abs=1e-12)

    def test_measure_is_recorded(self):
        """Test the requested measure ends up in the record."""
        assert ame_protocol(0.3, FIG3_GROUPING, MeasureKind.NEGATIVITY).measure is MeasureKind.NEGATIVITY

    def test_wrong_size_grouping(self):
        """Test the AME protocol needs five qubits."""
        with pytest.raises(DimensionMismatchError, match="grouping of 5 qubits"):
            ame_protocol(0.3, NOISY_GROUPING)

    @pytest.mark.parametrize("q", [0.2, 0.45, 0.7])
    def test_catalysis_keeps_initial_entanglement(self, q):
        """Test moving qubit 1 to Bob first leaves E_in unchanged."""
        plain, catalysed = catalysis_compare(q)

        assert catalysed.e_in == pytest.approx(plain.e_in, abs=1e-10)
        assert plain.measure is catalysed.measure is MeasureKind.LOG_NEGATIVITY


class TestNoisyProtocols:
    """Test cases for the c-phase protocols."""

    def test_cphase(self):
        """Test diag(1, 1, 1, -1)."""
        assert np.array_equal(np.diag(cphase()), [1, 1, 1, -1])

    def test_indirect_initial_entanglement_is_werner(self):
        """Test E_in equals the Werner negativity."""
        record = indirect_noisy(0.6, 1.0, dephasing(0.2))

        assert record.e_in == pytest.approx(werner_negativity(0.6), abs=1e-12)

    def test_low_noise_optimum_is_non_excessive(self):
        """Test p = 0.34, s = 1 without noise gains less than it communicates."""
        record = indirect_noisy(0.34, 1.0, identity())

        assert record.classification is Classification.NON_EXCESSIVE

    @pytest.mark.parametrize("delta", [0.01, 0.1, 0.3])
    def test_dephased_pure_ancilla_closed_form(self, delta):
        """Test E_fin and E_com for pure C against the flip-probability formulas."""
        p, flip = 0.34, delta / 2
        record = indirect_noisy(p, 1.0, dephasing(delta))

        assert record.e_fin == pytest.approx((1 - flip) * p / 2 - flip * (1 - p) / 4, abs=1e-12)
        assert record.e_com == pytest.approx((1 - flip) * p / 2 - flip * (1 + p) / 4, abs=1e-12)
        assert record.excess == pytest.approx(delta * p / 4 - werner_negativity(p), abs=1e-12)

    @pytest.mark.parametrize("channel,classification", [
        (dephasing(0.01), Classification.NON_EXCESSIVE),
        (depolarizing(0.01), Classification.NON_EXCESSIVE),
        (dephasing(0.1), Classification.EXCESSIVE),
        (depolarizing(0.1), Classification.EXCESSIVE),
    ], ids=lambda value: value.spec() if isinstance(value, KrausChannel) else value.value)
    def test_pure_ancilla_optimum_crosses_border(self, channel, classification):
        """Test the s = 1 optimum turns excessive between δ = 0.01 and δ = 0.1."""
        assert indirect_noisy(0.34, 1.0, channel).classification is classification

    def test_maximally_mixed_ancilla_gains_nothing(self):
        """Test s = 0 leaves A-B entanglement where it was."""
        record = indirect_noisy(0.6, 0.0, identity())

        assert record.delta_e == pytest.approx(0.0, abs=1e-12)
        assert record.e_com == 0.0

    def test_timing_without_noise(self):
        """Test E_com before and after a noiseless channel agree."""
        after = indirect_noisy(0.4, 0.8, identity(), CommunicationTiming.AFTER_CHANNEL)
        before = indirect_noisy(0.4, 0.8, identity(), CommunicationTiming.BEFORE_CHANNEL)

        assert_same_record(after, before)

    def test_timing_with_noise(self):
        """Test E_com before the channel is at least E_com after it."""
        channel = depolarizing(0.3)
        after = indirect_noisy(0.4, 0.8, channel, CommunicationTiming.AFTER_CHANNEL)
        before = indirect_noisy(0.4, 0.8, channel, CommunicationTiming.BEFORE_CHANNEL)

        assert before.e_com >= after.e_com - 1e-12
        assert before.e_fin == pytest.approx(after.e_fin, abs=1e-12)

    @pytest.mark.parametrize("p,s", [(0.2, 0.5), (1 / 3, 2 / 3), (0.9, 1.0)])
    def test_staged_reduces_to_indirect_without_noise(self, p, s):
        """Test sending B through the identity first changes nothing."""
        e_after_direct, staged = direct_then_indirect(p, s, identity())

        assert_same_record(staged, indirect_noisy(p, s, identity()))
        assert e_after_direct == pytest.approx(staged.e_in, abs=1e-12)

    def test_direct_gain(self):
        """Test a noiseless channel gains nothing and a breaking one destroys everything."""
        assert direct_gain(0.8, identity()) == pytest.approx(0.0, abs=1e-12)
        assert direct_gain(0.8, dephasing(1.0)) == pytest.approx(-werner_negativity(0.8), abs=1e-12)

    @pytest.mark.parametrize("channel", [identity(), amplitude_damping(0.3), depolarizing(0.2)],
                             ids=lambda c: c.spec())
    def test_noisy_labs_without_local_noise(self, channel):
        """Test zero local damping reduces to the staged protocol with s = 1."""
        _, staged = direct_then_indirect(0.34, 1.0, channel)

        assert_same_record(noisy_labs(0.34, channel, 0.0), staged)

    def test_noisy_labs_local_noise_changes_record(self):
        """Test local damping lowers the final entanglement."""
        clean = noisy_labs(0.6, amplitude_damping(0.1), 0.0)
        damped = noisy_labs(0.6, amplitude_damping(0.1), 0.5)

        assert damped.e_fin < clean.e_fin

    @pytest.mark.parametrize("channel", [dephasing(0.3), amplitude_damping(0.3)],
                             ids=lambda c: c.spec())
    def test_noisy_labs_gain_never_grows_with_local_noise(self, channel):
        """Test the labs stay unentangled after B arrives and local damping only lowers the gain."""
        records = [noisy_labs(0.34, channel, float(d)) for d in np.linspace(0.0, 1.0, 11)]
        gains = [r.delta_e for r in records]

        assert all(r.e_in == 0.0 for r in records)
        assert all(later <= earlier + 1e-12 for earlier, later in zip(gains, gains[1:]))
        assert gains[0] > gains[5]

    def test_qutrit_channel_refused(self):
        """Test the three-qubit protocols take qubit channels only."""
        qutrit = KrausChannel.from_ops([np.eye(3)], "identity3")

        with pytest.raises(DimensionMismatchError, match="not a qubit channel"):
            indirect_noisy(0.5, 1.0, qutrit)


class TestEntanglementBreakingGain:
    """Test cases for eb_no_gain_check."""

    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
    def test_no_gain_through_breaking_channels(self, seed):
        """Test breaking channels never increase A:BC entanglement."""
        rho = density_from_pure(haar_random_pure([2, 2, 2], seed))

        for channel in (depolarizing(0.6), dephasing(1.0), amplitude_damping(1.0), lambda1()):
            assert eb_no_gain_check(channel, rho, NOISY_GROUPING) <= 1e-9

    def test_grouping_must_fit(self):
        """Test the grouping must cover the state."""
        rho = density_from_pure(haar_random_pure([2, 2, 2], 0))

        with pytest.raises(DimensionMismatchError, match="does not fit"):
            eb_no_gain_check(lambda1(), rho, FIG3_GROUPING)
