"""Structural invariants of the tensor, state, measure, channel and protocol layers."""

import math
from itertools import combinations, product
from typing import Callable, List, Optional, Tuple

import numpy as np
import structlog

from ..domain.models import Axis, Bipartition, DensityMatrix, MeasureKind, SweepGrid
from ..domain.models.validation import RecordValidator
from ..domain.services import channels, tensor
from ..domain.services.measures import (
    log_negativity,
    negativity,
    protocol_record,
    theorem1_residual,
)
from ..domain.services.protocols import (
    FIG3_GROUPING,
    FIG4_GROUPING,
    NOISY_GROUPING,
    ame_protocol,
    cphase,
    direct_then_indirect,
    indirect_noisy,
    noisy_labs,
    rho_q,
)
from ..domain.services.search import trial_seed
from ..domain.services.states import (
    ancilla_alpha,
    ame5,
    haar_random_pure,
    product_density,
    reduced_state,
    schmidt,
    werner,
)
from ..domain.services.sweep import sweep
from .report import CheckOutcome, VerificationMonitor, VerifyOptions

logger = structlog.get_logger(__name__)

TIGHT = 1e-12
NUMERIC = 1e-10
HAAR_QUBIT_PURITY = 4 / 5

_CONSTRUCTORS: List[Tuple[str, Callable[[float], object]]] = [
    ("dephasing", channels.dephasing),
    ("depolarizing", channels.depolarizing),
    ("amplitude_damping", channels.amplitude_damping),
    ("lambda2", channels.lambda2),
]


def _count(options: VerifyOptions, divisor: int, floor: int = 10) -> int:
    return max(floor, options.trials // divisor)


def _mixed_states(options: VerifyOptions, count: int):
    """Three-qubit mixed states: marginals of Haar states on four qubits."""
    for i in range(count):
        psi = haar_random_pure([2, 2, 2, 2], trial_seed(options.seed, i))
        yield reduced_state(psi, [0, 1, 2])


def _random_unitary(dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _entangled(p: float, s: float) -> DensityMatrix:
    rho = product_density(werner(p), ancilla_alpha(s))
    return DensityMatrix(rho.dims, tensor.apply_local(rho.matrix, cphase(), [0, 2], rho.dims))


def check_partial_transpose_trace(options: VerifyOptions) -> CheckOutcome:
    worst_trace, worst_norm = 0.0, 0.0
    subsets = [s for k in (1, 2, 3) for s in combinations(range(3), k)]
    for rho in _mixed_states(options, _count(options, 10)):
        for subset in subsets:
            pt = tensor.partial_transpose(rho.matrix, rho.dims, subset)
            worst_trace = max(worst_trace, abs(complex(np.trace(pt)) - 1))
            worst_norm = max(worst_norm, 1 - tensor.trace_norm(pt))
    return worst_trace <= NUMERIC and worst_norm <= NUMERIC, (
        f"max |tr - 1|={worst_trace:.3g}, max (1 - trace norm)={worst_norm:.3g}"
    )


def check_partial_trace_composition(options: VerifyOptions) -> CheckOutcome:
    worst = 0.0
    for rho in _mixed_states(options, _count(options, 10)):
        stepwise = tensor.partial_trace(
            tensor.partial_trace(rho.matrix, rho.dims, [0, 1]), [2, 2], [0]
        )
        direct = tensor.partial_trace(rho.matrix, rho.dims, [0])
        worst = max(worst, float(np.max(np.abs(stepwise - direct))))
    return worst <= TIGHT, f"max deviation={worst:.3g}"


def check_local_unitary_spectrum(options: VerifyOptions) -> CheckOutcome:
    worst = 0.0
    for i, rho in enumerate(_mixed_states(options, _count(options, 10))):
        u = _random_unitary(4, trial_seed(options.seed + 1, i))
        rotated = tensor.apply_local(rho.matrix, u, [0, 2], rho.dims)
        before = tensor.hermitian_eigenvalues(rho.matrix).eigenvalues
        after = tensor.hermitian_eigenvalues(rotated).eigenvalues
        worst = max(worst, float(np.max(np.abs(before - after))))
    return worst <= 1e-9, f"max spectral shift={worst:.3g}"


def check_permutation_inverse(options: VerifyOptions) -> CheckOutcome:
    worst = 0.0
    dims = [2, 3, 2]
    rng = np.random.default_rng(options.seed)
    for i in range(_count(options, 50)):
        rho = reduced_state(haar_random_pure(dims + [2], trial_seed(options.seed, i)), [0, 1, 2])
        perm = [int(k) for k in rng.permutation(3)]
        moved, moved_dims = tensor.permute_subsystems(rho.matrix, rho.dims, perm)
        back, _ = tensor.permute_subsystems(moved, moved_dims, [int(k) for k in np.argsort(perm)])
        worst = max(worst, float(np.max(np.abs(back - rho.matrix))))
    return worst <= TIGHT, f"max deviation={worst:.3g}"


def check_schmidt_symmetry(options: VerifyOptions) -> CheckOutcome:
    worst = 0.0
    for i in range(_count(options, 10)):
        psi = haar_random_pure([2, 3, 2], trial_seed(options.seed, i))
        for left in ({0}, {1}, {0, 2}):
            cut = Bipartition.of(left, 3)
            a = schmidt(psi, cut).coefficients
            b = schmidt(psi, cut.complement()).coefficients
            if len(a) != len(b):
                return False, f"Schmidt ranks differ across {cut.label()}"
            worst = max(worst, max(abs(x - y) for x, y in zip(a, b)))
    return worst <= 1e-9, f"max coefficient difference={worst:.3g}"


def check_werner_spectrum(options: VerifyOptions) -> CheckOutcome:
    worst = 0.0
    for p in np.linspace(0.0, 1.0, 101):
        smallest = tensor.hermitian_eigenvalues(werner(float(p)).matrix).min
        worst = max(worst, abs(smallest - (1 - p) / 4))
    return worst <= TIGHT, f"max deviation from (1-p)/4={worst:.3g}"


def check_ame_marginals(options: VerifyOptions) -> CheckOutcome:
    state = ame5()
    worst = 0.0
    for k in (1, 2):
        for keep in combinations(range(5), k):
            marginal = reduced_state(state, list(keep)).matrix
            mixed = np.eye(2 ** k) / 2 ** k
            worst = max(worst, float(np.max(np.abs(marginal - mixed))))
    return worst <= TIGHT, f"max deviation from maximally mixed={worst:.3g}"


def check_haar_purity(options: VerifyOptions) -> CheckOutcome:
    count = max(options.trials, 1000)
    purities = [
        reduced_state(haar_random_pure([2, 2], trial_seed(options.seed, i)), [0]).purity
        for i in range(count)
    ]
    mean = float(np.mean(purities))
    return abs(mean - HAAR_QUBIT_PURITY) <= 0.02, f"mean marginal purity={mean:.4f} over {count}"


def check_negativity_symmetry(options: VerifyOptions) -> CheckOutcome:
    worst = 0.0
    for rho in _mixed_states(options, _count(options, 10)):
        for left in ({0}, {1}, {2}):
            cut = Bipartition.of(left, 3)
            worst = max(worst, abs(negativity(rho, cut) - negativity(rho, cut.complement())))
    return worst <= NUMERIC, f"max asymmetry={worst:.3g}"


def check_ppt_zero(options: VerifyOptions) -> CheckOutcome:
    inconsistent = 0
    cut = Bipartition.of({0}, 2)
    states = [werner(float(p)) for p in np.linspace(0.0, 1.0, 101)]
    states += [reduced_state(rho, [0, 1]) for rho in _mixed_states(options, _count(options, 10))]
    for rho in states:
        pt = tensor.partial_transpose(rho.matrix, rho.dims, [0])
        ppt = tensor.hermitian_eigenvalues(pt).min >= -1e-10
        if ppt != (negativity(rho, cut) == 0.0):
            inconsistent += 1
    return inconsistent == 0, f"{inconsistent} of {len(states)} states inconsistent"


def check_log_negativity_monotone(options: VerifyOptions) -> CheckOutcome:
    cut = NOISY_GROUPING.cut_a_bc()
    mismatched = []
    for delta in (0.1, 0.3):
        channel = channels.dephasing(delta)
        states = [channels.apply_channel(_entangled(0.34, float(s)), channel, 2)
                  for s in np.linspace(0.0, 1.0, 21)]
        neg = [negativity(rho, cut) for rho in states]
        log_neg = [log_negativity(rho, cut) for rho in states]
        if int(np.argmax(neg)) != int(np.argmax(log_neg)):
            mismatched.append(delta)
    return not mismatched, f"argmax mismatch at {mismatched}"


def check_discard_monotone(options: VerifyOptions) -> CheckOutcome:
    worst = -math.inf
    for rho in _mixed_states(options, _count(options, 10)):
        whole = negativity(rho, Bipartition.of({0}, 3))
        discarded = negativity(reduced_state(rho, [0, 1]), Bipartition.of({0}, 2))
        worst = max(worst, discarded - whole)
    return worst <= 1e-9, f"max increase after discarding C={worst:.3g}"


def check_entropy_not_excessive(options: VerifyOptions) -> CheckOutcome:
    excessive = 0
    for i in range(_count(options, 10)):
        psi = haar_random_pure([2, 2, 3], trial_seed(options.seed, i))
        for measure in (MeasureKind.VON_NEUMANN_ENTROPY_OF_CUT, MeasureKind.LINEAR_ENTROPY_OF_CUT):
            excessive += protocol_record(psi, NOISY_GROUPING, measure).is_excessive
    return excessive == 0, f"excessive entropy records={excessive}"


def check_qubit_negativity_bound(options: VerifyOptions) -> CheckOutcome:
    lowest = math.inf
    for i in range(_count(options, 10)):
        psi = haar_random_pure([2, 3, 2], trial_seed(options.seed, i))
        lowest = min(lowest, theorem1_residual(psi, NOISY_GROUPING))
    return lowest >= -1e-9, f"min residual={lowest:.3g}"


def check_kraus_completeness(options: VerifyOptions) -> CheckOutcome:
    worst = 0.0
    for (_, build), x in product(_CONSTRUCTORS, np.linspace(0.0, 1.0, 101)):
        ops = build(float(x)).kraus_ops
        residual = sum(op.conj().T @ op for op in ops) - np.eye(2)
        worst = max(worst, float(np.max(np.abs(residual))))
    return worst <= NUMERIC, f"max completeness residual={worst:.3g}"


def check_channel_outputs(options: VerifyOptions) -> CheckOutcome:
    inputs = [
        reduced_state(haar_random_pure([2, 2, 2], trial_seed(options.seed, i)), [0, 1])
        for i in range(_count(options, 10))
    ]
    outputs = 0
    for (_, build), x in product(_CONSTRUCTORS, np.linspace(0.0, 1.0, 11)):
        channel = build(float(x))
        for rho in inputs:
            channels.apply_channel(rho, channel, 1)
            outputs += 1
    return True, f"{outputs} outputs are valid density matrices"


def check_dephasing_commutes(options: VerifyOptions) -> CheckOutcome:
    worst = 0.0
    rho = reduced_state(haar_random_pure([2, 2, 2], options.seed), [0, 1])
    for a, b in product((0.1, 0.35, 0.8), repeat=2):
        ab = channels.apply_channel(channels.apply_channel(rho, channels.dephasing(a), 0),
                                    channels.dephasing(b), 0)
        ba = channels.apply_channel(channels.apply_channel(rho, channels.dephasing(b), 0),
                                    channels.dephasing(a), 0)
        worst = max(worst, float(np.max(np.abs(ab.matrix - ba.matrix))))
    return worst <= TIGHT, f"max deviation={worst:.3g}"


def check_eb_boundaries(options: VerifyOptions) -> CheckOutcome:
    cases = [
        (channels.depolarizing(0.5), True),
        (channels.depolarizing(0.49), False),
        (channels.lambda2(0.5), True),
        (channels.lambda2(0.51), False),
        (channels.dephasing(0.999), False),
        (channels.amplitude_damping(0.999), False),
        (channels.lambda1(), True),
        (channels.identity(), False),
    ]
    wrong = [c.spec() for c, expected in cases if channels.is_entanglement_breaking(c) != expected]
    return not wrong, f"misclassified: {wrong}"


def check_swap_symmetry(options: VerifyOptions) -> CheckOutcome:
    broken = []
    for q, grouping in product((0.0, 0.3, 0.5, 0.8), (FIG3_GROUPING, FIG4_GROUPING)):
        record = ame_protocol(q, grouping)
        swapped = ame_protocol(q, grouping, swap=True)
        if (swapped.e_in, swapped.e_com, swapped.e_fin) != (record.e_com, record.e_in, record.e_fin):
            broken.append(f"{grouping.label()}@{q}")
    return not broken, f"asymmetric at {broken}"


def check_cphase_keeps_initial(options: VerifyOptions) -> CheckOutcome:
    worst = 0.0
    cut = NOISY_GROUPING.cut_ac_b()
    for p, s in product(np.linspace(0.0, 1.0, 6), np.linspace(0.0, 1.0, 6)):
        rho = product_density(werner(float(p)), ancilla_alpha(float(s)))
        after = _entangled(float(p), float(s))
        worst = max(worst, abs(negativity(rho, cut) - negativity(after, cut)))
    return worst <= NUMERIC, f"max change of E_AC:B={worst:.3g}"


def check_identity_gain(options: VerifyOptions) -> CheckOutcome:
    record = indirect_noisy(1 / 3, 1.0, channels.identity())
    return record.delta_e > 0, f"gain at p=1/3, s=1: {record.delta_e:.6f}"


def check_local_noise_order(options: VerifyOptions) -> CheckOutcome:
    local = channels.amplitude_damping(0.4)
    worst = 0.0
    for p in (0.2, 0.34, 0.7):
        rho = product_density(werner(p), ancilla_alpha(1.0))
        ac = channels.apply_channel(channels.apply_channel(rho, local, 0), local, 2)
        ca = channels.apply_channel(channels.apply_channel(rho, local, 2), local, 0)
        worst = max(worst, float(np.max(np.abs(ac.matrix - ca.matrix))))
    return worst <= TIGHT, f"max deviation={worst:.3g}"


def check_noisy_labs_reduction(options: VerifyOptions) -> CheckOutcome:
    worst = 0.0
    for p, delta in product((0.2, 0.34, 0.7), (0.0, 0.2, 0.6)):
        channel = channels.amplitude_damping(delta)
        labs = noisy_labs(p, channel, 0.0)
        _, staged = direct_then_indirect(p, 1.0, channel)
        worst = max(worst, *(abs(getattr(labs, f) - getattr(staged, f))
                             for f in ("e_in", "e_com", "e_fin")))
    return worst <= TIGHT, f"max deviation={worst:.3g}"


def check_sweep_records(options: VerifyOptions) -> CheckOutcome:
    grids = [
        ("ame", SweepGrid((Axis("q", 0.0, 1.0, 0.05),))),
        ("catalysis", SweepGrid((Axis("q", 0.0, 1.0, 0.05),))),
        ("indirect", SweepGrid((Axis("s", 0.0, 1.0, 0.1), Axis("delta", 0.0, 1.0, 0.1)))),
        ("direct_then_indirect",
         SweepGrid((Axis("p", 0.0, 1.0, 0.1), Axis("delta", 0.0, 1.0, 0.1)),
                   channel="depolarizing", fixed={"s": 2 / 3})),
        ("noisy_labs", SweepGrid((Axis("local_delta", 0.0, 1.0, 0.25), Axis("delta", 0.0, 1.0, 0.25)))),
    ]
    invalid = 0
    total = 0
    for scenario, grid in grids:
        records = sweep(grid, scenario, options.threads).records
        invalid += len(RecordValidator.validate_batch(records))
        total += len(records)
    return invalid == 0, f"{invalid} of {total} records violate record invariants"


def check_ame_state_valid(options: VerifyOptions) -> CheckOutcome:
    for q in np.linspace(0.0, 1.0, 11):
        rho_q(float(q))
    return True, "ρ(q) is a valid density matrix on the 0.1 grid"


PROPERTIES: List[Tuple[str, str, Callable[[VerifyOptions], CheckOutcome]]] = [
    ("tensor.partial-transpose-trace", "Partial transposes keep unit trace", check_partial_transpose_trace),
    ("tensor.partial-trace-composition", "Partial traces compose", check_partial_trace_composition),
    ("tensor.local-unitary-spectrum", "Local unitaries preserve the spectrum", check_local_unitary_spectrum),
    ("tensor.permutation-inverse", "Permutations invert", check_permutation_inverse),
    ("states.schmidt-symmetry", "Schmidt coefficients agree on both sides", check_schmidt_symmetry),
    ("states.werner-spectrum", "Werner states stay positive", check_werner_spectrum),
    ("states.ame-marginals", "AME marginals are maximally mixed", check_ame_marginals),
    ("states.haar-purity", "Haar marginal purity", check_haar_purity),
    ("states.ame-depolarised", "Depolarised AME states are valid", check_ame_state_valid),
    ("measures.negativity-symmetry", "Negativity is symmetric in the cut", check_negativity_symmetry),
    ("measures.ppt-zero", "Negativity vanishes exactly on PPT states", check_ppt_zero),
    ("measures.log-negativity-monotone", "Log-negativity orders like negativity", check_log_negativity_monotone),
    ("measures.discard-monotone", "Discarding a subsystem never adds negativity", check_discard_monotone),
    ("measures.entropy-not-excessive", "Entropy gains are never excessive", check_entropy_not_excessive),
    ("measures.qubit-negativity-bound", "Qubit-A negativity bound", check_qubit_negativity_bound),
    ("channels.kraus-completeness", "Kraus operators are complete", check_kraus_completeness),
    ("channels.valid-outputs", "Channel outputs are density matrices", check_channel_outputs),
    ("channels.dephasing-commutes", "Dephasing channels commute", check_dephasing_commutes),
    ("channels.eb-boundaries", "Entanglement-breaking boundaries", check_eb_boundaries),
    ("protocols.swap-symmetry", "Swapping B and C swaps E_in and E_com", check_swap_symmetry),
    ("protocols.cphase-keeps-initial", "The c-phase leaves E_AC:B unchanged", check_cphase_keeps_initial),
    ("protocols.identity-gain", "Noiseless indirect distribution gains", check_identity_gain),
    ("protocols.local-noise-order", "Order of idle-lab noise is irrelevant", check_local_noise_order),
    ("protocols.noisy-labs-reduction", "Noiseless labs reduce to direct-then-indirect", check_noisy_labs_reduction),
    ("protocols.sweep-records", "Sweep records satisfy record invariants", check_sweep_records),
]


def run_property_suite(options: VerifyOptions,
                       monitor: Optional[VerificationMonitor] = None) -> VerificationMonitor:
    """Run every invariant check and return the populated monitor."""
    monitor = monitor or VerificationMonitor("properties")
    logger.info("suite_started", suite=monitor.suite, trials=options.trials, seed=options.seed)
    for property_id, title, check in PROPERTIES:
        monitor.check(property_id, title, lambda check=check: check(options))
    logger.info("suite_completed", suite=monitor.suite, passed=monitor.all_passed)
    return monitor
