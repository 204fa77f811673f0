"""State-vector storage and the built-in gate kernels.

Basis convention: qubit 0 is the least-significant bit of the amplitude index,
so basis state ``k`` assigns qubit ``q`` the bit ``(k >> q) & 1``.  All kernels
mutate the state in place and hand it back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diagnostics import (
    DuplicateQubitError,
    NormUnderflowError,
    QubitIndexError,
    QubitLimitError,
)

DEFAULT_QUBIT_LIMIT = 24

#: Unitary kinds accepted by apply_unitary, with their operand counts.
UNITARY_ARITY = {
    "not": 1,
    "hadamard": 1,
    "cnot": 2,
    "toffoli": 3,
    "fredkin": 3,
}

_SQRT1_2 = 1.0 / math.sqrt(2.0)


@dataclass
class StateVector:
    n: int
    amps: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amps.copy())

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


def new_state(n: int, limit: int = DEFAULT_QUBIT_LIMIT) -> StateVector:
    """All-zeros computational basis state on ``n`` qubits."""
    if n > limit:
        raise QubitLimitError(f"{n} qubits exceed the configured limit of {limit}")
    if n < 1:
        raise QubitIndexError(f"need at least one qubit, got {n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n, amps)


def _axes_view(state: StateVector, qubits: tuple[int, ...]) -> np.ndarray:
    """View with the given qubits moved to the leading axes, in order."""
    for q in qubits:
        if not 0 <= q < state.n:
            raise QubitIndexError(f"qubit {q} out of range for {state.n}-qubit state")
    if len(set(qubits)) != len(qubits):
        raise DuplicateQubitError(f"duplicate qubit operands {qubits}")
    psi = state.amps.reshape([2] * state.n)
    src = [state.n - 1 - q for q in qubits]
    return np.moveaxis(psi, src, range(len(qubits)))


def apply_unitary(state: StateVector, kind: str, qubits: tuple[int, ...]) -> StateVector:
    """Apply one built-in unitary to the designated qubits, in place.

    Operand order: cnot = (control, target); toffoli = (control0, control1,
    target); fredkin = (control, a, b).
    """
    arity = UNITARY_ARITY.get(kind)
    if arity is None:
        raise ValueError(f"unknown unitary kind {kind!r}")
    if len(qubits) != arity:
        raise ValueError(f"{kind} takes {arity} qubit operands, got {len(qubits)}")
    v = _axes_view(state, qubits)
    if kind == "not":
        tmp = v[0].copy()
        v[0] = v[1]
        v[1] = tmp
    elif kind == "hadamard":
        a0 = v[0].copy()
        v[0] = (a0 + v[1]) * _SQRT1_2
        v[1] = (a0 - v[1]) * _SQRT1_2
    elif kind == "cnot":
        tmp = v[1, 0].copy()
        v[1, 0] = v[1, 1]
        v[1, 1] = tmp
    elif kind == "toffoli":
        tmp = v[1, 1, 0].copy()
        v[1, 1, 0] = v[1, 1, 1]
        v[1, 1, 1] = tmp
    else:  # fredkin: swap a,b where control is set
        tmp = v[1, 0, 1].copy()
        v[1, 0, 1] = v[1, 1, 0]
        v[1, 1, 0] = tmp
    return state


def measure_qubit(state: StateVector, qubit: int, rng) -> tuple[str, StateVector]:
    """Projective measurement; collapses in place and returns ('0'|'1', state).

    Exactly one uniform draw is consumed, even when the outcome is forced.
    """
    v = _axes_view(state, (qubit,))
    p0 = float(np.sum(np.abs(v[0]) ** 2))
    p1 = float(np.sum(np.abs(v[1]) ** 2))
    u = rng.uniform()
    outcome = 1 if u < p1 else 0
    p_selected = p1 if outcome else p0
    if p_selected < 1e-12:
        raise NormUnderflowError(
            f"measured branch {outcome} of qubit {qubit} has probability {p_selected:.3e}"
        )
    v[1 - outcome] = 0.0
    state.amps *= 1.0 / math.sqrt(p_selected)
    return ("1" if outcome else "0"), state


def prepare_qubit(state: StateVector, qubit: int, value: str, rng) -> StateVector:
    """Force a qubit to a classical bit: measure, then flip on mismatch.

    Keeps the global state pure and unit-norm; the measurement draw happens
    unconditionally so seeded streams stay aligned with the schedule.
    """
    observed, state = measure_qubit(state, qubit, rng)
    if observed != value:
        apply_unitary(state, "not", (qubit,))
    return state


def snapshot(state: StateVector) -> list[tuple[float, float]]:
    """Immutable (magnitude, phase) pairs; zero amplitudes report phase 0.

    Magnitudes clamp to 1.0 so rounding never reports an impossible value;
    phases land in (-pi, pi].
    """
    mags = np.abs(state.amps)
    phases = np.angle(state.amps)
    out = []
    for m, p in zip(mags.tolist(), phases.tolist()):
        if m == 0.0:
            p = 0.0
        elif p == -math.pi:
            p = math.pi
        out.append((min(m, 1.0), p))
    return out
