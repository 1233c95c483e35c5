"""Gate and circuit data model plus the scheduling metrics.

A gate is a named application of a fixed vocabulary to distinct wires; for
controlled kinds the controls come first and the target last. A circuit
owns ``n_main`` working qubits followed by ``n_anc`` ancilla qubits; the
ancillas are promised to start in |0> and be returned to |0> (the simulator
enforces this when extracting the induced operator).

Metrics, all pure functions of the gate list:

  t_count             number of t/tdg gates
  t_depth_as_written  stages of contiguous t/tdg gates on distinct qubits,
                      read off the gate list literally
  t_depth_scheduled   stages after dependency-aware packing: every non-T
                      gate is free, each t/tdg adds one stage along its
                      wire chains
  depth               layers of an as-soon-as-possible schedule in which
                      gates sharing a wire cannot share a layer

Multiply-controlled kinds (ccx, ccz) and cs/csdg are legal wherever a gate
is legal but contribute nothing to T-count or T-depth; they count toward
depth and gate count like any other gate.
"""

from __future__ import annotations

from dataclasses import dataclass

GATE_ARITY: dict[str, int] = {
    "x": 1,
    "y": 1,
    "z": 1,
    "h": 1,
    "s": 1,
    "sdg": 1,
    "t": 1,
    "tdg": 1,
    "cx": 2,
    "cz": 2,
    "cs": 2,
    "csdg": 2,
    "swap": 2,
    "ccx": 3,
    "ccz": 3,
}

T_KINDS = frozenset({"t", "tdg"})

# Gates whose conjugation action maps Pauli strings to signed Pauli strings.
CLIFFORD_KINDS = frozenset({"x", "y", "z", "h", "s", "sdg", "cx", "cz", "swap"})

_INVERSE_KIND = {"t": "tdg", "tdg": "t", "s": "sdg", "sdg": "s", "cs": "csdg", "csdg": "cs"}


def inverse_kind(kind: str) -> str:
    return _INVERSE_KIND.get(kind, kind)


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        arity = GATE_ARITY.get(self.kind)
        if arity is None:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        qubits = tuple(self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if len(qubits) != arity:
            raise ValueError(
                f"gate {self.kind!r} expects {arity} qubits, got {len(qubits)}"
            )
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"gate {self.kind!r} repeats a qubit: {qubits}")
        if any(q < 0 for q in qubits):
            raise ValueError("qubit indices must be non-negative")

    @property
    def is_t(self) -> bool:
        return self.kind in T_KINDS

    def inverse(self) -> Gate:
        return Gate(inverse_kind(self.kind), self.qubits)

    def __str__(self) -> str:
        return " ".join((self.kind, *map(str, self.qubits)))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over n_main working wires and n_anc ancillas.

    Ancillas occupy indices n_main .. n_main+n_anc-1. Instances are
    immutable values; every metric and transformation is a pure function.
    """

    n_main: int
    n_anc: int = 0
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.n_main < 0 or self.n_anc < 0:
            raise ValueError("qubit counts must be non-negative")
        width = self.n_main + self.n_anc
        for gate in self.gates:
            for q in gate.qubits:
                if q >= width:
                    raise ValueError(
                        f"gate '{gate}' uses qubit {q}, but the circuit has "
                        f"width {width}"
                    )

    @property
    def width(self) -> int:
        return self.n_main + self.n_anc


@dataclass(frozen=True)
class Metrics:
    t_count: int
    t_depth_as_written: int
    t_depth_scheduled: int
    depth: int
    gate_count: int
    n_main: int
    n_anc: int


def t_count(c: Circuit) -> int:
    """Number of t/tdg gates; t and tdg count alike."""
    return sum(1 for g in c.gates if g.is_t)


def t_depth_as_written(c: Circuit) -> int:
    """T-stages read off the literal gate list.

    A stage is a contiguous run of t/tdg gates on distinct qubits; any
    other gate ends the current run, and a repeated qubit starts a new
    stage. This literal reading is invariant under taking the adjoint.
    """
    stages = 0
    current: set[int] | None = None
    for gate in c.gates:
        if gate.is_t:
            q = gate.qubits[0]
            if current is None or q in current:
                current = {q}
                stages += 1
            else:
                current.add(q)
        else:
            current = None
    return stages


def t_depth_scheduled(c: Circuit) -> int:
    """T-stages after packing T gates as early as their wire chains allow.

    Per-wire stage counters: a non-T gate synchronises the counters of its
    wires (it costs no stage), a t/tdg gate bumps its wire by one. The
    result is the longest T-chain in the qubit-sharing partial order, an
    upper bound on the true minimal T-depth and independent of how gates
    on disjoint wires happen to be interleaved.
    """
    level = [0] * c.width
    for gate in c.gates:
        if gate.is_t:
            level[gate.qubits[0]] += 1
        else:
            peak = max(level[q] for q in gate.qubits)
            for q in gate.qubits:
                level[q] = peak
    return max(level, default=0)


def depth(c: Circuit) -> int:
    """Layers of the as-soon-as-possible schedule (all gates cost 1)."""
    busy_until = [0] * c.width
    total = 0
    for gate in c.gates:
        layer = 1 + max(busy_until[q] for q in gate.qubits)
        for q in gate.qubits:
            busy_until[q] = layer
        if layer > total:
            total = layer
    return total


def invert_gates(gates: tuple[Gate, ...]) -> tuple[Gate, ...]:
    """Reversed gate list with each gate replaced by its inverse kind."""
    return tuple(g.inverse() for g in reversed(gates))


def dagger(c: Circuit) -> Circuit:
    """The adjoint circuit; composing c then dagger(c) is the identity."""
    return Circuit(c.n_main, c.n_anc, invert_gates(c.gates))


def metrics(c: Circuit) -> Metrics:
    return Metrics(
        t_count=t_count(c),
        t_depth_as_written=t_depth_as_written(c),
        t_depth_scheduled=t_depth_scheduled(c),
        depth=depth(c),
        gate_count=len(c.gates),
        n_main=c.n_main,
        n_anc=c.n_anc,
    )
