"""Builders for the low-T-depth circuit library.

Every builder returns a plain Circuit over the common gate set, with its
ancilla block declared, and is checked in the test suite against an exact
oracle (a primitive gate matrix, a phase diagonal, or a brute-force
permutation). Names double as the command-line `emit` vocabulary.

The single-stage doubly-controlled pieces follow one template: CNOTs fan
the needed parities onto wires, one stage of t/tdg applies all the
eighth-root phases at once, and the mirrored CNOTs uncompute.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, Gate, invert_gates
from .sim import induced_unitary

CONSTRUCTION_NAMES = (
    "toffoli-nc",
    "toffoli-nc4",
    "toffoli-ammr",
    "ccz-tdepth1",
    "toffoli-tdepth1",
    "cc-minus-iz",
    "cc-minus-iz-noanc",
    "cc-minus-ix",
    "add-control",
    "multi-controlled-x",
    "controlled-t",
)


class UnknownConstruction(ValueError):
    pass


class BadParams(ValueError):
    pass


class NotAControlledCircuit(Exception):
    """add_control requires qubit 0 of the inner circuit to be a control."""


def _g(kind: str, *qubits: int) -> Gate:
    return Gate(kind, qubits)


@dataclass(frozen=True)
class ConstructionId:
    """A library entry: a name plus its parameters, when it takes any."""

    name: str
    controls: int | None = None
    use_ancilla: bool = True

    def __post_init__(self) -> None:
        if self.name not in CONSTRUCTION_NAMES:
            raise UnknownConstruction(f"unknown construction {self.name!r}")
        if (self.name == "multi-controlled-x") != (self.controls is not None):
            raise BadParams(
                "'multi-controlled-x' takes a control count; other constructions do not"
            )


def toffoli_nc() -> Circuit:
    """The textbook 7-T Toffoli with its serial T stages."""
    return Circuit(3, 0, (
        _g("h", 2), _g("cx", 1, 2), _g("tdg", 2), _g("cx", 0, 2),
        _g("t", 2), _g("cx", 1, 2), _g("tdg", 2), _g("cx", 0, 2),
        _g("t", 2), _g("tdg", 1), _g("h", 2), _g("cx", 0, 1),
        _g("tdg", 1), _g("cx", 0, 1), _g("s", 1), _g("t", 0),
    ))


def toffoli_nc4() -> Circuit:
    """The same Toffoli with commuting gates packed into four T stages."""
    return Circuit(3, 0, (
        _g("h", 2), _g("cx", 1, 2), _g("tdg", 2), _g("cx", 0, 2),
        _g("t", 2), _g("cx", 1, 2), _g("tdg", 2), _g("tdg", 1),
        _g("cx", 0, 2), _g("cx", 0, 1), _g("t", 2), _g("tdg", 1),
        _g("t", 0), _g("cx", 0, 1), _g("h", 2), _g("s", 1),
    ))


def toffoli_ammr() -> Circuit:
    """The ancilla-free three-stage Toffoli."""
    return Circuit(3, 0, (
        _g("h", 2), _g("t", 2), _g("t", 1), _g("tdg", 0),
        _g("cx", 0, 1), _g("cx", 2, 0), _g("tdg", 0), _g("cx", 1, 2),
        _g("cx", 1, 0), _g("t", 2), _g("tdg", 1), _g("tdg", 0),
        _g("cx", 2, 0), _g("cx", 1, 2), _g("s", 0), _g("h", 2),
        _g("cx", 0, 1),
    ))


def _ccz_tdepth1_gates(x: int, y: int, z: int, a: tuple[int, int, int, int]) -> tuple[Gate, ...]:
    """CCZ as one T stage: fan out the four parities, phase, mirror back.

    Ancillas receive x^y^z, x^y, y^z, x^z; the CNOT network is arranged in
    three layers so the whole block schedules at depth 7 (with slack on the
    z wire for a basis-change Hadamard on either side).
    """
    p_xyz, p_xy, p_yz, p_xz = a
    compute = (
        _g("cx", x, p_xyz), _g("cx", y, p_yz),
        _g("cx", z, p_yz), _g("cx", x, p_xy), _g("cx", p_xyz, p_xz),
        _g("cx", p_yz, p_xyz), _g("cx", y, p_xy), _g("cx", z, p_xz),
    )
    stage = (
        _g("t", x), _g("t", y), _g("t", z), _g("t", p_xyz),
        _g("tdg", p_xy), _g("tdg", p_yz), _g("tdg", p_xz),
    )
    return compute + stage + invert_gates(compute)


def ccz_tdepth1() -> Circuit:
    """Doubly-controlled Z in a single T stage, four ancillas."""
    return Circuit(3, 4, _ccz_tdepth1_gates(0, 1, 2, (3, 4, 5, 6)))


def toffoli_tdepth1() -> Circuit:
    """Toffoli in a single T stage and overall depth 7, four ancillas."""
    body = _ccz_tdepth1_gates(0, 1, 2, (3, 4, 5, 6))
    return Circuit(3, 4, (_g("h", 2),) + body + (_g("h", 2),))


def _cc_minus_iz_gates(x: int, y: int, z: int, anc: int | None) -> tuple[Gate, ...]:
    """Doubly-controlled -iZ: controls x,y and Z-wire z, four t/tdg total.

    With an ancilla the four phases run as one stage (depth 5); without,
    the x wire is reused for two parities and the stage splits in two
    (depth 7, fewer gates).
    """
    if anc is not None:
        compute = (_g("cx", z, y), _g("cx", x, anc), _g("cx", z, x), _g("cx", y, anc))
        stage = (_g("tdg", x), _g("tdg", y), _g("t", z), _g("t", anc))
        return compute + stage + invert_gates(compute)
    return (
        _g("cx", z, y), _g("cx", y, x),
        _g("t", x), _g("tdg", y), _g("t", z),
        _g("cx", z, y), _g("cx", y, x),
        _g("tdg", x), _g("cx", z, x),
    )


def cc_minus_iz(use_ancilla: bool = True) -> Circuit:
    """Doubly-controlled -iZ on (controls 0,1; wire 2)."""
    if use_ancilla:
        return Circuit(3, 1, _cc_minus_iz_gates(0, 1, 2, 3))
    return Circuit(3, 0, _cc_minus_iz_gates(0, 1, 2, None))


def _cc_minus_ix_gates(x: int, y: int, target: int, anc: int | None) -> tuple[Gate, ...]:
    inner = _cc_minus_iz_gates(x, y, target, anc)
    return (_g("h", target),) + inner + (_g("h", target),)


def cc_minus_ix(use_ancilla: bool = True) -> Circuit:
    """Doubly-controlled -iX on (controls 0,1; target 2)."""
    if use_ancilla:
        return Circuit(3, 1, _cc_minus_ix_gates(0, 1, 2, 3))
    return Circuit(3, 0, _cc_minus_ix_gates(0, 1, 2, None))


def _check_controlled(g: Circuit) -> None:
    """Require the induced operator to be identity when qubit 0 is |0>."""
    if g.n_main < 1:
        raise NotAControlledCircuit("inner circuit has no main qubits")
    u = induced_unitary(g)
    half = u.dim // 2
    for x in range(half):
        for i in range(u.dim):
            v = u.rows[i][x]
            if (i == x and v != 1) or (i != x and not v.is_zero):
                raise NotAControlledCircuit(
                    "qubit 0 of the inner circuit is not a pure control"
                )


def add_control(
    g: Circuit, use_ancilla: bool = True, carry_ancilla: bool = False
) -> Circuit:
    """Add one more control to a circuit whose qubit 0 is already a control.

    The two controls are folded onto a fresh conjunction ancilla by a
    doubly-controlled -iX, the inner circuit runs with the ancilla as its
    control, and the mirrored doubly-controlled iX cancels the phases and
    restores the ancilla. Costs 8 t/tdg gates, at most 2 extra T stages,
    and 28 gates (22 without the inner parity ancilla, at a depth and
    T-stage premium).

    With ``carry_ancilla`` the parity ancilla is left holding the new
    control's value across the inner circuit, saving two gates (26); it is
    off by default to keep every ancilla |0> outside the sandwich.
    """
    _check_controlled(g)
    if carry_ancilla and not use_ancilla:
        raise BadParams("carry_ancilla only applies to the ancilla form")
    m = g.n_main
    conj = m + 1 + g.n_anc
    parity = conj + 1 if use_ancilla else None
    n_anc = g.n_anc + (2 if use_ancilla else 1)

    fold = _cc_minus_ix_gates(0, 1, conj, parity)
    unfold = invert_gates(fold)
    if carry_ancilla:
        # Leave the parity ancilla holding the new control's value: drop the
        # CNOT that clears it at the end of the fold and the mirrored CNOT
        # that would recompute it at the start of the unfold.
        marker = Gate("cx", (0, parity))
        last = max(i for i, gate in enumerate(fold) if gate == marker)
        fold = fold[:last] + fold[last + 1 :]
        first = min(i for i, gate in enumerate(unfold) if gate == marker)
        unfold = unfold[:first] + unfold[first + 1 :]

    inner = tuple(
        Gate(gate.kind, tuple(conj if q == 0 else q + 1 for q in gate.qubits))
        for gate in g.gates
    )
    return Circuit(m + 1, n_anc, fold + inner + unfold)


def multi_controlled_x(k: int, use_ancilla: bool = True) -> Circuit:
    """X on a target wire controlled on k wires, 7 + 8(k-2) t/tdg for k >= 2.

    Controls are folded pairwise onto conjunction ancillas, all folds of a
    round sharing one T stage, until two wires remain for a single-stage
    Toffoli core; the folds then unwind in reverse. Rounds double the
    handled controls, so the T-depth grows as 1 + 2*ceil(log2(k) - 1).
    """
    if k < 1:
        raise BadParams("control count must be at least 1")
    if k == 1:
        return Circuit(2, 0, (_g("cx", 0, 1),))
    if k == 2:
        return toffoli_tdepth1()

    target = k
    collectors = k - 2
    rounds: list[list[tuple[int, int, int]]] = []
    wires = list(range(k))
    next_collector = k + 1
    while len(wires) > 2:
        folds = []
        merged = []
        for i in range(0, len(wires) - 1, 2):
            folds.append((wires[i], wires[i + 1], next_collector))
            merged.append(next_collector)
            next_collector += 1
        if len(wires) % 2:
            merged.append(wires[-1])
        rounds.append(folds)
        wires = merged

    pool_base = k + 1 + collectors
    pool_size = max(max(len(folds) for folds in rounds), 4)
    n_anc = collectors + pool_size

    fold_gates: list[Gate] = []
    for folds in rounds:
        for slot, (u, v, out) in enumerate(folds):
            parity = pool_base + slot if use_ancilla else None
            fold_gates.extend(_cc_minus_ix_gates(u, v, out, parity))
    core = _ccz_tdepth1_gates(wires[0], wires[1], target, tuple(range(pool_base, pool_base + 4)))
    gates = (
        tuple(fold_gates)
        + (_g("h", target),)
        + core
        + (_g("h", target),)
        + invert_gates(tuple(fold_gates))
    )
    return Circuit(k + 1, n_anc, gates)


def controlled_t(use_ancilla: bool = True) -> Circuit:
    """Controlled T on (control 0, target 1), nine t/tdg gates.

    T fixes |0>, so it is itself a controlled phase; adding a control to
    the one-gate circuit sandwiches a single T between the conjunction
    folds.
    """
    return add_control(Circuit(1, 0, (_g("t", 0),)), use_ancilla=use_ancilla)


def build(cid: ConstructionId) -> Circuit:
    """Materialise a construction by id; see CONSTRUCTION_NAMES."""
    name = cid.name
    if name == "toffoli-nc":
        return toffoli_nc()
    if name == "toffoli-nc4":
        return toffoli_nc4()
    if name == "toffoli-ammr":
        return toffoli_ammr()
    if name == "ccz-tdepth1":
        return ccz_tdepth1()
    if name == "toffoli-tdepth1":
        return toffoli_tdepth1()
    if name == "cc-minus-iz":
        return cc_minus_iz(use_ancilla=cid.use_ancilla)
    if name == "cc-minus-iz-noanc":
        return cc_minus_iz(use_ancilla=False)
    if name == "cc-minus-ix":
        return cc_minus_ix(use_ancilla=cid.use_ancilla)
    if name == "add-control":
        # Library demo: one more control on a CNOT gives a Toffoli.
        return add_control(
            Circuit(2, 0, (_g("cx", 0, 1),)), use_ancilla=cid.use_ancilla
        )
    if name == "multi-controlled-x":
        assert cid.controls is not None
        return multi_controlled_x(cid.controls, use_ancilla=cid.use_ancilla)
    if name == "controlled-t":
        return controlled_t(use_ancilla=cid.use_ancilla)
    raise UnknownConstruction(f"unknown construction {name!r}")
