"""Exact simulation over ring scalars: states, unitaries, and oracles.

Qubit 0 is the most significant bit of a basis index, matching the
top-to-bottom wire order of circuit diagrams: on three wires the basis
state |x y z> has index 4x + 2y + z. A state stores only its nonzero
amplitudes internally (most circuits here are permutation+phase and keep
basis inputs on a single branch); `amplitudes` materialises the dense
vector on demand.

Width caps guard the dense entry points: full-unitary extraction defaults
to 10 qubits and state simulation to 12, both overridable per call or via
the TDO_MAX_QUBITS environment variable. Induced-unitary extraction runs
columnwise over main-register basis inputs and is not capped.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from collections.abc import Iterable, Mapping, Sequence

from .circuit import GATE_ARITY, Circuit, Gate
from .ring import IM, INV_SQRT2, MINUS_ONE, OMEGA, ONE, ZERO, RingScalar, omega_pow

DEFAULT_STATE_CAP = 12
DEFAULT_UNITARY_CAP = 10


class WidthMismatch(ValueError):
    """State and circuit widths disagree."""


class TooWide(ValueError):
    """The request exceeds the configured simulation width cap."""


class AncillaContractViolated(Exception):
    """Some basis input leaves an ancilla nonzero or entangled."""

    def __init__(self, basis_input: int) -> None:
        super().__init__(
            f"ancillas not restored to |0> for main-register basis input {basis_input}"
        )
        self.basis_input = basis_input


def _cap(explicit: int | None, default: int) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("TDO_MAX_QUBITS")
    return int(env) if env else default


_PHASES = {
    "z": MINUS_ONE,
    "s": IM,
    "sdg": -IM,
    "t": OMEGA,
    "tdg": OMEGA.conjugate(),
}


def _accumulate(out: dict[int, RingScalar], index: int, value: RingScalar) -> None:
    held = out.get(index)
    out[index] = value if held is None else held + value


def _apply_gate(amps: dict[int, RingScalar], gate: Gate, n: int) -> dict[int, RingScalar]:
    kind = gate.kind
    qs = gate.qubits
    if kind == "cx":
        cbit = 1 << (n - 1 - qs[0])
        tbit = 1 << (n - 1 - qs[1])
        return {(i ^ tbit if i & cbit else i): v for i, v in amps.items()}
    if kind in _PHASES:
        bit = 1 << (n - 1 - qs[0])
        phase = _PHASES[kind]
        return {i: (v * phase if i & bit else v) for i, v in amps.items()}
    if kind == "h":
        bit = 1 << (n - 1 - qs[0])
        out: dict[int, RingScalar] = {}
        for i, v in amps.items():
            w = v * INV_SQRT2
            _accumulate(out, i & ~bit, w)
            _accumulate(out, i | bit, -w if i & bit else w)
        return {i: v for i, v in out.items() if v}
    if kind == "x":
        bit = 1 << (n - 1 - qs[0])
        return {i ^ bit: v for i, v in amps.items()}
    if kind == "y":
        bit = 1 << (n - 1 - qs[0])
        return {i ^ bit: (v * (-IM) if i & bit else v * IM) for i, v in amps.items()}
    if kind == "cz":
        mask = (1 << (n - 1 - qs[0])) | (1 << (n - 1 - qs[1]))
        return {i: (-v if i & mask == mask else v) for i, v in amps.items()}
    if kind in ("cs", "csdg"):
        mask = (1 << (n - 1 - qs[0])) | (1 << (n - 1 - qs[1]))
        phase = IM if kind == "cs" else -IM
        return {i: (v * phase if i & mask == mask else v) for i, v in amps.items()}
    if kind == "swap":
        abit = 1 << (n - 1 - qs[0])
        bbit = 1 << (n - 1 - qs[1])
        both = abit | bbit
        return {
            (i ^ both if bool(i & abit) != bool(i & bbit) else i): v
            for i, v in amps.items()
        }
    if kind == "ccx":
        cmask = (1 << (n - 1 - qs[0])) | (1 << (n - 1 - qs[1]))
        tbit = 1 << (n - 1 - qs[2])
        return {(i ^ tbit if i & cmask == cmask else i): v for i, v in amps.items()}
    if kind == "ccz":
        mask = (1 << (n - 1 - qs[0])) | (1 << (n - 1 - qs[1])) | (1 << (n - 1 - qs[2]))
        return {i: (-v if i & mask == mask else v) for i, v in amps.items()}
    raise ValueError(f"unsupported gate kind {kind!r}")


class ExactState:
    """An n-qubit state vector with exact amplitudes.

    Equality is exact; amplitudes that cancel are dropped, so two states
    are equal iff they are the same vector.
    """

    __slots__ = ("n", "_amps")

    def __init__(
        self, n: int, amplitudes: Mapping[int, RingScalar] | Sequence[RingScalar]
    ) -> None:
        if isinstance(amplitudes, Mapping):
            items = amplitudes.items()
        else:
            if len(amplitudes) != 1 << n:
                raise ValueError(f"expected {1 << n} amplitudes")
            items = enumerate(amplitudes)
        amps = {i: v for i, v in items if v}
        for i in amps:
            if not 0 <= i < 1 << n:
                raise ValueError(f"basis index {i} out of range")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_amps", amps)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ExactState is immutable")

    @classmethod
    def basis(cls, n: int, index: int) -> ExactState:
        return cls(n, {index: ONE})

    def amplitude(self, index: int) -> RingScalar:
        return self._amps.get(index, ZERO)

    @property
    def amplitudes(self) -> tuple[RingScalar, ...]:
        """Dense amplitude vector in basis-index order."""
        return tuple(self._amps.get(i, ZERO) for i in range(1 << self.n))

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._amps))

    def norm_squared(self) -> RingScalar:
        total = ZERO
        for v in self._amps.values():
            total = total + v * v.conjugate()
        return total

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactState):
            return self.n == other.n and self._amps == other._amps
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self._amps.items()))))

    def __repr__(self) -> str:
        inside = ", ".join(f"{i}: {v}" for i, v in sorted(self._amps.items()))
        return f"ExactState({self.n}, {{{inside}}})"


def apply_circuit(state: ExactState, c: Circuit) -> ExactState:
    """Run the gate list over the state; exact amplitudes, new state."""
    if state.n != c.width:
        raise WidthMismatch(
            f"state has {state.n} qubits but the circuit needs {c.width}"
        )
    amps = dict(state._amps)
    for gate in c.gates:
        amps = _apply_gate(amps, gate, state.n)
    return ExactState(state.n, amps)


class ExactMatrix:
    """A dense square matrix of ring scalars."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows: Sequence[Sequence[RingScalar]]) -> None:
        dim = len(rows)
        frozen = tuple(tuple(row) for row in rows)
        for row in frozen:
            if len(row) != dim:
                raise ValueError("matrix must be square")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "rows", frozen)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, dim: int) -> ExactMatrix:
        return cls(
            [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)]
        )

    @classmethod
    def diagonal(cls, entries: Sequence[RingScalar]) -> ExactMatrix:
        dim = len(entries)
        return cls(
            [[entries[i] if i == j else ZERO for j in range(dim)] for i in range(dim)]
        )

    @classmethod
    def from_columns(cls, dim: int, columns: Sequence[Mapping[int, RingScalar]]) -> ExactMatrix:
        rows = [[ZERO] * dim for _ in range(dim)]
        for j, column in enumerate(columns):
            for i, v in column.items():
                rows[i][j] = v
        return cls(rows)

    def __getitem__(self, index: int) -> tuple[RingScalar, ...]:
        return self.rows[index]

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        dim = self.dim
        out = [[ZERO] * dim for _ in range(dim)]
        for i in range(dim):
            arow = self.rows[i]
            orow = out[i]
            for k in range(dim):
                aik = arow[k]
                if aik.is_zero:
                    continue
                brow = other.rows[k]
                for j in range(dim):
                    bkj = brow[j]
                    if bkj.is_zero:
                        continue
                    orow[j] = orow[j] + aik * bkj
        return ExactMatrix(out)

    def dagger(self) -> ExactMatrix:
        return ExactMatrix(
            [
                [self.rows[j][i].conjugate() for j in range(self.dim)]
                for i in range(self.dim)
            ]
        )

    def scaled(self, scalar: RingScalar) -> ExactMatrix:
        return ExactMatrix([[scalar * v for v in row] for row in self.rows])

    def is_unitary(self) -> bool:
        return self @ self.dagger() == ExactMatrix.identity(self.dim)

    def is_diagonal(self) -> bool:
        return all(
            v.is_zero
            for i, row in enumerate(self.rows)
            for j, v in enumerate(row)
            if i != j
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactMatrix):
            return self.dim == other.dim and self.rows == other.rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"ExactMatrix(dim={self.dim})"


def gate_matrix(kind: str) -> ExactMatrix:
    """The exact matrix of a gate kind over its own wires (MSB first)."""
    arity = GATE_ARITY.get(kind)
    if arity is None:
        raise ValueError(f"unknown gate kind {kind!r}")
    n = arity
    c = Circuit(n, 0, (Gate(kind, tuple(range(n))),))
    return unitary_of(c, max_qubits=n)


def unitary_of(c: Circuit, max_qubits: int | None = None) -> ExactMatrix:
    """Full 2^width unitary via columnwise simulation."""
    n = c.width
    if n > _cap(max_qubits, DEFAULT_UNITARY_CAP):
        raise TooWide(f"{n}-qubit unitary exceeds the width cap")
    columns = []
    for x in range(1 << n):
        columns.append(apply_circuit(ExactState.basis(n, x), c)._amps)
    return ExactMatrix.from_columns(1 << n, columns)


def induced_unitary(c: Circuit) -> ExactMatrix:
    """The operator on the main register, checking the ancilla contract.

    Every main-register basis input is simulated with ancillas in |0>; if
    any output amplitude touches a nonzero ancilla pattern the contract is
    broken and AncillaContractViolated reports the offending input.
    """
    n = c.width
    anc_mask = (1 << c.n_anc) - 1
    dim = 1 << c.n_main
    columns = []
    for x in range(dim):
        state = apply_circuit(ExactState.basis(n, x << c.n_anc), c)
        column: dict[int, RingScalar] = {}
        for index, v in state._amps.items():
            if index & anc_mask:
                raise AncillaContractViolated(x)
            column[index >> c.n_anc] = v
        columns.append(column)
    return ExactMatrix.from_columns(dim, columns)


def equivalence_phase(c1: Circuit, c2: Circuit) -> int | None:
    """The j with induced(c1) = omega^j * induced(c2), or None."""
    if c1.n_main != c2.n_main:
        raise WidthMismatch("circuits act on different main registers")
    u1 = induced_unitary(c1)
    u2 = induced_unitary(c2)
    if u1 == u2:
        return 0
    for j in range(1, 8):
        if u1 == u2.scaled(omega_pow(j)):
            return j
    return None


def equivalent(c1: Circuit, c2: Circuit, up_to_global_phase: bool = False) -> bool:
    """Exact equality of induced unitaries, optionally modulo omega^j."""
    phase = equivalence_phase(c1, c2)
    if up_to_global_phase:
        return phase is not None
    return phase == 0


def is_almost_classical(m: ExactMatrix) -> bool:
    """Whether the matrix is monomial: one nonzero entry per row and column."""
    dim = m.dim
    col_counts = [0] * dim
    for row in m.rows:
        row_count = 0
        for j, v in enumerate(row):
            if not v.is_zero:
                row_count += 1
                col_counts[j] += 1
        if row_count != 1:
            return False
    return all(count == 1 for count in col_counts)


@dataclass(frozen=True)
class PhaseSpec:
    """A diagonal of eighth-root phases: entry omega^(sum sign*parity(mask, x)).

    Each term is a nonempty set of qubit indices and a sign; parity is the
    XOR of the basis bits selected by the mask.
    """

    n: int
    terms: tuple[tuple[tuple[int, ...], int], ...]

    def __init__(self, n: int, terms: Iterable[tuple[Iterable[int], int]]) -> None:
        object.__setattr__(self, "n", n)
        normalised = []
        for mask, sign in terms:
            qubits = tuple(sorted(set(mask)))
            if not qubits:
                raise ValueError("phase masks must be nonempty")
            if any(q < 0 or q >= n for q in qubits):
                raise ValueError("phase mask qubit out of range")
            if sign not in (-1, 1):
                raise ValueError("phase sign must be +1 or -1")
            normalised.append((qubits, sign))
        masks = [m for m, _ in normalised]
        if len(set(masks)) != len(masks):
            raise ValueError("phase masks must be distinct")
        object.__setattr__(self, "terms", tuple(normalised))


def phase_diagonal(spec: PhaseSpec) -> ExactMatrix:
    """Materialise a PhaseSpec as an exact diagonal matrix."""
    n = spec.n
    bitmasks = [
        (sum(1 << (n - 1 - q) for q in mask), sign) for mask, sign in spec.terms
    ]
    entries = []
    for x in range(1 << n):
        exponent = sum(
            sign * (bin(x & bits).count("1") & 1) for bits, sign in bitmasks
        )
        entries.append(omega_pow(exponent))
    return ExactMatrix.diagonal(entries)


def single_qubit_cliffords() -> tuple[ExactMatrix, ...]:
    """The 24 single-qubit Clifford operators modulo global phase.

    Enumerated as products of the Hadamard and phase gates, with each
    coset represented by its lexicographically least omega-scaling.
    """

    def canonical(m: ExactMatrix) -> ExactMatrix:
        def key(mat: ExactMatrix) -> tuple:
            return tuple(
                (v.a, v.b, v.c, v.d, v.k) for row in mat.rows for v in row
            )

        return min((m.scaled(omega_pow(j)) for j in range(8)), key=key)

    generators = (gate_matrix("h"), gate_matrix("s"))
    seen: dict[tuple, ExactMatrix] = {}
    frontier = [canonical(ExactMatrix.identity(2))]
    seen[frontier[0].rows] = frontier[0]
    while frontier:
        nxt = []
        for m in frontier:
            for g in generators:
                candidate = canonical(g @ m)
                if candidate.rows not in seen:
                    seen[candidate.rows] = candidate
                    nxt.append(candidate)
        frontier = nxt
    return tuple(seen.values())
