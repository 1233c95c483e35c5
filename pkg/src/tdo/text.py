"""Line-oriented text format for circuits, with exact round-trip.

One construct per line; '#' starts a comment, blank lines are ignored:

    qubits N        required first
    ancillas M      optional, directly after the qubits header
    <mnemonic> q..  one gate per line, controls before target

Integers are plain decimals. Emission is canonical (lowercase mnemonics,
single spaces, no comments, ancilla header omitted when zero), so
parse(emit(c)) == c and emit(parse(text)) normalises text.
"""

from __future__ import annotations

import re

from .circuit import GATE_ARITY, Circuit, Gate

_TOKEN = re.compile(r"\S+")


class SourceError(Exception):
    """A positioned parse failure; never aborts the process."""

    def __init__(self, line: int, column: int, message: str) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


def _parse_int(token: str, line: int, column: int) -> int:
    if not token.isdigit():
        raise SourceError(line, column, f"malformed integer {token!r}")
    return int(token)


def parse(text: str) -> Circuit:
    """Parse circuit text; raises SourceError with a 1-based position."""
    n_main: int | None = None
    n_anc = 0
    gates: list[Gate] = []
    ancillas_allowed = True

    for lineno, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if not tokens:
            continue
        (word, col), args = tokens[0], tokens[1:]

        if n_main is None:
            if word != "qubits":
                raise SourceError(lineno, col, "expected 'qubits N' header")
            if len(args) != 1:
                raise SourceError(lineno, col, "'qubits' takes exactly one integer")
            n_main = _parse_int(args[0][0], lineno, args[0][1])
            continue

        if word == "qubits":
            raise SourceError(lineno, col, "duplicate 'qubits' header")

        if word == "ancillas":
            if not ancillas_allowed:
                raise SourceError(
                    lineno, col, "'ancillas' must directly follow the qubits header"
                )
            if len(args) != 1:
                raise SourceError(lineno, col, "'ancillas' takes exactly one integer")
            n_anc = _parse_int(args[0][0], lineno, args[0][1])
            ancillas_allowed = False
            continue

        ancillas_allowed = False
        arity = GATE_ARITY.get(word)
        if arity is None:
            raise SourceError(lineno, col, f"unknown mnemonic {word!r}")
        if len(args) < arity:
            raise SourceError(
                lineno, col, f"gate '{word}' expects {arity} qubit indices, got {len(args)}"
            )
        if len(args) > arity:
            raise SourceError(
                lineno, args[arity][1], f"gate '{word}' expects {arity} qubit indices"
            )
        width = n_main + n_anc
        qubits = []
        for token, tcol in args:
            q = _parse_int(token, lineno, tcol)
            if q >= width:
                raise SourceError(
                    lineno, tcol, f"qubit index {q} out of range for width {width}"
                )
            if q in qubits:
                raise SourceError(lineno, tcol, f"repeated qubit index {q}")
            qubits.append(q)
        gates.append(Gate(word, tuple(qubits)))

    if n_main is None:
        raise SourceError(1, 1, "missing 'qubits N' header")
    return Circuit(n_main, n_anc, tuple(gates))


def emit(c: Circuit) -> str:
    """Canonical text for a circuit; inverse of parse on valid circuits."""
    lines = [f"qubits {c.n_main}"]
    if c.n_anc:
        lines.append(f"ancillas {c.n_anc}")
    lines.extend(str(g) for g in c.gates)
    return "\n".join(lines) + "\n"
