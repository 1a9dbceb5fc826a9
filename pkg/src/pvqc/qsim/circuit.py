"""Gate-list circuit representation, depth metric, and text serialization.

Qubit 0 is the most significant bit of the amplitude index.  The text
format is line-oriented: header `qubits N output K` (plus `inputs M` when
the input width differs from N), then one gate per line
`KIND target[,target] [angle]`; DENSE_UNITARY blocks follow inline as
rows of `re,im` pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import FormatError, ParameterError

MAX_QUBITS = 20
UNITARY_TOL = 1e-9

SINGLE_GATES = ("X", "Y", "Z", "H", "S", "T", "RX", "RY", "RZ", "PHASE")
DOUBLE_GATES = ("CNOT", "CZ", "SWAP", "CPHASE")
PARAM_GATES = frozenset({"RX", "RY", "RZ", "PHASE", "CPHASE"})
GATE_ARITY = {**{k: 1 for k in SINGLE_GATES}, **{k: 2 for k in DOUBLE_GATES}}


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple[int, ...]
    params: tuple[float, ...] = ()
    matrix: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        object.__setattr__(self, "params", tuple(self.params))
        if len(set(self.targets)) != len(self.targets):
            raise ParameterError("duplicate gate targets")
        if self.kind == "DENSE_UNITARY":
            if self.matrix is None:
                raise ParameterError("DENSE_UNITARY requires a matrix")
            dim = 2 ** len(self.targets)
            mat = np.asarray(self.matrix, dtype=complex)
            if mat.shape != (dim, dim):
                raise ParameterError("matrix shape does not match target count")
            object.__setattr__(self, "matrix", mat)
        elif self.kind in GATE_ARITY:
            if len(self.targets) != GATE_ARITY[self.kind]:
                raise ParameterError(f"{self.kind} takes {GATE_ARITY[self.kind]} targets")
            needs = self.kind in PARAM_GATES
            if needs != (len(self.params) == 1):
                raise ParameterError(f"wrong parameter count for {self.kind}")
        else:
            raise ParameterError(f"unknown gate kind {self.kind!r}")


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...]
    output_qubit: int
    n_inputs: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ParameterError(f"n_qubits must be in [1, {MAX_QUBITS}]")
        if not 0 <= self.output_qubit < self.n_qubits:
            raise ParameterError("output_qubit out of range")
        if self.n_inputs is None:
            object.__setattr__(self, "n_inputs", self.n_qubits)
        elif not 0 <= self.n_inputs <= self.n_qubits:
            raise ParameterError("n_inputs out of range")
        for g in self.gates:
            if any(t < 0 or t >= self.n_qubits for t in g.targets):
                raise ParameterError("gate target out of range")


def gate_weight(g: Gate) -> int:
    """Elementary-cost weight: dense k-qubit unitaries count as 4^k layers
    (two-level decomposition bound), everything else as 1."""
    if g.kind == "DENSE_UNITARY":
        return 4 ** len(g.targets)
    return 1


def circuit_depth(c: Circuit) -> int:
    """Greedy layering: a gate starts at the earliest layer where all its
    targets are free, occupying `gate_weight` layers."""
    frontier = [0] * c.n_qubits
    depth = 0
    for g in c.gates:
        start = max(frontier[t] for t in g.targets)
        end = start + gate_weight(g)
        for t in g.targets:
            frontier[t] = end
        depth = max(depth, end)
    return depth


def _fmt_complex(z: complex) -> str:
    return f"{repr(float(z.real))},{repr(float(z.imag))}"


def circuit_to_text(c: Circuit) -> str:
    lines = [f"qubits {c.n_qubits} output {c.output_qubit}"
             + (f" inputs {c.n_inputs}" if c.n_inputs != c.n_qubits else "")]
    for g in c.gates:
        targets = ",".join(str(t) for t in g.targets)
        if g.kind == "DENSE_UNITARY":
            lines.append(f"DENSE_UNITARY {targets}")
            for row in g.matrix:
                lines.append(" ".join(_fmt_complex(z) for z in row))
        elif g.params:
            lines.append(f"{g.kind} {targets} {repr(g.params[0])}")
        else:
            lines.append(f"{g.kind} {targets}")
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty circuit file")
    head = lines[0].split()
    try:
        if head[0] != "qubits" or head[2] != "output":
            raise FormatError("bad circuit header")
        n = int(head[1])
        output = int(head[3])
        n_inputs = None
        if len(head) > 4:
            if head[4] != "inputs" or len(head) != 6:
                raise FormatError("bad circuit header")
            n_inputs = int(head[5])
    except (IndexError, ValueError) as exc:
        raise FormatError("bad circuit header") from exc

    gates: list[Gate] = []
    i = 1
    while i < len(lines):
        parts = lines[i].split()
        kind = parts[0]
        try:
            targets = tuple(int(t) for t in parts[1].split(","))
        except (IndexError, ValueError) as exc:
            raise FormatError(f"bad gate line: {lines[i]!r}") from exc
        i += 1
        if kind == "DENSE_UNITARY":
            dim = 2 ** len(targets)
            if i + dim > len(lines):
                raise FormatError("truncated DENSE_UNITARY block")
            rows = []
            for row_line in lines[i:i + dim]:
                entries = row_line.split()
                if len(entries) != dim:
                    raise FormatError("bad DENSE_UNITARY row width")
                rows.append([complex(*map(float, e.split(","))) for e in entries])
            i += dim
            gates.append(Gate(kind, targets, matrix=np.array(rows, dtype=complex)))
        elif len(parts) == 3:
            gates.append(Gate(kind, targets, params=(float(parts[2]),)))
        elif len(parts) == 2:
            gates.append(Gate(kind, targets))
        else:
            raise FormatError(f"bad gate line: {lines[i - 1]!r}")
    return Circuit(n_qubits=n, gates=tuple(gates), output_qubit=output,
                   n_inputs=n_inputs)
