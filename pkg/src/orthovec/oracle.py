"""Oracle operators, product input states, and exact application."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .boolfn import ArityError, TruthTable
from .exactlin import (
    ONE,
    ZERO,
    CScalar,
    DimensionError,
    KMatrix,
    KVector,
    LiteralError,
    format_scalar,
    matvec,
    parse_scalar,
    tensor,
)

__all__ = [
    "ProductState",
    "LinearOp",
    "MINUS",
    "PLUS",
    "build_xor_oracle",
    "build_overwrite_oracle",
    "build_oracle",
    "product_state",
    "apply",
    "parse_qubit",
    "parse_product_state",
    "format_product_state",
]

Pair = tuple[CScalar, CScalar]

MINUS: Pair = (ONE, -ONE)  # |0> - |1>, unnormalized
PLUS: Pair = (ONE, ONE)


@dataclass(frozen=True)
class ProductState:
    """Per-qubit amplitude pairs ``(a_i, b_i)``, most significant qubit first."""

    qubit_amps: tuple[Pair, ...]

    def __post_init__(self):
        amps = tuple((CScalar.coerce(a), CScalar.coerce(b)) for a, b in self.qubit_amps)
        if not amps:
            raise ValueError("a product state needs at least one qubit")
        for i, (a, b) in enumerate(amps):
            if not a and not b:
                raise ValueError(f"qubit {i} has both amplitudes zero")
        object.__setattr__(self, "qubit_amps", amps)

    @classmethod
    def uniform(cls, pair: Pair, n: int) -> "ProductState":
        return cls((pair,) * n)

    @property
    def n_qubits(self) -> int:
        return len(self.qubit_amps)

    def with_ancilla(self, pair: Pair) -> "ProductState":
        return ProductState(self.qubit_amps + (pair,))


@dataclass(frozen=True)
class LinearOp:
    matrix: KMatrix
    label: str = ""

    def __post_init__(self):
        m = self.matrix
        if not m.is_square:
            raise DimensionError("operator matrix must be square")
        if m.rows & (m.rows - 1):
            raise DimensionError(f"operator dimension {m.rows} is not a power of two")

    @property
    def dim(self) -> int:
        return self.matrix.rows


def _permutation_like(dim: int, target: Sequence[int]) -> KMatrix:
    """Matrix whose column ``c`` is the basis vector ``target[c]``."""
    entries = [ZERO] * (dim * dim)
    for col, row in enumerate(target):
        entries[row * dim + col] = ONE
    return KMatrix(dim, dim, tuple(entries))


def build_xor_oracle(f: TruthTable) -> LinearOp:
    """``|x, y> -> |x, y XOR f(x)>`` on ``n + 1`` qubits, ancilla last."""
    dim = 1 << (f.arity + 1)
    target = [(c & ~1) | ((c & 1) ^ f.values[c >> 1]) for c in range(dim)]
    return LinearOp(_permutation_like(dim, target), f"U[{f}]")


def build_overwrite_oracle(f: TruthTable, source: str = "x") -> LinearOp:
    """Two-qubit overwrite oracle for a one-bit ``f``; not unitary in general.

    ``source="x"`` (default) writes ``f(x)`` over the second register,
    ``|x y> -> |x f(x)>``, which is the map that produces the
    ``(+0+0), (+00+), (0++0), (0+0+)`` output table on ``|(0+1)(0+1)>``.
    ``source="y"`` is the literal ``|x y> -> |x f(y)>`` reading.
    """
    if f.arity != 1:
        raise ArityError("the overwrite oracle is defined for one-bit functions only")
    if source not in ("x", "y"):
        raise ValueError("source must be 'x' or 'y'")
    target = []
    for c in range(4):
        x, y = c >> 1, c & 1
        target.append((x << 1) | f.values[x if source == "x" else y])
    return LinearOp(_permutation_like(4, target), f"V[{f}]" if source == "x" else f"Vy[{f}]")


def build_oracle(kind: str, f: TruthTable) -> LinearOp:
    if kind in ("xor", "xor_ancilla"):
        return build_xor_oracle(f)
    if kind == "overwrite":
        return build_overwrite_oracle(f)
    raise ValueError(f"unknown oracle kind {kind!r}")


def product_state(ps: ProductState, ancilla: Pair | None = None) -> KVector:
    """Tensor product of the per-qubit vectors, ancilla (if any) last."""
    pairs = list(ps.qubit_amps)
    if ancilla is not None:
        pairs.append((CScalar.coerce(ancilla[0]), CScalar.coerce(ancilla[1])))
    return reduce(tensor, (KVector(p) for p in pairs))


def apply(op: LinearOp, v: KVector) -> KVector:
    return matvec(op.matrix, v)


# text format for input states ----------------------------------------------

_SHORTHAND = {
    "-": MINUS,
    "+": PLUS,
    "0": (ONE, ZERO),
    "1": (ZERO, ONE),
}


def parse_qubit(token: str) -> Pair:
    """``-`` = (1,-1), ``+`` = (1,1), ``0``/``1`` basis states, ``(a,b)`` explicit."""
    t = token.strip()
    if t in _SHORTHAND:
        return _SHORTHAND[t]
    m = re.fullmatch(r"[(\[](.*),(.*)[)\]]", t)
    if m is None:
        raise LiteralError("malformed qubit literal", token)
    a, b = parse_scalar(m.group(1)), parse_scalar(m.group(2))
    if not a and not b:
        raise LiteralError("qubit amplitudes are both zero", token)
    return (a, b)


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_product_state(text: str) -> ProductState:
    """Comma-separated qubit literals, e.g. ``-,-`` or ``(0,1),(1,-1)``."""
    tokens = [t for t in _split_top(text) if t.strip()]
    if not tokens:
        raise LiteralError("empty input state", text)
    return ProductState(tuple(parse_qubit(t) for t in tokens))


def format_qubit(pair: Pair) -> str:
    for name, p in _SHORTHAND.items():
        if p == pair:
            return name
    return f"({format_scalar(pair[0])},{format_scalar(pair[1])})"


def format_product_state(ps: ProductState | Iterable[Pair]) -> str:
    pairs = ps.qubit_amps if isinstance(ps, ProductState) else ps
    return ",".join(format_qubit(p) for p in pairs)
