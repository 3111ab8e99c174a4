"""Boolean functions of n bits stored as explicit truth tables.

Position ``x`` of the table (``x`` read as a big-endian integer) holds
``f(x)``.  The canonical index of a table is ``sum(f(x) * 2**x)``, which makes
the two-bit names ``f8`` (only ``f(11) = 1``) and ``f15`` (constant one) come
out right.  The single-bit Deutsch names use the opposite bit order
(``f1`` = identity, ``f2`` = negation), so they are pinned as explicit
aliases instead of being derived from the index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactlin import LiteralError

__all__ = [
    "TruthTable",
    "ArityError",
    "DEFAULT_MAX_ARITY",
    "evaluate",
    "parity",
    "enumerate_all",
    "from_index",
    "parse_table",
    "parse_family",
    "DEUTSCH",
]

DEFAULT_MAX_ARITY = 4


class ArityError(ValueError):
    pass


@dataclass(frozen=True)
class TruthTable:
    arity: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.arity < 1:
            raise ArityError("arity must be positive")
        vals = tuple(int(b) for b in self.values)
        if len(vals) != 1 << self.arity:
            raise ArityError(f"arity {self.arity} needs {1 << self.arity} values, got {len(vals)}")
        if any(b not in (0, 1) for b in vals):
            raise ValueError("truth-table values must be 0 or 1")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "TruthTable":
        n = len(bits).bit_length() - 1
        if n < 1 or len(bits) != 1 << n:
            raise ArityError(f"table length {len(bits)} is not 2**n with n >= 1")
        return cls(n, tuple(bits))

    @property
    def index(self) -> int:
        return sum(b << x for x, b in enumerate(self.values))

    def __call__(self, x: int | str | Sequence[int]) -> int:
        return evaluate(self, x)

    def __xor__(self, other: "TruthTable") -> "TruthTable":
        if self.arity != other.arity:
            raise ArityError("arity mismatch")
        return TruthTable(self.arity, tuple(a ^ b for a, b in zip(self.values, other.values)))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.values)


def _point(x: int | str | Sequence[int], arity: int) -> int:
    if isinstance(x, int):
        if not 0 <= x < 1 << arity:
            raise ArityError(f"point {x} outside a {arity}-bit domain")
        return x
    bits = [int(c) for c in x]
    if len(bits) != arity:
        raise ArityError(f"expected {arity} bits, got {len(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("argument bits must be 0 or 1")
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def evaluate(f: TruthTable, x: int | str | Sequence[int]) -> int:
    """Value of ``f`` at ``x``; bit strings are read most significant first."""
    return f.values[_point(x, f.arity)]


def parity(f: TruthTable) -> int:
    """``(-1) ** (XOR of all table entries)``."""
    return -1 if sum(f.values) % 2 else 1


def from_index(index: int, arity: int) -> TruthTable:
    if not 0 <= index < 1 << (1 << arity):
        raise ValueError(f"index {index} out of range for arity {arity}")
    return TruthTable(arity, tuple((index >> x) & 1 for x in range(1 << arity)))


def enumerate_all(n: int, max_arity: int = DEFAULT_MAX_ARITY) -> list[TruthTable]:
    """All ``2**(2**n)`` tables in ascending canonical-index order."""
    if n < 1:
        raise ArityError("arity must be positive")
    if n > max_arity:
        raise ArityError(f"arity {n} exceeds the enumeration bound {max_arity}")
    return [from_index(i, n) for i in range(1 << (1 << n))]


DEUTSCH = {
    "deutsch.f0": TruthTable(1, (0, 0)),  # constant 0
    "deutsch.f1": TruthTable(1, (0, 1)),  # identity
    "deutsch.f2": TruthTable(1, (1, 0)),  # negation
    "deutsch.f3": TruthTable(1, (1, 1)),  # constant 1
}


def parse_table(text: str) -> TruthTable:
    """Bitstring ``f(0) f(1) ... f(2**n - 1)`` or a ``deutsch.fK`` alias."""
    s = text.strip()
    if s in DEUTSCH:
        return DEUTSCH[s]
    if not s or any(c not in "01" for c in s):
        raise LiteralError("malformed truth table", text)
    try:
        return TruthTable.from_bits([int(c) for c in s])
    except ArityError:
        raise LiteralError("truth-table length is not a power of two >= 2", text) from None


def parse_family(text: str | Iterable[str]) -> list[TruthTable]:
    tokens = text.split(",") if isinstance(text, str) else list(text)
    family = [parse_table(t) for t in tokens if t.strip()]
    if not family:
        raise LiteralError("empty function family", str(text))
    if len({f.arity for f in family}) != 1:
        raise LiteralError("family members differ in arity", str(text))
    return family
