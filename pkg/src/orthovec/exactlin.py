"""Exact complex linear algebra over arbitrary-precision rationals.

Scalars are complex numbers whose real and imaginary parts are
:class:`fractions.Fraction`, so orthogonality is a decidable equality rather
than a floating-point judgement call.  States are kept unnormalized; every
probability-like quantity divides by exact squared norms instead of storing
powers of ``1/sqrt(2)``.

Conventions fixed here and relied on everywhere else:

* ``inner(u, v)`` is conjugate-linear in its *first* argument (bra-ket order).
* ``tensor(u, v)`` is big-endian: the left factor is the most significant
  index, so two-qubit rows read 00, 01, 10, 11.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "CScalar",
    "KVector",
    "KMatrix",
    "DimensionError",
    "LiteralError",
    "inner",
    "gram",
    "tensor",
    "truncate",
    "pad",
    "matvec",
    "matmul",
    "adjoint",
    "identity",
    "outer",
    "primitive",
    "sign_pattern",
    "format_scalar",
    "parse_scalar",
    "format_vector",
    "parse_vector",
    "format_vectors",
    "parse_vectors",
]

Number = Union[int, Fraction, "CScalar"]


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


class LiteralError(ValueError):
    """A text literal could not be parsed; ``token`` names the culprit."""

    def __init__(self, message: str, token: str):
        super().__init__(f"{message}: {token!r}")
        self.token = token


class CScalar:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction | str = 0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("CScalar is exact; convert floats with Fraction(...) explicitly")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("CScalar is immutable")

    @staticmethod
    def coerce(x: Number) -> "CScalar":
        if isinstance(x, CScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return CScalar(x)
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact; build a CScalar from Fractions")
        raise TypeError(f"cannot interpret {x!r} as an exact scalar")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: Number) -> "CScalar":
        o = CScalar.coerce(other)
        return CScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "CScalar":
        return CScalar(-self.re, -self.im)

    def __sub__(self, other: Number) -> "CScalar":
        o = CScalar.coerce(other)
        return CScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Number) -> "CScalar":
        return CScalar.coerce(other) - self

    def __mul__(self, other: Number) -> "CScalar":
        o = CScalar.coerce(other)
        if not self.im and not o.im:
            return CScalar(self.re * o.re)
        return CScalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "CScalar":
        o = CScalar.coerce(other)
        d = o.abs2()
        if not d:
            raise ZeroDivisionError("division by exact zero")
        num = self * o.conjugate()
        return CScalar(num.re / d, num.im / d)

    def __rtruediv__(self, other: Number) -> "CScalar":
        return CScalar.coerce(other) / self

    def conjugate(self) -> "CScalar":
        return CScalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, always an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, CScalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"CScalar({format_scalar(self)})"

    def __str__(self) -> str:
        return format_scalar(self)


ZERO = CScalar(0)
ONE = CScalar(1)


def _as_entries(values: Iterable[Number]) -> tuple[CScalar, ...]:
    return tuple(CScalar.coerce(v) for v in values)


@dataclass(frozen=True)
class KVector:
    """Dense exact vector; equality is entrywise."""

    entries: tuple[CScalar, ...]

    def __init__(self, entries: Iterable[Number]):
        ents = _as_entries(entries)
        if not ents:
            raise DimensionError("a vector needs at least one entry")
        object.__setattr__(self, "entries", ents)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> CScalar:
        return self.entries[i]

    def __add__(self, other: "KVector") -> "KVector":
        _check_dims(self, other)
        return KVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "KVector") -> "KVector":
        _check_dims(self, other)
        return KVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "KVector":
        return KVector(-a for a in self.entries)

    def scale(self, c: Number) -> "KVector":
        c = CScalar.coerce(c)
        return KVector(c * a for a in self.entries)

    def conjugate(self) -> "KVector":
        return KVector(a.conjugate() for a in self.entries)

    def norm_sq(self) -> Fraction:
        return sum((a.abs2() for a in self.entries), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(a) for a in self.entries], dtype=np.complex128)

    def __str__(self) -> str:
        return format_vector(self)

    def __repr__(self) -> str:
        return f"KVector({format_vector(self)})"


@dataclass(frozen=True)
class KMatrix:
    """Dense exact matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[CScalar, ...] = field(repr=False)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionError("matrix shape must be positive")
        ents = _as_entries(self.entries)
        if len(ents) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(ents)}"
            )
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> "KMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise DimensionError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols: Sequence[KVector]) -> "KMatrix":
        if not cols:
            raise DimensionError("matrix needs at least one column")
        n = cols[0].dim
        for c in cols:
            if c.dim != n:
                raise DimensionError("columns differ in dimension")
        return cls(n, len(cols), tuple(cols[j][i] for i in range(n) for j in range(len(cols))))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def at(self, i: int, j: int) -> CScalar:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> KVector:
        return KVector(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> KVector:
        return KVector(self.entries[j::self.cols])

    def to_rows(self) -> list[list[CScalar]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def is_diagonal(self) -> bool:
        return all(not self.at(i, j) for i in range(self.rows) for j in range(self.cols) if i != j)

    def is_hermitian(self) -> bool:
        return self.is_square and all(
            self.at(i, j) == self.at(j, i).conjugate()
            for i in range(self.rows)
            for j in range(i, self.cols)
        )

    def scale(self, c: Number) -> "KMatrix":
        c = CScalar.coerce(c)
        return KMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __add__(self, other: "KMatrix") -> "KMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("matrix shapes differ")
        return KMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __matmul__(self, other):
        if isinstance(other, KVector):
            return matvec(self, other)
        return matmul(self, other)

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(a) for a in self.entries], dtype=np.complex128).reshape(self.rows, self.cols)


def _check_dims(u: KVector, v: KVector) -> None:
    if u.dim != v.dim:
        raise DimensionError(f"dimension mismatch: {u.dim} vs {v.dim}")


def inner(u: KVector, v: KVector) -> CScalar:
    """``sum(conj(u_i) * v_i)``, conjugating the first argument."""
    _check_dims(u, v)
    acc = ZERO
    for a, b in zip(u.entries, v.entries):
        if a and b:
            acc = acc + a.conjugate() * b
    return acc


def gram(vs: Sequence[KVector]) -> KMatrix:
    vs = list(vs)
    if not vs:
        raise ValueError("gram of an empty vector list")
    for v in vs[1:]:
        _check_dims(vs[0], v)
    k = len(vs)
    g = [[ZERO] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            ip = inner(vs[i], vs[j])
            g[i][j] = ip
            g[j][i] = ip.conjugate()
    return KMatrix.from_rows(g)


def tensor(u: KVector, v: KVector) -> KVector:
    return KVector(a * b for a in u.entries for b in v.entries)


def truncate(v: KVector, n: int) -> KVector:
    """Projection onto the first ``n`` coordinates."""
    if n < 1 or n > v.dim:
        raise DimensionError(f"cannot truncate a {v.dim}-vector to {n} coordinates")
    return KVector(v.entries[:n])


def pad(v: KVector, m: int) -> KVector:
    """Append zeros up to dimension ``m``."""
    if m < v.dim:
        raise DimensionError(f"cannot pad a {v.dim}-vector down to {m}")
    return KVector(v.entries + (ZERO,) * (m - v.dim))


def matvec(m: KMatrix, v: KVector) -> KVector:
    if m.cols != v.dim:
        raise DimensionError(f"{m.rows}x{m.cols} operator applied to a {v.dim}-vector")
    out = []
    for i in range(m.rows):
        acc = ZERO
        base = i * m.cols
        for j in range(m.cols):
            a = m.entries[base + j]
            if a and v.entries[j]:
                acc = acc + a * v.entries[j]
        out.append(acc)
    return KVector(out)


def matmul(a: KMatrix, b: KMatrix) -> KMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    # skip zeros: oracle matrices are permutations or near enough
    b_nz = [[(j, b.at(k, j)) for j in range(b.cols) if b.at(k, j)] for k in range(b.rows)]
    out: list[CScalar] = []
    for i in range(a.rows):
        acc = [ZERO] * b.cols
        for k in range(a.cols):
            x = a.at(i, k)
            if not x:
                continue
            for j, y in b_nz[k]:
                acc[j] = acc[j] + x * y
        out.extend(acc)
    return KMatrix(a.rows, b.cols, tuple(out))


def adjoint(m: KMatrix) -> KMatrix:
    return KMatrix(m.cols, m.rows, tuple(m.at(i, j).conjugate() for j in range(m.cols) for i in range(m.rows)))


def identity(n: int) -> KMatrix:
    return KMatrix(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))


def outer(u: KVector, v: KVector) -> KMatrix:
    """``|u><v|``."""
    return KMatrix(u.dim, v.dim, tuple(a * b.conjugate() for a in u.entries for b in v.entries))


def primitive(v: KVector) -> KVector:
    """Rescale ``v`` by a positive rational so its parts are coprime integers.

    This is the "normalization factors omitted" form: the ray and the signs
    are unchanged.  The zero vector is returned as is.
    """
    parts = [p for a in v.entries for p in (a.re, a.im) if p]
    if not parts:
        return v
    den = math.lcm(*(p.denominator for p in parts))
    num = math.gcd(*(int(p * den) for p in parts))
    return v.scale(Fraction(den, num))


def sign_pattern(v: KVector) -> str | None:
    """``+--+`` style rendering when every entry is -1, 0 or +1, else None."""
    chars = []
    for a in v.entries:
        if a == 1:
            chars.append("+")
        elif a == -1:
            chars.append("-")
        elif not a:
            chars.append("0")
        else:
            return None
    return "".join(chars)


# text literals ------------------------------------------------------------

_RAT = r"\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"[+-]?{_RAT}")
_SCALAR_RE = re.compile(
    rf"^(?P<re>[+-]?{_RAT})?(?:(?P<sign>[+-])?(?P<im>{_RAT})?\s*i)?$"
)


def format_scalar(z: CScalar) -> str:
    if not z.im:
        return str(z.re)
    sign = "+" if z.im > 0 else "-"
    return f"{z.re}{sign}{abs(z.im)}i"


def _rational(text: str, token: str) -> Fraction:
    if not _RAT_RE.fullmatch(text):
        raise LiteralError("malformed rational", token)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise LiteralError("zero denominator", token) from None


def parse_scalar(text: str) -> CScalar:
    """Parse ``p/q``, ``p/q+r/s i``, ``r/s i`` or ``i`` style literals."""
    token = text
    s = re.sub(r"\s+i$", "i", text.strip())
    if not s:
        raise LiteralError("empty scalar", token)
    m = _SCALAR_RE.match(s)
    if m is None:
        raise LiteralError("malformed scalar", token)
    re_part, sign, im_part = m.group("re"), m.group("sign"), m.group("im")
    has_i = s.endswith("i")
    if not has_i:
        return CScalar(_rational(re_part, token))
    if re_part is not None and sign is None and im_part is None:
        # "3i" or "-3i": the regex put the coefficient into the real slot
        return CScalar(0, _rational(re_part, token))
    real = _rational(re_part, token) if re_part is not None else Fraction(0)
    coef = _rational(im_part, token) if im_part is not None else Fraction(1)
    if sign == "-":
        coef = -coef
    return CScalar(real, coef)


def format_vector(v: KVector) -> str:
    return "[" + ",".join(format_scalar(a) for a in v.entries) + "]"


def parse_vector(text: str) -> KVector:
    s = text.strip()
    if len(s) < 2 or s[0] != "[" or s[-1] != "]":
        raise LiteralError("vector literal must be bracketed", text)
    body = s[1:-1].strip()
    if not body:
        raise LiteralError("empty vector literal", text)
    return KVector(parse_scalar(tok) for tok in body.split(","))


def format_vectors(vs: Sequence[KVector]) -> str:
    return ";".join(format_vector(v) for v in vs)


def parse_vectors(text: str) -> list[KVector]:
    """Semicolon-separated vector literals, e.g. ``[1,0];[1,1]``."""
    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise LiteralError("no vectors given", text)
    return [parse_vector(p) for p in parts]
