"""Contexts, Born probabilities, spectral observables and unitarity checks.

Contexts hold mutually *orthogonal* vectors without insisting on unit
length; the Born formula divides by the exact squared norms instead::

    p_i = |<e_i|psi>|**2 / (<e_i|e_i> <psi|psi>)

which equals the textbook value for the normalized vectors and keeps every
probability an exact rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .exactlin import (
    CScalar,
    DimensionError,
    KMatrix,
    KVector,
    adjoint,
    inner,
    matmul,
    outer,
)

__all__ = [
    "Context",
    "Observable",
    "NormMismatch",
    "Verdict",
    "born_probabilities",
    "measure_observable",
    "unitary_from_bases",
    "is_unitary",
    "is_product_3qubit",
    "PRODUCT_EQUATIONS",
    "rational_sqrt",
]


class NormMismatch(ValueError):
    """Squared norms of two contexts are incompatible with an exact isometry."""


class Verdict(NamedTuple):
    ok: bool
    witness: object = None


@dataclass(frozen=True)
class Context:
    """Mutually orthogonal nonzero vectors of one dimension."""

    vectors: tuple[KVector, ...]

    def __init__(self, vectors: Sequence[KVector]):
        vs = tuple(vectors)
        if not vs:
            raise ValueError("a context needs at least one vector")
        n = vs[0].dim
        for idx, v in enumerate(vs):
            if v.dim != n:
                raise DimensionError(f"context vector {idx} has dimension {v.dim}, expected {n}")
            if v.is_zero():
                raise ValueError(f"context vector {idx} is zero")
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                if inner(vs[i], vs[j]):
                    raise ValueError(f"context vectors {i} and {j} are not orthogonal")
        object.__setattr__(self, "vectors", vs)

    @classmethod
    def computational(cls, n: int) -> "Context":
        return cls([KVector([1 if i == j else 0 for j in range(n)]) for i in range(n)])

    @property
    def dim(self) -> int:
        return self.vectors[0].dim

    @property
    def full(self) -> bool:
        return len(self.vectors) == self.dim

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)


@dataclass(frozen=True)
class Observable:
    """Spectral sum ``sum(lambda_j * P_j)``; each ``P_j`` projects onto a context's span."""

    parts: tuple[tuple[Fraction, Context], ...]

    def __init__(self, parts: Sequence[tuple[Fraction | int, Context]]):
        ps = tuple((Fraction(lam), ctx) for lam, ctx in parts)
        if not ps:
            raise ValueError("an observable needs at least one part")
        lams = [lam for lam, _ in ps]
        if len(set(lams)) != len(lams):
            raise ValueError("eigenvalues must be pairwise distinct")
        n = ps[0][1].dim
        if any(ctx.dim != n for _, ctx in ps):
            raise DimensionError("observable parts differ in dimension")
        for a in range(len(ps)):
            for b in range(a + 1, len(ps)):
                for u in ps[a][1]:
                    for v in ps[b][1]:
                        if inner(u, v):
                            raise ValueError(
                                f"parts for eigenvalues {ps[a][0]} and {ps[b][0]} are not orthogonal"
                            )
        object.__setattr__(self, "parts", ps)

    @property
    def dim(self) -> int:
        return self.parts[0][1].dim

    @property
    def eigenvalues(self) -> list[Fraction]:
        return [lam for lam, _ in self.parts]

    @property
    def spans_space(self) -> bool:
        return sum(len(ctx) for _, ctx in self.parts) == self.dim

    def matrix(self) -> KMatrix:
        """Dense ``sum(lambda * |e><e| / <e|e>)``."""
        acc = None
        for lam, ctx in self.parts:
            for e in ctx:
                term = outer(e, e).scale(CScalar(lam / e.norm_sq()))
                acc = term if acc is None else acc + term
        return acc


def born_probabilities(psi: KVector, ctx: Context) -> list[Fraction]:
    if psi.dim != ctx.dim:
        raise DimensionError(f"state has dimension {psi.dim}, context {ctx.dim}")
    n_psi = psi.norm_sq()
    if not n_psi:
        raise ValueError("the zero vector is not a state")
    return [inner(e, psi).abs2() / (e.norm_sq() * n_psi) for e in ctx]


def measure_observable(psi: KVector, obs: Observable) -> dict[Fraction, Fraction]:
    """Outcome distribution; the mass outside the parts' span is not listed."""
    return {lam: sum(born_probabilities(psi, ctx), Fraction(0)) for lam, ctx in obs.parts}


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _common_norm(ctx: Context, name: str) -> Fraction:
    norms = [v.norm_sq() for v in ctx]
    if len(set(norms)) != 1:
        raise NormMismatch(f"{name} context vectors have unequal squared norms {sorted(set(norms))}")
    return norms[0]


def unitary_from_bases(src: Context, dst: Context) -> KMatrix:
    """``sum(|f_i><e_i|)`` rescaled by one global rational so it is an exact isometry.

    Every vector of ``src`` must share one squared norm ``s``, every vector of
    ``dst`` one squared norm ``t``, and ``s * t`` must be a rational square;
    the result is ``sum(|f_i><e_i|) / sqrt(s * t)``.  Anything else raises
    :class:`NormMismatch` instead of approximating.
    """
    if src.dim != dst.dim:
        raise DimensionError(f"source dimension {src.dim} != target dimension {dst.dim}")
    if not src.full or not dst.full:
        raise ValueError("both contexts must be complete bases")
    s = _common_norm(src, "source")
    t = _common_norm(dst, "target")
    root = rational_sqrt(s * t)
    if root is None:
        raise NormMismatch(
            f"source squared norm {s} and target squared norm {t} differ by a non-square ratio"
        )
    acc = None
    for e, f in zip(src, dst):
        term = outer(f, e)
        acc = term if acc is None else acc + term
    return acc.scale(CScalar(1 / root))


def is_unitary(m: KMatrix) -> Verdict:
    """Exact test of ``adjoint(m) @ m == I``; the witness is the first bad entry."""
    if not m.is_square:
        raise DimensionError(f"{m.rows}x{m.cols} matrix is not square")
    p = matmul(adjoint(m), m)
    for i in range(p.rows):
        for j in range(p.cols):
            if p.at(i, j) != (1 if i == j else 0):
                return Verdict(False, (i, j))
    return Verdict(True)


def equal_columns(m: KMatrix) -> tuple[int, int] | None:
    """First pair of identical columns, the typical reason an oracle is not injective."""
    cols = [m.col(j) for j in range(m.cols)]
    for i in range(len(cols)):
        for j in range(i + 1, len(cols)):
            if cols[i] == cols[j]:
                return (i, j)
    return None


# alpha_ab * alpha_cd = alpha_ef * alpha_gh, indices as 3-bit integers
PRODUCT_EQUATIONS: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = (
    ((0b000, 0b011), (0b001, 0b010)),
    ((0b000, 0b101), (0b001, 0b100)),
    ((0b000, 0b110), (0b010, 0b100)),
    ((0b000, 0b111), (0b011, 0b100)),
    ((0b001, 0b110), (0b011, 0b100)),
    ((0b001, 0b111), (0b011, 0b101)),
    ((0b010, 0b101), (0b011, 0b100)),
    ((0b010, 0b111), (0b011, 0b110)),
    ((0b100, 0b111), (0b101, 0b110)),
)


def equation_label(eq) -> str:
    (a, b), (c, d) = eq
    return f"a{a:03b}*a{b:03b} = a{c:03b}*a{d:03b}"


def is_product_3qubit(amps: Sequence, tol: float = 1e-9) -> Verdict:
    """Check the nine product equations for a three-qubit amplitude vector.

    Exact inputs (``CScalar``, ``int``, ``Fraction``) are compared exactly;
    anything else goes through complex floats with absolute tolerance
    ``tol``.  The witness is the index of the first failing equation.
    """
    amps = list(amps)
    if len(amps) != 8:
        raise DimensionError(f"expected 8 amplitudes, got {len(amps)}")
    exact = all(isinstance(a, (CScalar, int, Fraction)) for a in amps)
    if exact:
        al = [CScalar.coerce(a) for a in amps]
        if not any(al):
            raise ValueError("the all-zero vector is not a state")
        for k, ((a, b), (c, d)) in enumerate(PRODUCT_EQUATIONS):
            if al[a] * al[b] != al[c] * al[d]:
                return Verdict(False, k)
        return Verdict(True)
    al = np.asarray(amps, dtype=np.complex128)
    if not np.any(al):
        raise ValueError("the all-zero vector is not a state")
    for k, ((a, b), (c, d)) in enumerate(PRODUCT_EQUATIONS):
        if abs(al[a] * al[b] - al[c] * al[d]) > tol:
            return Verdict(False, k)
    return Verdict(True)
