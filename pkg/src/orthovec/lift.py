"""Orthogonalisation by dimensional lifting.

Non-orthogonal vectors ``e_1..e_k`` in ``n`` dimensions are reinterpreted as
the projections onto the first ``n`` coordinates of mutually orthogonal
vectors in a larger space.  Each processed pair ``(i, j)`` gets one fresh
coordinate: ``1`` on vector ``i``, ``-<f_i|f_j>`` on vector ``j`` and ``0`` on
every other vector, so the pair's inner product cancels and nothing else
changes.  Nothing here is a unitary evolution; this is bookkeeping on the
analysis side.

Lifted vectors are left unnormalized.  Rescaling any of them by a nonzero
number keeps the set orthogonal, but exact unit length would need square
roots, so it is not attempted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactlin import ONE, ZERO, CScalar, DimensionError, KVector, inner, pad, truncate

__all__ = ["PairStep", "LiftResult", "LiftReport", "lift_pair", "lift_all", "verify_lift"]


@dataclass(frozen=True)
class PairStep:
    i: int
    j: int
    appended_value: CScalar
    skipped: bool


@dataclass(frozen=True)
class LiftResult:
    originals: tuple[KVector, ...]
    lifted: tuple[KVector, ...]
    original_dim: int
    pair_log: tuple[PairStep, ...]

    @property
    def dim(self) -> int:
        return self.lifted[0].dim


@dataclass(frozen=True)
class LiftReport:
    orthogonal: bool
    projects: bool
    # first offending pair and its inner product
    orthogonality_witness: tuple[int, int, CScalar] | None = None
    # first vector whose truncation differs
    projection_witness: int | None = None

    @property
    def ok(self) -> bool:
        return self.orthogonal and self.projects


def _check_inputs(vs: Sequence[KVector]) -> int:
    n = vs[0].dim
    for idx, v in enumerate(vs):
        if v.dim != n:
            raise DimensionError(f"vector {idx} has dimension {v.dim}, expected {n}")
        if v.is_zero():
            raise ValueError(f"vector {idx} is zero; zero vectors cannot be lifted meaningfully")
    return n


def lift_pair(e1: KVector, e2: KVector) -> tuple[KVector, KVector]:
    """``f1 = (e1, 1)``, ``f2 = (e2, -<e1|e2>)``; orthogonal in ``n + 1`` dims."""
    _check_inputs([e1, e2])
    ip = inner(e1, e2)
    f1 = KVector(e1.entries + (ONE,))
    f2 = KVector(e2.entries + (-ip,))
    # the cancellation is algebraic; keep it checked anyway
    assert not inner(f1, f2)
    return f1, f2


def _pairs(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(k) for j in range(i + 1, k)]


def lift_all(
    vs: Sequence[KVector],
    skip_orthogonal: bool = False,
    order: Iterable[tuple[int, int]] | None = None,
) -> LiftResult:
    """Lift ``k >= 2`` nonzero vectors into a mutually orthogonal set.

    Pairs are processed in lexicographic order unless ``order`` supplies a
    permutation of them (used by tests to probe order independence).  With
    ``skip_orthogonal`` a pair whose current inner product is already zero
    gets no new coordinate.
    """
    vs = list(vs)
    if len(vs) < 2:
        raise ValueError("lifting needs at least two vectors")
    n = _check_inputs(vs)
    k = len(vs)
    expected = _pairs(k)
    pair_order = expected if order is None else [tuple(p) for p in order]
    if sorted(pair_order) != expected:
        raise ValueError("order must list every pair (i, j), i < j, exactly once")

    cur = [list(v.entries) for v in vs]
    log = []
    for i, j in pair_order:
        ip = inner(KVector(cur[i]), KVector(cur[j]))
        if skip_orthogonal and not ip:
            log.append(PairStep(i, j, ZERO, True))
            continue
        for idx in range(k):
            cur[idx].append(ONE if idx == i else -ip if idx == j else ZERO)
        log.append(PairStep(i, j, -ip, False))
    return LiftResult(tuple(vs), tuple(KVector(c) for c in cur), n, tuple(log))


def verify_lift(originals: Sequence[KVector], lifted: Sequence[KVector]) -> LiftReport:
    """Check exact pairwise orthogonality of ``lifted`` and truncation back to ``originals``."""
    originals, lifted = list(originals), list(lifted)
    if len(originals) != len(lifted):
        raise ValueError(f"{len(originals)} originals but {len(lifted)} lifted vectors")
    if not lifted:
        raise ValueError("nothing to verify")
    n = originals[0].dim
    m = lifted[0].dim
    if any(v.dim != n for v in originals) or any(v.dim != m for v in lifted):
        raise DimensionError("vectors within a set must share one dimension")
    if m < n:
        raise DimensionError(f"lifted dimension {m} is below the original {n}")

    witness = None
    for i in range(len(lifted)):
        for j in range(i + 1, len(lifted)):
            ip = inner(lifted[i], lifted[j])
            if ip:
                witness = (i, j, ip)
                break
        if witness:
            break

    proj_witness = next(
        (idx for idx, (o, f) in enumerate(zip(originals, lifted)) if truncate(f, n) != o), None
    )
    return LiftReport(witness is None, proj_witness is None, witness, proj_witness)


def zero_padded(vs: Sequence[KVector], m: int) -> list[KVector]:
    return [pad(v, m) for v in vs]
