"""Search product input states that make chosen oracle outputs orthogonal.

This is the only floating-point part of the package.  Each qubit carries an
amplitude pair ``(a, b)`` with ``|a|**2 + |b|**2 = 1``; the objective is

    sum over required pairs (f, g) of |<U_f psi | U_g psi>|**2 / (|U_f psi|**2 |U_g psi|**2)

and is minimized by multi-start finite-difference descent with a
backtracking line search, renormalizing every qubit after each step.

A status of ``"exhausted"`` only means no restart got below ``tol``.  It is
not a proof that no separating input state exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .boolfn import TruthTable
from .exactlin import CScalar, inner
from .oracle import ProductState, apply, build_oracle, product_state
from .query import is_decidable, normalized_overlap

__all__ = [
    "SearchProblem",
    "SearchResult",
    "PairCheck",
    "VerifyReport",
    "n_qubits",
    "objective",
    "search",
    "verify",
    "rationalize",
    "normalize_amps",
]

NORM_TOL = 1e-9
FOUND_NORM_TOL = 1e-12
MAX_DENOMINATOR = 10**6
# Sufficient-decrease constant.  Anything below 1/2 still accepts the exact
# line minimizer of a quadratic; a tiny value lets the doubled trial step
# bounce across the valley floor with almost no progress.
ARMIJO = 0.25


@dataclass(frozen=True)
class SearchProblem:
    arity: int
    pairs: tuple[tuple[TruthTable, TruthTable], ...]
    oracle_kind: str = "xor"
    seed: int = 0
    restarts: int = 64
    max_iters: int = 500
    tol: float = 1e-10
    fd_step: float = 1e-6

    def __post_init__(self):
        pairs = tuple((f, g) for f, g in self.pairs)
        if not pairs:
            raise ValueError("at least one pair is required")
        if any(t.arity != self.arity for p in pairs for t in p):
            raise ValueError(f"all tables must have arity {self.arity}")
        if self.oracle_kind not in ("xor", "overwrite"):
            raise ValueError(f"unknown oracle kind {self.oracle_kind!r}")
        if self.oracle_kind == "overwrite" and self.arity != 1:
            raise ValueError("the overwrite oracle takes one-bit functions")
        if self.restarts < 1 or self.max_iters < 1 or self.tol <= 0 or self.fd_step <= 0:
            raise ValueError("restarts, max_iters, tol and fd_step must be positive")
        object.__setattr__(self, "pairs", pairs)


@dataclass(frozen=True)
class SearchResult:
    status: str
    amps: tuple[tuple[complex, complex], ...]
    objective: float
    trace: tuple[float, ...]
    best_restart: int


def n_qubits(problem: SearchProblem) -> int:
    return problem.arity + 1 if problem.oracle_kind == "xor" else 2


class _Evaluator:
    """Float mirrors of the exact oracles, built once per problem."""

    def __init__(self, problem: SearchProblem):
        self.problem = problem
        self.q = n_qubits(problem)
        mats = {}
        for pair in problem.pairs:
            for t in pair:
                if t not in mats:
                    mats[t] = build_oracle(problem.oracle_kind, t).matrix.to_numpy()
        self.mats = mats

    def state(self, amps: np.ndarray) -> np.ndarray:
        return reduce(np.kron, amps)

    def value(self, amps: np.ndarray) -> float:
        psi = self.state(amps)
        outs = {t: m @ psi for t, m in self.mats.items()}
        total = 0.0
        for f, g in self.problem.pairs:
            u, v = outs[f], outs[g]
            den = np.vdot(u, u).real * np.vdot(v, v).real
            if den < 1e-300:
                # an output collapsed to zero: no state, so no separation either
                total += 1.0
                continue
            total += abs(np.vdot(u, v)) ** 2 / den
        return float(total)


def _as_array(amps) -> np.ndarray:
    arr = np.asarray(amps, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("amplitudes must be a sequence of (a, b) pairs")
    return arr


def normalize_amps(amps) -> np.ndarray:
    arr = _as_array(amps)
    norms = np.sqrt(np.sum(np.abs(arr) ** 2, axis=1, keepdims=True))
    if np.any(norms == 0):
        raise ValueError("a qubit has both amplitudes zero")
    return arr / norms


def objective(amps, problem: SearchProblem) -> float:
    """Sum of normalized squared overlaps over the required pairs."""
    arr = _as_array(amps)
    if arr.shape[0] != n_qubits(problem):
        raise ValueError(f"expected {n_qubits(problem)} qubit pairs, got {arr.shape[0]}")
    dev = np.abs(np.sum(np.abs(arr) ** 2, axis=1) - 1.0)
    if np.any(dev > NORM_TOL):
        raise ValueError(f"amplitude pairs are not normalized (max deviation {dev.max():.3g})")
    return _Evaluator(problem).value(arr)


def _to_amps(x: np.ndarray) -> np.ndarray:
    p = x.reshape(-1, 4)
    amps = np.stack([p[:, 0] + 1j * p[:, 1], p[:, 2] + 1j * p[:, 3]], axis=1)
    return amps


def _renorm(x: np.ndarray) -> np.ndarray:
    p = x.reshape(-1, 4)
    return (p / np.linalg.norm(p, axis=1, keepdims=True)).ravel()


def _descend(ev: _Evaluator, x: np.ndarray, problem: SearchProblem) -> tuple[np.ndarray, float]:
    f = lambda y: ev.value(_to_amps(y))
    fx = f(x)
    h = problem.fd_step
    stop = problem.tol * 1e-3
    step = 1.0
    eye = np.eye(x.size)
    for _ in range(problem.max_iters):
        if fx <= stop:
            break
        grad = np.array([(f(x + h * e) - f(x - h * e)) / (2 * h) for e in eye])
        gg = float(grad @ grad)
        if gg < 1e-28:
            break
        step = min(step * 2.0, 1e3)
        while step > 1e-14:
            y = _renorm(x - step * grad)
            fy = f(y)
            if fy < fx - ARMIJO * step * gg:
                break
            step *= 0.5
        else:
            break
        x, fx = y, fy
    return x, fx


def search(problem: SearchProblem) -> SearchResult:
    """Multi-start descent; deterministic for a given ``problem.seed``.

    Restart ``r`` draws its start from the ``r``-th child of the master seed
    sequence, so results do not depend on how restarts are scheduled.  Ties
    on the objective go to the lower restart index.
    """
    ev = _Evaluator(problem)
    children = np.random.SeedSequence(problem.seed).spawn(problem.restarts)
    best_x, best_f, best_r = None, np.inf, -1
    trace = []
    for r, child in enumerate(children):
        rng = np.random.default_rng(child)
        x0 = _renorm(rng.standard_normal(4 * ev.q))
        x, fx = _descend(ev, x0, problem)
        trace.append(fx)
        if fx < best_f:
            best_x, best_f, best_r = x, fx, r
    amps = _to_amps(best_x)
    status = "found" if best_f < problem.tol else "exhausted"
    return SearchResult(
        status,
        tuple((complex(a), complex(b)) for a, b in amps),
        float(best_f),
        tuple(float(t) for t in trace),
        best_r,
    )


# exact re-check -------------------------------------------------------------


def _rat(x: float) -> Fraction:
    return Fraction(float(x)).limit_denominator(MAX_DENOMINATOR)


def rationalize(amps) -> ProductState:
    """Nearest rationals (denominator <= 10**6) to each amplitude part.

    The result is generally not exactly normalized; the exact residuals
    below divide by squared norms, so that does not matter.
    """
    arr = _as_array(amps)
    pairs = tuple(
        (CScalar(_rat(a.real), _rat(a.imag)), CScalar(_rat(b.real), _rat(b.imag))) for a, b in arr
    )
    return ProductState(pairs)


@dataclass(frozen=True)
class PairCheck:
    f: TruthTable
    g: TruthTable
    exact_inner: CScalar
    exact_residual: Fraction
    float_residual: float
    decidable: bool


@dataclass(frozen=True)
class VerifyReport:
    state: ProductState
    checks: tuple[PairCheck, ...] = field(default_factory=tuple)

    @property
    def exact_zero(self) -> bool:
        return all(not c.exact_residual for c in self.checks)

    @property
    def max_exact_residual(self) -> Fraction:
        return max(c.exact_residual for c in self.checks)


def verify_state(state: ProductState, problem: SearchProblem, amps=None) -> VerifyReport:
    """Exact residuals of every required pair for an exact product state.

    ``amps`` are the float amplitudes the state came from, if any; they
    supply the float residual column.
    """
    psi = product_state(state)
    if amps is None:
        amps = normalize_amps([[complex(a), complex(b)] for a, b in state.qubit_amps])
    float_amps = _as_array(amps)
    checks = []
    for f, g in problem.pairs:
        u = apply(build_oracle(problem.oracle_kind, f), psi)
        v = apply(build_oracle(problem.oracle_kind, g), psi)
        collapsed = u.is_zero() or v.is_zero()
        ip = CScalar(0) if collapsed else inner(u, v)
        res = Fraction(1) if collapsed else normalized_overlap(u, v)
        single = SearchProblem(problem.arity, ((f, g),), problem.oracle_kind)
        fres = _Evaluator(single).value(float_amps)
        dec = not collapsed and is_decidable([0, 1], [u, v]).ok
        checks.append(PairCheck(f, g, ip, res, fres, dec))
    return VerifyReport(state, tuple(checks))


def verify(result: SearchResult, problem: SearchProblem) -> VerifyReport:
    """Rationalize a float solution and recompute every pair exactly."""
    return verify_state(rationalize(result.amps), problem, result.amps)
