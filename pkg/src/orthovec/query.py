"""Which properties of a function family can one oracle query decide?

A single projective measurement separates two groups of oracle outputs only
if every output in one group is exactly orthogonal to every output in the
other.  The finest such grouping is the set of connected components of the
graph joining outputs with nonzero inner product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from .boolfn import TruthTable
from .exactlin import CScalar, DimensionError, KMatrix, KVector, gram, inner
from .oracle import MINUS, LinearOp, ProductState, apply, build_oracle, product_state
from .quantum import Context, Observable, Verdict, is_unitary, rational_sqrt

__all__ = [
    "ORACLE_KINDS",
    "QuerySetup",
    "OrthPartition",
    "output_vectors",
    "finest_partition",
    "is_decidable",
    "orthogonal_span",
    "property_projector",
    "normalized_overlap",
    "normalized_inner",
    "oracles_unitary",
]

ORACLE_KINDS = ("xor", "overwrite")


@dataclass(frozen=True)
class QuerySetup:
    """Oracle scheme, function family and full input state.

    For ``xor`` the input state includes the ancilla as its last qubit.
    """

    oracle_kind: str
    family: tuple[TruthTable, ...]
    input: ProductState

    def __post_init__(self):
        kind = "xor" if self.oracle_kind == "xor_ancilla" else self.oracle_kind
        if kind not in ORACLE_KINDS:
            raise ValueError(f"unknown oracle kind {self.oracle_kind!r}")
        object.__setattr__(self, "oracle_kind", kind)
        fam = tuple(self.family)
        if not fam:
            raise ValueError("the function family is empty")
        arity = fam[0].arity
        if any(f.arity != arity for f in fam):
            raise ValueError("family members differ in arity")
        object.__setattr__(self, "family", fam)
        need = arity + 1 if kind == "xor" else 2
        if self.input.n_qubits != need:
            raise DimensionError(
                f"{kind} oracle on {arity}-bit functions needs {need} input qubits, got {self.input.n_qubits}"
            )

    @classmethod
    def with_ancilla(cls, family: Sequence[TruthTable], inputs: ProductState, ancilla=MINUS) -> "QuerySetup":
        return cls("xor", tuple(family), inputs.with_ancilla(ancilla))

    def oracles(self) -> list[LinearOp]:
        return [build_oracle(self.oracle_kind, f) for f in self.family]


@dataclass(frozen=True)
class OrthPartition:
    classes: tuple[tuple[int, ...], ...]
    witness_gram: KMatrix
    vectors: tuple[KVector, ...]

    def class_of(self, idx: int) -> int:
        for c, members in enumerate(self.classes):
            if idx in members:
                return c
        raise IndexError(idx)


def output_vectors(setup: QuerySetup) -> list[KVector]:
    psi = product_state(setup.input)
    return [apply(op, psi) for op in setup.oracles()]


def oracles_unitary(setup: QuerySetup) -> list[bool]:
    return [is_unitary(op.matrix).ok for op in setup.oracles()]


def finest_partition(vectors: Sequence[KVector]) -> OrthPartition:
    vectors = tuple(vectors)
    if not vectors:
        raise ValueError("no vectors to partition")
    g = gram(vectors)
    k = len(vectors)
    seen = [False] * k
    classes = []
    for start in range(k):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in range(k):
                if not seen[b] and g.at(a, b):
                    seen[b] = True
                    stack.append(b)
        classes.append(tuple(sorted(comp)))
    return OrthPartition(tuple(classes), g, vectors)


def is_decidable(labels: Mapping[int, Hashable] | Sequence[Hashable], vectors: Sequence[KVector]) -> Verdict:
    """True iff differently labelled vectors are pairwise exactly orthogonal.

    On failure the witness is ``(i, j, <v_i|v_j>)`` for the first offending
    pair in lexicographic order.
    """
    vectors = list(vectors)
    lab = dict(labels) if isinstance(labels, Mapping) else dict(enumerate(labels))
    missing = [i for i in range(len(vectors)) if i not in lab]
    if missing:
        raise KeyError(f"no label for vector {missing[0]}")
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            if lab[i] != lab[j]:
                ip = inner(vectors[i], vectors[j])
                if ip:
                    return Verdict(False, (i, j, ip))
    return Verdict(True)


def normalized_overlap(u: KVector, v: KVector) -> Fraction:
    """``|<u|v>|**2 / (<u|u><v|v>)``."""
    return inner(u, v).abs2() / (u.norm_sq() * v.norm_sq())


def normalized_inner(u: KVector, v: KVector) -> CScalar | None:
    """``<u|v> / (|u| |v|)`` when that is rational, otherwise None."""
    root = rational_sqrt(u.norm_sq() * v.norm_sq())
    if root is None:
        return None
    return inner(u, v) / CScalar(root)


def orthogonal_span(vs: Sequence[KVector]) -> list[KVector]:
    """Exact, unnormalized Gram-Schmidt; dependent vectors are dropped."""
    basis: list[KVector] = []
    for v in vs:
        w = v
        for b in basis:
            c = inner(b, w) / CScalar(b.norm_sq())
            if c:
                w = w - b.scale(c)
        if not w.is_zero():
            basis.append(w)
    return basis


def property_projector(partition: OrthPartition, eigenvalues: Sequence[Fraction | int]) -> Observable:
    """Observable assigning ``eigenvalues[c]`` to the span of class ``c``."""
    if len(eigenvalues) != len(partition.classes):
        raise ValueError(f"{len(partition.classes)} classes but {len(eigenvalues)} eigenvalues")
    parts = []
    for lam, members in zip(eigenvalues, partition.classes):
        span = orthogonal_span([partition.vectors[i] for i in members])
        if not span:
            raise ValueError(f"class {list(members)} spans only the zero vector")
        parts.append((Fraction(lam), Context(span)))
    return Observable(parts)

