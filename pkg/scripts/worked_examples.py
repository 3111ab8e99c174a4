#!/usr/bin/env python3
"""Recompute the small worked examples end to end and print them.

Usage:
  python3 scripts/worked_examples.py
  python3 scripts/worked_examples.py --seed 3 --restarts 16
"""

from __future__ import annotations

import argparse
import time

from orthovec.ampsearch import SearchProblem, search, verify
from orthovec.boolfn import DEUTSCH, from_index, parity
from orthovec.exactlin import format_scalar, format_vector, gram, primitive, sign_pattern
from orthovec.lift import lift_all, verify_lift
from orthovec.oracle import MINUS, PLUS, ProductState
from orthovec.quantum import is_unitary
from orthovec.query import QuerySetup, finest_partition, is_decidable, normalized_inner, output_vectors


def section(title):
    print(f"\n== {title}")


def show(names, vectors):
    for name, v in zip(names, vectors):
        p = primitive(v)
        print(f"  {name:10s} {format_vector(p):28s} {sign_pattern(p) or ''}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--restarts", type=int, default=64)
    args = ap.parse_args()

    names = [f"deutsch.f{i}" for i in range(4)]
    family = [DEUTSCH[n] for n in names]

    section("xor oracle, input (0-1)(0-1)")
    setup = QuerySetup("xor", tuple(family), ProductState((MINUS, MINUS)))
    outs = output_vectors(setup)
    show(names, outs)
    part = finest_partition(outs)
    print("  classes:", [[names[i] for i in c] for c in part.classes])

    section("overwrite oracle, input (0+1)(0+1)")
    setup = QuerySetup("overwrite", tuple(family), ProductState((PLUS, PLUS)))
    over = [primitive(v) for v in output_vectors(setup)]
    show(names, over)
    print("  unitary:", [is_unitary(op.matrix).ok for op in setup.oracles()])
    print("  classes:", [[names[i] for i in c] for c in finest_partition(over).classes])

    section("lifting the overwrite outputs")
    lifted = lift_all(over)
    for v in lifted.lifted:
        print("  ", format_vector(v))
    rep = verify_lift(over, lifted.lifted)
    print(f"  dim {lifted.dim}, orthogonal {rep.orthogonal}, projects {rep.projects}")
    print("  gram diagonal:", [format_scalar(gram(lifted.lifted).at(i, i)) for i in range(4)])

    section("parity of 2-bit functions, input (0-1)(0-1)(0-1)")
    f0, f8 = from_index(0, 2), from_index(8, 2)
    setup = QuerySetup("xor", (f0, f8), ProductState((MINUS, MINUS, MINUS)))
    u, v = output_vectors(setup)
    verdict = is_decidable([parity(f0), parity(f8)], [u, v])
    i, j, ip = verdict.witness
    print(f"  decidable {verdict.ok}: <f0|f8> = {format_scalar(ip)}, normalized {format_scalar(normalized_inner(u, v))}")

    section("searching a separating product input for (f0, f8)")
    problem = SearchProblem(2, ((f0, f8),), seed=args.seed, restarts=args.restarts)
    start = time.perf_counter()
    res = search(problem)
    print(f"  {res.status}: objective {res.objective:.3g} after {time.perf_counter() - start:.2f} s (restart {res.best_restart})")
    for k, (a, b) in enumerate(res.amps):
        print(f"  qubit {k}: |a|^2 = {abs(a) ** 2:.6f}, |b|^2 = {abs(b) ** 2:.6f}")
    check = verify(res, problem).checks[0]
    print(f"  rationalized residual {float(check.exact_residual):.3g}, exactly separable: {check.decidable}")


if __name__ == "__main__":
    main()
