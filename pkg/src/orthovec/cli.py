"""Command-line front end.

Every subcommand prints one report (see :mod:`orthovec.report`) on standard
output.  Exit status is 0 on success, 2 on malformed input (the diagnostic
names the offending token) and 1 only when ``decidable`` answers no.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import ampsearch, boolfn, lift, oracle, quantum, query
from .boolfn import TruthTable, parse_family, parse_table
from .exactlin import (
    DimensionError,
    KVector,
    LiteralError,
    gram,
    parse_scalar,
    parse_vector,
    parse_vectors,
    primitive,
    sign_pattern,
)
from .report import (
    Report,
    enc_matrix,
    enc_scalar,
    enc_vector,
    enc_vectors,
    matrix_csv,
    rows_csv,
)

SEED_ENV = "ORTHOVEC_SEED"
SEARCH_KEYS = ("seed", "restarts", "max_iters", "tol", "fd_step")


class UsageError(Exception):
    """Bad command-line input; exits with status 2."""


def _function_name(f: TruthTable) -> str:
    if f.arity == 1:
        for name, t in boolfn.DEUTSCH.items():
            if t == f:
                return name
    return f"f{f.index}"


def _describe(f: TruthTable) -> dict:
    return {"table": str(f), "name": _function_name(f), "parity": boolfn.parity(f)}


# argument handling ----------------------------------------------------------


def _add_setup_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--oracle", choices=("xor", "overwrite"), default="xor")
    p.add_argument("--family", required=True, help="comma-separated truth tables or deutsch.fK aliases")
    p.add_argument("--input", required=True, help="qubit literals, e.g. '-,-' or '(1,0),+'")
    p.add_argument("--ancilla", help="ancilla qubit literal for xor oracles (default '-')")


def _setup_from_args(args) -> query.QuerySetup:
    family = parse_family(args.family)
    state = oracle.parse_product_state(args.input)
    arity = family[0].arity
    if args.oracle == "overwrite":
        if args.ancilla is not None:
            raise UsageError("--ancilla applies to xor oracles only")
        return query.QuerySetup("overwrite", tuple(family), state)
    if state.n_qubits == arity + 1 and args.ancilla is None:
        # ancilla already spelled out as the last qubit
        return query.QuerySetup("xor", tuple(family), state)
    if state.n_qubits != arity:
        raise LiteralError(f"expected {arity} input qubits (plus optional ancilla)", args.input)
    anc = oracle.MINUS if args.ancilla is None else oracle.parse_qubit(args.ancilla)
    return query.QuerySetup.with_ancilla(family, state, anc)


def _setup_inputs(setup: query.QuerySetup) -> dict:
    return {
        "oracle": setup.oracle_kind,
        "family": [_describe(f) for f in setup.family],
        "input": oracle.format_product_state(setup.input),
    }


def _labels(text: str, family: Sequence[TruthTable]) -> list:
    if text == "parity":
        return [boolfn.parity(f) for f in family]
    toks = [t.strip() for t in text.split(",")]
    if len(toks) != len(family):
        raise LiteralError(f"need {len(family)} labels", text)
    return toks


def _eigenvalues(text: str | None, n: int) -> list[Fraction]:
    if text is None:
        return [Fraction(i) for i in range(n)]
    vals = []
    for tok in text.split(","):
        z = parse_scalar(tok)
        if z.im:
            raise LiteralError("eigenvalues must be real", tok)
        vals.append(z.re)
    if len(vals) != n:
        raise LiteralError(f"need {n} eigenvalues", text)
    return vals


def _pairs(text: str) -> list[tuple[TruthTable, TruthTable]]:
    out = []
    for tok in text.split(","):
        if not tok.strip():
            continue
        parts = tok.split(":")
        if len(parts) != 2:
            raise LiteralError("a pair is written f:g", tok)
        out.append((parse_table(parts[0]), parse_table(parts[1])))
    if not out:
        raise LiteralError("no pairs given", text)
    return out


def _search_settings(args) -> dict:
    settings: dict = {"seed": int(os.environ.get(SEED_ENV, "0"))}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise LiteralError(f"unreadable config ({exc})", args.config) from None
        unknown = set(cfg) - set(SEARCH_KEYS)
        if unknown:
            raise LiteralError("unknown config key", sorted(unknown)[0])
        settings.update(cfg)
    for key in SEARCH_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            settings[key] = val
    return settings


def _problem(args, pairs) -> ampsearch.SearchProblem:
    arity = pairs[0][0].arity
    s = _search_settings(args) if hasattr(args, "restarts") else {}
    return ampsearch.SearchProblem(arity, tuple(pairs), args.oracle, **s)


def _float_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _verify_payload(rep: ampsearch.VerifyReport) -> dict:
    return {
        "state": oracle.format_product_state(rep.state),
        "pairs": [
            {
                "functions": [str(c.f), str(c.g)],
                "exact_inner": enc_scalar(c.exact_inner),
                "exact_residual": enc_scalar(c.exact_residual),
                "float_residual": c.float_residual,
                "decidable": c.decidable,
            }
            for c in rep.checks
        ],
        "exact_zero": rep.exact_zero,
    }


# subcommands ----------------------------------------------------------------


def cmd_oracle_vectors(args) -> tuple[Report, int]:
    setup = _setup_from_args(args)
    vs = query.output_vectors(setup)
    prim = [primitive(v) for v in vs]
    rep = Report("oracle-vectors", _setup_inputs(setup))
    rep.results = {
        "state": enc_vector(oracle.product_state(setup.input)),
        "unitary": query.oracles_unitary(setup),
        "vectors": enc_vectors(vs),
        "primitive": enc_vectors(prim),
        "patterns": [sign_pattern(v) for v in prim],
    }
    rep.exactness = {k: "exact" for k in rep.results}
    return rep, 0


def cmd_gram(args) -> tuple[Report, int]:
    vs = parse_vectors(args.vectors)
    g = gram(vs)
    rep = Report("gram", {"vectors": enc_vectors(vs)})
    rep.results = {"gram": enc_matrix(g), "diagonal": g.is_diagonal(), "hermitian": g.is_hermitian()}
    rep.exactness = {"gram": "exact"}
    if args.format == "csv":
        return _CsvReport(matrix_csv(g)), 0
    return rep, 0


def cmd_lift(args) -> tuple[Report, int]:
    vs = parse_vectors(args.vectors)
    res = lift.lift_all(vs, skip_orthogonal=args.skip_orthogonal)
    check = lift.verify_lift(vs, res.lifted)
    rep = Report("lift", {"vectors": enc_vectors(vs), "skip_orthogonal": args.skip_orthogonal})
    rep.results = {
        "original_dim": res.original_dim,
        "lifted_dim": res.dim,
        "lifted": enc_vectors(res.lifted),
        "pair_log": [
            {"i": s.i, "j": s.j, "appended": enc_scalar(s.appended_value), "skipped": s.skipped}
            for s in res.pair_log
        ],
        "verification": {"orthogonal": check.orthogonal, "projects": check.projects},
    }
    rep.exactness = {"lifted": "exact", "pair_log": "exact"}
    return rep, 0


def _lift_report_payload(check: lift.LiftReport) -> dict:
    w = check.orthogonality_witness
    return {
        "orthogonal": check.orthogonal,
        "projects": check.projects,
        "orthogonality_witness": None if w is None else {"pair": [w[0], w[1]], "inner": enc_scalar(w[2])},
        "projection_witness": check.projection_witness,
    }


def cmd_verify_lift(args) -> tuple[Report, int]:
    orig = parse_vectors(args.originals)
    lifted = parse_vectors(args.lifted)
    check = lift.verify_lift(orig, lifted)
    rep = Report("verify-lift", {"originals": enc_vectors(orig), "lifted": enc_vectors(lifted)})
    rep.results = _lift_report_payload(check)
    rep.exactness = {"orthogonality_witness": "exact"}
    return rep, 0


def _vectors_or_setup(args):
    if args.vectors:
        return None, parse_vectors(args.vectors)
    if not (args.family and args.input):
        raise UsageError("give either --vectors or --family with --input")
    setup = _setup_from_args(args)
    return setup, query.output_vectors(setup)


def _add_optional_setup_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--oracle", choices=("xor", "overwrite"), default="xor")
    p.add_argument("--family")
    p.add_argument("--input")
    p.add_argument("--ancilla")
    p.add_argument("--vectors", help="analyse these vectors instead of oracle outputs")


def _decidable_payload(verdict, vectors, family) -> dict:
    out: dict = {"decidable": verdict.ok, "witness": None}
    if not verdict.ok:
        i, j, ip = verdict.witness
        nip = query.normalized_inner(vectors[i], vectors[j])
        out["witness"] = {
            "pair": [i, j],
            "functions": None if family is None else [_function_name(family[i]), _function_name(family[j])],
            "inner": enc_scalar(ip),
            "normalized_inner": None if nip is None else enc_scalar(nip),
            "overlap": enc_scalar(query.normalized_overlap(vectors[i], vectors[j])),
        }
    return out


def cmd_partition(args) -> tuple[Report, int]:
    setup, vs = _vectors_or_setup(args)
    part = query.finest_partition(vs)
    inputs = _setup_inputs(setup) if setup else {}
    inputs["vectors"] = enc_vectors(vs)
    rep = Report("partition", inputs)
    results: dict = {}
    if setup is not None:
        results["unitary"] = query.oracles_unitary(setup)
    results["gram"] = enc_matrix(part.witness_gram)
    results["classes"] = [list(c) for c in part.classes]
    if args.labels:
        if setup is None and args.labels == "parity":
            raise UsageError("parity labels need --family")
        family = setup.family if setup else [None] * len(vs)
        labels = _labels(args.labels, family) if setup else [t.strip() for t in args.labels.split(",")]
        if len(labels) != len(vs):
            raise LiteralError(f"need {len(vs)} labels", args.labels)
        v = query.is_decidable(labels, vs)
        results["labelings"] = {args.labels: _decidable_payload(v, vs, setup.family if setup else None)}
    rep.results = results
    rep.exactness = {"gram": "exact"}
    if args.format == "csv":
        return _CsvReport(matrix_csv(part.witness_gram)), 0
    return rep, 0


def cmd_decidable(args) -> tuple[Report, int]:
    setup = _setup_from_args(args)
    vs = query.output_vectors(setup)
    labels = _labels(args.labels, setup.family)
    verdict = query.is_decidable(labels, vs)
    inputs = _setup_inputs(setup)
    inputs["labels"] = args.labels
    rep = Report("decidable", inputs)
    rep.results = {"vectors": enc_vectors(vs), **_decidable_payload(verdict, vs, setup.family)}
    rep.exactness = {"vectors": "exact", "witness": "exact"}
    return rep, 0 if verdict.ok else 1


def _observable_payload(obs: quantum.Observable) -> list:
    return [{"eigenvalue": enc_scalar(lam), "vectors": enc_vectors(ctx.vectors)} for lam, ctx in obs.parts]


def cmd_projector(args) -> tuple[Report, int]:
    setup, vs = _vectors_or_setup(args)
    part = query.finest_partition(vs)
    eig = _eigenvalues(args.eigenvalues, len(part.classes))
    obs = query.property_projector(part, eig)
    inputs = _setup_inputs(setup) if setup else {}
    inputs["vectors"] = enc_vectors(vs)
    rep = Report("projector", inputs)
    rep.results = {
        "classes": [list(c) for c in part.classes],
        "observable": _observable_payload(obs),
        "outcomes": [
            {enc_scalar(lam): enc_scalar(p) for lam, p in quantum.measure_observable(v, obs).items()}
            for v in vs
        ],
    }
    rep.exactness = {"observable": "exact", "outcomes": "exact"}
    return rep, 0


def cmd_born(args) -> tuple[Report, int]:
    psi = parse_vector(args.state)
    ctx = quantum.Context(parse_vectors(args.context))
    probs = quantum.born_probabilities(psi, ctx)
    if args.format == "csv":
        return _CsvReport(
            rows_csv(["index", "vector", "probability"], [[i, enc_vector(e), enc_scalar(p)] for i, (e, p) in enumerate(zip(ctx, probs))])
        ), 0
    rep = Report("born", {"state": enc_vector(psi), "context": enc_vectors(ctx.vectors)})
    rep.results = {
        "probabilities": [enc_scalar(p) for p in probs],
        "total": enc_scalar(sum(probs, Fraction(0))),
        "full_context": ctx.full,
    }
    rep.exactness = {"probabilities": "exact", "total": "exact"}
    return rep, 0


def cmd_product_test(args) -> tuple[Report, int]:
    v = parse_vector(args.amps)
    verdict = quantum.is_product_3qubit(list(v))
    rep = Report("product-test", {"amps": enc_vector(v)})
    rep.results = {
        "product": verdict.ok,
        "failing_equation": None
        if verdict.ok
        else {"index": verdict.witness, "equation": quantum.equation_label(quantum.PRODUCT_EQUATIONS[verdict.witness])},
    }
    return rep, 0


def cmd_search(args) -> tuple[Report, int]:
    pairs = _pairs(args.pairs)
    problem = _problem(args, pairs)
    res = ampsearch.search(problem)
    rep = Report(
        "search",
        {
            "oracle": problem.oracle_kind,
            "pairs": [[str(f), str(g)] for f, g in problem.pairs],
            "seed": problem.seed,
            "restarts": problem.restarts,
            "max_iters": problem.max_iters,
            "tol": problem.tol,
            "fd_step": problem.fd_step,
        },
    )
    results: dict = {
        "status": res.status,
        "objective": res.objective,
        "amps": [[_float_pair(a), _float_pair(b)] for a, b in res.amps],
        "best_restart": res.best_restart,
        "trace": list(res.trace),
    }
    if res.status == "found":
        results["verification"] = _verify_payload(ampsearch.verify(res, problem))
    else:
        results["note"] = "no restart reached the tolerance; this is not a proof that no solution exists"
    rep.results = results
    rep.exactness = {"objective": "float", "amps": "float", "trace": "float", "verification": "exact"}
    return rep, 0


def cmd_eval_assignment(args) -> tuple[Report, int]:
    pairs = _pairs(args.pairs)
    problem = ampsearch.SearchProblem(pairs[0][0].arity, tuple(pairs), args.oracle)
    state = oracle.parse_product_state(args.amps)
    if state.n_qubits != ampsearch.n_qubits(problem):
        raise LiteralError(f"expected {ampsearch.n_qubits(problem)} qubit literals", args.amps)
    amps = ampsearch.normalize_amps([[complex(a), complex(b)] for a, b in state.qubit_amps])
    value = ampsearch.objective(amps, problem)
    rep = Report(
        "eval-assignment",
        {"oracle": problem.oracle_kind, "pairs": [[str(f), str(g)] for f, g in pairs], "amps": oracle.format_product_state(state)},
    )
    rep.results = {
        "objective": value,
        "exact": _verify_payload(ampsearch.verify_state(state, problem, amps)),
    }
    rep.exactness = {"objective": "float", "exact": "exact"}
    return rep, 0


class _CsvReport:
    def __init__(self, text: str):
        self.text = text

    def to_text(self) -> str:
        return self.text


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orthovec", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("oracle-vectors", help="oracle outputs for a family on one input state")
    _add_setup_args(p)
    p.set_defaults(func=cmd_oracle_vectors)

    p = sub.add_parser("gram", help="exact Gram matrix")
    p.add_argument("--vectors", required=True)
    p.add_argument("--format", choices=("report", "csv"), default="report")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("lift", help="orthogonalize by dimensional lifting")
    p.add_argument("--vectors", required=True)
    p.add_argument("--skip-orthogonal", action="store_true")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify-lift", help="check a lifted set against its originals")
    p.add_argument("--originals", required=True)
    p.add_argument("--lifted", required=True)
    p.set_defaults(func=cmd_verify_lift)

    p = sub.add_parser("partition", help="finest orthogonal partition of oracle outputs")
    _add_optional_setup_args(p)
    p.add_argument("--labels", help="'parity' or comma-separated labels to test")
    p.add_argument("--format", choices=("report", "csv"), default="report")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("decidable", help="is a labelling decidable by one query? exit 1 if not")
    _add_setup_args(p)
    p.add_argument("--labels", required=True, help="'parity' or comma-separated labels")
    p.set_defaults(func=cmd_decidable)

    p = sub.add_parser("projector", help="spectral observable separating the partition classes")
    _add_optional_setup_args(p)
    p.add_argument("--eigenvalues", help="one rational per class (default 0,1,...)")
    p.set_defaults(func=cmd_projector)

    p = sub.add_parser("born", help="Born probabilities of a state in a context")
    p.add_argument("--state", required=True)
    p.add_argument("--context", required=True)
    p.add_argument("--format", choices=("report", "csv"), default="report")
    p.set_defaults(func=cmd_born)

    p = sub.add_parser("product-test", help="three-qubit product-state equations")
    p.add_argument("--amps", required=True, help="vector literal with 8 entries")
    p.set_defaults(func=cmd_product_test)

    p = sub.add_parser("search", help="search input amplitudes that orthogonalize pairs")
    p.add_argument("--pairs", required=True, help="f:g[,f:g...] truth tables")
    p.add_argument("--oracle", choices=("xor", "overwrite"), default="xor")
    p.add_argument("--config", help="JSON file with search settings")
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--max-iters", dest="max_iters", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--fd-step", dest="fd_step", type=float)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("eval-assignment", help="objective at fixed amplitudes")
    p.add_argument("--pairs", required=True)
    p.add_argument("--oracle", choices=("xor", "overwrite"), default="xor")
    p.add_argument("--amps", required=True, help="qubit literals, ancilla last, e.g. '1,1,1'")
    p.set_defaults(func=cmd_eval_assignment)
    return ap


# options whose values may legitimately start with '-' (e.g. --input -,-)
_DASH_VALUE_OPTS = {"--input", "--ancilla", "--amps", "--vectors", "--state", "--context", "--eigenvalues", "--labels"}


def _glue_values(argv: Sequence[str]) -> list[str]:
    out, it = [], iter(argv)
    for tok in it:
        if tok in _DASH_VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rep, code = args.func(args)
    except (UsageError, ValueError, DimensionError, KeyError) as exc:
        print(f"orthovec {args.command}: error: {exc}", file=stderr)
        return 2
    stdout.write(rep.to_text())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
