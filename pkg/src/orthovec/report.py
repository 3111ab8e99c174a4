"""Report documents: a JSON key/value tree with deterministic layout.

Exact quantities are written as text literals (``"1/2"``, ``"[1,-1]"``) so a
report of an exact-layer command never contains a JSON float.  Key order is
the insertion order chosen by each command, which is fixed, so identical
inputs give byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .exactlin import CScalar, KMatrix, KVector, format_scalar, format_vector, parse_scalar, parse_vector

__all__ = [
    "Report",
    "parse_report",
    "enc_scalar",
    "enc_vector",
    "enc_vectors",
    "enc_matrix",
    "dec_scalar",
    "dec_rational",
    "dec_vectors",
    "dec_matrix",
    "matrix_csv",
    "rows_csv",
]


@dataclass
class Report:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    exactness: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "exactness": self.exactness,
        }

    def to_text(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def parse_report(text: str) -> Report:
    data = json.loads(text)
    missing = {"command", "inputs", "results", "exactness"} - set(data)
    if missing:
        raise ValueError(f"report lacks {sorted(missing)}")
    return Report(data["command"], data["inputs"], data["results"], data["exactness"])


def enc_scalar(z: CScalar | Fraction | int) -> str:
    if isinstance(z, CScalar):
        return format_scalar(z)
    return str(Fraction(z))


def enc_vector(v: KVector) -> str:
    return format_vector(v)


def enc_vectors(vs: Sequence[KVector]) -> list[str]:
    return [format_vector(v) for v in vs]


def enc_matrix(m: KMatrix) -> list[str]:
    return [format_vector(m.row(i)) for i in range(m.rows)]


def dec_scalar(text: str) -> CScalar:
    return parse_scalar(text)


def dec_rational(text: str) -> Fraction:
    z = parse_scalar(text)
    if z.im:
        raise ValueError(f"{text!r} is not real")
    return z.re


def dec_vectors(items: Sequence[str]) -> list[KVector]:
    return [parse_vector(s) for s in items]


def dec_matrix(rows: Sequence[str]) -> KMatrix:
    return KMatrix.from_rows([list(parse_vector(r)) for r in rows])


def rows_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def matrix_csv(m: KMatrix) -> str:
    header = [""] + [str(j) for j in range(m.cols)]
    rows = [[str(i)] + [format_scalar(m.at(i, j)) for j in range(m.cols)] for i in range(m.rows)]
    return rows_csv(header, rows)
