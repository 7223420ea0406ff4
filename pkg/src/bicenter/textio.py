"""Plain-text instance format.

::

    # comments run to end of line
    n m k
    w_0
    ...
    u v length      (m lines)
    v u             (k lines)
"""

from __future__ import annotations

import re
from decimal import Decimal
from fractions import Fraction
from typing import List, Tuple

from .model import Instance, InstanceError, Scalar, validate_and_build

_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")
_INT = re.compile(r"^[+-]?\d+$")


class InstanceFormatError(ValueError):
    """Malformed instance text; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _tokens(text: str) -> List[Tuple[int, List[str]]]:
    rows = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((no, body.split()))
    return rows


def _number(tok: str, line: int) -> Scalar:
    if not _NUMBER.match(tok):
        raise InstanceFormatError(line, f"expected a number, got {tok!r}")
    f = Fraction(tok)
    return f.numerator if f.denominator == 1 else f


def _vertex(tok: str, line: int) -> int:
    if not _INT.match(tok):
        raise InstanceFormatError(line, f"expected a vertex id, got {tok!r}")
    return int(tok)


def parse_instance(text: str) -> Instance:
    rows = _tokens(text)
    if not rows:
        raise InstanceFormatError(1, "empty instance")
    line, head = rows[0]
    if len(head) != 3 or not all(_INT.match(t) for t in head):
        raise InstanceFormatError(line, "header must be 'n m k'")
    n, m, k = (int(t) for t in head)
    if min(n, m, k) < 0:
        raise InstanceFormatError(line, "counts must be non-negative")
    expected = 1 + n + m + k
    if len(rows) < expected:
        last = rows[-1][0] if rows else 1
        raise InstanceFormatError(last + 1, f"expected {expected} data lines, found {len(rows)}")
    if len(rows) > expected:
        raise InstanceFormatError(rows[expected][0], "unexpected trailing data")
    weights = []
    for line, toks in rows[1:1 + n]:
        if len(toks) != 1:
            raise InstanceFormatError(line, "weight line must hold one number")
        weights.append(_number(toks[0], line))
    edges = []
    for line, toks in rows[1 + n:1 + n + m]:
        if len(toks) != 3:
            raise InstanceFormatError(line, "edge line must be 'u v length'")
        edges.append((_vertex(toks[0], line), _vertex(toks[1], line), _number(toks[2], line)))
    pairs = []
    for line, toks in rows[1 + n + m:]:
        if len(toks) != 2:
            raise InstanceFormatError(line, "pair line must be 'v u'")
        pairs.append((_vertex(toks[0], line), _vertex(toks[1], line)))
    return validate_and_build(weights, edges, pairs)


def read_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def format_number(x: Scalar) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    den = f.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den != 1:
        raise InstanceError(f"{f} has no finite decimal expansion")
    d = Decimal(f.numerator) / Decimal(f.denominator)
    return format(d.normalize(), "f")


def format_instance(instance: Instance, comment: str = "") -> str:
    g = instance.graph
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{g.n} {g.m} {instance.k}")
    out.extend(format_number(w) for w in g.weights)
    out.extend(f"{u} {v} {format_number(length)}" for u, v, length in g.edges)
    out.extend(f"{v} {u}" for v, u in instance.pairs)
    return "\n".join(out) + "\n"
