"""Finite metric spaces with exact rational distances.

Distances are `fractions.Fraction` values throughout; no floating point is
used anywhere, so strict inequalities (needed by the ceiling-embedding
distortion bound) are decided exactly.  A `MetricSpace` validates all three
metric axioms at construction time and is immutable afterwards.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import (
    InternalVerificationFailure,
    MetricViolation,
    NotIntegerMetric,
    ParseError,
    UnknownLabel,
)

RESERVED_PREFIX = "__"


# ---------------------------------------------------------------------------
# Exact rational values
# ---------------------------------------------------------------------------

def parse_rational(value: int | str | Fraction) -> Fraction:
    """Parse an exact rational from an int, a Fraction, or a string.

    Accepted string forms: integers ("3"), finite decimals ("2.3"),
    fractions ("23/10"), and scientific notation ("1e-3"); all are parsed
    exactly.  Floats are rejected: binary floats cannot represent finite
    decimals exactly.
    """
    if isinstance(value, bool):
        raise ParseError(f"boolean is not a distance value: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(
            f"float distance {value!r} rejected; pass a decimal string instead"
        )
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {value!r}") from exc
    raise ParseError(f"unsupported distance value: {value!r}")


def format_rational(q: Fraction) -> str:
    """Render a Fraction so that `parse_rational` round-trips it exactly."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_to_json(q: Fraction) -> int | str:
    """JSON-friendly form: plain int when integral, "p/q" string otherwise."""
    if q.denominator == 1:
        return q.numerator
    return format_rational(q)


# ---------------------------------------------------------------------------
# Metric axiom validation
# ---------------------------------------------------------------------------

def find_metric_violation(
    dist: tuple[tuple[Fraction, ...], ...]
) -> MetricViolation | None:
    """Return the first metric-axiom violation of a square table, or None.

    Scan order is deterministic: diagonal entries, then symmetry and
    positivity over index pairs (i, j) with i < j, then the triangle
    inequality over triples (i, j, k) in lexicographic order.
    """
    n = len(dist)
    for i, row in enumerate(dist):
        if len(row) != n:
            return MetricViolation(
                "shape", (i,), f"row {i} has {len(row)} entries, expected {n}"
            )
    for i in range(n):
        if dist[i][i] != 0:
            return MetricViolation(
                "diagonal", (i, i), f"d[{i}][{i}] = {dist[i][i]} != 0"
            )
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] != dist[j][i]:
                return MetricViolation(
                    "asymmetry", (i, j),
                    f"d[{i}][{j}] = {dist[i][j]} but d[{j}][{i}] = {dist[j][i]}",
                )
            if dist[i][j] <= 0:
                return MetricViolation(
                    "nonpositive", (i, j),
                    f"d[{i}][{j}] = {dist[i][j]} must be positive for distinct points",
                )
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if k == i or k == j:
                    continue
                if dist[i][j] > dist[i][k] + dist[k][j]:
                    return MetricViolation(
                        "triangle", (i, j, k),
                        f"d[{i}][{j}] = {dist[i][j]} > "
                        f"{dist[i][k]} + {dist[k][j]} = d[{i}][{k}] + d[{k}][{j}]",
                    )
    return None


def violation_reproduces(
    dist: tuple[tuple[Fraction, ...], ...], violation: MetricViolation
) -> bool:
    """Re-evaluate a reported witness against the table it came from."""
    w = violation.witness
    if violation.kind == "shape":
        return len(dist[w[0]]) != len(dist)
    if violation.kind == "diagonal":
        return dist[w[0]][w[0]] != 0
    if violation.kind == "asymmetry":
        return dist[w[0]][w[1]] != dist[w[1]][w[0]]
    if violation.kind == "nonpositive":
        return dist[w[0]][w[1]] <= 0
    if violation.kind == "triangle":
        i, j, k = w
        return dist[i][j] > dist[i][k] + dist[k][j]
    return False


# ---------------------------------------------------------------------------
# MetricSpace
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricSpace:
    """A finite labeled point set with an exact, validated distance table.

    Instances are immutable and safe to share between workers.  Use
    `MetricSpace.from_rows` to build one from plain lists; the constructor
    validates every metric axiom and raises `MetricViolation` with a
    concrete witness on failure.
    """

    labels: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.labels) == 0:
            raise MetricViolation("shape", (), "a metric space needs at least one point")
        if len(set(self.labels)) != len(self.labels):
            raise ParseError(f"duplicate point labels in {self.labels}")
        for lab in self.labels:
            if not isinstance(lab, str) or not lab:
                raise ParseError(f"point labels must be nonempty strings, got {lab!r}")
        if len(self.dist) != len(self.labels):
            raise MetricViolation(
                "shape", (),
                f"{len(self.labels)} labels but {len(self.dist)} table rows",
            )
        violation = find_metric_violation(self.dist)
        if violation is not None:
            raise violation
        object.__setattr__(
            self, "_index", {lab: i for i, lab in enumerate(self.labels)}
        )

    @classmethod
    def from_rows(
        cls,
        labels: list[str] | tuple[str, ...],
        rows: list[list[int | str | Fraction]] | tuple,
    ) -> "MetricSpace":
        dist = tuple(tuple(parse_rational(v) for v in row) for row in rows)
        return cls(tuple(labels), dist)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]  # type: ignore[attr-defined]
        except KeyError:
            raise UnknownLabel(f"unknown point label {label!r}") from None

    def d(self, x: str, y: str) -> Fraction:
        return self.dist[self.index(x)][self.index(y)]

    def restrict(self, labels: list[str] | tuple[str, ...]) -> "MetricSpace":
        """Subspace on the given labels, in the given order."""
        idx = [self.index(lab) for lab in labels]
        rows = tuple(tuple(self.dist[i][j] for j in idx) for i in idx)
        return MetricSpace(tuple(labels), rows)


def is_integer_metric(m: MetricSpace) -> bool:
    """True iff every distance is a non-negative integer."""
    return all(v.denominator == 1 for row in m.dist for v in row)


def _require_integer(m: MetricSpace) -> None:
    if not is_integer_metric(m):
        raise NotIntegerMetric("operation requires an integer-valued metric")


# ---------------------------------------------------------------------------
# Betweenness and derived checks
# ---------------------------------------------------------------------------

def between(m: MetricSpace, x: str, y: str, z: str) -> bool:
    """Whether y lies between x and z: y differs from both endpoints and
    d(x,z) = d(x,y) + d(y,z).  x = z is permitted and always yields False."""
    ix, iy, iz = m.index(x), m.index(y), m.index(z)
    if iy == ix or iy == iz:
        return False
    return m.dist[ix][iz] == m.dist[ix][iy] + m.dist[iy][iz]


def kay_chartrand_check(m: MetricSpace) -> tuple[str, str] | None:
    """Check that every pair at distance >= 2 has some point between it.

    Returns None when the condition holds (the metric is then exactly the
    geodesic metric of the distance-1 graph), otherwise the lexicographically
    first violating pair by point index.  Requires an integer metric.
    """
    _require_integer(m)
    n = m.n
    for i in range(n):
        for j in range(i + 1, n):
            if m.dist[i][j] < 2:
                continue
            if not any(
                k != i and k != j
                and m.dist[i][j] == m.dist[i][k] + m.dist[k][j]
                for k in range(n)
            ):
                return (m.labels[i], m.labels[j])
    return None


@dataclass(frozen=True)
class X2Set:
    """The metrically irreducible pairs: distance >= 2 and no strictly
    between point.  Each such pair receives its own subdivision path in the
    embedding construction."""

    pairs: tuple[tuple[str, str], ...]

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: tuple[str, str]) -> bool:
        a, b = pair
        return (a, b) in self.pairs or (b, a) in self.pairs


def compute_x2_set(m: MetricSpace) -> X2Set:
    """All irreducible pairs, ordered lexicographically by point index."""
    _require_integer(m)
    n = m.n
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if m.dist[i][j] < 2:
                continue
            reducible = any(
                k != i and k != j
                and m.dist[i][j] == m.dist[i][k] + m.dist[k][j]
                for k in range(n)
            )
            if not reducible:
                out.append((m.labels[i], m.labels[j]))
    return X2Set(tuple(out))


def ceiling_metric(m: MetricSpace) -> MetricSpace:
    """Round every distance up to the nearest integer.

    The result is itself a metric; this is re-validated on construction and
    a failure is promoted to an internal error since it can only mean a bug.
    """
    rows = tuple(tuple(Fraction(math.ceil(v)) for v in row) for row in m.dist)
    try:
        return MetricSpace(m.labels, rows)
    except MetricViolation as exc:  # pragma: no cover - unreachable for metrics
        raise InternalVerificationFailure(
            f"ceiling of a metric failed validation: {exc}"
        ) from exc


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------

def _check_user_labels(labels: list) -> tuple[str, ...]:
    seen = set()
    for lab in labels:
        if not isinstance(lab, str) or not lab:
            raise ParseError(f"point labels must be nonempty strings, got {lab!r}")
        if lab.startswith(RESERVED_PREFIX):
            raise ParseError(
                f"label {lab!r} uses the reserved {RESERVED_PREFIX!r} prefix"
            )
        if lab in seen:
            raise ParseError(f"duplicate point label {lab!r}")
        seen.add(lab)
    return tuple(labels)


def parse_metric(text: str, format: str = "json") -> MetricSpace:
    """Parse a metric space from JSON or matrix text.

    JSON: ``{"points": [...], "distances": [[...], ...]}`` where entries are
    integers, exact decimal/fraction strings, or (exactly parsed) decimal
    literals.  Matrix text: first line is n, then n whitespace-separated
    rows; points are named p0..p{n-1}.

    Raises ParseError for malformed input and MetricViolation (with a
    witness) when the table is not a metric.
    """
    if format == "json":
        try:
            doc = json.loads(text, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        except ValueError as exc:
            raise ParseError(f"invalid numeric literal: {exc}") from exc
        if not isinstance(doc, dict):
            raise ParseError("metric JSON must be an object")
        if "points" not in doc or "distances" not in doc:
            raise ParseError('metric JSON needs "points" and "distances" keys')
        labels = doc["points"]
        rows = doc["distances"]
        if not isinstance(labels, list) or not isinstance(rows, list):
            raise ParseError('"points" and "distances" must be arrays')
        if len(rows) != len(labels):
            raise ParseError(
                f"{len(labels)} points but {len(rows)} distance rows"
            )
        for row in rows:
            if not isinstance(row, list) or len(row) != len(labels):
                raise ParseError("distance table must be square")
        return MetricSpace.from_rows(_check_user_labels(labels), rows)

    if format == "matrix":
        tokens = text.split()
        if not tokens:
            raise ParseError("empty matrix input")
        try:
            n = int(tokens[0])
        except ValueError as exc:
            raise ParseError(f"first token must be the size, got {tokens[0]!r}") from exc
        if n < 1:
            raise ParseError(f"size must be >= 1, got {n}")
        values = tokens[1:]
        if len(values) != n * n:
            raise ParseError(f"expected {n * n} entries, got {len(values)}")
        labels = [f"p{i}" for i in range(n)]
        rows = [values[i * n : (i + 1) * n] for i in range(n)]
        return MetricSpace.from_rows(labels, rows)

    raise ParseError(f"unknown metric format {format!r}")


def dump_metric(m: MetricSpace, format: str = "json") -> str:
    """Serialize a metric space; output is deterministic byte-for-byte."""
    if format == "json":
        doc = {
            "points": list(m.labels),
            "distances": [[rational_to_json(v) for v in row] for row in m.dist],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ": ")) + "\n"
    if format == "matrix":
        lines = [str(m.n)]
        for row in m.dist:
            lines.append(" ".join(format_rational(v) for v in row))
        return "\n".join(lines) + "\n"
    raise ParseError(f"unknown metric format {format!r}")
