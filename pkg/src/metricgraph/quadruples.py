"""Betweenness-forced additivity, line embeddings, and quadruple checks.

A metric space belongs to the Menger betweenness class when
d(x,z) >= max(d(x,y), d(y,z)) always forces d(x,z) = d(x,y) + d(y,z).
Spaces in the class with at least five points embed isometrically into the
real line; the four-point obstructions are exactly the pseudo-linear
quadruples, whose opposite-pair distances are (s, s, t, t) with both
diagonals s + t.

This module also hosts the finite-graph checkers for the two conjectures
tying these notions to graph shape (paths and the 4-cycle) and to induced
4-cycles, plus an exhaustive search harness over enumerated small graphs.
The checkers report evidence - consistency on the searched range or
replayable violations - never verdicts about the conjectures themselves.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .enumeration import HARD_CAP, enumerate_connected_graphs
from .errors import (
    Disconnected,
    EmptyGraph,
    InternalVerificationFailure,
    TooLarge,
    TooSmall,
    WrongArity,
)
from .graph import Graph, classify_shape, geodesic_metric, graph_doc, induced_subgraph, is_connected
from .metric import MetricSpace


# ---------------------------------------------------------------------------
# Menger betweenness class
# ---------------------------------------------------------------------------

def mb_check(m: MetricSpace) -> tuple[str, str, str] | None:
    """Membership in the betweenness-forced-additivity class.

    Returns None when every ordered triple (x, y, z) of distinct points
    with d(x,z) >= max(d(x,y), d(y,z)) satisfies d(x,z) = d(x,y) + d(y,z);
    otherwise the lexicographically first violating triple by point index.
    """
    n = m.n
    d = m.dist
    for a in range(n):
        for b in range(n):
            if b == a:
                continue
            for c in range(n):
                if c == a or c == b:
                    continue
                if d[a][c] >= d[a][b] and d[a][c] >= d[b][c]:
                    if d[a][c] != d[a][b] + d[b][c]:
                        return (m.labels[a], m.labels[b], m.labels[c])
    return None


def line_embed(m: MetricSpace) -> dict[str, Fraction] | None:
    """Isometric embedding into the rational line, or None.

    Gauge: the first point sits at 0 and the second at its (positive)
    distance from the first.  Any remaining point's coordinate is one of
    +-d(p0, z); the distance to the second point picks the sign, and a full
    pairwise verification confirms the placement.  If an embedding exists
    at all, the gauge-fixed one is found, so None is a definite negative.
    """
    coords = [Fraction(0)] * m.n
    for k in range(1, m.n):
        if k == 1:
            coords[1] = m.dist[0][1]
            continue
        placed = False
        for cand in (m.dist[0][k], -m.dist[0][k]):
            if abs(cand - coords[1]) == m.dist[1][k]:
                coords[k] = cand
                placed = True
                break
        if not placed:
            return None
    for i in range(m.n):
        for j in range(i + 1, m.n):
            if abs(coords[i] - coords[j]) != m.dist[i][j]:
                return None
    return {lab: coords[i] for i, lab in enumerate(m.labels)}


# ---------------------------------------------------------------------------
# Pseudo-linear quadruples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PLQ:
    """A matched pseudo-linear quadruple ordering with s <= t."""

    ordering: tuple[str, str, str, str]
    s: Fraction
    t: Fraction

    @property
    def equilateral(self) -> bool:
        return self.s == self.t


def _require_four(labels: Iterable[str]) -> tuple[str, str, str, str]:
    labs = tuple(labels)
    if len(labs) != 4 or len(set(labs)) != 4:
        raise WrongArity(f"exactly 4 distinct labels required, got {labs}")
    return labs  # type: ignore[return-value]


# The three ways to pair four points into two opposite (diagonal) pairs,
# written as cyclic side orders over point indices 0..3.
_PAIRINGS = ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3))


def plq_classify(m: MetricSpace) -> PLQ | None:
    """Test a four-point space against the pseudo-linear pattern.

    The three essentially distinct pairings are tried in a fixed order;
    the first match is returned, rotated one step if needed so that
    s <= t.  None means no ordering fits the pattern.
    """
    if m.n != 4:
        raise WrongArity(f"pseudo-linear classification needs 4 points, got {m.n}")
    d = m.dist
    for a, b, c, e in _PAIRINGS:
        s = d[a][b]
        t = d[b][c]
        if d[c][e] != s or d[e][a] != t:
            continue
        if d[a][c] != s + t or d[b][e] != s + t:
            continue
        order = (a, b, c, e) if s <= t else (b, c, e, a)
        labs = tuple(m.labels[i] for i in order)
        return PLQ(labs, min(s, t), max(s, t))  # type: ignore[arg-type]
    return None


@dataclass(frozen=True)
class QuadInequality:
    lhs: Fraction
    bound: Fraction
    slack: Fraction


def quad_inequality(m: MetricSpace, ordering: Iterable[str]) -> QuadInequality:
    """Evaluate the diagonal-product bound for an ordered quadruple.

    lhs = d13*d24 - d12*d34 - d41*d23 and bound = p^2 / 8 where p is the
    cyclic perimeter.  The bound holds in every metric space, so a
    negative slack is promoted to an internal error.
    """
    x1, x2, x3, x4 = _require_four(ordering)
    d = m.d
    p = d(x1, x2) + d(x2, x3) + d(x3, x4) + d(x4, x1)
    lhs = d(x1, x3) * d(x2, x4) - d(x1, x2) * d(x3, x4) - d(x4, x1) * d(x2, x3)
    bound = p * p / 8
    slack = bound - lhs
    if slack < 0:
        raise InternalVerificationFailure(
            f"quadruple bound violated for {ordering}: lhs={lhs} > bound={bound}"
        )
    return QuadInequality(lhs=lhs, bound=bound, slack=slack)


# ---------------------------------------------------------------------------
# Conjecture checkers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjectureViolation:
    conjecture_id: str
    graph: Graph
    witness: tuple[str, ...]
    direction: str


def _shape_in_conjecture(g: Graph) -> bool:
    shape = classify_shape(g)
    return shape.is_path or (shape.is_cycle and shape.size == 4)


def check_conjecture_42(g: Graph) -> ConjectureViolation | None:
    """Compare betweenness-class membership with the path-or-C4 shape test.

    Consistent (None) when the two agree.  The infinite shapes (ray,
    double ray) cannot occur among finite inputs, so the shape side is
    just {path, C4}.
    """
    if not is_connected(g):
        raise Disconnected("conjecture check requires a connected graph")
    if g.edge_count() == 0:
        raise EmptyGraph("conjecture applies to graphs with at least one edge")
    mb_witness = mb_check(geodesic_metric(g))
    shape_ok = _shape_in_conjecture(g)
    if mb_witness is None and not shape_ok:
        return ConjectureViolation("C42", g, (), "mb_implies_shape")
    if mb_witness is not None and shape_ok:
        return ConjectureViolation("C42", g, mb_witness, "shape_implies_mb")
    return None


def four_subset_status(g: Graph, metric: MetricSpace, subset: tuple[str, ...]) -> tuple[bool, bool]:
    """(induced subgraph is a 4-cycle, distances form an equilateral
    pseudo-linear quadruple) for one 4-vertex subset."""
    shape = classify_shape(induced_subgraph(g, subset))
    holds_i = shape.is_cycle and shape.size == 4
    plq = plq_classify(metric.restrict(subset))
    holds_ii = plq is not None and plq.equilateral
    return holds_i, holds_ii


def check_conjecture_44(g: Graph) -> list[ConjectureViolation]:
    """All 4-vertex subsets where induced-4-cycle and equilateral
    pseudo-linear status disagree (empty list = consistent on g)."""
    if not is_connected(g):
        raise Disconnected("conjecture check requires a connected graph")
    if g.n < 4:
        raise TooSmall(f"need at least 4 vertices, got {g.n}")
    metric = geodesic_metric(g)
    out = []
    for subset in itertools.combinations(g.vertex_labels, 4):
        holds_i, holds_ii = four_subset_status(g, metric, subset)
        if holds_i != holds_ii:
            direction = "i_implies_ii" if holds_i else "ii_implies_i"
            out.append(ConjectureViolation("C44", g, subset, direction))
    return out


def replay_violation(v: ConjectureViolation) -> bool:
    """Re-run a recorded violation's witness through the relevant checker."""
    if v.conjecture_id == "C42":
        again = check_conjecture_42(v.graph)
        return again is not None and again.direction == v.direction and again.witness == v.witness
    if v.conjecture_id == "C44":
        holds_i, holds_ii = four_subset_status(v.graph, geodesic_metric(v.graph), v.witness)
        if holds_i == holds_ii:
            return False
        return v.direction == ("i_implies_ii" if holds_i else "ii_implies_i")
    return False


# ---------------------------------------------------------------------------
# Search harness
# ---------------------------------------------------------------------------

_CONJECTURES = {"C42": 3, "C44": 4}  # conjecture id -> smallest checkable n


@dataclass(frozen=True)
class ConjectureReport:
    conjecture_id: str
    max_n: int
    graphs_checked: int
    violations: tuple[ConjectureViolation, ...]

    def to_doc(self) -> dict:
        return {
            "conjecture": self.conjecture_id,
            "max_n": self.max_n,
            "graphs_checked": self.graphs_checked,
            "violations": [
                {
                    "graph": graph_doc(v.graph),
                    "witness": list(v.witness),
                    "direction": v.direction,
                }
                for v in self.violations
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, separators=(",", ": ")) + "\n"


def check_graph(conjecture_id: str, g: Graph) -> list[ConjectureViolation]:
    """Per-graph work item shared by the serial and parallel search paths."""
    if conjecture_id == "C42":
        v = check_conjecture_42(g)
        return [] if v is None else [v]
    if conjecture_id == "C44":
        return check_conjecture_44(g)
    raise ValueError(f"unknown conjecture id {conjecture_id!r}")


def search_graphs(conjecture_id: str, max_n: int, max_enum: int = HARD_CAP) -> Iterator[Graph]:
    """The deterministic graph stream a search walks: all connected
    isomorphism classes, smallest vertex count first."""
    if conjecture_id not in _CONJECTURES:
        raise ValueError(f"unknown conjecture id {conjecture_id!r}")
    start = _CONJECTURES[conjecture_id]
    if not 3 <= max_n <= min(max_enum, HARD_CAP):
        raise TooLarge(f"search needs 3 <= max_n <= {min(max_enum, HARD_CAP)}, got {max_n}")
    for n in range(start, max_n + 1):
        yield from enumerate_connected_graphs(n, max_enum)


def assemble_report(
    conjecture_id: str,
    max_n: int,
    per_graph: Iterable[list[ConjectureViolation]],
    max_violations: int,
) -> ConjectureReport:
    checked = 0
    kept: list[ConjectureViolation] = []
    for violations in per_graph:
        checked += 1
        for v in violations:
            if len(kept) < max_violations:
                kept.append(v)
    return ConjectureReport(conjecture_id, max_n, checked, tuple(kept))


def search(
    conjecture_id: str,
    max_n: int,
    max_violations: int = 100,
    max_enum: int = HARD_CAP,
) -> ConjectureReport:
    """Run a conjecture checker across every enumerated connected graph
    up to max_n vertices; deterministic for fixed inputs."""
    stream = search_graphs(conjecture_id, max_n, max_enum)
    return assemble_report(
        conjecture_id,
        max_n,
        (check_graph(conjecture_id, g) for g in stream),
        max_violations,
    )
