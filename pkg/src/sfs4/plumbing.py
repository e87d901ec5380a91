"""Canonical star-shaped plumbing graphs and their intersection forms.

A standard-form space bounds the 4-manifold plumbed on a star: a central
vertex of weight e joined to one linear arm per fiber, the arm for p_i/q_i
carrying the negative continued fraction weights of p_i/q_i root-to-leaf.
The intersection form is the weighted adjacency matrix (weights on the
diagonal, -1 on edges); it is positive definite exactly when eps > 0 and is
independent of the base genus.

Vertex numbering is part of the public contract: vertex 0 is central, then
arms in fiber order, each root-to-leaf.  Lattice and spin certificates refer
to this numbering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .intmat import determinant, leading_principal_minors
from .rationals import neg_cfrac_eval, neg_cfrac_expand
from .seifert import StandardForm


@dataclass(frozen=True)
class PlumbingGraph:
    central_weight: int
    arms: tuple[tuple[int, ...], ...]
    genus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "arms", tuple(tuple(a) for a in self.arms))
        if any(not arm or min(arm) < 2 for arm in self.arms):
            raise ValueError("every arm must be a nonempty chain of weights >= 2")

    @property
    def size(self) -> int:
        return 1 + sum(len(a) for a in self.arms)

    @property
    def arm_starts(self) -> tuple[int, ...]:
        """Vertex index of each arm's first (root) vertex."""
        starts = []
        pos = 1
        for arm in self.arms:
            starts.append(pos)
            pos += len(arm)
        return tuple(starts)

    def vertex_weights(self) -> tuple[int, ...]:
        ws = [self.central_weight]
        for arm in self.arms:
            ws.extend(arm)
        return tuple(ws)

    def edges(self) -> tuple[tuple[int, int], ...]:
        out = []
        for start, arm in zip(self.arm_starts, self.arms):
            out.append((0, start))
            out.extend((start + i, start + i + 1) for i in range(len(arm) - 1))
        return tuple(out)

    def arm_fractions(self) -> tuple[Fraction, ...]:
        return tuple(neg_cfrac_eval(arm) for arm in self.arms)

    def to_text(self) -> str:
        lines = [f"vertex {i} {w}" for i, w in enumerate(self.vertex_weights())]
        lines.extend(f"edge {u} {v}" for u, v in self.edges())
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "central_weight": self.central_weight,
                "arms": [list(a) for a in self.arms],
                "genus": self.genus,
                "vertex_weights": list(self.vertex_weights()),
                "edges": [list(e) for e in self.edges()],
            }
        )


@dataclass(frozen=True)
class IntersectionForm:
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        if any(len(row) != n for row in m):
            raise ValueError("intersection form must be square")
        if any(m[i][j] != m[j][i] for i in range(n) for j in range(i)):
            raise ValueError("intersection form must be symmetric")

    @property
    def size(self) -> int:
        return len(self.matrix)

    def pairing(self, x, y) -> int:
        m = self.matrix
        return sum(xi * sum(mij * yj for mij, yj in zip(row, y)) for xi, row in zip(x, m))

    def norm(self, x) -> int:
        return self.pairing(x, x)

    def det(self) -> int:
        return determinant([list(r) for r in self.matrix])


def build_plumbing(s: StandardForm) -> PlumbingGraph:
    """Plumbing graph of a standard form: arm i expands fiber i."""
    return PlumbingGraph(
        s.central,
        tuple(neg_cfrac_expand(r) for r in s.fibers),
        s.genus,
    )


def intersection_form(graph: PlumbingGraph) -> IntersectionForm:
    n = graph.size
    m = [[0] * n for _ in range(n)]
    for i, w in enumerate(graph.vertex_weights()):
        m[i][i] = w
    for u, v in graph.edges():
        m[u][v] = m[v][u] = -1
    return IntersectionForm(tuple(tuple(row) for row in m))


def is_positive_definite(q: IntersectionForm) -> bool:
    """Exact Sylvester criterion: all leading principal minors positive."""
    return all(d > 0 for d in leading_principal_minors([list(r) for r in q.matrix]))
