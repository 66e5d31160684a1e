"""Plumbing graphs, their linking forms, and admissible subgraph splits.

A plumbing graph is a finite forest with an integer degree at each
vertex.  Its linking form has the degrees on the diagonal and a 1 for
every edge.  Disconnected graphs are allowed everywhere; the boundary
is then a disjoint union.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .forms import (
    QForm,
    SignatureProfile,
    SubspaceBasis,
    SymForm,
    determinant,
    orthogonal_complement,
    signature_profile,
)

Label = int | str


class NotAdmissible(ValueError):
    """Subset induces a degenerate linking form."""


@dataclass(frozen=True)
class PlumbingGraph:
    """Weighted forest; at most one edge between two vertices, no loops."""

    labels: tuple[Label, ...]
    degrees: tuple[int, ...]
    edges: tuple[tuple[Label, Label], ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(set(self.labels)):
            raise ValueError("duplicate vertex labels")
        if len(self.degrees) != len(self.labels):
            raise ValueError("degree list does not match vertex list")
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        index = {v: i for i, v in enumerate(self.labels)}
        seen = set()
        canonical = []
        parent = list(range(len(self.labels)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            if a not in index or b not in index:
                raise ValueError(f"edge ({a},{b}) references unknown vertex")
            if a == b:
                raise ValueError(f"self-loop at {a}")
            key = frozenset((a, b))
            if key in seen:
                raise ValueError(f"duplicate edge ({a},{b})")
            seen.add(key)
            ra, rb = find(index[a]), find(index[b])
            if ra == rb:
                raise ValueError("graph contains a cycle; plumbing graphs are forests")
            parent[ra] = rb
            canonical.append((a, b))
        object.__setattr__(self, "edges", tuple(canonical))

    @staticmethod
    def build(
        vertices: dict[Label, int] | list[tuple[Label, int]],
        edges: list[tuple[Label, Label]] = (),
    ) -> "PlumbingGraph":
        items = list(vertices.items()) if isinstance(vertices, dict) else list(vertices)
        return PlumbingGraph(
            tuple(v for v, _ in items),
            tuple(d for _, d in items),
            tuple((a, b) for a, b in edges),
        )

    @staticmethod
    def chain(degrees: list[int] | tuple[int, ...]) -> "PlumbingGraph":
        n = len(degrees)
        return PlumbingGraph(
            tuple(range(n)),
            tuple(degrees),
            tuple((i, i + 1) for i in range(n - 1)),
        )

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: Label) -> int:
        return self.labels.index(label)

    def degree_of(self, label: Label) -> int:
        return self.degrees[self.index(label)]

    def neighbors(self, label: Label) -> tuple[Label, ...]:
        out = []
        for a, b in self.edges:
            if a == label:
                out.append(b)
            elif b == label:
                out.append(a)
        return tuple(out)

    def valence(self, label: Label) -> int:
        return len(self.neighbors(label))

    def components(self) -> tuple[tuple[Label, ...], ...]:
        remaining = set(self.labels)
        comps = []
        while remaining:
            stack = [next(iter(remaining))]
            comp = set()
            while stack:
                v = stack.pop()
                if v in comp:
                    continue
                comp.add(v)
                stack.extend(w for w in self.neighbors(v) if w not in comp)
            remaining -= comp
            comps.append(tuple(v for v in self.labels if v in comp))
        return tuple(comps)

    def induced(self, subset: tuple[Label, ...]) -> "PlumbingGraph":
        chosen = [v for v in self.labels if v in set(subset)]
        degs = [self.degree_of(v) for v in chosen]
        keep = set(chosen)
        edges = [(a, b) for a, b in self.edges if a in keep and b in keep]
        return PlumbingGraph(tuple(chosen), tuple(degs), tuple(edges))

    def disjoint_union(self, other: "PlumbingGraph") -> "PlumbingGraph":
        relabel = {v: ("b", v) for v in other.labels}
        labels = tuple(self.labels) + tuple(relabel[v] for v in other.labels)
        degs = self.degrees + other.degrees
        edges = tuple(self.edges) + tuple(
            (relabel[a], relabel[b]) for a, b in other.edges
        )
        return PlumbingGraph(labels, degs, edges)

    def all_even(self) -> bool:
        return all(d % 2 == 0 for d in self.degrees)

    def to_json(self) -> str:
        return json.dumps(
            {
                "vertices": [
                    {"id": v, "degree": d} for v, d in zip(self.labels, self.degrees)
                ],
                "edges": [[a, b] for a, b in self.edges],
            }
        )

    @staticmethod
    def from_json(text: str) -> "PlumbingGraph":
        data = json.loads(text)
        labels = tuple(v["id"] for v in data["vertices"])
        degs = tuple(int(v["degree"]) for v in data["vertices"])
        edges = tuple((a, b) for a, b in data["edges"])
        return PlumbingGraph(labels, degs, edges)


def linking_matrix(graph: PlumbingGraph) -> SymForm:
    """Gram matrix: degrees on the diagonal, 1 for every edge, in stored order."""
    n = graph.n
    index = {v: i for i, v in enumerate(graph.labels)}
    rows = [[0] * n for _ in range(n)]
    for i, d in enumerate(graph.degrees):
        rows[i][i] = d
    for a, b in graph.edges:
        i, j = index[a], index[b]
        rows[i][j] = rows[j][i] = 1
    return SymForm(tuple(tuple(row) for row in rows))


def is_admissible(graph: PlumbingGraph, subset: tuple[Label, ...]) -> bool:
    """True iff the induced subgraph has nondegenerate linking form.

    The empty subset is admissible (rank-0 determinant is 1).
    """
    unknown = set(subset) - set(graph.labels)
    if unknown:
        raise ValueError(f"subset contains unknown vertices {sorted(map(str, unknown))}")
    return determinant(linking_matrix(graph.induced(subset))) != 0


def cobordism_split(
    graph: PlumbingGraph, subset: tuple[Label, ...]
) -> tuple[SymForm, SignatureProfile, QForm]:
    """Split the linking form along an admissible vertex subset.

    Returns the inner form (of the induced subgraph), and the signature
    profile and Gram matrix of the orthogonal complement of the
    coordinate subspace spanned by the subset.
    """
    if not is_admissible(graph, subset):
        raise NotAdmissible("induced subgraph has degenerate linking form")
    full = linking_matrix(graph)
    chosen = tuple(i for i, v in enumerate(graph.labels) if v in set(subset))
    inner = full.submatrix(chosen)
    if not chosen:
        complement_form = QForm(
            tuple(tuple(Fraction(x) for x in row) for row in full.entries)
        )
        return inner, signature_profile(complement_form), complement_form
    basis = SubspaceBasis.coordinate(graph.n, chosen)
    _, complement_form = orthogonal_complement(full, basis)
    return inner, signature_profile(complement_form), complement_form


@dataclass(frozen=True)
class CobordismData:
    """Numerical data of an equivariant cobordism with controlled positive part.

    The invariant/anti-invariant split refers to the involution acting
    on a maximal positive definite subspace of the second cohomology.
    """

    sigma_w: int
    b_plus_w: int
    b_plus_inv: int
    b_plus_anti: int
    c_squared: Fraction = field(default_factory=lambda: Fraction(0))
    spin: bool = False
    outgoing: str | None = None
    incoming: str | None = None
    negdef_invariant_part: bool = False
    negdef_antiinvariant_part: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "c_squared", Fraction(self.c_squared))
        if self.b_plus_inv + self.b_plus_anti != self.b_plus_w:
            raise ValueError("invariant/anti-invariant split must sum to b_plus")
        if self.spin and self.c_squared != 0:
            raise ValueError("spin cobordism must have vanishing characteristic square")

    @property
    def correction(self) -> Fraction:
        """The cobordism correction term (c^2 - signature)/8."""
        return (self.c_squared - self.sigma_w) / 8
