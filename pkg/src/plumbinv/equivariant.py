"""Involution structures on plumbings and framed links.

Covers the compatibility classification of spin-c structures with an
involution (equivariant / Real / odd-spin), the mod-2 weight assignment
that recognises when an even plumbing carries the order-two circle
involution, the integer weight recursion along a chain of equivariant
disc bundles, and equivariant surgery chains with even framings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .contfrac import INFINITY, Infinity, NcfExpansion, eval_ncf, expand_even
from .forms import SymForm
from .plumbing import PlumbingGraph


class OddDegree(ValueError):
    """Mod-2 weight assignment requires all degrees even."""


class NotZ2Plumbable(ValueError):
    """No valid mod-2 weight assignment exists for the graph."""


class ParityViolation(ValueError):
    """Surgery chain requires an odd/even slope."""


@dataclass(frozen=True)
class InvolutionKind:
    """How an involution interacts with second cohomology and spin data.

    ``h2_action`` is the sign of the action on the second cohomology of
    the natural equivariant filling (+1 for involutions inside the
    circle action, -1 for conjugation-type and covering involutions).
    """

    variant: str
    h2_action: int
    has_nonisolated_fixed_points: bool
    odd_spin: bool

    @staticmethod
    def conjugation() -> "InvolutionKind":
        return InvolutionKind("conjugation", -1, True, True)

    @staticmethod
    def plumbing_m() -> "InvolutionKind":
        return InvolutionKind("plumbing_m", +1, True, True)

    @staticmethod
    def seifert_m() -> "InvolutionKind":
        return InvolutionKind("seifert_m", +1, True, True)

    @staticmethod
    def seifert_c() -> "InvolutionKind":
        return InvolutionKind("seifert_c", -1, True, True)

    @staticmethod
    def covering() -> "InvolutionKind":
        return InvolutionKind("covering", -1, True, True)

    @staticmethod
    def custom(
        h2_action: int, has_nonisolated_fixed_points: bool, odd_spin: bool
    ) -> "InvolutionKind":
        if h2_action not in (1, -1):
            raise ValueError("h2_action must be +1 or -1")
        return InvolutionKind("custom", h2_action, has_nonisolated_fixed_points, odd_spin)


def classify_spinc_types(
    kind: InvolutionKind,
    spin: bool,
    char_fixed: bool,
    char_negated: bool,
) -> frozenset[str]:
    """Subset of {"E", "R", "S"} available to a spin-c structure.

    ``char_fixed``/``char_negated`` describe the given characteristic
    element; an h2 action of +1 fixes every characteristic and -1
    negates every characteristic, on top of whatever the caller knows
    (the zero characteristic is both).
    """
    fixed = char_fixed or kind.h2_action == 1
    negated = char_negated or kind.h2_action == -1
    types = set()
    if fixed:
        types.add("E")
    if negated and kind.has_nonisolated_fixed_points:
        types.add("R")
    if spin and kind.odd_spin and fixed:
        types.add("S")
    return frozenset(types)


@dataclass
class Z2WeightAssignment:
    """Per-vertex mod-2 (base, fibre) weights of an order-two plumbing action."""

    weights: dict

    def __getitem__(self, label):
        return self.weights[label]


def validate_weights(graph: PlumbingGraph, assignment: Z2WeightAssignment) -> None:
    """Check the weight constraints independently of how they were found.

    Every vertex needs (m, w) != (0, 0); across an edge into a vertex of
    degree d the pair transforms by ((0,1),(1,d)) mod 2; and a vertex
    acting nontrivially on its base (m = 1) has at most two edges.
    """
    for v in graph.labels:
        m, w = assignment[v]
        if (m % 2, w % 2) == (0, 0):
            raise NotZ2Plumbable(f"vertex {v} has trivial weight pair")
    for a, b in graph.edges:
        ma, wa = assignment[a]
        mb, wb = assignment[b]
        d = graph.degree_of(b)
        if (mb % 2, wb % 2) != (wa % 2, (ma + d * wa) % 2):
            raise NotZ2Plumbable(f"edge ({a},{b}) violates the weight relation")
        d = graph.degree_of(a)
        if (ma % 2, wa % 2) != (wb % 2, (mb + d * wb) % 2):
            raise NotZ2Plumbable(f"edge ({b},{a}) violates the weight relation")
    for v in graph.labels:
        m, _ = assignment[v]
        if m % 2 == 1 and graph.valence(v) > 2:
            raise NotZ2Plumbable(
                f"vertex {v} acts nontrivially on its base but has more than two edges"
            )


def assign_z2_weights(graph: PlumbingGraph) -> Z2WeightAssignment:
    """Find a valid mod-2 weight assignment on an all-even plumbing graph.

    Per component, prefer the alternating assignment (trivial-base
    vertices (0,1) against base-rotating vertices (1,0), the latter of
    valence at most two); fall back to the constant (1,1) assignment,
    which is valid exactly on linear components.
    """
    if not graph.all_even():
        raise OddDegree("mod-2 weights are only assigned on all-even plumbings")
    weights: dict = {}
    for comp in graph.components():
        placed = None
        for root_color in (0, 1):
            coloring = _two_coloring(graph, comp, root_color)
            if all(
                coloring[v] == 0 or graph.valence(v) <= 2 for v in comp
            ):
                placed = {
                    v: ((0, 1) if coloring[v] == 0 else (1, 0)) for v in comp
                }
                break
        if placed is None and all(graph.valence(v) <= 2 for v in comp):
            placed = {v: (1, 1) for v in comp}
        if placed is None:
            raise NotZ2Plumbable(
                "every two-coloring puts a vertex of valence > 2 on the rotating side"
            )
        weights.update(placed)
    assignment = Z2WeightAssignment(weights)
    validate_weights(graph, assignment)
    return assignment


def _two_coloring(graph: PlumbingGraph, comp: tuple, root_color: int) -> dict:
    color = {comp[0]: root_color}
    stack = [comp[0]]
    while stack:
        v = stack.pop()
        for w in graph.neighbors(v):
            if w not in color:
                color[w] = 1 - color[v]
                stack.append(w)
    return color


@dataclass(frozen=True)
class S1ChainResult:
    """Weights along a chain of circle-equivariant disc bundles."""

    weights: tuple[tuple[int, int], ...]
    ratio: Fraction | Infinity | None
    trivial_base_positions: tuple[int, ...]


def s1_weight_chain(
    degrees: list[int] | tuple[int, ...], seed: tuple[int, int] = (0, 1)
) -> S1ChainResult:
    """Iterate (m, w) -> (-w, m - d*w) along a chain of degrees.

    Returns the weight at every step starting with the seed.  Zero base
    weights are legal and flagged; they mark vertices where the circle
    acts trivially on the base.  For the standard seed (0, 1) the final
    ratio w_n/m_n equals the negative continued fraction of the reversed
    degree sequence, which is asserted.
    """
    m, w = int(seed[0]), int(seed[1])
    weights = [(m, w)]
    zeros = []
    for pos, d in enumerate(degrees, start=1):
        m, w = -w, m - int(d) * w
        weights.append((m, w))
        if m == 0:
            zeros.append(pos)
    if m == 0:
        ratio: Fraction | Infinity | None = INFINITY if w != 0 else None
    else:
        ratio = Fraction(w, m)
    if tuple(seed) == (0, 1) and degrees:
        expected = eval_ncf(NcfExpansion(tuple(reversed([int(d) for d in degrees]))))
        if not zeros:
            assert ratio == expected, "weight recursion disagrees with the chain fraction"
    return S1ChainResult(tuple(weights), ratio, tuple(zeros))


@dataclass(frozen=True)
class FramedLink:
    """Linking data of a framed link with an involutive symmetry.

    The matrix holds linking numbers off the diagonal (integers) and
    framings on the diagonal (rational framings allowed).  Symmetry is
    recorded per component: "strongly_invertible", "two_periodic", or
    ("swapped", j) for components exchanged with component j.
    """

    linking: tuple[tuple[Fraction, ...], ...]
    symmetry: tuple

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.linking)
        object.__setattr__(self, "linking", rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("linking matrix must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("linking matrix must be symmetric")
                if i != j and rows[i][j].denominator != 1:
                    raise ValueError("off-diagonal linking numbers must be integers")
        if len(self.symmetry) != n:
            raise ValueError("one symmetry tag per component required")
        for i, tag in enumerate(self.symmetry):
            if isinstance(tag, tuple):
                kind, j = tag
                if kind != "swapped" or not isinstance(j, int):
                    raise ValueError(f"bad symmetry tag {tag}")
                if self.symmetry[j] != ("swapped", i):
                    raise ValueError("swapped components must be matched in pairs")
                if rows[i][i] != rows[j][j]:
                    raise ValueError("swapped components must share a framing")
            elif tag not in ("strongly_invertible", "two_periodic"):
                raise ValueError(f"bad symmetry tag {tag}")

    @property
    def components(self) -> int:
        return len(self.linking)

    @property
    def framings(self) -> tuple[Fraction, ...]:
        return tuple(self.linking[i][i] for i in range(self.components))

    def is_even(self) -> bool:
        return all(f.denominator == 1 and f.numerator % 2 == 0 for f in self.framings)

    def linking_form(self) -> SymForm:
        if any(f.denominator != 1 for f in self.framings):
            raise ValueError("integral framings required for the linking form")
        return SymForm(
            tuple(tuple(int(x) for x in row) for row in self.linking)
        )


def surgery_chain(slope: Fraction) -> FramedLink:
    """Equivariant chain presentation of the p/q surgery on a strong inversion.

    Requires p odd and q even (and nonzero): the all-even expansion
    [a_0, ..., a_n] of p/q gives a chain of unknots with consecutive
    linking number one, all strongly invertible, whose linking matrix is
    the tridiagonal matrix with the a_i on the diagonal.
    """
    slope = Fraction(slope)
    if slope.numerator % 2 == 0 or slope.denominator % 2 == 1:
        raise ParityViolation(
            f"slope {slope} is not odd/even; the even chain presentation needs p odd, q even"
        )
    coeffs = expand_even(slope)
    n = len(coeffs)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, a in enumerate(coeffs):
        rows[i][i] = Fraction(a)
        if i + 1 < n:
            rows[i][i + 1] = Fraction(1)
            rows[i + 1][i] = Fraction(1)
    return FramedLink(
        tuple(tuple(row) for row in rows),
        tuple("strongly_invertible" for _ in range(n)),
    )
