"""Classical invariants of plumbed 3-manifolds and the input registry.

Wu classes, the mu-bar invariant (signature minus Wu square over eight),
its mod-2 reduction, the stabilization-controlling invariant j(Gamma),
lens-space correction terms, and a sealed registry of externally
supplied scalar inputs.

Orientation convention used throughout (documented once, tested
everywhere): a chain of unknots with framings [a_0, ..., a_n] presents
the p/q-surgery on the unknot where p/q is the negative continued
fraction of the coefficients, and that surgery is the reversed lens
space -L(p, q).  Equivalently, the linear plumbing on [a_0, ..., a_n]
has boundary -L(p, q).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .contfrac import expand_even, format_slope, parse_slope
from .forms import SymForm, determinant, signature_profile, solve_mod2
from .plumbing import PlumbingGraph, linking_matrix


class DegenerateForm(ValueError):
    """Operation needs a nondegenerate linking form."""


class NotSpinGraph(ValueError):
    """Operation needs an all-even plumbing graph with odd determinant."""


class InvalidSpinSelector(ValueError):
    """No spin structure matches the selector."""


class UnknownInput(KeyError):
    """Registry lookup missed; externally supplied inputs are never defaulted."""


@dataclass(frozen=True)
class WuClass:
    """Characteristic vector with 0/1 coefficients in the vertex basis."""

    coefficients: tuple[int, ...]

    def square(self, form: SymForm) -> int:
        u = self.coefficients
        n = len(u)
        return sum(u[i] * form.entries[i][j] * u[j] for i in range(n) for j in range(n))


def wu_class(graph: PlumbingGraph):
    """Solve for 0/1 characteristic vectors of the linking form.

    Returns the unique :class:`WuClass` when the determinant is odd,
    otherwise the full tuple of solutions.
    """
    form = linking_matrix(graph)
    rhs = tuple(form.entries[i][i] % 2 for i in range(form.n))
    solutions = solve_mod2(form, rhs)
    classes = tuple(WuClass(s) for s in solutions)
    if len(classes) == 1:
        return classes[0]
    return classes


def _canonical_wu(graph: PlumbingGraph) -> WuClass:
    if graph.all_even():
        return WuClass(tuple(0 for _ in graph.labels))
    found = wu_class(graph)
    if isinstance(found, WuClass):
        return found
    raise DegenerateForm(
        "Wu class is not unique; supply one explicitly (even determinant, odd degrees)"
    )


def mu_bar(graph: PlumbingGraph, wu: WuClass | None = None) -> Fraction:
    """(signature - Wu square)/8 of the plumbing's linking form.

    For all-even graphs the Wu class is zero and this is signature/8.
    """
    form = linking_matrix(graph)
    if determinant(form) == 0:
        raise DegenerateForm("mu-bar needs a nondegenerate linking form")
    w = wu if wu is not None else _canonical_wu(graph)
    sigma = signature_profile(form).signature
    return Fraction(sigma - w.square(form), 8)


def rokhlin(graph: PlumbingGraph) -> Fraction:
    """mu-bar reduced mod 2, for spin plumbings (all degrees even, det odd)."""
    form = linking_matrix(graph)
    if not graph.all_even():
        raise NotSpinGraph("Rokhlin residue computed only on all-even graphs here")
    if graph.n and determinant(form) % 2 == 0:
        raise NotSpinGraph("odd determinant required for a unique spin structure")
    return mu_bar(graph) % 2 if graph.n else Fraction(0)


def _path_union_masks(graph: PlumbingGraph) -> list[int]:
    """Bitmasks of vertex subsets inducing disjoint unions of paths."""
    n = graph.n
    index = {v: i for i, v in enumerate(graph.labels)}
    adj = [0] * n
    for a, b in graph.edges:
        adj[index[a]] |= 1 << index[b]
        adj[index[b]] |= 1 << index[a]
    masks = []
    for mask in range(1 << n):
        ok = True
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            if (adj[i] & mask).bit_count() > 2:
                ok = False
                break
            m &= m - 1
        if ok:
            masks.append(mask)
    return masks


def j_gamma(graph: PlumbingGraph) -> int:
    """Minimal b_minus of the complement of an admissible union-of-paths subgraph.

    Uses the orthogonal splitting b_-(A) = b_-(inner) + b_-(complement)
    over admissible subsets, so only principal submatrices are reduced.
    Subsets too small to beat the incumbent are pruned.
    """
    form = linking_matrix(graph)
    if determinant(form) == 0:
        raise DegenerateForm("j invariant needs a nondegenerate linking form")
    full_minus = signature_profile(form).b_minus
    best_inner = 0  # empty subgraph
    masks = _path_union_masks(graph)
    masks.sort(key=lambda m: -m.bit_count())
    for mask in masks:
        size = mask.bit_count()
        if size <= best_inner:
            continue
        indices = tuple(i for i in range(graph.n) if mask >> i & 1)
        sub = form.submatrix(indices)
        if determinant(sub) == 0:
            continue
        profile = signature_profile(sub)
        if profile.b_minus > best_inner:
            best_inner = profile.b_minus
            if best_inner == full_minus:
                break
    return full_minus - best_inner


def spin_indices(p: int, q: int) -> tuple[int, ...]:
    """Conjugation-fixed spin-c labels of L(p, q): solutions of 2i = q-1 mod p."""
    sols = tuple(i for i in range(p) if (2 * i - (q - 1)) % p == 0)
    return sols


def _d_reversed(p: int, q: int, i: int, memo: dict) -> Fraction:
    """Correction term of -L(p, q) at label i, by the standard recursion."""
    if p == 1:
        return Fraction(0)
    key = (p, q, i)
    if key not in memo:
        memo[key] = Fraction((2 * i + 1 - p - q) ** 2 - p * q, 4 * p * q) - _d_reversed(
            q, p % q, i % q, memo
        )
    return memo[key]


def lens_d(p: int, q: int, selector: int | str = "spin") -> Fraction:
    """Correction term d of the lens space L(p, q).

    ``selector`` is either an integer spin-c label in [0, p) (labels
    follow the surgery-trace convention, with conjugation acting by
    i -> q - 1 - i mod p) or "spin" for the conjugation-fixed label,
    which is unique when p is odd.  For even p pass ("spin", 0) or
    ("spin", 1) to pick one of the two spin structures.
    """
    if p < 1:
        raise ValueError("p must be positive")
    q_mod = q % p if p > 1 else 0
    if p > 1 and math.gcd(p, q_mod) != 1:
        raise ValueError(f"q={q} is not coprime to p={p}")
    if p == 1:
        return Fraction(0)
    if selector == "spin" or (isinstance(selector, tuple) and selector[0] == "spin"):
        fixed = spin_indices(p, q_mod)
        if selector == "spin":
            if len(fixed) != 1:
                raise InvalidSpinSelector(
                    f"L({p},{q}) has {len(fixed)} spin structures; pick one explicitly"
                )
            index = fixed[0]
        else:
            which = selector[1]
            if which not in (0, 1) or which >= len(fixed):
                raise InvalidSpinSelector(f"bad spin selector {selector}")
            index = fixed[which]
    else:
        index = int(selector)
        if not 0 <= index < p:
            raise InvalidSpinSelector(f"spin-c label {index} outside [0,{p})")
    return -_d_reversed(p, q_mod, index, {})


def lens_delta(p: int, q: int, selector: int | str = "spin") -> Fraction:
    """Half the correction term of L(p, q)."""
    return lens_d(p, q, selector) / 2


def even_linear_plumbing(p: int, q: int) -> PlumbingGraph:
    """All-even linear plumbing with boundary -L(p, q), p odd.

    Uses the even representative of q mod p (which exists since p is
    odd) and the all-even expansion of p/q.
    """
    if p % 2 == 0:
        raise ValueError("even linear plumbing built here only for odd p")
    q_mod = q % p
    if math.gcd(p, q_mod) != 1:
        raise ValueError(f"q={q} is not coprime to p={p}")
    q_even = q_mod if q_mod % 2 == 0 else q_mod + p
    coeffs = expand_even(Fraction(p, q_even))
    return PlumbingGraph.chain(tuple(coeffs))


@dataclass
class InvariantRegistry:
    """Externally supplied rational inputs keyed by (invariant name, object key).

    Write-then-seal: mutation is forbidden after :meth:`seal`.  Lookup
    misses raise :class:`UnknownInput`; absence is never a default.
    Sources tag where a value came from ("paper", "user", "derived").
    """

    def __init__(self) -> None:
        self._data: dict[tuple[str, str], tuple[Fraction, str]] = {}
        self._sealed = False

    def set(self, name: str, key: str, value, source: str = "user") -> None:
        if self._sealed:
            raise ValueError("registry is sealed")
        if source not in ("paper", "user", "derived"):
            raise ValueError(f"bad source tag {source}")
        self._data[(name, key)] = (Fraction(value), source)

    def seal(self) -> "InvariantRegistry":
        self._sealed = True
        return self

    def has(self, name: str, key: str) -> bool:
        return (name, key) in self._data

    def get(self, name: str, key: str) -> Fraction:
        try:
            return self._data[(name, key)][0]
        except KeyError:
            raise UnknownInput(f"no registry entry for {name}[{key}]") from None

    def source(self, name: str, key: str) -> str:
        try:
            return self._data[(name, key)][1]
        except KeyError:
            raise UnknownInput(f"no registry entry for {name}[{key}]") from None

    def entries(self) -> list[tuple[str, str, Fraction, str]]:
        return sorted(
            (name, key, value, source)
            for (name, key), (value, source) in self._data.items()
        )

    def to_json(self) -> str:
        return json.dumps(
            [
                {
                    "invariant": name,
                    "key": key,
                    "value": format_slope(value),
                    "source": source,
                }
                for name, key, value, source in self.entries()
            ],
            indent=2,
        )

    @staticmethod
    def from_json(text: str) -> "InvariantRegistry":
        reg = InvariantRegistry()
        for record in json.loads(text):
            reg.set(
                record["invariant"],
                record["key"],
                parse_slope(record["value"]),
                record.get("source", "user"),
            )
        return reg


def registry_get(registry: InvariantRegistry, name: str, key: str) -> Fraction:
    """Lookup helper matching the registry's error contract."""
    return registry.get(name, key)
