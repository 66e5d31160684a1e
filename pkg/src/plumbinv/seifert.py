"""Seifert data, normalization moves, Brieskorn constructors, star plumbings.

A Seifert rational homology sphere Y(b; (a_1,b_1), ..., (a_n,b_n)) is
the boundary of the star-shaped plumbing with central degree b and one
arm per pair, the arm being the negative-continued-fraction chain of
a_i/b_i attached to the center at its leading coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .contfrac import BothOdd, NcfExpansion, expand_even, expand_standard
from .plumbing import PlumbingGraph


class IndexOutOfRange(ValueError):
    """Normalization move addressed a missing fiber pair."""


class NotCoprime(ValueError):
    """Brieskorn exponents must be pairwise coprime."""


class ZeroEuler(ValueError):
    """Star plumbing requires nonzero Euler number."""


class NoEvenExponent(ValueError):
    """Even star plumbing impossible: all multiplicities odd and parity irreparable."""


@dataclass(frozen=True)
class SeifertData:
    """Seifert invariants (b; (a_1,b_1), ..., (a_n,b_n)), each pair coprime."""

    b: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple((int(a), int(c)) for a, c in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "b", int(self.b))
        for a, c in pairs:
            if a < 1:
                raise ValueError(f"fiber multiplicity {a} must be positive")
            if c == 0:
                raise ValueError("fiber coefficient must be nonzero")
            if math.gcd(a, c) != 1:
                raise ValueError(f"pair ({a},{c}) is not coprime")

    def key(self) -> str:
        inner = ",".join(f"{a}/{c}" for a, c in self.pairs)
        return f"Y({self.b};{inner})"


@dataclass(frozen=True)
class BrieskornData:
    """Pairwise-coprime positive exponents of a Brieskorn homology sphere."""

    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        exps = tuple(int(a) for a in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if any(a < 1 for a in exps):
            raise NotCoprime("exponents must be positive")
        for i in range(len(exps)):
            for j in range(i + 1, len(exps)):
                if math.gcd(exps[i], exps[j]) != 1:
                    raise NotCoprime(
                        f"exponents {exps[i]} and {exps[j]} are not coprime"
                    )

    def key(self) -> str:
        return "Sigma(" + ",".join(str(a) for a in self.exponents) + ")"


def euler_number(data: SeifertData) -> Fraction:
    return Fraction(data.b) - sum(
        (Fraction(c, a) for a, c in data.pairs), Fraction(0)
    )


def normalize(data: SeifertData, moves: list[tuple[int, int]]) -> SeifertData:
    """Apply moves (i, k): b += k and b_i += k*a_i (1-based fiber index).

    Each move preserves the Euler number, hence the manifold.
    """
    b = data.b
    pairs = [list(p) for p in data.pairs]
    for i, k in moves:
        if not 1 <= i <= len(pairs):
            raise IndexOutOfRange(f"no fiber pair with index {i}")
        b += k
        pairs[i - 1][1] += k * pairs[i - 1][0]
    return SeifertData(b, tuple((a, c) for a, c in pairs))


def _solve_cofactor_combination(exponents: tuple[int, ...]) -> list[int]:
    """Integers b_i with sum b_i * (A / a_i) == 1, A the product of exponents."""
    product = math.prod(exponents)
    cofactors = [product // a for a in exponents]
    g = cofactors[0]
    coeffs = [1]
    for c in cofactors[1:]:
        g, x, y = _extended_gcd(g, c)
        coeffs = [k * x for k in coeffs] + [y]
    assert g == 1, "cofactors of pairwise coprime exponents are jointly coprime"
    return coeffs


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def brieskorn_seifert(data: BrieskornData, parity_normal: bool = False) -> SeifertData:
    """Seifert data of the Brieskorn sphere with Euler number -1/(a_1...a_n).

    Default form: drop multiplicity-1 fibers and reduce so that
    0 < b_i < a_i for every pair.  With ``parity_normal`` and all
    exponents odd, return instead the all-odd normal form: an odd
    number of fibers (padding with multiplicity 1 as needed), every b_i
    odd, b_i > 0 for i > 1, b_1 < 0 and central coefficient 0.
    """
    exponents = data.exponents
    all_odd = all(a % 2 == 1 for a in exponents)
    if parity_normal and all_odd:
        return _parity_normal_form(exponents)

    big = [a for a in exponents if a > 1]
    if not big:
        return SeifertData(-1, ())  # e = -1 presents S^3
    product = math.prod(big)
    solution = _solve_cofactor_combination(tuple(big))
    pairs = []
    carried = Fraction(0)
    for a, c in zip(big, solution):
        r = c % a
        assert r != 0, "pairwise coprimality makes every residue invertible"
        pairs.append((a, r))
        carried += Fraction(r, a)
    b = carried - Fraction(1, product)
    assert b.denominator == 1
    return SeifertData(int(b), tuple(pairs))


def _parity_normal_form(exponents: tuple[int, ...]) -> SeifertData:
    exps = list(exponents)
    if len(exps) % 2 == 0:
        exps.append(1)
    coeffs = _solve_cofactor_combination(tuple(exps))
    # An odd number of the coefficients is odd; flip even ones pairwise.
    evens = [i for i, c in enumerate(coeffs) if c % 2 == 0]
    assert len(evens) % 2 == 0
    for i, j in zip(evens[0::2], evens[1::2]):
        coeffs[i] += exps[i]
        coeffs[j] -= exps[j]
    # Make every coefficient after the first positive, compensating on
    # the first; steps of 2*a_i preserve all parities.
    for i in range(1, len(exps)):
        while coeffs[i] < 0:
            coeffs[i] += 2 * exps[i]
            coeffs[0] -= 2 * exps[0]
    total = sum(Fraction(c, a) for c, a in zip(coeffs, exps))
    assert total == Fraction(1, math.prod(exps))
    assert coeffs[0] < 0 and all(c % 2 == 1 for c in coeffs)
    return SeifertData(0, tuple((a, c) for a, c in zip(exps, coeffs)))


def _even_ready(data: SeifertData) -> SeifertData:
    """Apply the parity repairs so every arm slope admits an even expansion."""
    b = data.b
    pairs = [list(p) for p in data.pairs]
    for p in pairs:
        if p[0] % 2 == 1 and p[1] % 2 == 1:
            p[1] += p[0]
            b += 1
    if b % 2 == 1:
        target = next((p for p in pairs if p[0] % 2 == 0), None)
        if target is None:
            raise NoEvenExponent(
                "all multiplicities odd: the central degree parity cannot be repaired"
            )
        target[1] += target[0]
        b += 1
    return SeifertData(b, tuple((a, c) for a, c in pairs))


def _star_graph(b: int, arms: list[NcfExpansion]) -> PlumbingGraph:
    labels: list = [0]
    degrees = [b]
    edges = []
    nxt = 1
    for arm in arms:
        prev = 0
        for coeff in arm:
            labels.append(nxt)
            degrees.append(coeff)
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return PlumbingGraph(tuple(labels), tuple(degrees), tuple(edges))


def to_star_plumbing(data: SeifertData, even: bool = False) -> PlumbingGraph:
    """Star-shaped plumbing with boundary Y(b; pairs); vertex 0 is the center.

    Arm i is the continued-fraction chain of a_i/b_i, attached to the
    center at its leading coefficient.  In even mode the parity repairs
    are applied first and every arm uses the all-even expansion, so all
    degrees of the result are even.
    """
    if euler_number(data) == 0:
        raise ZeroEuler("Seifert data has Euler number 0")
    if even:
        data = _even_ready(data)
        arms = [expand_even(Fraction(a, c)) for a, c in data.pairs]
    else:
        arms = [expand_standard(Fraction(a, c)) for a, c in data.pairs]
    return _star_graph(data.b, arms)


def minimal_even_star(data: SeifertData, width: int = 8) -> PlumbingGraph:
    """Smallest all-even star plumbing of Y(b; pairs) found by a bounded search.

    Searches normalization moves b_i -> b_i + k*a_i (|k| <= width, with
    the central degree compensating) for the assignment minimizing the
    total vertex count, subject to every arm slope having an even
    expansion and the center staying even.  Deterministic.
    """
    if euler_number(data) == 0:
        raise ZeroEuler("Seifert data has Euler number 0")
    baseline = to_star_plumbing(data, even=True)

    per_arm: list[list[tuple[int, int, NcfExpansion]]] = []
    for a, c in data.pairs:
        options = []
        for k in range(-width, width + 1):
            shifted = c + k * a
            if shifted == 0 or (a % 2 == 1 and shifted % 2 == 1):
                continue
            try:
                arm = expand_even(Fraction(a, shifted))
            except BothOdd:
                continue
            options.append((len(arm), k, arm))
        options.sort(key=lambda t: (t[0], t[1]))
        if not options:
            return baseline
        per_arm.append(options)

    # Minimize total arm length subject to b + sum(k) being even.
    states: dict[int, tuple[int, tuple[int, ...]]] = {data.b % 2: (0, ())}
    arms_by_choice: dict[tuple[int, ...], list[NcfExpansion]] = {(): []}
    for options in per_arm:
        new_states: dict[int, tuple[int, tuple[int, ...]]] = {}
        new_arms: dict[tuple[int, ...], list[NcfExpansion]] = {}
        for parity, (total, ks) in states.items():
            for length, k, arm in options:
                p = (parity + k) % 2
                cand = (total + length, ks + (k,))
                if p not in new_states or cand < new_states[p]:
                    new_states[p] = cand
                    new_arms[cand[1]] = arms_by_choice[ks] + [arm]
        states = new_states
        arms_by_choice = new_arms
    if 0 not in states:
        return baseline
    total, ks = states[0]
    if 1 + total >= baseline.n:
        return baseline
    center = data.b + sum(ks)
    return _star_graph(center, arms_by_choice[ks])


def star_boundary_determinant(data: SeifertData) -> int:
    """|det| of any star plumbing of the data: |e| times the multiplicity product."""
    value = euler_number(data) * math.prod(a for a, _ in data.pairs)
    assert value.denominator == 1
    return abs(int(value))
