"""Exact linear algebra for symmetric bilinear forms over Z and Q.

Everything is computed with integers and ``fractions.Fraction``; there
is no floating point anywhere in this module.  Signatures come from
congruence diagonalization (with a fast minor-sign path for tridiagonal
chains), determinants from the fraction-free Bareiss algorithm, and the
characteristic-vector maximum from a bounded branch-and-bound over a
definite form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class DegenerateRestriction(ValueError):
    """The form restricted to the given subspace is degenerate."""


class NotDefinite(ValueError):
    """Operation requires a negative definite form."""


class RankTooLarge(ValueError):
    """Search-based operation called above its configured rank bound."""


@dataclass(frozen=True)
class SymForm:
    """Symmetric bilinear form given by an integer Gram matrix (rank 0 allowed)."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i},{j})")

    @property
    def n(self) -> int:
        return len(self.entries)

    @staticmethod
    def diagonal(*values: int) -> "SymForm":
        n = len(values)
        return SymForm(
            tuple(
                tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)
            )
        )

    def direct_sum(self, other: "SymForm") -> "SymForm":
        n, m = self.n, other.n
        rows = [[0] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                rows[i][j] = self.entries[i][j]
        for i in range(m):
            for j in range(m):
                rows[n + i][n + j] = other.entries[i][j]
        return SymForm(tuple(tuple(row) for row in rows))

    def submatrix(self, indices: tuple[int, ...]) -> "SymForm":
        return SymForm(
            tuple(tuple(self.entries[i][j] for j in indices) for i in indices)
        )

    def rational_rows(self) -> list[list[Fraction]]:
        return [[Fraction(x) for x in row] for row in self.entries]


@dataclass(frozen=True)
class QForm:
    """Symmetric bilinear form with rational Gram matrix."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i},{j})")

    @property
    def n(self) -> int:
        return len(self.entries)

    def rational_rows(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class SignatureProfile:
    b_plus: int
    b_minus: int
    b_zero: int

    @property
    def signature(self) -> int:
        return self.b_plus - self.b_minus

    @property
    def rank(self) -> int:
        return self.b_plus + self.b_minus + self.b_zero


@dataclass(frozen=True)
class SubspaceBasis:
    """Linearly independent rational row vectors inside Q^ambient."""

    ambient: int
    vectors: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        vecs = tuple(tuple(Fraction(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        for v in vecs:
            if len(v) != self.ambient:
                raise ValueError("basis vector of wrong length")
        if _rank([list(v) for v in vecs]) != len(vecs):
            raise ValueError("basis vectors are linearly dependent")

    @staticmethod
    def coordinate(ambient: int, indices: tuple[int, ...]) -> "SubspaceBasis":
        vecs = tuple(
            tuple(Fraction(1 if k == i else 0) for k in range(ambient))
            for i in indices
        )
        return SubspaceBasis(ambient, vecs)

    @property
    def dim(self) -> int:
        return len(self.vectors)


def _rank(rows: list[list[Fraction]]) -> int:
    m = [row[:] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _is_tridiagonal(rows: list[list[Fraction]]) -> bool:
    n = len(rows)
    return all(
        rows[i][j] == 0 for i in range(n) for j in range(n) if abs(i - j) > 1
    )


def _tridiagonal_profile(rows: list[list[Fraction]]) -> SignatureProfile | None:
    """Minor-sign count for a nondegenerate tridiagonal block.

    Returns None when a zero determinant (or a zero coupling splitting
    the chain into a degenerate block) forces the general path.
    Consecutive zero principal minors cannot occur once the couplings
    are nonzero, and an isolated zero minor sits between minors of
    opposite signs, contributing one sign change.
    """
    n = len(rows)
    # Split at vanishing couplings into independent chains.
    blocks: list[tuple[int, int]] = []
    start = 0
    for i in range(n - 1):
        if rows[i][i + 1] == 0:
            blocks.append((start, i + 1))
            start = i + 1
    blocks.append((start, n))

    b_plus = b_minus = 0
    for lo, hi in blocks:
        minors = [Fraction(1)]
        for k in range(lo, hi):
            d = rows[k][k] * minors[-1]
            if k > lo:
                d -= rows[k][k - 1] ** 2 * minors[-2]
            minors.append(d)
        if minors[-1] == 0:
            return None
        prev_sign = 1
        for d in minors[1:]:
            sign = prev_sign if d == 0 else (1 if d > 0 else -1)
            if sign == prev_sign:
                b_plus += 1
            else:
                b_minus += 1
            prev_sign = sign
    return SignatureProfile(b_plus, b_minus, 0)


def signature_profile(form: SymForm | QForm) -> SignatureProfile:
    """Counts (b+, b-, b0) of a symmetric form by exact congruence reduction.

    Pivots prefer a nonzero diagonal entry; failing that, a hyperbolic
    2x2 pivot on an off-diagonal pair handles zero-diagonal chains.
    The result is basis independent (Sylvester's law of inertia).
    """
    rows = form.rational_rows()
    n = len(rows)
    if n == 0:
        return SignatureProfile(0, 0, 0)
    if _is_tridiagonal(rows):
        fast = _tridiagonal_profile(rows)
        if fast is not None:
            return fast

    active = list(range(n))
    b_plus = b_minus = b_zero = 0
    while active:
        pivot = next((k for k in active if rows[k][k] != 0), None)
        if pivot is not None:
            p = rows[pivot][pivot]
            if p > 0:
                b_plus += 1
            else:
                b_minus += 1
            active.remove(pivot)
            col = {k: rows[k][pivot] for k in active}
            for x in active:
                if col[x] == 0:
                    continue
                for y in active:
                    rows[x][y] -= col[x] * col[y] / p
            continue
        pair = next(
            (
                (i, j)
                for ai, i in enumerate(active)
                for j in active[ai + 1 :]
                if rows[i][j] != 0
            ),
            None,
        )
        if pair is None:
            b_zero += len(active)
            break
        i, j = pair
        a = rows[i][j]
        b_plus += 1
        b_minus += 1
        active.remove(i)
        active.remove(j)
        col_i = {k: rows[k][i] for k in active}
        col_j = {k: rows[k][j] for k in active}
        for x in active:
            for y in active:
                rows[x][y] -= (col_j[x] * col_i[y] + col_i[x] * col_j[y]) / a
    return SignatureProfile(b_plus, b_minus, b_zero)


def determinant(form: SymForm) -> int:
    """Exact integer determinant (Bareiss); the rank-0 form has determinant 1."""
    n = form.n
    if n == 0:
        return 1
    m = [list(row) for row in form.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def qdet(rows: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        pivot = next((r for r in range(k, n) if m[r][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for r in range(k + 1, n):
            if m[r][k] != 0:
                factor = m[r][k] * inv
                m[r] = [a - factor * b for a, b in zip(m[r], m[k])]
    return det


def _nullspace(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right nullspace, via reduced row echelon form."""
    if not rows:
        return []
    m = [row[:] for row in rows]
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            v[p] = -m[row_idx][f]
        basis.append(v)
    return basis


def orthogonal_complement(
    form: SymForm | QForm, basis: SubspaceBasis
) -> tuple[SubspaceBasis, QForm]:
    """Orthogonal complement of a subspace, with the restricted Gram matrix.

    Requires the restriction of the form to the subspace to be
    nondegenerate; raises :class:`DegenerateRestriction` otherwise.
    """
    n = form.n
    if basis.ambient != n:
        raise ValueError("basis ambient rank does not match the form")
    f = form.rational_rows()
    s = [list(v) for v in basis.vectors]
    gram = [
        [sum(s[a][i] * f[i][j] * s[b][j] for i in range(n) for j in range(n)) for b in range(len(s))]
        for a in range(len(s))
    ]
    if qdet(gram) == 0:
        raise DegenerateRestriction("form restricted to the subspace is degenerate")
    # v lies in the complement iff (S F) v = 0.
    sf = [
        [sum(s[a][i] * f[i][j] for i in range(n)) for j in range(n)]
        for a in range(len(s))
    ]
    comp = _nullspace(sf)
    restricted = [
        [
            sum(u[i] * f[i][j] * w[j] for i in range(n) for j in range(n))
            for w in comp
        ]
        for u in comp
    ]
    return (
        SubspaceBasis(n, tuple(tuple(v) for v in comp)),
        QForm(tuple(tuple(row) for row in restricted)),
    )


def solve_mod2(form: SymForm, rhs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """All u in F_2^n with ``form . u == rhs`` mod 2 (possibly none), sorted."""
    n = form.n
    if len(rhs) != n:
        raise ValueError("right-hand side has wrong length")
    # Bitmask rows: columns 0..n-1 plus the augmented bit n.
    rows = []
    for i in range(n):
        bits = 0
        for j in range(n):
            if form.entries[i][j] % 2:
                bits |= 1 << j
        if rhs[i] % 2:
            bits |= 1 << n
        rows.append(bits)
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, n) if rows[i] >> col & 1), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(n):
            if i != r and rows[i] >> col & 1:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
    for i in range(r, n):
        if rows[i] >> n & 1:
            return ()
    particular = [0] * n
    for row_idx, col in enumerate(pivots):
        particular[col] = rows[row_idx] >> n & 1
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row_idx, col in enumerate(pivots):
            v[col] = rows[row_idx] >> f & 1
        kernel.append(v)
    solutions = set()
    for mask in range(1 << len(kernel)):
        sol = particular[:]
        for b, v in enumerate(kernel):
            if mask >> b & 1:
                sol = [x ^ y for x, y in zip(sol, v)]
        solutions.add(tuple(sol))
    return tuple(sorted(solutions))


def _ldl_positive(rows: list[list[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """LDL data of a positive definite rational matrix.

    Returns diagonal d and upper coefficients u with
    Q(x) = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)^2.
    """
    n = len(rows)
    c = [row[:] for row in rows]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = c[i][i]
        if d[i] <= 0:
            raise NotDefinite("matrix is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = c[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                c[j][k] -= c[i][j] * c[i][k] / d[i]
                c[k][j] = c[j][k]
    return d, u


def _normalize_sign(vec: tuple[int, ...]) -> tuple[int, ...]:
    for x in vec:
        if x > 0:
            return vec
        if x < 0:
            return tuple(-y for y in vec)
    return vec


def max_char_square(
    form: SymForm, rank_bound: int = 12
) -> tuple[int, tuple[int, ...]]:
    """Maximum of w^2 over characteristic vectors of a negative definite form.

    A vector w is characteristic when <w, e_i> = <e_i, e_i> mod 2 for
    every basis vector.  Definiteness bounds the search region, so a
    branch-and-bound over the LDL cone is exhaustive.  The witness is
    normalised so its first nonzero entry is positive and is the
    lexicographically least such maximiser; the result is deterministic.
    """
    n = form.n
    if n == 0:
        return 0, ()
    profile = signature_profile(form)
    if profile.b_plus or profile.b_zero:
        raise NotDefinite("form is not negative definite")
    if n > rank_bound:
        raise RankTooLarge(f"rank {n} exceeds the bound {rank_bound}")

    classes = solve_mod2(form, tuple(form.entries[i][i] for i in range(n)))
    p = [[-Fraction(x) for x in row] for row in form.rational_rows()]
    d, u = _ldl_positive(p)

    def q_value(x: list[int]) -> Fraction:
        total = Fraction(0)
        for i in range(n):
            t = x[i] + sum(u[i][j] * x[j] for j in range(i + 1, n))
            total += d[i] * t * t
        return total

    best_q = min(q_value(list(c)) for c in classes)
    best_w: tuple[int, ...] | None = None

    def search(cls: tuple[int, ...], level: int, x: list[int], acc: Fraction) -> None:
        nonlocal best_q, best_w
        if acc > best_q:
            return
        if level < 0:
            w = _normalize_sign(tuple(x))
            if acc < best_q:
                best_q = acc
                best_w = w
            elif acc == best_q and (best_w is None or w < best_w):
                best_w = w
            return
        # x_level is congruent to cls[level] mod 2 and must satisfy
        # d[level] * (x_level + t)^2 <= best_q - acc.  Enumerate outward
        # from the real minimiser -t in both directions.
        t = sum((u[level][j] * x[j] for j in range(level + 1, n)), Fraction(0))
        base = cls[level] % 2
        start = base + 2 * _floor((-t - base) / 2)
        for x0, step in ((start, -2), (start + 2, 2)):
            xi = x0
            while True:
                term = d[level] * (xi + t) ** 2
                if term > best_q - acc:
                    break
                x[level] = xi
                search(cls, level - 1, x, acc + term)
                xi += step
        x[level] = 0

    for cls in classes:
        search(cls, n - 1, [0] * n, Fraction(0))

    assert best_w is not None
    value = -best_q
    assert value.denominator == 1
    return int(value), best_w


def _floor(value: Fraction) -> int:
    return value.numerator // value.denominator
