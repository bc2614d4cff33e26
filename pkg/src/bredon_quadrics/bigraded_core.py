"""Exact integer linear algebra used by every per-bidegree computation.

Everything here works on plain Python ints, so there is no overflow and no
modular shortcut.  Matrices are lists of rows.

>>> smith_normal_form([[2, 0], [0, 3]])[0]
[1, 6]
>>> quotient_group(IntLattice.standard(2), IntLattice(2, [[2, 0]]))
FgAbGroup(rank=1, torsion=(2,))
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Matrix = list[list[int]]


@dataclass(frozen=True, order=True)
class BiDegree:
    p: int
    q: int

    def __add__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.p - other.p, self.q - other.q)

    def __mul__(self, k: int) -> "BiDegree":
        return BiDegree(self.p * k, self.q * k)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.p
        yield self.q

    @classmethod
    def of(cls, d) -> "BiDegree":
        if isinstance(d, BiDegree):
            return d
        p, q = d
        return cls(int(p), int(q))


ZERO_DEGREE = BiDegree(0, 0)


@dataclass(frozen=True)
class FgAbGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        t = tuple(int(x) for x in self.torsion)
        for x in t:
            if x < 2:
                raise ValueError("torsion orders must be >= 2")
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError("torsion orders must form a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def two_torsion_count(self) -> int:
        return sum(1 for t in self.torsion if t == 2)

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return FgAbGroup.from_invariants(
            [0] * (self.rank + other.rank) + list(self.torsion) + list(other.torsion))

    @classmethod
    def from_invariants(cls, invariants: Iterable[int]) -> "FgAbGroup":
        """Build from a list of cyclic orders (0 means Z, 1 is dropped)."""
        rank = 0
        primes: dict[int, list[int]] = {}
        for d in invariants:
            d = abs(int(d))
            if d == 0:
                rank += 1
            elif d > 1:
                for pr, e in _factor(d).items():
                    primes.setdefault(pr, []).append(pr ** e)
        # recombine prime powers into a divisibility chain
        width = max((len(v) for v in primes.values()), default=0)
        chain = [1] * width
        for v in primes.values():
            v.sort()
            for i, pp in enumerate(v):
                chain[width - len(v) + i] *= pp
        return cls(rank, tuple(c for c in chain if c > 1))

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = ["Z"] * min(self.rank, 1)
        if self.rank > 1:
            parts = [f"Z^{self.rank}"]
        counts: dict[int, int] = {}
        for t in self.torsion:
            counts[t] = counts.get(t, 0) + 1
        for t, c in counts.items():
            parts.append(f"(Z/{t})^{c}" if c > 1 else f"Z/{t}")
        return " + ".join(parts) if parts else "0"


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------- matrices

def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def smith_normal_form(m: Sequence[Sequence[int]], with_inverse: bool = False):
    """Smith normal form with unimodular transforms.

    Returns ``(diag, U, V)`` with ``U * M * V`` equal to the rectangular
    matrix carrying ``diag`` on its diagonal.  ``diag`` has length
    ``min(rows, cols)``, is nonnegative and forms a divisibility chain
    (zeros last).  With ``with_inverse`` a fourth entry ``V^-1`` is returned.
    """
    a = [list(map(int, row)) for row in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    U = identity(nr)
    V = identity(nc)
    Vi = identity(nc) if with_inverse else None

    def row_op(i, j, c):  # row_i += c * row_j
        if c:
            ri, rj = a[i], a[j]
            for k in range(nc):
                ri[k] += c * rj[k]
            ui, uj = U[i], U[j]
            for k in range(nr):
                ui[k] += c * uj[k]

    def col_op(i, j, c):  # col_i += c * col_j
        if c:
            for row in a:
                row[i] += c * row[j]
            for row in V:
                row[i] += c * row[j]
            if Vi is not None:
                ri, rj = Vi[i], Vi[j]
                for k in range(nc):
                    rj[k] -= c * ri[k]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            if Vi is not None:
                Vi[i], Vi[j] = Vi[j], Vi[i]

    def neg_row(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(nr, nc):
        # smallest nonzero entry of the lower-right block as pivot
        best = None
        for i in range(t, nr):
            row = a[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, nr):
                if a[i][t]:
                    k = a[i][t] // p
                    row_op(i, t, -k)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    k = a[t][j] // p
                    col_op(j, t, -k)
                    if a[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block
                bad = None
                for i in range(t + 1, nr):
                    for j in range(t + 1, nc):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_op(t, bad, 1)
                continue
            # move the smallest remaining entry of row/col t to the pivot
            best = (abs(a[t][t]), t, t)
            for i in range(t + 1, nr):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, nc):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            swap_rows(t, best[1])
            swap_cols(t, best[2])
        if a[t][t] < 0:
            neg_row(t)
        t += 1
    diag = [a[i][i] for i in range(min(nr, nc))]
    if with_inverse:
        return diag, U, V, Vi
    return diag, U, V


def invariant_factors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of a matrix (no transforms kept)."""
    basis = hnf(rows)
    if not basis:
        return []
    d, _, _ = smith_normal_form(basis)
    return [x for x in d if x]


# ------------------------------------------------------------- echelon form

def hnf(rows: Iterable[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; pivots are positive and entries above a pivot lie
    in ``[0, pivot)``.  The result is canonical for the lattice.
    """
    ech = _Echelon(ncols)
    for r in rows:
        ech.insert(r)
    return ech.rows()


class _Echelon:
    """Incremental row-echelon basis keyed by pivot column."""

    def __init__(self, ncols: int | None = None):
        self.ncols = ncols
        self.piv: dict[int, list[int]] = {}

    def insert(self, v: Sequence[int]) -> None:
        v = list(map(int, v))
        if self.ncols is None:
            self.ncols = len(v)
        n = len(v)
        col = 0
        while True:
            while col < n and v[col] == 0:
                col += 1
            if col == n:
                return
            row = self.piv.get(col)
            if row is None:
                if v[col] < 0:
                    v = [-x for x in v]
                self.piv[col] = v
                return
            a, b = row[col], v[col]
            if b % a == 0:
                k = b // a
                v = [x - k * y for x, y in zip(v, row)]
                continue
            g, s, t = _xgcd(a, b)
            new = [s * x + t * y for x, y in zip(row, v)]
            v = [(a // g) * y - (b // g) * x for x, y in zip(row, v)]
            self.piv[col] = new
            # the displaced pivot row re-enters below via v (its col entry is 0)

    def rows(self) -> Matrix:
        cols = sorted(self.piv)
        out = [list(self.piv[c]) for c in cols]
        # reduce above pivots
        for i in range(len(out)):
            c = cols[i]
            p = out[i][c]
            for k in range(i):
                x = out[k][c]
                if x < 0 or x >= p:
                    q = x // p
                    out[k] = [u - q * w for u, w in zip(out[k], out[i])]
        return out


def reduce_vector(v: Sequence[int], basis_hnf: Matrix) -> list[int]:
    """Canonical representative of ``v`` modulo a lattice given in HNF."""
    v = list(v)
    for row in basis_hnf:
        c = next(i for i, x in enumerate(row) if x)
        p = row[c]
        q = v[c] // p
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return v


def solve_in(v: Sequence[int], gens: Sequence[Sequence[int]]) -> list[int] | None:
    """Integer coefficients ``c`` with ``sum c_i gens_i == v``, or None."""
    if not gens:
        return [] if not any(v) else None
    n = len(gens)
    # kernel of [gens; -v]; v is reachable iff the last coordinates generate Z
    ker = left_kernel([list(g) for g in gens] + [[-x for x in v]])
    last = [c[n] for c in ker]
    g = 0
    for x in last:
        g = _xgcd(g, x)[0]
    if g != 1:
        return None
    coeffs = _bezout(last)
    return [sum(k * c[i] for k, c in zip(coeffs, ker)) for i in range(n)]


def _bezout(xs: Sequence[int]) -> list[int]:
    coeffs = [0] * len(xs)
    g = 0
    for i, x in enumerate(xs):
        g2, s, t = _xgcd(g, x)
        coeffs = [s * c for c in coeffs]
        coeffs[i] = t
        g = g2
    return coeffs


def left_kernel(rows: Sequence[Sequence[int]]) -> Matrix:
    """Basis of ``{c : c * M == 0}`` over Z (a saturated lattice)."""
    if not rows:
        return []
    d, U, _ = smith_normal_form(rows)
    r = sum(1 for x in d if x)
    return [list(U[i]) for i in range(r, len(rows))]


def kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of ``{v : M v == 0}`` over Z."""
    if not rows:
        return identity(ncols)
    d, _, V = smith_normal_form(rows)
    r = sum(1 for x in d if x)
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


# ---------------------------------------------------------------- lattices

@dataclass(frozen=True)
class IntLattice:
    ambient_rank: int
    generators: tuple[tuple[int, ...], ...] = field(default=())

    def __init__(self, ambient_rank: int, generators: Iterable[Sequence[int]] = ()):
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        for g in gens:
            if len(g) != ambient_rank:
                raise ValueError(
                    f"generator of length {len(g)} in ambient rank {ambient_rank}")
        object.__setattr__(self, "ambient_rank", int(ambient_rank))
        object.__setattr__(self, "generators", gens)

    @classmethod
    def standard(cls, n: int) -> "IntLattice":
        return cls(n, identity(n))

    def basis(self) -> Matrix:
        return hnf(self.generators, self.ambient_rank)

    @property
    def rank(self) -> int:
        return len(self.basis())

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.ambient_rank:
            raise ValueError("vector length does not match ambient rank")
        return not any(reduce_vector(v, self.basis()))

    def contains_lattice(self, other: "IntLattice") -> bool:
        b = self.basis()
        return all(not any(reduce_vector(g, b)) for g in other.generators)

    def __add__(self, other: "IntLattice") -> "IntLattice":
        _check_same_ambient(self, other)
        return IntLattice(self.ambient_rank, self.generators + other.generators)

    def same_as(self, other: "IntLattice") -> bool:
        _check_same_ambient(self, other)
        return self.basis() == other.basis()

    def saturation(self) -> "IntLattice":
        """``{v : k v in L for some k != 0}``."""
        if not self.generators:
            return IntLattice(self.ambient_rank, [])
        d, _, _, Vi = smith_normal_form(self.generators, with_inverse=True)
        r = sum(1 for x in d if x)
        return IntLattice(self.ambient_rank, Vi[:r])


def _check_same_ambient(a: IntLattice, b: IntLattice) -> None:
    if a.ambient_rank != b.ambient_rank:
        raise ValueError(
            f"ambient rank mismatch: {a.ambient_rank} vs {b.ambient_rank}")


def quotient_group(ambient: IntLattice, sub: IntLattice) -> FgAbGroup:
    """Isomorphism type of ``ambient / sub``; ``sub`` must lie in ``ambient``."""
    _check_same_ambient(ambient, sub)
    base = ambient.basis()
    coords = []
    for g in sub.generators:
        c = solve_in(g, base)
        if c is None:
            raise ValueError(f"generator {list(g)} is not in the ambient lattice")
        coords.append(c)
    return quotient_of_free(len(base), coords)


def quotient_of_free(n: int, rows: Sequence[Sequence[int]]) -> FgAbGroup:
    """Isomorphism type of ``Z^n / span(rows)``."""
    inv = invariant_factors(rows) if rows else []
    return FgAbGroup.from_invariants([0] * (n - len(inv)) + inv)


def lattice_intersect(a: IntLattice, b: IntLattice) -> IntLattice:
    """Generators of ``a ∩ b`` (kernel of ``(x, y) -> x A - y B``)."""
    _check_same_ambient(a, b)
    A, B = a.basis(), b.basis()
    if not A or not B:
        return IntLattice(a.ambient_rank, [])
    stacked = A + [[-x for x in row] for row in B]
    ker = left_kernel(stacked)
    gens = []
    for c in ker:
        ca = c[:len(A)]
        gens.append([sum(ci * A[i][j] for i, ci in enumerate(ca))
                     for j in range(a.ambient_rank)])
    return IntLattice(a.ambient_rank, hnf(gens, a.ambient_rank))


def preimage(images: Sequence[Sequence[int]], target: IntLattice) -> IntLattice:
    """``{c in Z^k : sum c_i images_i in target}`` for k = len(images)."""
    k = len(images)
    if k == 0:
        return IntLattice(0, [])
    T = target.basis()
    stacked = [list(r) for r in images] + [[-x for x in row] for row in T]
    ker = left_kernel(stacked)
    return IntLattice(k, hnf([c[:k] for c in ker], k))
