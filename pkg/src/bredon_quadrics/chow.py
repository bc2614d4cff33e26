"""Chow ring of the complex quadric of dimension n = 2m - delta, with the
Galois involution, in a fixed reduced basis.

Basis in codimension k: h^k for k < m; (h^m, phi) when n is even and
k = m; h^(k-m) phi above that.  Reduction rules, all consequences of
the defining ideal:

    phi^2 -> e * h^m phi             (e = 1 if m even, else 0)
    h^m   -> 2 phi                   (n odd)
    h^(m+1) -> 2 h phi               (n even)
    h^i phi -> 0                     (i + m > n)
"""
from __future__ import annotations

from dataclasses import dataclass

from .bigraded_core import kernel, mat_mul

Key = tuple[int, int]  # (i, j) for h^i phi^j, j in {0, 1} after reduction


def _split(n: int) -> tuple[int, int]:
    m = (n + 1) // 2
    return m, 2 * m - n


def _even_m(n: int) -> int:
    return 1 if _split(n)[0] % 2 == 0 else 0


def reduce_monomial(n: int, i: int, j: int) -> dict[Key, int]:
    """h^i phi^j as a combination of basis monomials."""
    m, delta = _split(n)
    while j >= 2:
        if not _even_m(n):
            return {}
        i, j = i + m, j - 1
    if j == 1:
        return {} if i + m > n else {(i, 1): 1}
    if i < m or (delta == 0 and i == m):
        return {(i, 0): 1}
    if i > n:
        return {}
    # h^i = 2 h^(i-m) phi in both parities once past the basis range
    return {(i - m, 1): 2}


@dataclass(frozen=True)
class ChowElem:
    n: int
    terms: tuple[tuple[Key, int], ...] = ()

    @classmethod
    def from_dict(cls, n: int, d: dict[Key, int]) -> "ChowElem":
        out: dict[Key, int] = {}
        for (i, jj), c in d.items():
            for k, f in reduce_monomial(n, i, jj).items():
                out[k] = out.get(k, 0) + c * f
        return cls(n, tuple(sorted((k, c) for k, c in out.items() if c)))

    @classmethod
    def h(cls, n: int, i: int = 1) -> "ChowElem":
        return cls.from_dict(n, {(i, 0): 1})

    @classmethod
    def phi(cls, n: int) -> "ChowElem":
        return cls.from_dict(n, {(0, 1): 1})

    @classmethod
    def one(cls, n: int) -> "ChowElem":
        return cls.from_dict(n, {(0, 0): 1})

    @classmethod
    def parse(cls, n: int, text: str) -> "ChowElem":
        from .coeff_rings import _parse_power, _split_terms
        d: dict[Key, int] = {}
        for c, factors in _split_terms(text):
            i = jj = 0
            for f in factors:
                name, e = _parse_power(f)
                if name == "h":
                    i += e
                elif name == "phi":
                    jj += e
                else:
                    raise ValueError(f"unknown Chow generator {name!r}")
            d[(i, jj)] = d.get((i, jj), 0) + c
        return cls.from_dict(n, d)

    def as_dict(self) -> dict[Key, int]:
        return dict(self.terms)

    def __add__(self, other: "ChowElem") -> "ChowElem":
        _same(self, other)
        d = self.as_dict()
        for k, c in other.terms:
            d[k] = d.get(k, 0) + c
        return ChowElem.from_dict(self.n, d)

    def __neg__(self):
        return ChowElem(self.n, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowElem.from_dict(self.n, {k: c * other for k, c in self.terms})
        return chow_mul(self.n, self, other)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        from .coeff_rings import _fmt_coeff, _join
        parts = []
        for (i, jj), c in sorted(self.terms, key=lambda kv: (-_codim(self.n, kv[0]), kv[0])):
            body = "*".join(x for x in (("h" if i == 1 else f"h^{i}") if i else "",
                                        "phi" if jj else "") if x)
            parts.append(_fmt_coeff(c, body))
        return _join(parts)


def _same(a: ChowElem, b: ChowElem):
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def _codim(n: int, key: Key) -> int:
    return key[0] + key[1] * _split(n)[0]


def chow_mul(n: int, a: ChowElem, b: ChowElem) -> ChowElem:
    if a.n != n or b.n != n:
        raise ValueError("dimension mismatch")
    d: dict[Key, int] = {}
    for (i1, j1), c1 in a.terms:
        for (i2, j2), c2 in b.terms:
            k = (i1 + i2, j1 + j2)
            d[k] = d.get(k, 0) + c1 * c2
    return ChowElem.from_dict(n, d)


def galois(n: int, a: ChowElem) -> ChowElem:
    """sigma(h) = h, sigma(phi) = e h^m - (-1)^m phi, extended multiplicatively."""
    m, _ = _split(n)
    s_phi = ChowElem.from_dict(n, {(m, 0): _even_m(n), (0, 1): -(-1) ** m})
    out = ChowElem(n)
    for (i, jj), c in a.terms:
        term = ChowElem.h(n, i) * c
        if jj:
            term = term * s_phi
        out = out + term
    return out


def basis(n: int, k: int) -> list[Key]:
    if not 0 <= k <= n:
        raise ValueError(f"codimension {k} out of range for n = {n}")
    m, delta = _split(n)
    if k < m:
        return [(k, 0)]
    if k == m and delta == 0:
        return [(m, 0), (0, 1)]
    return [(k - m, 1)]


def basis_labels(n: int, k: int) -> list[str]:
    return [str(ChowElem(n, ((b, 1),))) for b in basis(n, k)]


@dataclass(frozen=True)
class Z2Module:
    rank: int
    sigma: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        s = [list(r) for r in self.sigma]
        if len(s) != self.rank or any(len(r) != self.rank for r in s):
            raise ValueError("sigma must be square of size rank")
        if self.rank and mat_mul(s, s) != [[int(i == j) for j in range(self.rank)]
                                           for i in range(self.rank)]:
            raise ValueError("sigma is not an involution")

    @classmethod
    def trivial(cls, rank: int = 1) -> "Z2Module":
        return cls(rank, tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)))

    @classmethod
    def regular(cls) -> "Z2Module":
        return cls(2, ((0, 1), (1, 0)))

    def matrix(self) -> list[list[int]]:
        return [list(r) for r in self.sigma]


def coords(n: int, k: int, a: ChowElem) -> list[int]:
    idx = {b: i for i, b in enumerate(basis(n, k))}
    v = [0] * len(idx)
    for key, c in a.terms:
        if _codim(n, key) != k:
            raise ValueError(f"{a} is not homogeneous of codimension {k}")
        v[idx[key]] = c
    return v


def chow_group(n: int, k: int) -> Z2Module:
    """CH^k with the Galois matrix; columns are the images of basis vectors."""
    b = basis(n, k)
    cols = [coords(n, k, galois(n, ChowElem(n, ((key, 1),)))) for key in b]
    sigma = tuple(tuple(cols[c][r] for c in range(len(b))) for r in range(len(b)))
    return Z2Module(len(b), sigma, tuple(basis_labels(n, k)))


def _elem(n: int, k: int, v) -> ChowElem:
    return ChowElem.from_dict(n, {key: c for key, c in zip(basis(n, k), v)})


def invariants_antiinvariants(n: int) -> dict:
    """Per codimension, Z-bases of ker(sigma - 1) and ker(sigma + 1)."""
    inv, anti = {}, {}
    for k in range(n + 1):
        M = chow_group(n, k)
        s = M.matrix()
        r = M.rank
        minus = [[s[i][j] - (i == j) for j in range(r)] for i in range(r)]
        plus = [[s[i][j] + (i == j) for j in range(r)] for i in range(r)]
        inv[k] = [str(_elem(n, k, v)) for v in kernel(minus, r)]
        anti[k] = [str(_elem(n, k, v)) for v in kernel(plus, r)]
    return {"n": n, "invariants": inv, "anti_invariants": anti}


def pullback(n: int, a: ChowElem) -> ChowElem:
    """Restriction along Q_n in Q_(n+1): h -> h, phi -> h^((1+(-1)^n)/2) phi."""
    if a.n != n + 1:
        raise ValueError("pullback takes a class on the quadric of dimension n + 1")
    shift = 1 if n % 2 == 0 else 0
    out = ChowElem(n)
    for (i, jj), c in a.terms:
        out = out + ChowElem.from_dict(n, {(i + shift * jj, jj): c})
    return out
