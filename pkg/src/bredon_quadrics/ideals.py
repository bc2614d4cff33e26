"""Per-bidegree linear algebra for ideals in bigraded algebras.

An algebra here is anything with ``monomials(d)``, ``degree(m)``,
``order(m)`` (0 for a Z summand, 2 for Z/2) and ``mul_mono_terms(a, b)``.
Elements carry ``alg`` and a ``terms`` dict.  The piece of an ideal in
bidegree d is the lattice spanned by multiplier * generator products,
written in the monomial basis of the ambient piece; the Z/2 monomials
contribute the relations ``2 e_i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .bigraded_core import (BiDegree, FgAbGroup, IntLattice, hnf, reduce_vector,
                            smith_normal_form)
from .poly import (Poly, PolyAlgebra, a_h, a_hx, chow_poly, embed, f_bar, f_bold,
                   big_f, f2_xi_w, r_n, z_t_h)


@dataclass(frozen=True)
class BidegreeWindow:
    p_min: int
    p_max: int
    q_min: int
    q_max: int

    def __post_init__(self):
        if self.p_min > self.p_max or self.q_min > self.q_max:
            raise ValueError(f"empty window {self}")

    @classmethod
    def parse(cls, text: str) -> "BidegreeWindow":
        parts = text.split(":")
        if len(parts) != 4:
            raise ValueError("window must look like pmin:pmax:qmin:qmax")
        return cls(*(int(x) for x in parts))

    @classmethod
    def standard(cls, n: int) -> "BidegreeWindow":
        return cls(0, 2 * n + 4, -n - 4, n + 4)

    def __iter__(self) -> Iterator[BiDegree]:
        for p in range(self.p_min, self.p_max + 1):
            for q in range(self.q_min, self.q_max + 1):
                yield BiDegree(p, q)

    def __contains__(self, d) -> bool:
        p, q = BiDegree.of(d)
        return self.p_min <= p <= self.p_max and self.q_min <= q <= self.q_max

    def __str__(self):
        return f"{self.p_min}:{self.p_max}:{self.q_min}:{self.q_max}"


Family = Callable[[BiDegree], list[dict]]


class Ideal:
    """Generators plus optional extra spanning families.

    ``families`` are callables returning term dicts that lie in the ideal in
    a given bidegree; they serve ideals whose multipliers are not the
    ambient monomials (the h^s-shifted pieces in the isotropic ring).
    ``periodic`` declares that every piece is invariant under the Laurent
    shift, which lets spans be cached by q modulo the period.
    """

    def __init__(self, alg, generators: Iterable = (), name: str = "",
                 families: Sequence[Family] = (), periodic: bool | None = None):
        self.alg = alg
        gens = []
        for g in generators:
            if g.alg != alg:
                raise ValueError(f"generator {g} is not in {alg.name}")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not bihomogeneous")
            if g.terms:
                gens.append(g)
        self.generators = tuple(gens)
        self.name = name
        self.families = tuple(families)
        if periodic is None:
            periodic = not families and getattr(alg, "period", None) is not None
        self.periodic = periodic
        self._span: dict = {}
        self._quot: dict = {}

    @classmethod
    def from_components(cls, alg, generators: Iterable, name: str = "") -> "Ideal":
        """Ideal generated by the bihomogeneous components of the generators."""
        gens = []
        for g in generators:
            gens.extend(g.components().values())
        return cls(alg, gens, name=name)

    def __repr__(self):
        return f"Ideal({self.name or self.alg.name}: {len(self.generators)} generators)"

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.alg != other.alg:
            raise ValueError("algebra mismatch")
        return Ideal(self.alg, self.generators + other.generators,
                     name=f"{self.name}+{other.name}",
                     families=self.families + other.families,
                     periodic=self.periodic and other.periodic)

    def _key(self, d: BiDegree):
        if self.periodic:
            return BiDegree(d.p, d.q % self.alg.period)
        return d

    # -- spans
    def products(self, d: BiDegree) -> list[dict]:
        out = []
        alg = self.alg
        for g in self.generators:
            rest = d - g.degree()
            for u in alg.monomials(rest):
                t: dict = {}
                for m, c in g.terms.items():
                    for m2, f in alg.mul_mono_terms(u, m):
                        t[m2] = t.get(m2, 0) + c * f
                out.append(t)
        for fam in self.families:
            out.extend(fam(d))
        return out


def ambient(alg, d) -> list:
    return alg.monomials(BiDegree.of(d))


def torsion_rows(alg, monos: Sequence) -> list[list[int]]:
    rows = []
    for i, m in enumerate(monos):
        o = alg.order(m)
        if o:
            r = [0] * len(monos)
            r[i] = o
            rows.append(r)
    return rows


def to_vector(terms: dict, monos: Sequence, index: dict | None = None) -> list[int]:
    index = index or {m: i for i, m in enumerate(monos)}
    v = [0] * len(monos)
    for m, c in terms.items():
        i = index.get(m)
        if i is None:
            raise ValueError(f"monomial {m} is not in this bidegree piece")
        v[i] += c
    return v


def _span_rows(I: Ideal, d: BiDegree) -> list[list[int]]:
    """HNF rows of the ideal piece plus torsion relations, cached."""
    key = I._key(d)
    hit = I._span.get(key)
    if hit is not None:
        return hit
    base = d if not I.periodic else BiDegree(d.p, key.q)
    monos = ambient(I.alg, base)
    index = {m: i for i, m in enumerate(monos)}
    rows = [to_vector(t, monos, index) for t in I.products(base)]
    rows += torsion_rows(I.alg, monos)
    return I._span.setdefault(key, hnf(rows, len(monos)))


def ideal_span(I: Ideal, d) -> IntLattice:
    """Lattice of multiplier * generator products in bidegree d."""
    d = BiDegree.of(d)
    monos = ambient(I.alg, d)
    index = {m: i for i, m in enumerate(monos)}
    rows = [to_vector(t, monos, index) for t in I.products(d)]
    return IntLattice(len(monos), rows)


def relation_lattice(I: Ideal, d) -> IntLattice:
    """Ideal piece together with the 2-torsion relations of the ambient piece."""
    d = BiDegree.of(d)
    return IntLattice(len(ambient(I.alg, d)), _span_rows(I, d))


@dataclass
class QuotientPiece:
    """(ambient piece) / (ideal piece) with coordinates and representatives.

    ``coords`` maps an ambient vector to its image in the standard form
    Z/d_1 + ... + Z/d_k + Z^r (torsion first, matching ``group``).
    """
    degree: BiDegree
    monomials: list
    group: FgAbGroup
    relations: list[list[int]]
    _V: list[list[int]] = field(repr=False)
    _diag: list[int] = field(repr=False)
    _keep: list[int] = field(repr=False)
    representatives: list[list[int]] = field(repr=False)

    @property
    def orders(self) -> list[int]:
        return [self._diag[i] if i < len(self._diag) else 0 for i in self._keep]

    def coords(self, v: Sequence[int]) -> list[int]:
        y = [sum(v[r] * self._V[r][c] for r in range(len(v))) for c in range(len(v))]
        out = []
        for i, o in zip(self._keep, self.orders):
            out.append(y[i] % o if o else y[i])
        return out

    def element_coords(self, terms: dict) -> list[int]:
        return self.coords(to_vector(terms, self.monomials))

    def normal_form(self, v: Sequence[int]) -> list[int]:
        return reduce_vector(v, self.relations)


def quotient_at(alg, I: Ideal, d) -> QuotientPiece:
    d = BiDegree.of(d)
    if I.alg != alg:
        raise ValueError("ideal lives in a different algebra")
    key = I._key(d)
    hit = I._quot.get(key)
    if hit is not None:
        if hit.degree == d:
            return hit
        return _shifted(hit, d, alg)
    monos = ambient(alg, d)
    rows = _span_rows(I, d)
    n = len(monos)
    if n == 0:
        piece = QuotientPiece(d, monos, FgAbGroup(0), [], [], [], [], [])
    else:
        diag, _, V, Vi = smith_normal_form(rows or [[0] * n], with_inverse=True)
        full = list(diag) + [0] * (n - len(diag))
        keep = [i for i in range(n) if full[i] != 1]
        group = FgAbGroup.from_invariants([full[i] for i in keep])
        # from_invariants orders torsion before free, as does keep (zeros last)
        piece = QuotientPiece(d, monos, group, rows, V, full, keep,
                              [list(Vi[i]) for i in keep])
    I._quot.setdefault(key, piece)
    return piece


def _shifted(piece: QuotientPiece, d: BiDegree, alg) -> QuotientPiece:
    k = (d.q - piece.degree.q) // alg.period
    monos = [alg.shift(m, k) for m in piece.monomials]
    return QuotientPiece(d, monos, piece.group, piece.relations, piece._V,
                         piece._diag, piece._keep, piece.representatives)


def group_at(alg, I: Ideal, d) -> FgAbGroup:
    return quotient_at(alg, I, d).group


def normal_form(x, I: Ideal):
    """Canonical representative of x modulo I, computed per bihomogeneous
    component (the ideals are bigraded, so this is the normal form of x)."""
    if x.alg != I.alg:
        raise ValueError("element and ideal live in different algebras")
    terms = {}
    for d, comp in x.components().items():
        monos = ambient(I.alg, d)
        r = reduce_vector(to_vector(comp.terms, monos), _span_rows(I, d))
        for m, c in zip(monos, r):
            if c:
                terms[m] = c
    return type(x)(I.alg, terms)


def contains(I: Ideal, x) -> bool:
    return not normal_form(x, I).terms


def element_from_vector(alg, monos: Sequence, v: Sequence[int]):
    return Poly(alg, {m: c for m, c in zip(monos, v) if c})


@dataclass
class EqualityReport:
    equal: bool
    degree: BiDegree | None = None
    witness: object = None
    witness_in: str | None = None
    checked: int = 0

    def to_json(self) -> dict:
        return {"equal": self.equal,
                "degree": list(self.degree) if self.degree else None,
                "witness": str(self.witness) if self.witness is not None else None,
                "witness_in": self.witness_in, "checked": self.checked}


def ideal_equal(I1: Ideal, I2: Ideal, w: BidegreeWindow) -> EqualityReport:
    """Compare ideal pieces (with torsion relations) on every bidegree of w."""
    if I1.alg != I2.alg:
        raise ValueError("ideals live in different algebras")
    n = 0
    for d in w:
        n += 1
        A, B = _span_rows(I1, d), _span_rows(I2, d)
        if A == B:
            continue
        monos = ambient(I1.alg, d)
        for rows, other, label in ((A, B, "first"), (B, A, "second")):
            for r in rows:
                if any(reduce_vector(r, other)):
                    return EqualityReport(False, d, element_from_vector(I1.alg, monos, r),
                                          label, n)
    return EqualityReport(True, checked=n)


# --------------------------------------------------------------- builders

def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _split(n: int) -> tuple[int, int]:
    """n = 2m - delta."""
    m = (n + 1) // 2
    return m, 2 * m - n


def jbar(n: int) -> Ideal:
    """<f_{n+1}, w2 f_n> in F2[xi^±, w1, w2]."""
    if n < 0:
        raise ValueError("n must be >= 0")
    alg = f2_xi_w()
    w2 = Poly.var(alg, "w2")
    return Ideal(alg, [embed(f_bar(n + 1), alg), w2 * embed(f_bar(n), alg)],
                 name=f"Jbar_{n}")


def jhat_generators(n: int) -> list[Poly]:
    m, delta = _split(n)
    alg = r_n(n)
    F = lambda k: embed(big_f(k), alg)
    P = lambda s: Poly.parse(alg, s)
    xi = lambda k: Poly.mono(alg, tuple(k if nm == "xi" else 0 for nm in alg.names))
    e, h, x = P("e"), P("h"), P("x")
    xih = xi(1) * h
    g1 = e ** (1 - delta) * xi(2 * m) * x - h ** (1 - delta) * F(2 * m - 1)
    g2 = F(2 * m + 1)
    g3 = h * x
    g4 = xih ** (2 * m) - _sign(m) * xih ** delta * (xi(2 * m + 1 - delta) * x) ** 2
    return [g1, g2, g3, g4]


def jhat(n: int) -> Ideal:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Ideal(r_n(n), jhat_generators(n), name=f"Jhat_{n}")


def j_generators(n: int) -> list[Poly]:
    """The explicit generator list of J_n in A[h, x_n] (odd/even split)."""
    m, delta = _split(n)
    alg = a_hx(n)
    f = lambda k: embed(f_bold(k), alg)
    P = lambda s: Poly.parse(alg, s)
    t, e, h, x = P("t"), P("e"), P("h"), P("x")
    if delta:
        return [t ** m * x - f(m - 1), f(m), h * x, h ** (2 * m)]
    return [e * t ** m * x - h * f(m - 1), f(m), h * x,
            h ** (2 * m) - _sign(m) * t ** (m + 1) * x * x]


def j(n: int) -> Ideal:
    if n < 0:
        raise ValueError("n must be >= 0")
    return Ideal(a_hx(n), j_generators(n), name=f"J_{n}")


def j_plus_e_target(n: int) -> Ideal:
    """<e, h^(1-delta) x, h^2m - (-1)^m t^(m+1) x^2>."""
    m, delta = _split(n)
    alg = a_hx(n)
    P = lambda s: Poly.parse(alg, s)
    t, e, h, x = P("t"), P("e"), P("h"), P("x")
    gens = [e, h ** (1 - delta) * x, h ** (2 * m) - _sign(m) * t ** (m + 1) * x * x]
    # for odd n the last generator is inhomogeneous; x is a generator, so its
    # two components generate the same ideal
    return Ideal.from_components(alg, gens, name=f"target_{n}")


def i_odd(m: int) -> Ideal:
    """<f_m, h f_{m-1}, h^2m> in A[h]."""
    if m < 1:
        raise ValueError("m must be >= 1")
    alg = a_h()
    f = lambda k: embed(f_bold(k), alg)
    h = Poly.var(alg, "h")
    return Ideal(alg, [f(m), h * f(m - 1), h ** (2 * m)], name=f"I_{2 * m - 1}")


def chow_generators(n: int, laurent: bool = False) -> list[Poly]:
    m, delta = _split(n)
    alg = chow_poly(n, laurent)
    h, phi = Poly.var(alg, "h"), Poly.var(alg, "phi")
    even_m = 1 if m % 2 == 0 else 0
    return [h ** (1 - delta) * (h ** m - 2 * phi), phi * phi - even_m * h ** m * phi]


def chow_ideal(n: int, laurent: bool = False) -> Ideal:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Ideal(chow_poly(n, laurent), chow_generators(n, laurent), name=f"C_{n}")


def theorem_a_generators(n: int, s: int, literal_g4: bool = False) -> list[Poly]:
    """g1..g4 of the interior ideal in A[h, x] with deg x = (n - 2s, -1).

    The y generator is absorbed by working over A (y = 1/t).  By default g4
    carries the factor (1 - delta), the form that reproduces J_{n-2s};
    ``literal_g4`` uses delta instead.
    """
    if not 0 <= 2 * s <= n:
        raise ValueError("need 0 <= 2s <= n")
    m, delta = _split(n)
    mm = m - s
    alg = a_hx(n - 2 * s)
    f = lambda k: embed(f_bold(k), alg)
    P = lambda s_: Poly.parse(alg, s_)
    t, e, h, x = P("t"), P("e"), P("h"), P("x")
    coef = delta if literal_g4 else 1 - delta
    g1 = f(mm)
    g2 = e ** (1 - delta) * t ** mm * x - h ** (1 - delta) * f(mm - 1)
    g3 = h * x
    g4 = h ** (2 * mm) - coef * _sign(mm) * t ** (mm + 1) * x * x
    return [g1, g2, g3, g4]


def pfister_literal_generators(r: int) -> list[Poly]:
    """Pfister-form generators for dimension 2^(r+1) - 2, taken verbatim
    (the second one is inhomogeneous)."""
    if r < 2:
        raise ValueError("r must be >= 2")
    n = 2 ** (r + 1) - 2
    alg = a_hx(n)
    P = lambda s: Poly.parse(alg, s)
    t, e, h, x = P("t"), P("e"), P("h"), P("x")
    total = Poly(alg, {})
    for jj in range(r - 1):
        total = total + (e ** 4) ** (2 ** r - 2 ** jj) * t ** (2 ** jj - 1) * (h * h) ** (2 ** jj - 1)
    return [e ** (2 ** r - 1), e * t ** (2 ** r - 1) * x - h * e * total, h * x,
            h ** (2 ** (r + 1) - 2) + t ** (2 ** r) * x * x]


def pfister(r: int) -> Ideal:
    """The printed ideal, with inhomogeneous generators split into their
    bihomogeneous components (the smallest bigraded ideal containing them)."""
    return Ideal.from_components(a_hx(2 ** (r + 1) - 2), pfister_literal_generators(r),
                                 name=f"pfister_{r}")


def free_quotient_ideal(n: int) -> Ideal:
    m, delta = _split(n)
    if delta:
        alg = z_t_h()
        h = Poly.var(alg, "h")
        return Ideal(alg, [h ** (2 * m)], name=f"free_{n}")
    alg = z_t_h(n)
    t, h, chi = (Poly.var(alg, v) for v in ("t", "h", "chi"))
    return Ideal(alg, [h ** (2 * m + 1), h * chi,
                       t ** (m + 1) * chi * chi - _sign(m) * h ** (2 * m)], name=f"free_{n}")


def build_ideal(name: str, *params: int) -> Ideal:
    builders = {"jbar": jbar, "jhat": jhat, "j": j, "i_odd": i_odd,
                "chow_ideal": chow_ideal, "pfister": pfister,
                "free_quotient": free_quotient_ideal}
    if name == "script_i":
        from .quadric import script_i
        return script_i(*params)
    if name not in builders:
        raise ValueError(f"unknown ideal {name!r}")
    return builders[name](*params)
