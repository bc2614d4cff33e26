"""Bigraded polynomial algebras and the recursive polynomial families.

An algebra is a coefficient tag (``Z``, ``F2`` or ``aleph``) plus an ordered
list of variables with bidegrees.  In ``aleph`` algebras the variable ``e``
is the torsion generator: any monomial with a positive ``e`` power has order
2.  At most one variable may be Laurent (``t`` or ``xi``); its exponent is
then fixed by the weight, which keeps every bidegree piece finite.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Sequence

from .bigraded_core import BiDegree
from .coeff_rings import _fmt_coeff, _join, _parse_power, _split_terms

Mono = tuple[int, ...]


@dataclass(frozen=True)
class VarSpec:
    name: str
    degree: BiDegree
    laurent: bool = False

    @classmethod
    def make(cls, name: str, p: int, q: int, laurent: bool = False) -> "VarSpec":
        return cls(name, BiDegree(p, q), laurent)


class PolyAlgebra:
    """Monomial bookkeeping for one bigraded polynomial algebra.

    ``square_rule`` optionally names a variable ``x`` and an exponent ``k``
    for the rewrite ``x^2 -> laurent^k`` (used for the dimension-zero
    interior ring, where ``x`` has p-degree 0).
    """

    def __init__(self, coeff: str, variables: Sequence[VarSpec], name: str = "",
                 square_rule: tuple[str, int] | None = None,
                 elim_order: Sequence[str] | None = None):
        if coeff not in ("Z", "F2", "aleph"):
            raise ValueError(f"unknown coefficient tag {coeff!r}")
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if coeff == "aleph" and "e" not in names:
            raise ValueError("aleph algebras need the torsion variable e")
        if sum(v.laurent for v in variables) > 1:
            raise ValueError("at most one Laurent variable")
        self.coeff = coeff
        self.vars = tuple(variables)
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.name = name or f"{coeff}[{','.join(names)}]"
        self.square_rule = square_rule
        self._laurent = next((i for i, v in enumerate(variables) if v.laurent), None)
        self._e = self.index.get("e") if coeff == "aleph" else None
        self._cache: dict = {}
        # monomials heavy in early elim_order variables are listed first, so
        # they become pivots and drop out of normal forms
        order = list(reversed(names)) if elim_order is None else list(elim_order)
        self._elim = tuple(self.index[n] for n in order)
        for v in variables:
            if v.degree.p < 0 and not v.laurent:
                raise ValueError("negative p-degree variables are not supported")

    # identity is structural so equal algebras share caches
    def key(self):
        return (self.coeff, self.vars, self.square_rule, self._elim)

    def __eq__(self, other):
        return isinstance(other, PolyAlgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"PolyAlgebra({self.name})"

    @property
    def tag(self) -> str:
        if self.coeff == "aleph" and "t" in self.index and self.vars[self.index["t"]].laurent:
            return "A"
        return self.coeff

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def has(self, name: str) -> bool:
        return name in self.index

    # ---------------------------------------------------------- monomials
    def degree(self, m: Mono) -> BiDegree:
        p = q = 0
        for v, e in zip(self.vars, m):
            p += v.degree.p * e
            q += v.degree.q * e
        return BiDegree(p, q)

    def order(self, m: Mono) -> int:
        if self.coeff == "F2":
            return 2
        if self._e is not None and m[self._e] > 0:
            return 2
        return 0

    def one(self) -> Mono:
        return (0,) * self.nvars

    def mul_mono(self, a: Mono, b: Mono) -> tuple[Mono, int]:
        m = tuple(x + y for x, y in zip(a, b))
        return self.reduce_mono(m)

    def reduce_mono(self, m: Mono) -> tuple[Mono, int]:
        if self.square_rule is not None:
            var, k = self.square_rule
            i = self.index[var]
            if m[i] >= 2:
                half = m[i] // 2
                m = list(m)
                m[i] -= 2 * half
                m[self._laurent] += k * half
                m = tuple(m)
        return m, 1

    def valid(self, m: Mono) -> bool:
        for v, e in zip(self.vars, m):
            if e < 0 and not v.laurent:
                return False
        return True

    def monomials(self, d) -> list[Mono]:
        d = BiDegree.of(d)
        hit = self._cache.get(d)
        if hit is None:
            hit = self._cache[d] = self._enumerate(d)
        return hit

    def _enumerate(self, d: BiDegree) -> list[Mono]:
        pos = [i for i, v in enumerate(self.vars) if not v.laurent and v.degree.p > 0]
        zero = [i for i, v in enumerate(self.vars) if not v.laurent and v.degree.p == 0]
        for i in zero:
            if self.square_rule is None or self.names[i] != self.square_rule[0]:
                raise ValueError(f"{self.name}: pieces are infinite in variable "
                                 f"{self.names[i]}")
        out: list[Mono] = []
        exps = [0] * self.nvars

        def rec(k: int, p_left: int):
            if k == len(pos):
                if p_left == 0:
                    zero_rec(0)
                return
            i = pos[k]
            dp = self.vars[i].degree.p
            for e in range(p_left // dp + 1):
                exps[i] = e
                rec(k + 1, p_left - e * dp)
            exps[i] = 0

        def zero_rec(k: int):
            if k == len(zero):
                finish()
                return
            i = zero[k]
            for e in (0, 1):
                exps[i] = e
                zero_rec(k + 1)
            exps[i] = 0

        def finish():
            q = sum(self.vars[i].degree.q * e for i, e in enumerate(exps))
            r = d.q - q
            if self._laurent is None:
                if r == 0:
                    out.append(tuple(exps))
                return
            w = self.vars[self._laurent].degree.q
            if r % w == 0:
                m = list(exps)
                m[self._laurent] = r // w
                out.append(tuple(m))

        if d.p >= 0:
            rec(0, d.p)
        out.sort(key=self.sort_key)
        return out

    def sort_key(self, m: Mono):
        return tuple(-m[i] for i in self._elim) + tuple(m)

    @property
    def period(self) -> int | None:
        """q-period of every bidegree piece (the Laurent weight), if any."""
        if self._laurent is None:
            return None
        return self.vars[self._laurent].degree.q

    def shift(self, m: Mono, k: int) -> Mono:
        m = list(m)
        m[self._laurent] += k
        return tuple(m)

    def mul_mono_terms(self, a: Mono, b: Mono) -> list[tuple[Mono, int]]:
        m, f = self.mul_mono(a, b)
        return [(m, f)]

    # ------------------------------------------------------------ display
    def mono_str(self, m: Mono) -> str:
        parts = []
        for n, e in zip(self.names, m):
            if e == 1:
                parts.append(n)
            elif e:
                parts.append(f"{n}^{e}")
        return "*".join(parts)

    def parse_mono(self, factors: Iterable[str]) -> Mono:
        m = [0] * self.nvars
        for f in factors:
            name, e = _parse_power(f)
            if name not in self.index:
                raise ValueError(f"unknown variable {name!r} in {self.name}")
            m[self.index[name]] += e
        return tuple(m)


class Poly:
    """Element of a PolyAlgebra: a dict from exponent tuples to integers."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: PolyAlgebra, terms: dict | None = None):
        self.alg = alg
        clean = {}
        for m, c in (terms or {}).items():
            m2, f = alg.reduce_mono(m)
            if not alg.valid(m2):
                raise ValueError(f"monomial {m2} is not in {alg.name}")
            clean[m2] = clean.get(m2, 0) + c * f
        out = {}
        for m, c in clean.items():
            if alg.order(m) == 2:
                c %= 2
            if c:
                out[m] = c
        self.terms = out

    # constructors
    @classmethod
    def const(cls, alg: PolyAlgebra, c: int = 1) -> "Poly":
        return cls(alg, {alg.one(): c})

    @classmethod
    def var(cls, alg: PolyAlgebra, name: str, power: int = 1) -> "Poly":
        m = [0] * alg.nvars
        m[alg.index[name]] = power
        return cls(alg, {tuple(m): 1})

    @classmethod
    def mono(cls, alg: PolyAlgebra, m: Mono, c: int = 1) -> "Poly":
        return cls(alg, {tuple(m): c})

    @classmethod
    def parse(cls, alg: PolyAlgebra, text: str) -> "Poly":
        terms: dict = {}
        for c, factors in _split_terms(text):
            m = alg.parse_mono(factors)
            terms[m] = terms.get(m, 0) + c
        return cls(alg, terms)

    # arithmetic
    def _check(self, other: "Poly"):
        if self.alg != other.alg:
            raise ValueError(f"algebra mismatch: {self.alg.name} vs {other.alg.name}")

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.alg, other)
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Poly(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.alg, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(self.alg, {m: c * other for m, c in self.terms.items()})
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(self.alg)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.alg, other)
        return isinstance(other, Poly) and self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # grading
    def degrees(self) -> set[BiDegree]:
        return {self.alg.degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> BiDegree:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError(f"not bihomogeneous: {self}")
        return next(iter(ds))

    def components(self) -> dict[BiDegree, "Poly"]:
        out: dict[BiDegree, dict] = {}
        for m, c in self.terms.items():
            out.setdefault(self.alg.degree(m), {})[m] = c
        return {d: Poly(self.alg, t) for d, t in sorted(out.items())}

    def exponent(self, name: str) -> set[int]:
        i = self.alg.index[name]
        return {m[i] for m in self.terms}

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kv: tuple(-x for x in kv[0]))
        return _join([_fmt_coeff(c, self.alg.mono_str(m)) for m, c in items])

    def __repr__(self):
        return f"Poly({self.alg.name}: {self})"


def poly_mul(a: Poly, b: Poly) -> Poly:
    a._check(b)
    alg = a.alg
    t: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            m, f = alg.mul_mono(m1, m2)
            t[m] = t.get(m, 0) + c1 * c2 * f
    return Poly(alg, t)


def _invert_monomial(x: Poly) -> Poly:
    if len(x.terms) != 1:
        raise ValueError(f"{x} is not invertible")
    (m, c), = x.terms.items()
    inv = tuple(-e for e in m)
    if c not in (1, -1) or not x.alg.valid(inv):
        raise ValueError(f"{x} is not invertible")
    return Poly(x.alg, {inv: c})


def substitute(x: Poly, target: PolyAlgebra, images: dict[str, Poly],
               coeff_map: Callable[[int], int] | None = None) -> Poly:
    """Ring map defined on variables; variables without an image must exist
    in the target under the same name."""
    out = Poly(target, {})
    cache: dict[tuple[str, int], Poly] = {}

    def power(name: str, e: int) -> Poly:
        key = (name, e)
        if key not in cache:
            if name in images:
                img = images[name]
                if e >= 0:
                    cache[key] = img ** e
                else:
                    cache[key] = _invert_monomial(img) ** (-e)
            else:
                m = [0] * target.nvars
                m[target.index[name]] = e
                cache[key] = Poly(target, {tuple(m): 1})
        return cache[key]

    for m, c in x.terms.items():
        term = Poly.const(target, coeff_map(c) if coeff_map else c)
        for name, e in zip(x.alg.names, m):
            if e:
                term = term * power(name, e)
        out = out + term
    return out


# --------------------------------------------------------- standard algebras

@lru_cache(maxsize=None)
def aleph_xi_h() -> PolyAlgebra:
    """aleph[xi, 1/xi, h], home of F_m."""
    return PolyAlgebra("aleph", [VarSpec.make("e", 1, 1), VarSpec.make("xi", 0, 1, True),
                                 VarSpec.make("h", 2, 1)], name="aleph[xi^±,h]")


@lru_cache(maxsize=None)
def bplus_h() -> PolyAlgebra:
    """Z[e,t][h] with 2e = 0, home of the bold f_m (no inverse of t)."""
    return PolyAlgebra("aleph", [VarSpec.make("e", 1, 1), VarSpec.make("t", 0, 2),
                                 VarSpec.make("h", 2, 1)], name="B+[h]")


@lru_cache(maxsize=None)
def a_h() -> PolyAlgebra:
    return PolyAlgebra("aleph", [VarSpec.make("e", 1, 1), VarSpec.make("t", 0, 2, True),
                                 VarSpec.make("h", 2, 1)], name="A[h]")


@lru_cache(maxsize=None)
def a_hx(n: int) -> PolyAlgebra:
    """A[h, x] with deg x = (n, -1); for n = 0 the rewrite x^2 -> 1/t is built in."""
    if n < 0:
        raise ValueError("n must be >= 0")
    rule = ("x", -1) if n == 0 else None
    return PolyAlgebra("aleph", [VarSpec.make("e", 1, 1), VarSpec.make("t", 0, 2, True),
                                 VarSpec.make("h", 2, 1), VarSpec.make("x", n, -1)],
                       name=f"A[h,x{n}]", square_rule=rule)


@lru_cache(maxsize=None)
def r_n(n: int) -> PolyAlgebra:
    """aleph[xi, 1/xi, h, x_n]."""
    return PolyAlgebra("aleph", [VarSpec.make("e", 1, 1), VarSpec.make("xi", 0, 1, True),
                                 VarSpec.make("h", 2, 1), VarSpec.make("x", n, -1)],
                       name=f"R_{n}")


@lru_cache(maxsize=None)
def f2_e_xi_h_x(n: int) -> PolyAlgebra:
    return PolyAlgebra("F2", [VarSpec.make("e", 1, 1), VarSpec.make("xi", 0, 1, True),
                              VarSpec.make("h", 2, 1), VarSpec.make("x", n, -1)],
                       name=f"F2[e,xi^±,h,x{n}]")


@lru_cache(maxsize=None)
def f2_w() -> PolyAlgebra:
    return PolyAlgebra("F2", [VarSpec.make("w1", 1, 0), VarSpec.make("w2", 2, 0)],
                       name="F2[w1,w2]")


@lru_cache(maxsize=None)
def f2_xi_w() -> PolyAlgebra:
    return PolyAlgebra("F2", [VarSpec.make("xi", 0, 1, True), VarSpec.make("w1", 1, 0),
                              VarSpec.make("w2", 2, 0)], name="F2[xi^±,w1,w2]")


@lru_cache(maxsize=None)
def f2_xi_w_wn(n: int) -> PolyAlgebra:
    return PolyAlgebra("F2", [VarSpec.make("xi", 0, 1, True), VarSpec.make("w1", 1, 0),
                              VarSpec.make("w2", 2, 0), VarSpec.make("wn", n, 0)],
                       name=f"F2[xi^±,w1,w2,wn{n}]")


@lru_cache(maxsize=None)
def chow_poly(n: int, laurent: bool = False) -> PolyAlgebra:
    """Z[h, phi] (or Z[xi^±][h, phi]) with deg h = (2,1), deg phi = (2m, m)."""
    m = (n + 1) // 2
    vs = [VarSpec.make("h", 2, 1), VarSpec.make("phi", 2 * m, m)]
    if laurent:
        vs = [VarSpec.make("xi", 0, 1, True)] + vs
    return PolyAlgebra("Z", vs, name=f"Z{'[xi^±]' if laurent else ''}[h,phi]_{n}")


@lru_cache(maxsize=None)
def z_t_h(n: int | None = None) -> PolyAlgebra:
    """Z[t^±, h] or, for even n, Z[t^±, h, chi] with deg chi = (n, -1)."""
    vs = [VarSpec.make("t", 0, 2, True), VarSpec.make("h", 2, 1)]
    if n is not None:
        vs.append(VarSpec.make("chi", n, -1))
    return PolyAlgebra("Z", vs, name="Z[t^±,h" + (",chi]" if n is not None else "]"))


# ----------------------------------------------------------- polynomial families

@lru_cache(maxsize=None)
def big_f(m: int) -> Poly:
    """F_m by the recursion F_{m+1} = e F_m + (xi h) F_{m-1}, F_{-1} = 0."""
    alg = aleph_xi_h()
    if m < -1:
        raise ValueError("F_m is defined for m >= -1")
    if m == -1:
        return Poly(alg, {})
    if m == 0:
        return Poly.const(alg)
    e = Poly.var(alg, "e")
    xih = Poly.parse(alg, "xi*h")
    return e * big_f(m - 1) + xih * big_f(m - 2)


def big_f_closed(m: int) -> Poly:
    """Sum over a + 2b = m of C(a+b, b) e^a xi^b h^b."""
    alg = aleph_xi_h()
    terms = {}
    for b in range(m // 2 + 1):
        a = m - 2 * b
        terms[(a, b, b)] = comb(a + b, b)
    return Poly(alg, terms)


@lru_cache(maxsize=None)
def f_bold(m: int) -> Poly:
    """Sum over a + 2b = m of C(a+b, b) e^(2a+1) t^b h^(2b); f_{-1} = 0."""
    alg = bplus_h()
    if m < -1:
        raise ValueError("f_m is defined for m >= -1")
    terms = {}
    for b in range(m // 2 + 1 if m >= 0 else 0):
        a = m - 2 * b
        terms[(2 * a + 1, b, 2 * b)] = comb(a + b, b)
    return Poly(alg, terms)


@lru_cache(maxsize=None)
def f_bar(n: int) -> Poly:
    """f_0 = 1, f_1 = w1, f_{n+1} = w1 f_n + w2 f_{n-1} over F2."""
    alg = f2_w()
    if n < -1:
        raise ValueError("f_bar is defined for n >= -1")
    if n == -1:
        return Poly(alg, {})
    if n == 0:
        return Poly.const(alg)
    return Poly.var(alg, "w1") * f_bar(n - 1) + Poly.var(alg, "w2") * f_bar(n - 2)


def embed(x: Poly, target: PolyAlgebra) -> Poly:
    """Move a polynomial into an algebra containing all its variables."""
    idx = []
    for name in x.alg.names:
        idx.append(target.index.get(name))
    terms = {}
    for m, c in x.terms.items():
        t = [0] * target.nvars
        for i, e in zip(idx, m):
            if e:
                if i is None:
                    raise ValueError(f"{target.name} lacks a variable of {x.alg.name}")
                t[i] = e
        terms[tuple(t)] = c
    return Poly(target, terms)


def xi_squared_to_t(x: Poly, target: PolyAlgebra) -> Poly:
    """Image of an even-xi polynomial under xi^2 -> t."""
    i = x.alg.index["xi"]
    terms = {}
    for m, c in x.terms.items():
        if m[i] % 2:
            raise ValueError("odd xi power has no image under xi^2 -> t")
        t = [0] * target.nvars
        for name, e in zip(x.alg.names, m):
            if name == "xi":
                t[target.index["t"]] = e // 2
            elif e:
                t[target.index[name]] = e
        terms[tuple(t)] = c
    return Poly(target, terms)


# ------------------------------------------------------------- verification

def _series_mul(a: list[Poly], b: list[Poly], order: int) -> list[Poly]:
    alg = a[0].alg
    out = [Poly(alg, {}) for _ in range(order + 1)]
    for i, x in enumerate(a[:order + 1]):
        if not x:
            continue
        for j, y in enumerate(b[:order + 1 - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def generating_function_check(order: int) -> dict:
    """G = 1/(1-p), H = 1/(1-p^2) and G = (1+p) H through y^order."""
    alg = aleph_xi_h()
    zero = Poly(alg, {})
    one = Poly.const(alg)
    G = [big_f(k) for k in range(order + 1)]
    H = [big_f(k // 2) ** 2 if k % 2 == 0 else zero for k in range(order + 1)]
    p = [zero] * (order + 1)
    if order >= 1:
        p[1] = Poly.var(alg, "e")
    if order >= 2:
        p[2] = Poly.parse(alg, "xi*h")
    one_minus_p = [one] + [-c for c in p[1:]]
    p2 = _series_mul(p, p, order)
    one_minus_p2 = [one - p2[0]] + [-c for c in p2[1:]]
    unit = [one] + [zero] * order
    rhs = _series_mul([one + p[0]] + p[1:], H, order)
    return {
        "G*(1-p) = 1": _series_mul(G, one_minus_p, order) == unit,
        "H*(1-p^2) = 1": _series_mul(H, one_minus_p2, order) == unit,
        "G = (1+p)*H": rhs == G,
    }


def verify_lemma_id(m_max: int, series_order: int | None = None) -> dict:
    """Check the F, bold f and f_bar identities for every index up to m_max."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    series_order = m_max if series_order is None else series_order
    e = Poly.var(aleph_xi_h(), "e")
    xih = Poly.parse(aleph_xi_h(), "xi*h")
    w1 = Poly.var(f2_w(), "w1")
    w2 = Poly.var(f2_w(), "w2")
    failing: dict[str, list[int]] = {k: [] for k in (
        "closed_form", "odd_square", "even_square", "bold_f_image",
        "bold_f_degree", "fbar_odd", "fbar_even", "fbar_degree")}
    for m in range(0, m_max + 1):
        if big_f(m) != big_f_closed(m):
            failing["closed_form"].append(m)
        if big_f(2 * m + 1) != e * big_f(m) ** 2:
            failing["odd_square"].append(m)
        if big_f(2 * m) != big_f(m) ** 2 + xih * big_f(m - 1) ** 2:
            failing["even_square"].append(m)
        if xi_squared_to_t(big_f(2 * m + 1), bplus_h()) != f_bold(m):
            failing["bold_f_image"].append(m)
        if f_bold(m) and f_bold(m).degree() != BiDegree(2 * m + 1, 2 * m + 1):
            failing["bold_f_degree"].append(m)
        if f_bar(2 * m + 1) != w1 * f_bar(m) ** 2:
            failing["fbar_odd"].append(m)
        if f_bar(2 * m) != f_bar(m) ** 2 + w2 * f_bar(m - 1) ** 2:
            failing["fbar_even"].append(m)
        if f_bar(m) and f_bar(m).degree() != BiDegree(m, 0):
            failing["fbar_degree"].append(m)
    series = generating_function_check(series_order)
    ok = not any(failing.values()) and all(series.values())
    return {"m_max": m_max, "series_order": series_order, "failing": failing,
            "series": series, "ok": ok}
