"""Cohomology rings of real quadrics Q_{n,s} (dimension n, Witt index s).

Two independent routes to the groups:

* the additive model: copies of B on h^j and eta*h^j for j < s, plus the
  interior ring A[h,x]/J_{n-2s} pushed in by j_dagger (shift (2s, s));
  products come from the explicit structure constants;
* the presentation: the polynomial ring over B_s with the exterior class
  eta, modulo the Witt-index ideal, computed per bidegree.

``verify_theorem_a`` maps the presentation onto the model and checks that
the kernel is exactly the ideal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from .bigraded_core import BiDegree, FgAbGroup, IntLattice, lattice_intersect, preimage
from .coeff_rings import (BElem, _fmt_coeff, _join, b_mono_mul, b_mono_str, b_mono_to_a,
                          b_monomial_at, b_order, b_to_a)
from .ideals import (BidegreeWindow, Ideal, _sign, _span_rows, ambient, element_from_vector,
                     ideal_equal, i_odd, j, j_generators, jbar, normal_form, pfister,
                     pfister_literal_generators, quotient_at, theorem_a_generators,
                     free_quotient_ideal, group_at, to_vector)
from .poly import Poly, a_h, a_hx, embed, f_bold, f2_xi_w, z_t_h


def _split(n: int) -> tuple[int, int]:
    m = (n + 1) // 2
    return m, 2 * m - n


def _check(n: int, s: int) -> None:
    if not (isinstance(n, int) and isinstance(s, int)) or n < 1 or s < 0 or 2 * s > n:
        raise ValueError(f"need n >= 1 and 0 <= 2s <= n, got n={n}, s={s}")


H_DEG = BiDegree(2, 1)


def eta_degree(n: int, s: int) -> BiDegree:
    return BiDegree(2 * (n - s + 1), n - s + 1)


# ------------------------------------------------------------ presentations

@dataclass(frozen=True)
class Presentation:
    base: str
    generators: tuple[tuple[str, tuple[int, int]], ...]
    relations: tuple[str, ...]
    note: str = ""

    def __str__(self):
        gens = ",".join(g for g, _ in self.generators)
        ring = f"{self.base}[{gens}]" if gens else self.base
        return f"{ring}/({', '.join(self.relations)})" if self.relations else ring

    def to_json(self) -> dict:
        return {"base": self.base,
                "generators": [{"name": g, "degree": list(d)} for g, d in self.generators],
                "relations": list(self.relations), "text": str(self), "note": self.note}


def presentation(n: int, s: int) -> Presentation:
    _check(n, s)
    m, delta = _split(n)
    if s == 0:
        if delta:
            gens = i_odd(m).generators
            return Presentation("A", (("h", (2, 1)),), tuple(str(g) for g in gens))
        g = j_generators(n)
        # printed order: f_m, the e-x relation, hx, the top relation
        return Presentation("A", (("h", (2, 1)), ("x", (n, -1))),
                            tuple(str(r) for r in (g[1], g[0], g[2], g[3])))
    hs = "h" if s == 1 else f"h^{s}"
    mm = m - s
    g = [str(x) for x in theorem_a_generators(n, s)[:3]]
    # written out by hand: for n = 2s the algebra rewrites x^2 and g4 would print as 0
    t_part = "t" if mm == 0 else f"t^{mm + 1}"
    sign = "-" if (1 - delta) * _sign(mm) > 0 else "+"
    g.append(f"h^{2 * mm} {sign} {t_part}*x^2" if delta == 0 else f"h^{2 * mm}")
    if delta == 0 and mm == 0:
        g[3] = f"1 {sign} t*x^2"
    rels = [f"{hs}*({x})" for x in g]
    rels.append(f"{hs}*(t*y - 1)")
    rels.append(f"{hs}*eta")
    top = n - s + 1
    rels.append(f"h^{top} - 2*eta")
    ed = eta_degree(n, s)
    return Presentation(
        f"B_{s}", (("h", (2, 1)), ("x", (n - 2 * s, -1)), ("y", (0, -2)),
                   ("eta", (ed.p, ed.q))),
        tuple(rels), note="exterior in eta; relations times h^s range over the whole ideal")


# ----------------------------------------------------------- additive model

class ModelElem:
    """Element of the additive model: B-coefficients on h^j and eta*h^j
    (j < s) plus an interior normal form."""

    __slots__ = ("model", "power", "eta", "interior")

    def __init__(self, model: "AdditiveModel", power=None, eta=None, interior=None):
        self.model = model
        s = model.s
        self.power = tuple(power) if power is not None else (BElem(),) * s
        self.eta = tuple(eta) if eta is not None else (BElem(),) * s
        self.interior = interior if interior is not None else Poly(model.alg, {})

    def __add__(self, other: "ModelElem") -> "ModelElem":
        self.model._same(other)
        return ModelElem(self.model, [a + b for a, b in zip(self.power, other.power)],
                         [a + b for a, b in zip(self.eta, other.eta)],
                         self.interior + other.interior)

    def __neg__(self):
        return ModelElem(self.model, [-a for a in self.power], [-a for a in self.eta],
                         -self.interior)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return self.model.mul(self, other)

    def __eq__(self, other):
        return (isinstance(other, ModelElem) and self.model.key == other.model.key
                and self.power == other.power and self.eta == other.eta
                and self.interior == other.interior)

    def __hash__(self):
        return hash((self.model.key, self.power, self.eta, self.interior))

    def is_zero(self) -> bool:
        return not any(self.power) and not any(self.eta) and not self.interior

    def __bool__(self):
        return not self.is_zero()

    def degrees(self) -> set[BiDegree]:
        md = self.model
        out = set()
        for jj, b in enumerate(self.power):
            out |= {x + H_DEG * jj for x in b.degrees()}
        for jj, b in enumerate(self.eta):
            out |= {x + H_DEG * jj + md.eta_deg for x in b.degrees()}
        out |= {x + md.shift for x in self.interior.degrees()}
        return out

    def __str__(self):
        parts = []
        for label, coeffs in (("", self.power), ("eta", self.eta)):
            for jj, b in enumerate(coeffs):
                cls = "*".join(x for x in (label, _h_label(jj)) if x)
                for key, c in b.terms:
                    parts.append(_fmt_coeff(c, "*".join(x for x in (b_mono_str(key), cls) if x)))
        alg = self.model.alg
        for mono, c in sorted(self.interior.terms.items(), key=lambda kv: alg.sort_key(kv[0])):
            parts.append(_fmt_coeff(c, "int:" + (alg.mono_str(mono) or "1")))
        return _join(parts)

    __repr__ = __str__


def _h_label(jj: int) -> str:
    return "" if jj == 0 else ("h" if jj == 1 else f"h^{jj}")


@dataclass(frozen=True)
class BasisClass:
    """One generator of a bidegree piece: a B-monomial on h^j or eta*h^j,
    or an interior normal form."""
    kind: str            # "PowerH", "EtaH" or "Interior"
    index: int | None
    label: str
    order: int           # 0 for Z, 2 for Z/2

    def __str__(self):
        return self.label


class AdditiveModel:
    def __init__(self, n: int, s: int):
        _check(n, s)
        self.n, self.s = n, s
        self.inner = n - 2 * s
        self.alg = a_hx(self.inner)
        self.ideal = j(self.inner)
        self.shift = H_DEG * s
        self.eta_deg = eta_degree(n, s)
        self.key = (n, s)

    def _same(self, other: ModelElem):
        if other.model.key != self.key:
            raise ValueError(f"classes of Q_{other.model.key} and Q_{self.key} do not multiply")

    # -- constructors
    def zero(self) -> ModelElem:
        return ModelElem(self)

    def _slot(self, which: str, jj: int, b: BElem) -> ModelElem:
        z = [BElem()] * self.s
        z[jj] = b
        return ModelElem(self, power=z) if which == "power" else ModelElem(self, eta=z)

    def interior(self, P: Poly) -> ModelElem:
        """j_dagger of an interior polynomial, stored in normal form."""
        if P.alg != self.alg:
            P = embed(P, self.alg)
        return ModelElem(self, interior=normal_form(P, self.ideal))

    def one(self) -> ModelElem:
        return self.power_h(0)

    def power_h(self, k: int) -> ModelElem:
        if k < 0:
            raise ValueError("negative power of h")
        if k < self.s:
            return self._slot("power", k, BElem.one())
        if self.s == 0:
            return self.interior(Poly.var(self.alg, "h", k))
        return self.h_times_interior(k - self.s, Poly.const(self.alg))

    def eta(self) -> ModelElem:
        if self.s == 0:
            raise ValueError("eta is not a class when s = 0")
        return self._slot("eta", 0, BElem.one())

    def _a_poly(self, b: BElem) -> Poly:
        return Poly(self.alg, {(a, t, 0, 0): c for (a, t), c in b_to_a(b).terms})

    def scale(self, b: BElem, x: ModelElem) -> ModelElem:
        """Action of the point ring; it reaches the interior through A."""
        return ModelElem(self, [b * c for c in x.power], [b * c for c in x.eta],
                         normal_form(self._a_poly(b) * x.interior, self.ideal)
                         if x.interior else None)

    # -- structure constants
    def h_times_interior(self, r: int, P: Poly) -> ModelElem:
        """h^r * j_dagger(P), s >= 1, by the three-range rule on each term of
        the normal form of P."""
        if r == 0 or self.s == 0:
            return self.interior(Poly.var(self.alg, "h", r) * P)
        P = normal_form(P, self.ideal)
        inner, top = self.inner, self.n - self.s
        keep: dict = {}
        eta = [dict() for _ in range(self.s)]
        for (a, b, rp, k), c in P.terms.items():
            if k:
                continue  # h times j_dagger(x-class) vanishes
            R = r + rp
            if R <= inner:
                keep[(a, b, R, 0)] = keep.get((a, b, R, 0), 0) + c
            elif R <= top and a == 0:
                # 2 t^b as an element of B: t^b * 2, or t^-(j+1) * 2 = t^-j alpha
                key, f = (("P", 0, b), 2) if b >= 0 else (("A", -b - 1), 1)
                slot = eta[R - 1 - inner]
                slot[key] = slot.get(key, 0) + f * c
        out = self.interior(Poly(self.alg, keep))
        return out + ModelElem(self, eta=[BElem.from_dict(d) for d in eta])

    def _interior_product(self, P: Poly, Q: Poly) -> ModelElem:
        if self.s == 0:
            return self.interior(P * Q)
        out = self.zero()
        for (a1, b1, r1, k1), c1 in P.terms.items():
            for (a2, b2, r2, k2), c2 in Q.terms.items():
                if k1 or k2:
                    continue  # products with j_dagger(x-classes) vanish
                coeff = Poly(self.alg, {(a1 + a2, b1 + b2, 0, 0): c1 * c2})
                out = out + self.h_times_interior(self.s + r1 + r2, coeff)
        return out

    def mul(self, x: ModelElem, y: ModelElem) -> ModelElem:
        self._same(x)
        self._same(y)
        s = self.s
        out = self.zero()
        for i, bx in enumerate(x.power):
            if not bx:
                continue
            for jj, by in enumerate(y.power):
                if by:
                    out = out + self.scale(bx * by, self.power_h(i + jj))
            for jj, by in enumerate(y.eta):
                if by and i + jj < s:
                    out = out + self._slot("eta", i + jj, bx * by)
            if y.interior:
                out = out + self.scale(bx, self.h_times_interior(i, y.interior))
        for jj, by in enumerate(y.power):
            if not by:
                continue
            for i, bx in enumerate(x.eta):
                if bx and i + jj < s:
                    out = out + self._slot("eta", i + jj, bx * by)
            if x.interior:
                out = out + self.scale(by, self.h_times_interior(jj, x.interior))
        # eta * eta and eta * j_dagger(anything) vanish
        if x.interior and y.interior:
            out = out + self._interior_product(x.interior, y.interior)
        return out

    # -- groups and coordinates
    def _slots(self, d: BiDegree):
        out = []
        for which, base in (("power", d), ("eta", d - self.eta_deg)):
            for jj in range(self.s):
                key = b_monomial_at(base - H_DEG * jj)
                if key is not None:
                    out.append((which, jj, key))
        return out

    def piece(self, d):
        return quotient_at(self.alg, self.ideal, BiDegree.of(d) - self.shift)

    def group(self, d) -> FgAbGroup:
        d = BiDegree.of(d)
        g = FgAbGroup(0)
        for _, _, key in self._slots(d):
            g = g + (FgAbGroup(0, (2,)) if b_order(key) == 2 else FgAbGroup(1))
        return g + self.piece(d).group

    def orders(self, d) -> list[int]:
        d = BiDegree.of(d)
        return [b_order(k) for _, _, k in self._slots(d)] + self.piece(d).orders

    def coords(self, x: ModelElem, d) -> list[int]:
        """Coordinates of the degree-d part of x (torsion entries reduced)."""
        d = BiDegree.of(d)
        v = []
        for which, jj, key in self._slots(d):
            c = (x.power if which == "power" else x.eta)[jj].as_dict().get(key, 0)
            v.append(c % 2 if b_order(key) == 2 else c)
        comp = x.interior.components().get(d - self.shift)
        piece = self.piece(d)
        v += piece.element_coords(comp.terms) if comp is not None else [0] * len(piece.orders)
        return v

    def basis(self, d) -> list[BasisClass]:
        d = BiDegree.of(d)
        out = []
        for which, jj, key in self._slots(d):
            cls = "*".join(x for x in ("eta" if which == "eta" else "", _h_label(jj)) if x)
            label = "*".join(x for x in (b_mono_str(key), cls) if x) or "1"
            out.append(BasisClass("PowerH" if which == "power" else "EtaH", jj, label,
                                  b_order(key)))
        piece = self.piece(d)
        for rep, o in zip(piece.representatives, piece.orders):
            P = element_from_vector(self.alg, piece.monomials, rep)
            out.append(BasisClass("Interior", None, f"int:{P}", o))
        return out

    # -- text
    def parse(self, text: str) -> ModelElem:
        text = text.replace(" ", "")
        out = self.zero()
        for tok in re.split(r"(?<![\^:+-])(?=[+-])", text):
            if not tok:
                continue
            sign = 1
            while tok and tok[0] in "+-":
                sign = -sign if tok[0] == "-" else sign
                tok = tok[1:]
            if tok in ("", "0"):
                continue
            out = out + self._parse_term(tok, sign)
        return out

    def _parse_term(self, tok: str, sign: int) -> ModelElem:
        if "int:" in tok or self.s == 0:
            pre, _, body = tok.rpartition("int:") if "int:" in tok else ("", "", tok)
            coeff = sign
            for f in pre.split("*"):
                if f:
                    if not f.isdigit():
                        raise ValueError(f"bad coefficient {pre!r} before int:")
                    coeff *= int(f)
            return self.interior(Poly.parse(self.alg, body) * coeff)
        hk = ek = 0
        coeff = []
        for f in tok.split("*"):
            m = re.fullmatch(r"(h|eta)(?:\^(\d+))?", f)
            if m:
                k = int(m.group(2) or 1)
                if m.group(1) == "h":
                    hk += k
                else:
                    ek += k
            elif f == "x" or f.startswith("x^"):
                raise ValueError("x is not a class here; write int:x for j_dagger(x)")
            else:
                coeff.append(f)
        b = BElem.parse("*".join(coeff) or "1").scale(sign)
        if ek >= 2:
            return self.zero()
        base = self.power_h(hk)
        if ek:
            base = self.mul(self.eta(), base)
        return self.scale(b, base)


@lru_cache(maxsize=None)
def model(n: int, s: int) -> AdditiveModel:
    return AdditiveModel(n, s)


@lru_cache(maxsize=None)
def cohomology_group(n: int, s: int, p: int, q: int) -> FgAbGroup:
    return model(n, s).group((p, q))


def multiply(n: int, s: int, a, b) -> ModelElem:
    """Product of two classes (ModelElem or class strings) of Q_{n,s}."""
    md = model(n, s)
    x = md.parse(a) if isinstance(a, str) else a
    y = md.parse(b) if isinstance(b, str) else b
    return md.mul(x, y)


@dataclass(frozen=True)
class QuadricRing:
    n: int
    s: int

    def __post_init__(self):
        _check(self.n, self.s)

    @property
    def presentation(self) -> Presentation:
        return presentation(self.n, self.s)

    @property
    def degrees(self) -> dict:
        ed = eta_degree(self.n, self.s)
        return {"h": (2, 1), "x": (self.n - 2 * self.s, -1), "y": (0, -2),
                "eta": (ed.p, ed.q)}

    def group(self, p: int, q: int) -> FgAbGroup:
        return cohomology_group(self.n, self.s, p, q)

    def basis(self, p: int, q: int) -> list[BasisClass]:
        return model(self.n, self.s).basis((p, q))

    def multiply(self, a, b) -> ModelElem:
        return multiply(self.n, self.s, a, b)


# ------------------------------------------------- the presentation side

class IsotropicAlgebra:
    """B_s[h,x,y] (x) Lambda(eta) after the rewrite y = 1/t under h^s.

    Monomials: ``('L', j, key, e)`` for b * h^j * eta^e with j < s and b a
    point-ring monomial; ``('H', m, e)`` for h^s * m * eta^e with m a
    monomial of A[h, x] (x of degree (n - 2s, -1)).
    """

    def __init__(self, n: int, s: int):
        _check(n, s)
        self.n, self.s = n, s
        self.inner_alg = a_hx(n - 2 * s)
        self.shift = H_DEG * s
        self.eta_deg = eta_degree(n, s)
        self.name = f"R'_{n},{s}"
        self._cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, IsotropicAlgebra) and (self.n, self.s) == (other.n, other.s)

    def __hash__(self):
        return hash(("iso", self.n, self.s))

    def degree(self, m) -> BiDegree:
        if m[0] == "L":
            _, jj, key, e = m
            from .coeff_rings import b_degree
            return b_degree(key) + H_DEG * jj + self.eta_deg * e
        _, mono, e = m
        return self.inner_alg.degree(mono) + self.shift + self.eta_deg * e

    def order(self, m) -> int:
        if m[0] == "L":
            return b_order(m[2])
        return self.inner_alg.order(m[1])

    def monomials(self, d) -> list:
        d = BiDegree.of(d)
        hit = self._cache.get(d)
        if hit is not None:
            return hit
        out = []
        for e in (0, 1):
            for jj in range(self.s):
                key = b_monomial_at(d - H_DEG * jj - self.eta_deg * e)
                if key is not None:
                    out.append(("L", jj, key, e))
        for e in (0, 1):
            for mono in self.inner_alg.monomials(d - self.shift - self.eta_deg * e):
                out.append(("H", mono, e))
        self._cache[d] = out
        return out

    def _h(self, mono, f: int, e: int):
        m, f2 = self.inner_alg.reduce_mono(mono)
        return [(("H", m, e), f * f2)]

    def mul_mono_terms(self, a, b) -> list:
        ea, eb = a[-1], b[-1]
        if ea and eb:
            return []
        e = ea + eb
        if a[0] == "H" and b[0] == "L":
            a, b = b, a
        if a[0] == "L" and b[0] == "L":
            r = b_mono_mul(a[2], b[2])
            if r is None:
                return []
            key, f = r
            jj = a[1] + b[1]
            if jj < self.s:
                return [(("L", jj, key, e), f)]
            ra = b_mono_to_a(key)
            if ra is None:
                return []
            (x, t), f2 = ra
            return self._h((x, t, jj - self.s, 0), f * f2, e)
        if a[0] == "L":
            ra = b_mono_to_a(a[2])
            if ra is None:
                return []
            (x, t), f = ra
            m, f2 = self.inner_alg.mul_mono(b[1], (x, t, a[1], 0))
            return [(("H", m, e), f * f2)]
        m, f = self.inner_alg.mul_mono(a[1], b[1])
        m, f2 = self.inner_alg.mul_mono(m, (0, 0, self.s, 0))
        return [(("H", m, e), f * f2)]

    def eta(self):
        return ("L", 0, ("P", 0, 0), 1) if self.s else ("H", self.inner_alg.one(), 1)

    def top_h(self):
        """h^(n-s+1), always past h^s."""
        return ("H", (0, 0, self.n - 2 * self.s + 1, 0), 0)


def _times_gens_family(R: IsotropicAlgebra, gens: list[Poly]):
    """h^s * g * (every monomial of A[h, x]): the whole ideal h^s <g>."""
    inner = R.inner_alg

    def fam(d: BiDegree) -> list[dict]:
        out = []
        for g in gens:
            for u in inner.monomials(d - R.shift - g.degree()):
                t: dict = {}
                for mono, c in g.terms.items():
                    for m2, f in inner.mul_mono_terms(u, mono):
                        t[("H", m2, 0)] = t.get(("H", m2, 0), 0) + c * f
                out.append(t)
        return out
    return fam


def _low_part_family(R: IsotropicAlgebra, J: Ideal):
    """Ideal of B_s (x) Lambda generated by h^s P, P in J of h-degree <= n - 2s.

    The low part of each piece of J is an A-module, so the multipliers that
    matter are h^j (any j) and h^(s+r) x^k.
    """
    inner = R.inner_alg
    top = R.n - 2 * R.s
    hi = inner.index["h"]
    low_cache: dict = {}

    def low(d: BiDegree) -> list[list[int]]:
        hit = low_cache.get(d)
        if hit is None:
            monos = ambient(inner, d)
            k = len(monos)
            coord = IntLattice(k, [[int(i == c) for i in range(k)]
                                   for c, m in enumerate(monos) if m[hi] <= top])
            hit = lattice_intersect(IntLattice(k, _span_rows(J, d)), coord).basis()
            low_cache[d] = hit
        return hit

    def multipliers(p_max: int):
        xp = inner.vars[inner.index["x"]].degree.p
        for jj in range(p_max // 2 + 1):
            k_max = 0 if jj < R.s else (1 if xp == 0 else (p_max - 2 * jj) // xp)
            for k in range(k_max + 1):
                yield (0, 0, jj, k)

    def fam(d: BiDegree) -> list[dict]:
        out = []
        base = d - R.shift
        if base.p < 0:
            return out
        for u in multipliers(base.p):
            src = base - inner.degree(u)
            rows = low(src)
            if not rows:
                continue
            monos = ambient(inner, src)
            for row in rows:
                t: dict = {}
                for mono, c in zip(monos, row):
                    if c:
                        m2, f = inner.mul_mono(u, mono)
                        t[("H", m2, 0)] = t.get(("H", m2, 0), 0) + c * f
                out.append(t)
        return out
    return fam


def _multiples_family(R: IsotropicAlgebra, elem: dict):
    """Every monomial multiple of one homogeneous element of R'."""
    deg = R.degree(next(iter(elem)))

    def fam(d: BiDegree) -> list[dict]:
        out = []
        for u in R.monomials(d - deg):
            t: dict = {}
            for m, c in elem.items():
                for m2, f in R.mul_mono_terms(u, m):
                    t[m2] = t.get(m2, 0) + c * f
            out.append(t)
        return out
    return fam


def _x_top_family(R: IsotropicAlgebra):
    """h^s * h^r x^k e^a t^b with r > n - 2s and k >= 1: x-multiples beyond
    the low range.  Together with the other families this set is closed
    under multiplication by R' (for n = 2s, x^2 = 1/t pushes the h-power to
    at least n + 1, where the top relation already applies)."""
    top = R.n - 2 * R.s

    def fam(d: BiDegree) -> list[dict]:
        return [{m: 1} for m in R.monomials(d)
                if m[0] == "H" and not m[2] and m[1][2] > top and m[1][3] >= 1]
    return fam


def _twisted_top_family(R: IsotropicAlgebra):
    """h^(n-s+1) t^b - (2 t^b) eta for b < 0, where 2 t^b is the point-ring
    class alpha/t^(-b-1); only multiples by h^j * (point-ring monomial not
    divisible by t) are new."""
    top = R.n - R.s + 1

    def rel(b: int) -> dict:
        return {("H", (0, b, R.n - 2 * R.s + 1, 0), 0): 1, ("L", 0, ("A", -b - 1), 1): -1}

    def fam(d: BiDegree) -> list[dict]:
        out = []
        if R.s == 0:
            return out
        b_min = -((-(d.q - d.p + top)) // 2)
        for b in range(-1, b_min - 1, -1):
            r = rel(b)
            for u in R.monomials(d - R.degree(next(iter(r)))):
                if u[0] == "H" or (u[2][0] == "P" and u[2][2] > 0):
                    continue
                t: dict = {}
                for m, c in r.items():
                    for m2, f in R.mul_mono_terms(u, m):
                        t[m2] = t.get(m2, 0) + c * f
                out.append(t)
        return out
    return fam


def _eta_family(R: IsotropicAlgebra):
    def fam(d: BiDegree) -> list[dict]:
        return [{m: 1} for m in R.monomials(d) if m[0] == "H" and m[2] == 1]
    return fam


def _top_relation(R: IsotropicAlgebra) -> dict:
    t = {R.top_h(): 1}
    t[R.eta()] = t.get(R.eta(), 0) - 2
    return t


@lru_cache(maxsize=None)
def isotropic_algebra(n: int, s: int) -> IsotropicAlgebra:
    return IsotropicAlgebra(n, s)


READINGS = ("low", "literal")


@lru_cache(maxsize=None)
def script_i(n: int, s: int, reading: str = "low", literal_g4: bool = False) -> Ideal:
    """The Witt-index ideal inside ``isotropic_algebra(n, s)``.

    ``reading="low"`` takes the h^s-multiples of interior relations of
    h-degree at most n - 2s (plus h^(s+1) x); ``reading="literal"`` takes
    h^s times the whole interior ideal, which also contains h^(n-s+1).
    Both add h^s * eta and h^(n-s+1) - 2 eta.
    """
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    R = isotropic_algebra(n, s)
    inner = R.inner_alg
    gens = [g for g in theorem_a_generators(n, s, literal_g4=literal_g4) if g.terms]
    # the odd-dimensional literal g4 is inhomogeneous; use its components
    gens = [c for g in gens for c in g.components().values()]
    if reading == "literal":
        fams = [_times_gens_family(R, gens)]
    else:
        J = Ideal(inner, gens, name="interior")
        fams = [_low_part_family(R, J),
                _x_top_family(R)]
    fams += [_eta_family(R), _multiples_family(R, _top_relation(R)), _twisted_top_family(R)]
    return Ideal(R, (), name=f"I_{n},{s}[{reading}]" + ("_g4" if literal_g4 else ""),
                 families=fams, periodic=False)


def psi(n: int, s: int, m, literal_table: bool = False) -> ModelElem:
    """Image of a presentation monomial in the additive model.

    h^(s+r) * P with P = e^a t^b x^k goes to j_dagger(normal form of h^r P)
    while r <= n - 2s; above that only x-free terms survive, through
    h^(n-s+1) = 2 eta.  ``literal_table`` additionally sends every
    h^(s+r) x^k with kr != 0 or k > 1 to 0.
    """
    md = model(n, s)
    if m[0] == "L":
        _, jj, key, e = m
        return md._slot("eta" if e else "power", jj, BElem.mono(key))
    _, (a, b, r, k), e = m
    if e:
        return md.zero()
    if md.s == 0:
        return md.interior(Poly(md.alg, {(a, b, r, k): 1}))
    if literal_table and (k > 1 or (k and r)):
        return md.zero()
    if r <= n - 2 * s:
        return md.interior(Poly(md.alg, {(a, b, r, k): 1}))
    return md.h_times_interior(r, Poly(md.alg, {(a, b, 0, k): 1}))


def _psi_terms(n, s, terms: dict, literal_table=False) -> ModelElem:
    md = model(n, s)
    out = md.zero()
    for m, c in terms.items():
        if c:
            x = psi(n, s, m, literal_table)
            out = out + (md.scale(BElem.integer(c), x) if c != 1 else x)
    return out


def generator_terms(n: int, s: int) -> list[tuple[str, dict]]:
    """The printed generators h^s g_i, h^s eta and h^(n-s+1) - 2 eta as
    term dicts of the presentation algebra."""
    R = isotropic_algebra(n, s)
    hs = "" if s == 0 else ("h*" if s == 1 else f"h^{s}*")
    out = []
    for i, g in enumerate(theorem_a_generators(n, s), start=1):
        if g.terms:
            out.append((f"{hs}g{i}", {("H", m, 0): c for m, c in g.terms.items()}))
    out.append(((hs or "1*") + "eta", {("H", R.inner_alg.one(), 1): 1}))
    out.append((f"h^{n - s + 1} - 2*eta", _top_relation(R)))
    return out


@dataclass
class TheoremAReport:
    n: int
    s: int
    window: str
    generators_die: bool = True
    surviving_generators: dict = field(default_factory=dict)
    groups_match: bool = True
    kernel_matches: bool = True
    surjective: bool = True
    mismatches: list = field(default_factory=list)
    literal_reading_groups_match: bool | None = None
    literal_reading_first_mismatch: dict | None = None
    literal_table_generators_die: bool | None = None
    literal_g4_groups_match: bool | None = None
    checked: int = 0

    @property
    def ok(self) -> bool:
        return self.groups_match and self.kernel_matches and self.surjective

    def to_json(self) -> dict:
        return {"n": self.n, "s": self.s, "window": self.window, "ok": self.ok,
                "generators_die": self.generators_die,
                "surviving_generators": self.surviving_generators,
                "groups_match": self.groups_match, "kernel_matches": self.kernel_matches,
                "surjective": self.surjective, "mismatches": self.mismatches[:20],
                "literal_reading_groups_match": self.literal_reading_groups_match,
                "literal_reading_first_mismatch": self.literal_reading_first_mismatch,
                "literal_table_generators_die": self.literal_table_generators_die,
                "literal_g4_groups_match": self.literal_g4_groups_match,
                "checked": self.checked}


def default_theorem_a_window(n: int) -> BidegreeWindow:
    return BidegreeWindow(0, 2 * n, -n - 2, n + 2)


def presentation_group(n: int, s: int, d, reading: str = "low",
                       literal_g4: bool = False) -> FgAbGroup:
    return quotient_at(isotropic_algebra(n, s), script_i(n, s, reading, literal_g4), d).group


def verify_theorem_a(n: int, s: int, w: BidegreeWindow | None = None,
                     literal_checks: bool = True) -> TheoremAReport:
    """Compare the presentation with the additive model over a window.

    Reports (a) which printed generators fail to map to zero, with their
    images; (b) per bidegree, whether the quotient group equals the model
    group; and whether the map onto the model is surjective with kernel
    exactly the ideal piece.  ``ok`` covers (b), surjectivity and the
    kernel.  The literal-reading fields are reports, not checks.
    """
    _check(n, s)
    w = w or default_theorem_a_window(n)
    md = model(n, s)
    R = isotropic_algebra(n, s)
    I = script_i(n, s)
    rep = TheoremAReport(n, s, str(w))
    for name, terms in generator_terms(n, s):
        img = _psi_terms(n, s, terms)
        if not img.is_zero():
            rep.generators_die = False
            rep.surviving_generators[name] = str(img)
    if literal_checks:
        rep.literal_table_generators_die = all(
            _psi_terms(n, s, t, literal_table=True).is_zero() for _, t in generator_terms(n, s))
        rep.literal_g4_groups_match = all(
            presentation_group(n, s, d, literal_g4=True) == md.group(d) for d in w)
        rep.literal_reading_groups_match = True
        for d in w:
            g = presentation_group(n, s, d, reading="literal")
            if g != md.group(d):
                rep.literal_reading_groups_match = False
                rep.literal_reading_first_mismatch = {
                    "degree": list(d), "presentation": str(g), "model": str(md.group(d))}
                break
    for d in w:
        rep.checked += 1
        monos = ambient(R, d)
        g_pres = quotient_at(R, I, d).group
        g_model = md.group(d)
        if g_pres != g_model:
            rep.groups_match = False
            rep.mismatches.append({"degree": list(d), "presentation": str(g_pres),
                                   "model": str(g_model)})
        orders = md.orders(d)
        k = len(orders)
        images = [md.coords(psi(n, s, m), d) for m in monos]
        rel = IntLattice(k, [[o if i == c else 0 for i in range(k)]
                             for c, o in enumerate(orders) if o])
        if not (IntLattice(k, images) + rel).same_as(IntLattice.standard(k)):
            rep.surjective = False
            rep.mismatches.append({"degree": list(d), "surjective": False})
        ker = preimage(images, rel) if monos else IntLattice(0, [])
        if not ker.same_as(IntLattice(len(monos), _span_rows(I, d))):
            rep.kernel_matches = False
            rep.mismatches.append({"degree": list(d), "kernel": False})
    return rep


# ------------------------------------------------------------ other checks

def free_quotient(n: int) -> Presentation:
    if n < 1:
        raise ValueError("n must be >= 1")
    m, delta = _split(n)
    if delta:
        return Presentation("Z[t^±]", (("h", (2, 1)),), (f"h^{2 * m}",))
    rels = tuple(str(g) for g in free_quotient_ideal(n).generators)
    return Presentation("Z[t^±]", (("h", (2, 1)), ("chi", (n, -1))), rels)


def verify_free_quotient(n: int, w: BidegreeWindow | None = None) -> dict:
    """Free quotient pieces are torsion-free of the integral rank."""
    w = w or BidegreeWindow.standard(n)
    I = free_quotient_ideal(n)
    bad = []
    for d in w:
        got = group_at(I.alg, I, d)
        want = FgAbGroup(cohomology_group(n, 0, d.p, d.q).rank)
        if got != want:
            bad.append({"degree": list(d), "free_quotient": str(got), "stripped": str(want)})
    return {"n": n, "presentation": str(free_quotient(n)), "mismatches": bad, "ok": not bad}


def grassmannian_mod2(n: int, p: int, q: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    g = group_at(f2_xi_w(), jbar(n), (p, q))
    return g.rank + len(g.torsion)


def verify_mod2(n: int, w: BidegreeWindow | None = None) -> dict:
    """dim_F2 = rank + t(p, q) + t(p + 1, q) for the anisotropic ring."""
    w = w or BidegreeWindow.standard(n)
    bad = []
    for d in w:
        G = cohomology_group(n, 0, d.p, d.q)
        G1 = cohomology_group(n, 0, d.p + 1, d.q)
        want = G.rank + G.two_torsion_count + G1.two_torsion_count
        got = grassmannian_mod2(n, d.p, d.q)
        if got != want:
            bad.append({"degree": list(d), "mod2": got, "integral_prediction": want})
    return {"n": n, "mismatches": bad, "ok": not bad}


def verify_odd_inclusion(m: int, w: BidegreeWindow | None = None) -> dict:
    """A[h]/I_{2m-1} -> A[h,x]/J_{2m-1} is bijective in every bidegree."""
    n = 2 * m - 1
    w = w or BidegreeWindow.standard(n)
    src, tgt = a_h(), a_hx(n)
    I, J = i_odd(m), j(n)
    bad = []
    for d in w:
        sp, tp = quotient_at(src, I, d), quotient_at(tgt, J, d)
        k = len(tp.orders)
        images = [tp.element_coords(embed(Poly(src, {mono: 1}), tgt).terms)
                  for mono in sp.monomials]
        rel = IntLattice(k, [[o if i == c else 0 for i in range(k)]
                             for c, o in enumerate(tp.orders) if o])
        onto = (IntLattice(k, images) + rel).same_as(IntLattice.standard(k))
        ker = preimage(images, rel) if images else IntLattice(0, [])
        injective = ker.same_as(IntLattice(len(sp.monomials), _span_rows(I, d)))
        if not (onto and injective and sp.group == tp.group):
            bad.append({"degree": list(d), "source": str(sp.group), "target": str(tp.group),
                        "surjective": onto, "injective": injective})
    return {"m": m, "n": n, "mismatches": bad, "ok": not bad}


def pfister_check(r: int) -> dict:
    """Compare the Pfister-form ideal with J_{2^(r+1)-2} bidegree-wise."""
    if r < 2:
        raise ValueError("r must be >= 2")
    n = 2 ** (r + 1) - 2
    m = 2 ** r - 1
    derived = f_bold(m)
    w = BidegreeWindow.standard(n)
    J = j(n)
    P = pfister(r)
    literal = pfister_literal_generators(r)
    report = ideal_equal(P, J, w)
    hx = Poly.parse(a_hx(n), "h*x")
    # the same comparison with the first generator replaced by the derived power
    alt = Ideal.from_components(a_hx(n), [embed(derived, a_hx(n))] + literal[1:])
    alt_report = ideal_equal(alt, J, w)
    return {
        "r": r, "n": n,
        "derived_first_generator": str(derived),
        "derived_is_single_e_power": len(derived.terms) == 1,
        "literal_first_generator": str(literal[0]),
        "literal_second_generator": str(literal[1]),
        "window": str(w),
        "equal": report.equal, "first_discrepancy": report.to_json(),
        "equal_with_derived_first_generator": alt_report.equal,
        "derived_first_discrepancy": alt_report.to_json(),
        "hx_in_both": not normal_form(hx, P).terms and not normal_form(hx, J).terms,
        "paper_discrepancy": not report.equal,
    }


def chow_presentation(n: int) -> Presentation:
    from .ideals import chow_generators
    m, _ = _split(n)
    return Presentation("Z", (("h", (2, 1)), ("phi", (2 * m, m))),
                        tuple(str(g) for g in chow_generators(n)))


def cellular_ring(chow_pres: Presentation) -> Presentation:
    """Re-base a Chow ring presentation over the point ring B; codimension-k
    generators sit in degree (2k, k)."""
    for g, (p, q) in chow_pres.generators:
        if p != 2 * q or q < 0:
            raise ValueError(f"generator {g} has degree {(p, q)}, not of the form (2k, k)")
    base = "B" if chow_pres.base == "Z" else f"B (x) {chow_pres.base}"
    return Presentation(base, chow_pres.generators, chow_pres.relations, chow_pres.note)
