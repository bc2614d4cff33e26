"""Coefficient rings: aleph = Z[e]/(2e), A = aleph[t, 1/t] and the point ring B.

B is stored by its three cones, each monomial keyed by a tuple:

* ``('P', a, b)``  for e^a t^b with a, b >= 0, bidegree (a, a + 2b)
* ``('A', j)``     for t^-j * alpha, bidegree (0, -2 - 2j)
* ``('T', i, k)``  for e^-i t^-k * theta, bidegree (-i, -i - 2k - 3)

A coefficient is an integer, reduced mod 2 whenever the monomial is
2-torsion (positive e-power, or any theta-cone class).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .bigraded_core import BiDegree, FgAbGroup

Key = tuple


# ----------------------------------------------------------------- helpers

def _clean(terms: dict, order) -> dict:
    out = {}
    for k, c in terms.items():
        if order(k) == 2:
            c %= 2
        if c:
            out[k] = c
    return out


def _fmt_coeff(c: int, body: str) -> str:
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def _join(parts: list[str]) -> str:
    if not parts:
        return "0"
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s


def _split_terms(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield (sign*integer coefficient, factor names) per additive term."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return
    # insert separators before +/- that are not exponent signs
    tokens = re.split(r"(?<![\^+-])(?=[+-])", text)
    for tok in tokens:
        if not tok:
            continue
        sign = 1
        while tok and tok[0] in "+-":
            if tok[0] == "-":
                sign = -sign
            tok = tok[1:]
        coeff = 1
        factors = []
        for f in tok.split("*"):
            if not f:
                raise ValueError(f"empty factor in {text!r}")
            if re.fullmatch(r"\d+", f):
                coeff *= int(f)
            else:
                factors.append(f)
        yield sign * coeff, factors


def _parse_power(f: str) -> tuple[str, int]:
    m = re.fullmatch(r"([A-Za-z][A-Za-z0-9]*?)(?:\^(-?\d+))?", f)
    if not m:
        raise ValueError(f"cannot parse factor {f!r}")
    return m.group(1), int(m.group(2)) if m.group(2) is not None else 1


# ------------------------------------------------------------------- aleph

@dataclass(frozen=True)
class AlephElem:
    """Element of Z[e]/(2e): ``coeffs[a]`` is the coefficient of e^a."""

    coeffs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "AlephElem":
        d = _clean(d, lambda a: 2 if a > 0 else 0)
        return cls(tuple(sorted(d.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __add__(self, other: "AlephElem") -> "AlephElem":
        d = self.as_dict()
        for k, c in other.coeffs:
            d[k] = d.get(k, 0) + c
        return AlephElem.from_dict(d)

    def __mul__(self, other: "AlephElem") -> "AlephElem":
        d: dict[int, int] = {}
        for a, c in self.coeffs:
            for b, e in other.coeffs:
                d[a + b] = d.get(a + b, 0) + c * e
        return AlephElem.from_dict(d)

    def __str__(self) -> str:
        return _join([_fmt_coeff(c, "" if a == 0 else ("e" if a == 1 else f"e^{a}"))
                      for a, c in self.coeffs])


# ----------------------------------------------------------------------- A

@dataclass(frozen=True)
class AElem:
    """Element of aleph[t, 1/t]; keys are (a, b) for e^a t^b."""

    terms: tuple[tuple[tuple[int, int], int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict) -> "AElem":
        return cls(tuple(sorted(_clean(d, a_order).items())))

    @classmethod
    def mono(cls, a: int, b: int, c: int = 1) -> "AElem":
        return cls.from_dict({(a, b): c})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "AElem") -> "AElem":
        d = self.as_dict()
        for k, c in other.terms:
            d[k] = d.get(k, 0) + c
        return AElem.from_dict(d)

    def __neg__(self) -> "AElem":
        return AElem.from_dict({k: -c for k, c in self.terms})

    def __sub__(self, other: "AElem") -> "AElem":
        return self + (-other)

    def __mul__(self, other: "AElem") -> "AElem":
        return a_mul(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        return _join([_fmt_coeff(c, _a_body(a, b)) for (a, b), c in self.terms])

    @classmethod
    def parse(cls, text: str) -> "AElem":
        d: dict = {}
        for coeff, factors in _split_terms(text):
            a = b = 0
            for f in factors:
                name, e = _parse_power(f)
                if name == "e":
                    a += e
                elif name == "t":
                    b += e
                else:
                    raise ValueError(f"unknown symbol {name!r} in an A element")
            if a < 0:
                raise ValueError("negative e-power is not an element of A")
            d[(a, b)] = d.get((a, b), 0) + coeff
        return cls.from_dict(d)


def a_order(key: tuple[int, int]) -> int:
    return 2 if key[0] > 0 else 0


def a_degree(key: tuple[int, int]) -> BiDegree:
    a, b = key
    return BiDegree(a, a + 2 * b)


def a_mul(x: AElem, y: AElem) -> AElem:
    d: dict = {}
    for (a, b), c in x.terms:
        for (a2, b2), c2 in y.terms:
            k = (a + a2, b + b2)
            d[k] = d.get(k, 0) + c * c2
    return AElem.from_dict(d)


def _a_body(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("e" if a == 1 else f"e^{a}")
    if b:
        parts.append("t" if b == 1 else f"t^{b}")
    return "*".join(parts)


def a_group(d) -> FgAbGroup:
    """The (p, q) piece of A: one monomial e^p t^((q-p)/2) when it exists."""
    p, q = BiDegree.of(d)
    if p < 0 or (q - p) % 2:
        return FgAbGroup(0)
    return FgAbGroup(1) if p == 0 else FgAbGroup(0, (2,))


# ----------------------------------------------------------------------- B

def b_order(key: Key) -> int:
    if key[0] == "P":
        return 2 if key[1] > 0 else 0
    if key[0] == "A":
        return 0
    return 2


def b_degree(key: Key) -> BiDegree:
    kind = key[0]
    if kind == "P":
        _, a, b = key
        return BiDegree(a, a + 2 * b)
    if kind == "A":
        return BiDegree(0, -2 - 2 * key[1])
    _, i, k = key
    return BiDegree(-i, -i - 2 * k - 3)


def b_monomial_at(d) -> Key | None:
    """The unique cone monomial of bidegree d, if any."""
    p, q = BiDegree.of(d)
    if p >= 0 and q >= p and (q - p) % 2 == 0:
        return ("P", p, (q - p) // 2)
    if p == 0 and q <= -2 and q % 2 == 0:
        return ("A", (-2 - q) // 2)
    if p <= 0 and q - p <= -3 and (q - p) % 2 != 0:
        return ("T", -p, (p - q - 3) // 2)
    return None


def b_mono_mul(x: Key, y: Key) -> tuple[Key, int] | None:
    """Product of two cone monomials as (monomial, integer factor) or None.

    Only ``alpha*t = 2`` and the vanishing relations
    ``alpha*theta = alpha*e = theta*t = theta*e = 0`` are given; every rule
    below follows from those plus the shape of the bigraded groups.
    """
    if x[0] > y[0]:  # canonical order: 'A' < 'P' < 'T'
        x, y = y, x
    kx, ky = x[0], y[0]
    if kx == "P" and ky == "P":
        return ("P", x[1] + y[1], x[2] + y[2]), 1
    if kx == "A" and ky == "P":
        _, a, b = y
        j = x[1]
        if a > 0:
            # b <= j: degree (a, a-2-2(j-b)) has p > 0 and q < p, an empty degree;
            # b > j: the product is e^a t^(b-j-1) * (t*alpha) = 2 e^a (...) = 0
            return None
        if b <= j:
            # t^b * t^-j alpha: t-divisibility inside the torsion-free alpha cone
            return ("A", j - b), 1
        # t^(b-j-1) * (t * alpha) = 2 t^(b-j-1)
        return ("P", 0, b - j - 1), 2
    if kx == "A" and ky == "A":
        # degree (0, -4-2i-2j) holds only Z*t^-(i+j+1) alpha; multiplying both
        # sides by t^(i+j+2) and using alpha*t = 2 fixes the coefficient 2
        return ("A", x[1] + y[1] + 1), 2
    if kx == "A" and ky == "T":
        # alpha kills the theta cone (extends alpha*theta = 0)
        return None
    if kx == "P" and ky == "T":
        _, a, b = x
        _, i, k = y
        if a <= i and b <= k:
            # e and t shift the divided theta classes towards theta
            return ("T", i - a, k - b), 1
        # otherwise q-p = 2(b-k)-3 is odd and >= -1: no cone lives there
        return None
    # theta cone squared lands in a torsion-free alpha degree or an empty
    # degree; t kills theta, so the product is 0
    return None


@dataclass(frozen=True)
class BElem:
    terms: tuple[tuple[Key, int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict) -> "BElem":
        return cls(tuple(sorted(_clean(d, b_order).items())))

    @classmethod
    def mono(cls, key: Key, c: int = 1) -> "BElem":
        return cls.from_dict({key: c})

    @classmethod
    def one(cls) -> "BElem":
        return cls.mono(("P", 0, 0))

    @classmethod
    def integer(cls, n: int) -> "BElem":
        return cls.mono(("P", 0, 0), n)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: "BElem") -> "BElem":
        d = self.as_dict()
        for k, c in other.terms:
            d[k] = d.get(k, 0) + c
        return BElem.from_dict(d)

    def __neg__(self) -> "BElem":
        return BElem.from_dict({k: -c for k, c in self.terms})

    def __sub__(self, other: "BElem") -> "BElem":
        return self + (-other)

    def __mul__(self, other: "BElem") -> "BElem":
        return b_mul(self, other)

    def scale(self, n: int) -> "BElem":
        return BElem.from_dict({k: n * c for k, c in self.terms})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> set[BiDegree]:
        return {b_degree(k) for k, _ in self.terms}

    def __str__(self) -> str:
        return _join([_fmt_coeff(c, b_mono_str(k)) for k, c in self.terms])

    @classmethod
    def parse(cls, text: str) -> "BElem":
        d: dict = {}
        for coeff, factors in _split_terms(text):
            e = t = 0
            cone = "P"
            for f in factors:
                name, n = _parse_power(f)
                if name == "e":
                    e += n
                elif name == "t":
                    t += n
                elif name == "a" and n == 1 and cone == "P":
                    cone = "A"
                elif name == "th" and n == 1 and cone == "P":
                    cone = "T"
                else:
                    raise ValueError(f"cannot parse factor {f!r} of a B element")
            if cone == "P":
                if e < 0 or t < 0:
                    raise ValueError(f"e^{e}*t^{t} is not in B")
                key = ("P", e, t)
            elif cone == "A":
                if e != 0 or t > 0:
                    raise ValueError("alpha-cone classes are t^-j*a")
                key = ("A", -t)
            else:
                if e > 0 or t > 0:
                    raise ValueError("theta-cone classes are th*e^-i*t^-k")
                key = ("T", -e, -t)
            d[key] = d.get(key, 0) + coeff
        return cls.from_dict(d)


def b_mono_str(key: Key) -> str:
    if key[0] == "P":
        return _a_body(key[1], key[2])
    if key[0] == "A":
        j = key[1]
        return "a" if j == 0 else f"a*t^{-j}"
    _, i, k = key
    parts = ["th"]
    if i:
        parts.append(f"e^{-i}")
    if k:
        parts.append(f"t^{-k}")
    return "*".join(parts)


def b_mul(x: BElem, y: BElem) -> BElem:
    d: dict = {}
    for kx, cx in x.terms:
        for ky, cy in y.terms:
            r = b_mono_mul(kx, ky)
            if r is None:
                continue
            key, f = r
            d[key] = d.get(key, 0) + f * cx * cy
    return BElem.from_dict(d)


def b_mono_to_a(key: Key) -> tuple[tuple[int, int], int] | None:
    if key[0] == "P":
        return (key[1], key[2]), 1
    if key[0] == "A":
        return (0, -key[1] - 1), 2
    return None


def b_to_a(x: BElem) -> AElem:
    """Invert t: e -> e, t -> t, t^-j alpha -> 2 t^(-j-1), theta cone -> 0."""
    d: dict = {}
    for k, c in x.terms:
        r = b_mono_to_a(k)
        if r is not None:
            key, f = r
            d[key] = d.get(key, 0) + f * c
    return AElem.from_dict(d)


@dataclass(frozen=True)
class GroupPiece:
    group: FgAbGroup
    basis: tuple[str, ...]

    def to_json(self) -> dict:
        return {**self.group.to_json(), "basis": list(self.basis)}


def b_group(d) -> GroupPiece:
    key = b_monomial_at(d)
    if key is None:
        return GroupPiece(FgAbGroup(0), ())
    g = FgAbGroup(0, (2,)) if b_order(key) == 2 else FgAbGroup(1)
    return GroupPiece(g, (b_mono_str(key),))


def b_monomials_in_window(p_range: Iterable[int], q_range: Iterable[int]) -> list[Key]:
    qs = list(q_range)
    out = []
    for p in p_range:
        for q in qs:
            k = b_monomial_at((p, q))
            if k is not None:
                out.append(k)
    return out


# --------------------------------------------------------- verification

E = BElem.mono(("P", 1, 0))
TAU = BElem.mono(("P", 0, 1))
ALPHA = BElem.mono(("A", 0))
THETA = BElem.mono(("T", 0, 0))


def verify_coefficient_ring(p_range=range(-6, 7), q_range=range(-10, 11)) -> dict:
    """Exhaustive sweep of the product table over a monomial window."""
    monos = b_monomials_in_window(p_range, q_range)
    elems = [BElem.mono(k) for k in monos]
    failures: list[str] = []

    def prod(x, y):
        r = b_mono_mul(x, y)
        return {} if r is None else {r[0]: r[1]}

    def as_elem(d):
        return BElem.from_dict(d)

    table = {}
    for x in monos:
        for y in monos:
            table[x, y] = as_elem(prod(x, y))
    for x in monos:
        for y in monos:
            xy = table[x, y]
            if xy != table[y, x]:
                failures.append(f"commutativity {b_mono_str(x)} {b_mono_str(y)}")
            want = b_degree(x) + b_degree(y)
            if any(deg != want for deg in xy.degrees()):
                failures.append(f"degree {b_mono_str(x)} {b_mono_str(y)}")
            for z in monos:
                left = b_mul(xy, BElem.mono(z))
                right = b_mul(BElem.mono(x), table[y, z])
                if left != right:
                    failures.append(
                        f"associativity {b_mono_str(x)} {b_mono_str(y)} {b_mono_str(z)}")
            ax = b_to_a(xy)
            if ax != a_mul(b_to_a(BElem.mono(x)), b_to_a(BElem.mono(y))):
                failures.append(f"projection {b_mono_str(x)} {b_mono_str(y)}")
    for p in p_range:
        for q in q_range:
            if p * q < 0 and not b_group((p, q)).group.is_zero:
                failures.append(f"nonzero group at ({p},{q})")
    relations = {
        "alpha*t = 2": ALPHA * TAU == BElem.integer(2),
        "alpha*theta = 0": not (ALPHA * THETA),
        "alpha*e = 0": not (ALPHA * E),
        "theta*t = 0": not (THETA * TAU),
        "theta*e = 0": not (THETA * E),
    }
    for name, ok in relations.items():
        if not ok:
            failures.append(f"relation {name}")
    return {
        "monomials": len(monos),
        "relations": relations,
        "derivations": theta_derivations(),
        "failures": failures,
        "ok": not failures and all(d["holds"] for d in theta_derivations()),
    }


def theta_derivations() -> list[dict]:
    """Why 2*theta = 0 and theta^2 = 0 follow from the listed relations."""
    two_theta = (ALPHA * TAU) * THETA
    via_assoc = ALPHA * (TAU * THETA)
    sq = THETA * THETA
    # theta^2 sits in degree (0,-6) = Z * t^-2 alpha; t^3 * theta^2 = 0
    deg = b_degree(("T", 0, 0)) + b_degree(("T", 0, 0))
    target = b_monomial_at(deg)
    torsion_free = target is not None and b_order(target) == 0
    t3 = TAU * TAU * TAU
    t3_on_target = t3 * BElem.mono(target) if target else BElem()
    return [
        {
            "claim": "2*theta = 0",
            "argument": "2*theta = (alpha*t)*theta = alpha*(t*theta) = alpha*0",
            "holds": two_theta == via_assoc and not via_assoc,
        },
        {
            "claim": "theta^2 = 0",
            "argument": (f"theta^2 lies in degree ({deg.p},{deg.q}) which is "
                         f"{'Z*' + b_mono_str(target) if target else '0'}; t^3 kills "
                         "theta^2 but acts injectively there"),
            "holds": (not sq) and torsion_free and bool(t3_on_target),
        },
    ]
