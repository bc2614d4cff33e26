"""Ring maps between the algebras of the anisotropic computation, and the
per-bidegree checks built on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .bigraded_core import BiDegree, IntLattice, preimage, reduce_vector
from .ideals import (BidegreeWindow, Ideal, _span_rows, ambient, chow_ideal, ideal_equal,
                     j, j_plus_e_target, jbar, jhat, jhat_generators, j_generators,
                     normal_form, to_vector)
from .poly import (Poly, PolyAlgebra, a_hx, chow_poly, embed, f2_e_xi_h_x, f2_xi_w,
                   f2_xi_w_wn, f_bar, big_f, r_n, substitute)


@dataclass(frozen=True)
class RingMap:
    """A map of polynomial algebras given by the images of the variables.

    Coefficients pass through unchanged; an F2 target reduces them mod 2.
    Variables without an image map to the same-named target variable.
    """
    name: str
    source: PolyAlgebra
    target: PolyAlgebra
    images: tuple[tuple[str, Poly], ...]
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def make(cls, name, source, target, images: dict[str, Poly]) -> "RingMap":
        for v, img in images.items():
            if v not in source.index:
                raise ValueError(f"{v} is not a variable of {source.name}")
            if img.alg != target:
                raise ValueError(f"image of {v} is not in {target.name}")
        return cls(name, source, target, tuple(sorted(images.items())))

    def image(self, var: str) -> Poly:
        for v, img in self.images:
            if v == var:
                return img
        return Poly.var(self.target, var)

    def __call__(self, x: Poly) -> Poly:
        return apply_map(self, x)

    def degree_errors(self) -> list[str]:
        bad = []
        for v in self.source.vars:
            img = self.image(v.name)
            if img.terms and img.degrees() != {v.degree}:
                bad.append(f"{v.name}: {v.degree} -> {sorted(img.degrees())}")
        return bad

    def compose(self, inner: "RingMap") -> "RingMap":
        """self o inner."""
        if inner.target != self.source:
            raise ValueError("maps do not compose")
        imgs = {v.name: self(inner.image(v.name)) for v in inner.source.vars}
        return RingMap.make(f"{self.name}∘{inner.name}", inner.source, self.target, imgs)


def apply_map(f: RingMap, x: Poly) -> Poly:
    if x.alg != f.source:
        raise ValueError(f"{x} is not in {f.source.name}")
    out: dict = {}
    for m, c in x.terms.items():
        img = f._cache.get(m)
        if img is None:
            img = f._cache.setdefault(m, substitute(Poly.mono(f.source, m), f.target,
                                                    dict(f.images)))
        for m2, c2 in img.terms.items():
            out[m2] = out.get(m2, 0) + c * c2
    return Poly(f.target, out)


# ------------------------------------------------------------------ the maps

def _xi_power(alg: PolyAlgebra, k: int) -> Poly:
    return Poly.mono(alg, tuple(k if nm == "xi" else 0 for nm in alg.names))


@lru_cache(maxsize=None)
def pi_map(n: int) -> RingMap:
    """Mod-2 reduction R_n -> F2[e, xi^±, h, x]."""
    return RingMap.make("pi", r_n(n), f2_e_xi_h_x(n), {})


@lru_cache(maxsize=None)
def w_map(n: int) -> RingMap:
    tgt = f2_xi_w_wn(n)
    xi = lambda k: _xi_power(tgt, k)
    return RingMap.make("W", f2_e_xi_h_x(n), tgt, {
        "e": xi(1) * Poly.var(tgt, "w1"),
        "h": xi(1) * Poly.var(tgt, "w2"),
        "x": xi(-1) * Poly.var(tgt, "wn")})


@lru_cache(maxsize=None)
def q_map(n: int) -> RingMap:
    tgt = f2_xi_w()
    return RingMap.make("q", f2_xi_w_wn(n), tgt, {"wn": embed(f_bar(n), tgt)})


@lru_cache(maxsize=None)
def psi_map(n: int) -> RingMap:
    """q o W o pi, composed."""
    return q_map(n).compose(w_map(n)).compose(pi_map(n))


@lru_cache(maxsize=None)
def psi_direct(n: int) -> RingMap:
    """The same map written down in one step from the generator images."""
    tgt = f2_xi_w()
    xi = lambda k: _xi_power(tgt, k)
    return RingMap.make("Psi", r_n(n), tgt, {
        "e": xi(1) * Poly.var(tgt, "w1"),
        "h": xi(1) * Poly.var(tgt, "w2"),
        "x": xi(-1) * embed(f_bar(n), tgt)})


@lru_cache(maxsize=None)
def iota_map(n: int) -> RingMap:
    """A[h, x] -> R_n, t -> xi^2."""
    tgt = r_n(n)
    return RingMap.make("iota", a_hx(n), tgt, {"t": _xi_power(tgt, 2)})


@lru_cache(maxsize=None)
def rho_map(n: int) -> RingMap:
    """Reduction A[h, x] -> F2[xi^±, w1, w2] from the generator images."""
    tgt = f2_xi_w()
    return RingMap.make("rho", a_hx(n), tgt, {
        "e": reduction_image("e", n), "t": reduction_image("t", n),
        "h": reduction_image("h", n), "x": reduction_image("x", n)})


@lru_cache(maxsize=None)
def psi_hat(n: int) -> RingMap:
    """A[h, x] -> Z[xi^±][h, phi]: e -> 0, t -> xi^2 and the forgetful images."""
    tgt = chow_poly(n, laurent=True)
    return RingMap.make("Psi_hat", a_hx(n), tgt, {
        "e": Poly(tgt, {}), "t": _xi_power(tgt, 2),
        "h": forgetful_image("h", n), "x": forgetful_image("x", n)})


def forgetful_image(g: str, n: int) -> Poly:
    """Image of a generator in Z[xi^±][h, phi] (before reducing mod C_n)."""
    tgt = chow_poly(n, laurent=True)
    m = (n + 1) // 2
    if g == "h":
        return Poly.var(tgt, "h")
    if g == "e":
        return Poly(tgt, {})
    if g == "t":
        return _xi_power(tgt, 2)
    if g == "x":
        if n % 2:
            return Poly(tgt, {})
        return _xi_power(tgt, -m - 1) * (Poly.var(tgt, "h") ** m - 2 * Poly.var(tgt, "phi"))
    raise ValueError(f"unknown generator {g!r}")


def reduction_image(g: str, n: int) -> Poly:
    tgt = f2_xi_w()
    xi = lambda k: _xi_power(tgt, k)
    if g == "h":
        return xi(1) * Poly.var(tgt, "w2")
    if g == "e":
        return xi(1) * Poly.var(tgt, "w1")
    if g == "t":
        return xi(2)
    if g == "x":
        return xi(-1) * embed(f_bar(n), tgt)
    raise ValueError(f"unknown generator {g!r}")


# ------------------------------------------------------------ verification

def _reduces_to_zero(x: Poly, I: Ideal) -> bool:
    return not normal_form(x, I).terms


def _torsion_check(J: Ideal, d: BiDegree) -> bool:
    """Torsion of the quotient piece equals the image of the e-multiples."""
    alg = J.alg
    monos = ambient(alg, d)
    if not monos:
        return True
    L = IntLattice(len(monos), _span_rows(J, d))
    eps = [[1 if k == i else 0 for k in range(len(monos))]
           for i, m in enumerate(monos) if alg.order(m)]
    return L.saturation().same_as(L + IntLattice(len(monos), eps))


def _injective_on_torsion(J: Ideal, Jbar: Ideal, rho: RingMap, d: BiDegree) -> bool:
    alg = J.alg
    monos = ambient(alg, d)
    tors = [i for i, m in enumerate(monos) if alg.order(m)]
    if not tors:
        return True
    tmonos = ambient(Jbar.alg, d)
    images = [to_vector(rho(Poly.mono(alg, monos[i])).terms, tmonos) for i in tors]
    target = IntLattice(len(tmonos), _span_rows(Jbar, d))
    if not tmonos:
        kernel_rows = [[1 if a == b else 0 for b in range(len(tors))] for a in range(len(tors))]
    else:
        kernel_rows = [list(r) for r in preimage(images, target).generators]
    L = _span_rows(J, d)
    for c in kernel_rows:
        v = [0] * len(monos)
        for i, x in zip(tors, c):
            v[i] = x
        if any(reduce_vector(v, L)):
            return False
    return True


def _intersection_check(n: int, d: BiDegree) -> bool:
    """J_n piece equals the Jhat_n piece cut down to even xi powers."""
    A = a_hx(n)
    R = r_n(n)
    iota = iota_map(n)
    amonos = ambient(A, d)
    rmonos = ambient(R, d)
    ridx = {m: i for i, m in enumerate(rmonos)}
    xi = R.index["xi"]
    even = [i for i, m in enumerate(rmonos) if m[xi] % 2 == 0]
    hat = IntLattice(len(rmonos), _span_rows(jhat(n), d))
    # coordinates of iota: monomials go to monomials
    emb = []
    for m in amonos:
        (rm, _), = iota(Poly.mono(A, m)).terms.items()
        emb.append(ridx[rm])
    if sorted(emb) != even:
        return False
    from .bigraded_core import lattice_intersect
    sub = IntLattice(len(rmonos), [[1 if k == i else 0 for k in range(len(rmonos))] for i in even])
    cut = lattice_intersect(hat, sub)
    pulled = [[row[e] for e in emb] for row in cut.generators]
    return IntLattice(len(amonos), pulled).same_as(IntLattice(len(amonos), _span_rows(j(n), d)))


@dataclass
class AlgebraicReport:
    n: int
    window: str
    generators_into_jbar: bool
    ideal_identity: bool
    torsion_is_e_ideal: bool
    injective_on_torsion: bool
    intersection_matches_generators: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.generators_into_jbar and self.ideal_identity and self.torsion_is_e_ideal
                and self.injective_on_torsion and self.intersection_matches_generators)

    def to_json(self) -> dict:
        return {"n": self.n, "window": self.window, "i": self.generators_into_jbar,
                "ii": self.ideal_identity, "iii": self.torsion_is_e_ideal,
                "iv": self.injective_on_torsion,
                "intersection": self.intersection_matches_generators,
                "failures": self.failures, "ok": self.ok}


def verify_prop_algebraic(n: int, w: BidegreeWindow | None = None) -> AlgebraicReport:
    if n < 1:
        raise ValueError("n must be >= 1")
    w = w or BidegreeWindow.standard(n)
    Jb = jbar(n)
    psi = psi_map(n)
    fails = []
    gens_ok = True
    for k, g in enumerate(jhat_generators(n), 1):
        if not _reduces_to_zero(psi(g), Jb):
            gens_ok = False
            fails.append(f"g{k} not in Jbar_{n}")
    J = j(n)
    eJ = J + Ideal(J.alg, [Poly.var(J.alg, "e")], name="e")
    eq = ideal_equal(eJ, j_plus_e_target(n), w)
    if not eq.equal:
        fails.append({"ii": eq.to_json()})
    rho = rho_map(n)
    tors_ok = inj_ok = inter_ok = True
    seen = set()
    for d in w:
        key = (d.p, d.q % 2)  # every check is invariant under t
        if key in seen:
            continue
        seen.add(key)
        if not _torsion_check(J, d):
            tors_ok = False
            fails.append(f"iii at {tuple(d)}")
        if not _injective_on_torsion(J, Jb, rho, d):
            inj_ok = False
            fails.append(f"iv at {tuple(d)}")
        if not _intersection_check(n, d):
            inter_ok = False
            fails.append(f"intersection at {tuple(d)}")
    return AlgebraicReport(n, str(w), gens_ok, eq.equal, tors_ok, inj_ok, inter_ok, fails)


def diagram_commutes(n: int, p_max: int = 12, q_range=range(-3, 4)) -> dict:
    """q o W o pi agrees with the one-step map on R_n monomials, and rho
    agrees with Psi o iota on A[h, x] monomials, up to total p-degree p_max."""
    comp, direct, iota, rho = psi_map(n), psi_direct(n), iota_map(n), rho_map(n)
    R, A = r_n(n), a_hx(n)
    bad = []
    checked = 0
    for p in range(p_max + 1):
        for q in q_range:
            for m in ambient(R, (p, q)):
                x = Poly.mono(R, m)
                checked += 1
                if comp(x) != direct(x):
                    bad.append(("psi", str(x)))
            for m in ambient(A, (p, q)):
                x = Poly.mono(A, m)
                checked += 1
                if rho(x) != direct(iota(x)):
                    bad.append(("rho", str(x)))
    # W o pi(F_k) = xi^k f_k
    tgt = f2_xi_w_wn(n)
    wpi = w_map(n).compose(pi_map(n))
    Rn = r_n(n)
    for k in range(0, p_max + 1):
        lhs = wpi(embed(big_f(k), Rn))
        rhs = _xi_power(tgt, k) * embed(f_bar(k), tgt)
        if lhs != rhs:
            bad.append(("F", k))
    # generators of J_n land in Jbar_n under Psi o iota
    Jb = jbar(n)
    for g in j_generators(n):
        if not _reduces_to_zero(direct(iota(g)), Jb):
            bad.append(("J", str(g)))
    return {"n": n, "checked": checked, "failures": bad, "ok": not bad}


def verify_kernel_claim(n: int, w: BidegreeWindow | None = None) -> dict:
    """ker(phi o Psi_n) = <e> + J_n, per bidegree."""
    w = w or BidegreeWindow.standard(n)
    A = a_hx(n)
    f = psi_hat(n)
    C = chow_ideal(n, laurent=True)
    J = j(n) + Ideal(A, [Poly.var(A, "e")], name="e")
    bad = []
    seen = set()
    for d in w:
        key = (d.p, d.q % 2)
        if key in seen:
            continue
        seen.add(key)
        monos = ambient(A, d)
        if not monos:
            continue
        tmonos = ambient(C.alg, d)
        L = IntLattice(len(monos), _span_rows(J, d))
        if tmonos:
            images = [to_vector(f(Poly.mono(A, m)).terms, tmonos) for m in monos]
            ker = preimage(images, IntLattice(len(tmonos), _span_rows(C, d)))
        else:
            ker = IntLattice.standard(len(monos))
        if not ker.same_as(L):
            bad.append(tuple(d))
    return {"n": n, "window": str(w), "failures": bad, "ok": not bad}
