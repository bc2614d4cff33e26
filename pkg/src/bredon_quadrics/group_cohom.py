"""Cohomology of Z/2 with coefficients in a lattice with involution, and the
E2 page of the descent spectral sequence for quadrics."""
from __future__ import annotations

from dataclasses import dataclass

from .bigraded_core import BiDegree, FgAbGroup, IntLattice, kernel, quotient_group
from .chow import Z2Module, chow_group
from .coeff_rings import a_group


def _twisted(m: Z2Module, twist: int) -> list[list[int]]:
    sign = -1 if twist % 2 else 1
    return [[sign * x for x in row] for row in m.matrix()]


def _shifted(s: list[list[int]], c: int) -> list[list[int]]:
    return [[x + (c if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(s)]


def z2_cohomology(m: Z2Module, twist: int, r: int) -> FgAbGroup:
    """H^r(Z/2; M(twist)) from the 2-periodic resolution.

    With s the twisted involution: H^0 = ker(s - 1); odd r gives
    ker(s + 1)/im(s - 1); even r >= 2 gives ker(s - 1)/im(s + 1).
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    n = m.rank
    if n == 0:
        return FgAbGroup(0)
    s = _twisted(m, twist)
    minus, plus = _shifted(s, -1), _shifted(s, 1)
    if r == 0:
        return FgAbGroup(len(kernel(minus, n)))
    k_map, i_map = (plus, minus) if r % 2 else (minus, plus)
    ker = IntLattice(n, kernel(k_map, n))
    # image of a matrix acting on column vectors: spanned by its columns
    img = IntLattice(n, [[i_map[row][col] for row in range(n)] for col in range(n)])
    return quotient_group(ker, img)


@dataclass(frozen=True)
class E2Cell:
    i: int
    j: int
    q: int
    group: FgAbGroup

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "q": self.q, **self.group.to_json()}


def e2_term(n: int, i: int, j: int, q: int) -> E2Cell:
    """E2^{i,j}(q) = H^i(Z/2; CH^k tensor Z(q - k)) for j = 2k, else 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if i < 0 or j < 0 or j % 2 or j // 2 > n:
        return E2Cell(i, j, q, FgAbGroup(0))
    k = j // 2
    return E2Cell(i, j, q, z2_cohomology(chow_group(n, k), q - k, i))


def differential_may_be_nonzero(r: int) -> bool:
    """Only the differentials d_r with r = 3 mod 4 can be nonzero."""
    if r < 2:
        raise ValueError("r must be >= 2")
    return r % 4 == 3


def e2_first_column_rank(n: int, p: int, q: int) -> int:
    if p % 2 or p < 0 or p // 2 > n:
        return 0
    return z2_cohomology(chow_group(n, p // 2), q - p // 2, 0).rank


def tensor_model_cell(n: int, i: int, j: int, q: int) -> FgAbGroup:
    """Cell of A tensor CH*: the A-piece of degree (i, q - k) once per basis class."""
    if j % 2 or j < 0 or j // 2 > n or i < 0:
        return FgAbGroup(0)
    k = j // 2
    g = a_group(BiDegree(i, q - k))
    out = FgAbGroup(0)
    for _ in range(chow_group(n, k).rank):
        out = out + g
    return out


def _size(g: FgAbGroup) -> int:
    return g.rank + len(g.torsion)


def compare_tensor_model(n: int, i_max: int, j_max: int, q_range) -> dict:
    """Cell-by-cell comparison of e2_term with the A tensor CH* description."""
    bad = []
    for i in range(i_max + 1):
        for jj in range(j_max + 1):
            for q in q_range:
                a = e2_term(n, i, jj, q).group
                b = tensor_model_cell(n, i, jj, q)
                if a != b:
                    bad.append({"i": i, "j": jj, "q": q, "e2": str(a), "model": str(b)})
    return {"n": n, "mismatches": bad, "ok": not bad}


def e2_discrepancy(n: int, groups, window) -> dict:
    """Sum over the window of (E2 size on the p = i + j line) - (size of H^{p,q}).

    ``groups(p, q)`` supplies the integral answer.  Sizes count Z and Z/2
    summands alike.  A nonzero total means classes die or merge in
    extensions; the field is a report, not a check.
    """
    e2_total = h_total = 0
    per = {}
    for d in window:
        p, q = d
        e2 = sum(_size(e2_term(n, p - jj, jj, q).group) for jj in range(0, p + 1))
        h = _size(groups(p, q))
        e2_total += e2
        h_total += h
        if e2 != h:
            per[f"{p},{q}"] = e2 - h
    return {"n": n, "e2_size": e2_total, "h_size": h_total,
            "discrepancy": e2_total - h_total, "by_degree": per}


def free_rank_consistency(n: int, window=None) -> dict:
    """Free rank of the anisotropic answer against the first E2 column."""
    from .quadric import cohomology_group
    from .ideals import BidegreeWindow
    window = window or BidegreeWindow.standard(n)
    bad = []
    for d in window:
        got = cohomology_group(n, 0, d.p, d.q).rank
        want = e2_first_column_rank(n, d.p, d.q)
        if got != want:
            bad.append({"degree": list(d), "rank": got, "e2_first_column": want})
    return {"n": n, "window": str(window), "mismatches": bad, "ok": not bad}
