"""Exact representation checks over the Eisenstein integers Z[w], w^2 = -1 - w.

Matrices over Z[w] are stored as two integer arrays (p, q) meaning p + q*w,
so products stay exact and vectorise with numpy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .groupring import GroupRingElement
from .groups import FiniteGroup, Subgroup, center

__all__ = [
    "EisensteinInt",
    "RepMatrix",
    "Representation",
    "OMEGA",
    "omega_power",
    "representation_from_generators",
    "build_irreps_a4c3",
    "rep_verify_transform",
    "rep_diagnostics",
    "rds_character_check",
]


@dataclass(frozen=True)
class EisensteinInt:
    p: int
    q: int = 0

    @staticmethod
    def _lift(x) -> EisensteinInt:
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, (int, np.integer)):
            return EisensteinInt(int(x), 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return EisensteinInt(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return EisensteinInt(self.p - o.p, self.q - o.q)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return EisensteinInt(-self.p, -self.q)

    def __mul__(self, other):
        o = self._lift(other)
        # (p + qw)(r + sw) = pr - qs + (ps + qr - qs)w
        return EisensteinInt(self.p * o.p - self.q * o.q,
                             self.p * o.q + self.q * o.p - self.q * o.q)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.q == 0 and self.p == int(other)
        if isinstance(other, EisensteinInt):
            return self.p == other.p and self.q == other.q
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.q))

    def conj(self) -> EisensteinInt:
        return EisensteinInt(self.p - self.q, -self.q)

    def norm(self) -> int:
        return self.p * self.p - self.p * self.q + self.q * self.q

    def __str__(self) -> str:
        return _render(self.p, self.q)

    def __repr__(self) -> str:
        return f"EisensteinInt({self.p}, {self.q})"


OMEGA = EisensteinInt(0, 1)


def omega_power(k: int) -> EisensteinInt:
    return (EisensteinInt(1), EisensteinInt(0, 1), EisensteinInt(-1, -1))[k % 3]


def _render(p: int, q: int) -> str:
    if q == 0:
        return str(p)
    if p == 0:
        return f"{q}w"
    return f"{p}{q:+d}w"


def _mm(ap, aq, bp, bq):
    qq = aq @ bq
    return ap @ bp - qq, ap @ bq + aq @ bp - qq


class RepMatrix:
    """A square matrix over Z[w]."""

    __slots__ = ("p", "q")

    def __init__(self, p, q=None):
        self.p = np.asarray(p, dtype=np.int64)
        self.q = np.zeros_like(self.p) if q is None else np.asarray(q, dtype=np.int64)

    @property
    def degree(self) -> int:
        return self.p.shape[0]

    @classmethod
    def identity(cls, d: int, scale: EisensteinInt | int = 1) -> RepMatrix:
        s = EisensteinInt._lift(scale)
        eye = np.eye(d, dtype=np.int64)
        return cls(s.p * eye, s.q * eye)

    def __matmul__(self, other: RepMatrix) -> RepMatrix:
        return RepMatrix(*_mm(self.p, self.q, other.p, other.q))

    def __add__(self, other: RepMatrix) -> RepMatrix:
        return RepMatrix(self.p + other.p, self.q + other.q)

    def __sub__(self, other: RepMatrix) -> RepMatrix:
        return RepMatrix(self.p - other.p, self.q - other.q)

    def scale(self, c: EisensteinInt | int) -> RepMatrix:
        c = EisensteinInt._lift(c)
        return RepMatrix(c.p * self.p - c.q * self.q, c.p * self.q + c.q * self.p - c.q * self.q)

    def conj_transpose(self) -> RepMatrix:
        return RepMatrix((self.p - self.q).T, -self.q.T)

    def entry(self, i: int, j: int) -> EisensteinInt:
        return EisensteinInt(int(self.p[i, j]), int(self.q[i, j]))

    def trace(self) -> EisensteinInt:
        return EisensteinInt(int(np.trace(self.p)), int(np.trace(self.q)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepMatrix):
            return NotImplemented
        return bool(np.array_equal(self.p, other.p) and np.array_equal(self.q, other.q))

    __hash__ = None  # type: ignore[assignment]

    def is_scalar(self, c: int) -> bool:
        return self == RepMatrix.identity(self.degree, c)

    def render(self) -> str:
        d = self.degree
        cells = [[_render(int(self.p[i, j]), int(self.q[i, j])) for j in range(d)] for i in range(d)]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)

    def __repr__(self) -> str:
        return f"RepMatrix(\n{self.render()})"


@dataclass(eq=False)
class Representation:
    """Images of every group element, stacked as (order, d, d) arrays."""

    group: FiniteGroup
    p: np.ndarray
    q: np.ndarray
    label: str = ""

    @property
    def degree(self) -> int:
        return self.p.shape[1]

    def image(self, x: int) -> RepMatrix:
        return RepMatrix(self.p[x], self.q[x])

    def evaluate(self, S: GroupRingElement) -> RepMatrix:
        c = S.coeffs
        return RepMatrix(np.tensordot(c, self.p, axes=1), np.tensordot(c, self.q, axes=1))

    def character(self, x: int) -> EisensteinInt:
        return self.image(x).trace()

    def is_homomorphism(self) -> bool:
        G = self.group
        n = G.order
        # image(x) @ image(y) for every pair at once
        lp, lq = self.p[:, None], self.q[:, None]
        rp, rq = self.p[None, :], self.q[None, :]
        pp, pq = _mm(lp, lq, rp, rq)
        want_p, want_q = self.p[G.mul], self.q[G.mul]
        return bool(np.array_equal(pp, want_p) and np.array_equal(pq, want_q)) and n > 0

    def is_irreducible(self) -> bool:
        # sum |chi(g)|^2 == |G|
        return sum(self.character(x).norm() for x in range(self.group.order)) == self.group.order


def representation_from_generators(G: FiniteGroup, gen_images: Sequence[RepMatrix],
                                   label: str = "") -> Representation | None:
    """Extend generator images along canonical words.

    Returns None when the images violate a relator of G's presentation.
    """
    d = gen_images[0].degree
    if G.presentation is not None:
        for r in G.presentation.relators:
            m = RepMatrix.identity(d)
            for g, e in r.factors:
                img = gen_images[g] if e > 0 else gen_images[g].conj_transpose()
                for _ in range(abs(e)):
                    m = m @ img
            if not m.is_scalar(1):
                return None
    P = np.zeros((G.order, d, d), dtype=np.int64)
    Q = np.zeros_like(P)
    P[0] = np.eye(d, dtype=np.int64)
    index = {w: i for i, w in enumerate(G.words)}
    for x in range(1, G.order):
        w = G.words[x]
        prev = index[w[:-1]]
        P[x], Q[x] = _mm(P[prev], Q[prev], gen_images[w[-1]].p, gen_images[w[-1]].q)
    return Representation(G, P, Q, label)


_THREE_CYCLE = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=np.int64)
_SIGN_DIAGONALS = [np.diag(v).astype(np.int64) for v in ((-1, -1, 1), (-1, 1, -1), (1, -1, -1))]


def _check_a4c3_shape(G: FiniteGroup) -> None:
    orders = [int(G.element_orders[g]) for g in G.gen_indices]
    if G.order != 36 or orders != [3, 3, 2, 2] or G.gen_indices[1] not in center(G):
        raise ValueError("expected the A4 x C3 group with generators a, b (central), c, d")


def build_irreps_a4c3(G: FiniteGroup) -> list[Representation]:
    """The 12 irreducible representations of A4 x C3 over Z[w].

    Generators are (a, b, c, d): a of order 3, b central of order 3, c and d
    involutions.  Linear ones send a, b to cube roots of unity and c, d to 1.
    The degree-3 ones send a to a 3-cycle permutation matrix, b to a scalar,
    and c, d to diagonal sign matrices chosen to satisfy the relators.
    """
    _check_a4c3_shape(G)
    reps = []
    one = RepMatrix.identity(1)
    for k, l in itertools.product(range(3), repeat=2):
        imgs = [RepMatrix.identity(1, omega_power(k)), RepMatrix.identity(1, omega_power(l)), one, one]
        rep = representation_from_generators(G, imgs, label=f"lin(a->w^{k}, b->w^{l})")
        if rep is None:
            raise ValueError("linear character violates a relator; wrong group")
        reps.append(rep)
    a_img = RepMatrix(_THREE_CYCLE)
    for l in range(3):
        b_img = RepMatrix.identity(3, omega_power(l))
        for c_diag, d_diag in itertools.product(_SIGN_DIAGONALS, repeat=2):
            imgs = [a_img, b_img, RepMatrix(c_diag), RepMatrix(d_diag)]
            rep = representation_from_generators(G, imgs, label=f"deg3(b->w^{l})")
            if rep is not None:
                reps.append(rep)
                break
        else:
            raise ValueError("no degree-3 representation fits the relators; wrong group")
    for rep in reps:
        if not rep.is_homomorphism():
            raise ValueError(f"{rep.label} is not multiplicative")
    return reps


def rep_verify_transform(G: FiniteGroup, S: GroupRingElement,
                         reps: list[Representation] | None = None) -> bool:
    """phi(S) phi(S)^* == 36 I in every irreducible representation."""
    if reps is None:
        reps = build_irreps_a4c3(G)
    if not np.isin(S.coeffs, (-1, 1)).all():
        raise ValueError("expected a +-1 element")
    for rep in reps:
        m = rep.evaluate(S)
        if not (m @ m.conj_transpose()).is_scalar(G.order):
            return False
    return True


def rep_diagnostics(G: FiniteGroup, S: GroupRingElement,
                    reps: list[Representation] | None = None) -> list[tuple[str, RepMatrix, RepMatrix]]:
    if reps is None:
        reps = build_irreps_a4c3(G)
    out = []
    for rep in reps:
        m = rep.evaluate(S)
        out.append((rep.label, m, m @ m.conj_transpose()))
    return out


def rds_character_check(H: FiniteGroup, R: Iterable[int], N: Subgroup) -> bool:
    """Character criterion for a (3,3,3,1) relative difference set in C3 x C3.

    A nontrivial chi principal on N gives chi(R) = 0; chi nonprincipal on N
    gives |chi(R)|^2 = 3; the trivial character gives |R| = 3.
    """
    R = [int(r) for r in R]
    if H.order != 9 or N.order != 3 or len(R) != 3 or N.parent is not H:
        raise ValueError("expected C3 x C3, a subgroup of order 3 and a 3-subset")
    b0 = next(x for x in N.elements if x)
    a0 = next(x for x in range(H.order) if x not in N)
    coords = {}
    for i, j in itertools.product(range(3), repeat=2):
        coords[int(H.mul[H.power(a0, i), H.power(b0, j)])] = (i, j)
    if len(coords) != 9 or not H.is_abelian():
        raise ValueError("H is not C3 x C3")
    for s, t in itertools.product(range(3), repeat=2):
        value = EisensteinInt(0)
        for r in R:
            i, j = coords[r]
            value = value + omega_power(s * i + t * j)
        if s == t == 0:
            if value != 3:
                return False
        elif t == 0:
            if value != 0:
                return False
        elif value.norm() != 3:
            return False
    return True
