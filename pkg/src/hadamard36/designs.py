"""Difference sets, Hadamard transforms, relative difference sets, equivalence."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from .groupring import GroupRingElement, gr_from_subset, gr_involution, gr_scalar
from .groups import FiniteGroup, Subgroup, automorphism_matrix

__all__ = [
    "DesignParams",
    "RelativeParams",
    "EquivalenceClass",
    "HADAMARD_36",
    "RDS_3331",
    "is_difference_set",
    "difference_set_mask",
    "is_hadamard_transform",
    "is_relative_difference_set",
    "enumerate_rds",
    "are_equivalent",
    "classify",
    "orbit_masks",
    "set_to_mask",
    "mask_to_set",
    "format_set",
    "parse_set",
    "read_sets",
    "write_sets",
]


@dataclass(frozen=True)
class DesignParams:
    v: int
    k: int
    lam: int

    def __post_init__(self):
        if self.k * (self.k - 1) != self.lam * (self.v - 1):
            raise ValueError(f"({self.v},{self.k},{self.lam}) violates k(k-1) = lambda(v-1)")

    @property
    def m(self) -> int | None:
        """m with v = 4m^2, or None when v is not of that form."""
        if self.v % 4:
            return None
        r = math.isqrt(self.v // 4)
        return r if r * r * 4 == self.v else None

    @property
    def is_hadamard(self) -> bool:
        m = self.m
        return m is not None and self.k in (2 * m * m - m, 2 * m * m + m)

    def complement(self) -> DesignParams:
        v, k, lam = self.v, self.k, self.lam
        return DesignParams(v, v - k, v - 2 * k + lam)


@dataclass(frozen=True)
class RelativeParams:
    m: int
    n: int
    k: int
    lam: int


HADAMARD_36 = DesignParams(36, 15, 6)
RDS_3331 = RelativeParams(3, 3, 3, 1)


@dataclass
class EquivalenceClass:
    representative: frozenset[int]
    members: list[frozenset[int]] = field(default_factory=list)


def is_difference_set(G: FiniteGroup, D: Iterable[int], p: DesignParams) -> bool:
    D = frozenset(int(x) for x in D)
    if len(D) != p.k:
        raise ValueError(f"set has size {len(D)}, parameters need {p.k}")
    if p.v != G.order:
        return False
    X = gr_from_subset(G, D)
    return X * gr_involution(X) == gr_scalar(G, p.k - p.lam) + p.lam * gr_from_subset(G, range(G.order))


def is_hadamard_transform(G: FiniteGroup, S: GroupRingElement) -> bool:
    if S.group is not G:
        raise ValueError("element is not over this group")
    if not np.isin(S.coeffs, (-1, 1)).all():
        return False
    n = G.order
    m = math.isqrt(n // 4)
    if n % 4 or 4 * m * m != n:
        return False
    return S * gr_involution(S) == gr_scalar(G, n)


def is_relative_difference_set(G: FiniteGroup, R: Iterable[int], N: Subgroup,
                               p: RelativeParams) -> bool:
    R = frozenset(int(x) for x in R)
    if len(R) != p.k:
        raise ValueError(f"set has size {len(R)}, parameters need {p.k}")
    if N.order != p.n or G.order != p.m * p.n:
        return False
    X = gr_from_subset(G, R)
    rhs = gr_scalar(G, p.k) + p.lam * (gr_from_subset(G, range(G.order)) - gr_from_subset(G, N))
    return X * gr_involution(X) == rhs


def enumerate_rds(H: FiniteGroup, N: Subgroup, p: RelativeParams) -> list[frozenset[int]]:
    if H.order > 81:
        raise ValueError("enumerate_rds is an exhaustive scan; keep |H| <= 81")
    return [frozenset(R) for R in itertools.combinations(range(H.order), p.k)
            if is_relative_difference_set(H, R, N, p)]


# -- bit masks ---------------------------------------------------------------

def set_to_mask(X: Iterable[int]) -> int:
    m = 0
    for x in X:
        m |= 1 << int(x)
    return m


def mask_to_set(m: int) -> frozenset[int]:
    return frozenset(i for i in range(m.bit_length()) if m >> i & 1)


def difference_set_mask(G: FiniteGroup, masks: Sequence[int], p: DesignParams) -> np.ndarray:
    """Vectorised difference-set test over many sets given as bit masks."""
    n = G.order
    if n > 62:
        raise ValueError("bit-mask batch test supports order <= 62")
    out = np.zeros(len(masks), dtype=bool)
    if not len(masks) or p.v != n:
        return out
    arr = np.array(masks, dtype=np.int64)
    bits = ((arr[:, None] >> np.arange(n)) & 1).astype(np.int32)
    target = np.full(n, p.lam)
    target[0] = p.k
    # count[s, g] = #{x in D_s : g^-1 x in D_s}
    shift = G.mul[G.inv]
    for lo in range(0, len(arr), 4096):
        b = bits[lo:lo + 4096]
        counts = np.einsum("sx,sgx->sg", b, b[:, shift])
        out[lo:lo + 4096] = (counts == target).all(axis=1)
    return out


# -- equivalence ---------------------------------------------------------------

_ORBIT_CACHE: dict[tuple[int, bool], tuple[FiniteGroup, np.ndarray]] = {}


def _orbit_perms(G: FiniteGroup, allow_inverse: bool) -> np.ndarray:
    """Rows are the maps x -> g*sigma(x) (and x -> g*sigma(x^-1))."""
    key = (id(G), allow_inverse)
    hit = _ORBIT_CACHE.get(key)
    if hit is not None and hit[0] is G:
        return hit[1]
    A = automorphism_matrix(G)
    P = G.mul[:, A].reshape(-1, G.order)
    if allow_inverse:
        P = np.concatenate([P, P[:, G.inv]])
    _ORBIT_CACHE[key] = (G, P)
    return P


def orbit_masks(G: FiniteGroup, D: Iterable[int], allow_inverse: bool = False) -> set[int]:
    """All sets g*sigma(D) as bit masks."""
    if G.order > 62:
        raise ValueError("orbit masks support order <= 62")
    idx = np.array(sorted(int(x) for x in D), dtype=np.int64)
    P = _orbit_perms(G, allow_inverse)
    return set((np.int64(1) << P[:, idx]).sum(axis=1).tolist())


def are_equivalent(G: FiniteGroup, D1: Iterable[int], D2: Iterable[int],
                   allow_inverse: bool = False) -> bool:
    D1, D2 = frozenset(D1), frozenset(D2)
    if len(D1) != len(D2):
        raise ValueError("sets of different sizes")
    return set_to_mask(D2) in orbit_masks(G, D1, allow_inverse)


def classify(G: FiniteGroup, sets: Iterable[Iterable[int]],
             allow_inverse: bool = False) -> list[EquivalenceClass]:
    """Partition sets into equivalence classes.

    Literal duplicates collapse first.  Each remaining set not yet placed
    seeds a class whose members are the inputs lying in its orbit.
    """
    unique = sorted({frozenset(int(x) for x in s) for s in sets}, key=sorted)
    if len({len(s) for s in unique}) > 1:
        raise ValueError("classify needs sets of one size")
    by_mask = {set_to_mask(s): s for s in unique}
    placed: set[int] = set()
    classes = []
    for s in unique:
        m = set_to_mask(s)
        if m in placed:
            continue
        orbit = orbit_masks(G, s, allow_inverse)
        members = sorted((by_mask[o] for o in orbit if o in by_mask), key=sorted)
        placed.update(set_to_mask(x) for x in members)
        classes.append(EquivalenceClass(members[0], members))
    return classes


# -- text I/O ------------------------------------------------------------------

def format_set(G: FiniteGroup, X: Iterable[int]) -> str:
    return ",".join(G.names[x] for x in sorted(int(x) for x in X))


def parse_set(G: FiniteGroup, line: str) -> frozenset[int]:
    return frozenset(G.element(w.strip()) for w in line.split(",") if w.strip())


def read_sets(G: FiniteGroup, fh: TextIO) -> list[frozenset[int]]:
    out = []
    for line in fh:
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_set(G, line))
    return out


def write_sets(G: FiniteGroup, sets: Iterable[Iterable[int]], fh: TextIO) -> None:
    for s in sets:
        fh.write(format_set(G, s) + "\n")
