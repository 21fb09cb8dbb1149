"""Product theorems, the spread construction and its relative-difference-set variant.

Sign convention: both boxed constructions produce an element S with
augmentation -6.  Its +1 support is the 15-element difference set; S itself
equals -(G - 2D).  S and -S are treated as the same object.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .designs import (
    HADAMARD_36,
    RDS_3331,
    DesignParams,
    RelativeParams,
    difference_set_mask,
    is_hadamard_transform,
    mask_to_set,
    set_to_mask,
)
from .groupring import (
    GroupRingElement,
    gr_from_subset,
    gr_involution,
    gr_scalar,
    subgroup_transform,
)
from .groups import (
    FiniteGroup,
    Spread,
    Subgroup,
    conjugate_subgroup,
    direct_product,
    group_from_text,
    is_left_transversal,
    normalizer,
    spread_of,
    sylow_3,
)

__all__ = [
    "ConstructionError",
    "SpreadSelection",
    "RdsSelection",
    "SearchResult",
    "menon_product",
    "dillon_product",
    "spread_condition_holds",
    "spread_element",
    "spread_construct",
    "spread_search",
    "run_spread_search",
    "rds_in_subgroup",
    "rds_spread_construct",
    "rds_spread_search",
    "run_rds_spread_search",
    "verify_line_identities",
    "positive_support",
    "menon16",
    "dillon16",
]


class ConstructionError(ValueError):
    """A construction's preconditions do not hold."""


def positive_support(S: GroupRingElement) -> frozenset[int]:
    return S.support(1)


# -- product theorems ---------------------------------------------------------

def _hadamard_on(S: GroupRingElement, H_elems) -> bool:
    """S is a Hadamard transform of the subgroup spanned by H_elems."""
    inside = np.zeros(S.group.order, dtype=bool)
    inside[list(H_elems)] = True
    c = S.coeffs
    if c[~inside].any() or not np.isin(c[inside], (-1, 1)).all():
        return False
    return S * gr_involution(S) == gr_scalar(S.group, int(inside.sum()))


def _menon_factor(S: GroupRingElement) -> bool:
    # the trivial group's element +-1 acts as a neutral factor
    if S.group.order == 1:
        return abs(S[0]) == 1
    return is_hadamard_transform(S.group, S)


def menon_product(sh: GroupRingElement, sk: GroupRingElement,
                  product: tuple[FiniteGroup, list[int], list[int]] | None = None
                  ) -> GroupRingElement:
    """Product of transforms from H and K, taken in Z[H x K].

    ``product`` is the output of :func:`direct_product`; built on demand.
    """
    H, K = sh.group, sk.group
    if not (_menon_factor(sh) and _menon_factor(sk)):
        raise ConstructionError("both factors must be Hadamard transforms")
    G, eh, ek = product if product is not None else direct_product(H, K)
    a = np.zeros(G.order, dtype=np.int64)
    b = np.zeros(G.order, dtype=np.int64)
    a[eh] = sh.coeffs
    b[ek] = sk.coeffs
    return GroupRingElement(G, a) * GroupRingElement(G, b)


def dillon_product(G: FiniteGroup, H: Subgroup, K: Subgroup,
                   sh: GroupRingElement, sk: GroupRingElement) -> GroupRingElement:
    """Product of transforms supported on complementary subgroups H, K of G."""
    if set(H.elements) & set(K.elements) != {0}:
        raise ConstructionError("H and K must intersect trivially")
    if H.order * K.order != G.order:
        raise ConstructionError("G must equal HK")
    if not (_hadamard_on(sh, H.elements) and _hadamard_on(sk, K.elements)):
        raise ConstructionError("factors must be Hadamard transforms of H and K")
    return sh * sk


# -- spread construction --------------------------------------------------------

@dataclass(frozen=True)
class SpreadSelection:
    """Data of S = L0^ - x h1 L1^ - y h2 L2^ - xy h3 L3^.

    ``assignment[i]`` is the index into ``spread.lines`` placed in slot i.
    """

    spread: Spread
    assignment: tuple[int, int, int, int]
    shifts: tuple[int, int, int]
    transversal: tuple[int, int]

    @property
    def lines(self) -> list[Subgroup]:
        return [self.spread.lines[i] for i in self.assignment]

    def slot_elements(self, G: FiniteGroup) -> tuple[int, int, int]:
        x, y = self.transversal
        return x, y, int(G.mul[x, y])


def _check_spread_selection(G: FiniteGroup, sel: SpreadSelection) -> None:
    H = sel.spread.ambient
    if sorted(sel.assignment) != [0, 1, 2, 3]:
        raise ConstructionError("assignment must place each line in one slot")
    if any(h not in H for h in sel.shifts):
        raise ConstructionError("shifts must lie in H")
    x, y, xy = sel.slot_elements(G)
    if not is_left_transversal(G, H, [0, x, y, xy]):
        raise ConstructionError("{1, x, y, xy} is not a left transversal of H")
    N = normalizer(G, H)
    if x not in N or y not in N:
        raise ConstructionError("x and y must normalise H")


def spread_condition_holds(G: FiniteGroup, sel: SpreadSelection) -> bool:
    """{L0, L1, L2, L3} == {L0, x L1 x^-1, y L2 y^-1, xy L3 (xy)^-1}"""
    _check_spread_selection(G, sel)
    L = sel.lines
    x, y, xy = sel.slot_elements(G)
    moved = {L[0], conjugate_subgroup(G, x, L[1]), conjugate_subgroup(G, y, L[2]),
             conjugate_subgroup(G, xy, L[3])}
    return moved == set(L)


def spread_element(G: FiniteGroup, sel: SpreadSelection) -> GroupRingElement:
    """The group ring element of the selection, without checking the condition."""
    H = sel.spread.ambient
    L = sel.lines
    S = subgroup_transform(H, L[0].elements)
    for t, h, line in zip(sel.slot_elements(G), sel.shifts, L[1:]):
        shifted = [int(G.mul[h, l]) for l in line.elements]
        S = S - subgroup_transform(H, shifted).left_mul(t)
    return S


def spread_construct(G: FiniteGroup, sel: SpreadSelection) -> GroupRingElement:
    if not spread_condition_holds(G, sel):
        raise ConstructionError("conjugation by the transversal does not permute the spread")
    return spread_element(G, sel)


@dataclass
class SearchResult:
    method: str
    candidates: int = 0
    condition_passes: int = 0
    sets: list[frozenset[int]] = field(default_factory=list)
    rejected: list[frozenset[int]] = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "method": self.method,
            "candidates": self.candidates,
            "condition_passes": self.condition_passes,
            "distinct_sets": len(self.sets),
            "rejected_sets": len(self.rejected),
        }


def _require_spread(G: FiniteGroup) -> Spread:
    H, elementary = sylow_3(G)
    if not elementary:
        raise ConstructionError("Sylow 3-subgroup is cyclic; no spread")
    return spread_of(H)


def _transversal_pairs(G: FiniteGroup, H: Subgroup, pool) -> list[tuple[int, int, int]]:
    pairs = []
    for x in pool:
        for y in pool:
            xy = int(G.mul[x, y])
            if is_left_transversal(G, H, [0, x, y, xy]):
                pairs.append((x, y, xy))
    return pairs


def _sort_sets(masks) -> list[frozenset[int]]:
    return sorted((mask_to_set(m) for m in masks), key=sorted)


def _finish(G: FiniteGroup, result: SearchResult, masks: set[int],
            p: DesignParams = HADAMARD_36) -> SearchResult:
    masks = sorted(masks)
    ok = difference_set_mask(G, masks, p)
    result.sets = _sort_sets(m for m, good in zip(masks, ok) if good)
    result.rejected = _sort_sets(m for m, good in zip(masks, ok) if not good)
    return result


def run_spread_search(G: FiniteGroup) -> SearchResult:
    """Every selection: 4 choices of L0, 3! slot orders, 9^3 shifts and all
    ordered pairs (x, y) from N_G(H) - H forming a left transversal."""
    sp = _require_spread(G)
    H, lines = sp.ambient, sp.lines
    N = normalizer(G, H)
    pairs = _transversal_pairs(G, H, [g for g in N if g not in H])
    conj = {(g, i): lines.index(conjugate_subgroup(G, g, lines[i]))
            for g in N for i in range(4)}
    h_mask = set_to_mask(H)
    line_masks = [set_to_mask(L) for L in lines]
    hs = list(H)
    result = SearchResult("spread")
    masks: set[int] = set()
    for l0 in range(4):
        for rest in itertools.permutations([i for i in range(4) if i != l0]):
            for x, y, xy in pairs:
                result.candidates += 729
                moved = {l0, conj[x, rest[0]], conj[y, rest[1]], conj[xy, rest[2]]}
                if len(moved) != 4:
                    continue
                result.condition_passes += 729
                # +1 support: (H - L0) u x h1 L1 u y h2 L2 u xy h3 L3
                slots = []
                for t, li in zip((x, y, xy), rest):
                    slots.append(np.array(
                        [set_to_mask(G.mul[t, G.mul[h, lines[li].elements]]) for h in hs],
                        dtype=np.int64))
                grid = slots[0][:, None, None] | slots[1][None, :, None] | slots[2][None, None, :]
                masks.update((grid.ravel() | (h_mask & ~line_masks[l0])).tolist())
    return _finish(G, result, masks)


def spread_search(G: FiniteGroup) -> list[frozenset[int]]:
    return run_spread_search(G).sets


# -- relative difference set construction ----------------------------------------

def rds_in_subgroup(H: Subgroup, R, N: Subgroup, p: RelativeParams = RDS_3331) -> bool:
    """R R^(-1) = k + lambda (H - N) inside Z[G]."""
    G = H.parent
    R = frozenset(int(r) for r in R)
    if len(R) != p.k or not R <= set(H.elements) or H.order != p.m * p.n or N.order != p.n:
        return False
    X = gr_from_subset(G, R)
    rhs = gr_scalar(G, p.k) + p.lam * (gr_from_subset(G, H.elements) - gr_from_subset(G, N.elements))
    return X * gr_involution(X) == rhs


@dataclass(frozen=True)
class RdsSelection:
    """Data of S = L0^ - R0 g R1^ with L0 the forbidden subgroup."""

    ambient: Subgroup
    forbidden: Subgroup
    r0: frozenset[int]
    g: int
    r1: frozenset[int]

    def transversal(self, G: FiniteGroup) -> list[int]:
        return [0] + [int(G.mul[r, self.g]) for r in sorted(self.r0)]


def rds_spread_construct(G: FiniteGroup, sel: RdsSelection) -> GroupRingElement:
    H, N = sel.ambient, sel.forbidden
    if not (rds_in_subgroup(H, sel.r0, N) and rds_in_subgroup(H, sel.r1, N)):
        raise ConstructionError("R0 and R1 must be (3,3,3,1) relative difference sets")
    if not is_left_transversal(G, H, sel.transversal(G)):
        raise ConstructionError("{1, r g : r in R0} is not a left transversal of H")
    r0g = gr_from_subset(G, sel.r0).right_mul(sel.g)
    return subgroup_transform(H, N.elements) - r0g * subgroup_transform(H, sel.r1)


def _rds_list(H: Subgroup, N: Subgroup) -> list[frozenset[int]]:
    return [frozenset(R) for R in itertools.combinations(H.elements, 3) if rds_in_subgroup(H, R, N)]


def run_rds_spread_search(G: FiniteGroup) -> SearchResult:
    """All pairs of relative difference sets (R0, R1) relative to each line of
    the spread, and all g in G with {1} u R0 g a left transversal."""
    sp = _require_spread(G)
    H = sp.ambient
    h_mask = set_to_mask(H)
    result = SearchResult("rds")
    masks: set[int] = set()
    for N in sp.lines:
        rds = _rds_list(H, N)
        base = h_mask & ~set_to_mask(N)
        for r0 in rds:
            for g in range(G.order):
                result.candidates += len(rds)
                reps = [0] + [int(G.mul[r, g]) for r in sorted(r0)]
                if not is_left_transversal(G, H, reps):
                    continue
                result.condition_passes += len(rds)
                r0g = [int(G.mul[r, g]) for r in r0]
                for r1 in rds:
                    # +1 support: (H - N) u R0 g R1
                    m = base
                    for u in r0g:
                        m |= set_to_mask(G.mul[u, sorted(r1)])
                    masks.add(m)
    return _finish(G, result, masks)


def rds_spread_search(G: FiniteGroup) -> list[frozenset[int]]:
    return run_rds_spread_search(G).sets


# -- line identities --------------------------------------------------------------

def verify_line_identities(H: FiniteGroup) -> dict[str, bool]:
    """Identities of the four lines of C3 x C3 and of their transforms."""
    if H.order != 9:
        raise ValueError("expected C3 x C3")
    Hs = Subgroup(H, range(9))
    try:
        sp = spread_of(Hs)
    except ValueError as exc:
        raise ValueError("expected C3 x C3") from exc
    one = gr_scalar(H, 1)
    Hsum = gr_from_subset(H, range(9))
    L = [gr_from_subset(H, line.elements) for line in sp.lines]
    T = [Hsum - 2 * x for x in L]
    pairs = [(i, j) for i in range(4) for j in range(4) if i != j]
    return {
        "L_i^(-1) = L_i": all(gr_involution(x) == x for x in L),
        "L_i H = 3H": all(x * Hsum == 3 * Hsum for x in L),
        "L_i^2 = 3L_i": all(x * x == 3 * x for x in L),
        "L_i L_j = H (i != j)": all(L[i] * L[j] == Hsum for i, j in pairs),
        "sum L_i = 3 + H": sum(L[1:], L[0]) == 3 * one + Hsum,
        "T_i^(-1) = T_i": all(gr_involution(t) == t for t in T),
        "T_i H = 3H": all(t * Hsum == 3 * Hsum for t in T),
        "T_i^2 = 3H - 6T_i": all(t * t == 3 * Hsum - 6 * t for t in T),
        "T_i T_j = H (i != j)": all(T[i] * T[j] == Hsum for i, j in pairs),
        "sum T_i = -6 + 2H": sum(T[1:], T[0]) == -6 * one + 2 * Hsum,
    }


# -- demos --------------------------------------------------------------------------

KLEIN = "<a,b: a^2=b^2=[a,b]=1>"
D8_X_C2 = "<a,b,c: a^4=b^2=c^2=[a,c]=[b,c]=1, b*a*b^-1=a^-1>"


def menon16() -> tuple[GroupRingElement, frozenset[int]]:
    """(4,1,0) x (4,1,0) in C2^2 x C2^2; returns the transform and its 6-set."""
    V = group_from_text(KLEIN)
    t = gr_from_subset(V, range(4)) - 2 * gr_from_subset(V, [1])
    S = menon_product(t, t)
    return S, S.support(-1)


def dillon16() -> tuple[GroupRingElement, frozenset[int]]:
    """C4 = <a> and C2^2 = <b, c> inside D8 x C2."""
    G = group_from_text(D8_X_C2)
    a, b, c = G.gen_indices
    H = Subgroup(G, [G.power(a, i) for i in range(4)])
    K = Subgroup(G, [0, b, c, int(G.mul[b, c])])
    sh = subgroup_transform(H, [a])
    sk = subgroup_transform(K, [b])
    S = dillon_product(G, H, K, sh, sk)
    return S, S.support(-1)
