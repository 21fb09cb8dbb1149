"""Integer group ring Z[G] over a FiniteGroup."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .groups import FiniteGroup, Subgroup

__all__ = [
    "GroupRingElement",
    "gr_from_subset",
    "gr_scalar",
    "gr_multiply",
    "gr_involution",
    "gr_transform",
    "gr_untransform",
    "subgroup_transform",
    "parse_element",
]

# |coefficient| bound; order-36 products stay below 36*36
_COEFF_LIMIT = 2**40


class GroupRingElement:
    """A formal sum ``sum_g coeffs[g] * g`` with integer coefficients."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs):
        c = np.asarray(coeffs, dtype=np.int64)
        if c.shape != (group.order,):
            raise ValueError(f"expected {group.order} coefficients, got shape {c.shape}")
        c = c.copy()
        c.setflags(write=False)
        self.group = group
        self.coeffs = c

    def _check(self, other: GroupRingElement) -> None:
        if not isinstance(other, GroupRingElement):
            raise TypeError(f"cannot combine GroupRingElement with {type(other).__name__}")
        if other.group is not self.group:
            raise ValueError("group ring elements live over different groups")

    def _lift(self, other) -> GroupRingElement:
        if isinstance(other, (int, np.integer)):
            return gr_scalar(self.group, int(other))
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        return GroupRingElement(self.group, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return GroupRingElement(self.group, self.coeffs - other.coeffs)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return GroupRingElement(self.group, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return GroupRingElement(self.group, self.coeffs * int(other))
        return gr_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return GroupRingElement(self.group, self.coeffs * int(other))
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            other = gr_scalar(self.group, int(other))
        if not isinstance(other, GroupRingElement) or other.group is not self.group:
            return NotImplemented
        return bool(np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None  # type: ignore[assignment]

    def __getitem__(self, g: int) -> int:
        return int(self.coeffs[g])

    def augmentation(self) -> int:
        """Sum of coefficients."""
        return int(self.coeffs.sum())

    def support(self, value: int | None = None) -> frozenset[int]:
        if value is None:
            return frozenset(np.flatnonzero(self.coeffs).tolist())
        return frozenset(np.flatnonzero(self.coeffs == value).tolist())

    def left_mul(self, g: int) -> GroupRingElement:
        """g * self"""
        out = np.zeros_like(self.coeffs)
        out[self.group.mul[g]] = self.coeffs
        return GroupRingElement(self.group, out)

    def right_mul(self, g: int) -> GroupRingElement:
        """self * g"""
        out = np.zeros_like(self.coeffs)
        out[self.group.mul[:, g]] = self.coeffs
        return GroupRingElement(self.group, out)

    def involution(self) -> GroupRingElement:
        return gr_involution(self)

    def render(self) -> str:
        """``c1·w1 + c2·w2 + ...`` over canonical words, in element order."""
        names = self.group.names
        terms = [f"{int(c)}·{names[g]}" for g, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"GroupRingElement({self.render()})"


def gr_scalar(G: FiniteGroup, c: int) -> GroupRingElement:
    coeffs = np.zeros(G.order, dtype=np.int64)
    coeffs[0] = c
    return GroupRingElement(G, coeffs)


def gr_from_subset(G: FiniteGroup, X: Iterable[int]) -> GroupRingElement:
    coeffs = np.zeros(G.order, dtype=np.int64)
    for x in X:
        x = int(x)
        if not 0 <= x < G.order:
            raise IndexError(f"element index {x} out of range for order {G.order}")
        coeffs[x] = 1
    return GroupRingElement(G, coeffs)


def gr_multiply(X: GroupRingElement, Y: GroupRingElement) -> GroupRingElement:
    X._check(Y)
    mul = X.group.mul
    out = np.zeros(X.group.order, dtype=np.int64)
    for x in np.flatnonzero(X.coeffs):
        # row mul[x] is a permutation, so fancy-index accumulation is safe
        out[mul[x]] += X.coeffs[x] * Y.coeffs
    assert np.abs(out).max(initial=0) < _COEFF_LIMIT, "group ring coefficient overflow"
    return GroupRingElement(X.group, out)


def gr_involution(X: GroupRingElement) -> GroupRingElement:
    return GroupRingElement(X.group, X.coeffs[X.group.inv])


def gr_transform(D: GroupRingElement) -> GroupRingElement:
    """G - 2D for a 0/1 element D."""
    if not np.isin(D.coeffs, (0, 1)).all():
        raise ValueError("transform needs a 0/1 element")
    return GroupRingElement(D.group, 1 - 2 * D.coeffs)


def gr_untransform(S: GroupRingElement) -> GroupRingElement:
    """(G - S)/2 for a +-1 element S."""
    if not np.isin(S.coeffs, (-1, 1)).all():
        raise ValueError("untransform needs a +-1 element")
    return GroupRingElement(S.group, (1 - S.coeffs) // 2)


def subgroup_transform(H: Subgroup, X: Iterable[int]) -> GroupRingElement:
    """H - 2X in Z[G], the transform of X taken relative to the subgroup H."""
    G = H.parent
    return gr_from_subset(G, H.elements) - 2 * gr_from_subset(G, X)


def parse_element(G: FiniteGroup, text: str) -> GroupRingElement:
    """Inverse of :meth:`GroupRingElement.render`; accepts any word forms."""
    coeffs = np.zeros(G.order, dtype=np.int64)
    text = text.strip()
    if text == "0":
        return GroupRingElement(G, coeffs)
    for term in text.split(" + "):
        c, sep, w = term.strip().partition("·")
        if not sep:
            raise ValueError(f"malformed term {term!r}")
        coeffs[G.element(w.strip())] += int(c)
    return GroupRingElement(G, coeffs)
