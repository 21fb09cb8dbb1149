"""Finite groups as multiplication tables, built from presentations.

Elements are integers ``0..order-1`` with 0 the identity.  Indices follow a
breadth-first search from the identity over the generators in declared
order, so every element's name is its shortest positive word, ties broken
lexicographically.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .presentation import Presentation, Word, parse_presentation

__all__ = [
    "EnumerationError",
    "FiniteGroup",
    "Subgroup",
    "Automorphism",
    "Spread",
    "build_group",
    "group_from_text",
    "direct_product",
    "closure",
    "all_subgroups",
    "subgroups_of_order",
    "sylow_3",
    "is_elementary_abelian",
    "spread_of",
    "is_normal",
    "normalizer",
    "center",
    "derived_subgroup",
    "is_left_transversal",
    "is_right_transversal",
    "conjugate_subgroup",
    "automorphism_group",
    "automorphism_matrix",
]


class EnumerationError(RuntimeError):
    """Coset enumeration ran past its limits (group infinite or too large)."""


class _CosetTable:
    """Felsch-free HLT coset enumeration over the trivial subgroup.

    Column ``2i`` is generator i and ``2i+1`` its inverse.  Coincidences are
    handled with the forwarding array ``p`` (Holt, Eick, O'Brien, ch. 5).
    """

    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.p = [0]

    def define(self, a: int, x: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise EnumerationError(f"coset enumeration exceeded {self.max_cosets} cosets")
        b = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(b)
        self.table[a][x] = b
        self.table[b][x ^ 1] = a

    def rep(self, k: int) -> int:
        root = k
        while self.p[root] != root:
            root = self.p[root]
        while self.p[k] != root:
            self.p[k], k = root, self.p[k]
        return root

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = self.table[g]
            for x in range(self.ncols):
                d = row[x]
                if d is None:
                    continue
                self.table[d][x ^ 1] = None
                mu, nu = self.rep(g), self.rep(d)
                if self.table[mu][x] is not None:
                    self.merge(nu, self.table[mu][x], queue)
                elif self.table[nu][x ^ 1] is not None:
                    self.merge(mu, self.table[nu][x ^ 1], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][x ^ 1] = mu

    def scan_and_fill(self, a: int, w: list[int]) -> None:
        t = self.table
        f, b = a, a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] is not None:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][w[j] ^ 1] is not None:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def enumerate(self, relators: list[list[int]]) -> None:
        a = 0
        while a < len(self.table):
            for r in relators:
                if self.p[a] != a:
                    break
                self.scan_and_fill(a, r)
            if self.p[a] == a:
                for x in range(self.ncols):
                    if self.table[a][x] is None:
                        self.define(a, x)
            a += 1

    def compact(self) -> list[list[int]]:
        live = [k for k in range(len(self.table)) if self.p[k] == k]
        index = {k: i for i, k in enumerate(live)}
        return [[index[self.rep(self.table[k][x])] for x in range(self.ncols)] for k in live]


@dataclass(eq=False)
class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``mul[x, y]`` is the index of ``x*y``; ``words[x]`` is the canonical
    generator sequence of element x.
    """

    mul: np.ndarray
    generators: tuple[str, ...]
    gen_indices: tuple[int, ...]
    words: tuple[tuple[int, ...], ...]
    presentation: Presentation | None = None
    label: str = ""

    def __post_init__(self):
        self.mul.setflags(write=False)
        n = self.order
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == 0)
        inv[rows] = cols
        inv.setflags(write=False)
        self.inv = inv

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    identity = 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"<FiniteGroup{tag} order={self.order}>"

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(self.name_of_word(w) for w in self.words)

    def name_of_word(self, letters: Sequence[int]) -> str:
        return Word(tuple((g, 1) for g in letters)).render(self.generators)

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    def element(self, text: str | Word) -> int:
        """Index of the element named by a word (any form, not only canonical)."""
        if isinstance(text, str):
            if text in self._name_index:
                return self._name_index[text]
            text = Word() if text.strip() == "1" else parse_word_for(self, text)
        return self.evaluate(text)

    def evaluate(self, w: Word) -> int:
        x = 0
        for g, e in w.factors:
            gi = self.gen_indices[g]
            if e < 0:
                gi = int(self.inv[gi])
            for _ in range(abs(e)):
                x = int(self.mul[x, gi])
        return x

    def power(self, x: int, n: int) -> int:
        if n < 0:
            x, n = int(self.inv[x]), -n
        r = 0
        for _ in range(n):
            r = int(self.mul[r, x])
        return r

    @cached_property
    def element_orders(self) -> np.ndarray:
        out = np.zeros(self.order, dtype=np.int64)
        for x in range(self.order):
            y, k = x, 1
            while y != 0:
                y = int(self.mul[y, x])
                k += 1
            out[x] = k
        return out

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1"""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    def check_associative(self, samples: int | None = None, seed: int = 0) -> bool:
        m = self.mul
        n = self.order
        if samples is None:
            # (xy)z == x(yz) for all triples, one x-slab at a time
            for x in range(n):
                left = m[m[x][:, None], np.arange(n)[None, :]]  # (xy)z indexed [y, z]
                right = m[x][m]  # x(yz) indexed [y, z]
                if not np.array_equal(left, right):
                    return False
            return True
        rng = np.random.default_rng(seed)
        x, y, z = rng.integers(0, n, size=(3, samples))
        return bool(np.array_equal(m[m[x, y], z], m[x, m[y, z]]))

    def is_latin(self) -> bool:
        target = np.arange(self.order)
        srt = np.sort(self.mul, axis=1)
        srt_t = np.sort(self.mul, axis=0)
        return bool((srt == target).all() and (srt_t == target[:, None]).all())


def parse_word_for(G: FiniteGroup, text: str) -> Word:
    from .presentation import parse_word

    return parse_word(text, G.generators)


def build_group(p: Presentation, order_cap: int = 200, max_cosets: int | None = None,
                label: str = "") -> FiniteGroup:
    """Enumerate the group presented by ``p`` and return its Cayley table.

    A presentation that collapses to a smaller quotient is not an error; the
    returned group simply has the smaller order.
    """
    ngens = len(p.generators)
    if max_cosets is None:
        max_cosets = max(64 * order_cap, 10_000)
    ct = _CosetTable(ngens, max_cosets)
    ct.enumerate([r.letters() for r in p.relators])
    table = ct.compact()
    n = len(table)
    if n > order_cap:
        raise EnumerationError(f"group order {n} exceeds order cap {order_cap}")

    # relabel by BFS over positive generators; queue order is lexicographic per level
    words: dict[int, tuple[int, ...]] = {0: ()}
    queue = deque([0])
    order_seen = [0]
    while queue:
        c = queue.popleft()
        for g in range(ngens):
            d = table[c][2 * g]
            if d not in words:
                words[d] = words[c] + (g,)
                queue.append(d)
                order_seen.append(d)
    relabel = {c: i for i, c in enumerate(order_seen)}
    right = np.array([[relabel[table[c][2 * g]] for g in range(ngens)] for c in order_seen],
                     dtype=np.int64).reshape(n, ngens)
    elem_words = tuple(words[c] for c in order_seen)

    # mul[x, y]: apply y's word to x letter by letter
    word_index = {w: i for i, w in enumerate(elem_words)}
    mul = np.empty((n, n), dtype=np.int64)
    mul[:, 0] = np.arange(n)
    for y in range(1, n):
        w = elem_words[y]
        mul[:, y] = right[mul[:, word_index[w[:-1]]], w[-1]]
    gen_indices = tuple(int(right[0, g]) for g in range(ngens))
    G = FiniteGroup(mul=mul, generators=p.generators, gen_indices=gen_indices,
                    words=elem_words, presentation=p, label=label)
    return G


def group_from_text(text: str, order_cap: int = 200, label: str = "") -> FiniteGroup:
    return build_group(parse_presentation(text), order_cap=order_cap, label=label)


def direct_product(H: FiniteGroup, K: FiniteGroup) -> tuple[FiniteGroup, list[int], list[int]]:
    """Build H x K from the two presentations; return it with both embeddings."""
    if H.presentation is None or K.presentation is None:
        raise ValueError("direct_product needs groups built from presentations")
    nh, nk = len(H.generators), len(K.generators)
    if nh + nk > 26:
        raise ValueError("too many generators")
    letters = tuple("abcdefghijklmnopqrstuvwxyz"[: nh + nk])

    def shift(w: Word, by: int) -> Word:
        return Word(tuple((g + by, e) for g, e in w.factors))

    rels = [shift(r, 0) for r in H.presentation.relators]
    rels += [shift(r, nh) for r in K.presentation.relators]
    for i in range(nh):
        for j in range(nh, nh + nk):
            u, v = Word(((i, 1),)), Word(((j, 1),))
            rels.append(u.inverse() * v.inverse() * u * v)
    G = build_group(Presentation(letters, tuple(rels)), order_cap=H.order * K.order)
    embed_h = [G.evaluate(Word(tuple((g, 1) for g in w))) for w in H.words]
    embed_k = [G.evaluate(Word(tuple((g + nh, 1) for g in w))) for w in K.words]
    return G, embed_h, embed_k


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(int(e) for e in self.elements))))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return int(x) in self._set

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __repr__(self) -> str:
        names = ",".join(self.parent.names[e] for e in self.elements)
        return f"Subgroup({{{names}}})"

    def is_closed(self) -> bool:
        s = self._set
        if 0 not in s:
            return False
        return all(int(self.parent.mul[x, y]) in s for x in s for y in s)

    def left_coset(self, g: int) -> frozenset[int]:
        return frozenset(int(self.parent.mul[g, h]) for h in self.elements)

    def right_coset(self, g: int) -> frozenset[int]:
        return frozenset(int(self.parent.mul[h, g]) for h in self.elements)


def closure(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    elems = {0}
    frontier = [0]
    gens = [int(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(G.mul[x, g])
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(elems))


_SUBGROUP_CACHE: dict[int, tuple[Subgroup, ...]] = {}


def all_subgroups(G: FiniteGroup) -> tuple[Subgroup, ...]:
    """Every subgroup, by repeatedly adjoining single elements to known ones."""
    key = id(G)
    cached = _SUBGROUP_CACHE.get(key)
    if cached is not None and cached[0].parent is G:
        return cached
    found: dict[tuple[int, ...], Subgroup] = {}
    layer = []
    for x in range(G.order):
        s = closure(G, [x])
        if s.elements not in found:
            found[s.elements] = s
            layer.append(s)
    while layer:
        nxt = []
        for s in layer:
            for x in range(G.order):
                if x in s:
                    continue
                t = closure(G, list(s.elements) + [x])
                if t.elements not in found:
                    found[t.elements] = t
                    nxt.append(t)
        layer = nxt
    result = tuple(sorted(found.values(), key=lambda s: (s.order, s.elements)))
    _SUBGROUP_CACHE[key] = result
    return result


def subgroups_of_order(G: FiniteGroup, n: int) -> list[Subgroup]:
    if n <= 0 or G.order % n:
        raise ValueError(f"{n} does not divide the group order {G.order}")
    return sorted((s for s in all_subgroups(G) if s.order == n), key=lambda s: s.elements)


def is_elementary_abelian(H: Subgroup) -> bool:
    G = H.parent
    if any(int(G.mul[x, y]) != int(G.mul[y, x]) for x in H for y in H):
        return False
    orders = {int(G.element_orders[x]) for x in H if x != 0}
    return len(orders) <= 1 and all(_is_prime(o) for o in orders)


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def sylow_3(G: FiniteGroup) -> tuple[Subgroup, bool]:
    """A Sylow 3-subgroup of a group of order 36, and whether it is C3 x C3."""
    if G.order != 36:
        raise ValueError("sylow_3 expects a group of order 36")
    H = subgroups_of_order(G, 9)[0]
    return H, is_elementary_abelian(H)


@dataclass(frozen=True)
class Spread:
    ambient: Subgroup
    lines: tuple[Subgroup, ...]

    def index(self, line: Subgroup) -> int:
        return self.lines.index(line)


def spread_of(H: Subgroup) -> Spread:
    if H.order != 9 or not is_elementary_abelian(H):
        raise ValueError("a spread needs an elementary abelian subgroup of order 9")
    G = H.parent
    lines = {closure(G, [x]).elements for x in H if x != 0}
    lines = tuple(Subgroup(G, e) for e in sorted(lines))
    return Spread(H, lines)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    s = H._set
    return all(G.conjugate(g, h) in s for g in G.gen_indices for h in H.elements)


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    s = H._set
    elems = [g for g in range(G.order) if all(G.conjugate(g, h) in s for h in H.elements)]
    return Subgroup(G, elems)


def center(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, [g for g in range(G.order) if np.array_equal(G.mul[g], G.mul[:, g])])


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    comms = {int(G.mul[G.mul[G.inv[x], G.inv[y]], G.mul[x, y]]) for x in range(G.order)
             for y in range(G.order)}
    return closure(G, comms)


def _coset_partition(cosets: list[frozenset[int]], order: int) -> bool:
    seen: set[int] = set()
    for c in cosets:
        if c & seen:
            return False
        seen |= c
    return len(seen) == order


def is_left_transversal(G: FiniteGroup, H: Subgroup, reps: Sequence[int]) -> bool:
    if len(reps) * H.order != G.order:
        raise ValueError("transversal size times subgroup order must equal the group order")
    return _coset_partition([H.left_coset(r) for r in reps], G.order)


def is_right_transversal(G: FiniteGroup, H: Subgroup, reps: Sequence[int]) -> bool:
    if len(reps) * H.order != G.order:
        raise ValueError("transversal size times subgroup order must equal the group order")
    return _coset_partition([H.right_coset(r) for r in reps], G.order)


def conjugate_subgroup(G: FiniteGroup, g: int, H: Subgroup) -> Subgroup:
    return Subgroup(G, [G.conjugate(g, h) for h in H.elements])


@dataclass(frozen=True)
class Automorphism:
    perm: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def compose(self, other: Automorphism) -> Automorphism:
        """self after other"""
        return Automorphism(tuple(self.perm[x] for x in other.perm))

    def inverse(self) -> Automorphism:
        out = [0] * len(self.perm)
        for i, x in enumerate(self.perm):
            out[x] = i
        return Automorphism(tuple(out))


def _images_to_perm(G: FiniteGroup, images: Sequence[int]) -> list[int] | None:
    # extend generator images along canonical words; None if not a bijective hom
    perm = [0] * G.order
    for x in range(1, G.order):
        w = G.words[x]
        perm[x] = int(G.mul[perm[_prefix_index(G, x)], images[w[-1]]])
    if len(set(perm)) != G.order:
        return None
    return perm


def _prefix_index(G: FiniteGroup, x: int) -> int:
    return _prefix_table(G)[x]


def _prefix_table(G: FiniteGroup) -> list[int]:
    tab = getattr(G, "_prefix", None)
    if tab is None:
        index = {w: i for i, w in enumerate(G.words)}
        tab = [0] + [index[w[:-1]] for w in G.words[1:]]
        G._prefix = tab
    return tab


def _relators_hold(G: FiniteGroup, images: Sequence[int]) -> bool:
    for r in G.presentation.relators:
        x = 0
        for g, e in r.factors:
            y = images[g] if e > 0 else int(G.inv[images[g]])
            for _ in range(abs(e)):
                x = int(G.mul[x, y])
        if x != 0:
            return False
    return True


_AUT_CACHE: dict[int, tuple[FiniteGroup, list[Automorphism]]] = {}


def automorphism_group(G: FiniteGroup) -> list[Automorphism]:
    """All automorphisms, as permutations of element indices.

    Candidate images of the declared generators are filtered by element
    order, then by the presentation's relators, then by bijectivity.
    """
    hit = _AUT_CACHE.get(id(G))
    if hit is not None and hit[0] is G:
        return hit[1]
    if G.presentation is None:
        raise ValueError("automorphism_group needs a group built from a presentation")
    orders = G.element_orders
    choices = [[x for x in range(G.order) if orders[x] == orders[g]] for g in G.gen_indices]
    auts = []
    for images in itertools.product(*choices):
        if not _relators_hold(G, images):
            continue
        perm = _images_to_perm(G, images)
        if perm is not None:
            auts.append(Automorphism(tuple(perm)))
    auts.sort(key=lambda a: a.perm)
    _AUT_CACHE[id(G)] = (G, auts)
    return auts


def automorphism_matrix(G: FiniteGroup) -> np.ndarray:
    """Automorphisms stacked as an (n_aut, order) integer array."""
    return np.array([a.perm for a in automorphism_group(G)], dtype=np.int64)
