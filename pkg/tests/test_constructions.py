import itertools
import random

import numpy as np
import pytest

import oracles
from hadamard36.constructions import (
    ConstructionError,
    RdsSelection,
    SpreadSelection,
    dillon16,
    dillon_product,
    menon16,
    menon_product,
    positive_support,
    rds_spread_construct,
    run_rds_spread_search,
    run_spread_search,
    spread_condition_holds,
    spread_construct,
    spread_element,
    spread_search,
    verify_line_identities,
)
from hadamard36.designs import (
    HADAMARD_36,
    classify,
    difference_set_mask,
    is_difference_set,
    is_hadamard_transform,
    set_to_mask,
)
from hadamard36.groupring import gr_from_subset, gr_scalar, subgroup_transform
from hadamard36.groups import (
    Subgroup,
    closure,
    group_from_text,
    is_left_transversal,
    is_right_transversal,
    normalizer,
    spread_of,
    sylow_3,
)

KLEIN = "<a,b: a^2=b^2=[a,b]=1>"


def selection(G, l0, lines, shifts, x, y):
    H, _ = sylow_3(G)
    sp = spread_of(H)
    L = [closure(G, [G.element(w)]) for w in [l0, *lines]]
    return SpreadSelection(sp, tuple(sp.lines.index(l) for l in L),
                           tuple(G.element(h) for h in shifts), (G.element(x), G.element(y)))


def check_valid(G, S):
    assert is_hadamard_transform(G, S)
    assert S.augmentation() == -6
    plus, minus = S.support(1), S.support(-1)
    assert len(plus) == 15 and len(minus) == 21
    m, inv = G.mul.tolist(), G.inv.tolist()
    assert oracles.difference_set_oracle(m, inv, plus, 6)
    assert oracles.difference_set_oracle(m, inv, minus, 12)


def test_d1_row(groups):
    G = groups["g1"]
    sel = selection(G, "a", ["b", "a*b", "a*b^2"], ["1", "b", "b"], "c", "c^2")
    assert spread_condition_holds(G, sel)
    check_valid(G, spread_construct(G, sel))


def test_group1_every_shift_triple(groups):
    G = groups["g1"]
    base = selection(G, "a", ["b", "a*b", "a*b^2"], ["1", "1", "1"], "c", "c^2")
    H = base.spread.ambient
    for shifts in itertools.product(H.elements, repeat=3):
        sel = SpreadSelection(base.spread, base.assignment, shifts, base.transversal)
        D = positive_support(spread_construct(G, sel))
        assert is_difference_set(G, D, HADAMARD_36)


def test_abelian_condition_vacuous(groups):
    G = groups["g5"]
    H, _ = sylow_3(G)
    sp = spread_of(H)
    c, d = G.element("c"), G.element("d")
    for assignment in itertools.permutations(range(4)):
        assert spread_condition_holds(G, SpreadSelection(sp, assignment, (0, 0, 0), (c, d)))


def test_group4_table_placement(groups):
    G = groups["g4"]
    sel = selection(G, "a", ["a*b^2", "b", "a*b"], ["a*b", "1", "b"], "c", "c^2")
    assert spread_condition_holds(G, sel)
    bad = selection(G, "b", ["a", "a*b", "a*b^2"], ["1", "1", "1"], "c", "c^2")
    assert not spread_condition_holds(G, bad)
    with pytest.raises(ConstructionError):
        spread_construct(G, bad)


def test_selection_preconditions(groups):
    G = groups["g1"]
    with pytest.raises(ConstructionError):
        spread_condition_holds(G, selection(G, "a", ["b", "a*b", "a*b^2"], ["1", "1", "1"], "c^2", "c^2"))
    with pytest.raises(ConstructionError):
        spread_condition_holds(G, selection(G, "a", ["b", "a*b", "a*b^2"], ["c", "1", "1"], "c", "c^2"))


def test_group4_condition_iff_transform(groups):
    """Every selection in g4: condition holds exactly when S S^(-1) = 36."""
    G = groups["g4"]
    H, _ = sylow_3(G)
    sp = spread_of(H)
    pool = [g for g in normalizer(G, H).elements if g not in H]
    pairs = [(x, y) for x in pool for y in pool
             if is_left_transversal(G, H, [0, x, y, int(G.mul[x, y])])]
    hs = list(H.elements)
    h_mask = set_to_mask(hs)
    verdicts = {}
    seen = {True: 0, False: 0}
    for assignment in itertools.permutations(range(4)):
        L = [sp.lines[i] for i in assignment]
        for x, y in pairs:
            sel = SpreadSelection(sp, assignment, (0, 0, 0), (x, y))
            ok = spread_condition_holds(G, sel)
            seen[ok] += 729
            slot = [np.array([set_to_mask(G.mul[t, G.mul[h, list(line.elements)]]) for h in hs])
                    for t, line in zip(sel.slot_elements(G), L[1:])]
            grid = slot[0][:, None, None] | slot[1][None, :, None] | slot[2][None, None, :]
            for m in (grid.ravel() | (h_mask & ~set_to_mask(L[0].elements))).tolist():
                assert verdicts.setdefault(m, ok) == ok
    assert seen[True] and seen[False]
    masks = sorted(verdicts)
    is_ds = difference_set_mask(G, masks, HADAMARD_36)
    assert [verdicts[m] for m in masks] == is_ds.tolist()
    # the bit-mask support formula agrees with the group ring element
    rng = random.Random(4)
    for _ in range(300):
        sel = SpreadSelection(sp, tuple(rng.sample(range(4), 4)),
                              tuple(rng.choice(hs) for _ in range(3)), rng.choice(pairs))
        S = spread_element(G, sel)
        m = set_to_mask(positive_support(S))
        assert is_hadamard_transform(G, S) == verdicts[m] == spread_condition_holds(G, sel)


@pytest.mark.parametrize("gid, classes", [("g1", 4), ("g3", 1)])
def test_spread_search_classes(groups, gid, classes):
    G = groups[gid]
    assert len(classify(G, spread_search(G))) == classes


def test_spread_search_group9_empty(g9):
    H, _ = sylow_3(g9)
    assert normalizer(g9, H) == H
    r = run_spread_search(g9)
    assert r.candidates == 0 and r.sets == []


def test_cyclic_sylow_is_an_error():
    C36 = group_from_text("<a: a^36>")
    with pytest.raises(ConstructionError):
        run_spread_search(C36)
    with pytest.raises(ConstructionError):
        run_rds_spread_search(C36)


def test_rds_construct(g9):
    H, _ = sylow_3(g9)
    N = closure(g9, [g9.element("b")])
    r0 = frozenset(g9.element(w) for w in ("1", "a", "a^2*b"))
    r1 = frozenset(g9.element(w) for w in ("1", "a", "a^2*b^2"))
    good = [g for g in range(36) if is_left_transversal(g9, H, RdsSelection(H, N, r0, g, r1).transversal(g9))]
    assert good
    for g in good:
        sel = RdsSelection(H, N, r0, g, r1)
        assert not is_right_transversal(g9, H, sel.transversal(g9))
        check_valid(g9, rds_spread_construct(g9, sel))
    with pytest.raises(ConstructionError):
        rds_spread_construct(g9, RdsSelection(H, N, frozenset(N.elements), good[0], r1))
    bad_g = next(g for g in range(36) if g not in good)
    with pytest.raises(ConstructionError):
        rds_spread_construct(g9, RdsSelection(H, N, r0, bad_g, r1))


def test_rds_construct_needs_nonnormal(groups):
    G = groups["g1"]
    H, _ = sylow_3(G)
    N = closure(G, [G.element("b")])
    r0 = frozenset(G.element(w) for w in ("1", "a", "a^2*b"))
    for g in range(36):
        with pytest.raises(ConstructionError):
            rds_spread_construct(G, RdsSelection(H, N, r0, g, r0))


def test_rds_search(groups):
    for gid, G in groups.items():
        r = run_rds_spread_search(G)
        if gid == "g9":
            assert len(classify(G, r.sets)) == 3
            assert not r.rejected
            assert all(is_difference_set(G, D, HADAMARD_36) for D in r.sets)
        else:
            assert r.sets == [] and r.condition_passes == 0


def test_line_identities():
    H = group_from_text("<a,b: a^3=b^3=[a,b]=1>")
    results = verify_line_identities(H)
    assert len(results) == 10 and all(results.values())
    with pytest.raises(ValueError):
        verify_line_identities(group_from_text("<a: a^9>"))


def test_menon16():
    S, D = menon16()
    G = S.group
    assert G.order == 16 and is_hadamard_transform(G, S)
    assert oracles.difference_set_oracle(G.mul.tolist(), G.inv.tolist(), D, 2) and len(D) == 6
    assert S.augmentation() == 2 * 2


def test_menon_trivial_factor():
    V = group_from_text(KLEIN)
    T = group_from_text("<a: a>")
    t = gr_from_subset(V, range(4)) - 2 * gr_from_subset(V, [3])
    S = menon_product(t, gr_scalar(T, 1))
    assert S.group.order == 4 and S.coeffs.tolist() == t.coeffs.tolist()
    with pytest.raises(ConstructionError):
        menon_product(t, gr_scalar(T, 2))


def test_menon_rejects_non_transform():
    V = group_from_text(KLEIN)
    with pytest.raises(ConstructionError):
        menon_product(gr_from_subset(V, range(4)), gr_from_subset(V, range(4)))


def test_dillon16():
    S, D = dillon16()
    G = S.group
    assert not G.is_abelian() and is_hadamard_transform(G, S)
    assert oracles.difference_set_oracle(G.mul.tolist(), G.inv.tolist(), D, 2) and len(D) == 6


def test_dillon_matches_menon_on_direct_factors():
    V = group_from_text(KLEIN)
    t = gr_from_subset(V, range(4)) - 2 * gr_from_subset(V, [1])
    S = menon16()[0]
    G = S.group
    H = Subgroup(G, [x for x in range(16) if G.words[x] and max(G.words[x]) < 2] + [0])
    K = Subgroup(G, [x for x in range(16) if not G.words[x] or min(G.words[x]) >= 2])
    assert H.order == 4 and K.order == 4
    sh = subgroup_transform(H, [G.gen_indices[0]])
    sk = subgroup_transform(K, [G.gen_indices[2]])
    assert dillon_product(G, H, K, sh, sk) == sh * sk
    assert is_hadamard_transform(G, sh * sk)
    assert t.augmentation() ** 2 == (sh * sk).augmentation()


def test_dillon_preconditions():
    G = dillon16()[0].group
    a = G.gen_indices[0]
    H = Subgroup(G, [G.power(a, i) for i in range(4)])
    K = Subgroup(G, [0, G.power(a, 2)])
    with pytest.raises(ConstructionError):
        dillon_product(G, H, K, subgroup_transform(H, [a]), gr_scalar(G, 1))
