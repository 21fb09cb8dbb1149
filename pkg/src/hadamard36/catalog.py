"""The bundled table of 35 difference sets and batch verification against it."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .constructions import (
    ConstructionError,
    RdsSelection,
    SpreadSelection,
    positive_support,
    rds_in_subgroup,
    rds_spread_construct,
    run_rds_spread_search,
    run_spread_search,
    spread_construct,
)
from .designs import (
    HADAMARD_36,
    classify,
    is_difference_set,
    is_hadamard_transform,
    orbit_masks,
    set_to_mask,
)
from .groupring import GroupRingElement, subgroup_transform
from .groups import (
    EnumerationError,
    FiniteGroup,
    Subgroup,
    build_group,
    closure,
    is_left_transversal,
    is_normal,
    spread_of,
    sylow_3,
)
from .presentation import ParseError, Presentation, parse_presentation, parse_word

__all__ = [
    "CatalogError",
    "CatalogRow",
    "Catalog",
    "RowOutcome",
    "GroupSummary",
    "VerificationReport",
    "EXPECTED_CLASS_COUNTS",
    "bundled_catalog_path",
    "load_catalog",
    "parse_catalog",
    "verify_row",
    "verify_all",
    "search_group",
]

EXPECTED_CLASS_COUNTS = {"g1": 4, "g2": 6, "g3": 1, "g4": 5, "g5": 3, "g6": 1, "g7": 6, "g8": 6, "g9": 3}

# R0 = 1 + a + a^2 b, the fixed first factor of reading B
FIXED_R0 = ("1", "a", "a^2*b")


class CatalogError(ValueError):
    def __init__(self, message: str, path: str = "<catalog>", line: int = 0):
        self.path, self.line = path, line
        super().__init__(f"{path}:{line}: {message}")


@dataclass
class CatalogRow:
    group_id: str
    label: str
    kind: str                                   # "spread" | "rds"
    l0: tuple[str, str]                         # (shift word, line generator word)
    terms: list[tuple[str, str]] = field(default_factory=list)   # spread: (shift, line)
    rds_terms: list[list[str]] = field(default_factory=list)     # rds: three words each
    x: str = ""
    y: str = ""
    line: int = 0


@dataclass
class Catalog:
    presentations: dict[str, Presentation]
    rows: list[CatalogRow]
    path: str = "<catalog>"
    group_lines: dict[str, int] = field(default_factory=dict)
    _groups: dict[str, FiniteGroup] = field(default_factory=dict, repr=False)

    def group(self, gid: str) -> FiniteGroup:
        if gid not in self._groups:
            self._groups[gid] = build_group(self.presentations[gid], label=gid)
        return self._groups[gid]

    def rows_for(self, gid: str) -> list[CatalogRow]:
        return [r for r in self.rows if r.group_id == gid]

    def row(self, label: str) -> CatalogRow:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)

    def restricted(self, group_ids) -> Catalog:
        keep = set(group_ids)
        return Catalog({g: p for g, p in self.presentations.items() if g in keep},
                       [r for r in self.rows if r.group_id in keep], self.path,
                       self.group_lines, self._groups)


def bundled_catalog_path() -> Path:
    return Path(str(resources.files("hadamard36") / "data" / "catalog.txt"))


def _split_kv(text: str, path: str, lineno: int) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep:
        raise CatalogError(f"expected 'key = value', got {text!r}", path, lineno)
    return key.strip(), value.strip()


def parse_catalog(text: str, path: str = "<catalog>") -> Catalog:
    presentations: dict[str, Presentation] = {}
    group_lines: dict[str, int] = {}
    rows: list[CatalogRow] = []
    current: CatalogRow | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "group":
            gid, _, ptext = rest.strip().partition(" ")
            try:
                presentations[gid] = parse_presentation(ptext)
            except ParseError as exc:
                raise CatalogError(f"presentation: {exc}", path, lineno) from exc
            group_lines[gid] = lineno
            current = None
        elif head == "row":
            parts = rest.split()
            if len(parts) != 3 or parts[2] not in ("spread", "rds"):
                raise CatalogError("expected 'row <group> <label> spread|rds'", path, lineno)
            if parts[0] not in presentations:
                raise CatalogError(f"unknown group {parts[0]!r}", path, lineno)
            current = CatalogRow(parts[0], parts[1], parts[2], ("1", "1"), line=lineno)
            rows.append(current)
        else:
            if current is None:
                raise CatalogError(f"unexpected line {line!r}", path, lineno)
            _parse_row_line(current, line, presentations[current.group_id], path, lineno)
    if not rows:
        raise CatalogError("catalog has no rows", path, 0)
    for r in rows:
        need = 3 if r.kind == "spread" else 0
        if len(r.terms) != need or (r.kind == "rds" and len(r.rds_terms) != 3) or not (r.x and r.y):
            raise CatalogError(f"row {r.label} is incomplete", path, r.line)
    return Catalog(presentations, rows, path, group_lines)


def _parse_row_line(row: CatalogRow, line: str, pres: Presentation, path: str, lineno: int) -> None:
    def word(text: str) -> str:
        try:
            parse_word(text, pres.generators)
        except ParseError as exc:
            raise CatalogError(f"word {text!r}: {exc.message}", path, lineno) from exc
        return text.strip()

    if line.startswith("x") and ";" in line:
        for part in line.split(";"):
            k, v = _split_kv(part, path, lineno)
            if k not in ("x", "y"):
                raise CatalogError(f"unknown key {k!r}", path, lineno)
            setattr(row, k, word(v))
        return
    key, value = _split_kv(line, path, lineno)
    if key == "L0":
        if ":" in value:
            shift, _, gen = value.partition(":")
            row.l0 = (word(shift), word(gen))
        else:
            row.l0 = ("1", word(value))
    elif key in ("T1", "T2", "T3") and row.kind == "spread":
        shift, sep, gen = value.partition(":")
        if not sep:
            raise CatalogError("expected '<shift> : <line>'", path, lineno)
        row.terms.append((word(shift), word(gen)))
    elif key in ("R1", "R2", "R3") and row.kind == "rds":
        row.rds_terms.append([word(w) for w in value.split("+")])
    else:
        raise CatalogError(f"unexpected key {key!r} in {row.kind} row", path, lineno)


def load_catalog(path: str | Path | None = None, check_groups: bool = True) -> Catalog:
    """Read and cross-check a catalog; the bundled one when ``path`` is None."""
    p = Path(path) if path is not None else bundled_catalog_path()
    try:
        text = p.read_text()
    except OSError as exc:
        raise CatalogError(f"cannot read: {exc}", str(p), 0) from exc
    cat = parse_catalog(text, str(p))
    if check_groups:
        lines_of = cat.group_lines
        for gid in cat.presentations:
            try:
                G = cat.group(gid)
            except EnumerationError as exc:
                raise CatalogError(f"group {gid}: {exc}", str(p), lines_of.get(gid, 0)) from exc
            if G.order != 36:
                raise CatalogError(f"group {gid} has order {G.order}, expected 36", str(p),
                                   lines_of.get(gid, 0))
        for r in cat.rows:
            H, _ = sylow_3(cat.group(r.group_id))
            normal = is_normal(cat.group(r.group_id), H)
            if (r.kind == "rds") == normal:
                raise CatalogError(f"row {r.label}: kind {r.kind} does not fit group {r.group_id}",
                                   str(p), r.line)
    return cat


# -- verification ---------------------------------------------------------------------

@dataclass
class RowOutcome:
    label: str
    group_id: str
    status: str                      # pass | fail | class-mismatch
    interpretation: str = ""
    dset: frozenset[int] | None = None
    transform: GroupRingElement | None = None
    message: str = ""
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _line(G: FiniteGroup, word: str) -> Subgroup:
    return closure(G, [G.element(word)])


def _valid(G: FiniteGroup, S: GroupRingElement) -> bool:
    if not is_hadamard_transform(G, S):
        return False
    D = positive_support(S)
    return len(D) == 15 and is_difference_set(G, D, HADAMARD_36)


def _verify_spread_row(G: FiniteGroup, row: CatalogRow) -> RowOutcome:
    H, _ = sylow_3(G)
    sp = spread_of(H)
    try:
        lines = [_line(G, row.l0[1])] + [_line(G, gen) for _, gen in row.terms]
        assignment = tuple(sp.lines.index(L) for L in lines)
    except ValueError:
        return RowOutcome(row.label, row.group_id, "fail", "spread",
                          message="a listed line is not a subgroup of order 3 in H")
    if row.l0[0] not in ("1", ""):
        return RowOutcome(row.label, row.group_id, "fail", "spread", message="L0 must be untranslated")
    sel = SpreadSelection(sp, assignment, tuple(G.element(s) for s, _ in row.terms),
                          (G.element(row.x), G.element(row.y)))
    try:
        S = spread_construct(G, sel)
    except ConstructionError as exc:
        return RowOutcome(row.label, row.group_id, "fail", "spread", message=str(exc))
    if not _valid(G, S):
        return RowOutcome(row.label, row.group_id, "fail", "spread", transform=S,
                          message="constructed element is not a Hadamard transform")
    return RowOutcome(row.label, row.group_id, "pass", "spread", positive_support(S), S)


def _rds_table_element(G: FiniteGroup, row: CatalogRow) -> GroupRingElement | None:
    """Reading A: S = L0^ - x R1^ - y R2^ - xy R3^, L0 possibly a coset."""
    H, _ = sylow_3(G)
    x, y = G.element(row.x), G.element(row.y)
    slots = [x, y, int(G.mul[x, y])]
    if not is_left_transversal(G, H, [0] + slots):
        return None
    shift = G.element(row.l0[0])
    coset = [int(G.mul[shift, l]) for l in _line(G, row.l0[1])]
    S = subgroup_transform(H, coset)
    for t, words in zip(slots, row.rds_terms):
        R = {G.element(w) for w in words}
        if len(R) != 3 or not R <= set(H.elements):
            return None
        S = S - subgroup_transform(H, R).left_mul(t)
    return S


def _rds_fixed_r0_sets(G: FiniteGroup, row: CatalogRow) -> list[tuple[int, GroupRingElement]]:
    """Reading B: S = L0^ - R0 g R1^ with R0 = 1 + a + a^2 b, g searched."""
    H, _ = sylow_3(G)
    N = _line(G, row.l0[1])
    r0 = frozenset(G.element(w) for w in FIXED_R0)
    r1 = frozenset(G.element(w) for w in row.rds_terms[0])
    if not (rds_in_subgroup(H, r0, N) and rds_in_subgroup(H, r1, N)):
        return []
    out = []
    for g in range(G.order):
        sel = RdsSelection(H, N, r0, g, r1)
        try:
            S = rds_spread_construct(G, sel)
        except ConstructionError:
            continue
        if _valid(G, S):
            out.append((g, S))
    return out


def _verify_rds_row(G: FiniteGroup, row: CatalogRow, allow_inverse: bool) -> RowOutcome:
    SA = _rds_table_element(G, row)
    a_ok = SA is not None and _valid(G, SA)
    fixed = _rds_fixed_r0_sets(G, row)
    details = {"A_valid": a_ok, "B_valid_g": [G.names[g] for g, _ in fixed]}
    if a_ok and fixed:
        orbit = orbit_masks(G, positive_support(SA), allow_inverse)
        same = [G.names[g] for g, S in fixed if set_to_mask(positive_support(S)) in orbit]
        details["B_matches_A_class_g"] = same
    interp = "+".join(k for k, ok in (("A", a_ok), ("B", bool(fixed))) if ok)
    if a_ok:
        return RowOutcome(row.label, row.group_id, "pass", interp, positive_support(SA), SA,
                          details=details)
    if fixed:
        S = fixed[0][1]
        return RowOutcome(row.label, row.group_id, "pass", interp, positive_support(S), S,
                          details=details)
    return RowOutcome(row.label, row.group_id, "fail", "", message="neither reading validates",
                      details=details)


def verify_row(catalog: Catalog, row: CatalogRow, allow_inverse: bool = False) -> RowOutcome:
    G = catalog.group(row.group_id)
    if row.kind == "spread":
        return _verify_spread_row(G, row)
    return _verify_rds_row(G, row, allow_inverse)


@dataclass
class GroupSummary:
    group_id: str
    rows: int
    passed: int
    classes: int
    expected_classes: int
    equivalent_rows: list[list[str]] = field(default_factory=list)
    duplicate_labels: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.rows and self.classes == self.expected_classes


@dataclass
class VerificationReport:
    outcomes: list[RowOutcome]
    groups: dict[str, GroupSummary]
    equivalence: str
    seconds: float

    @property
    def total_rows(self) -> int:
        return len(self.outcomes)

    @property
    def total_passed(self) -> int:
        return sum(o.passed for o in self.outcomes)

    @property
    def total_classes(self) -> int:
        return sum(g.classes for g in self.groups.values())

    @property
    def ok(self) -> bool:
        return self.total_passed == self.total_rows and all(g.ok for g in self.groups.values())

    def lines(self) -> list[str]:
        out = [f"equivalence: {self.equivalence}"]
        for o in self.outcomes:
            extra = f" [{o.interpretation}]" if o.interpretation else ""
            msg = f" ({o.message})" if o.message else ""
            out.append(f"{o.group_id} {o.label:>4}: {o.status}{extra}{msg}")
        for g in self.groups.values():
            dup = f" equivalent rows: {g.equivalent_rows}" if g.equivalent_rows else ""
            if g.duplicate_labels:
                dup += f" duplicate labels: {g.duplicate_labels}"
            out.append(f"{g.group_id}: {g.passed}/{g.rows} rows pass, "
                       f"{g.classes} classes (expected {g.expected_classes}){dup}")
        out.append(f"total: {self.total_passed}/{self.total_rows} pass, "
                   f"{self.total_classes} classes, {self.seconds:.2f}s")
        return out

    def as_dict(self) -> dict:
        return {
            "equivalence": self.equivalence,
            "rows": [{"label": o.label, "group": o.group_id, "status": o.status,
                      "interpretation": o.interpretation, "message": o.message,
                      "details": o.details} for o in self.outcomes],
            "groups": {g.group_id: {"rows": g.rows, "passed": g.passed, "classes": g.classes,
                                    "expected_classes": g.expected_classes,
                                    "equivalent_rows": g.equivalent_rows,
                                    "duplicate_labels": g.duplicate_labels}
                       for g in self.groups.values()},
            "total_rows": self.total_rows,
            "total_passed": self.total_passed,
            "total_classes": self.total_classes,
            "ok": self.ok,
            "seconds": round(self.seconds, 3),
        }


def _equivalence_name(allow_inverse: bool) -> str:
    base = "left translate + automorphism"
    return base + " + inversion" if allow_inverse else base


def verify_all(catalog: Catalog, allow_inverse: bool = False,
               reference: Catalog | None = None) -> VerificationReport:
    """Verify every row, then classify the row sets per group.

    Each label is meant to be its own class, so the expected class count of a
    group is its number of distinct labels.  With ``reference``, a row whose
    set falls outside the class of the same-labelled reference row is
    reported as ``class-mismatch``.
    """
    t0 = time.perf_counter()
    outcomes = [verify_row(catalog, r, allow_inverse) for r in catalog.rows]
    if reference is not None:
        for o in outcomes:
            if not o.passed:
                continue
            try:
                ref_row = reference.row(o.label)
            except KeyError:
                continue
            if ref_row.group_id != o.group_id or (
                    reference.presentations[o.group_id] != catalog.presentations[o.group_id]):
                continue
            ref = verify_row(reference, ref_row, allow_inverse)
            if not ref.passed:
                continue
            G = catalog.group(o.group_id)
            ref_set = frozenset(G.element(reference.group(o.group_id).names[x]) for x in ref.dset)
            if set_to_mask(o.dset) not in orbit_masks(G, ref_set, allow_inverse):
                o.status = "class-mismatch"
                o.message = f"set is not equivalent to reference {o.label}"
    groups = {}
    for gid in catalog.presentations:
        rows = [o for o in outcomes if o.group_id == gid]
        if not rows:
            continue
        G = catalog.group(gid)
        good = [o for o in rows if o.dset is not None and o.status != "fail"]
        classes = classify(G, [o.dset for o in good], allow_inverse) if good else []
        merged = []
        for c in classes:
            labels = sorted({o.label for o in good if o.dset in c.members},
                            key=lambda s: (len(s), s))
            if len(labels) > 1:
                merged.append(labels)
        labels = [o.label for o in rows]
        dups = sorted({lab for lab in labels if labels.count(lab) > 1})
        groups[gid] = GroupSummary(gid, len(rows), sum(o.passed for o in rows), len(classes),
                                   len(set(labels)), merged, dups)
    return VerificationReport(outcomes, groups, _equivalence_name(allow_inverse),
                              time.perf_counter() - t0)


def search_group(G: FiniteGroup, method: str | None = None):
    """Run the construction that applies to G: spread when the Sylow 3-subgroup
    is normal, the relative-difference-set variant otherwise."""
    if method is None:
        H, _ = sylow_3(G)
        method = "spread" if is_normal(G, H) else "rds"
    if method == "spread":
        return run_spread_search(G)
    if method == "rds":
        return run_rds_spread_search(G)
    raise ValueError(f"unknown method {method!r}")
