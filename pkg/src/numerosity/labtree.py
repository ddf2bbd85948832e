"""Finite laboratory for pivotal trees, label-trees, and the counting axioms.

Universe elements are atoms (ints) and finite sets over them (frozensets,
rank <= 2).  A pivotal tree carries the preorder as an explicit pair table
and a partial injective successor map; validators exhaustively check the
structural axioms and the derived label-lattice identities, reporting every
violating tuple.  Counting happens through labels: the count of A inside a
label stabilizes on a cone, and the comparison axioms are verified on those
stable counts.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Optional, Union

Elem = Union[int, frozenset]
EMPTY: frozenset = frozenset()


class UnknownElement(KeyError):
    pass


class NotABijection(ValueError):
    pass


def elem_key(e: Elem) -> tuple:
    if isinstance(e, int):
        return (0, e, ())
    return (1, len(e), tuple(sorted(elem_key(x) for x in e)))


def format_elem(e: Elem) -> str:
    if isinstance(e, int):
        return str(e)
    inner = ",".join(format_elem(x) for x in sorted(e, key=elem_key))
    return "{" + inner + "}"


def format_elems(es: Iterable[Elem]) -> str:
    return "{" + ", ".join(format_elem(e) for e in sorted(es, key=elem_key)) + "}"


def parse_elem(text: str) -> Elem:
    text = text.strip()
    if not text.startswith("{"):
        return int(text)
    if not text.endswith("}"):
        raise ValueError(f"unbalanced set literal: {text}")
    body = text[1:-1]
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
    if body.strip():
        parts.append(body[start:])
    return frozenset(parse_elem(p) for p in parts)


@dataclass(frozen=True, slots=True)
class PivotalTree:
    """Universe + preorder table + partial injective successor map."""

    universe: tuple[Elem, ...]
    le: frozenset  # pairs (a, b) meaning a is below b
    succ: tuple[tuple[Elem, Elem], ...]

    def succ_map(self) -> dict:
        return dict(self.succ)

    def below(self, a: Elem, b: Elem) -> bool:
        return (a, b) in self.le

    def equiv(self, a: Elem, b: Elem) -> bool:
        return a == b or (self.below(a, b) and self.below(b, a))


@dataclass(slots=True)
class Report:
    check: str
    violations: list = dc_field(default_factory=list)
    details: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, *witness: Elem, note: str = "") -> None:
        w = ", ".join(format_elem(x) if not isinstance(x, str) else x for x in witness)
        self.violations.append({"rule": rule, "witness": w, **({"note": note} if note else {})})

    def to_json(self) -> str:
        return json.dumps(
            {
                "check": self.check,
                "status": "ok" if self.ok else "violations",
                "witnesses": self.violations,
                **({"details": self.details} if self.details else {}),
            },
            sort_keys=True,
        )


# ---------------------------------------------------------------------------
# Pivotal-tree axioms
# ---------------------------------------------------------------------------


def _one_step_under(a: Elem, b: Elem) -> bool:
    if not isinstance(b, frozenset):
        return False
    if a in b:
        return True
    return isinstance(a, frozenset) and a <= b


def _hereditary_under(a: Elem, b: Elem, universe: tuple[Elem, ...]) -> bool:
    """Membership chains through universe elements, or direct inclusion."""
    if _one_step_under(a, b):
        return True
    seen, stack = set(), [a]
    while stack:
        x = stack.pop()
        for y in universe:
            if isinstance(y, frozenset) and x in y and y not in seen:
                if y == b:
                    return True
                seen.add(y)
                stack.append(y)
    return False


def validate_pivotal(tree: PivotalTree, mode: str = "literal") -> Report:
    """Exhaustive check of the pivotal-tree axioms; lists every violation."""
    rep = Report("pivotal")
    U = tree.universe
    uset = set(U)
    if EMPTY not in uset:
        rep.add("bottom", "{}", note="empty set missing from the universe")
        return rep
    for a, b in tree.le:
        if a not in uset or b not in uset:
            rep.add("table", a, b, note="pair outside the universe")
    for x in U:
        if not tree.below(EMPTY, x):
            rep.add("bottom", x, note="empty set not below this element")
        if not tree.below(x, x):
            rep.add("preorder", x, note="missing reflexive pair")
    for a, b in tree.le:
        for c in U:
            if tree.below(b, c) and not tree.below(a, c):
                rep.add("preorder", a, b, c, note="transitivity fails")
    for x in U:
        for y in U:
            if not any(tree.below(x, z) and tree.below(y, z) for z in U):
                rep.add("directed", x, y, note="no common upper bound")

    sm = tree.succ_map()
    if EMPTY in sm:
        rep.add("successor-injective", "{}", note="successor defined on the empty set")
    seen_targets: dict = {}
    for a, b in sm.items():
        if a not in uset or b not in uset:
            rep.add("successor-injective", a, b, note="successor pair outside the universe")
        if b == EMPTY:
            rep.add("successor-injective", a, note="successor maps into the empty set")
        if b in seen_targets:
            rep.add("successor-injective", seen_targets[b], a, b, note="successor not injective")
        seen_targets[b] = a

    under = (
        _one_step_under
        if mode == "literal"
        else lambda a, b: _hereditary_under(a, b, U)
    )
    for a in U:
        for b in U:
            if a != b and under(a, b) and not tree.below(a, b):
                rep.add("membership-order", a, b, note="membership/inclusion not reflected")

    for a in U:
        if a == EMPTY:
            continue
        for b in U:
            if not tree.below(a, b) or tree.equiv(a, b):
                continue
            x, reached = a, False
            for _ in range(len(U) + 1):
                if x not in sm:
                    break
                x = sm[x]
                if tree.equiv(x, b):
                    reached = True
                    break
            if not reached:
                rep.add("successor-reach", a, b, note="no successor iterate reaches the class")

    # Finite down-sets cannot fail on a finite universe; recorded for
    # completeness of the report.
    rep.details["finite-downsets"] = "finite universe: all down-sets finite"
    return rep


# ---------------------------------------------------------------------------
# Labels and the label-tree identities
# ---------------------------------------------------------------------------


def label(tree: PivotalTree, a: Elem) -> frozenset:
    """The down-set of a: every element lying below it."""
    if a not in set(tree.universe):
        raise UnknownElement(format_elem(a))
    return frozenset(x for x in tree.universe if tree.below(x, a))


def label_family(tree: PivotalTree) -> list[frozenset]:
    fam = {label(tree, a) for a in tree.universe}
    return sorted(fam, key=lambda l: (len(l), sorted(map(elem_key, l))))


def _lattice_join(fam: list[frozenset], lam: frozenset, mu: frozenset) -> Optional[frozenset]:
    uppers = [s for s in fam if lam | mu <= s]
    if not uppers:
        return None
    out = uppers[0]
    for s in uppers[1:]:
        out = out & s
    return out


def _elem_meet(tree: PivotalTree, a: Elem, b: Elem) -> Optional[Elem]:
    down = [x for x in tree.universe if tree.below(x, a) and tree.below(x, b)]
    for c in down:
        if all(tree.below(y, c) for y in down):
            return c
    return None


def _elem_join(tree: PivotalTree, a: Elem, b: Elem) -> Optional[Elem]:
    ub = [z for z in tree.universe if tree.below(a, z) and tree.below(b, z)]
    for c in ub:
        if all(tree.below(c, z) for z in ub):
            return c
    return None


def validate_labeltree(tree: PivotalTree, mode: str = "literal") -> Report:
    """Checks the seven label identities plus the slicing lemmas."""
    rep = Report("labeltree")
    pre = validate_pivotal(tree, mode)
    if not pre.ok:
        rep.add("pivotal", "precondition", note="pivotal-tree axioms fail")
        rep.violations.extend(pre.violations)
        return rep

    U = tree.universe
    labels = {a: label(tree, a) for a in U}
    fam = label_family(tree)
    famset = set(fam)

    for lam in fam:
        for mu in fam:
            if lam & mu not in famset:
                rep.add("label-meet-closed", format_elems(lam), format_elems(mu))
            if _lattice_join(fam, lam, mu) is None:
                rep.add("label-join-closed", format_elems(lam), format_elems(mu))
            inter = lam & mu
            if inter not in (lam, mu, labels[EMPTY]):
                rep.add("meet-trichotomy", format_elems(lam), format_elems(mu))

    for a, b in tree.le:
        if not labels[a] <= labels[b]:
            rep.add("label-monotone", a, b)

    for a in U:
        closure = frozenset().union(*(labels[x] for x in labels[a]))
        if closure != labels[a]:
            rep.add("label-closure", a, note="label not closed under member labels")

    for a in U:
        for b in U:
            m = _elem_meet(tree, a, b)
            if m is None:
                rep.add("label-meet", a, b, note="no greatest common lower bound")
            elif labels[m] != labels[a] & labels[b]:
                rep.add("label-meet", a, b, m)
            j = _elem_join(tree, a, b)
            if j is None:
                rep.add("label-join", a, b, note="no least common upper bound")
            else:
                lj = _lattice_join(fam, labels[a], labels[b])
                if lj is None or labels[j] != lj:
                    rep.add("label-join", a, b, j)

    uset = set(U)
    pair_labels = kuratowski_labels = 0
    for a in U:
        for b in U:
            if elem_key(a) >= elem_key(b):
                continue
            sa, sb, sab = frozenset([a]), frozenset([b]), frozenset([a, b])
            if sa in uset and sb in uset and sab in uset:
                pair_labels += 1
                want = _lattice_join(fam, labels[sa], labels[sb])
                if labels[sab] != want:
                    rep.add("pair-label", a, b)
            ssa, ssb = frozenset([sa]), frozenset([sb])
            kur = frozenset([sa, sab])
            if ssa in uset and ssb in uset and kur in uset:
                kuratowski_labels += 1
                want = _lattice_join(fam, labels[ssa], labels[ssb])
                if labels[kur] != want:
                    rep.add("kuratowski-label", a, b)
    rep.details["pair_label_instances"] = pair_labels
    rep.details["kuratowski_instances"] = kuratowski_labels

    # Slicing order (strict containment respects the enumeration).
    order = sorted(fam, key=len)
    for i, lam in enumerate(order):
        for j in range(i):
            if lam < order[j]:
                rep.add("containment-order", format_elems(lam), format_elems(order[j]),
                        note="size order does not extend strict containment")

    # Disjoint slice decomposition of every label.
    index = {lam: i for i, lam in enumerate(order)}
    for lam in fam:
        cur, slices = lam, []
        while True:
            inside = [m for m in fam if m < cur]
            if not inside:
                slices.append(cur)
                break
            nxt = max(inside, key=lambda m: index[m])
            slices.append(cur - nxt)
            cur = nxt
        union = frozenset().union(*slices) if slices else frozenset()
        total = sum(len(s) for s in slices)
        if union != lam or total != len(lam):
            rep.add("slice-partition", format_elems(lam), note="slices do not partition the label")
    return rep


# ---------------------------------------------------------------------------
# Comparison maps and counting axioms
# ---------------------------------------------------------------------------


def _cone(fam: list[frozenset], vertex: frozenset) -> list[frozenset]:
    return [lam for lam in fam if vertex <= lam]


def _stable_vertex(fam: list[frozenset],
                   pred: Callable[[frozenset], bool]) -> Optional[frozenset]:
    """Smallest label above which pred holds on the whole cone."""
    for vertex in fam:
        if all(pred(lam) for lam in _cone(fam, vertex)):
            return vertex
    return None


def check_comparison_map(tree: PivotalTree, A: frozenset, B: frozenset,
                         phi: dict, vertex: Optional[frozenset] = None) -> bool:
    """True iff |A ∩ λ| = |φ(A) ∩ λ| for every label at or above the vertex.

    The stated vertex defaults to the smallest label containing A together
    with its image, the cone on which both sides are fully visible.
    """
    if set(phi.keys()) != set(A) or set(phi.values()) != set(B) or len(set(phi.values())) != len(phi):
        raise NotABijection("phi is not a bijection from A onto B")
    fam = label_family(tree)
    image = frozenset(phi.values())
    if vertex is None:
        support = A | image
        candidates = [lam for lam in fam if support <= lam]
        if not candidates:
            return False
        vertex = candidates[0]
    return all(len(A & lam) == len(image & lam) for lam in _cone(fam, vertex))


def preserves_labels(tree: PivotalTree, phi: dict) -> bool:
    return all(label(tree, phi[a]) == label(tree, a) for a in phi)


def preserves_relative_labels(tree: PivotalTree, A: frozenset, B: frozenset, phi: dict) -> bool:
    """Relative-label preservation: φ maps the label trace inside A onto the
    image's label trace inside B."""
    return all(
        frozenset(phi[x] for x in label(tree, a) & A) == label(tree, phi[a]) & B
        for a in phi
    )


def stable_count(tree: PivotalTree, A: frozenset) -> int:
    top = max(label_family(tree), key=len)
    return len(A & top)


def check_counting_axioms(tree: PivotalTree,
                          pairs: list[tuple[frozenset, frozenset]]) -> Report:
    """Null/Union/Product/Unit/Euclid on the finite cone structure."""
    rep = Report("counting-axioms")
    fam = label_family(tree)
    checked = {"null": 0, "union": 0, "product": 0, "unit": 0, "euclid": 0}

    def count_vertex(A: frozenset, B: frozenset) -> Optional[frozenset]:
        return _stable_vertex(fam, lambda lam: len(A & lam) == len(B & lam))

    pool: list[frozenset] = []
    for a, b in pairs:
        pool.extend((a, b))
    for A in pool:
        checked["null"] += 1
        if (stable_count(tree, A) == 0) != (len(A) == 0):
            rep.add("null", format_elems(A))

    equinumerous = []
    stabilized = []
    for A, B in pairs:
        if len(A) == len(B):
            v = count_vertex(A, B)
            if v is None:
                rep.add("comparison", format_elems(A), format_elems(B),
                        note="equal finite sets never stabilize")
            else:
                equinumerous.append((A, B, v))
                stabilized.append(
                    {"a": format_elems(A), "b": format_elems(B),
                     "cone": format_elems(v)}
                )
        if A < B:
            checked["euclid"] += 1
            w = next(iter(B - A))
            vertex = label(tree, w)
            bad = [
                lam for lam in _cone(fam, vertex)
                if not len(A & lam) < len(B & lam)
            ]
            if bad:
                rep.add("euclid", format_elems(A), format_elems(B))

    for i in range(len(equinumerous)):
        for j in range(i + 1, len(equinumerous)):
            A, A2, v1 = equinumerous[i]
            B, B2, v2 = equinumerous[j]
            joint = v1 | v2
            cone = [lam for lam in fam if joint <= lam]
            if not cone:
                continue
            if not (A & B) and not (A2 & B2):
                checked["union"] += 1
                if any(len((A | B) & lam) != len((A2 | B2) & lam) for lam in cone):
                    rep.add("union", format_elems(A), format_elems(B))
            checked["product"] += 1
            # Product counts use the paired-label rule: the count of a product
            # inside a label is the product of the factor counts.
            if any(
                len(A & lam) * len(B & lam) != len(A2 & lam) * len(B2 & lam)
                for lam in cone
            ):
                rep.add("product", format_elems(A), format_elems(B))

    for A, B in pairs[: max(len(pairs) // 2, 1)]:
        for c in list(B)[:1]:
            checked["unit"] += 1
            vertex = label(tree, c)
            if any(
                len(frozenset([c]) & lam) * len(A & lam) != len(A & lam)
                for lam in _cone(fam, vertex)
            ):
                rep.add("unit", format_elem(c), format_elems(A))

    rep.details["checked"] = checked
    rep.details["stabilized"] = stabilized
    return rep


def generate_set_pairs(tree: PivotalTree, count: int, seed: int = 0
                       ) -> list[tuple[frozenset, frozenset]]:
    rng = random.Random(seed)
    elems = [e for e in tree.universe if e != EMPTY]
    out = []
    for i in range(count):
        size = rng.randint(0, min(5, len(elems)))
        A = frozenset(rng.sample(elems, size))
        kind = i % 3
        if kind == 0 and size < len(elems):
            extra = rng.sample([e for e in elems if e not in A],
                               rng.randint(1, min(3, len(elems) - size)))
            out.append((A, A | frozenset(extra)))
        elif kind == 1:
            B = frozenset(rng.sample(elems, size))
            out.append((A, B))
        else:
            out.append((A, A))
    return out


# ---------------------------------------------------------------------------
# Canonical instance and counterexamples
# ---------------------------------------------------------------------------


def _closure(universe: tuple[Elem, ...], base: set) -> frozenset:
    pairs = set(base)
    pairs.update((x, x) for x in universe)
    pairs.update((EMPTY, x) for x in universe)
    changed = True
    while changed:
        changed = False
        for a, b in list(pairs):
            for c, d in list(pairs):
                if b == c and (a, d) not in pairs:
                    pairs.add((a, d))
                    changed = True
    return frozenset(pairs)


def standard_instance() -> PivotalTree:
    """Rank-<=2 universe over atoms 0..5 with a Kuratowski block on {4,5}.

    Every strict up-set is a chain modulo the declared equivalence block, so
    the successor threading satisfies the reachability axiom, and the label
    identities hold exhaustively.
    """
    atoms = list(range(6))
    singles = {a: frozenset([a]) for a in atoms}
    pair12 = frozenset([1, 2])
    three_n = frozenset([3, singles[3]])  # {3,{3}}
    p45 = frozenset([4, 5])
    s44 = frozenset([singles[4]])
    s55 = frozenset([singles[5]])
    kur45 = frozenset([singles[4], p45])
    top = frozenset(atoms + list(singles.values()) + [pair12, p45])

    order: list[Elem] = (
        [EMPTY]
        + atoms
        + [singles[a] for a in atoms]
        + [pair12, three_n, p45, s44, s55, kur45, top]
    )
    universe = tuple(order)

    base: set = set()
    for x in universe:
        for y in universe:
            if x != y and _one_step_under(x, y):
                base.add((x, y))
    block = [p45, s44, s55, kur45]
    for x in block:
        for y in block:
            base.add((x, y))
    le = _closure(universe, base)

    thread = [e for e in order if e != EMPTY]
    succ = tuple((thread[i], thread[i + 1]) for i in range(len(thread) - 1))
    return PivotalTree(universe, le, succ)


def counterexample_noninjective() -> PivotalTree:
    u = (EMPTY, 1, 2, 3)
    base = {(1, 3), (2, 3)}
    return PivotalTree(u, _closure(u, base), ((1, 3), (2, 3)))


def counterexample_unreachable() -> PivotalTree:
    """Declared 1 == 2 by mutual order, but no successor path realizes it."""
    u = (EMPTY, 1, 2, 3)
    base = {(1, 2), (2, 1), (1, 3), (2, 3)}
    return PivotalTree(u, _closure(u, base), ((1, 3),))


def counterexample_missing_membership() -> PivotalTree:
    s1 = frozenset([1])
    t = frozenset([1, s1])
    u = (EMPTY, 1, s1, t)
    base = {(s1, t), (1, t)}  # 1 below {1} deliberately omitted
    return PivotalTree(u, _closure(u, base), ((1, s1), (s1, t)))


# ---------------------------------------------------------------------------
# Instance files
# ---------------------------------------------------------------------------


def parse_instance(text: str) -> PivotalTree:
    universe: list[Elem] = []
    le: set = set()
    succ: list[tuple[Elem, Elem]] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "elem":
                universe.extend(parse_elem(p) for p in parts[1:])
            elif parts[0] == "le" and len(parts) == 3:
                le.add((parse_elem(parts[1]), parse_elem(parts[2])))
            elif parts[0] == "succ" and len(parts) == 3:
                succ.append((parse_elem(parts[1]), parse_elem(parts[2])))
            else:
                raise ValueError(f"unknown directive {parts[0]!r}")
        except ValueError as exc:
            raise ValueError(f"line {ln}: {exc}") from None
    uni = tuple(dict.fromkeys(universe))
    return PivotalTree(uni, _closure(uni, le), tuple(succ))


def format_instance(tree: PivotalTree) -> str:
    lines = ["# pivotal-tree instance"]
    for e in tree.universe:
        lines.append(f"elem {format_elem(e)}")
    for a, b in sorted(tree.le, key=lambda p: (elem_key(p[0]), elem_key(p[1]))):
        if a != b and a != EMPTY:
            lines.append(f"le {format_elem(a)} {format_elem(b)}")
    for a, b in tree.succ:
        lines.append(f"succ {format_elem(a)} {format_elem(b)}")
    return "\n".join(lines) + "\n"
