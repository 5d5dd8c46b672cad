"""Social preference correspondences, induced committee correspondences and
the symmetry / consistency checkers.

A correspondence is stored as a full table over the profile space: entry
``values[i]`` is the value at the profile with canonical index ``i``.  SPC
values are frozensets of linear orders (``Perm``, rank -> alternative); k-SCC
values are frozensets of ``frozenset[int]`` committees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import DegreeMismatch, InvalidK, ParseError
from .perms import Perm, order_reversing, symmetric_group, trivial_group
from .profiles import (
    DEFAULT_PROFILE_CAP,
    GroupElement,
    Profile,
    ProfileSpace,
    SymmetryGroup,
)
from .relations import Relation, aut_group, top_k

RULES = ("borda", "copeland", "minimax", "kemeny")


@dataclass
class Correspondence:
    kind: str                 # "spc" or "kscc"
    h: int
    n: int
    values: list[frozenset]
    k: int | None = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("spc", "kscc"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "kscc" and not (self.k is not None and 1 <= self.k <= self.n - 1):
            raise InvalidK(f"k={self.k} outside 1..{self.n - 1}")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> frozenset:
        return self.values[index]

    def is_decisive(self) -> bool:
        return all(self.values)

    def is_resolute(self) -> bool:
        return all(len(v) == 1 for v in self.values)

    def first_empty(self) -> int | None:
        for i, v in enumerate(self.values):
            if not v:
                return i
        return None


# ---------------------------------------------------------------- item transforms


def left_item(item, psi: Perm):
    """``psi x`` for a linear order or a committee."""
    if isinstance(item, Perm):
        return psi * item
    return frozenset(psi(x) for x in item)


def spc_item(q: Perm, psi: Perm, rho: bool) -> Perm:
    """``psi q rho`` for a linear order."""
    out = psi * q
    return out * order_reversing(q.m) if rho else out


def item_key(item):
    """Sort key making the lexicographic-minimal choice policy concrete."""
    if isinstance(item, Perm):
        return (0, item.images)
    return (1, tuple(sorted(item)))


def item_str(item) -> str:
    if isinstance(item, Perm):
        return " ".join(map(str, item.one_line()))
    return "{" + ",".join(map(str, sorted(item))) + "}"


# ---------------------------------------------------------------- single-profile rules


def _positions(p: Profile) -> list[list[int]]:
    """``pos[i][x-1]`` is the 0-based rank of alternative ``x`` in ballot ``i``."""
    return [list(b.inverse().images) for b in p.ballots]


def _majority(p: Profile) -> list[list[int]]:
    n = p.n
    N = [[0] * n for _ in range(n)]
    for pos in _positions(p):
        for x in range(n):
            for y in range(n):
                if pos[x] < pos[y]:
                    N[x][y] += 1
    return N


def weak_order_extensions(score: Sequence, descending: bool = True) -> frozenset[Perm]:
    """All linear orders listing alternatives by score, ties broken every way."""
    n = len(score)
    levels = sorted(set(score), reverse=descending)
    classes = [[x for x in range(n) if score[x] == lv] for lv in levels]
    out = []
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        out.append(Perm([x for part in parts for x in part]))
    return frozenset(out)


def borda_scores(p: Profile) -> list[int]:
    n = p.n
    s = [0] * n
    for pos in _positions(p):
        for x in range(n):
            s[x] += n - 1 - pos[x]
    return s


def copeland_scores(p: Profile) -> list[int]:
    N = _majority(p)
    n = p.n
    return [sum(1 for y in range(n) if N[x][y] > N[y][x]) - sum(1 for y in range(n) if N[y][x] > N[x][y])
            for x in range(n)]


def minimax_scores(p: Profile) -> list[int]:
    N = _majority(p)
    n = p.n
    return [max(N[y][x] for y in range(n) if y != x) for x in range(n)]


def kendall_tau(q1: Perm, q2: Perm) -> int:
    pos1, pos2 = q1.inverse().images, q2.inverse().images
    n = q1.m
    return sum(1 for x in range(n) for y in range(x + 1, n)
               if (pos1[x] < pos1[y]) != (pos2[x] < pos2[y]))


def kemeny(p: Profile) -> frozenset[Perm]:
    best, out = None, []
    for t in itertools.permutations(range(p.n)):
        q = Perm(t)
        d = sum(kendall_tau(q, b) for b in p.ballots)
        if best is None or d < best:
            best, out = d, [q]
        elif d == best:
            out.append(q)
    return frozenset(out)


def evaluate_spc(rule: str, p: Profile) -> frozenset[Perm]:
    """Value of a named rule at one profile, computed directly from the ballots."""
    rule = rule.lower()
    if rule == "borda":
        return weak_order_extensions(borda_scores(p))
    if rule == "copeland":
        return weak_order_extensions(copeland_scores(p))
    if rule == "minimax":
        return weak_order_extensions(minimax_scores(p), descending=False)
    if rule == "kemeny":
        return kemeny(p)
    raise ValueError(f"unknown rule {rule!r}; choose from {', '.join(RULES)}")


# ---------------------------------------------------------------- whole-space tables


def _pairwise_counts(space: ProfileSpace) -> np.ndarray:
    """``N[p, x, y]`` = number of voters ranking ``x`` above ``y`` at profile ``p``."""
    n = space.n
    pos = np.array([q.inverse().images for q in space.orders], dtype=np.int64)
    prefer = (pos[:, :, None] < pos[:, None, :]).astype(np.int64)
    N = np.zeros((space.size, n, n), dtype=np.int64)
    for i in range(space.h):
        N += prefer[space.digits[:, i]]
    return N


def _scores(rule: str, space: ProfileSpace) -> tuple[np.ndarray, bool]:
    n = space.n
    if rule == "borda":
        pos = np.array([q.inverse().images for q in space.orders], dtype=np.int64)
        pts = (n - 1 - pos)
        return pts[space.digits].sum(axis=1), True
    N = _pairwise_counts(space)
    if rule == "copeland":
        wins = (N > N.transpose(0, 2, 1)).sum(axis=2)
        losses = (N.transpose(0, 2, 1) > N).sum(axis=2)
        return wins - losses, True
    if rule == "minimax":
        Nyx = N.transpose(0, 2, 1).copy()
        idx = np.arange(n)
        Nyx[:, idx, idx] = -1
        return Nyx.max(axis=2), False
    raise ValueError(rule)


def spc_table(rule: str, h: int, n: int, cap: int = DEFAULT_PROFILE_CAP) -> Correspondence:
    """Evaluate a named rule on every profile, vectorized over the space."""
    rule = rule.lower()
    space = ProfileSpace.get(h, n, cap)
    if rule == "kemeny":
        orders = space.orders
        D = np.array([[kendall_tau(a, b) for b in orders] for a in orders], dtype=np.int64)
        total = D[:, space.digits].sum(axis=2).T          # (P, n!)
        best = total == total.min(axis=1, keepdims=True)
        cache: dict = {}
        values = []
        for row in best:
            key = row.tobytes()
            if key not in cache:
                cache[key] = frozenset(orders[i] for i in np.nonzero(row)[0])
            values.append(cache[key])
        return Correspondence("spc", h, n, values, name=rule)
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}; choose from {', '.join(RULES)}")
    scores, desc = _scores(rule, space)
    cache = {}
    values = []
    for row in scores.tolist():
        key = tuple(row)
        if key not in cache:
            cache[key] = weak_order_extensions(key, descending=desc)
        values.append(cache[key])
    return Correspondence("spc", h, n, values, name=rule)


def table_from_function(fn: Callable[[Profile], frozenset], h: int, n: int, kind: str = "spc",
                        k: int | None = None, name: str = "custom") -> Correspondence:
    space = ProfileSpace.get(h, n)
    return Correspondence(kind, h, n, [frozenset(fn(space.profile(i))) for i in range(space.size)], k, name)


def induce_kscc(C: Correspondence, k: int) -> Correspondence:
    """Pointwise image of an SPC under the top-``k`` map."""
    if C.kind != "spc":
        raise ValueError("only an SPC induces a k-SCC")
    if not 1 <= k <= C.n - 1:
        raise InvalidK(f"k={k} outside 1..{C.n - 1}")
    cache: dict = {}
    values = []
    for v in C.values:
        if v not in cache:
            cache[v] = frozenset(top_k(q, k) for q in v)
        values.append(cache[v])
    return Correspondence("kscc", C.h, C.n, values, k, name=f"{C.name}_k{k}")


def parse_custom_table(text: str, h: int, n: int, source: str = "<string>") -> Correspondence:
    """Lines ``profile_index : order ; order ; ...``; orders list alternatives best first."""
    size = ProfileSpace.get(h, n).size
    values: list = [None] * size
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(source, lineno, "expected 'profile_index : order ; ...'")
        head, body = line.split(":", 1)
        try:
            idx = int(head)
        except ValueError:
            raise ParseError(source, lineno, f"bad profile index {head.strip()!r}") from None
        if not 0 <= idx < size:
            raise ParseError(source, lineno, f"profile index {idx} outside 0..{size - 1}")
        if values[idx] is not None:
            raise ParseError(source, lineno, f"profile index {idx} given twice")
        orders = []
        for chunk in body.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                row = [int(t) for t in chunk.split()]
            except ValueError:
                raise ParseError(source, lineno, f"non-integer token in {chunk!r}") from None
            if sorted(row) != list(range(1, n + 1)):
                raise ParseError(source, lineno, f"{chunk!r} is not an order of 1..{n}")
            orders.append(Perm.from_one_line(row))
        values[idx] = frozenset(orders)
    missing = [i for i, v in enumerate(values) if v is None]
    if missing:
        raise ParseError(source, lineno if text else 1, f"table misses profile indices starting at {missing[0]}")
    return Correspondence("spc", h, n, values, name="custom")


def load_custom_table(path, h: int, n: int) -> Correspondence:
    path = Path(path)
    return parse_custom_table(path.read_text(encoding="utf-8"), h, n, str(path))


def format_custom_table(C: Correspondence) -> str:
    lines = []
    for i, v in enumerate(C.values):
        body = " ; ".join(item_str(q) for q in sorted(v, key=item_key))
        lines.append(f"{i} : {body}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- checkers


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    counterexample: tuple[Profile, GroupElement] | None = None

    def __bool__(self) -> bool:
        return self.ok


class _Interner:
    """Maps correspondence values to integer ids, with cached transforms."""

    def __init__(self, values: list[frozenset]):
        self.ids: dict[frozenset, int] = {}
        self.items: list[frozenset] = []
        self.table = np.array([self.intern(v) for v in values], dtype=np.int64)

    def intern(self, v: frozenset) -> int:
        i = self.ids.get(v)
        if i is None:
            i = len(self.items)
            self.ids[v] = i
            self.items.append(v)
        return i

    def mapped(self, fn: Callable) -> np.ndarray:
        base = len(self.items)
        return np.array([self.intern(frozenset(fn(x) for x in self.items[i])) for i in range(base)],
                        dtype=np.int64)


def _first_violation(C: Correspondence, U: SymmetryGroup, test) -> CheckResult:
    """Scan every element; ``test(g, img, ids)`` returns a boolean mask of bad profiles."""
    space = ProfileSpace.get(C.h, C.n)
    if len(C.values) != space.size:
        raise DegreeMismatch("correspondence does not cover the profile space")
    if (U.h, U.n) != (C.h, C.n):
        raise DegreeMismatch("group and correspondence live on different profile spaces")
    interner = _Interner(C.values)
    best = None
    for gi, g in enumerate(U.elements):
        img = space.act_all(g)
        bad = test(g, img, interner)
        if bad.any():
            p = int(np.argmax(bad))
            if best is None or p < best[0]:
                best = (p, gi)
    if best is None:
        return CheckResult(True)
    p, gi = best
    return CheckResult(False, (space.profile(p), U.elements[gi]))


def check_symmetric(C: Correspondence, U: SymmetryGroup) -> CheckResult:
    """``C(p^g) = psi C(p) rho`` for all ``p`` and ``g = (phi, psi, rho)`` in ``U``."""
    if C.kind != "spc":
        raise ValueError("symmetry is defined for SPCs")

    def test(g, img, it):
        trans = it.mapped(lambda q: spc_item(q, g.psi, g.rho))
        return it.table[img] != trans[it.table]

    return _first_violation(C, U, test)


def check_consistent(C: Correspondence, U: SymmetryGroup) -> CheckResult:
    """Equivariance under the ``rho = id`` elements, and no fixed singleton under ``rho0``."""
    def test(g, img, it):
        trans = it.mapped(lambda x: left_item(x, g.psi))
        differs = it.table[img] != trans[it.table]
        if not g.rho:
            return differs
        single = np.array([len(v) == 1 for v in it.items[: len(trans)]])[it.table]
        return single & ~differs

    return _first_violation(C, U, test)


def refines(f: Correspondence, C: Correspondence) -> bool:
    """Pointwise inclusion ``f(p) <= C(p)``."""
    return len(f.values) == len(C.values) and all(a <= b for a, b in zip(f.values, C.values))


# ---------------------------------------------------------------- named groups


def named_group(h: int, n: int, name: str, relation: Relation | None = None) -> SymmetryGroup:
    """Anonymity, neutrality, reversal, full_G, trivial, R_anon or Q_neut."""
    name = name.lower()
    Sh, Sn = symmetric_group(h), symmetric_group(n)
    Th, Tn = trivial_group(h), trivial_group(n)
    if name == "anonymity":
        return SymmetryGroup.product(Sh, Tn)
    if name == "neutrality":
        return SymmetryGroup.product(Th, Sn)
    if name == "reversal":
        return SymmetryGroup.product(Th, Tn, omega=True)
    if name in ("full_g", "full"):
        return SymmetryGroup.product(Sh, Sn, omega=True)
    if name == "trivial":
        return SymmetryGroup.trivial(h, n)
    if name == "r_anon":
        if relation is None or relation.m != h:
            raise DegreeMismatch(f"R_anon needs a relation on {h} voters")
        A = aut_group(relation)
        return SymmetryGroup.product(A, Tn)
    if name == "q_neut":
        if relation is None or relation.m != n:
            raise DegreeMismatch(f"Q_neut needs a relation on {n} alternatives")
        A = aut_group(relation)
        return SymmetryGroup.product(Th, A)
    raise ValueError(f"unknown group name {name!r}")


def join_groups(groups: Sequence[SymmetryGroup]) -> SymmetryGroup:
    out = groups[0]
    for g in groups[1:]:
        out = out.join(g)
    return out
