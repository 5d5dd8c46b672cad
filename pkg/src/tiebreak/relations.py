"""Relations on ``{1, ..., m}``: properties, automorphisms, orders and extensions.

A linear order is represented directly as a :class:`~tiebreak.perms.Perm`
mapping rank to alternative, so ``q(1)`` is the top alternative.  Relations are
sets of 1-based pairs ``(x, y)`` read as "x is at least as good as y".
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import DegreeMismatch, DegreeTooLarge, InvalidK, NotAnOrder, ParseError
from .perms import Partition, Perm, PermGroup, small_generators

DEFAULT_AUT_CAP = 8

LinearOrder = Perm


@dataclass(frozen=True)
class Relation:
    m: int
    pairs: frozenset

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("degree must be positive")
        pairs = frozenset((int(x), int(y)) for x, y in self.pairs)
        for x, y in pairs:
            if not (1 <= x <= self.m and 1 <= y <= self.m):
                raise ValueError(f"pair ({x},{y}) outside 1..{self.m}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def total(cls, m: int) -> Relation:
        return cls(m, frozenset(itertools.product(range(1, m + 1), repeat=2)))

    @classmethod
    def empty(cls, m: int) -> Relation:
        return cls(m, frozenset())

    @classmethod
    def from_classes(cls, m: int, classes: Iterable[Iterable[int]]) -> Relation:
        """The order whose indifference classes are listed best first."""
        classes = [list(c) for c in classes]
        flat = sorted(x for c in classes for x in c)
        if flat != list(range(1, m + 1)):
            raise ValueError(f"classes must partition 1..{m}")
        pairs = set()
        for i, ci in enumerate(classes):
            for cj in classes[i:]:
                pairs.update(itertools.product(ci, cj))
        return cls(m, frozenset(pairs))

    @classmethod
    def from_linear_order(cls, q: Perm) -> Relation:
        return cls.from_classes(q.m, [[q(r)] for r in range(1, q.m + 1)])

    @classmethod
    def from_adj(cls, adj) -> Relation:
        adj = np.asarray(adj, dtype=bool)
        xs, ys = np.nonzero(adj)
        return cls(adj.shape[0], frozenset(zip((xs + 1).tolist(), (ys + 1).tolist())))

    @property
    def adj(self) -> np.ndarray:
        a = np.zeros((self.m, self.m), dtype=bool)
        for x, y in self.pairs:
            a[x - 1, y - 1] = True
        return a

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def strict(self) -> Relation:
        """Remove the diagonal."""
        return Relation(self.m, frozenset((x, y) for x, y in self.pairs if x != y))

    def issubset(self, other: Relation) -> bool:
        return self.m == other.m and self.pairs <= other.pairs

    def to_json(self) -> dict:
        return {"m": self.m, "pairs": sorted([x, y] for x, y in self.pairs)}

    def __str__(self) -> str:
        return "{" + ", ".join(f"({x},{y})" for x, y in sorted(self.pairs)) + "}"


@dataclass(frozen=True)
class RelationFlags:
    complete: bool
    reflexive: bool
    irreflexive: bool
    antisymmetric: bool
    asymmetric: bool
    transitive: bool
    acyclic: bool
    is_order: bool
    is_linear: bool


def _has_cycle(adj: np.ndarray) -> bool:
    """Directed cycle among distinct vertices (self-loops ignored)."""
    m = adj.shape[0]
    a = adj.copy()
    np.fill_diagonal(a, False)
    indeg = a.sum(axis=0)
    stack = [i for i in range(m) if indeg[i] == 0]
    removed = 0
    while stack:
        v = stack.pop()
        removed += 1
        for w in np.nonzero(a[v])[0]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(int(w))
    return removed < m


def classify(R: Relation) -> RelationFlags:
    a = R.adj
    diag = np.diag(a)
    off = ~np.eye(R.m, dtype=bool)
    complete = bool(np.all(a | a.T))
    reflexive = bool(diag.all())
    irreflexive = not diag.any()
    sym_part = a & a.T
    antisymmetric = not bool((sym_part & off).any())
    asymmetric = not bool(sym_part.any())
    ai = a.astype(np.int64)
    transitive = bool(np.all(~((ai @ ai) > 0) | a))
    acyclic = not _has_cycle(a)
    is_order = complete and transitive
    return RelationFlags(
        complete=complete,
        reflexive=reflexive,
        irreflexive=irreflexive,
        antisymmetric=antisymmetric,
        asymmetric=asymmetric,
        transitive=transitive,
        acyclic=acyclic,
        is_order=is_order,
        is_linear=is_order and antisymmetric,
    )


def transform(R: Relation, sigma: Perm, reverse: bool = False) -> Relation:
    """Return ``sigma R`` or, with ``reverse``, ``(sigma R) rho0``."""
    if sigma.m != R.m:
        raise DegreeMismatch(f"permutation degree {sigma.m} vs relation degree {R.m}")
    if reverse:
        return Relation(R.m, frozenset((sigma(y), sigma(x)) for x, y in R.pairs))
    return Relation(R.m, frozenset((sigma(x), sigma(y)) for x, y in R.pairs))


def _all_perm_array(m: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(m))), dtype=np.int64).reshape(-1, m)


def aut_group(R: Relation, cap: int = DEFAULT_AUT_CAP) -> PermGroup:
    """All ``sigma`` in ``S_m`` with ``sigma R = R``, by scanning ``S_m``."""
    if R.m > cap:
        raise DegreeTooLarge(R.m, cap)
    a = R.adj
    perms = _all_perm_array(R.m)
    # sigma R = R  iff  a[sigma(x), sigma(y)] == a[x, y] for all x, y
    ok = (a[perms[:, :, None], perms[:, None, :]] == a[None]).all(axis=(1, 2))
    elements = tuple(Perm(row) for row in perms[ok].tolist())
    return PermGroup(R.m, small_generators(elements), elements)


def indifference_partition(R: Relation) -> tuple[list[frozenset[int]], Partition]:
    """Indifference classes of an order, best class first, and their size partition."""
    if not classify(R).is_order:
        raise NotAnOrder("relation is not complete and transitive")
    a = R.adj
    classes: dict[tuple, list[int]] = {}
    for x in range(R.m):
        key = tuple(np.nonzero(a[x] & a[:, x])[0].tolist())
        classes.setdefault(key, []).append(x + 1)
    # more dominated elements means a better class
    ranked = sorted(classes.values(), key=lambda c: (-int(a[c[0] - 1].sum()), c[0]))
    out = [frozenset(c) for c in ranked]
    return out, Partition(tuple(len(c) for c in out))


def order_aut_stats(T: Partition) -> tuple[int, int]:
    """``(gamma, |Aut|)`` of any order with indifference partition ``T``."""
    nf = T.normal_form
    gamma = reduce(math.gcd, (v for v, _ in nf))
    aut_order = 1
    for v, t in nf:
        aut_order *= math.factorial(v) ** t
    return gamma, aut_order


def linear_extensions(R: Relation) -> list[Perm]:
    """All linear orders containing ``R`` minus its diagonal, in lexicographic order."""
    m = R.m
    preds = [0] * m
    for x, y in R.pairs:
        if x != y:
            preds[y - 1] |= 1 << (x - 1)
    out: list[Perm] = []
    prefix: list[int] = []

    def dfs(placed: int) -> None:
        if len(prefix) == m:
            out.append(Perm(prefix))
            return
        for x in range(m):
            bit = 1 << x
            if not placed & bit and preds[x] & ~placed == 0:
                prefix.append(x)
                dfs(placed | bit)
                prefix.pop()

    dfs(0)
    return out


def lex_min_extension(R: Relation) -> Perm | None:
    """The first linear extension in lexicographic order, or None if ``R`` has a cycle."""
    m = R.m
    preds = [0] * m
    for x, y in R.pairs:
        if x != y:
            preds[y - 1] |= 1 << (x - 1)
    placed = 0
    seq = []
    for _ in range(m):
        for x in range(m):
            if not placed >> x & 1 and preds[x] & ~placed == 0:
                seq.append(x)
                placed |= 1 << x
                break
        else:
            return None
    return Perm(seq)


def contains_order(q: Perm, R: Relation) -> bool:
    """True if the linear order ``q`` contains every off-diagonal pair of ``R``."""
    pos = q.inverse()
    return all(pos(x) < pos(y) for x, y in R.pairs if x != y)


def top_k(q: Perm, k: int) -> frozenset[int]:
    return frozenset(q(r) for r in range(1, k + 1))


def k_max_sets(R: Relation, k: int) -> list[frozenset[int]]:
    """All ``k``-subsets ``W`` with every member weakly above every non-member."""
    if not 1 <= k <= R.m - 1:
        raise InvalidK(f"k={k} outside 1..{R.m - 1}")
    out = []
    for W in itertools.combinations(range(1, R.m + 1), k):
        rest = [y for y in range(1, R.m + 1) if y not in W]
        if all((x, y) in R.pairs for x in W for y in rest):
            out.append(frozenset(W))
    return out


def iter_orders(m: int) -> Iterator[Relation]:
    """Every order on ``{1..m}`` (ordered set partitions), each exactly once."""
    for levels in itertools.product(range(m), repeat=m):
        used = sorted(set(levels))
        if used != list(range(len(used))):
            continue
        classes = [[x + 1 for x in range(m) if levels[x] == lv] for lv in used]
        yield Relation.from_classes(m, classes)


def president_order(h: int) -> Relation:
    """Voter 1 strictly above all others, who are mutually indifferent."""
    if h < 2:
        raise ValueError("h must be at least 2")
    return Relation.from_classes(h, [[1], list(range(2, h + 1))])


def parse_relation(text: str, source: str = "<string>") -> Relation:
    """Parse the relation text format (``m=`` line, then ``order:`` or ``pairs:``)."""
    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError(source, 1, "empty relation file")
    lineno, head = lines[0]
    if not head.startswith("m="):
        raise ParseError(source, lineno, "expected 'm=<int>'")
    try:
        m = int(head[2:])
    except ValueError:
        raise ParseError(source, lineno, f"bad degree {head[2:]!r}") from None
    if m < 1:
        raise ParseError(source, lineno, "degree must be positive")
    if len(lines) < 2:
        raise ParseError(source, lineno, "missing 'order:' or 'pairs:' section")
    lineno, kind = lines[1]
    body = lines[2:]

    def ints(i, ln):
        try:
            vals = [int(t) for t in ln.split()]
        except ValueError:
            raise ParseError(source, i, f"non-integer token in {ln!r}") from None
        for v in vals:
            if not 1 <= v <= m:
                raise ParseError(source, i, f"label {v} outside 1..{m}")
        return vals

    if kind == "order:":
        classes = [ints(i, ln) for i, ln in body]
        seen: set[int] = set()
        for (i, _), c in zip(body, classes):
            if seen & set(c) or len(set(c)) != len(c):
                raise ParseError(source, i, "label repeated across classes")
            seen |= set(c)
        if seen != set(range(1, m + 1)):
            missing = sorted(set(range(1, m + 1)) - seen)
            raise ParseError(source, body[-1][0] if body else lineno, f"labels {missing} missing")
        return Relation.from_classes(m, classes)
    if kind == "pairs:":
        pairs = []
        for i, ln in body:
            vals = ints(i, ln)
            if len(vals) != 2:
                raise ParseError(source, i, "expected 'x y'")
            pairs.append(tuple(vals))
        return Relation(m, frozenset(pairs))
    raise ParseError(source, lineno, f"expected 'order:' or 'pairs:', got {kind!r}")


def load_relation(path) -> Relation:
    path = Path(path)
    return parse_relation(path.read_text(encoding="utf-8"), str(path))


def format_relation(R: Relation) -> str:
    """Render in the file format, using the ``order:`` layout when possible."""
    if classify(R).is_order:
        classes, _ = indifference_partition(R)
        body = "\n".join(" ".join(map(str, sorted(c))) for c in classes)
        return f"m={R.m}\norder:\n{body}\n"
    body = "\n".join(f"{x} {y}" for x, y in sorted(R.pairs))
    return f"m={R.m}\npairs:\n{body}\n"
