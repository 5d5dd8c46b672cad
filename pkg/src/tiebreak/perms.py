"""Permutations of ``{1, ..., m}``, cycle types and explicitly enumerated groups.

Permutations are stored 0-based internally (``images[i] = sigma(i + 1) - 1``)
and read/written 1-based everywhere else.  Products are right-to-left:
``(a * b)(x) == a(b(x))``.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .errors import DegreeMismatch, GroupTooLarge

DEFAULT_GROUP_CAP = 10**6


class Perm:
    """A bijection of ``{1, ..., m}``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if not images:
            raise ValueError("a permutation needs degree >= 1")
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, m: int) -> Perm:
        return cls(range(m))

    @classmethod
    def from_one_line(cls, values: Sequence[int]) -> Perm:
        """Build from 1-based one-line notation ``[sigma(1), ..., sigma(m)]``."""
        return cls(v - 1 for v in values)

    @classmethod
    def from_cycles(cls, cycles, m: int) -> Perm:
        """Build from cycle text such as ``"(1 2)(3 4)"`` or ``"id"``, or from
        an iterable of 1-based cycles."""
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        images = list(range(m))
        seen = set()
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for x in cyc:
                if not 1 <= x <= m:
                    raise ValueError(f"point {x} outside 1..{m}")
                if x in seen:
                    raise ValueError(f"point {x} repeated in cycle notation")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b - 1
        return cls(images)

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1] + 1

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def __pow__(self, e: int) -> Perm:
        if e < 0:
            return self.inverse() ** (-e)
        result = Perm.identity(self.m)
        for _ in range(e):
            result = result * self
        return result

    def inverse(self) -> Perm:
        inv = [0] * self.m
        for i, v in enumerate(self.images):
            inv[v] = i
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def order(self) -> int:
        return cycle_type(self).lcm()

    def one_line(self) -> list[int]:
        return [v + 1 for v in self.images]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * self.m
        out = []
        for start in range(self.m):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def orbits(self) -> list[tuple[int, ...]]:
        """All orbits including fixed points, 1-based."""
        seen = [False] * self.m
        out = []
        for start in range(self.m):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def fixed_points(self) -> list[int]:
        return [i + 1 for i, v in enumerate(self.images) if i == v]

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: Perm) -> bool:
        return self.images < other.images

    def __le__(self, other: Perm) -> bool:
        return self.images <= other.images

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({str(self)!r}, m={self.m})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    """Parse ``"(1 2)(3 4 5)"``; ``"id"`` and ``"()"`` give no cycles."""
    text = text.strip()
    if text in ("id", "", "()"):
        return []
    rest = _CYCLE_RE.sub("", text).strip()
    if rest:
        raise ValueError(f"cannot parse cycle notation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        if pts:
            cycles.append(pts)
    return cycles


def compose(a: Perm, b: Perm) -> Perm:
    """Return ``a * b``, i.e. ``x -> a(b(x))``."""
    if a.m != b.m:
        raise DegreeMismatch(f"cannot compose degrees {a.m} and {b.m}")
    ai = a.images
    return Perm(ai[v] for v in b.images)


def order_reversing(n: int) -> Perm:
    """The permutation ``r -> n - r + 1``."""
    if n < 1:
        raise ValueError("n must be positive")
    return Perm(range(n - 1, -1, -1))


@dataclass(frozen=True)
class Partition:
    """An unordered multiset of positive integers, stored ascending."""

    terms: tuple[int, ...]

    def __post_init__(self):
        terms = tuple(sorted(int(t) for t in self.terms))
        if not terms or terms[0] < 1:
            raise ValueError("partition terms must be positive")
        object.__setattr__(self, "terms", terms)

    @property
    def m(self) -> int:
        return sum(self.terms)

    @property
    def normal_form(self) -> list[tuple[int, int]]:
        out: list[tuple[int, int]] = []
        for t in self.terms:
            if out and out[-1][0] == t:
                out[-1] = (t, out[-1][1] + 1)
            else:
                out.append((t, 1))
        return out

    def gcd(self) -> int:
        return reduce(math.gcd, self.terms)

    def lcm(self) -> int:
        return reduce(math.lcm, self.terms, 1)

    def __str__(self) -> str:
        parts = [str(v) if t == 1 else f"{v}^{t}" for v, t in self.normal_form]
        return "[" + ",".join(parts) + "]"


def cycle_type(s: Perm) -> Partition:
    """Sizes of all orbits of ``s``, fixed points included."""
    return Partition(tuple(len(o) for o in s.orbits()))


def is_conjugate(a: Perm, b: Perm) -> bool:
    if a.m != b.m:
        raise DegreeMismatch(f"degrees {a.m} and {b.m} differ")
    return cycle_type(a) == cycle_type(b)


@dataclass(frozen=True)
class PermGroup:
    """A subgroup of ``S_m`` given by the full sorted list of its elements."""

    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, s: Perm) -> bool:
        return s in self._element_set

    @property
    def _element_set(self) -> frozenset[Perm]:
        try:
            return self.__dict__["_elset"]
        except KeyError:
            es = frozenset(self.elements)
            object.__setattr__(self, "_elset", es)
            return es

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(s in other for s in self.elements)

    def conjugate_by(self, v: Perm) -> PermGroup:
        """The group ``v U v^-1``."""
        vi = v.inverse()
        return generate(self.degree, [v * g * vi for g in self.generators])

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [str(g) for g in self.generators],
            "order": self.order,
        }

    def __str__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "id"
        return f"<{gens}> (order {self.order}, degree {self.degree})"


def generate(degree: int, gens: Iterable[Perm], cap: int = DEFAULT_GROUP_CAP) -> PermGroup:
    """Closure of ``gens`` under composition; elements sorted lexicographically."""
    gens = tuple(gens)
    for g in gens:
        if g.m != degree:
            raise DegreeMismatch(f"generator {g} has degree {g.m}, expected {degree}")
    ident = Perm.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise GroupTooLarge(cap)
                    nxt.append(y)
        frontier = nxt
    return PermGroup(degree, gens, tuple(sorted(seen)))


def symmetric_group(m: int) -> PermGroup:
    if m == 1:
        return PermGroup(1, (), (Perm.identity(1),))
    gens = [Perm.from_cycles([[1, 2]], m)]
    if m > 2:
        gens.append(Perm.from_cycles([list(range(1, m + 1))], m))
    elements = tuple(Perm(p) for p in itertools.permutations(range(m)))
    return PermGroup(m, tuple(gens), elements)


def trivial_group(m: int) -> PermGroup:
    return PermGroup(m, (), (Perm.identity(m),))


def small_generators(elements: Sequence[Perm]) -> tuple[Perm, ...]:
    """Greedy generating set: keep each element not already in the span so far."""
    if not elements:
        return ()
    m = elements[0].m
    gens: list[Perm] = []
    span = {Perm.identity(m)}
    for s in elements:
        if s not in span:
            gens.append(s)
            span = set(generate(m, gens).elements)
    return tuple(gens)


def type_number(U: PermGroup) -> int:
    """lcm over the elements of ``U`` of the gcd of their cycle types."""
    return reduce(math.lcm, (cycle_type(s).gcd() for s in U.elements), 1)


def all_subgroups(m: int, cap: int = 5000) -> list[PermGroup]:
    """Every subgroup of ``S_m``, found as iterated joins of cyclic subgroups.

    Exhaustive and only meant for very small ``m``.
    """
    sym = symmetric_group(m)
    found: dict[tuple, PermGroup] = {}
    for s in sym.elements:
        g = generate(m, [s])
        found.setdefault(g.elements, g)
    cyclic = list(found.values())
    frontier = list(found.values())
    while frontier:
        nxt = []
        for a in frontier:
            for c in cyclic:
                if all(x in a for x in c.generators):
                    continue
                j = generate(m, a.generators + c.generators)
                if j.elements not in found:
                    found[j.elements] = j
                    nxt.append(j)
                    if len(found) > cap:
                        raise GroupTooLarge(cap)
        frontier = nxt
    return sorted(found.values(), key=lambda g: (g.order, [s.images for s in g.elements]))


def group_to_json(U: PermGroup) -> str:
    return json.dumps(U.to_json())
