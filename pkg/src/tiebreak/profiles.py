"""Preference profiles and the action of ``S_h x S_n x Omega`` on them.

A profile is a tuple of ``h`` linear orders (rank -> alternative permutations).
The element ``(phi, psi, rho)`` sends ``p`` to the profile whose ballot ``i`` is
``psi * p[phi^-1(i)] * rho``.  Profiles are indexed by mixed-radix Lehmer codes
with voter 1 most significant, so index order is lexicographic order.
"""

from __future__ import annotations

import itertools
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    DegreeMismatch,
    GroupTooLarge,
    InternalInvariantBroken,
    NotRegular,
    ParseError,
    ProfileSpaceTooLarge,
)
from .perms import (
    DEFAULT_GROUP_CAP,
    Perm,
    PermGroup,
    is_conjugate,
    order_reversing,
    type_number,
)

DEFAULT_PROFILE_CAP = 10**7


# ---------------------------------------------------------------- group elements


@dataclass(frozen=True, order=False)
class GroupElement:
    phi: Perm
    psi: Perm
    rho: bool  # True means rho0

    @classmethod
    def identity(cls, h: int, n: int) -> GroupElement:
        return cls(Perm.identity(h), Perm.identity(n), False)

    @property
    def h(self) -> int:
        return self.phi.m

    @property
    def n(self) -> int:
        return self.psi.m

    def __mul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.phi * other.phi, self.psi * other.psi, self.rho != other.rho)

    def inverse(self) -> GroupElement:
        return GroupElement(self.phi.inverse(), self.psi.inverse(), self.rho)

    def is_identity(self) -> bool:
        return self.phi.is_identity() and self.psi.is_identity() and not self.rho

    @property
    def key(self) -> tuple:
        return (self.phi.images, self.psi.images, self.rho)

    def __lt__(self, other: GroupElement) -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return f"phi:{self.phi} psi:{self.psi} rho:{'rho0' if self.rho else 'id'}"

    def to_json(self) -> dict:
        return {"phi": str(self.phi), "psi": str(self.psi), "rho": "rho0" if self.rho else "id"}


_FIELD_RE = re.compile(r"(phi|psi|rho)\s*:")


def parse_group_element(text: str, h: int, n: int) -> GroupElement:
    """Parse ``phi:<cycles> psi:<cycles> rho:id|rho0``; missing parts default to id."""
    parts = {"phi": "id", "psi": "id", "rho": "id"}
    text = text.strip()
    matches = list(_FIELD_RE.finditer(text))
    if not matches or text[: matches[0].start()].strip():
        raise ValueError(f"expected 'phi:... psi:... rho:...', got {text!r}")
    for a, b in zip(matches, matches[1:] + [None]):
        end = b.start() if b is not None else len(text)
        parts[a.group(1)] = text[a.end():end].strip()
    rho = parts["rho"]
    if rho not in ("id", "rho0"):
        raise ValueError(f"rho must be 'id' or 'rho0', got {rho!r}")
    return GroupElement(Perm.from_cycles(parts["phi"], h), Perm.from_cycles(parts["psi"], n), rho == "rho0")


# ---------------------------------------------------------------- symmetry groups


@dataclass(frozen=True)
class ProductShape:
    V: PermGroup
    W: PermGroup
    omega_full: bool


class SymmetryGroup:
    """An explicitly enumerated subgroup of ``S_h x S_n x Omega``."""

    def __init__(self, h: int, n: int, generators: Sequence[GroupElement], elements: Sequence[GroupElement]):
        self.h = h
        self.n = n
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self._cache: dict = {}

    @classmethod
    def from_generators(cls, h: int, n: int, gens: Iterable[GroupElement],
                        cap: int = DEFAULT_GROUP_CAP) -> SymmetryGroup:
        gens = tuple(gens)
        for g in gens:
            if g.h != h or g.n != n:
                raise DegreeMismatch(f"generator {g} does not act on h={h}, n={n}")
        ident = GroupElement.identity(h, n)
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
        return cls(h, n, gens, sorted(seen))

    @classmethod
    def product(cls, V: PermGroup, W: PermGroup, omega: bool = False) -> SymmetryGroup:
        h, n = V.degree, W.degree
        rhos = (False, True) if omega else (False,)
        elements = sorted(GroupElement(a, b, r) for a in V.elements for b in W.elements for r in rhos)
        ih, inn = Perm.identity(h), Perm.identity(n)
        gens = [GroupElement(a, inn, False) for a in V.generators]
        gens += [GroupElement(ih, b, False) for b in W.generators]
        if omega:
            gens.append(GroupElement(ih, inn, True))
        return cls(h, n, gens, elements)

    @classmethod
    def trivial(cls, h: int, n: int) -> SymmetryGroup:
        return cls(h, n, (), (GroupElement.identity(h, n),))

    def join(self, other: SymmetryGroup, cap: int = DEFAULT_GROUP_CAP) -> SymmetryGroup:
        if (self.h, self.n) != (other.h, other.n):
            raise DegreeMismatch("cannot join groups acting on different profile spaces")
        return SymmetryGroup.from_generators(self.h, self.n, self.generators + other.generators, cap)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, SymmetryGroup) and (self.h, self.n, self.elements) == (
            other.h, other.n, other.elements)

    def __hash__(self) -> int:
        return hash((self.h, self.n, self.elements))

    @cached_property
    def contained_in_id_slice(self) -> bool:
        return not any(g.rho for g in self.elements)

    @cached_property
    def product_shape(self) -> ProductShape | None:
        # projections of a group are groups, so no closure is needed
        phis = tuple(sorted({g.phi for g in self.elements}))
        psis = tuple(sorted({g.psi for g in self.elements}))
        V = PermGroup(self.h, phis, phis)
        W = PermGroup(self.n, psis, psis)
        omega = not self.contained_in_id_slice
        if self.order == V.order * W.order * (2 if omega else 1):
            return ProductShape(V, W, omega)
        return None

    @cached_property
    def first_rho0(self) -> GroupElement | None:
        """First element with rho component rho0 in canonical order."""
        for g in self.elements:
            if g.rho:
                return g
        return None

    def is_subgroup_of(self, other: SymmetryGroup) -> bool:
        return all(g in other for g in self.elements)

    def to_json(self) -> dict:
        shape = self.product_shape
        return {
            "h": self.h,
            "n": self.n,
            "generators": [str(g) for g in self.generators],
            "order": self.order,
            "contained_in_id_slice": self.contained_in_id_slice,
            "product_shape": None if shape is None else {
                "V_order": shape.V.order, "W_order": shape.W.order, "omega": shape.omega_full},
        }

    def __str__(self) -> str:
        gens = "; ".join(str(g) for g in self.generators) or "identity"
        return f"<{gens}> of order {self.order}"


# ---------------------------------------------------------------- profiles


def lehmer_rank(q: Perm) -> int:
    """Position of ``q`` in the lexicographic list of all permutations."""
    n = q.m
    imgs = q.images
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if imgs[j] < imgs[i])
        r += smaller * math.factorial(n - 1 - i)
    return r


def lehmer_unrank(r: int, n: int) -> Perm:
    pool = list(range(n))
    out = []
    for i in range(n):
        f = math.factorial(n - 1 - i)
        d, r = divmod(r, f)
        out.append(pool.pop(d))
    return Perm(out)


@dataclass(frozen=True)
class Profile:
    ballots: tuple[Perm, ...]
    index: int = field(compare=False)

    @classmethod
    def from_ballots(cls, ballots: Sequence[Perm]) -> Profile:
        ballots = tuple(ballots)
        if not ballots:
            raise ValueError("a profile needs at least one ballot")
        n = ballots[0].m
        if any(b.m != n for b in ballots):
            raise DegreeMismatch("ballots rank different numbers of alternatives")
        base = math.factorial(n)
        idx = 0
        for b in ballots:
            idx = idx * base + lehmer_rank(b)
        return cls(ballots, idx)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> Profile:
        """Each row lists alternatives best to worst (1-based)."""
        return cls.from_ballots([Perm.from_one_line(r) for r in rows])

    @classmethod
    def from_index(cls, index: int, h: int, n: int) -> Profile:
        base = math.factorial(n)
        if not 0 <= index < base**h:
            raise ValueError(f"index {index} outside the profile space")
        digits = []
        r = index
        for _ in range(h):
            r, d = divmod(r, base)
            digits.append(d)
        return cls(tuple(lehmer_unrank(d, n) for d in reversed(digits)), index)

    @property
    def h(self) -> int:
        return len(self.ballots)

    @property
    def n(self) -> int:
        return self.ballots[0].m

    def __str__(self) -> str:
        return "(" + ", ".join("".join(map(str, b.one_line())) if b.m < 10 else
                               " ".join(map(str, b.one_line())) for b in self.ballots) + ")"


def act(p: Profile, g: GroupElement) -> Profile:
    """The profile ``p^g``, computed directly from permutation products."""
    if p.h != g.h or p.n != g.n:
        raise DegreeMismatch(f"element for (h={g.h}, n={g.n}) applied to (h={p.h}, n={p.n})")
    phi_inv = g.phi.inverse()
    right = order_reversing(p.n) if g.rho else Perm.identity(p.n)
    ballots = [g.psi * p.ballots[phi_inv(i) - 1] * right for i in range(1, p.h + 1)]
    return Profile.from_ballots(ballots)


def stabilizer(U: SymmetryGroup, p: Profile) -> list[GroupElement]:
    return [g for g in U.elements if act(p, g) == p]


def parse_profile(text: str, source: str = "<string>") -> Profile:
    """Parse ``h=<int> n=<int>`` followed by ``h`` ranking lines."""
    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError(source, 1, "empty profile file")
    lineno, head = lines[0]
    fields = dict(tok.split("=", 1) for tok in head.split() if "=" in tok)
    try:
        h, n = int(fields["h"]), int(fields["n"])
    except (KeyError, ValueError):
        raise ParseError(source, lineno, "expected 'h=<int> n=<int>'") from None
    body = lines[1:]
    if len(body) != h:
        raise ParseError(source, body[-1][0] if body else lineno, f"expected {h} ballots, found {len(body)}")
    rows = []
    for i, ln in body:
        try:
            row = [int(t) for t in ln.split()]
        except ValueError:
            raise ParseError(source, i, f"non-integer token in {ln!r}") from None
        if sorted(row) != list(range(1, n + 1)):
            raise ParseError(source, i, f"not a permutation of 1..{n}")
        rows.append(row)
    return Profile.from_lists(rows)


def load_profile(path) -> Profile:
    path = Path(path)
    return parse_profile(path.read_text(encoding="utf-8"), str(path))


# ---------------------------------------------------------------- vectorized space


class ProfileSpace:
    """Index arithmetic over all ``(n!)^h`` profiles, vectorized with numpy."""

    _instances: dict = {}

    def __init__(self, h: int, n: int, cap: int = DEFAULT_PROFILE_CAP):
        if h < 1 or n < 1:
            raise ValueError("h and n must be positive")
        self.h, self.n = h, n
        self.N = math.factorial(n)
        self.size = self.N**h
        if self.size > cap:
            raise ProfileSpaceTooLarge(self.size, cap)
        self.orders = [Perm(t) for t in itertools.permutations(range(n))]
        self.order_index = {q: i for i, q in enumerate(self.orders)}
        self.weights = np.array([self.N ** (h - 1 - i) for i in range(h)], dtype=np.int64)
        idx = np.arange(self.size, dtype=np.int64)
        self.digits = (idx[:, None] // self.weights[None, :]) % self.N
        self._bm: dict = {}

    @classmethod
    def get(cls, h: int, n: int, cap: int = DEFAULT_PROFILE_CAP) -> ProfileSpace:
        size = math.factorial(n) ** h
        if size > cap:
            raise ProfileSpaceTooLarge(size, cap)
        key = (h, n)
        if key not in cls._instances:
            cls._instances[key] = cls(h, n, cap)
        return cls._instances[key]

    def profile(self, index: int) -> Profile:
        return Profile(tuple(self.orders[d] for d in self.digits[index].tolist()), int(index))

    def index_of(self, ballots: Sequence[Perm]) -> int:
        return int(sum(self.order_index[b] * int(w) for b, w in zip(ballots, self.weights)))

    def ballot_map(self, psi: Perm, rho: bool) -> np.ndarray:
        """Array sending order index ``r`` to the index of ``psi * q_r * rho``."""
        key = (psi, rho)
        bm = self._bm.get(key)
        if bm is None:
            right = order_reversing(self.n) if rho else Perm.identity(self.n)
            bm = np.array([self.order_index[psi * q * right] for q in self.orders], dtype=np.int64)
            self._bm[key] = bm
        return bm

    def act_indices(self, idx, g: GroupElement) -> np.ndarray:
        """Indices of ``p^g`` for the profiles with the given indices."""
        idx = np.asarray(idx, dtype=np.int64)
        bm = self.ballot_map(g.psi, g.rho)
        src = [g.phi.inverse()(i) - 1 for i in range(1, self.h + 1)]
        d = self.digits[idx][..., src]
        return bm[d] @ self.weights

    def act_all(self, g: GroupElement) -> np.ndarray:
        bm = self.ballot_map(g.psi, g.rho)
        src = [g.phi.inverse()(i) - 1 for i in range(1, self.h + 1)]
        return bm[self.digits[:, src]] @ self.weights


# ---------------------------------------------------------------- orbits


@dataclass
class OrbitTable:
    group: SymmetryGroup
    space: ProfileSpace
    rep_index: np.ndarray          # orbit id -> representative profile index
    orbit_of: np.ndarray           # profile index -> orbit id
    sizes: np.ndarray              # orbit id -> size
    transporter: np.ndarray        # profile index -> element index g with rep^g = p
    stab_of_rep: list[list[int]]   # orbit id -> element indices fixing the rep
    class_of_orbit: list[str]      # "P1" or "P2"
    psi_of_rep: list[Perm | None]  # psi_j for P2 orbits when it is well defined

    @property
    def num_orbits(self) -> int:
        return len(self.rep_index)

    @property
    def p1(self) -> list[int]:
        return [j for j, c in enumerate(self.class_of_orbit) if c == "P1"]

    @property
    def p2(self) -> list[int]:
        return [j for j, c in enumerate(self.class_of_orbit) if c == "P2"]

    def rep(self, j: int) -> Profile:
        return self.space.profile(int(self.rep_index[j]))

    def stabilizer_elements(self, j: int) -> list[GroupElement]:
        return [self.group.elements[i] for i in self.stab_of_rep[j]]

    def transporting_element(self, index: int) -> GroupElement:
        return self.group.elements[int(self.transporter[index])]

    def to_json(self) -> dict:
        return {
            "orbits": [
                {
                    "rep_index": int(self.rep_index[j]),
                    "size": int(self.sizes[j]),
                    "class": self.class_of_orbit[j],
                    "psi": None if self.psi_of_rep[j] is None else str(self.psi_of_rep[j]),
                }
                for j in range(self.num_orbits)
            ]
        }


def _orbit_labels(U: SymmetryGroup, space: ProfileSpace) -> np.ndarray:
    """Orbit representative (minimal index) of every profile, via generator edges."""
    P = space.size
    gens = [g for g in U.generators if not g.is_identity()]
    if not gens:
        return np.arange(P, dtype=np.int64)
    src = np.tile(np.arange(P, dtype=np.int64), len(gens))
    dst = np.concatenate([space.act_all(g) for g in gens])
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(P, P))
    _, labels = connected_components(graph, directed=True, connection="weak")
    rep = np.full(labels.max() + 1, P, dtype=np.int64)
    np.minimum.at(rep, labels, np.arange(P, dtype=np.int64))
    return rep[labels]


def orbit_decomposition(U: SymmetryGroup, threads: int = 1, cap: int = DEFAULT_PROFILE_CAP) -> OrbitTable:
    key = ("orbits", cap)
    if key in U._cache:
        return U._cache[key]
    space = ProfileSpace.get(U.h, U.n, cap)
    P = space.size
    rep_of = _orbit_labels(U, space)
    rep_index = np.unique(rep_of)
    orbit_of = np.searchsorted(rep_index, rep_of)
    sizes = np.bincount(orbit_of, minlength=len(rep_index))

    elements = U.elements
    nthreads = max(1, int(threads))
    chunks = [list(range(i, len(elements), nthreads)) for i in range(nthreads)]

    def work(chunk: list[int]):
        trans = np.full(P, len(elements), dtype=np.int64)
        fixed: list[tuple[int, np.ndarray]] = []
        for gi in chunk:
            img = space.act_indices(rep_index, elements[gi])
            np.minimum.at(trans, img, gi)
            fixed.append((gi, np.nonzero(img == rep_index)[0]))
        return trans, fixed

    if nthreads == 1:
        results = [work(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=nthreads) as ex:
            results = list(ex.map(work, chunks))

    transporter = results[0][0]
    for trans, _ in results[1:]:
        transporter = np.minimum(transporter, trans)
    if (transporter >= len(elements)).any():
        raise InternalInvariantBroken("some profile is not reached from its representative")

    stab: list[list[int]] = [[] for _ in range(len(rep_index))]
    for _, fixed in results:
        for gi, js in fixed:
            for j in js.tolist():
                stab[j].append(gi)
    for s in stab:
        s.sort()

    rho0 = order_reversing(U.n)
    classes, psis = [], []
    for j in range(len(rep_index)):
        rho_psis = {elements[gi].psi for gi in stab[j] if elements[gi].rho}
        if rho_psis:
            classes.append("P2")
            psi = next(iter(rho_psis))
            ok = len(rho_psis) == 1 and is_conjugate(psi, rho0)
            psis.append(psi if ok else None)
        else:
            classes.append("P1")
            psis.append(None)

    table = OrbitTable(U, space, rep_index, orbit_of, sizes, transporter, stab, classes, psis)
    U._cache[key] = table
    return table


# ---------------------------------------------------------------- regularity


@dataclass(frozen=True)
class RegularityReport:
    verdict: bool
    witness: Profile | None
    criterion: bool | None
    criterion_agreement: bool | None

    def __bool__(self) -> bool:
        return self.verdict


def stabilizer_is_regular(stab: Iterable[GroupElement], n: int) -> bool:
    """Whether a stabilizer fits the template for some conjugate of rho0."""
    rho0 = order_reversing(n)
    rho_psis = set()
    for g in stab:
        if g.rho:
            rho_psis.add(g.psi)
        elif not g.psi.is_identity():
            return False
    if not rho_psis:
        return True
    return len(rho_psis) == 1 and is_conjugate(next(iter(rho_psis)), rho0)


def gcd_criterion(shape: ProductShape) -> bool:
    gamma = type_number(shape.V)
    if shape.omega_full:
        return math.gcd(gamma, math.lcm(shape.W.order, 2)) == 1
    return math.gcd(gamma, shape.W.order) == 1


def is_regular(U: SymmetryGroup, cap: int = DEFAULT_PROFILE_CAP) -> RegularityReport:
    key = ("regular", cap)
    if key in U._cache:
        return U._cache[key]
    table = orbit_decomposition(U, cap=cap)
    witness = None
    # stabilizers along an orbit are conjugate, so representatives suffice;
    # reps are the minimal indices, hence the first failing rep is the first failing profile
    for j in range(table.num_orbits):
        if not stabilizer_is_regular(table.stabilizer_elements(j), U.n):
            witness = table.rep(j)
            break
    verdict = witness is None
    shape = U.product_shape
    crit = gcd_criterion(shape) if shape is not None else None
    report = RegularityReport(verdict, witness, crit, None if crit is None else crit == verdict)
    U._cache[key] = report
    return report


def psi_for_profile(U: SymmetryGroup, p: Profile) -> Perm | None:
    """The permutation ``psi_p`` attached to a reversal-stabilized profile, else None."""
    if not is_regular(U):
        raise NotRegular(is_regular(U).witness)
    stab = stabilizer(U, p)
    id_psis = {g.psi for g in stab if not g.rho}
    rho_psis = {g.psi for g in stab if g.rho}
    if any(not s.is_identity() for s in id_psis):
        raise InternalInvariantBroken(f"stabilizer of {p} moves alternatives without reversal")
    if not rho_psis:
        return None
    if len(rho_psis) != 1:
        raise InternalInvariantBroken(f"stabilizer of {p} has {len(rho_psis)} distinct psi components")
    psi = next(iter(rho_psis))
    if not is_conjugate(psi, order_reversing(U.n)):
        raise InternalInvariantBroken(f"psi_p={psi} is not conjugate to rho0")
    return psi


def p2_nonempty_criterion(U: SymmetryGroup) -> bool:
    """Some ``(phi, psi, rho0)`` in ``U`` has ``psi`` conjugate to ``rho0``."""
    rho0 = order_reversing(U.n)
    return any(g.rho and is_conjugate(g.psi, rho0) for g in U.elements)
