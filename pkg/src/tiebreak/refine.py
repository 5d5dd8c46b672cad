"""Resolute refinements: existence, construction and exact counting.

Everything here works orbit by orbit.  A value is chosen at each orbit
representative (from ``S(p) & C(p)`` for symmetric refinements, from the
``A1``/``A2`` feasibility sets for consistent ones) and transported to the rest
of the orbit along the element recorded in the orbit table.
"""

from __future__ import annotations

import itertools
from collections import Counter
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    EmptyIntersection,
    HypothesisViolated,
    InternalInvariantBroken,
    InvalidK,
    NoRefinement,
    NotConsistent,
    NotDecisive,
    NotRegular,
    NotSymmetric,
)
from .perms import Perm, is_conjugate, order_reversing, symmetric_group, type_number
from .profiles import (
    GroupElement,
    OrbitTable,
    Profile,
    ProfileSpace,
    SymmetryGroup,
    is_regular,
    orbit_decomposition,
)
from .relations import (
    Relation,
    aut_group,
    classify,
    contains_order,
    indifference_partition,
    linear_extensions,
    order_aut_stats,
    president_order,
)
from .rules import (
    Correspondence,
    check_consistent,
    check_symmetric,
    item_key,
    item_str,
    left_item,
    spc_item,
)


# ---------------------------------------------------------------- policies and results


@dataclass
class ChoicePolicy:
    """How to pick one element from a finite feasible set."""

    kind: str = "min"
    seed: int | None = None
    _rng: np.random.Generator | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("min", "max", "random"):
            raise ValueError(f"unknown policy {self.kind!r}")
        if self.kind == "random":
            if self.seed is None:
                self.seed = 0
            self._rng = np.random.default_rng(self.seed)

    def choose(self, items, key=item_key):
        items = sorted(items, key=key)
        if not items:
            raise ValueError("cannot choose from an empty set")
        if self.kind == "min":
            return items[0]
        if self.kind == "max":
            return items[-1]
        return items[int(self._rng.integers(len(items)))]

    def describe(self) -> str:
        return f"random(seed={self.seed})" if self.kind == "random" else self.kind


@dataclass
class ResoluteFunction:
    kind: str                 # "SPF" or "k-SCF"
    h: int
    n: int
    entries: list
    k: int | None = None
    policy: str = "min"

    def as_correspondence(self) -> Correspondence:
        return Correspondence("spc" if self.kind == "SPF" else "kscc", self.h, self.n,
                              [frozenset([v]) for v in self.entries], self.k, name="refinement")

    def __getitem__(self, index: int):
        return self.entries[index]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "policy": self.policy,
            "entries": [{"profile_index": i, "value": item_str(v)} for i, v in enumerate(self.entries)],
        }

    def to_tsv(self) -> str:
        rows = ["profile_index\tvalue"] + [f"{i}\t{item_str(v)}" for i, v in enumerate(self.entries)]
        return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class RefinementCount:
    count: int
    factors: tuple[int, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if math.prod(self.factors) != self.count:
            raise InternalInvariantBroken("count differs from the product of its factors")

    def __int__(self) -> int:
        return self.count

    def to_json(self, full: bool = True) -> dict:
        # counts are exact; JSON integers are arbitrary precision
        out = {"count": self.count}
        if full:
            out.update(factors=list(self.factors), labels=list(self.labels))
        else:
            hist = Counter(self.factors)
            out["factor_histogram"] = {str(k): hist[k] for k in sorted(hist)}
            out["orbit_classes"] = dict(sorted(Counter(l.split(":", 1)[1] for l in self.labels).items()))
        return out


# ---------------------------------------------------------------- S(p)


def _fixes(q: Perm, stab: Sequence[GroupElement]) -> bool:
    return all(spc_item(q, g.psi, g.rho) == q for g in stab)


def s_correspondence(U: SymmetryGroup, p: Profile) -> frozenset[Perm]:
    """Linear orders ``q`` with ``psi q rho = q`` for every stabilizer element."""
    from .profiles import stabilizer

    stab = stabilizer(U, p)
    return frozenset(Perm(t) for t in itertools.permutations(range(U.n)) if _fixes(Perm(t), stab))


def s_size_formula(n: int, p2: bool) -> int:
    """Size of ``S(p)`` for a regular group: ``n!`` or ``2^(n//2) (n//2)!``."""
    if not p2:
        return math.factorial(n)
    return 2 ** (n // 2) * math.factorial(n // 2)


def _s_of_rep(table: OrbitTable, j: int) -> frozenset[Perm]:
    stab = table.stabilizer_elements(j)
    return frozenset(q for q in table.space.orders if _fixes(q, stab))


# ---------------------------------------------------------------- shared preconditions


def _require_regular(U: SymmetryGroup) -> None:
    rep = is_regular(U)
    if not rep.verdict:
        raise NotRegular(rep.witness)


def _require_decisive(C: Correspondence) -> None:
    i = C.first_empty()
    if i is not None:
        raise NotDecisive(i)


def _transport(table: OrbitTable, chooser) -> list:
    """Fill the whole table: ``chooser(j, g)`` gives the value at ``rep_j^g``."""
    out = [None] * table.space.size
    cache: dict = {}
    for p in range(table.space.size):
        j = int(table.orbit_of[p])
        gi = int(table.transporter[p])
        key = (j, gi)
        if key not in cache:
            cache[key] = chooser(j, table.group.elements[gi])
        out[p] = cache[key]
    return out


# ---------------------------------------------------------------- symmetric refinements


def _symmetric_sets(U: SymmetryGroup, C: Correspondence):
    table = orbit_decomposition(U)
    sets = [sorted(_s_of_rep(table, j) & C.values[int(table.rep_index[j])], key=item_key)
            for j in range(table.num_orbits)]
    return table, sets


def count_symmetric_refinements(U: SymmetryGroup, C: Correspondence, check: bool = True) -> RefinementCount:
    """``prod_j |S(p^j) & C(p^j)|`` over orbit representatives."""
    if check:
        _require_regular(U)
        res = check_symmetric(C, U)
        if not res:
            raise NotSymmetric(res.counterexample)
    table, sets = _symmetric_sets(U, C)
    factors = tuple(len(s) for s in sets)
    return RefinementCount(math.prod(factors), factors,
                           tuple(f"orbit{j}:{table.class_of_orbit[j]}" for j in range(table.num_orbits)))


def build_symmetric_refinement(U: SymmetryGroup, C: Correspondence,
                               policy: ChoicePolicy | None = None) -> tuple[ResoluteFunction, RefinementCount]:
    policy = policy or ChoicePolicy()
    if C.kind != "spc":
        raise ValueError("symmetric refinements are built for SPCs")
    _require_regular(U)
    res = check_symmetric(C, U)
    if not res:
        raise NotSymmetric(res.counterexample)
    _require_decisive(C)
    table, sets = _symmetric_sets(U, C)
    for j, s in enumerate(sets):
        if not s:
            raise EmptyIntersection(j, int(table.rep_index[j]))
    chosen = [policy.choose(s) for s in sets]
    entries = _transport(table, lambda j, g: spc_item(chosen[j], g.psi, g.rho))
    factors = tuple(len(s) for s in sets)
    count = RefinementCount(math.prod(factors), factors,
                            tuple(f"orbit{j}:{table.class_of_orbit[j]}" for j in range(table.num_orbits)))
    return ResoluteFunction("SPF", C.h, C.n, entries, None, policy.describe()), count


# ---------------------------------------------------------------- consistent refinements


@dataclass
class ConsistentSets:
    table: OrbitTable
    mixed: bool
    g_star: GroupElement | None
    plain: list | None = None       # id-slice case: C(p^j)
    a1: dict | None = None          # P1 orbit -> list of (y, z)
    a2: dict | None = None          # P2 orbit -> list of x

    def factors(self) -> tuple[tuple[int, ...], tuple[str, ...]]:
        if not self.mixed:
            return tuple(len(s) for s in self.plain), tuple(f"orbit{j}:C" for j in range(len(self.plain)))
        f, lab = [], []
        for j in sorted(self.a1):
            f.append(len(self.a1[j]))
            lab.append(f"orbit{j}:A1")
        for j in sorted(self.a2):
            f.append(len(self.a2[j]))
            lab.append(f"orbit{j}:A2")
        return tuple(f), tuple(lab)


def consistent_sets(U: SymmetryGroup, C: Correspondence) -> ConsistentSets:
    table = orbit_decomposition(U)
    space = table.space
    reps = [int(r) for r in table.rep_index]
    if U.contained_in_id_slice:
        plain = [sorted(C.values[r], key=item_key) for r in reps]
        return ConsistentSets(table, False, None, plain=plain)
    gs = U.first_rho0
    a1, a2 = {}, {}
    for j, r in enumerate(reps):
        if table.class_of_orbit[j] == "P1":
            r_star = int(space.act_indices([r], gs)[0])
            pairs = [(y, z) for y in C.values[r] for z in C.values[r_star] if z != left_item(y, gs.psi)]
            a1[j] = sorted(pairs, key=lambda yz: (item_key(yz[0]), item_key(yz[1])))
        else:
            psi_j = table.psi_of_rep[j]
            if psi_j is None:
                raise InternalInvariantBroken(f"orbit {j} has no well-defined psi_j")
            a2[j] = sorted((x for x in C.values[r] if left_item(x, psi_j) != x), key=item_key)
    return ConsistentSets(table, True, gs, a1=a1, a2=a2)


def count_consistent_refinements(U: SymmetryGroup, C: Correspondence, check: bool = True) -> RefinementCount:
    """``prod |C(p^j)|`` in the id slice, ``|A1| * |A2|`` otherwise."""
    if check:
        _require_regular(U)
        res = check_consistent(C, U)
        if not res:
            raise NotConsistent(res.counterexample)
    sets = consistent_sets(U, C)
    f, lab = sets.factors()
    return RefinementCount(math.prod(f), f, lab)


def first_conjugator(target: Perm) -> Perm | None:
    """First ``sigma`` in ``S_n`` (lexicographic) with ``sigma rho0 sigma^-1 = target``."""
    rho0 = order_reversing(target.m)
    for sigma in symmetric_group(target.m).elements:
        if sigma * rho0 * sigma.inverse() == target:
            return sigma
    return None


def build_consistent_refinement(U: SymmetryGroup, C: Correspondence,
                                policy: ChoicePolicy | None = None) -> tuple[ResoluteFunction, RefinementCount]:
    policy = policy or ChoicePolicy()
    _require_regular(U)
    res = check_consistent(C, U)
    if not res:
        raise NotConsistent(res.counterexample)
    _require_decisive(C)
    sets = consistent_sets(U, C)
    table = sets.table
    kind = "SPF" if C.kind == "spc" else "k-SCF"

    if not sets.mixed:
        chosen = [policy.choose(s) for s in sets.plain]
        entries = _transport(table, lambda j, g: left_item(chosen[j], g.psi))
    else:
        for j in sorted(sets.a2):
            if not sets.a2[j]:
                raise NoRefinement(j, "A2Empty", int(table.rep_index[j]))
        for j in sorted(sets.a1):
            if not sets.a1[j]:
                # excluded by theory for consistent decisive C
                raise InternalInvariantBroken(f"A1 empty at orbit {j}")
        psi_star_inv = sets.g_star.psi.inverse()
        pick1 = {j: policy.choose(s, key=lambda yz: (item_key(yz[0]), item_key(yz[1])))
                 for j, s in sorted(sets.a1.items())}
        pick2 = {j: policy.choose(s) for j, s in sorted(sets.a2.items())}
        sigma = {j: first_conjugator(table.psi_of_rep[j]) for j in pick2}
        rho0 = order_reversing(U.n)

        def chooser(j, g):
            if j in pick1:
                y, z = pick1[j]
                return left_item(z, g.psi * psi_star_inv) if g.rho else left_item(y, g.psi)
            s = sigma[j]
            mid = s * rho0 * s.inverse() if g.rho else Perm.identity(U.n)
            return left_item(pick2[j], g.psi * mid)

        entries = _transport(table, chooser)

    f, lab = sets.factors()
    count = RefinementCount(math.prod(f), f, lab)
    return ResoluteFunction(kind, C.h, C.n, entries, C.k, policy.describe()), count


# ---------------------------------------------------------------- U_k and the set T


def uk_correspondence(U: SymmetryGroup, k: int) -> Correspondence:
    """All ``k``-subsets off the reversal-stabilized profiles, ``psi_p``-invariant ones on them."""
    if not 1 <= k <= U.n - 1:
        raise InvalidK(f"k={k} outside 1..{U.n - 1}")
    _require_regular(U)
    table = orbit_decomposition(U)
    subsets = [frozenset(c) for c in itertools.combinations(range(1, U.n + 1), k)]
    everything = frozenset(subsets)
    cache: dict = {}
    values = []
    for p in range(table.space.size):
        j = int(table.orbit_of[p])
        if table.class_of_orbit[j] == "P1":
            values.append(everything)
            continue
        g = table.transporting_element(p)
        psi_p = g.psi * table.psi_of_rep[j] * g.psi.inverse()
        if psi_p not in cache:
            cache[psi_p] = frozenset(x for x in subsets if left_item(x, psi_p) == x)
        values.append(cache[psi_p])
    return Correspondence("kscc", U.h, U.n, values, k, name=f"U_{k}")


def t_set_contains(n: int, k: int) -> bool:
    """Membership of ``(n, k)`` in T: small ``n``, extreme ``k``, or even ``n`` with odd ``k``."""
    if n < 2 or not 1 <= k <= n - 1:
        raise InvalidK(f"need n >= 2 and 1 <= k <= n-1, got n={n}, k={k}")
    return n <= 3 or k in (1, n - 1) or (n % 2 == 0 and k % 2 == 1)


def uk_decisive_formula(U: SymmetryGroup, k: int) -> bool:
    """Decisiveness of ``U_k``: no reversal-stabilized profile, odd ``n``, or even ``n >= 4`` with even ``k``."""
    from .profiles import p2_nonempty_criterion

    n = U.n
    return (not p2_nonempty_criterion(U)) or n % 2 == 1 or (n % 2 == 0 and n >= 4 and k % 2 == 0)


# ---------------------------------------------------------------- the q construction


def _closure(m: int, pairs) -> np.ndarray:
    """Chain closure of a strict relation as a boolean matrix (0-based)."""
    reach = np.zeros((m, m), dtype=bool)
    for x, y in pairs:
        reach[x - 1, y - 1] = True
    for k in range(m):
        reach |= reach[:, k:k + 1] & reach[k:k + 1, :]
    return reach


def _find_cycle_pair(R: Relation):
    reach = _closure(R.m, R.strict().pairs)
    for x, y in sorted(R.strict().pairs):
        if reach[y - 1, x - 1]:
            return (x, y)
    return None


def qc4_construct(psi: Perm, rp: Relation) -> Perm:
    """A linear order ``q`` with ``psi q rho0 = q`` that contains ``rp``.

    ``psi`` must be conjugate to the order-reversing permutation and ``rp``
    irreflexive, acyclic and closed under ``(x, y) -> (psi(y), psi(x))``.
    """
    n = psi.m
    if rp.m != n:
        raise DegreeMismatch(f"relation degree {rp.m} vs permutation degree {n}")
    if not is_conjugate(psi, order_reversing(n)):
        raise HypothesisViolated("not-involution", str(psi))
    for x, y in sorted(rp.pairs):
        if x == y:
            raise HypothesisViolated("not-acyclic", (x, y))
    cyc = _find_cycle_pair(rp)
    if cyc is not None:
        raise HypothesisViolated("not-acyclic", cyc)
    for x, y in sorted(rp.pairs):
        if (psi(y), psi(x)) not in rp.pairs:
            raise HypothesisViolated("condition-a", (x, y))

    reach = _closure(n, rp.pairs)                   # reach[x, y]: x above y through a chain
    gamma = set()
    for z in range(n):
        above_z = set(np.nonzero(reach[:, z])[0].tolist())
        above_pz = set(np.nonzero(reach[:, psi.images[z]])[0].tolist())
        gamma |= above_z & above_pz

    orbits = [tuple(x - 1 for x in o) for o in psi.orbits()]
    fixed = [o[0] for o in orbits if len(o) == 1]
    y_of: dict[tuple, int] = {}
    free: list[tuple] = []
    for o in orbits:
        if len(o) == 1:
            continue
        hit = [x for x in o if x in gamma]
        if len(hit) > 1:
            raise InternalInvariantBroken(f"both points of {o} lie in Gamma")
        if hit:
            y_of[o] = hit[0]
        else:
            free.append(o)
    T = set(y_of.values()) | {x for o in free for x in o}

    # lexicographically minimal linear extension of rp restricted to T
    l_seq: list[int] = []
    placed: set[int] = set()
    while len(l_seq) < len(T):
        for x in sorted(T - placed):
            if all((w + 1, x + 1) not in rp.pairs for w in T - placed - {x}):
                l_seq.append(x)
                placed.add(x)
                break
        else:
            raise InternalInvariantBroken("restriction of an acyclic relation has a cycle")
    l_pos = {x: i for i, x in enumerate(l_seq)}
    for o in free:
        y_of[o] = min(o, key=lambda x: l_pos[x])
    M = sorted(y_of.values(), key=lambda x: l_pos[x])
    top = list(M)
    bottom = [psi.images[a] for a in reversed(M)]
    q = Perm(top + fixed + bottom)

    if spc_item(q, psi, True) != q:
        raise InternalInvariantBroken("constructed order is not fixed by psi . rho0")
    if not contains_order(q, rp):
        raise InternalInvariantBroken("constructed order misses a pair of the relation")
    return q


# ---------------------------------------------------------------- social methods


SocialMethod = list  # profile index -> Relation on the alternatives


@dataclass(frozen=True)
class SocialMethodReport:
    refines: bool
    condition_a: bool
    refine_witness: int | None = None
    condition_a_witness: tuple | None = None


def social_method_check(C: Correspondence, U: SymmetryGroup, R: SocialMethod) -> SocialMethodReport:
    """Whether the extensions of ``R`` refine ``C`` and ``R`` respects the reversal stabilizers."""
    space = ProfileSpace.get(C.h, C.n)
    if len(R) != space.size:
        raise DegreeMismatch("social method does not cover the profile space")
    refine_witness = None
    for p in range(space.size):
        rel = R[p]
        flags = classify(rel)
        if not (flags.irreflexive and flags.acyclic) or not set(linear_extensions(rel)) <= C.values[p]:
            refine_witness = p
            break
    cond_witness = None
    ar = np.arange(space.size)
    for g in U.elements:
        if not g.rho:
            continue
        for p in np.nonzero(space.act_all(g) == ar)[0].tolist():
            rel = R[p]
            for x, y in sorted(rel.pairs):
                if (g.psi(y), g.psi(x)) not in rel.pairs:
                    if cond_witness is None or p < cond_witness[0]:
                        cond_witness = (p, str(g), (x, y))
                    break
    return SocialMethodReport(refine_witness is None, cond_witness is None, refine_witness, cond_witness)


def social_method_from_refinement(f: ResoluteFunction) -> SocialMethod:
    """``R(p) = f(p)`` with the diagonal removed."""
    if f.kind != "SPF":
        raise ValueError("needs a resolute SPC")
    return [Relation.from_linear_order(q).strict() for q in f.entries]


def refinement_from_social_method(U: SymmetryGroup, C: Correspondence, R: SocialMethod) -> ResoluteFunction:
    """A symmetric resolute refinement built from a certified social method."""
    _require_regular(U)
    report = social_method_check(C, U, R)
    if not report.refines:
        raise HypothesisViolated("not-refining", report.refine_witness)
    if not report.condition_a:
        raise HypothesisViolated("condition-a", report.condition_a_witness)
    table = orbit_decomposition(U)
    chosen = []
    for j in range(table.num_orbits):
        r = int(table.rep_index[j])
        psi = table.psi_of_rep[j]
        if table.class_of_orbit[j] == "P2":
            chosen.append(qc4_construct(psi, R[r]))
        else:
            exts = linear_extensions(R[r])
            chosen.append(exts[0])
    entries = _transport(table, lambda j, g: spc_item(chosen[j], g.psi, g.rho))
    return ResoluteFunction("SPF", C.h, C.n, entries, None, "social-method")


# ---------------------------------------------------------------- existence gates


GATE_MODES = ("sym_id", "sym_reversal", "cons_spc_reversal", "cons_kscc_id", "cons_kscc_reversal")


@dataclass(frozen=True)
class GateVerdict:
    mode: str
    verdict: str              # exists | not_exists | conditional | undetermined
    reason: dict

    @property
    def exists(self):
        if self.verdict == "conditional":
            return "conditional"
        if self.verdict == "undetermined":
            return None
        return self.verdict == "exists"

    def to_json(self) -> dict:
        return {"mode": self.mode, "verdict": self.verdict, "exists": self.exists, "reason": self.reason}


def existence_gate(R: Relation, Q: Relation, mode: str, k: int | None = None) -> GateVerdict:
    """Decide existence of refinements from the automorphism groups of ``R`` and ``Q`` alone."""
    if mode not in GATE_MODES:
        raise ValueError(f"unknown mode {mode!r}; choose from {', '.join(GATE_MODES)}")
    if mode.startswith("cons_kscc"):
        if k is None:
            raise InvalidK("k is required for k-SCC modes")
        if not 1 <= k <= Q.m - 1:
            raise InvalidK(f"k={k} outside 1..{Q.m - 1}")
    AR, AQ = aut_group(R), aut_group(Q)
    gamma = type_number(AR)
    aq = AQ.order
    for rel, grp, is_voters in ((R, AR, True), (Q, AQ, False)):
        if classify(rel).is_order:
            g_formula, o_formula = order_aut_stats(indifference_partition(rel)[1])
            if o_formula != grp.order or (is_voters and g_formula != gamma):
                raise InternalInvariantBroken("automorphism group disagrees with the order formulas")
    h, n = R.m, Q.m
    g_id = math.gcd(gamma, aq)
    lcm2 = math.lcm(aq, 2)
    g_rev = math.gcd(gamma, lcm2)
    reason = {"h": h, "n": n, "gamma_aut_R": gamma, "aut_R_order": AR.order, "aut_Q_order": aq,
              "gcd": g_id, "lcm_aut_Q_2": lcm2, "gcd_lcm": g_rev}

    if mode == "sym_id":
        reason["test"] = "gcd(gamma(Aut R), |Aut Q|) = 1 (necessary and sufficient)"
        return GateVerdict(mode, "exists" if g_id == 1 else "not_exists", reason)
    if mode == "sym_reversal":
        reason["test"] = ("gcd(gamma(Aut R), lcm(|Aut Q|, 2)) = 1, plus a certified social method "
                          "(see social_method_check)")
        return GateVerdict(mode, "conditional" if g_rev == 1 else "not_exists", reason)
    if mode == "cons_spc_reversal":
        reason["test"] = "gcd(gamma(Aut R), lcm(|Aut Q|, 2)) = 1 (sufficient)"
        return GateVerdict(mode, "exists" if g_rev == 1 else "undetermined", reason)
    reason["k"] = k
    if mode == "cons_kscc_id":
        reason["test"] = "gcd(gamma(Aut R), |Aut Q|) = 1 (sufficient)"
        return GateVerdict(mode, "exists" if g_id == 1 else "undetermined", reason)

    rho0 = order_reversing(n)
    conds = {
        "a": not any(is_conjugate(s, rho0) for s in AQ.elements),
        "b": n <= 3,
        "c": k in (1, n - 1),
        "d": n % 2 == 0 and k % 2 == 1,
    }
    reason["conditions"] = conds
    reason["test"] = ("gcd(gamma(Aut R), lcm(|Aut Q|, 2)) = 1, then every admissible k-SCC has a "
                      "refinement iff one of (a)-(d) holds")
    if g_rev != 1:
        return GateVerdict(mode, "undetermined", reason)
    return GateVerdict(mode, "exists" if any(conds.values()) else "not_exists", reason)


def gate_group(R: Relation, Q: Relation, mode: str) -> SymmetryGroup:
    """The group ``Aut(R) x Aut(Q) x {id}`` or ``x Omega`` that a gate mode refers to."""
    omega = mode.endswith("reversal")
    return SymmetryGroup.product(aut_group(R), aut_group(Q), omega)


# ---------------------------------------------------------------- presets


def preset_president(h: int, n: int, policy: str = "best") -> tuple[Relation, str]:
    if policy not in ("best", "worst"):
        raise ValueError("policy must be 'best' or 'worst'")
    R = president_order(h)
    desc = (f"voter 1 above voters 2..{h}, who are mutually indifferent; "
            f"ties broken by voter 1's {policy} alternative (n={n})")
    return R, desc


def president_tiebreak(C: Correspondence, policy: str = "best") -> ResoluteFunction:
    """For a 1-SCC: voter 1 picks the best (or worst) tied alternative on their ballot."""
    if C.kind != "kscc" or C.k != 1:
        raise ValueError("the president tie-break applies to k-SCCs with k = 1")
    _require_decisive(C)
    space = ProfileSpace.get(C.h, C.n)
    entries = []
    for p in range(space.size):
        ballot = space.orders[int(space.digits[p, 0])]
        rank = ballot.inverse()
        tied = [next(iter(w)) for w in C.values[p]]
        pick = min(tied, key=rank) if policy == "best" else max(tied, key=rank)
        entries.append(frozenset([pick]))
    return ResoluteFunction("k-SCF", C.h, C.n, entries, 1, f"president-{policy}")


def split_committee_options(h: int) -> list[tuple[int, int]]:
    """Splits ``h = h1 + h2`` with ``h1 <= h2`` and coprime parts."""
    return [(a, h - a) for a in range(1, h // 2 + 1) if math.gcd(a, h - a) == 1]


def full_symmetry_gate(h: int, n: int) -> GateVerdict:
    return existence_gate(Relation.total(h), Relation.total(n), "sym_id")
