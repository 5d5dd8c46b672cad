"""Acceptance criteria 1-11.

Every test carries a ``criterion`` marker; ``conftest.py`` folds the outcomes
into one PASS/FAIL line per criterion at the end of the run.  Each check pairs
the library route with an independent one from ``oracles``.
"""

import io
import itertools
import math
import random
import time

import numpy as np
import pytest

import oracles
from catalog import involution_group, regular_catalog
from tiebreak.cli import run
from tiebreak.errors import HypothesisViolated, NoRefinement
from tiebreak.perms import Perm, generate, symmetric_group, type_number
from tiebreak.profiles import Profile, ProfileSpace, SymmetryGroup, is_regular, orbit_decomposition
from tiebreak.refine import (
    build_consistent_refinement,
    count_consistent_refinements,
    count_symmetric_refinements,
    existence_gate,
    full_symmetry_gate,
    preset_president,
    qc4_construct,
    s_correspondence,
    split_committee_options,
    t_set_contains,
    uk_correspondence,
)
from tiebreak.relations import Relation, aut_group, indifference_partition, iter_orders, order_aut_stats
from tiebreak.rules import check_consistent, check_symmetric, induce_kscc, named_group, refines, spc_table

criterion = pytest.mark.criterion


def _ogroup(U):
    return [(g.phi.images, g.psi.images, g.rho) for g in U.elements]


# ---------------------------------------------------------------- 1. type numbers


@criterion(1, "type numbers of S_m, {id} and random subgroups")
def test_type_numbers():
    for m in range(2, 8):
        assert type_number(symmetric_group(m)) == m
        assert type_number(generate(m, [])) == 1
    for m in range(2, 7):
        assert oracles.gamma(oracles.perms(m)) == m
    rng = random.Random(20261015)
    for _ in range(500):
        m = rng.randint(2, 6)
        gens = [tuple(rng.sample(range(m), m)) for _ in range(rng.randint(1, 2))]
        U = generate(m, [Perm(s) for s in gens])
        elems = oracles.closure(gens, m)
        assert {s.images for s in U.elements} == elems
        g = type_number(U)
        assert g == oracles.gamma(elems) and m % g == 0


# ---------------------------------------------------------------- 2. Aut of an order


def _oracle_orders(m):
    for levels in itertools.product(range(m), repeat=m):
        used = sorted(set(levels))
        if used == list(range(len(used))):
            yield [[x for x in range(m) if levels[x] == lv] for lv in used]


def _check_order(classes, m):
    aut = oracles.aut(oracles.order_from_classes(classes), m)
    sizes = [len(c) for c in classes]
    assert len(aut) == math.prod(math.factorial(s) for s in sizes)
    assert oracles.gamma(aut) == math.gcd(*sizes)
    R = Relation.from_classes(m, [[x + 1 for x in c] for c in classes])
    AR = aut_group(R)
    assert {s.images for s in AR.elements} == set(aut)
    assert order_aut_stats(indifference_partition(R)[1]) == (math.gcd(*sizes), len(aut))


@criterion(2, "|Aut(R)| and gamma(Aut(R)) for orders")
def test_order_automorphisms():
    for m in range(1, 6):
        n_orders = 0
        for classes in _oracle_orders(m):
            _check_order(classes, m)
            n_orders += 1
        assert n_orders == sum(1 for _ in iter_orders(m))
    rng = random.Random(6)
    for _ in range(100):
        levels = [rng.randrange(6) for _ in range(6)]
        used = sorted(set(levels))
        _check_order([[x for x in range(6) if levels[x] == lv] for lv in used], 6)


# ---------------------------------------------------------------- 3. regularity criteria


@criterion(3, "regularity scan agrees with the gcd criteria for all V x W x {id or Omega}")
@pytest.mark.parametrize("h, n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_regularity_criteria(h, n):
    disagreements = []
    for V in oracles.all_subgroups(h):
        for W in oracles.all_subgroups(n):
            for omega in (False, True):
                direct = oracles.regular(oracles.product_group(V, W, omega, h, n), h, n)
                bound = math.lcm(len(W), 2) if omega else len(W)
                if direct != (math.gcd(oracles.gamma(V), bound) == 1):
                    disagreements.append((sorted(V), sorted(W), omega))
                U = SymmetryGroup.product(generate(h, map(Perm, V)), generate(n, map(Perm, W)), omega)
                rep = is_regular(U)
                assert rep.verdict == direct and rep.criterion == direct
    assert disagreements == []


# ---------------------------------------------------------------- 4. |S(p)|


def _s_size(stab_elems, n):
    r0 = oracles.rev(n)
    return sum(1 for q in oracles.perms(n)
               if all(oracles.mul(oracles.mul(g[1], q), r0 if g[2] else oracles.ident(n)) == q
                      for g in stab_elems))


@criterion(4, "|S(p)| takes the two admissible values, the smaller exactly on P2 profiles")
def test_s_sizes():
    for name, U in regular_catalog():
        h, n = U.h, U.n
        space = ProfileSpace.get(h, n)
        idx = np.arange(space.size)
        G = _ogroup(U)
        # fixed[e, i]: element e stabilizes profile i, computed by the index action
        fixed = np.stack([space.act_indices(idx, g) == idx for g in U.elements])
        sigs, inverse = np.unique(fixed.T, axis=0, return_inverse=True)
        sizes = {}
        for s, sig in enumerate(sigs):
            st = [G[e] for e in np.nonzero(sig)[0]]
            p2 = any(g[2] for g in st)
            sizes[s] = (_s_size(st, n), p2)
        big, small = math.factorial(n), 2 ** (n // 2) * math.factorial(n // 2)
        table = orbit_decomposition(U)
        p2_orbits = set(table.p2)
        for i in range(space.size):
            size, p2 = sizes[int(inverse.reshape(-1)[i])]
            assert size == (small if p2 else big), (name, i)
            assert p2 == (int(table.orbit_of[i]) in p2_orbits)
        for j in range(table.num_orbits):
            rep = table.rep(j)
            assert len(s_correspondence(U, rep)) == (small if j in p2_orbits else big)
        if n <= 3 and h <= 2:
            for i, op in enumerate(oracles.profiles(h, n)):
                got = {q.images for q in s_correspondence(U, Profile.from_index(i, h, n))}
                assert got == oracles.s_set(G, op, n)


# ---------------------------------------------------------------- 5. counting oracle


@criterion(5, "refinement counts agree with brute-force enumeration at h=2, n=2")
def test_counting_oracle():
    U = SymmetryGroup.product(symmetric_group(2), generate(2, []), False)
    C = spc_table("borda", 2, 2)
    OC = {p: oracles.borda(p) for p in oracles.profiles(2, 2)}
    G = _ogroup(U)
    sym = count_symmetric_refinements(U, C)
    con = count_consistent_refinements(U, C)
    assert sym.count == math.prod(sym.factors) == oracles.count_refinements(OC, G, 2, 2, oracles.is_symmetric)
    assert con.count == math.prod(con.factors) == oracles.count_refinements(OC, G, 2, 2, oracles.is_consistent)


# ---------------------------------------------------------------- 6. constructive existence


def _builder_cases():
    for name, U in regular_catalog(max_n=4, with_34=False):
        for rule in ("borda", "copeland", "kemeny"):
            yield name, U, rule


@criterion(6, "consistent refinement builder succeeds on every consistent catalog case")
def test_consistent_builder():
    built = 0
    for name, U, rule in _builder_cases():
        C = spc_table(rule, U.h, U.n)
        if not check_consistent(C, U).ok:
            continue
        f, _ = build_consistent_refinement(U, C)
        F = f.as_correspondence()
        assert F.is_resolute() and refines(F, C), (name, rule)
        assert check_consistent(F, U).ok, (name, rule)
        if U.h == 2 and U.n <= 3:
            fd = {op: next(iter(F.values[i])).images for i, op in enumerate(oracles.profiles(2, U.n))}
            assert oracles.is_consistent(fd, _ogroup(U), U.n)
        built += 1
    assert built > 400


# ---------------------------------------------------------------- 7. the k-SCC dichotomy


@criterion(7, "U_2 at (2,4) blocks consistent refinements while k in {1, 3} admit them")
def test_kscc_dichotomy():
    U = involution_group()
    assert not t_set_contains(4, 2) and t_set_contains(4, 1) and t_set_contains(4, 3)
    C = uk_correspondence(U, 2)
    assert C.is_decisive() and check_consistent(C, U).ok
    with pytest.raises(NoRefinement) as info:
        build_consistent_refinement(U, C)
    assert info.value.reason == "A2Empty"
    # independent confirmation: every value at the blocking profile is psi-invariant
    op = tuple(b.images for b in Profile.from_index(info.value.rep_index, 2, 4).ballots)
    rev_stab = [g for g in oracles.stab(_ogroup(U), op) if g[2]]
    assert rev_stab and all(oracles.left(g[1], w) == w for g in rev_stab for w in C[info.value.rep_index])

    for k in (1, 3):
        cands = [uk_correspondence(U, k)]
        cands += [induce_kscc(spc_table(r, 2, 4), k) for r in ("borda", "copeland", "kemeny", "minimax")]
        admitted = 0
        for K in cands:
            if not (K.is_decisive() and check_consistent(K, U).ok):
                continue
            F = build_consistent_refinement(U, K)[0].as_correspondence()
            assert refines(F, K) and check_consistent(F, U).ok
            admitted += 1
        assert admitted >= 1


@criterion(7, "U_2 at (2,4) blocks consistent refinements while k in {1, 3} admit them")
def test_kscc_dichotomy_cli_exit_code(tmp_path):
    grp = tmp_path / "involution_omega.grp"
    grp.write_text("phi:id psi:(1 4)(2 3) rho:rho0\n")
    code, rep = run(["build", "--h", "2", "--n", "4", "--k", "2", "--U", f"file:{grp}", "--rule", "uk",
                     "--format", "json"], io.StringIO())
    assert code == 2 and rep["no_refinement"]["reason"] == "A2Empty"


# ---------------------------------------------------------------- 8. the qc4 construction


def _random_instance(rng, n):
    """``(p, psi, Rp)``: a profile fixed by some ``(phi, psi, rho0)`` and its unanimity relation."""
    sigma = rng.sample(range(n), n)
    psi = oracles.mul(oracles.mul(tuple(sigma), oracles.rev(n)), oracles.inv(tuple(sigma)))
    r0 = oracles.rev(n)
    fixed_ballots = [q for q in oracles.perms(n) if oracles.mul(oracles.mul(psi, q), r0) == q]
    h = rng.randint(1, 4)
    voters = list(range(h))
    rng.shuffle(voters)
    ballots = [None] * h
    while voters:
        i = voters.pop()
        if voters and rng.random() < 0.7:
            j = voters.pop()
            q = tuple(rng.sample(range(n), n))
            ballots[i], ballots[j] = q, oracles.mul(oracles.mul(psi, q), r0)
        else:
            ballots[i] = rng.choice(fixed_ballots)
    p = tuple(ballots)
    pos = [oracles.inv(q) for q in p]
    pairs = {(x + 1, y + 1) for x in range(n) for y in range(n)
             if x != y and all(ps[x] < ps[y] for ps in pos)}
    return p, psi, pairs


@criterion(8, "qc4 construction over 200 random instances and its rejections")
def test_qc4_random_instances():
    rng = random.Random(404)
    ok = rejected = 0
    for t in range(200):
        n = (4, 5, 6)[t % 3]
        p, psi, pairs = _random_instance(rng, n)
        assert all((psi[y - 1] + 1, psi[x - 1] + 1) in pairs for x, y in pairs)
        q = qc4_construct(Perm(psi), Relation(n, frozenset(pairs))).images
        assert oracles.mul(oracles.mul(psi, q), oracles.rev(n)) == q
        pos = oracles.inv(q)
        assert all(pos[x - 1] < pos[y - 1] for x, y in pairs)
        ok += 1

        rp = Relation(n, frozenset(pairs))
        with pytest.raises(HypothesisViolated) as info:
            qc4_construct(Perm.from_cycles("(1 2 3)", n), rp)
        assert info.value.which == "not-involution"
        if pairs:
            x, y = min(pairs)
            with pytest.raises(HypothesisViolated) as info:
                qc4_construct(Perm(psi), Relation(n, frozenset(pairs | {(y, x)})))
            assert info.value.which == "not-acyclic"
            mirror = (psi[y - 1] + 1, psi[x - 1] + 1)
            if mirror != (x, y):
                with pytest.raises(HypothesisViolated) as info:
                    qc4_construct(Perm(psi), Relation(n, frozenset(pairs - {mirror})))
                assert info.value.which == "condition-a"
                rejected += 1
    assert ok == 200 and rejected > 50


# ---------------------------------------------------------------- 9. worked examples


@criterion(9, "president preset, full-symmetry gate and split committees")
def test_president_gates():
    for h in range(2, 8):
        R, _ = preset_president(h, 2)
        assert oracles.gamma(oracles.aut({(x - 1, y - 1) for x, y in R.pairs}, h)) == 1
        for n in range(2, 5):
            for Q in iter_orders(n):
                assert existence_gate(R, Q, "sym_id").exists is True
                for k in range(1, n):
                    assert existence_gate(R, Q, "cons_kscc_id", k).exists is True


@criterion(9, "president preset, full-symmetry gate and split committees")
def test_full_symmetry_gate_follows_gcd_rule():
    for h, n in [(7, 4), (2, 2), (6, 3), (5, 4), (7, 5)]:
        assert full_symmetry_gate(h, n).exists is (math.gcd(h, math.factorial(n)) == 1)
    assert full_symmetry_gate(7, 4).exists is True
    assert full_symmetry_gate(2, 2).exists is False and full_symmetry_gate(6, 3).exists is False
    assert split_committee_options(7) == [(1, 6), (2, 5), (3, 4)]


@criterion(9, "president preset, full-symmetry gate and split committees",
           note="expected labels 'not' for (5,4) and (7,5) contradict gcd(h, n!) = 1; see decisions ledger")
@pytest.mark.xfail(strict=True, reason="listed labels for (5,4) and (7,5) contradict gcd(h, n!) = 1")
def test_full_symmetry_gate_listed_labels():
    listed = {(7, 4): True, (2, 2): False, (6, 3): False, (5, 4): False, (7, 5): False}
    assert {hn: full_symmetry_gate(*hn).exists for hn in listed} == listed


# ---------------------------------------------------------------- 10. classical rules


@criterion(10, "Borda and Copeland are G-symmetric, Minimax is S_h x S_n x {id}-symmetric")
@pytest.mark.parametrize("h, n", [(2, 3), (3, 3), (2, 4)])
def test_classical_rule_symmetry(h, n):
    G = named_group(h, n, "full")
    assert G.order == math.factorial(h) * math.factorial(n) * 2
    plain = SymmetryGroup.product(symmetric_group(h), symmetric_group(n), False)
    assert check_symmetric(spc_table("borda", h, n), G).ok
    assert check_symmetric(spc_table("copeland", h, n), G).ok
    assert check_symmetric(spc_table("minimax", h, n), plain).ok
    if (h, n) == (2, 3):
        OG = _ogroup(G)
        plist = oracles.profiles(h, n)
        B = {p: oracles.borda(p) for p in plist}
        assert all(B[oracles.act(p, g)] == {oracles._apply_item(g, q, n) for q in B[p]}
                   for p in plist for g in OG)


# ---------------------------------------------------------------- 11. performance


@criterion(11, "orbit decomposition of the 13824-profile space under G in < 5 s, thread independent")
def test_orbit_performance():
    t0 = time.perf_counter()
    G = named_group(3, 4, "full")
    a = orbit_decomposition(G, threads=1)
    elapsed = time.perf_counter() - t0
    assert G.order == 288 and a.space.size == 13824
    assert elapsed < 5.0, elapsed
    b = orbit_decomposition(G, threads=8)
    for field in ("rep_index", "orbit_of", "sizes", "transporter"):
        assert getattr(a, field).tobytes() == getattr(b, field).tobytes()
    assert a.stab_of_rep == b.stab_of_rep
    outs = set()
    for t in ("1", "8"):
        buf = io.StringIO()
        run(["orbits", "--h", "3", "--n", "4", "--U", "full", "--threads", t, "--no-timings",
             "--format", "json"], buf)
        outs.add(buf.getvalue())
    assert len(outs) == 1
