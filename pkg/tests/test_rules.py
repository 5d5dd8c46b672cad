import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from tiebreak.errors import InvalidK, ParseError
from tiebreak.perms import Perm
from tiebreak.profiles import Profile, ProfileSpace, SymmetryGroup, parse_group_element
from tiebreak.relations import Relation
from tiebreak.rules import (
    Correspondence,
    check_consistent,
    check_symmetric,
    evaluate_spc,
    format_custom_table,
    induce_kscc,
    kendall_tau,
    named_group,
    parse_custom_table,
    refines,
    spc_table,
    table_from_function,
)

SIZES = [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)]


# ---------------------------------------------------------------- independent rule oracles


def _majority(p):
    n = len(p[0])
    N = [[0] * n for _ in range(n)]
    for q in p:
        for a, b in itertools.combinations(q, 2):
            N[a][b] += 1
    return N


def _sorted_by(score, n, lower_better=False):
    sign = -1 if lower_better else 1
    return {q for q in oracles.perms(n) if all(sign * score[q[i]] >= sign * score[q[i + 1]] for i in range(n - 1))}


def copeland_oracle(p):
    n, N = len(p[0]), _majority(p)
    score = [sum((N[x][y] > N[y][x]) - (N[y][x] > N[x][y]) for y in range(n)) for x in range(n)]
    return _sorted_by(score, n)


def minimax_oracle(p):
    n, N = len(p[0]), _majority(p)
    score = [max(N[y][x] for y in range(n) if y != x) for x in range(n)]
    return _sorted_by(score, n, lower_better=True)


def kemeny_oracle(p):
    n = len(p[0])

    def dist(a, b):
        pa, pb = oracles.inv(a), oracles.inv(b)
        return sum((pa[x] < pa[y]) != (pb[x] < pb[y]) for x, y in itertools.combinations(range(n), 2))

    costs = {q: sum(dist(q, b) for b in p) for q in oracles.perms(n)}
    best = min(costs.values())
    return {q for q, c in costs.items() if c == best}


ORACLES = {"borda": oracles.borda, "copeland": copeland_oracle, "minimax": minimax_oracle,
           "kemeny": kemeny_oracle}


@pytest.mark.parametrize("rule", sorted(ORACLES))
@pytest.mark.parametrize("h, n", SIZES)
def test_vectorized_table_matches_oracle_and_pure_route(rule, h, n):
    C = spc_table(rule, h, n)
    for i, op in enumerate(oracles.profiles(h, n)):
        want = ORACLES[rule](op)
        assert {q.images for q in C.values[i]} == want
        if i % 5 == 0:
            assert C.values[i] == evaluate_spc(rule, Profile.from_index(i, h, n))


def test_borda_worked_example():
    p = Profile.from_lists([[1, 2, 3], [2, 1, 3]])
    assert evaluate_spc("borda", p) == {Perm.from_one_line([1, 2, 3]), Perm.from_one_line([2, 1, 3])}


def test_unknown_rule():
    with pytest.raises(ValueError):
        spc_table("plurality", 2, 2)
    with pytest.raises(ValueError):
        evaluate_spc("plurality", Profile.from_lists([[1, 2]]))


@given(st.integers(2, 6), st.data())
def test_kendall_tau_is_a_metric(n, data):
    a, b, c = (Perm(data.draw(st.permutations(range(n)))) for _ in range(3))
    assert kendall_tau(a, a) == 0
    assert kendall_tau(a, b) == kendall_tau(b, a)
    assert kendall_tau(a, c) <= kendall_tau(a, b) + kendall_tau(b, c)


def test_induce_kscc():
    C = spc_table("borda", 2, 3)
    K = induce_kscc(C, 2)
    assert K.kind == "kscc" and K.k == 2
    for v, kv in zip(C.values, K.values):
        assert kv == {frozenset(q.one_line()[:2]) for q in v}
    with pytest.raises(InvalidK):
        induce_kscc(C, 3)


def test_correspondence_flags():
    C = spc_table("borda", 2, 2)
    assert C.is_decisive() and not C.is_resolute()
    f = Correspondence("spc", 2, 2, [frozenset([min(v, key=lambda q: q.images)]) for v in C.values])
    assert f.is_resolute() and refines(f, C) and not refines(C, f)
    with pytest.raises(InvalidK):
        Correspondence("kscc", 2, 3, [], k=None)


def test_custom_table_round_trip():
    C = spc_table("copeland", 2, 3)
    D = parse_custom_table(format_custom_table(C), 2, 3)
    assert D.values == C.values


@pytest.mark.parametrize("text, line", [
    ("0 : 1 2\n1 : 1 2\n2 : 2 1\n", 3),          # missing index 3 reported at the last line
    ("0 1 2\n", 1),
    ("x : 1 2\n", 1),
    ("9 : 1 2\n", 1),
    ("0 : 1 2\n0 : 2 1\n", 2),
    ("0 : 1 1\n", 1),
])
def test_custom_table_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_custom_table(text, 2, 2, "t.txt")
    assert info.value.line == line


# ---------------------------------------------------------------- checkers against brute force


def _oracle_group(U):
    return [(g.phi.images, g.psi.images, g.rho) for g in U.elements]


def _brute_first_violation(C, U, consistent):
    h, n = C.h, C.n
    plist = oracles.profiles(h, n)
    index = {p: i for i, p in enumerate(plist)}
    vals = [{q.images if isinstance(q, Perm) else q for q in v} for v in C.values]
    G = _oracle_group(U)
    for i, p in enumerate(plist):
        for gi, g in enumerate(G):
            img = vals[index[oracles.act(p, g)]]
            if consistent:
                if C.kind == "spc":
                    left = {oracles.mul(g[1], q) for q in vals[i]}
                else:
                    left = {frozenset(g[1][x - 1] + 1 for x in w) for w in vals[i]}
                bad = img != left if not g[2] else (len(vals[i]) == 1 and img == left)
            else:
                bad = img != {oracles._apply_item(g, q, n) for q in vals[i]}
            if bad:
                return i, gi
    return None


CHECK_CASES = [
    ("minimax", "full", 2, 3),
    ("minimax", "full", 3, 3),
    ("borda", "full", 2, 3),
    ("kemeny", "full", 3, 2),
    ("borda", "neutrality", 3, 3),
]


@pytest.mark.parametrize("rule, grp, h, n", CHECK_CASES)
def test_symmetry_checker_matches_brute_force(rule, grp, h, n):
    C, U = spc_table(rule, h, n), named_group(h, n, grp)
    res = check_symmetric(C, U)
    want = _brute_first_violation(C, U, consistent=False)
    assert res.ok == (want is None)
    if want is not None:
        p, g = res.counterexample
        assert p.index == want[0]


@pytest.mark.parametrize("rule, grp, h, n", CHECK_CASES)
@pytest.mark.parametrize("k", [None, 1])
def test_consistency_checker_matches_brute_force(rule, grp, h, n, k):
    C, U = spc_table(rule, h, n), named_group(h, n, grp)
    if k is not None:
        C = induce_kscc(C, k)
    res = check_consistent(C, U)
    want = _brute_first_violation(C, U, consistent=True)
    assert res.ok == (want is None)
    if want is not None:
        assert res.counterexample[0].index == want[0]


def test_consistency_catches_a_fixed_singleton():
    # a constant resolute SPC is id-equivariant only for trivial psi, and fails under rho0
    U = named_group(2, 2, "reversal")
    const = Correspondence("spc", 2, 2, [frozenset([Perm.identity(2)])] * 4)
    res = check_consistent(const, U)
    assert not res.ok and res.counterexample[1].rho


def test_named_groups():
    assert named_group(3, 3, "anonymity").order == 6
    assert named_group(3, 3, "neutrality").order == 6
    assert named_group(3, 3, "reversal").order == 2
    assert named_group(3, 3, "trivial").order == 1
    R = Relation.from_classes(3, [[1], [2, 3]])
    assert named_group(3, 3, "R_anon", R).order == 2
    assert named_group(3, 3, "Q_neut", R).order == 2
    with pytest.raises(ValueError):
        named_group(3, 3, "bogus")


def test_table_from_function():
    C = table_from_function(lambda p: {p.ballots[0]}, 2, 2, name="dictator")
    assert C.is_resolute()
    assert check_consistent(C, named_group(2, 2, "neutrality")).ok
    assert not check_symmetric(C, named_group(2, 2, "anonymity")).ok
    assert len(C) == ProfileSpace.get(2, 2).size


def test_checkers_on_non_product_group():
    U = SymmetryGroup.from_generators(2, 3, [parse_group_element("phi:(1 2) psi:(1 2)", 2, 3)])
    C = spc_table("borda", 2, 3)
    assert check_symmetric(C, U).ok and check_consistent(C, U).ok
