# %% [markdown]
# # Committees, an obstruction and the existence gates
#
# With committees of size k the reversal part of a group can block every
# consistent tie-breaker even when the group is regular. Here we show one
# such case. We also show the gates that decide existence from voter and
# alternative priorities alone.

# %%
from tiebreak import (
    NoRefinement,
    Perm,
    Relation,
    build_consistent_refinement,
    check_consistent,
    induce_kscc,
    spc_table,
    existence_gate,
    qc4_construct,
    t_set_contains,
    uk_correspondence,
)
from tiebreak.profiles import SymmetryGroup, parse_group_element
from tiebreak.refine import preset_president, split_committee_options

# %% [markdown]
# ## The obstruction at n = 4, k = 2
#
# The group is generated by one element. It leaves voters alone, swaps
# alternatives 1<->4 and 2<->3, and reverses the ballots. `U_k` is the
# largest consistent committee correspondence for that group.

# %%
U = SymmetryGroup.from_generators(2, 4, [parse_group_element("psi:(1 4)(2 3) rho:rho0", 2, 4)])
for k in (1, 2, 3):
    Uk = uk_correspondence(U, k)
    print(f"k={k}: (4,{k}) in T: {t_set_contains(4, k)}, U_k decisive: {Uk.is_decisive()}, "
          f"consistent: {check_consistent(Uk, U).ok}")
    # U_k is empty on some profiles for odd k; fall back to Borda's top-k committees
    K = Uk if Uk.is_decisive() else induce_kscc(spc_table("borda", 2, 4), k)
    try:
        f, count = build_consistent_refinement(U, K)
        print(f"      {K.name}: built one of about 10^{len(str(count.count)) - 1} consistent refinements")
    except NoRefinement as exc:
        print(f"      {K.name}: none ({exc.reason} at orbit {exc.orbit})")

# %% [markdown]
# ## A ranking fixed by a reversal
#
# Given an involution `psi` conjugate to the reversal and a compatible
# acyclic relation, the construction returns a ranking `q` with
# `psi q rho0 = q` that contains the relation.

# %%
psi = Perm.from_cycles("(1 5)(2 4)", 5)
rp = Relation(5, frozenset({(2, 1), (5, 4), (3, 1), (5, 3)}))
q = qc4_construct(psi, rp)
print("q =", "".join(map(str, q.one_line())), " fixed:", psi * q * Perm.from_one_line([5, 4, 3, 2, 1]) == q)

# %% [markdown]
# ## Gates
#
# A president who outranks all other voters makes the voter type number 1,
# so the gate opens for every alternative order. With all voters and all
# alternatives interchangeable the answer is `gcd(h, n!) = 1`.

# %%
R, desc = preset_president(5, 4)
print(desc)
for Q in (Relation.total(4), Relation.from_classes(4, [[1, 2], [3, 4]])):
    print("  sym_id:", existence_gate(R, Q, "sym_id").verdict,
          " cons_kscc_id k=2:", existence_gate(R, Q, "cons_kscc_id", 2).verdict)
for h, n in [(7, 4), (2, 2), (6, 3), (5, 4)]:
    v = existence_gate(Relation.total(h), Relation.total(n), "sym_id")
    print(f"  everyone interchangeable h={h} n={n}: {v.verdict} (gcd {v.reason['gcd']})")
print("coprime splits of 7:", split_committee_options(7))
