# %% [markdown]
# # Symmetry groups, orbits and regularity
#
# A profile lists one ranking per voter. A symmetry group element relabels
# voters, relabels alternatives, and may also reverse every ranking.
# Tie-breaking rules that respect a group can only exist when the group
# is *regular*. This script looks at a few groups and checks which ones are
# regular.

# %%
from tiebreak import Profile, act, is_regular, named_group, orbit_decomposition, s_correspondence
from tiebreak.perms import symmetric_group, type_number
from tiebreak.profiles import SymmetryGroup, parse_group_element

# %% [markdown]
# ## Acting on a profile
#
# `full` is every voter relabelling, every alternative relabelling and the
# reversal. Composition is a left action, so `p^(g1 g2) = (p^g2)^g1`.

# %%
G = named_group(2, 3, "full")
p = Profile.from_lists([[1, 2, 3], [2, 3, 1]])
g1, g2 = G.elements[5], G.elements[17]
print("p            ", p)
print("g1           ", g1)
print("g2           ", g2)
print("p^(g1 g2)    ", act(p, g1 * g2))
print("(p^g2)^g1    ", act(act(p, g2), g1))

# %% [markdown]
# ## Type numbers and the gcd test
#
# For a product group `V x W x {id}` regularity reduces to
# `gcd(gamma(V), |W|) = 1`, where `gamma` is the type number. Anonymity
# alone (`W` trivial) is always fine. Full symmetry at two voters and three
# alternatives is not, since `gamma(S_2) = 2` divides `3! = 6`.

# %%
for m in range(2, 6):
    print(f"gamma(S_{m}) = {type_number(symmetric_group(m))}")

for h, n, name in [(2, 3, "anonymity"), (2, 3, "full"), (5, 3, "full"), (3, 2, "full")]:
    rep = is_regular(named_group(h, n, name))
    witness = "" if rep.verdict else f"  first bad profile {rep.witness}"
    print(f"{name:10s} h={h} n={n}: regular={rep.verdict} gcd test={rep.criterion}{witness}")

# %% [markdown]
# ## Orbits and the feasible sets S(p)
#
# Under a regular group each orbit is either P1 (no reversal fixes its
# profiles) or P2 (some reversal does). On P2 orbits fewer rankings are
# available to a symmetric tie-breaker. Swapping alternatives 1 and 3
# while reversing fixes the ranking 213, for instance.

# %%
U = SymmetryGroup.from_generators(2, 3, [parse_group_element("psi:(1 3) rho:rho0", 2, 3),
                                         parse_group_element("phi:(1 2)", 2, 3)])
print("regular:", is_regular(U).verdict, " order:", U.order)
table = orbit_decomposition(U)
print(f"{table.num_orbits} orbits, {len(table.p1)} in P1, {len(table.p2)} in P2")
for j in table.p2:
    rep = table.rep(j)
    S = sorted("".join(map(str, q.one_line())) for q in s_correspondence(U, rep))
    print(f"  P2 orbit {j}: rep {rep}, size {int(table.sizes[j])}, S = {S}")
j = table.p1[0]
print(f"  P1 orbit {j}: |S| = {len(s_correspondence(U, table.rep(j)))}")
