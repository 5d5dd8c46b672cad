# %% [markdown]
# # Breaking Borda ties symmetrically
#
# Borda often returns several tied rankings. Here we count and build
# deterministic refinements that keep the rule's symmetries.

# %%
from tiebreak import (
    build_consistent_refinement,
    build_symmetric_refinement,
    check_consistent,
    check_symmetric,
    count_consistent_refinements,
    count_symmetric_refinements,
    named_group,
    spc_table,
)
from tiebreak.refine import ChoicePolicy
from tiebreak.rules import refines


def word(q):
    return "".join(map(str, q.one_line()))

# %% [markdown]
# ## The correspondence
#
# Three voters and three alternatives give 216 profiles. Borda commutes with
# voter relabelling and with reversing all ballots.

# %%
h, n = 3, 3
C = spc_table("borda", h, n)
U = named_group(h, n, "anonymity").join(named_group(h, n, "reversal"))
print("resolute already?", C.is_resolute())
print("ties at", sum(len(v) > 1 for v in C.values), "of", len(C), "profiles")
print("symmetric under U:", check_symmetric(C, U).ok, " consistent:", check_consistent(C, U).ok)

# %% [markdown]
# ## How many tie-breakers are there?
#
# Counts are exact products over orbits, one factor per orbit.

# %%
sym = count_symmetric_refinements(U, C)
con = count_consistent_refinements(U, C)
print("symmetric refinements: ", sym.count, "over", len(sym.factors), "orbits")
print("consistent refinements:", con.count)

# %% [markdown]
# ## Building one
#
# The builder picks a value on each orbit representative and transports it
# along the orbit. The policy only changes which representative value is
# picked.

# %%
for policy in (ChoicePolicy("min"), ChoicePolicy("max"), ChoicePolicy("random", seed=3)):
    f, _ = build_consistent_refinement(U, C, policy)
    F = f.as_correspondence()
    print(f"{policy.describe():16s} refines C: {refines(F, C)}  consistent: {check_consistent(F, U).ok}"
          f"  f(0..5) = {[word(x) for x in f.entries[:6]]}")

# %% [markdown]
# ## When symmetry is too much
#
# Adding alternative relabelling makes the group irregular at this size,
# since gcd(3, lcm(3!, 2)) = 3.
# The builder refuses, because no symmetric tie-breaker can exist.

# %%
full = named_group(h, n, "full")
try:
    build_symmetric_refinement(full, C)
except Exception as exc:                       # NotRegular
    print(type(exc).__name__, "-", exc)
