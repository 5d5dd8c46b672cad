"""Findings about rule conventions that are recorded but not gated on."""

import pytest

from tiebreak.perms import Perm
from tiebreak.profiles import Profile
from tiebreak.rules import check_symmetric, evaluate_spc, named_group, spc_table


def _orders(*words):
    return {Perm.from_one_line([int(c) for c in w]) for w in words}


def test_minimax_single_ballot_by_hand():
    # ballot 123: the worst defeats are 1 -> 0, 2 -> 1, 3 -> 1, so 1 leads and 2, 3 tie
    assert evaluate_spc("minimax", Profile.from_lists([[1, 2, 3]])) == _orders("123", "132")
    assert evaluate_spc("minimax", Profile.from_lists([[3, 2, 1]])) == _orders("321", "312")


@pytest.mark.parametrize("h", [1, 2, 3])
def test_minimax_is_not_reversal_symmetric_at_three_alternatives(h):
    res = check_symmetric(spc_table("minimax", h, 3), named_group(h, 3, "reversal"))
    assert not res.ok
    p, g = res.counterexample
    assert g.rho and g.psi.is_identity()
    assert p == Profile.from_lists([[1, 2, 3]] * h)


@pytest.mark.parametrize("h", [1, 2, 3])
def test_minimax_is_reversal_symmetric_at_two_alternatives(h):
    assert check_symmetric(spc_table("minimax", h, 2), named_group(h, 2, "full")).ok
