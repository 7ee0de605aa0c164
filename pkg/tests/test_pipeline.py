from fractions import Fraction

import pytest

from kovacic_aim.errors import ConcreteModeRequired
from kovacic_aim.kovacic import Classification, Cover, Direct, Signs
from kovacic_aim.params import ParamSpace
from kovacic_aim.parser import parse
from kovacic_aim.pipeline import (
    LiouvillianSolution,
    Route,
    VerdictStatus,
    list_candidates,
    solve,
    stratum_membership,
    verify_pullback,
    verify_solution,
)


def L(text, params=None):
    return parse(text, ParamSpace.parse_declaration(params))


def only_solution(verdict):
    assert verdict.status is VerdictStatus.INTEGRABLE
    assert len(verdict.solutions) == 1
    return verdict.solutions[0]


def test_case1_solution():
    verdict = solve(Direct(L("x^2 + 2*x + 4 + 2/x")))
    assert verdict.classification is Classification.C1
    sol = only_solution(verdict)
    assert (sol.variable, sol.lam, sol.P, sol.omega) == ("x", 1, L("1"), L("x + 1"))
    assert sol.antiderivative == L("1/2*x^2 + x")
    assert sol.describe() == "y(x) = x^(1) * exp(1/2*x^2 + x)"


def test_case2_solution_is_deduplicated():
    verdict = solve(Direct(L("x^2 + 5 + 2*x^-2")))
    assert verdict.classification is Classification.C3
    sol = only_solution(verdict)
    assert (sol.lam, sol.P, sol.omega, sol.d) == (2, L("1"), L("x"), 0)
    outcomes = {(c.route, str(c.report.signs)): c for c in verdict.candidates_examined}
    assert outcomes[(Route.DIRECT, "+-")].P == L("x^3")
    assert outcomes[(Route.DIRECT, "+-")].outcome == "solution"
    assert outcomes[(Route.DIRECT, "-+")].outcome.startswith("inadmissible")


def test_case3_solution():
    sol = only_solution(solve(Direct(L("x^2 + 3 + 2/x + x^-4"))))
    assert (sol.lam, sol.P, sol.omega) == (1, L("1"), L("x + x^-2"))
    assert sol.signs == Signs(1, 1)


def test_cover_solution_matches_direct():
    cover = Cover(R=L("x^-2"), B=L("3 + 2/x"), A=L("x"))
    verdict = solve(cover)
    assert verdict.classification is None
    sol = only_solution(verdict)
    assert sol.omega == L("x + x^-2")
    assert verify_solution(cover, sol)


def test_not_integrable():
    verdict = solve(Direct(L("x^2 + 1/x")))
    assert verdict.status is VerdictStatus.NOT_INTEGRABLE_UP_TO
    assert not verdict.integrable
    assert verdict.d_max == 25
    assert all("not an integer" in c.outcome for c in verdict.candidates_examined)


def test_empty_class():
    verdict = solve(Direct(L("x^2 + x^-3")))
    assert verdict.status is VerdictStatus.EMPTY_CLASS
    assert verdict.classification is Classification.C4


@pytest.mark.parametrize("text", ["x^2 + 2 + 3*x^-4", "2*x^2 + 1/x"])
def test_needs_extension(text):
    verdict = solve(Direct(L(text)))
    assert verdict.status is VerdictStatus.NEEDS_EXTENSION
    assert verdict.reason


def test_dalembert_solutions():
    verdict = solve(Direct(L("x + 5/(16*x^2)")))
    assert verdict.classification is Classification.C2
    assert verdict.status is VerdictStatus.INTEGRABLE
    assert len(verdict.solutions) == 2
    for sol in verdict.solutions:
        assert sol.variable == "w"
        assert sol.route is Route.DALEMBERT
        assert sol.lam == -1 and sol.P == 1
        assert sol.x_exponent == Fraction(-1, 4)
        assert sol.pullback_note
        assert verify_pullback(L("x + 5/(16*x^2)"), sol)
    assert {str(sol.omega) for sol in verdict.solutions} == {"2*x^2", "-2*x^2"}
    assert "ytilde(w)" in verdict.solutions[0].describe()


def test_d_max_truncates():
    eq = Direct(L("x^2 + 9 + 2*x^-2"))
    assert solve(eq, d_max=1).status is VerdictStatus.NOT_INTEGRABLE_UP_TO
    sol = only_solution(solve(eq, d_max=2))
    assert (sol.lam, sol.P, sol.d) == (2, L("x^2 + 5/2"), 2)
    # the (+-) candidate of degree 5 gives the same solution
    assert only_solution(solve(eq)) == sol


def test_solve_with_workers_matches_sequential():
    eq = Direct(L("x^2 + 5 + 2*x^-2"))
    assert solve(eq, workers=2) == solve(eq, workers=1)


def test_solve_requires_concrete():
    with pytest.raises(ConcreteModeRequired):
        solve(Direct(L("x^2 + a/x", "a")))


def test_verify_rejects_wrong_solution():
    eq = Direct(L("x^2 + 2*x + 4 + 2/x"))
    sol = only_solution(solve(eq))
    wrong = LiouvillianSolution(variable="x", lam=sol.lam, P=L("x"), omega=sol.omega,
                                antiderivative=sol.antiderivative, signs=sol.signs, d=1, route=Route.DIRECT)
    assert verify_solution(eq, sol)
    assert not verify_solution(eq, wrong)


def test_normalized_moves_power_into_lambda():
    sol = LiouvillianSolution(variable="x", lam=Fraction(-1), P=L("x^3 + x^2"), omega=L("x"),
                              antiderivative=L("1/2*x^2"), signs=Signs(1, -1), d=3, route=Route.DIRECT)
    norm = sol.normalized()
    assert (norm.lam, norm.P, norm.d) == (1, L("x + 1"), 1)


def test_list_candidates():
    cls, listed = list_candidates(Direct(L("x^2 + 5 + 2*x^-2")))
    assert cls is Classification.C3
    routes = [item.route for item in listed]
    assert routes == sorted(routes, key=lambda r: r.value)
    direct = [item for item in listed if item.route is Route.DIRECT]
    assert [str(item.report.signs) for item in direct] == ["++", "+-", "-+", "--"]
    assert [item.outcome for item in direct[:2]] == ["admissible", "admissible"]


def test_stratum_membership():
    eq = Direct(L("x^2 + 5 + 2*x^-2"))
    assert dict((str(s), b) for s, b in stratum_membership(eq, 0)) == {"++": True, "+-": False, "-+": False, "--": False}
    assert dict((str(s), b) for s, b in stratum_membership(eq, 3))["+-"]
    case1 = Direct(L("x^2 + 2*x + 4 + 2/x"))
    assert stratum_membership(case1, 0) == [(Signs(1), True), (Signs(-1), False)]
    assert all(not b for _, b in stratum_membership(Direct(L("x^2 + x^-3")), 1))
    members = dict((str(s), b) for s, b in stratum_membership(Direct(L("x + 5/(16*x^2)")), 0))
    assert members == {"++": False, "+-": True, "-+": False, "--": True}
