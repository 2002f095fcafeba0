"""The forcing relation: two routes, mixing, and witness machinery."""

import pytest

from forcelab import (
    And, Cname, EMPTY_NAME, Eq, Exists, ExplicitPoset, Family, FlatPoset,
    Forall, Implies, InName, InvalidInput, Member, NameSpace, Not,
    NotMaximalBelow, ONE, Or, OrdLT, PreconditionViolated, RankLE, Var,
    check_name, clear_forcing_caches, eval_name, forces_semantic,
    forces_syntactic, gamma_name, generic_filter, holds_along,
    indexed_witness_name, least_ordinal_name, mix, mp_witness_search, nat,
    subst,
)

FAM = Family([("a", [nat(0), nat(1)]), ("b", [nat(2)])])
FLAT = FlatPoset(FAM)
GAMMA = gamma_name(FLAT)
A_CHECK = Cname(check_name(FLAT.condition_hf("a")))
B_CHECK = Cname(check_name(FLAT.condition_hf("b")))


def vee():
    return ExplicitPoset(["a", "b", "1"], [("a", "1"), ("b", "1")], "1")


class TestForcesOracle:
    def test_condition_forces_own_membership(self):
        phi = Member(A_CHECK, Cname(GAMMA))
        assert forces_semantic(FLAT, "a", phi)
        assert forces_syntactic(FLAT, "a", phi)

    def test_top_does_not_decide(self):
        phi = Member(A_CHECK, Cname(GAMMA))
        assert not forces_semantic(FLAT, ONE, phi)
        assert not forces_semantic(FLAT, ONE, Not(phi))
        assert not forces_syntactic(FLAT, ONE, phi)
        assert not forces_syntactic(FLAT, ONE, Not(phi))

    def test_top_forces_disjunction_of_blocks(self):
        phi = Or(Member(A_CHECK, Cname(GAMMA)), Member(B_CHECK, Cname(GAMMA)))
        assert forces_semantic(FLAT, ONE, phi)
        assert forces_syntactic(FLAT, ONE, phi)

    def test_exists_with_rank_bound(self):
        space = NameSpace(FLAT, (GAMMA,), 1)
        phi = Exists("x", RankLE(1), Member(Var("x"), Cname(GAMMA)))
        assert forces_semantic(FLAT, ONE, phi, space)
        assert forces_syntactic(FLAT, ONE, phi, space)

    def test_forall_in_name(self):
        two = check_name(nat(2))
        phi = Forall("x", InName(two), Member(Var("x"), Cname(two)))
        assert forces_semantic(FLAT, ONE, phi)
        assert forces_syntactic(FLAT, ONE, phi)

    def test_ord_bound(self):
        phi = Exists("x", OrdLT(3), Eq(Var("x"), Cname(check_name(nat(2)))))
        assert forces_semantic(FLAT, ONE, phi)
        assert not forces_semantic(
            FLAT, ONE,
            Exists("x", OrdLT(2), Eq(Var("x"), Cname(check_name(nat(2))))))

    def test_open_formula_rejected(self):
        with pytest.raises(InvalidInput):
            forces_semantic(FLAT, ONE, Member(Var("x"), Cname(GAMMA)))

    def test_holds_along(self):
        phi = Member(A_CHECK, Cname(GAMMA))
        assert holds_along(FLAT, generic_filter(FLAT, "a"), phi)
        assert not holds_along(FLAT, generic_filter(FLAT, "b"), phi)


class TestRouteAgreement:
    """A compact version of the full agreement sweep in the acceptance
    suite: every formula from a small systematic family, every condition,
    both routes."""

    def formulas(self, poset, space):
        gamma = gamma_name(poset)
        checks = [Cname(check_name(nat(k))) for k in range(3)]
        atoms = [Member(c, Cname(gamma)) for c in checks]
        atoms += [Eq(checks[0], checks[1]), Eq(checks[1], checks[1]),
                  Member(checks[0], checks[2])]
        out = list(atoms)
        out += [Not(a) for a in atoms[:4]]
        out += [And(atoms[0], atoms[1]), Or(atoms[0], atoms[1]),
                Implies(atoms[0], atoms[1]), Implies(atoms[1], atoms[0])]
        body = Member(Var("x"), Cname(gamma))
        for bound in (InName(gamma), RankLE(1), OrdLT(2)):
            out.append(Exists("x", bound, body))
            out.append(Forall("x", bound, body))
        return out

    @pytest.mark.parametrize("make", [
        lambda: FlatPoset(FAM),
        vee,
        lambda: ExplicitPoset(
            ["p", "q", "r", "1"],
            [("p", "q"), ("q", "1"), ("r", "1")], "1"),
    ])
    def test_agreement(self, make):
        poset = make()
        space = NameSpace(poset, (gamma_name(poset),), 1)
        for phi in self.formulas(poset, space):
            for p in poset.conditions():
                assert forces_semantic(poset, p, phi, space) == \
                    forces_syntactic(poset, p, phi, space), (phi, p)


class TestMix:
    def test_mix_oracle(self):
        mixed = mix(FLAT, ONE, ["a", "b"],
                    {"a": check_name(nat(0)), "b": check_name(nat(1))})
        assert eval_name(mixed, generic_filter(FLAT, "a")) == nat(0)
        assert eval_name(mixed, generic_filter(FLAT, "b")) == nat(1)

    def test_mix_below_a_condition(self):
        poset = ExplicitPoset(
            ["x", "y", "p", "1"], [("x", "p"), ("y", "p"), ("p", "1")], "1")
        mixed = mix(poset, "p", ["x", "y"],
                    {"x": check_name(nat(2)), "y": EMPTY_NAME})
        assert eval_name(mixed, generic_filter(poset, "x")) == nat(2)
        assert eval_name(mixed, generic_filter(poset, "y")) == nat(0)

    def test_mix_forces_equality_on_each_piece(self):
        mixed = mix(FLAT, ONE, ["a", "b"],
                    {"a": check_name(nat(0)), "b": check_name(nat(1))})
        assert forces_semantic(
            FLAT, "a", Eq(Cname(mixed), Cname(check_name(nat(0)))))
        assert forces_semantic(
            FLAT, "b", Eq(Cname(mixed), Cname(check_name(nat(1)))))

    def test_rejects_non_antichain(self):
        with pytest.raises(NotMaximalBelow):
            mix(FLAT, ONE, ["a", ONE], {"a": EMPTY_NAME, ONE: EMPTY_NAME})

    def test_rejects_non_maximal(self):
        with pytest.raises(NotMaximalBelow):
            mix(FLAT, ONE, ["a"], {"a": EMPTY_NAME})

    def test_rejects_members_not_below_p(self):
        poset = vee()
        with pytest.raises(NotMaximalBelow):
            mix(poset, "a", ["b"], {"b": EMPTY_NAME})

    def test_rejects_missing_assignment(self):
        with pytest.raises(InvalidInput):
            mix(FLAT, ONE, ["a", "b"], {"a": EMPTY_NAME})


class TestLeastOrdinal:
    def theta(self):
        return Or(
            And(Eq(Var("al"), Cname(check_name(nat(1)))),
                Member(A_CHECK, Cname(GAMMA))),
            And(Eq(Var("al"), Cname(check_name(nat(2)))),
                Member(B_CHECK, Cname(GAMMA))))

    def test_oracle_values(self):
        tau = least_ordinal_name(FLAT, ONE, 3, self.theta())
        assert eval_name(tau, generic_filter(FLAT, "a")) == nat(1)
        assert eval_name(tau, generic_filter(FLAT, "b")) == nat(2)

    def test_name_forces_theta(self):
        theta = self.theta()
        tau = least_ordinal_name(FLAT, ONE, 3, theta)
        assert forces_semantic(FLAT, ONE, subst(theta, "al", tau))
        assert forces_syntactic(FLAT, ONE, subst(theta, "al", tau))

    def test_precondition_checked(self):
        theta = And(Eq(Var("al"), Cname(check_name(nat(1)))),
                    Member(A_CHECK, Cname(GAMMA)))
        with pytest.raises(PreconditionViolated):
            least_ordinal_name(FLAT, ONE, 3, theta)

    def test_kappa_validation(self):
        with pytest.raises(InvalidInput):
            least_ordinal_name(FLAT, ONE, 0, self.theta())


class TestWitnessSearch:
    def test_finds_first_forced_witness(self):
        space = NameSpace(FLAT, (GAMMA,), 1)
        theta = Member(Var("x"), Cname(GAMMA))
        tau = mp_witness_search(FLAT, ONE, theta, space)
        assert tau is not None
        assert forces_semantic(FLAT, ONE, subst(theta, "x", tau), space)

    def test_none_when_nothing_is_forced(self):
        space = NameSpace(FLAT, (GAMMA,), 1)
        theta = And(Member(Var("x"), Cname(GAMMA)),
                    Not(Eq(Var("x"), Var("x"))))
        assert mp_witness_search(FLAT, ONE, theta, space) is None


class TestIndexedWitness:
    def test_collapse_picks_first_accepted(self):
        theta = Member(Var("x"), Cname(GAMMA))
        candidates = [check_name(FLAT.condition_hf("a")),
                      check_name(FLAT.condition_hf("b"))]
        rho, tau = indexed_witness_name(FLAT, ONE, candidates, theta)
        assert forces_semantic(FLAT, ONE, subst(theta, "x", tau))
        assert eval_name(tau, generic_filter(FLAT, "a")) == \
            FLAT.condition_hf("a")
        assert eval_name(tau, generic_filter(FLAT, "b")) == \
            FLAT.condition_hf("b")

    def test_rho_entries_require_forced_rejection_of_earlier(self):
        # below "a" the first candidate is accepted, so rho never pairs "a"
        # with the second candidate
        theta = Member(Var("x"), Cname(GAMMA))
        candidates = [check_name(FLAT.condition_hf("a")),
                      check_name(FLAT.condition_hf(FLAT.top))]
        rho, tau = indexed_witness_name(FLAT, ONE, candidates, theta)
        assert ("a", candidates[1]) not in rho.sorted_entries()
        assert forces_semantic(FLAT, ONE, subst(theta, "x", tau))

    def test_precondition(self):
        theta = And(Member(Var("x"), Cname(GAMMA)),
                    Not(Eq(Var("x"), Var("x"))))
        with pytest.raises(PreconditionViolated):
            indexed_witness_name(FLAT, ONE, [EMPTY_NAME], theta)


class TestNameSpace:
    def test_universe_is_child_closed(self):
        space = NameSpace(FLAT, (GAMMA,), 1)
        for tau in space.universe:
            for _, child in tau.sorted_entries():
                assert child in space

    def test_rank_filtering(self):
        space = NameSpace(FLAT, (GAMMA,), 1)
        assert all(n.rank <= 1 or n in (GAMMA,) or n.rank <= GAMMA.rank
                   for n in space.universe)
        assert EMPTY_NAME in space

    def test_size_guard(self):
        big = Family([(lab, [nat(3 * i + k) for k in range(3)])
                      for i, lab in enumerate(("a", "b", "c", "d", "e", "f"))])
        with pytest.raises(InvalidInput):
            NameSpace(FlatPoset(big), (check_name(nat(2)),), 5)

    def test_negative_rank_rejected(self):
        with pytest.raises(InvalidInput):
            NameSpace(FLAT, (), -1)


class TestCacheHygiene:
    def test_clear_forcing_caches(self):
        phi = Member(A_CHECK, Cname(GAMMA))
        assert forces_semantic(FLAT, "a", phi)
        clear_forcing_caches()
        assert forces_semantic(FLAT, "a", phi)
