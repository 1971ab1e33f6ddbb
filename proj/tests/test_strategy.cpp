#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "gamespecies/strategy.hpp"

using namespace gsp;
using namespace gsp::fixtures;

TEST_CASE("plus-covered configurations")
{
    // empty strategy
    Strategy empty = make_strategy(EventStructure(0, {}, {}),
                                   hom(game_empty(0, "I"), game_empty(0, "I")), {});
    CHECK(plus_covered(empty) == std::vector<Config>{{}});

    // both-answers strategy: one +-covered configuration per branch
    Strategy s = bool_both_tt();
    std::vector<Config> pc = plus_covered(s);
    CHECK(pc == std::vector<Config>{{}, {0, 1}, {0, 2}});
    CHECK(validate_strategy(s).ok);
}

TEST_CASE("copycat is a valid thin strategy and C+(cc) ~ C(A)")
{
    for (Game a : {game_bool(), game_u(), bang(game_o(), 2)}) {
        Strategy cc = copycat(a);
        CHECK(validate_strategy(cc).ok);
        auto pc = plus_covered(cc);
        auto confs = a.es().configurations();
        CHECK(pc.size() == confs.size());
        // displays are x |- x
        HomView h = HomView::of(cc.game);
        for (const Config& x : confs) {
            Config c = copycat_config(a, x);
            CHECK(is_plus_covered(cc, c));
            Config d = cc.display_config(c);
            CHECK(h.A_part(d) == x);
            CHECK(h.B_part(d) == x);
        }
    }
}

TEST_CASE("copycat on a negative board is visible and winning")
{
    for (Game a : {game_bool(), game_u(), lolli(game_o(), game_o())}) {
        Strategy cc = copycat(a);
        CHECK(validate_visible(cc).ok);
        CHECK(validate_winning(cc).ok);
    }
}

TEST_CASE("deadlock: the matched pair is matching but not secured")
{
    Strategy s = deadlock_sigma();
    Strategy t = deadlock_tau();
    CHECK(validate_strategy(s).ok);
    CHECK(validate_strategy(t).ok);
    CHECK_FALSE(secured(s, t, deadlock_pair()));

    // the empty pair is secured
    MatchedPair p0{{}, SymBij::identity({}), {}};
    CHECK(secured(s, t, p0));
}

TEST_CASE("deadlock: composite has no +-covered configuration at the point")
{
    Strategy s = deadlock_sigma();
    Strategy t = deadlock_tau();
    ComposeResult r = compose(s, t);
    CHECK(validate_strategy(r.strat, false).ok);
    CHECK(plus_covered(r.strat) == std::vector<Config>{{}});
}

TEST_CASE("composition with copycat is isomorphic to the strategy")
{
    for (Strategy s : {bool_answer(1), bool_answer(2), bool_both_tt()}) {
        Strategy cc = copycat(game_bool());
        ComposeResult r = compose(s, cc);
        CHECK(validate_strategy(r.strat, false).ok);
        auto iso = iso_check(r.strat, s);
        REQUIRE(iso.has_value());
        CHECK(r.plus_configs.size() == plus_covered(r.strat).size());
    }
}

TEST_CASE("composition counts causally compatible pairs exactly")
{
    Strategy s = bool_both_tt();
    Strategy cc = copycat(game_bool());
    ComposeResult r = compose(s, cc);
    int manual = 0;
    for (const Config& xs : plus_covered(s))
        for (const Config& xt : plus_covered(cc)) {
            HomView hs = HomView::of(s.game);
            HomView ht = HomView::of(cc.game);
            Config bs = hs.B_part(s.display_config(xs));
            Config bt = ht.A_part(cc.display_config(xt));
            if (bs != bt)
                continue;
            if (secured(s, cc, {xs, SymBij::identity(bs), xt}))
                ++manual;
        }
    CHECK(static_cast<size_t>(manual) == r.plus_configs.size());
}

TEST_CASE("associativity: both bracketings give isomorphic strategies")
{
    Strategy s = bool_both_tt();
    Strategy cc1 = copycat(game_bool());
    Strategy cc2 = copycat(game_bool());
    Strategy left = compose(compose(s, cc1).strat, cc2).strat;
    Strategy right = compose(s, compose(cc1, cc2).strat).strat;
    auto iso = iso_check(left, right);
    CHECK(iso.has_value());
}

TEST_CASE("tensor of copycats is copycat of tensor")
{
    Game a = game_o(), b = game_bool();
    Strategy t1 = tensor_strategies(copycat(a), copycat(b));
    Strategy t2 = copycat(tensor(a, b));
    CHECK(t1.es.size() == t2.es.size());
    CHECK(plus_covered(t1).size() == plus_covered(t2).size());
    CHECK(structural_equal(t1.game, t2.game));
    CHECK(iso_check(t1, t2).has_value());
}

TEST_CASE("lift_symmetry")
{
    Game a = bang(game_o(), 2);
    Strategy cc = copycat(a);
    Config x = copycat_config(a, {0});
    SymBij id = SymBij::identity(cc.display_config(x));
    Lifting l = lift_symmetry(cc, x, id);
    CHECK(l.phi.is_identity());
    CHECK(l.theta_plus.is_identity());

    // a negative reindexing on the opponent side relabels the strategy
    HomView h = HomView::of(cc.game);
    SymBij psi({{h.from_A(0), h.from_A(1)}, {h.from_B(0), h.from_B(1)}});
    Lifting l2 = lift_symmetry(cc, x, psi);
    CHECK(l2.phi.pairs().size() == 2);
    CHECK_FALSE(l2.phi.is_identity());
}

TEST_CASE("compose_up_to_sym renormalizes copy indices")
{
    Game a = bang(game_o(), 2);
    Strategy cc1 = copycat(a);
    Strategy cc2 = copycat(a);
    Config xs = copycat_config(a, {0});
    Config xt = copycat_config(a, {1});
    SymBij theta({{0, 1}});
    MatchedPair p{xs, theta, xt};
    CHECK(secured(cc1, cc2, p));
    SymComposite sc = compose_up_to_sym(cc1, cc2, p);
    HomView h1 = HomView::of(cc1.game);
    HomView h2 = HomView::of(cc2.game);
    CHECK(sym_in(a, h1.A_part(cc1.display_sym(sc.phi_sigma)), SymClass::Neg));
    CHECK(sym_in(a, h2.B_part(cc2.display_sym(sc.phi_tau)), SymClass::Pos));
    CHECK(p.theta_b.then(h2.A_part(cc2.display_sym(sc.phi_tau))) ==
          h1.B_part(cc1.display_sym(sc.phi_sigma)));
    // theta = id gives the plain composite
    MatchedPair pid_{xs, SymBij::identity({0}), xs};
    SymComposite sc2 = compose_up_to_sym(cc1, cc2, pid_);
    CHECK(sc2.phi_sigma.is_identity());
    CHECK(sc2.phi_tau.is_identity());
}

TEST_CASE("iso_check distinguishes strategies")
{
    Strategy tt = bool_answer(1);
    Strategy ff = bool_answer(2);
    CHECK(iso_check(tt, tt).has_value());
    CHECK_FALSE(iso_check(tt, ff).has_value());
}

TEST_CASE("dereliction and promotion (lunit)")
{
    Game a = game_o();
    Strategy der = dereliction(a, 2);
    CHECK(validate_strategy(der).ok);
    CHECK(validate_visible(der).ok);
    CHECK(validate_winning(der).ok);
    CHECK(plus_covered(der).size() == a.es().configurations().size());

    // promotion of dereliction is isomorphic to copycat on !a
    Strategy prom = promotion(der, 2);
    Strategy ccb = copycat(bang(a, 2));
    CHECK(structural_equal(prom.game, ccb.game));
    CHECK(iso_check(prom, ccb).has_value());
}

TEST_CASE("runit: der_B . sigma! is isomorphic to sigma")
{
    Game a = game_o(), b = game_o();
    Strategy sigma = dereliction(a, 2); // sigma : !a |- b with b = a
    Strategy prom = promotion(sigma, 2);
    Strategy der_b = dereliction(b, 2);
    ComposeResult r = compose(prom, der_b);
    CHECK(structural_equal(HomView::of(r.strat.game).B, b));
    // the composite lives on a left board twice as wide; compare +-covered
    // families through the copy-0 embedding
    CHECK(plus_covered(r.strat).size() == plus_covered(sigma).size());
    auto iso = iso_check(r.strat, sigma);
    CHECK(iso.has_value());
}

TEST_CASE("projections and pairing")
{
    Game a = game_o(), b = game_bool();
    Strategy p1 = projection(a, b, 0, 2);
    Strategy p2 = projection(a, b, 1, 2);
    CHECK(validate_strategy(p1).ok);
    CHECK(validate_strategy(p2).ok);
    CHECK(validate_winning(p1).ok);

    Strategy pr = pairing(p1, p2);
    CHECK(validate_strategy(pr, false).ok);
    CHECK(plus_covered(pr).size() ==
          plus_covered(p1).size() + plus_covered(p2).size() - 1);
}

TEST_CASE("beta-style composite has the expected size")
{
    // tau : !(Gamma & A) |- A is the second projection; ev . <curry(tau) .
    // pi_Gamma!, pi_A>! should match tau on +-covered counts
    Game gamma = game_o(), a = game_o();
    Strategy tau = projection(gamma, a, 1, 3);
    Strategy lam = currying(tau, gamma, a, 3);
    Game fun = HomView::of(lam.game).B;

    std::vector<EventId> emb(a.size());
    for (EventId e = 0; e < a.size(); ++e)
        emb[e] = e;
    Strategy ev = evaluation(fun, a, emb, 4);

    Strategy pig = projection(gamma, a, 0, 3);
    Strategy pia = projection(gamma, a, 1, 3);
    Strategy lam_pig = compose(promotion(pig, 3), lam).strat;
    Strategy paired = pairing(lam_pig, pia);
    Strategy prom = promotion(paired, 4);
    CHECK(structural_equal(HomView::of(prom.game).B, HomView::of(ev.game).A));
    Strategy lhs = compose(prom, ev, false).strat;
    CHECK(plus_covered(lhs).size() == plus_covered(tau).size());
}
