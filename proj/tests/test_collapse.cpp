#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "gamespecies/collapse.hpp"

using namespace gsp;
using namespace gsp::fixtures;

TEST_CASE("witnesses of copycat correspond to symmetries")
{
    Game a = bang(game_o(), 2);
    Strategy cc = copycat(a);
    for (const Config& x : a.es().configurations())
        for (const Config& y : a.es().configurations()) {
            auto ws = witnesses_at(cc, x, y);
            auto syms = syms_between(a, x, y, SymClass::Total);
            CHECK(ws.size() == syms.size());
        }
}

TEST_CASE("witness actions: identity and functoriality")
{
    Game a = bang(game_o(), 2);
    Strategy cc = copycat(a);
    for (const Config& x : a.es().configurations())
        for (auto& w : witnesses_at(cc, x, x)) {
            Witness same = witness_action(cc, SymBij::identity(x), SymBij::identity(x), w);
            CHECK(same == w);
        }
    Config x = {0, 1};
    auto ws = witnesses_at(cc, x, x);
    REQUIRE(!ws.empty());
    SymBij swap({{0, 1}, {1, 0}});
    for (auto& w : ws) {
        Witness one = witness_action(cc, swap, SymBij::identity(x), w);
        Witness two = witness_action(cc, swap, SymBij::identity(x), one);
        Witness direct = witness_action(cc, swap.then(swap), SymBij::identity(x), w);
        CHECK(two == direct);
    }
}

TEST_CASE("collapse of copycat is the identity distributor (pid)")
{
    for (Game a : {game_bool(), bang(game_o(), 2)}) {
        PidResult r = pid_check(a);
        CHECK(r.ok);
        if (!r.ok)
            for (auto& n : r.notes)
                MESSAGE(n);
    }
}

TEST_CASE("collapse of a plain strategy is its proof-relevant relation")
{
    Strategy s = bool_both_tt();
    CollapsedStrategy c = collapse_strategy(s, false, false);
    int a0 = c.ga.obj_id({});
    CHECK(c.dist.at(a0, c.gb.obj_id({0, 1})).size() == 2);
    CHECK(c.dist.at(a0, c.gb.obj_id({0, 2})).empty());
}

TEST_CASE("deadlock: pcomp strictly non-surjective")
{
    Strategy s = deadlock_sigma();
    Strategy t = deadlock_tau();
    PcompPointCount pc = pcomp_at(s, t, {}, {0, 1});
    CHECK(pc.composite == 0);
    CHECK(pc.coend == 1);
    PcompResult r = pcomp_check(s, t, false);
    CHECK(r.injective);
    CHECK_FALSE(r.surjective);
}

TEST_CASE("pcomp is a bijection for copycat-like pairs")
{
    Strategy s = bool_both_tt();
    Strategy cc = copycat(game_bool());
    PcompResult r = pcomp_check(s, cc, false, true);
    CHECK(r.injective);
    CHECK(r.surjective);
    CHECK(r.natural);
}

TEST_CASE("pcomp with symmetry: dereliction against copycat")
{
    Game a = game_o();
    Strategy der = dereliction(a, 2);
    Strategy cc = copycat(a);
    PcompResult r = pcomp_check(der, cc, false, true);
    CHECK(r.injective);
    CHECK(r.surjective);
    CHECK(r.natural);
}

TEST_CASE("bang/Sym equivalence holds for strict boards")
{
    for (Game a : {game_o(), game_bool()}) {
        BangSymEquivalence e = bang_sym_equivalence(a, 2, 2);
        CHECK(e.report.ok);
        if (!e.report.ok)
            MESSAGE(e.report.to_string());
    }
    BangSymEquivalence e3 = bang_sym_equivalence(game_o(), 3, 3);
    CHECK(e3.report.ok);
}

TEST_CASE("bang/Sym equivalence fails for the empty board")
{
    Game empty = game_empty(0, "I");
    BangSymEquivalence e = bang_sym_equivalence(empty, 3, 2);
    CHECK_FALSE(e.report.ok);
    bool unit_missing = false;
    for (auto& v : e.report.violations)
        if (v.find("unit") != std::string::npos)
            unit_missing = true;
    CHECK(unit_missing);
    CHECK(e.sym.objects.size() == 3);    // <>, <{}>, <{},{}>
    CHECK(e.banged.objects.size() == 1); // only the empty configuration
}

TEST_CASE("arrow equivalence")
{
    CHECK(arrow_equivalence_check(game_o(), game_o(), 2, 2).ok);
    CHECK(arrow_equivalence_check(game_bool(), game_o(), 2, 2).ok);
}

TEST_CASE("seely equivalence on boards")
{
    CHECK(seely_board_check(game_o(), game_o(), 2).ok);
    CHECK(seely_board_check(game_o(), game_bool(), 2).ok);
}

TEST_CASE("pder")
{
    CHECK(pder_check(game_o(), 2, 2).ok);
    CHECK(pder_check(game_bool(), 2, 2).ok);
}

TEST_CASE("pprom on dereliction")
{
    Game a = game_o();
    Strategy der = dereliction(a, 1);
    auto rep = pprom_check(der, 2, 2);
    CHECK(rep.ok);
    if (!rep.ok)
        MESSAGE(rep.to_string());
}

TEST_CASE("kleisli collapse of dereliction is the dereliction species")
{
    Game a = game_o();
    Strategy der = dereliction(a, 2);
    KleisliCollapse kc = collapse_kleisli(der, 2);
    Distributor i = dereliction_i(kc.sym_a);
    for (int s = 0; s < static_cast<int>(kc.sym_a.objects.size()); ++s)
        for (int b = 0; b < static_cast<int>(kc.gb.objects.size()); ++b)
            CHECK(kc.dist.at(s, b).size() == i.at(s, b).size());
}

TEST_CASE("kleisli witness count at a point")
{
    Game a = game_o();
    Strategy der = dereliction(a, 2);
    CHECK(kleisli_witness_count_at(der, {{0}}, {0}) == 1);
    CHECK(kleisli_witness_count_at(der, {}, {}) == 1);
    CHECK(kleisli_witness_count_at(der, {{0}, {0}}, {0}) == 0);
}

TEST_CASE("unitor triangle: rho on witnesses")
{
    for (Strategy s : {bool_answer(1), bool_both_tt()}) {
        Strategy cc = copycat(game_bool());
        ComposeResult comp = compose(s, cc);
        CollapsedStrategy ccomp = collapse_strategy(comp.strat, false, false);
        HomView hs = HomView::of(s.game);
        for (size_t wi = 0; wi < ccomp.wit.size(); ++wi) {
            const Witness& w = ccomp.wit[wi];
            std::optional<size_t> k;
            for (size_t j = 0; j < comp.plus_configs.size(); ++j)
                if (comp.plus_configs[j] == w.x)
                    k = j;
            REQUIRE(k.has_value());
            const Config& xs = comp.pairs[*k].first;
            // path 1 (strategy-level unitor): the same thetas over x^sigma
            Witness rho_w{w.theta_minus, xs, w.theta_plus};
            // path 2: pcomp, pid on the right factor, then the Dist unitor,
            // i.e. the left factor acted on by theta+
            Config xb = hs.B_part(s.display_config(xs));
            Witness ws{w.theta_minus, xs, SymBij::identity(xb)};
            Witness acted = witness_action(s, SymBij::identity(w.theta_minus.dom()),
                                           w.theta_plus, ws);
            CHECK(acted == rho_w);
        }
    }
}
