#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamespecies/games.hpp"

using namespace gsp;

TEST_CASE("payoff tables, cell by cell")
{
    // tensor
    CHECK(payoff_tensor(-1, -1) == -1);
    CHECK(payoff_tensor(-1, 0) == -1);
    CHECK(payoff_tensor(-1, 1) == -1);
    CHECK(payoff_tensor(0, -1) == -1);
    CHECK(payoff_tensor(0, 0) == 0);
    CHECK(payoff_tensor(0, 1) == 1);
    CHECK(payoff_tensor(1, -1) == -1);
    CHECK(payoff_tensor(1, 0) == 1);
    CHECK(payoff_tensor(1, 1) == 1);
    // par
    CHECK(payoff_par(-1, -1) == -1);
    CHECK(payoff_par(-1, 0) == -1);
    CHECK(payoff_par(-1, 1) == 1);
    CHECK(payoff_par(0, -1) == -1);
    CHECK(payoff_par(0, 0) == 0);
    CHECK(payoff_par(0, 1) == 1);
    CHECK(payoff_par(1, -1) == 1);
    CHECK(payoff_par(1, 0) == 1);
    CHECK(payoff_par(1, 1) == 1);
    // par is the de-Morgan dual of tensor
    for (int a : {-1, 0, 1})
        for (int b : {-1, 0, 1})
            CHECK(payoff_par(a, b) == -payoff_tensor(-a, -b));
}

TEST_CASE("dual")
{
    Game b = game_bool();
    Game d = dual(b);
    CHECK(d.pol(0) == Polarity::Pos);
    for (const Config& x : b.es().configurations()) {
        CHECK(d.payoff(x) == -b.payoff(x));
        CHECK(dual(d).payoff(x) == b.payoff(x));
        CHECK(dual(d).pol(x.empty() ? 0 : x[0]) == b.pol(x.empty() ? 0 : x[0]));
    }
}

TEST_CASE("tensor configurations are pairs")
{
    Game a = game_o(), b = game_bool();
    Game t = tensor(a, b);
    auto confs = t.es().configurations();
    CHECK(confs.size() == a.es().configurations().size() * b.es().configurations().size());
    for (const Config& x : confs) {
        auto [xl, xr] = split_two(t, x);
        CHECK(t.payoff(x) == payoff_tensor(a.payoff(xl), b.payoff(xr)));
    }
    // complete configurations multiply
    CHECK(t.complete_configs().size() ==
          a.complete_configs().size() * b.complete_configs().size());
}

TEST_CASE("with product")
{
    Game a = game_o(), b = game_o();
    Game w = with_prod(a, b);
    // configurations: empty, i1-side, i2-side
    auto confs = w.es().configurations();
    CHECK(confs.size() == 1 + 1 + 1); // {}, {l.q}, {r.q}
    CHECK(w.payoff({}) == 1);
    auto br = board_report(w);
    CHECK(br.rep.ok);
    CHECK(br.strict);
    CHECK_FALSE(br.well_opened);
    // complete(A&B) = complete(A) + complete(B)
    CHECK(w.complete_configs().size() ==
          a.complete_configs().size() + b.complete_configs().size());
}

TEST_CASE("bang")
{
    Game o = game_o();
    CHECK_THROWS_AS(bang(dual(o), 1), EsError); // not negative

    Game empty = game_empty(0, "I");
    Game be = bang(empty, 3);
    CHECK(be.size() == 0);
    CHECK(be.payoff({}) == 0); // empty tensor product

    Game bo = bang(o, 2);
    CHECK(bo.es().configurations().size() == 4);
    // complete configs of bang(o) at width 3: all 8 subsets (empty family complete)
    Game bo3 = bang(o, 3);
    CHECK(bo3.complete_configs().size() == 8);
    auto br = board_report(bo3);
    CHECK(br.rep.ok);
    CHECK(br.negative);
    CHECK_FALSE(br.strict); // !A is never strict
}

TEST_CASE("lolli and arrow")
{
    Game o = game_o();
    Game l = lolli(o, o);
    // the A-side move depends on the B-root
    CHECK(l.size() == 2);
    auto confs = l.es().configurations();
    // {}, {root}, {root, arg}
    CHECK(confs.size() == 3);
    // complete(A -o B) = complete(A) x complete(B)
    CHECK(l.complete_configs().size() ==
          o.complete_configs().size() * o.complete_configs().size());

    Game ar = arrow(o, o, 1);
    // complete configurations: (0 or 1 copies) x {*}
    CHECK(ar.complete_configs().size() == 2);
    auto rep = validate_arena(ar);
    CHECK(rep.ok);
}

TEST_CASE("complete configs of strict o")
{
    Game o = game_o();
    CHECK(o.payoff({}) == 1);
    CHECK(o.payoff({0}) == 0);
    CHECK(o.complete_configs() == std::vector<Config>{{0}});
}

TEST_CASE("arena validation")
{
    CHECK(validate_arena(game_bool()).ok);
    // a game with + -> + edge violates alternation
    EventStructure es(2, {{0, 1}}, {});
    Game bad = make_atom("bad", es, {Polarity::Pos, Polarity::Pos}, {{{}, 0}, {{0}, 0}, {{0, 1}, 0}});
    CHECK_FALSE(validate_arena(bad).ok);
    // hom of arenas is an arena
    CHECK(validate_arena(hom(game_bool(), game_bool())).ok);
}

TEST_CASE("constructed boards pass tcg and board validation")
{
    Game o = game_o();
    for (Game g : {bang(o, 2), hom(o, o), with_prod(o, o), arrow(o, o, 2),
                   tensor(bang(o, 2), o)}) {
        CHECK(validate_tcg(g).ok);
        CHECK(board_report(g).rep.ok);
    }
}

TEST_CASE("bang payoff is the tensor over nonempty copies")
{
    Game b = bang(game_bool(), 2);
    // one copy asked but unanswered: -1
    CHECK(b.payoff({0}) == -1);
    // both copies answered: 0
    Config both = {0, 1, 3, 4};
    CHECK(b.es().is_configuration(both));
    CHECK(b.payoff(both) == 0);
    CHECK(b.payoff({}) == 0);
}

TEST_CASE("syms_between on hom mixes classes per side")
{
    Game g = hom(bang(game_o(), 2), bang(game_o(), 2));
    // left copies: positive class of the hom flips to negative of !o
    Config x = {0, 1};
    auto pos = syms_between(g, x, x, SymClass::Pos);
    // on the left side, tilde+ of the hom = tilde- of !o: the swap is allowed
    bool found_swap = false;
    for (auto& s : pos)
        if (!s.is_identity())
            found_swap = true;
    CHECK(found_swap);
}
