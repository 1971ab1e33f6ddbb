#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamespecies/games.hpp"
#include "gamespecies/symmetry.hpp"

using namespace gsp;

TEST_CASE("bijection basics")
{
    SymBij s({{0, 1}, {1, 0}});
    CHECK(s.dom() == Config{0, 1});
    CHECK(s.cod() == Config{0, 1});
    CHECK(s.apply(0) == 1);
    CHECK(s.then(s).is_identity());
    CHECK(s.inverse() == s);
    CHECK_THROWS_AS(SymBij({{0, 1}, {0, 2}}), EsError);
    CHECK_THROWS_AS(SymBij({{0, 1}, {2, 1}}), EsError);

    SymBij id = SymBij::identity({0, 1, 2});
    CHECK(id.restrict_dom({1}).is_identity());
    CHECK(id.extends(SymBij::identity({1, 2})));
}

TEST_CASE("identity-only family is always valid")
{
    EventStructure es(3, {{0, 1}, {0, 2}}, {{1, 2}});
    IsoFamily fam; // identities are implicit
    CHECK(validate_iso_family(es, fam).ok);
}

TEST_CASE("swap without restrictions fails the restriction axiom")
{
    EventStructure es(2, {}, {});
    // swap on {0,1} plus its inverse, but no singleton restrictions
    IsoFamily fam({SymBij({{0, 1}, {1, 0}})});
    auto rep = validate_iso_family(es, fam);
    CHECK_FALSE(rep.ok);
    bool restriction_mentioned = false;
    for (auto& v : rep.violations)
        if (v.find("restriction") != std::string::npos)
            restriction_mentioned = true;
    CHECK(restriction_mentioned);

    // closing under restrictions and swaps of singletons makes it valid
    IsoFamily closed({SymBij({{0, 1}, {1, 0}}), SymBij({{0, 1}}), SymBij({{1, 0}}),
                      SymBij({{0, 0}, {1, 1}}), SymBij({{0, 0}}), SymBij({{1, 1}})});
    CHECK(validate_iso_family(es, closed).ok);
}

TEST_CASE("generated family on !A validates (Def 7.2 construction)")
{
    Game a = game_o();
    Game ba = bang(a, 2);
    IsoFamily total = materialize_family(ba, SymClass::Total);
    CHECK(validate_iso_family(ba.es(), total).ok);
    IsoFamily negf = materialize_family(ba, SymClass::Neg);
    CHECK(validate_iso_family(ba.es(), negf).ok);
    // positive family of !o is identities only
    IsoFamily posf = materialize_family(ba, SymClass::Pos);
    for (auto& s : posf.members())
        CHECK(s.is_identity());
}

TEST_CASE("sym_compose and sym_invert stay inside the family")
{
    Game ba = bang(game_o(), 2);
    IsoFamily fam = materialize_family(ba, SymClass::Total);
    SymBij swap({{0, 1}, {1, 0}});
    CHECK(fam.contains(swap));
    CHECK(sym_compose(fam, swap, swap).is_identity());
    CHECK(sym_invert(fam, swap) == swap);
    CHECK(sym_compose(fam, SymBij::identity({0}), fam.between({0}, {1})[0]) ==
          fam.between({0}, {1})[0]);

    // restriction of a composite equals composite of restrictions
    for (const auto& s : fam.members())
        for (const auto& t : fam.members()) {
            if (s.cod() != t.dom() || s.size() < 1)
                continue;
            SymBij c = s.then(t);
            Config sub = {s.dom()[0]};
            CHECK(s.restrict_dom(sub).then(t.restrict_dom(s.restrict_dom(sub).cod())) ==
                  c.restrict_dom(sub));
        }
}

TEST_CASE("groupoid laws hold extensionally on a generated family")
{
    Game ba = bang(game_o(), 2);
    IsoFamily fam = materialize_family(ba, SymClass::Total);
    for (const auto& s : fam.members()) {
        CHECK(fam.contains(s.inverse()));
        CHECK(s.then(s.inverse()).is_identity());
        CHECK(s.then(SymBij::identity(s.cod())) == s);
        for (const auto& t : fam.members()) {
            if (s.cod() != t.dom())
                continue;
            CHECK(fam.contains(s.then(t)));
            for (const auto& u : fam.members()) {
                if (t.cod() != u.dom())
                    continue;
                CHECK(s.then(t).then(u) == s.then(t.then(u)));
            }
        }
    }
}

TEST_CASE("tcg validation and factorization")
{
    // any game with identity-only families is a valid tcg
    Game b = game_bool();
    CHECK(validate_tcg(b).ok);

    // !A for a negative one-move A with the polarity split is a valid tcg
    Game ba = bang(game_o(), 2);
    CHECK(validate_tcg(ba).ok);

    // factorize: identity factors as (id, id)
    auto [m, p] = factorize(ba, SymBij::identity({0, 1}));
    CHECK(m.is_identity());
    CHECK(p.is_identity());

    // a copy-index swap of negative moves factors as (swap, id)
    SymBij swap({{0, 1}, {1, 0}});
    auto [m2, p2] = factorize(ba, swap);
    CHECK(m2 == swap);
    CHECK(p2.is_identity());
}

TEST_CASE("factorization round-trips on a game with both polarities")
{
    // !(o -o o): negative root per copy, positive argument move; symmetries mix
    Game g = bang(lolli(game_o(), game_o()), 2);
    IsoFamily fam = materialize_family(g, SymClass::Total);
    for (const auto& s : fam.members()) {
        auto [neg, pos] = factorize(g, s);
        CHECK(neg.then(pos) == s);
        CHECK(sym_in(g, neg, SymClass::Neg));
        CHECK(sym_in(g, pos, SymClass::Pos));
    }
}

TEST_CASE("natural_equiv distinguishes none / tilde / tilde+")
{
    Game ba = bang(game_o(), 2);
    EventStructure src(1, {}, {});
    // f = g: positively symmetric
    CHECK(natural_equiv(src, {0}, {0}, ba) == NaturalEquiv::TildePos);
    // maps differing by a negative copy-index swap: ~ but not ~+
    CHECK(natural_equiv(src, {0}, {1}, ba) == NaturalEquiv::Tilde);
    // against a game with no symmetry: none
    Game b2 = tensor(game_o(), game_o());
    CHECK(natural_equiv(src, {0}, {1}, b2) == NaturalEquiv::None);
}
