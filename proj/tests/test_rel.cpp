#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamespecies/rel.hpp"

using namespace gsp;
using namespace gsp::rel;

TEST_CASE("parser round-trips the fragment")
{
    auto t = parse_rterm("\\x. if x then x else if x then ff else tt");
    CHECK(t->kind == RTerm::Kind::Abs);
    CHECK(parse_rterm("if choice then tt else tt")->kind == RTerm::Kind::If);
    CHECK(parse_rterm("(\\x. x) tt")->kind == RTerm::Kind::App);
    CHECK_THROWS(parse_rterm("if tt then"));
}

TEST_CASE("the classic boolean example")
{
    auto m = parse_rterm("\\x. if x then x else if x then ff else tt");
    std::vector<std::pair<std::vector<RPoint>, RPoint>> expect = {
        {{point_tt(), point_tt()}, point_tt()},
        {{point_tt(), point_ff()}, point_ff()},
        {{point_ff(), point_ff()}, point_tt()},
    };
    for (auto& [args, r] : expect)
        std::sort(args.begin(), args.end());
    // enumerate all candidate function points and keep the inhabited ones
    std::vector<std::pair<std::vector<RPoint>, RPoint>> got;
    for (const RPoint& p : points_of(RType::fun(RType::boolean(), RType::boolean()), 3)) {
        auto res = interp(m, {}, p, 3);
        if (!res.envs().empty())
            got.emplace_back(p.args, *p.result);
    }
    auto norm = [](std::vector<std::pair<std::vector<RPoint>, RPoint>> v) {
        std::sort(v.begin(), v.end(),
                  [](auto& a, auto& b) { return std::make_pair(a.first, a.second) <
                                                std::make_pair(b.first, b.second); });
        return v;
    };
    CHECK(norm(got) == norm(expect));
}

TEST_CASE("nondeterminism: Rel value vs PRRel witnesses")
{
    auto m = parse_rterm("if choice then tt else tt");
    auto at_tt = interp(m, {}, point_tt(), 2);
    auto at_ff = interp(m, {}, point_ff(), 2);
    // Rel: the value is {tt}
    CHECK(at_tt.envs().size() == 1);
    CHECK(at_ff.envs().empty());
    // PRRel: two distinct witnesses for tt
    CHECK(at_tt.witnesses.size() == 2);
}

TEST_CASE("choice alone has both values")
{
    auto m = parse_rterm("choice");
    CHECK(interp(m, {}, point_tt(), 1).witnesses.size() == 1);
    CHECK(interp(m, {}, point_ff(), 1).witnesses.size() == 1);
}

TEST_CASE("application consumes context multiplicities")
{
    // (\x. if x then x else tt) applied to choice: witnesses combine
    auto m = parse_rterm("(\\x. if x then x else if x then ff else tt) choice");
    auto at_tt = interp(m, {}, point_tt(), 3);
    auto at_ff = interp(m, {}, point_ff(), 3);
    CHECK(!at_tt.witnesses.empty());
    CHECK(!at_ff.witnesses.empty());
}

TEST_CASE("seely bijection cardinalities")
{
    // |A| = |B| = 2, multisets of size <= 3
    size_t n = seely_check(2, 2, 3);
    // multisets of size <= 3 over a 4-element set: C(4,1)*... = 1+4+10+20
    CHECK(n == 35);
    CHECK(seely_check(1, 1, 2) == 6);
}
