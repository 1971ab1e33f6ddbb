#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamespecies/es.hpp"

using namespace gsp;

namespace {

// boolean game shape: q -> tt, q -> ff, tt # ff
EventStructure bool_shape() { return EventStructure(3, {{0, 1}, {0, 2}}, {{1, 2}}); }

// brute-force oracle: filter all subsets for down-closure and conflict-freeness
std::vector<Config> brute_configs(const EventStructure& es)
{
    std::vector<Config> out;
    int n = es.size();
    for (int mask = 0; mask < (1 << n); ++mask) {
        Config x;
        for (int e = 0; e < n; ++e)
            if (mask & (1 << e))
                x.push_back(e);
        if (es.is_configuration(x))
            out.push_back(x);
    }
    std::sort(out.begin(), out.end(), [](const Config& a, const Config& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    return out;
}

} // namespace

TEST_CASE("configuration enumeration")
{
    EventStructure empty(0, {}, {});
    CHECK(empty.configurations() == std::vector<Config>{{}});

    EventStructure es = bool_shape();
    std::vector<Config> expect = {{}, {0}, {0, 1}, {0, 2}};
    CHECK(es.configurations() == expect);
    CHECK(es.configurations() == brute_configs(es));

    EventStructure conc(2, {}, {});
    CHECK(conc.configurations().size() == 4);
    CHECK(conc.configurations() == brute_configs(conc));

    CHECK(es.configurations(1) == std::vector<Config>{{}, {0}});
}

TEST_CASE("enabling")
{
    EventStructure es = bool_shape();
    CHECK(es.enabled({}, 0));
    CHECK_FALSE(es.enabled({0, 1}, 2)); // tt # ff
    CHECK(es.enabled({0}, 1));
    CHECK_FALSE(es.enabled({}, 1)); // not down-closed
    CHECK_THROWS_AS(es.enabled({}, 7), EsError);
}

TEST_CASE("validators on construction")
{
    CHECK_THROWS_AS(EventStructure(2, {{0, 1}, {1, 0}}, {}), EsError); // cycle
    CHECK_THROWS_AS(EventStructure(1, {}, {{0, 0}}), EsError);        // reflexive conflict
    CHECK_THROWS_AS(EventStructure(2, {{0, 1}}, {{0, 1}}), EsError);  // conflict along order
    // conflict inheritance is computed
    EventStructure es(3, {{1, 2}}, {{0, 1}});
    CHECK(es.conflict(0, 2));
    CHECK(es.immediate_conflict(0, 1));
    CHECK_FALSE(es.immediate_conflict(0, 2));
}

TEST_CASE("map validation")
{
    EventStructure es = bool_shape();
    EsMap id{&es, &es, {0, 1, 2}};
    CHECK(validate_map(id).ok);

    // collapsing two concurrent events onto one is not locally injective
    EventStructure conc(2, {}, {});
    EventStructure one(1, {}, {});
    EsMap collapse{&conc, &one, {0, 0}};
    auto rep = validate_map(collapse);
    CHECK_FALSE(rep.ok);

    // the strategy with two conflicting answers both displaying to tt
    EventStructure strat(3, {{0, 1}, {0, 2}}, {{1, 2}});
    EsMap disp{&strat, &es, {0, 1, 1}};
    CHECK(validate_map(disp).ok);

    // local injectivity: |m(x)| == |x| on every configuration
    for (const Config& x : strat.configurations())
        CHECK(disp.image(x).size() == x.size());
}

TEST_CASE("gccs")
{
    EventStructure empty(0, {}, {});
    CHECK(gccs(empty).empty());

    EventStructure chain(3, {{0, 1}, {1, 2}}, {});
    std::vector<Gcc> expect = {{0}, {0, 1}, {0, 1, 2}};
    CHECK(gccs(chain) == expect);

    // 4-event chain: 4 prefixes
    EventStructure chain4(4, {{0, 1}, {1, 2}, {2, 3}}, {});
    CHECK(gccs(chain4).size() == 4);

    // a gcc need not be a configuration: diamond with a#b does not arise,
    // but forks each give their own chain
    EventStructure fork(3, {{0, 1}, {0, 2}}, {});
    CHECK(gccs(fork).size() == 3);
}

TEST_CASE("primes round-trip")
{
    for (auto es : {bool_shape(), EventStructure(3, {{0, 1}, {1, 2}}, {}),
                    EventStructure(4, {{0, 1}, {0, 2}}, {{1, 2}})}) {
        auto pr = primes_from_family(es.configurations());
        CHECK(pr.es.size() == es.size());
        // the configuration family is order-isomorphic to the original
        auto got = pr.es.configurations();
        CHECK(got.size() == es.configurations().size());
    }
}

TEST_CASE("primes of a conflicted family")
{
    // {∅, {a}, {b}} with {a,b} absent: two events in conflict
    std::vector<Config> fam = {{}, {0}, {1}};
    auto pr = primes_from_family(fam);
    CHECK(pr.es.size() == 2);
    CHECK(pr.es.conflict(0, 1));
}

TEST_CASE("primes rejects unstable family")
{
    // {a,b} and {a,c} bounded by {a,b,c} but intersection {a} missing
    std::vector<Config> fam = {{}, {0, 1}, {0, 2}, {0, 1, 2}};
    CHECK_THROWS_AS(primes_from_family(fam), EsError);
}

TEST_CASE("config_of maps family members to new configurations")
{
    EventStructure es = bool_shape();
    auto pr = primes_from_family(es.configurations());
    for (const Config& x : es.configurations()) {
        Config y = pr.config_of(x);
        CHECK(y.size() == x.size());
        CHECK(pr.es.is_configuration(y));
    }
}
