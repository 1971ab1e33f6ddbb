#include "gamespecies/es.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gsp {

Config config_sorted(Config c)
{
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

bool config_contains(const Config& c, EventId e)
{
    return std::binary_search(c.begin(), c.end(), e);
}

Config config_union(const Config& a, const Config& b)
{
    Config out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Config config_intersect(const Config& a, const Config& b)
{
    Config out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool config_subset(const Config& a, const Config& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Config config_insert(const Config& c, EventId e)
{
    Config out = c;
    out.insert(std::lower_bound(out.begin(), out.end(), e), e);
    return out;
}

std::string config_to_string(const Config& c)
{
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < c.size(); ++i) {
        if (i)
            os << ',';
        os << c[i];
    }
    os << '}';
    return os.str();
}

std::string ValidationReport::to_string() const
{
    if (ok)
        return "ok";
    std::ostringstream os;
    for (const auto& v : violations)
        os << v << '\n';
    return os.str();
}

EventStructure::EventStructure(int n_events, std::vector<std::pair<EventId, EventId>> cover,
                               std::vector<std::pair<EventId, EventId>> conflict)
    : n_(n_events)
{
    if (n_ < 0)
        throw EsError("negative event count");
    leq_.assign(static_cast<size_t>(n_) * n_, 0);
    conf_.assign(static_cast<size_t>(n_) * n_, 0);
    succ_.assign(n_, {});
    pred_.assign(n_, {});

    auto check = [&](EventId e) {
        if (e < 0 || e >= n_)
            throw EsError("event id out of range: " + std::to_string(e));
    };
    for (auto [a, b] : cover) {
        check(a);
        check(b);
        if (a == b)
            throw EsError("self-cause on event " + std::to_string(a));
        succ_[a].push_back(b);
        pred_[b].push_back(a);
    }
    for (auto& v : succ_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    for (auto& v : pred_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    // Kahn's algorithm: detects cycles and provides a topological order for
    // the closure computation.
    std::vector<int> indeg(n_, 0);
    for (EventId e = 0; e < n_; ++e)
        indeg[e] = static_cast<int>(pred_[e].size());
    std::vector<EventId> order;
    order.reserve(n_);
    std::vector<EventId> stack;
    for (EventId e = 0; e < n_; ++e)
        if (indeg[e] == 0)
            stack.push_back(e);
    while (!stack.empty()) {
        EventId e = stack.back();
        stack.pop_back();
        order.push_back(e);
        for (EventId s : succ_[e])
            if (--indeg[s] == 0)
                stack.push_back(s);
    }
    if (static_cast<int>(order.size()) != n_)
        throw EsError("cover relation has a cycle");

    for (EventId e = 0; e < n_; ++e)
        leq_[idx(e, e)] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        EventId e = *it;
        for (EventId s : succ_[e])
            for (EventId t = 0; t < n_; ++t)
                if (leq_[idx(s, t)])
                    leq_[idx(e, t)] = 1;
    }

    for (auto [a, b] : conflict) {
        check(a);
        check(b);
        if (a == b)
            throw EsError("reflexive conflict on event " + std::to_string(a));
        if (leq(a, b) || leq(b, a))
            throw EsError("conflict between causally ordered events " + std::to_string(a) +
                          "," + std::to_string(b));
        conf_[idx(a, b)] = conf_[idx(b, a)] = 1;
    }
    // conflict inheritance: a # b and b <= b' gives a # b'
    for (EventId a = 0; a < n_; ++a)
        for (EventId b = 0; b < n_; ++b)
            if (conf_[idx(a, b)])
                for (EventId c = 0; c < n_; ++c)
                    if (leq(b, c)) {
                        conf_[idx(a, c)] = conf_[idx(c, a)] = 1;
                        for (EventId d = 0; d < n_; ++d)
                            if (leq(a, d))
                                conf_[idx(d, c)] = conf_[idx(c, d)] = 1;
                    }
    for (EventId a = 0; a < n_; ++a)
        if (conf_[idx(a, a)])
            throw EsError("conflict inheritance makes event " + std::to_string(a) +
                          " self-conflicting");
}

bool EventStructure::covers(EventId a, EventId b) const
{
    const auto& s = succ_[a];
    return std::binary_search(s.begin(), s.end(), b);
}

Config EventStructure::down_set(EventId e) const
{
    Config out;
    for (EventId a = 0; a < n_; ++a)
        if (leq(a, e))
            out.push_back(a);
    return out;
}

std::vector<EventId> EventStructure::minimal_events() const
{
    std::vector<EventId> out;
    for (EventId e = 0; e < n_; ++e)
        if (minimal(e))
            out.push_back(e);
    return out;
}

bool EventStructure::down_closed(const Config& x) const
{
    for (EventId e : x)
        for (EventId p : pred_[e])
            if (!config_contains(x, p))
                return false;
    return true;
}

bool EventStructure::conflict_free(const Config& x) const
{
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            if (conflict(x[i], x[j]))
                return false;
    return true;
}

bool EventStructure::is_configuration(const Config& x) const
{
    for (EventId e : x)
        if (e < 0 || e >= n_)
            return false;
    return down_closed(x) && conflict_free(x);
}

std::vector<Config> EventStructure::configurations(std::optional<int> max_size) const
{
    // breadth-first extension with deduplication; configurations are grown
    // one enabled event at a time, so every down-closed conflict-free set is
    // reached
    std::vector<Config> out = {{}};
    std::set<Config> seen = {{}};
    size_t head = 0;
    while (head < out.size()) {
        Config cur = out[head++];
        if (max_size && static_cast<int>(cur.size()) >= *max_size)
            continue;
        for (EventId e = 0; e < n_; ++e) {
            if (config_contains(cur, e) || !enabled_in(cur, e))
                continue;
            Config next = config_insert(cur, e);
            if (seen.insert(next).second)
                out.push_back(next);
        }
    }
    std::sort(out.begin(), out.end(), [](const Config& a, const Config& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    return out;
}

bool EventStructure::enabled_in(const Config& x, EventId e) const
{
    for (EventId p : pred_[e])
        if (!config_contains(x, p))
            return false;
    for (EventId a : x)
        if (conflict(a, e))
            return false;
    return true;
}

bool EventStructure::enabled(const Config& x, EventId e) const
{
    if (e < 0 || e >= n_)
        throw EsError("enabled: event id out of range");
    if (config_contains(x, e))
        return false;
    return enabled_in(x, e);
}

std::vector<EventId> EventStructure::enabled_events(const Config& x) const
{
    std::vector<EventId> out;
    for (EventId e = 0; e < n_; ++e)
        if (!config_contains(x, e) && enabled_in(x, e))
            out.push_back(e);
    return out;
}

bool EventStructure::immediate_conflict(EventId a, EventId b) const
{
    if (!conflict(a, b))
        return false;
    // inherited iff some strict ancestor of a conflicts b, or vice versa
    for (EventId p = 0; p < n_; ++p) {
        if (lt(p, a) && conflict(p, b))
            return false;
        if (lt(p, b) && conflict(p, a))
            return false;
    }
    return true;
}

std::vector<std::pair<EventId, EventId>> EventStructure::cover_edges() const
{
    std::vector<std::pair<EventId, EventId>> out;
    for (EventId e = 0; e < n_; ++e)
        for (EventId s : succ_[e])
            out.emplace_back(e, s);
    return out;
}

std::vector<std::pair<EventId, EventId>> EventStructure::conflict_pairs() const
{
    std::vector<std::pair<EventId, EventId>> out;
    for (EventId a = 0; a < n_; ++a)
        for (EventId b = a + 1; b < n_; ++b)
            if (conflict(a, b))
                out.emplace_back(a, b);
    return out;
}

Config EsMap::image(const Config& x) const
{
    Config out;
    out.reserve(x.size());
    for (EventId e : x)
        out.push_back(map[e]);
    return config_sorted(std::move(out));
}

ValidationReport validate_map(const EsMap& m, std::optional<int> max_size)
{
    ValidationReport rep;
    if (!m.source || !m.target) {
        rep.fail("map endpoints missing");
        return rep;
    }
    if (static_cast<int>(m.map.size()) != m.source->size()) {
        rep.fail("map is not total");
        return rep;
    }
    for (EventId e : m.map)
        if (e < 0 || e >= m.target->size()) {
            rep.fail("map value out of range");
            return rep;
        }
    for (const Config& x : m.source->configurations(max_size)) {
        Config fx = m.image(x);
        if (fx.size() != x.size())
            rep.fail("not locally injective on " + config_to_string(x));
        if (!m.target->is_configuration(fx))
            rep.fail("image of " + config_to_string(x) + " = " + config_to_string(fx) +
                     " is not a configuration");
    }
    return rep;
}

std::vector<Gcc> gccs(const EventStructure& es)
{
    std::vector<Gcc> out;
    Gcc cur;
    auto rec = [&](auto&& self, EventId last) -> void {
        out.push_back(cur);
        for (EventId s : es.cover_successors(last)) {
            cur.push_back(s);
            self(self, s);
            cur.pop_back();
        }
    };
    for (EventId e : es.minimal_events()) {
        cur = {e};
        rec(rec, e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

PrimeResult primes_from_family(const std::vector<Config>& family_in, bool verify_round_trip)
{
    std::vector<Config> family = family_in;
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    if (family.empty() || !family.front().empty()) {
        bool has_empty = false;
        for (const auto& x : family)
            if (x.empty())
                has_empty = true;
        if (!has_empty)
            throw EsError("primes_from_family: family must contain the empty configuration");
    }

    auto in_family = [&](const Config& x) {
        return std::binary_search(family.begin(), family.end(), x);
    };
    auto bounded = [&](const Config& a, const Config& b) {
        Config u = config_union(a, b);
        for (const auto& z : family)
            if (config_subset(u, z))
                return true;
        return false;
    };
    // stability: bounded pairs have union and intersection in the family
    for (size_t i = 0; i < family.size(); ++i)
        for (size_t j = i + 1; j < family.size(); ++j)
            if (bounded(family[i], family[j])) {
                if (!in_family(config_union(family[i], family[j])))
                    throw EsError("primes_from_family: family not stable (missing union of " +
                                  config_to_string(family[i]) + " and " +
                                  config_to_string(family[j]) + ")");
                if (!in_family(config_intersect(family[i], family[j])))
                    throw EsError("primes_from_family: family not stable (missing intersection)");
            }

    // prime of e in x: intersection of all family members below x containing e
    PrimeResult res;
    std::vector<Config>& primes = res.prime_sets;
    auto prime_of = [&](const Config& x, EventId e) {
        Config p = x;
        for (const auto& y : family)
            if (config_contains(y, e) && config_subset(y, x))
                p = config_intersect(p, y);
        return p;
    };
    for (const auto& x : family)
        for (EventId e : x) {
            Config p = prime_of(x, e);
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) {
                primes.push_back(p);
                res.prime_top.push_back(e);
            }
        }
    // deterministic order: by size then lexicographic
    {
        std::vector<size_t> perm(primes.size());
        for (size_t i = 0; i < perm.size(); ++i)
            perm[i] = i;
        std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
            if (primes[a].size() != primes[b].size())
                return primes[a].size() < primes[b].size();
            return primes[a] < primes[b];
        });
        std::vector<Config> ps;
        std::vector<EventId> ts;
        for (size_t i : perm) {
            ps.push_back(primes[i]);
            ts.push_back(res.prime_top[i]);
        }
        primes = std::move(ps);
        res.prime_top = std::move(ts);
    }

    int n = static_cast<int>(primes.size());
    std::vector<std::pair<EventId, EventId>> cover;
    std::vector<std::pair<EventId, EventId>> confl;
    auto leq_prime = [&](int a, int b) { return config_subset(primes[a], primes[b]); };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || !leq_prime(a, b))
                continue;
            bool imm = true;
            for (int c = 0; c < n && imm; ++c)
                if (c != a && c != b && leq_prime(a, c) && leq_prime(c, b))
                    imm = false;
            if (imm)
                cover.emplace_back(a, b);
        }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            bool compatible = false;
            for (const auto& z : family)
                if (config_subset(primes[a], z) && config_subset(primes[b], z)) {
                    compatible = true;
                    break;
                }
            if (!compatible && !leq_prime(a, b) && !leq_prime(b, a))
                confl.emplace_back(a, b);
        }
    res.es = EventStructure(n, cover, confl);
    res.family = family;

    if (verify_round_trip) {
        std::vector<Config> got = res.es.configurations();
        std::vector<Config> want;
        want.reserve(family.size());
        for (const auto& x : family)
            want.push_back(res.config_of(x));
        std::sort(want.begin(), want.end());
        want.erase(std::unique(want.begin(), want.end()), want.end());
        std::sort(got.begin(), got.end());
        if (got != want)
            throw EsError("primes_from_family: family not stable (prime construction does not "
                          "round-trip)");
    }
    return res;
}

Config PrimeResult::config_of(const Config& member) const
{
    Config out;
    for (EventId e : member) {
        Config p = member;
        for (const auto& y : family)
            if (config_contains(y, e) && config_subset(y, member))
                p = config_intersect(p, y);
        auto it = std::find(prime_sets.begin(), prime_sets.end(), p);
        if (it == prime_sets.end())
            throw EsError("config_of: configuration not generated by the family");
        out.push_back(static_cast<EventId>(it - prime_sets.begin()));
    }
    return config_sorted(std::move(out));
}

} // namespace gsp
