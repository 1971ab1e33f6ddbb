#include "gamespecies/symmetry.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gsp {

SymBij::SymBij(std::vector<std::pair<EventId, EventId>> pairs) : pairs_(std::move(pairs))
{
    std::sort(pairs_.begin(), pairs_.end());
    for (size_t i = 1; i < pairs_.size(); ++i)
        if (pairs_[i].first == pairs_[i - 1].first)
            throw EsError("SymBij: not a function");
    std::set<EventId> seen;
    for (auto& [a, b] : pairs_)
        if (!seen.insert(b).second)
            throw EsError("SymBij: not injective");
}

SymBij SymBij::identity(const Config& x)
{
    std::vector<std::pair<EventId, EventId>> p;
    p.reserve(x.size());
    for (EventId e : x)
        p.emplace_back(e, e);
    return SymBij(std::move(p));
}

Config SymBij::dom() const
{
    Config out;
    out.reserve(pairs_.size());
    for (auto& [a, b] : pairs_)
        out.push_back(a);
    return out;
}

Config SymBij::cod() const
{
    Config out;
    out.reserve(pairs_.size());
    for (auto& [a, b] : pairs_)
        out.push_back(b);
    return config_sorted(std::move(out));
}

EventId SymBij::apply(EventId e) const
{
    auto r = try_apply(e);
    if (!r)
        throw EsError("SymBij: event not in domain");
    return *r;
}

std::optional<EventId> SymBij::try_apply(EventId e) const
{
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(e, 0),
                               [](const auto& p, const auto& q) { return p.first < q.first; });
    if (it == pairs_.end() || it->first != e)
        return std::nullopt;
    return it->second;
}

bool SymBij::is_identity() const
{
    for (auto& [a, b] : pairs_)
        if (a != b)
            return false;
    return true;
}

SymBij SymBij::inverse() const
{
    std::vector<std::pair<EventId, EventId>> p;
    p.reserve(pairs_.size());
    for (auto& [a, b] : pairs_)
        p.emplace_back(b, a);
    return SymBij(std::move(p));
}

SymBij SymBij::then(const SymBij& other) const
{
    if (cod() != other.dom())
        throw EsError("SymBij: composition endpoint mismatch");
    std::vector<std::pair<EventId, EventId>> p;
    p.reserve(pairs_.size());
    for (auto& [a, b] : pairs_)
        p.emplace_back(a, other.apply(b));
    return SymBij(std::move(p));
}

SymBij SymBij::restrict_dom(const Config& sub) const
{
    std::vector<std::pair<EventId, EventId>> p;
    for (auto& [a, b] : pairs_)
        if (config_contains(sub, a))
            p.emplace_back(a, b);
    if (p.size() != sub.size())
        throw EsError("SymBij: restriction outside domain");
    return SymBij(std::move(p));
}

bool SymBij::extends(const SymBij& smaller) const
{
    return std::includes(pairs_.begin(), pairs_.end(), smaller.pairs_.begin(),
                         smaller.pairs_.end());
}

std::string SymBij::to_string() const
{
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < pairs_.size(); ++i) {
        if (i)
            os << ", ";
        os << pairs_[i].first << "->" << pairs_[i].second;
    }
    os << '}';
    return os.str();
}

IsoFamily::IsoFamily(std::vector<SymBij> symmetries) : all_(std::move(symmetries))
{
    std::sort(all_.begin(), all_.end());
    all_.erase(std::unique(all_.begin(), all_.end()), all_.end());
}

bool IsoFamily::contains(const SymBij& s) const
{
    if (s.is_identity())
        return true;
    return std::binary_search(all_.begin(), all_.end(), s);
}

std::vector<SymBij> IsoFamily::with_dom(const Config& x) const
{
    std::vector<SymBij> out;
    bool have_id = false;
    for (const auto& s : all_)
        if (s.dom() == x) {
            out.push_back(s);
            if (s.is_identity())
                have_id = true;
        }
    if (!have_id)
        out.push_back(SymBij::identity(x));
    return out;
}

std::vector<SymBij> IsoFamily::between(const Config& x, const Config& y) const
{
    std::vector<SymBij> out;
    for (auto& s : with_dom(x))
        if (s.cod() == y)
            out.push_back(s);
    return out;
}

IsoFamily IsoFamily::groupoid_closure(std::vector<SymBij> generators)
{
    std::set<SymBij> pool(generators.begin(), generators.end());
    for (const auto& g : generators)
        pool.insert(SymBij::identity(g.dom())), pool.insert(SymBij::identity(g.cod()));
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<SymBij> cur(pool.begin(), pool.end());
        for (const auto& s : cur)
            if (pool.insert(s.inverse()).second)
                changed = true;
        cur.assign(pool.begin(), pool.end());
        for (const auto& s : cur)
            for (const auto& t : cur)
                if (s.cod() == t.dom() && pool.insert(s.then(t)).second)
                    changed = true;
    }
    return IsoFamily(std::vector<SymBij>(pool.begin(), pool.end()));
}

ValidationReport validate_iso_family(const EventStructure& es, const IsoFamily& fam,
                                     std::optional<int> max_size)
{
    ValidationReport rep;
    std::vector<Config> confs = es.configurations(max_size);
    auto is_conf = [&](const Config& c) { return es.is_configuration(c); };

    for (const auto& s : fam.members()) {
        if (!is_conf(s.dom()))
            rep.fail("domain of " + s.to_string() + " is not a configuration");
        if (!is_conf(s.cod()))
            rep.fail("codomain of " + s.to_string() + " is not a configuration");
    }
    // groupoid structure
    for (const auto& s : fam.members()) {
        if (!fam.contains(s.inverse()))
            rep.fail("missing inverse of " + s.to_string());
        for (const auto& t : fam.members())
            if (s.cod() == t.dom() && !fam.contains(s.then(t)))
                rep.fail("missing composite of " + s.to_string() + " and " + t.to_string());
    }
    // restriction: any sub-configuration of the domain restricts
    for (const auto& s : fam.members()) {
        Config d = s.dom();
        for (const auto& x : confs) {
            if (!config_subset(x, d))
                continue;
            SymBij r = s.restrict_dom(x);
            if (!is_conf(r.cod()))
                rep.fail("restriction of " + s.to_string() + " to " + config_to_string(x) +
                         " has non-configuration image");
            else if (!fam.contains(r))
                rep.fail("missing restriction of " + s.to_string() + " to " +
                         config_to_string(x));
        }
    }
    // extension: any extension of the domain is matched by some extension
    for (const auto& s : fam.members()) {
        Config d = s.dom();
        for (const auto& x : confs) {
            if (!config_subset(d, x) || x == d)
                continue;
            bool found = false;
            for (const auto& t : fam.with_dom(x))
                if (t.extends(s)) {
                    found = true;
                    break;
                }
            if (!found)
                rep.fail("missing extension of " + s.to_string() + " to " + config_to_string(x));
        }
    }
    return rep;
}

SymBij sym_compose(const IsoFamily& fam, const SymBij& first, const SymBij& second)
{
    if (!fam.contains(first) || !fam.contains(second))
        throw EsError("sym_compose: input not in family");
    SymBij c = first.then(second);
    if (!fam.contains(c))
        throw EsError("sym_compose: composite escapes the family (invalid family)");
    return c;
}

SymBij sym_invert(const IsoFamily& fam, const SymBij& s)
{
    if (!fam.contains(s))
        throw EsError("sym_invert: input not in family");
    SymBij i = s.inverse();
    if (!fam.contains(i))
        throw EsError("sym_invert: inverse escapes the family (invalid family)");
    return i;
}

} // namespace gsp
