#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsp {

using EventId = int;

/// A configuration is a set of events, kept sorted and duplicate-free.
using Config = std::vector<EventId>;

Config config_sorted(Config c);
bool config_contains(const Config& c, EventId e);
Config config_union(const Config& a, const Config& b);
Config config_intersect(const Config& a, const Config& b);
bool config_subset(const Config& a, const Config& b);
Config config_insert(const Config& c, EventId e);
std::string config_to_string(const Config& c);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string msg)
    {
        ok = false;
        violations.push_back(std::move(msg));
    }
    std::string to_string() const;
};

class EsError : public std::runtime_error {
public:
    explicit EsError(const std::string& what) : std::runtime_error(what) {}
};

/// Finite event structure: events 0..n-1, causality given by a cover
/// relation (transitive closure cached), binary conflict closed under
/// inheritance. Immutable after construction.
class EventStructure {
public:
    EventStructure() = default;
    /// `cover` are immediate-causality edges, `conflict` minimal conflict
    /// generators; the constructor computes closures and checks acyclicity,
    /// irreflexivity and inheritance.
    EventStructure(int n_events, std::vector<std::pair<EventId, EventId>> cover,
                   std::vector<std::pair<EventId, EventId>> conflict);

    int size() const { return n_; }
    bool leq(EventId a, EventId b) const { return leq_[idx(a, b)]; }
    bool lt(EventId a, EventId b) const { return a != b && leq(a, b); }
    bool conflict(EventId a, EventId b) const { return conf_[idx(a, b)]; }
    bool covers(EventId a, EventId b) const; // a -> b immediate
    const std::vector<EventId>& cover_successors(EventId e) const { return succ_[e]; }
    const std::vector<EventId>& cover_predecessors(EventId e) const { return pred_[e]; }

    /// [e] = down-closure of e, sorted.
    Config down_set(EventId e) const;
    bool minimal(EventId e) const { return pred_[e].empty(); }
    std::vector<EventId> minimal_events() const;

    bool is_configuration(const Config& x) const;
    bool down_closed(const Config& x) const;
    bool conflict_free(const Config& x) const;

    /// All down-closed conflict-free subsets, lexicographically ordered,
    /// optionally bounded in cardinality.
    std::vector<Config> configurations(std::optional<int> max_size = std::nullopt) const;

    /// true iff e not in x and x + e is a configuration.
    bool enabled(const Config& x, EventId e) const;
    std::vector<EventId> enabled_events(const Config& x) const;

    /// Immediate-conflict test: a # b and the conflict is not inherited.
    bool immediate_conflict(EventId a, EventId b) const;

    std::vector<std::pair<EventId, EventId>> cover_edges() const;
    std::vector<std::pair<EventId, EventId>> conflict_pairs() const;

private:
    size_t idx(EventId a, EventId b) const { return static_cast<size_t>(a) * n_ + b; }
    bool enabled_in(const Config& x, EventId e) const;

    int n_ = 0;
    std::vector<char> leq_;
    std::vector<char> conf_;
    std::vector<std::vector<EventId>> succ_;
    std::vector<std::vector<EventId>> pred_;
};

/// A total map of event structures; validity (configurations to
/// configurations, local injectivity) is checked by validate_map.
struct EsMap {
    const EventStructure* source = nullptr;
    const EventStructure* target = nullptr;
    std::vector<EventId> map; // indexed by source event

    EventId operator()(EventId e) const { return map[e]; }
    Config image(const Config& x) const;
};

ValidationReport validate_map(const EsMap& m, std::optional<int> max_size = std::nullopt);

/// Grounded causal chain: a ->-path from a minimal event; totally ordered
/// by causality, but not necessarily a configuration.
using Gcc = std::vector<EventId>;

std::vector<Gcc> gccs(const EventStructure& es);

/// Reconstructs an event structure from a family of configurations via the
/// prime construction. The family must contain the empty set and be stable:
/// closed under bounded unions and intersections. The result's events are
/// primes (minimal members of the family containing a given top event);
/// `config_of` maps a family member to the corresponding configuration of
/// the new structure, `rep` maps a prime back to its top event.
struct PrimeResult {
    EventStructure es;
    std::vector<Config> prime_sets;   // prime p (new event) -> set of old elements
    std::vector<EventId> prime_top;   // prime p -> its top old element
    std::vector<Config> family;       // the validated input family, sorted
    /// translate an old family member to a configuration of `es`
    Config config_of(const Config& member) const;
};

PrimeResult primes_from_family(const std::vector<Config>& family, bool verify_round_trip = true);

} // namespace gsp
