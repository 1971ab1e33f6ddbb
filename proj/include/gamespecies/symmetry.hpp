#pragma once

#include "gamespecies/es.hpp"

#include <map>
#include <optional>

namespace gsp {

/// A bijection between two configurations, stored as pairs sorted by the
/// domain event. Equality is pair-set equality.
class SymBij {
public:
    SymBij() = default;
    explicit SymBij(std::vector<std::pair<EventId, EventId>> pairs);
    static SymBij identity(const Config& x);

    const std::vector<std::pair<EventId, EventId>>& pairs() const { return pairs_; }
    Config dom() const;
    Config cod() const;
    EventId apply(EventId e) const;
    std::optional<EventId> try_apply(EventId e) const;
    size_t size() const { return pairs_.size(); }
    bool is_identity() const;

    SymBij inverse() const;
    /// this then other: other(this(e)); requires cod(this) == dom(other).
    SymBij then(const SymBij& other) const;
    /// restriction to a sub-domain (which must be included in dom()).
    SymBij restrict_dom(const Config& sub) const;
    bool extends(const SymBij& smaller) const;

    bool operator==(const SymBij& o) const { return pairs_ == o.pairs_; }
    bool operator!=(const SymBij& o) const { return pairs_ != o.pairs_; }
    bool operator<(const SymBij& o) const { return pairs_ < o.pairs_; }

    std::string to_string() const;

private:
    std::vector<std::pair<EventId, EventId>> pairs_;
};

/// An isomorphism family stored extensionally: a finite set of symmetries
/// over the configurations of an event structure. Identities over every
/// configuration of the carrier are implicit members.
class IsoFamily {
public:
    IsoFamily() = default;
    explicit IsoFamily(std::vector<SymBij> symmetries);

    bool contains(const SymBij& s) const;
    const std::vector<SymBij>& members() const { return all_; }
    std::vector<SymBij> with_dom(const Config& x) const;
    std::vector<SymBij> between(const Config& x, const Config& y) const;

    /// closes the set under inverse and composition (not under the
    /// restriction/extension axioms, which depend on the carrier's
    /// configurations and are checked by validate_iso_family).
    static IsoFamily groupoid_closure(std::vector<SymBij> generators);

    bool operator==(const IsoFamily& o) const { return all_ == o.all_; }

private:
    std::vector<SymBij> all_; // sorted, unique
};

/// Checks the isomorphism-family axioms over `es`: identities present,
/// groupoid closure, the restriction axiom and the extension axiom.
ValidationReport validate_iso_family(const EventStructure& es, const IsoFamily& fam,
                                     std::optional<int> max_size = std::nullopt);

/// Composition inside a family; throws if inputs or the composite escape it.
SymBij sym_compose(const IsoFamily& fam, const SymBij& first, const SymBij& second);
SymBij sym_invert(const IsoFamily& fam, const SymBij& s);

} // namespace gsp
