#pragma once

#include "gamespecies/games.hpp"

#include <optional>

namespace gsp {

/// View of a hom game A |- B, giving event translation between the whole
/// game and its two components.
struct HomView {
    Game whole, A, B;
    int nl = 0;

    static HomView of(const Game& g);
    bool on_left(EventId e) const { return e < nl; }
    EventId to_A(EventId e) const { return e; }
    EventId to_B(EventId e) const { return e - nl; }
    EventId from_A(EventId e) const { return e; }
    EventId from_B(EventId e) const { return e + nl; }
    Config A_part(const Config& x) const;
    Config B_part(const Config& x) const;
    Config embed(const Config& xa, const Config& xb) const;
    SymBij A_part(const SymBij& s) const;
    SymBij B_part(const SymBij& s) const;
};

bool structural_equal(const Game& a, const Game& b);

/// A strategy: an event structure with a display map into a game. The
/// symmetry family is optional (materialized for small strategies, omitted
/// for the large compositional interpretations). If `plus_covered_cache`
/// is set, the event structure is only the skeleton generated by these
/// configurations and receptivity-style validators do not apply.
struct Strategy {
    EventStructure es;
    Game game;
    std::vector<EventId> display;
    std::optional<IsoFamily> fam;
    std::optional<std::vector<Config>> plus_covered_cache;
    std::string name;

    Polarity pol(EventId s) const { return game.pol(display[s]); }
    Config display_config(const Config& x) const;
    SymBij display_bij(const Config& x) const; // x -> display(x), as pairs
    SymBij display_sym(const SymBij& s) const; // image bijection on displays
    bool skeleton() const { return plus_covered_cache.has_value(); }
};

Strategy make_strategy(EventStructure es, Game game, std::vector<EventId> display,
                       std::optional<IsoFamily> fam = std::nullopt, std::string name = {});

/// receptivity + courtesy; with a family also display symmetry-preservation,
/// symmetry-receptivity and thinness
ValidationReport validate_strategy(const Strategy& s, bool check_symmetry = true);
ValidationReport validate_visible(const Strategy& s);
ValidationReport validate_winning(const Strategy& s);

std::vector<Config> plus_covered(const Strategy& s);
bool is_plus_covered(const Strategy& s, const Config& x);

/// copycat on A, as a strategy on A |- A, with its canonical symmetry
/// family when materialize_fam is set.
Strategy copycat(const Game& a, bool materialize_fam = true);

/// cc_x for x a configuration of A: the +-covered copycat configuration
Config copycat_config(const Game& a, const Config& x);
/// the +-covered copycat symmetry cc_theta with display theta |- theta
SymBij copycat_sym(const Game& a, const SymBij& theta);

// --- composition ---

/// matching pair of +-covered configurations with a mediating symmetry
struct MatchedPair {
    Config x_sigma;
    SymBij theta_b; // x^sigma_B -> x^tau_B, identity for plain matching
    Config x_tau;
};

/// the secured (causal-compatibility) check of the composition
bool secured(const Strategy& sigma, const Strategy& tau, const MatchedPair& p);

struct ComposeResult {
    Strategy strat;
    // Prop-style order-iso data: +-covered composite configurations aligned
    // with their causally compatible pairs
    std::vector<Config> plus_configs;
    std::vector<std::pair<Config, Config>> pairs; // (x_sigma, x_tau)
    std::optional<size_t> find_pair(const Config& xs, const Config& xt) const;
};

/// tau . sigma for sigma: A |- B, tau: B |- C. In full mode the whole
/// configuration family is constructed (exact event structure and symmetry
/// family); in skeleton mode only +-covered data is materialized.
ComposeResult compose(const Strategy& sigma, const Strategy& tau, bool full = true);

/// Unique composite configuration up to symmetry for a secured triple;
/// returns (composite index into a ComposeResult over the same strategies,
/// phi_sigma, phi_tau).
struct SymComposite {
    Config y_sigma, y_tau;
    SymBij phi_sigma, phi_tau;
};
SymComposite compose_up_to_sym(const Strategy& sigma, const Strategy& tau, const MatchedPair& p);

// --- symmetry lifting (thin strategies) ---
struct Lifting {
    SymBij phi;        // x ~=_sigma z
    SymBij theta_plus; // display(z) ~=+ y
};
Lifting lift_symmetry(const Strategy& s, const Config& x, const SymBij& psi);

// --- tensor ---
Strategy tensor_strategies(const Strategy& s, const Strategy& t, bool full = true);

// --- exponential / cartesian-closed tool kit ---

/// promotion of sigma in Wis[!A, B] with `width` output copies; the target
/// is hom(bang(A, width*stride), bang(B, width)) where stride covers the
/// copy indices sigma uses on its left
Strategy promotion(const Strategy& sigma, int width, bool materialize = true);
/// copy-index packing used by promotion
int promotion_stride(const Strategy& sigma);

Strategy dereliction(const Game& a, int left_width, bool materialize_fam = true);

/// first/second projection in Wis[!(A & B), A or B]
Strategy projection(const Game& a, const Game& b, int which, int left_width,
                    bool materialize_fam = true);
/// pairing of sigma in Wis[!G, A] and tau in Wis[!G, B]
Strategy pairing(const Strategy& sigma, const Strategy& tau);
/// evaluation in Wis[!((A' => B) & A), B] where fun_board = A' => B =
/// lolli(bang(A', wa), B). `emb` embeds A' events into the argument board A
/// (identity when A' == A); the forwarding copycat covers the common part.
Strategy evaluation(const Game& fun_board, const Game& arg_board,
                    const std::vector<EventId>& emb, int left_width);
/// currying: sigma in Wis[!(G & A), B] to Wis[!G, A => B]
Strategy currying(const Strategy& sigma, const Game& gamma, const Game& a, int arg_width);

/// positive isomorphism search between strategies on the same game: an
/// order-iso of +-covered families commuting with display up to positive
/// symmetry.
struct PlusIso {
    std::vector<std::pair<Config, Config>> map; // x in C+(s) -> image in C+(t)
};
std::optional<PlusIso> iso_check(const Strategy& s, const Strategy& t);

} // namespace gsp
