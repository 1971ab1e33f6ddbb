#pragma once

#include "gamespecies/es.hpp"
#include "gamespecies/symmetry.hpp"

#include <map>
#include <memory>

namespace gsp {

enum class Polarity : uint8_t { Neg, Pos };
inline Polarity flip(Polarity p) { return p == Polarity::Neg ? Polarity::Pos : Polarity::Neg; }

enum class SymClass : uint8_t { Total, Neg, Pos };
inline SymClass flip(SymClass c)
{
    if (c == SymClass::Neg)
        return SymClass::Pos;
    if (c == SymClass::Pos)
        return SymClass::Neg;
    return SymClass::Total;
}

/// Payoff values live in {-1, 0, +1}; kappa == 0 marks complete positions.
int payoff_tensor(int a, int b);
int payoff_par(int a, int b);

struct GameNode;

/// A game-with-symmetry-and-payoff (plain game, tcg and board in one type:
/// plain games have trivial payoff, boards are validated by board_report).
/// Value type over an immutable shared node.
class Game {
public:
    Game() = default;
    explicit Game(std::shared_ptr<const GameNode> n) : n_(std::move(n)) {}

    bool valid() const { return n_ != nullptr; }
    const GameNode& node() const { return *n_; }
    const std::shared_ptr<const GameNode>& ptr() const { return n_; }

    const EventStructure& es() const;
    Polarity pol(EventId e) const;
    int size() const { return es().size(); }
    bool negative() const; // all minimal events negative

    int payoff(const Config& x) const;
    bool complete(const Config& x) const { return payoff(x) == 0; }
    std::vector<Config> complete_configs() const;

    /// Human-readable structured name of an event, e.g. "l.b1:q".
    std::string event_name(EventId e) const;

private:
    std::shared_ptr<const GameNode> n_;
};

struct GameNode {
    enum class Kind { Atom, Dual, Two, With, Bang };
    enum class TwoOp { Tensor, Par };

    Kind kind = Kind::Atom;
    EventStructure es;
    std::vector<Polarity> pol;

    // Atom
    std::string name;
    std::map<Config, int> payoff_table;
    IsoFamily fam_total, fam_neg, fam_pos; // explicit; identities implicit

    // Dual/Two/With/Bang
    Game child_l, child_r; // Dual/Bang use child_l only
    TwoOp two_op = TwoOp::Tensor;
    bool lolli = false; // Two with the extra dependency on the right root
    int width = 0;      // Bang

    // event translation (Two/With: side 0 = left child, 1 = right child;
    // Bang: copy index). Dual shares the child's event ids.
    std::vector<EventId> sub_event; // own event -> child event
    std::vector<int> side_or_copy;  // own event -> side / copy
    std::vector<std::vector<EventId>> from_child; // [side/copy][child event] -> own
};

/// Atom constructor; payoff table must cover every configuration.
Game make_atom(std::string name, EventStructure es, std::vector<Polarity> pol,
               std::map<Config, int> payoff, IsoFamily total = {}, IsoFamily neg = {},
               IsoFamily pos = {});

/// one negative move *, kappa(empty)=1, kappa({*})=0 (strict, well-opened)
Game game_o();
/// call-by-name booleans: q- then tt+ # ff+
Game game_bool();
/// empty board with kappa(empty) = k (0: monoidal unit I, 1: terminal top)
Game game_empty(int k, std::string name);

Game dual(const Game& g);
Game tensor(const Game& a, const Game& b);
Game par(const Game& a, const Game& b);
Game hom(const Game& a, const Game& b); // a |- b
Game with_prod(const Game& a, const Game& b);
Game bang(const Game& g, int width);
/// linear arrow; b must be pointed-strict or a With of such (distributes)
Game lolli(const Game& a, const Game& b);
Game arrow(const Game& a, const Game& b, int width); // !a -o b

// --- configuration plumbing for constructed games ---
Config to_child_config(const Game& g, int side_or_copy, const Config& x);
Config from_child_config(const Game& g, int side_or_copy, const Config& x);
/// splits a configuration of a Two node into its two sides (as child configs)
std::pair<Config, Config> split_two(const Game& g, const Config& x);
/// splits a configuration of a Bang node into per-copy child configs
std::map<int, Config> split_bang(const Game& g, const Config& x);

// --- symmetry queries, computed structurally ---
std::vector<SymBij> syms_between(const Game& g, const Config& x, const Config& y, SymClass c);
std::vector<SymBij> syms_from(const Game& g, const Config& x, SymClass c);
bool sym_in(const Game& g, const SymBij& s, SymClass c);

/// Materializes a symmetry class as an explicit family over all
/// configurations; throws if the game is too large.
IsoFamily materialize_family(const Game& g, SymClass c, size_t max_configs = 4000);

// --- validators ---
ValidationReport validate_tcg(const Game& g, size_t max_configs = 4000);
ValidationReport validate_arena(const Game& g);
struct BoardReport {
    ValidationReport rep;
    bool negative = false;
    bool initialized = false;
    bool strict = false;
    bool well_opened = false;
};
BoardReport board_report(const Game& g, size_t max_configs = 4000);

/// Lemma: every symmetry of a tcg factors uniquely as positive after
/// negative; found by search, uniqueness asserted.
std::pair<SymBij, SymBij> factorize(const Game& g, const SymBij& theta);

enum class NaturalEquiv { None, Tilde, TildePos };
/// Compares two maps of ess into `target`: ~ if all composite bijections
/// g o f^-1 land in the symmetry, ~+ if they are positive.
NaturalEquiv natural_equiv(const EventStructure& source, const std::vector<EventId>& f,
                           const std::vector<EventId>& g, const Game& target);

} // namespace gsp
