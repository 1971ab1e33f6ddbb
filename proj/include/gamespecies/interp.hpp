#pragma once

#include "gamespecies/lambda.hpp"

namespace gsp::lam {

/// Shape of a truncated universal arena: an ordered list of argument
/// slots, each carrying a copy width and the shape of one copy.
struct UShape {
    std::vector<std::pair<int, UShape>> slots;
    bool operator==(const UShape& o) const { return slots == o.slots; }
    bool operator<(const UShape& o) const { return slots < o.slots; }
    std::string to_string() const;
    int depth() const;
};

/// shape of a type: one slot per -o layer, widths from family sizes
UShape shape_of(const DObj& a);
/// pointwise join (max widths, slotwise recursive join), capped in depth
UShape shape_join(const UShape& a, const UShape& b, int depth_cap = 16);

/// the truncated arena of a shape: lolli(tensor of bangs, o) built
/// right-nested; the empty shape is the one-move board o
Game u_board(const UShape& s);

/// events of u_board(small) embedded into u_board(big); small must be a
/// prefix of big (slotwise, widths and copy shapes below)
std::vector<EventId> embed_board(const UShape& small, const UShape& big);

/// R^U on objects: the complete configuration of u_board(shape)
/// representing a type (empty argument sequences collapse away)
Config point_config(const DObj& a, const UShape& shape);
/// L^U on objects: read a configuration back as a type
DObj config_point(const Config& x, const UShape& shape);
/// L^U on morphisms: translate a board symmetry between two complete
/// configurations to a morphism of the extensional model
DMor u_sym_to_dmor(const SymBij& s, const UShape& shape);

struct Interpretation {
    Strategy strat;  // skeleton strategy on !Gamma |- u_board(result_shape)
    Game ctx_board;  // Gamma: top & U_{x1} & ... & U_{xn}
    std::vector<UShape> var_shapes;
    UShape result_shape;
    std::vector<std::string> vars;
};

/// compositional interpretation of a term at a point, strategies built via
/// projections, pairing, currying, evaluation, promotion and composition,
/// with the reflexive-object unfolding realized as display re-tagging
Interpretation interpret_game(const TermPtr& m, const std::vector<std::string>& vars,
                              const Point& point, int width_slack = 0);

/// positive witnesses of the interpretation at the point
std::vector<Witness> game_witnesses(const Interpretation& in, const Point& point);

struct CorrespondenceResult {
    size_t itd_classes = 0;
    size_t game_witnesses = 0;
    bool counts_equal = false;
    bool bijection_valid = false; // orbit-validated greedy matching
    std::vector<std::string> notes;
};
CorrespondenceResult correspondence_check(const TermPtr& m, const std::vector<std::string>& vars,
                                          const Point& point, int width_slack = 0);

} // namespace gsp::lam
