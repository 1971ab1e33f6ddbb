#pragma once

#include "gamespecies/dist.hpp"
#include "gamespecies/strategy.hpp"

namespace gsp {

/// A positive witness (theta_minus, x, theta_plus): theta_minus is a
/// negative symmetry from x_A to the display's A side, theta_plus a
/// positive symmetry from the display's B side to x_B.
struct Witness {
    SymBij theta_minus;
    Config x;
    SymBij theta_plus;
    bool operator<(const Witness& o) const
    {
        return std::tie(theta_minus, x, theta_plus) < std::tie(o.theta_minus, o.x, o.theta_plus);
    }
    bool operator==(const Witness& o) const
    {
        return theta_minus == o.theta_minus && x == o.x && theta_plus == o.theta_plus;
    }
};

/// all positive witnesses of sigma at (x_a, x_b)
std::vector<Witness> witnesses_at(const Strategy& sigma, const Config& xa, const Config& xb);

/// unique transport of a witness along boundary symmetries
/// omega_a : y_a ~= x_a and omega_b : x_b ~= y_b (Prop-style uniqueness via
/// the lifting lemma; requires sigma's symmetry family)
Witness witness_action(const Strategy& sigma, const SymBij& omega_a, const SymBij& omega_b,
                       const Witness& w);

/// The groupoid of configurations of a board with symmetries as morphisms;
/// restricted to complete configurations when complete_only is set.
struct BoardGroupoid {
    Game game;
    std::shared_ptr<FinGroupoid> g;
    std::vector<Config> objects;
    std::vector<SymBij> mor_bij;
    int obj_id(const Config& x) const;
    int mor_id(const SymBij& s) const;
};
BoardGroupoid board_groupoid(const Game& game, bool complete_only, size_t max_configs = 4000);

/// the collapse of a strategy to a distributor over configuration groupoids
struct CollapsedStrategy {
    BoardGroupoid ga, gb;
    Distributor dist;
    std::vector<Witness> wit; // aligned with distributor witness ids
    int witness_id(const Witness& w) const;
};
CollapsedStrategy collapse_strategy(const Strategy& sigma, bool complete_only,
                                    bool with_actions = true);

/// pid: the unitor iso collapse(cc_A) ~ identity distributor on the
/// configuration groupoid, with its inverse built by factorization
struct PidResult {
    bool ok = true;
    std::vector<std::string> notes;
    size_t witness_count = 0;
};
PidResult pid_check(const Game& a, bool complete_only = false);

/// pcomp: sends a witness of the composite to the coend class of its two
/// halves; reports injectivity/surjectivity point by point
struct PcompResult {
    size_t composite_witnesses = 0;
    size_t coend_classes = 0;
    bool injective = true;
    bool surjective = true;
    bool natural = true; // checked when actions are available
    std::vector<std::string> notes;
};
PcompResult pcomp_check(const Strategy& sigma, const Strategy& tau, bool complete_only,
                        bool check_naturality = false);

/// counts for a single point (the deadlock example exercises this)
struct PcompPointCount {
    size_t composite = 0;
    size_t coend = 0;
};
PcompPointCount pcomp_at(const Strategy& sigma, const Strategy& tau, const Config& xa,
                         const Config& xc);

/// the strict-board equivalence Sym(C0(A)) ~ C0(!A) packaged for the
/// adjoint-equivalence checker; fails exactly on non-strict boards such as
/// the empty one
struct BangSymEquivalence {
    BoardGroupoid base;      // C0(A)
    SymGroupoid sym;         // Sym(C0(A)) truncated
    BoardGroupoid banged;    // C0(!A)
    EquivalenceData data;    // L!, R!, unit, counit (-1 where missing)
    ValidationReport report;
};
BangSymEquivalence bang_sym_equivalence(const Game& a, int width, int max_len);

/// the arrow-side equivalence C0(A => B) ~ Sym(C0(A))^op x C0(B), checked
/// as a bijection on objects and morphism counts
ValidationReport arrow_equivalence_check(const Game& a, const Game& b, int width, int max_len);

/// Seely: C0(!(A & B)) ~ C0(!A (x) !B) as groupoids, object/morphism-level
ValidationReport seely_board_check(const Game& a, const Game& b, int width);

// --- Kleisli-level collapse ---

/// the pder iso on witnesses: (theta-, cc_z, theta+) |-> theta+ o theta-;
/// checked as a bijection onto the dereliction distributor's morphisms
ValidationReport pder_check(const Game& a, int width, int max_len);

/// the pprom iso on witnesses of collapse(sigma!), checked against the
/// promotion_dagger classes of collapse(sigma); width/maxlen must align
ValidationReport pprom_check(const Strategy& sigma, int width, int max_len);

/// Kleisli-level collapse of sigma in Wis[!A, B]: the species
/// [[sigma]]! = [[sigma]][L!_A] on (Sym(C0(A)), C0(B)).
struct KleisliCollapse {
    BoardGroupoid base_a;   // C0(A)
    SymGroupoid sym_a;      // Sym(C0(A))
    BoardGroupoid gb;       // C0(B)
    Distributor dist;
    std::vector<Witness> wit;
};
KleisliCollapse collapse_kleisli(const Strategy& sigma, int max_len);

/// witness count of the Kleisli collapse at a single (sequence, target)
/// point, computed directly on the boards (no groupoid materialization)
size_t kleisli_witness_count_at(const Strategy& sigma, const std::vector<Config>& ctx_seq,
                                const Config& xb, std::vector<Witness>* out = nullptr);

} // namespace gsp
