#pragma once

#include "gamespecies/strategy.hpp"

namespace gsp::fixtures {

/// two-move request/acknowledge game: q- then tick+
inline Game game_u()
{
    EventStructure es(2, {{0, 1}}, {});
    return make_atom("U", es, {Polarity::Neg, Polarity::Pos},
                     {{{}, 1}, {{0}, -1}, {{0, 1}, 0}});
}

/// q- then 0+ (a one-result natural-number game)
inline Game game_n()
{
    EventStructure es(2, {{0, 1}}, {});
    return make_atom("N", es, {Polarity::Neg, Polarity::Pos},
                     {{{}, 1}, {{0}, -1}, {{0, 1}, 0}});
}

/// strict-call strategy on U -o U: asks its argument and waits for the
/// acknowledgement before acknowledging (the left half of the deadlock
/// example). Seen as a strategy from the empty game.
inline Strategy deadlock_sigma()
{
    Game gs = lolli(game_u(), game_u());
    Game target = hom(game_empty(0, "I"), gs);
    // events: right q, left q, left tick, right tick, in causal order
    EventStructure es(4, {{0, 1}, {1, 2}, {2, 3}}, {});
    return make_strategy(es, target, {2, 0, 1, 3}, IsoFamily{}, "sigma_fig1");
}

/// the right half: calls its function argument, then calls the function's
/// argument, but only acknowledges after the function acknowledges
inline Strategy deadlock_tau()
{
    Game gs = lolli(game_u(), game_u());
    Game target = hom(gs, game_n());
    // events: qN, fun right q, fun left q, fun left tick, fun right tick, 0N
    EventStructure es(6, {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {4, 3}, {4, 5}}, {});
    return make_strategy(es, target, {4, 2, 0, 1, 3, 5}, IsoFamily{}, "tau_fig1");
}

/// the deadlocked matched point: full configurations on both sides
inline MatchedPair deadlock_pair()
{
    return {{0, 1, 2, 3}, SymBij::identity({0, 1, 2, 3}), {0, 1, 2, 3, 4, 5}};
}

/// answering strategy on the boolean game: answers `which` (1 = tt, 2 = ff)
inline Strategy bool_answer(int which)
{
    Game target = hom(game_empty(0, "I"), game_bool());
    EventStructure es(2, {{0, 1}}, {});
    return make_strategy(es, target, {0, which}, IsoFamily{},
                         which == 1 ? "tt_strat" : "ff_strat");
}

/// the strategy of the text: answers tt by two conflicting events
inline Strategy bool_both_tt()
{
    Game target = hom(game_empty(0, "I"), game_bool());
    EventStructure es(3, {{0, 1}, {0, 2}}, {{1, 2}});
    return make_strategy(es, target, {0, 1, 1}, IsoFamily{}, "tt_tt");
}

} // namespace gsp::fixtures
