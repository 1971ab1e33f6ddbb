#include "gamespecies/games.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <sstream>

namespace gsp {

int payoff_tensor(int a, int b)
{
    if (a == -1 || b == -1)
        return -1;
    if (a == 1 || b == 1)
        return 1;
    return 0;
}

int payoff_par(int a, int b)
{
    if (a == 1 || b == 1)
        return 1;
    if (a == -1 || b == -1)
        return -1;
    return 0;
}

const EventStructure& Game::es() const { return n_->es; }
Polarity Game::pol(EventId e) const { return n_->pol[e]; }

bool Game::negative() const
{
    for (EventId e : es().minimal_events())
        if (pol(e) == Polarity::Pos)
            return false;
    return true;
}

int Game::payoff(const Config& x) const
{
    const GameNode& n = *n_;
    switch (n.kind) {
    case GameNode::Kind::Atom: {
        auto it = n.payoff_table.find(x);
        if (it == n.payoff_table.end())
            throw EsError("payoff of " + n.name + " undefined on " + config_to_string(x));
        return it->second;
    }
    case GameNode::Kind::Dual:
        return -n.child_l.payoff(x);
    case GameNode::Kind::Two: {
        auto [xl, xr] = split_two(*this, x);
        int a = n.child_l.payoff(xl);
        int b = n.child_r.payoff(xr);
        return n.two_op == GameNode::TwoOp::Tensor ? payoff_tensor(a, b) : payoff_par(a, b);
    }
    case GameNode::Kind::With: {
        if (x.empty())
            return 1;
        int side = n.side_or_copy[x[0]];
        return (side == 0 ? n.child_l : n.child_r).payoff(to_child_config(*this, side, x));
    }
    case GameNode::Kind::Bang: {
        int acc = 0;
        for (auto& [i, xi] : split_bang(*this, x))
            acc = payoff_tensor(acc, n.child_l.payoff(xi));
        return acc;
    }
    }
    throw EsError("unreachable");
}

std::vector<Config> Game::complete_configs() const
{
    std::vector<Config> out;
    for (const Config& x : es().configurations())
        if (complete(x))
            out.push_back(x);
    return out;
}

std::string Game::event_name(EventId e) const
{
    const GameNode& n = *n_;
    switch (n.kind) {
    case GameNode::Kind::Atom:
        return n.name.empty() ? std::to_string(e) : n.name + ":" + std::to_string(e);
    case GameNode::Kind::Dual:
        return n.child_l.event_name(e);
    case GameNode::Kind::Two:
        return (n.side_or_copy[e] == 0 ? "l." : "r.") +
               (n.side_or_copy[e] == 0 ? n.child_l : n.child_r).event_name(n.sub_event[e]);
    case GameNode::Kind::With:
        return (n.side_or_copy[e] == 0 ? "fst." : "snd.") +
               (n.side_or_copy[e] == 0 ? n.child_l : n.child_r).event_name(n.sub_event[e]);
    case GameNode::Kind::Bang:
        return std::to_string(n.side_or_copy[e]) + "." + n.child_l.event_name(n.sub_event[e]);
    }
    return std::to_string(e);
}

Game make_atom(std::string name, EventStructure es, std::vector<Polarity> pol,
               std::map<Config, int> payoff, IsoFamily total, IsoFamily neg, IsoFamily pos)
{
    if (static_cast<int>(pol.size()) != es.size())
        throw EsError("make_atom: polarity vector size mismatch");
    auto n = std::make_shared<GameNode>();
    n->kind = GameNode::Kind::Atom;
    n->name = std::move(name);
    n->es = std::move(es);
    n->pol = std::move(pol);
    n->payoff_table = std::move(payoff);
    n->fam_total = std::move(total);
    n->fam_neg = std::move(neg);
    n->fam_pos = std::move(pos);
    for (const Config& x : n->es.configurations())
        if (!n->payoff_table.count(x))
            throw EsError("make_atom: payoff missing for " + config_to_string(x));
    return Game(n);
}

Game game_o()
{
    EventStructure es(1, {}, {});
    return make_atom("o", es, {Polarity::Neg}, {{{}, 1}, {{0}, 0}});
}

Game game_bool()
{
    EventStructure es(3, {{0, 1}, {0, 2}}, {{1, 2}});
    return make_atom("bool", es, {Polarity::Neg, Polarity::Pos, Polarity::Pos},
                     {{{}, 1}, {{0}, -1}, {{0, 1}, 0}, {{0, 2}, 0}});
}

Game game_empty(int k, std::string name)
{
    return make_atom(std::move(name), EventStructure(0, {}, {}), {}, {{{}, k}});
}

Game dual(const Game& g)
{
    auto n = std::make_shared<GameNode>();
    n->kind = GameNode::Kind::Dual;
    n->child_l = g;
    n->es = g.es();
    n->pol.resize(g.size());
    for (EventId e = 0; e < g.size(); ++e)
        n->pol[e] = flip(g.pol(e));
    return Game(n);
}

static Game make_two(GameNode::TwoOp op, const Game& a, const Game& b, bool lolli_flag)
{
    auto n = std::make_shared<GameNode>();
    n->kind = GameNode::Kind::Two;
    n->two_op = op;
    n->lolli = lolli_flag;
    n->child_l = a;
    n->child_r = b;
    int nl = a.size(), nr = b.size();
    n->sub_event.resize(nl + nr);
    n->side_or_copy.resize(nl + nr);
    n->from_child.assign(2, {});
    n->from_child[0].resize(nl);
    n->from_child[1].resize(nr);
    for (EventId e = 0; e < nl; ++e) {
        n->sub_event[e] = e;
        n->side_or_copy[e] = 0;
        n->from_child[0][e] = e;
    }
    for (EventId e = 0; e < nr; ++e) {
        n->sub_event[nl + e] = e;
        n->side_or_copy[nl + e] = 1;
        n->from_child[1][e] = nl + e;
    }
    std::vector<std::pair<EventId, EventId>> cover, confl;
    for (auto [u, v] : a.es().cover_edges())
        cover.emplace_back(u, v);
    for (auto [u, v] : b.es().cover_edges())
        cover.emplace_back(nl + u, nl + v);
    for (auto [u, v] : a.es().conflict_pairs())
        confl.emplace_back(u, v);
    for (auto [u, v] : b.es().conflict_pairs())
        confl.emplace_back(nl + u, nl + v);
    if (lolli_flag) {
        auto mins = b.es().minimal_events();
        if (mins.size() != 1)
            throw EsError("lolli: right board must be pointed");
        EventId root = nl + mins[0];
        for (EventId m : a.es().minimal_events())
            cover.emplace_back(root, m);
    }
    n->es = EventStructure(nl + nr, cover, confl);
    n->pol.resize(nl + nr);
    for (EventId e = 0; e < nl; ++e)
        n->pol[e] = a.pol(e);
    for (EventId e = 0; e < nr; ++e)
        n->pol[nl + e] = b.pol(e);
    return Game(n);
}

Game tensor(const Game& a, const Game& b) { return make_two(GameNode::TwoOp::Tensor, a, b, false); }
Game par(const Game& a, const Game& b) { return make_two(GameNode::TwoOp::Par, a, b, false); }
Game hom(const Game& a, const Game& b) { return make_two(GameNode::TwoOp::Par, dual(a), b, false); }

Game with_prod(const Game& a, const Game& b)
{
    auto n = std::make_shared<GameNode>();
    n->kind = GameNode::Kind::With;
    n->child_l = a;
    n->child_r = b;
    int nl = a.size(), nr = b.size();
    n->sub_event.resize(nl + nr);
    n->side_or_copy.resize(nl + nr);
    n->from_child.assign(2, {});
    n->from_child[0].resize(nl);
    n->from_child[1].resize(nr);
    for (EventId e = 0; e < nl; ++e) {
        n->sub_event[e] = e;
        n->side_or_copy[e] = 0;
        n->from_child[0][e] = e;
    }
    for (EventId e = 0; e < nr; ++e) {
        n->sub_event[nl + e] = e;
        n->side_or_copy[nl + e] = 1;
        n->from_child[1][e] = nl + e;
    }
    std::vector<std::pair<EventId, EventId>> cover, confl;
    for (auto [u, v] : a.es().cover_edges())
        cover.emplace_back(u, v);
    for (auto [u, v] : b.es().cover_edges())
        cover.emplace_back(nl + u, nl + v);
    for (auto [u, v] : a.es().conflict_pairs())
        confl.emplace_back(u, v);
    for (auto [u, v] : b.es().conflict_pairs())
        confl.emplace_back(nl + u, nl + v);
    // cross-component conflict between minimal events; inheritance closes it
    for (EventId u : a.es().minimal_events())
        for (EventId v : b.es().minimal_events())
            confl.emplace_back(u, nl + v);
    n->es = EventStructure(nl + nr, cover, confl);
    n->pol.resize(nl + nr);
    for (EventId e = 0; e < nl; ++e)
        n->pol[e] = a.pol(e);
    for (EventId e = 0; e < nr; ++e)
        n->pol[nl + e] = b.pol(e);
    return Game(n);
}

Game bang(const Game& g, int width)
{
    if (width < 0)
        throw EsError("bang: negative width");
    if (!g.negative())
        throw EsError("bang: the exponential requires a negative game");
    auto n = std::make_shared<GameNode>();
    n->kind = GameNode::Kind::Bang;
    n->child_l = g;
    n->width = width;
    int nc = g.size();
    n->sub_event.resize(static_cast<size_t>(width) * nc);
    n->side_or_copy.resize(static_cast<size_t>(width) * nc);
    n->from_child.assign(width, std::vector<EventId>(nc));
    std::vector<std::pair<EventId, EventId>> cover, confl;
    for (int i = 0; i < width; ++i) {
        for (EventId e = 0; e < nc; ++e) {
            EventId own = i * nc + e;
            n->sub_event[own] = e;
            n->side_or_copy[own] = i;
            n->from_child[i][e] = own;
        }
        for (auto [u, v] : g.es().cover_edges())
            cover.emplace_back(i * nc + u, i * nc + v);
        for (auto [u, v] : g.es().conflict_pairs())
            confl.emplace_back(i * nc + u, i * nc + v);
    }
    n->es = EventStructure(width * nc, cover, confl);
    n->pol.resize(static_cast<size_t>(width) * nc);
    for (int i = 0; i < width; ++i)
        for (EventId e = 0; e < nc; ++e)
            n->pol[i * nc + e] = g.pol(e);
    return Game(n);
}

Game lolli(const Game& a, const Game& b)
{
    const GameNode& bn = b.node();
    if (bn.kind == GameNode::Kind::With) {
        // A -o (B1 & B2) = (A -o B1) & (A -o B2)
        return with_prod(lolli(a, bn.child_l), lolli(a, bn.child_r));
    }
    return make_two(GameNode::TwoOp::Par, dual(a), b, true);
}

Game arrow(const Game& a, const Game& b, int width) { return lolli(bang(a, width), b); }

Config to_child_config(const Game& g, int side_or_copy, const Config& x)
{
    const GameNode& n = g.node();
    Config out;
    for (EventId e : x)
        if (n.side_or_copy[e] == side_or_copy)
            out.push_back(n.sub_event[e]);
    return config_sorted(std::move(out));
}

Config from_child_config(const Game& g, int side_or_copy, const Config& x)
{
    const GameNode& n = g.node();
    Config out;
    out.reserve(x.size());
    for (EventId e : x)
        out.push_back(n.from_child[side_or_copy][e]);
    return config_sorted(std::move(out));
}

std::pair<Config, Config> split_two(const Game& g, const Config& x)
{
    return {to_child_config(g, 0, x), to_child_config(g, 1, x)};
}

std::map<int, Config> split_bang(const Game& g, const Config& x)
{
    const GameNode& n = g.node();
    std::map<int, Config> out;
    for (EventId e : x)
        out[n.side_or_copy[e]].push_back(n.sub_event[e]);
    for (auto& [i, c] : out)
        c = config_sorted(std::move(c));
    return out;
}

// ---------------------------------------------------------------------------
// structural symmetry queries

namespace {

std::vector<SymBij> atom_syms_from(const GameNode& n, const Config& x, SymClass c)
{
    const IsoFamily& fam = c == SymClass::Total ? n.fam_total
                           : c == SymClass::Neg ? n.fam_neg
                                                : n.fam_pos;
    return fam.with_dom(x); // includes the identity
}

std::vector<std::vector<int>> injections(const std::vector<int>& from, const std::vector<int>& to)
{
    // all injective maps from `from` (position-wise) into `to`
    std::vector<std::vector<int>> out;
    std::vector<int> cur(from.size(), -1);
    std::vector<char> used(to.size(), 0);
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == from.size()) {
            out.push_back(cur);
            return;
        }
        for (size_t j = 0; j < to.size(); ++j)
            if (!used[j]) {
                used[j] = 1;
                cur[i] = to[j];
                self(self, i + 1);
                used[j] = 0;
            }
    };
    rec(rec, 0);
    return out;
}

} // namespace

std::vector<SymBij> syms_from(const Game& g, const Config& x, SymClass c)
{
    const GameNode& n = g.node();
    switch (n.kind) {
    case GameNode::Kind::Atom:
        return atom_syms_from(n, x, c);
    case GameNode::Kind::Dual:
        return syms_from(n.child_l, x, flip(c));
    case GameNode::Kind::Two:
    case GameNode::Kind::With: {
        if (n.kind == GameNode::Kind::With && x.empty())
            return {SymBij::identity({})};
        if (n.kind == GameNode::Kind::With) {
            int side = n.side_or_copy[x[0]];
            std::vector<SymBij> out;
            for (const auto& s : syms_from(side == 0 ? n.child_l : n.child_r,
                                           to_child_config(g, side, x), c)) {
                std::vector<std::pair<EventId, EventId>> pairs;
                for (auto [u, v] : s.pairs())
                    pairs.emplace_back(n.from_child[side][u], n.from_child[side][v]);
                out.emplace_back(std::move(pairs));
            }
            return out;
        }
        auto [xl, xr] = split_two(g, x);
        std::vector<SymBij> ls = syms_from(n.child_l, xl, c);
        std::vector<SymBij> rs = syms_from(n.child_r, xr, c);
        std::vector<SymBij> out;
        for (const auto& sl : ls)
            for (const auto& sr : rs) {
                std::vector<std::pair<EventId, EventId>> pairs;
                for (auto [u, v] : sl.pairs())
                    pairs.emplace_back(n.from_child[0][u], n.from_child[0][v]);
                for (auto [u, v] : sr.pairs())
                    pairs.emplace_back(n.from_child[1][u], n.from_child[1][v]);
                SymBij cand{std::move(pairs)};
                if (n.lolli && !g.es().is_configuration(cand.cod()))
                    continue;
                out.push_back(std::move(cand));
            }
        return out;
    }
    case GameNode::Kind::Bang: {
        std::map<int, Config> parts = split_bang(g, x);
        std::vector<int> used;
        for (auto& [i, ci] : parts)
            used.push_back(i);
        std::vector<int> slots(n.width);
        for (int i = 0; i < n.width; ++i)
            slots[i] = i;
        std::vector<std::vector<int>> perms;
        if (c == SymClass::Pos)
            perms.push_back(used); // identity re-indexing only
        else
            perms = injections(used, slots);
        std::vector<SymBij> out;
        for (const auto& pi : perms) {
            // per-copy symmetries, combined as a product
            std::vector<std::vector<SymBij>> choices;
            for (size_t k = 0; k < used.size(); ++k)
                choices.push_back(syms_from(n.child_l, parts[used[k]], c));
            std::vector<size_t> pick(choices.size(), 0);
            auto emit = [&]() {
                std::vector<std::pair<EventId, EventId>> pairs;
                for (size_t k = 0; k < used.size(); ++k)
                    for (auto [u, v] : choices[k][pick[k]].pairs())
                        pairs.emplace_back(n.from_child[used[k]][u], n.from_child[pi[k]][v]);
                out.emplace_back(std::move(pairs));
            };
            // odometer over per-copy choices
            while (true) {
                emit();
                size_t k = 0;
                while (k < pick.size() && ++pick[k] == choices[k].size()) {
                    pick[k] = 0;
                    ++k;
                }
                if (k == pick.size())
                    break;
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    }
    throw EsError("unreachable");
}

std::vector<SymBij> syms_between(const Game& g, const Config& x, const Config& y, SymClass c)
{
    std::vector<SymBij> out;
    for (auto& s : syms_from(g, x, c))
        if (s.cod() == y)
            out.push_back(s);
    return out;
}

bool sym_in(const Game& g, const SymBij& s, SymClass c)
{
    const GameNode& n = g.node();
    if (!g.es().is_configuration(s.dom()) || !g.es().is_configuration(s.cod()))
        return false;
    switch (n.kind) {
    case GameNode::Kind::Atom: {
        const IsoFamily& fam = c == SymClass::Total ? n.fam_total
                               : c == SymClass::Neg ? n.fam_neg
                                                    : n.fam_pos;
        return fam.contains(s);
    }
    case GameNode::Kind::Dual:
        return sym_in(n.child_l, s, flip(c));
    case GameNode::Kind::Two: {
        std::vector<std::pair<EventId, EventId>> lp, rp;
        for (auto [u, v] : s.pairs()) {
            if (n.side_or_copy[u] != n.side_or_copy[v])
                return false;
            if (n.side_or_copy[u] == 0)
                lp.emplace_back(n.sub_event[u], n.sub_event[v]);
            else
                rp.emplace_back(n.sub_event[u], n.sub_event[v]);
        }
        return sym_in(n.child_l, SymBij(std::move(lp)), c) &&
               sym_in(n.child_r, SymBij(std::move(rp)), c);
    }
    case GameNode::Kind::With: {
        if (s.size() == 0)
            return true;
        int side = n.side_or_copy[s.pairs()[0].first];
        std::vector<std::pair<EventId, EventId>> p;
        for (auto [u, v] : s.pairs()) {
            if (n.side_or_copy[u] != side || n.side_or_copy[v] != side)
                return false;
            p.emplace_back(n.sub_event[u], n.sub_event[v]);
        }
        return sym_in(side == 0 ? n.child_l : n.child_r, SymBij(std::move(p)), c);
    }
    case GameNode::Kind::Bang: {
        std::map<int, int> pi;
        std::map<int, std::vector<std::pair<EventId, EventId>>> per_copy;
        for (auto [u, v] : s.pairs()) {
            int cu = n.side_or_copy[u], cv = n.side_or_copy[v];
            auto it = pi.find(cu);
            if (it == pi.end())
                pi[cu] = cv;
            else if (it->second != cv)
                return false;
            per_copy[cu].emplace_back(n.sub_event[u], n.sub_event[v]);
        }
        std::set<int> images;
        for (auto& [i, j] : pi) {
            if (!images.insert(j).second)
                return false; // not injective on copies
            if (c == SymClass::Pos && i != j)
                return false;
        }
        for (auto& [i, pairs] : per_copy)
            if (!sym_in(n.child_l, SymBij(pairs), c))
                return false;
        return true;
    }
    }
    throw EsError("unreachable");
}

IsoFamily materialize_family(const Game& g, SymClass c, size_t max_configs)
{
    std::vector<Config> confs = g.es().configurations();
    if (confs.size() > max_configs)
        throw EsError("materialize_family: game too large (" + std::to_string(confs.size()) +
                      " configurations)");
    std::vector<SymBij> all;
    for (const Config& x : confs)
        for (auto& s : syms_from(g, x, c))
            all.push_back(s);
    return IsoFamily(std::move(all));
}

ValidationReport validate_tcg(const Game& g, size_t max_configs)
{
    ValidationReport rep;
    IsoFamily total = materialize_family(g, SymClass::Total, max_configs);
    IsoFamily neg = materialize_family(g, SymClass::Neg, max_configs);
    IsoFamily pos = materialize_family(g, SymClass::Pos, max_configs);

    auto sub = validate_iso_family(g.es(), total);
    for (auto& v : sub.violations)
        rep.fail("tilde: " + v);
    sub = validate_iso_family(g.es(), neg);
    for (auto& v : sub.violations)
        rep.fail("tilde-: " + v);
    sub = validate_iso_family(g.es(), pos);
    for (auto& v : sub.violations)
        rep.fail("tilde+: " + v);

    for (const auto& s : neg.members())
        if (!total.contains(s))
            rep.fail("negative symmetry " + s.to_string() + " not in tilde");
    for (const auto& s : pos.members())
        if (!total.contains(s))
            rep.fail("positive symmetry " + s.to_string() + " not in tilde");

    // polarity preservation
    for (const auto& s : total.members())
        for (auto [u, v] : s.pairs())
            if (g.pol(u) != g.pol(v))
                rep.fail("symmetry " + s.to_string() + " does not preserve polarity");

    // (1) positive and negative intersect in identities
    for (const auto& s : pos.members())
        if (neg.contains(s) && !s.is_identity())
            rep.fail("both-polarity symmetry is not an identity: " + s.to_string());

    auto extends_with_pol = [&](const SymBij& small, const SymBij& big, Polarity p) {
        if (!big.extends(small))
            return false;
        for (auto [u, v] : big.pairs())
            if (!small.try_apply(u) && (g.pol(u) != p || g.pol(v) != p))
                return false;
        return true;
    };
    // (2) negative symmetries extended by negative pairs stay negative
    for (const auto& s : neg.members())
        for (const auto& t : total.members())
            if (extends_with_pol(s, t, Polarity::Neg) && !neg.contains(t))
                rep.fail("negative extension escapes tilde-: " + t.to_string());
    // (3) positive symmetries extended by positive pairs stay positive
    for (const auto& s : pos.members())
        for (const auto& t : total.members())
            if (extends_with_pol(s, t, Polarity::Pos) && !pos.contains(t))
                rep.fail("positive extension escapes tilde+: " + t.to_string());
    return rep;
}

ValidationReport validate_arena(const Game& g)
{
    ValidationReport rep;
    const EventStructure& es = g.es();
    for (EventId a = 0; a < es.size(); ++a)
        for (EventId b = 0; b < es.size(); ++b)
            for (EventId c = 0; c < es.size(); ++c)
                if (a != b && es.leq(a, c) && es.leq(b, c) && !es.leq(a, b) && !es.leq(b, a))
                    rep.fail("causes of " + std::to_string(c) + " are incomparable: " +
                             std::to_string(a) + ", " + std::to_string(b));
    for (auto [a, b] : es.cover_edges())
        if (g.pol(a) == g.pol(b))
            rep.fail("no alternation on " + std::to_string(a) + " -> " + std::to_string(b));
    return rep;
}

BoardReport board_report(const Game& g, size_t max_configs)
{
    BoardReport br;
    std::vector<Config> confs = g.es().configurations();
    if (confs.size() > max_configs)
        throw EsError("board_report: game too large");
    // payoff invariance under symmetry
    for (const Config& x : confs)
        for (auto& s : syms_from(g, x, SymClass::Total))
            if (g.payoff(x) != g.payoff(s.cod()))
                br.rep.fail("payoff not invariant along " + s.to_string());
    // race-freedom
    for (EventId a = 0; a < g.size(); ++a)
        for (EventId b = a + 1; b < g.size(); ++b)
            if (g.es().immediate_conflict(a, b) && g.pol(a) != g.pol(b))
                br.rep.fail("race between " + std::to_string(a) + " and " + std::to_string(b));
    br.negative = g.negative();
    int k0 = g.payoff({});
    br.initialized = k0 >= 0;
    if (br.negative && !br.initialized)
        br.rep.fail("negative board with kappa(empty) < 0");
    auto mins = g.es().minimal_events();
    bool pairwise_conflict = true;
    for (size_t i = 0; i < mins.size(); ++i)
        for (size_t j = i + 1; j < mins.size(); ++j)
            if (!g.es().conflict(mins[i], mins[j]))
                pairwise_conflict = false;
    br.strict = br.negative && k0 == 1 && pairwise_conflict;
    br.well_opened = br.strict && mins.size() == 1;
    return br;
}

std::pair<SymBij, SymBij> factorize(const Game& g, const SymBij& theta)
{
    if (!sym_in(g, theta, SymClass::Total))
        throw EsError("factorize: symmetry not in tilde");
    std::vector<std::pair<SymBij, SymBij>> found;
    for (auto& neg : syms_from(g, theta.dom(), SymClass::Neg)) {
        SymBij pos = neg.inverse().then(theta);
        if (sym_in(g, pos, SymClass::Pos))
            found.emplace_back(neg, pos);
    }
    if (found.empty())
        throw EsError("factorize: no positive-negative factorization (invalid tcg)");
    if (found.size() > 1)
        throw EsError("factorize: factorization not unique (invalid tcg)");
    return found[0];
}

NaturalEquiv natural_equiv(const EventStructure& source, const std::vector<EventId>& f,
                           const std::vector<EventId>& g, const Game& target)
{
    bool pos = true;
    for (const Config& x : source.configurations()) {
        std::vector<std::pair<EventId, EventId>> pairs;
        for (EventId e : x)
            pairs.emplace_back(f[e], g[e]);
        SymBij s{std::move(pairs)};
        if (!sym_in(target, s, SymClass::Total))
            return NaturalEquiv::None;
        if (!sym_in(target, s, SymClass::Pos))
            pos = false;
    }
    return pos ? NaturalEquiv::TildePos : NaturalEquiv::Tilde;
}

} // namespace gsp
