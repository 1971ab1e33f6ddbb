#include "gamespecies/strategy.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gsp {

HomView HomView::of(const Game& g)
{
    const GameNode& n = g.node();
    if (n.kind != GameNode::Kind::Two || n.two_op != GameNode::TwoOp::Par ||
        n.child_l.node().kind != GameNode::Kind::Dual)
        throw EsError("HomView: game is not of the form A |- B");
    HomView v;
    v.whole = g;
    v.A = n.child_l.node().child_l;
    v.B = n.child_r;
    v.nl = v.A.size();
    return v;
}

Config HomView::A_part(const Config& x) const
{
    Config out;
    for (EventId e : x)
        if (on_left(e))
            out.push_back(to_A(e));
    return out;
}

Config HomView::B_part(const Config& x) const
{
    Config out;
    for (EventId e : x)
        if (!on_left(e))
            out.push_back(to_B(e));
    return out;
}

Config HomView::embed(const Config& xa, const Config& xb) const
{
    Config out;
    for (EventId e : xa)
        out.push_back(from_A(e));
    for (EventId e : xb)
        out.push_back(from_B(e));
    return config_sorted(std::move(out));
}

SymBij HomView::A_part(const SymBij& s) const
{
    std::vector<std::pair<EventId, EventId>> p;
    for (auto [u, v] : s.pairs())
        if (on_left(u)) {
            if (!on_left(v))
                throw EsError("HomView: symmetry crosses sides");
            p.emplace_back(to_A(u), to_A(v));
        }
    return SymBij(std::move(p));
}

SymBij HomView::B_part(const SymBij& s) const
{
    std::vector<std::pair<EventId, EventId>> p;
    for (auto [u, v] : s.pairs())
        if (!on_left(u)) {
            if (on_left(v))
                throw EsError("HomView: symmetry crosses sides");
            p.emplace_back(to_B(u), to_B(v));
        }
    return SymBij(std::move(p));
}

bool structural_equal(const Game& a, const Game& b)
{
    if (a.ptr() == b.ptr())
        return true;
    const GameNode& x = a.node();
    const GameNode& y = b.node();
    if (x.kind != y.kind)
        return false;
    switch (x.kind) {
    case GameNode::Kind::Atom:
        return x.name == y.name && x.es.size() == y.es.size() &&
               x.es.cover_edges() == y.es.cover_edges() &&
               x.es.conflict_pairs() == y.es.conflict_pairs() && x.pol == y.pol &&
               x.payoff_table == y.payoff_table;
    case GameNode::Kind::Dual:
        return structural_equal(x.child_l, y.child_l);
    case GameNode::Kind::Two:
        return x.two_op == y.two_op && x.lolli == y.lolli &&
               structural_equal(x.child_l, y.child_l) && structural_equal(x.child_r, y.child_r);
    case GameNode::Kind::With:
        return structural_equal(x.child_l, y.child_l) && structural_equal(x.child_r, y.child_r);
    case GameNode::Kind::Bang:
        return x.width == y.width && structural_equal(x.child_l, y.child_l);
    }
    return false;
}

Config Strategy::display_config(const Config& x) const
{
    Config out;
    out.reserve(x.size());
    for (EventId s : x)
        out.push_back(display[s]);
    return config_sorted(std::move(out));
}

SymBij Strategy::display_bij(const Config& x) const
{
    std::vector<std::pair<EventId, EventId>> p;
    for (EventId s : x)
        p.emplace_back(s, display[s]);
    return SymBij(std::move(p));
}

SymBij Strategy::display_sym(const SymBij& s) const
{
    std::vector<std::pair<EventId, EventId>> p;
    for (auto [u, v] : s.pairs())
        p.emplace_back(display[u], display[v]);
    return SymBij(std::move(p));
}

Strategy make_strategy(EventStructure es, Game game, std::vector<EventId> display,
                       std::optional<IsoFamily> fam, std::string name)
{
    Strategy s;
    s.es = std::move(es);
    s.game = std::move(game);
    s.display = std::move(display);
    s.fam = std::move(fam);
    s.name = std::move(name);
    if (static_cast<int>(s.display.size()) != s.es.size())
        throw EsError("make_strategy: display not total");
    for (EventId e : s.display)
        if (e < 0 || e >= s.game.size())
            throw EsError("make_strategy: display out of range");
    return s;
}

std::vector<Config> plus_covered(const Strategy& s)
{
    if (s.plus_covered_cache)
        return *s.plus_covered_cache;
    std::vector<Config> out;
    for (const Config& x : s.es.configurations())
        if (is_plus_covered(s, x))
            out.push_back(x);
    return out;
}

bool is_plus_covered(const Strategy& s, const Config& x)
{
    for (EventId e : x) {
        bool maximal = true;
        for (EventId f : x)
            if (e != f && s.es.lt(e, f))
                maximal = false;
        if (maximal && s.pol(e) == Polarity::Neg)
            return false;
    }
    return true;
}

ValidationReport validate_strategy(const Strategy& s, bool check_symmetry)
{
    ValidationReport rep;
    EsMap dm{&s.es, &s.game.es(), s.display};
    auto mrep = validate_map(dm);
    for (auto& v : mrep.violations)
        rep.fail("display: " + v);
    if (!rep.ok)
        return rep;

    for (const Config& x : s.es.configurations()) {
        Config dx = s.display_config(x);
        // receptivity
        for (EventId a : s.game.es().enabled_events(dx)) {
            if (s.game.pol(a) != Polarity::Neg)
                continue;
            int count = 0;
            for (EventId e : s.es.enabled_events(x))
                if (s.display[e] == a)
                    ++count;
            if (count == 0)
                rep.fail("not receptive: " + config_to_string(x) + " refuses move " +
                         s.game.event_name(a));
            if (count > 1)
                rep.fail("receptivity not unique at " + config_to_string(x) + " on " +
                         s.game.event_name(a));
        }
    }
    // courtesy
    for (auto [u, v] : s.es.cover_edges())
        if (s.pol(u) == Polarity::Pos || s.pol(v) == Polarity::Neg)
            if (!s.game.es().covers(s.display[u], s.display[v]))
                rep.fail("courtesy violated on " + std::to_string(u) + " -> " +
                         std::to_string(v));

    if (check_symmetry && s.fam) {
        for (const auto& th : s.fam->members()) {
            SymBij d = s.display_sym(th);
            if (!sym_in(s.game, d, SymClass::Total))
                rep.fail("display does not preserve symmetry " + th.to_string());
            // thinness
            if (sym_in(s.game, d, SymClass::Pos) && !th.is_identity())
                rep.fail("thinness violated by " + th.to_string());
        }
        // symmetry-receptivity: a displayed symmetry extended by a pair of
        // negative moves is matched by a unique extension in the family
        for (const auto& th : s.fam->members()) {
            Config x = th.dom(), y = th.cod();
            Config dx = s.display_config(x), dy = s.display_config(y);
            SymBij d = s.display_sym(th);
            for (EventId a : s.game.es().enabled_events(dx)) {
                if (s.game.pol(a) != Polarity::Neg)
                    continue;
                for (EventId b : s.game.es().enabled_events(dy)) {
                    if (s.game.pol(b) != Polarity::Neg)
                        continue;
                    auto pairs = d.pairs();
                    pairs.emplace_back(a, b);
                    if (!sym_in(s.game, SymBij(pairs), SymClass::Total))
                        continue;
                    int found = 0;
                    for (EventId es_ : s.es.enabled_events(x)) {
                        if (s.display[es_] != a)
                            continue;
                        for (EventId et : s.es.enabled_events(y)) {
                            if (s.display[et] != b)
                                continue;
                            auto tp = th.pairs();
                            tp.emplace_back(es_, et);
                            if (s.fam->contains(SymBij(tp)))
                                ++found;
                        }
                    }
                    if (found != 1)
                        rep.fail("symmetry-receptivity fails at " + th.to_string() + " on (" +
                                 s.game.event_name(a) + ", " + s.game.event_name(b) + ")");
                }
            }
        }
    }
    return rep;
}

ValidationReport validate_visible(const Strategy& s)
{
    ValidationReport rep;
    // pointed: unique minimal ancestor, negative
    for (EventId e = 0; e < s.es.size(); ++e) {
        std::vector<EventId> mins;
        for (EventId m = 0; m < s.es.size(); ++m)
            if (s.es.minimal(m) && s.es.leq(m, e))
                mins.push_back(m);
        if (mins.size() != 1)
            rep.fail("event " + std::to_string(e) + " has " + std::to_string(mins.size()) +
                     " minimal ancestors");
        else if (s.pol(mins[0]) != Polarity::Neg)
            rep.fail("initial event " + std::to_string(mins[0]) + " is positive");
    }
    for (const Gcc& rho : gccs(s.es)) {
        Config img;
        for (EventId e : rho)
            img.push_back(s.display[e]);
        img = config_sorted(std::move(img));
        if (!s.game.es().is_configuration(img))
            rep.fail("gcc displays to a non-configuration: " + config_to_string(img));
    }
    return rep;
}

ValidationReport validate_winning(const Strategy& s)
{
    ValidationReport rep;
    for (const Config& x : plus_covered(s))
        if (s.game.payoff(s.display_config(x)) < 0)
            rep.fail("losing +-covered configuration " + config_to_string(x));
    return rep;
}

// ---------------------------------------------------------------------------
// copycat

namespace {

EventStructure copycat_es(const Game& a)
{
    int n = a.size();
    std::vector<std::pair<EventId, EventId>> cover, confl;
    for (auto [u, v] : a.es().cover_edges()) {
        cover.emplace_back(u, v);
        cover.emplace_back(n + u, n + v);
    }
    for (EventId e = 0; e < n; ++e) {
        if (a.pol(e) == Polarity::Pos)
            cover.emplace_back(e, n + e); // left occurrence is negative: plays first
        else
            cover.emplace_back(n + e, e);
    }
    for (auto [u, v] : a.es().conflict_pairs()) {
        confl.emplace_back(u, v);
        confl.emplace_back(n + u, n + v);
    }
    return EventStructure(2 * n, cover, confl);
}

IsoFamily copycat_family(const Game& a, const EventStructure& cces, size_t guard)
{
    std::vector<Config> confs = cces.configurations();
    if (confs.size() > guard)
        throw EsError("copycat_family: too many configurations");
    int n = a.size();
    std::vector<SymBij> members;
    for (const Config& c : confs) {
        Config xl, xr;
        for (EventId e : c)
            (e < n ? xl : xr).push_back(e < n ? e : e - n);
        for (auto& tl : syms_from(a, xl, SymClass::Total))
            for (auto& tr : syms_from(a, xr, SymClass::Total)) {
                // the two sides must agree on the common part
                bool agree = true;
                for (auto [u, v] : tl.pairs())
                    if (auto w = tr.try_apply(u); w && *w != v)
                        agree = false;
                if (!agree)
                    continue;
                std::vector<std::pair<EventId, EventId>> p;
                for (auto [u, v] : tl.pairs())
                    p.emplace_back(u, v);
                for (auto [u, v] : tr.pairs())
                    p.emplace_back(n + u, n + v);
                SymBij cand{std::move(p)};
                if (cces.is_configuration(cand.cod()))
                    members.push_back(std::move(cand));
            }
    }
    return IsoFamily(std::move(members));
}

} // namespace

Strategy copycat(const Game& a, bool materialize_fam)
{
    EventStructure es = copycat_es(a);
    Game g = hom(a, a);
    int n = a.size();
    std::vector<EventId> display(2 * n);
    for (EventId e = 0; e < 2 * n; ++e)
        display[e] = e; // hom(a, a) numbers left then right identically
    std::optional<IsoFamily> fam;
    if (materialize_fam)
        fam = copycat_family(a, es, 20000);
    return make_strategy(std::move(es), g, std::move(display), std::move(fam), "cc");
}

Config copycat_config(const Game& a, const Config& x)
{
    Config out;
    int n = a.size();
    for (EventId e : x) {
        out.push_back(e);
        out.push_back(n + e);
    }
    return config_sorted(std::move(out));
}

SymBij copycat_sym(const Game& a, const SymBij& theta)
{
    std::vector<std::pair<EventId, EventId>> p;
    int n = a.size();
    for (auto [u, v] : theta.pairs()) {
        p.emplace_back(u, v);
        p.emplace_back(n + u, n + v);
    }
    return SymBij(std::move(p));
}

// ---------------------------------------------------------------------------
// composition

namespace {

struct InteractionLabel {
    int kind;       // 0: sigma event over A, 1: synchronized, 2: tau event over C
    EventId s = -1; // sigma event
    EventId t = -1; // tau event
    bool operator<(const InteractionLabel& o) const
    {
        return std::tie(kind, s, t) < std::tie(o.kind, o.s, o.t);
    }
    bool operator==(const InteractionLabel& o) const
    {
        return kind == o.kind && s == o.s && t == o.t;
    }
};

struct Interaction {
    std::vector<InteractionLabel> labels; // sorted
    std::vector<std::vector<int>> succ;   // dag edges by label index
    bool acyclic = false;
};

// the interaction of a matched pair; theta mediates x^sigma_B -> x^tau_B
std::optional<Interaction> build_interaction(const Strategy& sigma, const Strategy& tau,
                                             const Config& xs, const SymBij& theta,
                                             const Config& xt)
{
    HomView hs = HomView::of(sigma.game);
    HomView ht = HomView::of(tau.game);
    std::map<EventId, EventId> tau_at; // game B event -> tau event
    for (EventId t : xt) {
        EventId d = tau.display[t];
        if (ht.on_left(d))
            tau_at[ht.to_A(d)] = t;
    }
    Interaction in;
    for (EventId s : xs) {
        EventId d = sigma.display[s];
        if (hs.on_left(d))
            in.labels.push_back({0, s, -1});
        else {
            EventId b = hs.to_B(d);
            auto tb = theta.try_apply(b);
            if (!tb)
                return std::nullopt;
            auto it = tau_at.find(*tb);
            if (it == tau_at.end())
                return std::nullopt;
            in.labels.push_back({1, s, it->second});
        }
    }
    for (EventId t : xt) {
        EventId d = tau.display[t];
        if (!ht.on_left(d))
            in.labels.push_back({2, -1, t});
    }
    std::sort(in.labels.begin(), in.labels.end());
    int m = static_cast<int>(in.labels.size());
    in.succ.assign(m, {});
    std::vector<int> indeg(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j)
                continue;
            const auto& u = in.labels[i];
            const auto& v = in.labels[j];
            bool edge = (u.s >= 0 && v.s >= 0 && sigma.es.lt(u.s, v.s)) ||
                        (u.t >= 0 && v.t >= 0 && tau.es.lt(u.t, v.t));
            if (edge) {
                in.succ[i].push_back(j);
                ++indeg[j];
            }
        }
    // Kahn's algorithm
    std::vector<int> stack;
    for (int i = 0; i < m; ++i)
        if (indeg[i] == 0)
            stack.push_back(i);
    int seen = 0;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        ++seen;
        for (int j : in.succ[i])
            if (--indeg[j] == 0)
                stack.push_back(j);
    }
    in.acyclic = (seen == m);
    return in;
}

} // namespace

bool secured(const Strategy& sigma, const Strategy& tau, const MatchedPair& p)
{
    HomView hs = HomView::of(sigma.game);
    HomView ht = HomView::of(tau.game);
    Config bs = hs.B_part(sigma.display_config(p.x_sigma));
    Config bt = ht.A_part(tau.display_config(p.x_tau));
    if (p.theta_b.dom() != bs || p.theta_b.cod() != bt)
        throw EsError("secured: pair is not matching");
    auto in = build_interaction(sigma, tau, p.x_sigma, p.theta_b, p.x_tau);
    if (!in)
        throw EsError("secured: synchronization failed");
    return in->acyclic;
}

std::optional<size_t> ComposeResult::find_pair(const Config& xs, const Config& xt) const
{
    for (size_t i = 0; i < pairs.size(); ++i)
        if (pairs[i].first == xs && pairs[i].second == xt)
            return i;
    return std::nullopt;
}

ComposeResult compose(const Strategy& sigma, const Strategy& tau, bool full)
{
    HomView hs = HomView::of(sigma.game);
    HomView ht = HomView::of(tau.game);
    if (!structural_equal(hs.B, ht.A))
        throw EsError("compose: middle games differ");
    Game target = hom(hs.A, ht.B);
    HomView hg = HomView::of(target);

    std::vector<Config> confs_s = full ? sigma.es.configurations() : plus_covered(sigma);
    std::vector<Config> confs_t = full ? tau.es.configurations() : plus_covered(tau);

    std::map<Config, std::vector<size_t>> by_b;
    for (size_t j = 0; j < confs_t.size(); ++j)
        by_b[ht.A_part(tau.display_config(confs_t[j]))].push_back(j);

    struct Kept {
        Config xs, xt;
        Interaction in;
        bool plus = false;
    };
    std::vector<Kept> kept;
    for (const Config& xs : confs_s) {
        Config b = hs.B_part(sigma.display_config(xs));
        auto it = by_b.find(b);
        if (it == by_b.end())
            continue;
        for (size_t j : it->second) {
            const Config& xt = confs_t[j];
            auto in = build_interaction(sigma, tau, xs, SymBij::identity(b), xt);
            if (!in || !in->acyclic)
                continue;
            kept.push_back({xs, xt, std::move(*in), false});
        }
    }
    for (auto& k : kept)
        k.plus = is_plus_covered(sigma, k.xs) && is_plus_covered(tau, k.xt);

    // primes of the visible projection, keyed by the full interaction
    // down-closure of their top event
    std::map<std::vector<InteractionLabel>, int> prime_id;
    std::vector<std::vector<InteractionLabel>> primes;
    std::vector<InteractionLabel> prime_top;
    auto ancestors = [](const Interaction& in, int i) {
        int m = static_cast<int>(in.labels.size());
        std::vector<char> mark(m, 0);
        std::vector<std::vector<int>> pred(m);
        for (int u = 0; u < m; ++u)
            for (int v : in.succ[u])
                pred[v].push_back(u);
        std::vector<int> stack = {i};
        mark[i] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int p : pred[u])
                if (!mark[p]) {
                    mark[p] = 1;
                    stack.push_back(p);
                }
        }
        std::vector<InteractionLabel> out;
        for (int u = 0; u < m; ++u)
            if (mark[u])
                out.push_back(in.labels[u]);
        return out;
    };

    std::vector<Config> kept_configs(kept.size());
    for (size_t ki = 0; ki < kept.size(); ++ki) {
        const auto& k = kept[ki];
        Config conf;
        for (int i = 0; i < static_cast<int>(k.in.labels.size()); ++i) {
            if (k.in.labels[i].kind == 1)
                continue; // hidden
            auto ds = ancestors(k.in, i);
            auto it = prime_id.find(ds);
            int id;
            if (it == prime_id.end()) {
                id = static_cast<int>(primes.size());
                prime_id[ds] = id;
                primes.push_back(ds);
                prime_top.push_back(k.in.labels[i]);
            } else
                id = it->second;
            conf.push_back(id);
        }
        kept_configs[ki] = config_sorted(std::move(conf));
    }

    int n = static_cast<int>(primes.size());
    auto subset = [](const std::vector<InteractionLabel>& a,
                     const std::vector<InteractionLabel>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            leq[a][b] = (a == b) || subset(primes[a], primes[b]);
    std::vector<std::pair<EventId, EventId>> cover, confl;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || !leq[a][b])
                continue;
            bool imm = true;
            for (int c = 0; c < n && imm; ++c)
                if (c != a && c != b && leq[a][c] && leq[c][b])
                    imm = false;
            if (imm)
                cover.emplace_back(a, b);
        }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (leq[a][b] || leq[b][a])
                continue;
            bool together = false;
            for (size_t ki = 0; ki < kept.size() && !together; ++ki)
                if (subset(primes[a], kept[ki].in.labels) &&
                    subset(primes[b], kept[ki].in.labels))
                    together = true;
            if (!together)
                confl.emplace_back(a, b);
        }

    EventStructure ces(n, cover, confl);
    std::vector<EventId> display(n);
    for (int p = 0; p < n; ++p) {
        const auto& top = prime_top[p];
        if (top.kind == 0)
            display[p] = hg.from_A(hs.to_A(sigma.display[top.s]));
        else
            display[p] = hg.from_B(ht.to_B(tau.display[top.t]));
    }

    if (full) {
        // the configuration family of the constructed es must coincide with
        // the visible projections of the secured matched pairs
        std::vector<Config> want = kept_configs;
        std::sort(want.begin(), want.end());
        want.erase(std::unique(want.begin(), want.end()), want.end());
        std::vector<Config> got = ces.configurations();
        std::sort(got.begin(), got.end());
        if (got != want)
            throw EsError("compose: hidden interaction does not form an event structure "
                          "with binary conflict");
    }

    std::optional<IsoFamily> fam;
    if (full && sigma.fam && tau.fam) {
        std::vector<SymBij> members;
        for (size_t ki = 0; ki < kept.size(); ++ki)
            for (size_t kj = 0; kj < kept.size(); ++kj)
                for (const auto& ps : sigma.fam->between(kept[ki].xs, kept[kj].xs))
                    for (const auto& pt : tau.fam->between(kept[ki].xt, kept[kj].xt)) {
                        SymBij dsb = hs.B_part(sigma.display_sym(ps));
                        SymBij dtb = ht.A_part(tau.display_sym(pt));
                        if (dsb != dtb)
                            continue;
                        std::vector<std::pair<EventId, EventId>> pp;
                        bool good = true;
                        for (EventId pe : kept_configs[ki]) {
                            std::vector<InteractionLabel> img;
                            for (const auto& l : primes[pe]) {
                                InteractionLabel m = l;
                                if (l.s >= 0)
                                    m.s = ps.apply(l.s);
                                if (l.t >= 0)
                                    m.t = pt.apply(l.t);
                                img.push_back(m);
                            }
                            std::sort(img.begin(), img.end());
                            auto it = prime_id.find(img);
                            if (it == prime_id.end()) {
                                good = false;
                                break;
                            }
                            pp.emplace_back(pe, it->second);
                        }
                        if (good)
                            members.emplace_back(std::move(pp));
                    }
        fam = IsoFamily(std::move(members));
    }

    ComposeResult out;
    out.strat = make_strategy(std::move(ces), target, std::move(display), std::move(fam),
                              tau.name + "." + sigma.name);
    if (!full) {
        std::vector<Config> pc;
        for (size_t ki = 0; ki < kept.size(); ++ki)
            if (kept[ki].plus)
                pc.push_back(kept_configs[ki]);
        std::sort(pc.begin(), pc.end());
        pc.erase(std::unique(pc.begin(), pc.end()), pc.end());
        out.strat.plus_covered_cache = std::move(pc);
    }
    for (size_t ki = 0; ki < kept.size(); ++ki)
        if (kept[ki].plus) {
            out.plus_configs.push_back(kept_configs[ki]);
            out.pairs.emplace_back(kept[ki].xs, kept[ki].xt);
        }
    return out;
}

SymComposite compose_up_to_sym(const Strategy& sigma, const Strategy& tau, const MatchedPair& p)
{
    if (!sigma.fam || !tau.fam)
        throw EsError("compose_up_to_sym: strategies need materialized families");
    HomView hs = HomView::of(sigma.game);
    HomView ht = HomView::of(tau.game);
    {
        Config bs = hs.B_part(sigma.display_config(p.x_sigma));
        Config bt = ht.A_part(tau.display_config(p.x_tau));
        if (p.theta_b.dom() != bs || p.theta_b.cod() != bt)
            throw EsError("compose_up_to_sym: pair is not matching");
        auto in = build_interaction(sigma, tau, p.x_sigma, p.theta_b, p.x_tau);
        if (!in || !in->acyclic)
            throw EsError("compose_up_to_sym: pair not secured");
    }
    std::vector<SymComposite> found;
    for (const auto& phis : sigma.fam->with_dom(p.x_sigma))
        for (const auto& phit : tau.fam->with_dom(p.x_tau)) {
            SymBij da = hs.A_part(sigma.display_sym(phis));
            SymBij db_s = hs.B_part(sigma.display_sym(phis));
            SymBij db_t = ht.A_part(tau.display_sym(phit));
            SymBij dc = ht.B_part(tau.display_sym(phit));
            if (!sym_in(hs.A, da, SymClass::Neg))
                continue;
            if (!sym_in(ht.B, dc, SymClass::Pos))
                continue;
            // phi^tau_B o theta = phi^sigma_B
            if (p.theta_b.then(db_t) != db_s)
                continue;
            Config ys = phis.cod(), yt = phit.cod();
            if (hs.B_part(sigma.display_config(ys)) != ht.A_part(tau.display_config(yt)))
                continue;
            found.push_back({ys, yt, phis, phit});
        }
    if (found.empty())
        throw EsError("compose_up_to_sym: no canonical composite found");
    if (found.size() > 1)
        throw EsError("compose_up_to_sym: canonical composite not unique");
    return found[0];
}

Lifting lift_symmetry(const Strategy& s, const Config& x, const SymBij& psi)
{
    if (!s.fam)
        throw EsError("lift_symmetry: strategy has no materialized family");
    if (psi.dom() != s.display_config(x))
        throw EsError("lift_symmetry: psi does not start at the display of x");
    std::vector<Lifting> found;
    for (const auto& phi : s.fam->with_dom(x)) {
        SymBij dphi = s.display_sym(phi);
        SymBij theta_plus = dphi.inverse().then(psi);
        if (sym_in(s.game, theta_plus, SymClass::Pos))
            found.push_back({phi, theta_plus});
    }
    if (found.empty())
        throw EsError("lift_symmetry: no lifting (symmetry-receptivity fails)");
    if (found.size() > 1)
        throw EsError("lift_symmetry: lifting not unique (strategy not thin)");
    return found[0];
}

Strategy tensor_strategies(const Strategy& s, const Strategy& t, bool full)
{
    HomView hs = HomView::of(s.game);
    HomView ht = HomView::of(t.game);
    Game target = hom(tensor(hs.A, ht.A), tensor(hs.B, ht.B));
    HomView hg = HomView::of(target);
    const Game& ta = hg.A;
    const Game& tb = hg.B;

    int ns = s.es.size();
    int nt = t.es.size();
    std::vector<std::pair<EventId, EventId>> cover, confl;
    for (auto [u, v] : s.es.cover_edges())
        cover.emplace_back(u, v);
    for (auto [u, v] : t.es.cover_edges())
        cover.emplace_back(ns + u, ns + v);
    for (auto [u, v] : s.es.conflict_pairs())
        confl.emplace_back(u, v);
    for (auto [u, v] : t.es.conflict_pairs())
        confl.emplace_back(ns + u, ns + v);
    EventStructure es(ns + nt, cover, confl);

    std::vector<EventId> display(ns + nt);
    for (EventId e = 0; e < ns; ++e) {
        EventId d = s.display[e];
        display[e] = hs.on_left(d)
                         ? hg.from_A(ta.node().from_child[0][hs.to_A(d)])
                         : hg.from_B(tb.node().from_child[0][hs.to_B(d)]);
    }
    for (EventId e = 0; e < nt; ++e) {
        EventId d = t.display[e];
        display[ns + e] = ht.on_left(d)
                              ? hg.from_A(ta.node().from_child[1][ht.to_A(d)])
                              : hg.from_B(tb.node().from_child[1][ht.to_B(d)]);
    }

    std::optional<IsoFamily> fam;
    if (full && s.fam && t.fam) {
        std::vector<SymBij> members;
        for (const auto& a : s.fam->members())
            for (const auto& b : t.fam->members()) {
                std::vector<std::pair<EventId, EventId>> pr;
                for (auto [u, v] : a.pairs())
                    pr.emplace_back(u, v);
                for (auto [u, v] : b.pairs())
                    pr.emplace_back(ns + u, ns + v);
                members.emplace_back(std::move(pr));
            }
        fam = IsoFamily(std::move(members));
    }
    Strategy out = make_strategy(std::move(es), target, std::move(display), std::move(fam),
                                 s.name + "*" + t.name);
    if (s.plus_covered_cache || t.plus_covered_cache) {
        std::vector<Config> pc;
        for (const Config& x : plus_covered(s))
            for (const Config& y : plus_covered(t)) {
                Config c = x;
                for (EventId e : y)
                    c.push_back(ns + e);
                pc.push_back(config_sorted(std::move(c)));
            }
        std::sort(pc.begin(), pc.end());
        out.plus_covered_cache = std::move(pc);
    }
    return out;
}

// ---------------------------------------------------------------------------
// exponential structure

int promotion_stride(const Strategy& sigma)
{
    HomView h = HomView::of(sigma.game);
    const GameNode& bn = h.A.node();
    if (bn.kind != GameNode::Kind::Bang)
        throw EsError("promotion: strategy source is not a bang");
    int jmax = 0;
    for (EventId e = 0; e < sigma.es.size(); ++e) {
        EventId d = sigma.display[e];
        if (h.on_left(d))
            jmax = std::max(jmax, bn.side_or_copy[h.to_A(d)]);
    }
    return jmax + 1;
}

Strategy promotion(const Strategy& sigma, int width, bool materialize)
{
    HomView h = HomView::of(sigma.game);
    const GameNode& bn = h.A.node();
    if (bn.kind != GameNode::Kind::Bang)
        throw EsError("promotion: strategy source is not a bang");
    Game inner_a = bn.child_l;
    int stride = promotion_stride(sigma);
    Game left = bang(inner_a, width * stride);
    Game right = bang(h.B, width);
    Game target = hom(left, right);
    HomView hg = HomView::of(target);

    int ns = sigma.es.size();
    std::vector<std::pair<EventId, EventId>> cover, confl;
    for (int i = 0; i < width; ++i) {
        for (auto [u, v] : sigma.es.cover_edges())
            cover.emplace_back(i * ns + u, i * ns + v);
        for (auto [u, v] : sigma.es.conflict_pairs())
            confl.emplace_back(i * ns + u, i * ns + v);
    }
    EventStructure es(width * ns, cover, confl);
    std::vector<EventId> display(static_cast<size_t>(width) * ns);
    for (int i = 0; i < width; ++i)
        for (EventId e = 0; e < ns; ++e) {
            EventId d = sigma.display[e];
            if (h.on_left(d)) {
                EventId a = h.to_A(d);
                int j = bn.side_or_copy[a];
                EventId sub = bn.sub_event[a];
                display[i * ns + e] = hg.from_A(left.node().from_child[i * stride + j][sub]);
            } else {
                display[i * ns + e] = hg.from_B(right.node().from_child[i][h.to_B(d)]);
            }
        }

    std::optional<IsoFamily> fam;
    if (materialize && sigma.fam) {
        // all (pi, (phi_i)): injective copy re-indexings with per-copy
        // symmetries from sigma's family
        std::vector<SymBij> members = {SymBij::identity({})};
        std::vector<Config> confs = sigma.es.configurations();
        std::vector<Config> nonempty;
        for (const auto& c : confs)
            if (!c.empty())
                nonempty.push_back(c);
        // enumerate used copy subsets
        std::vector<std::vector<int>> subsets = {{}};
        for (int i = 0; i < width; ++i) {
            size_t m = subsets.size();
            for (size_t k = 0; k < m; ++k) {
                auto s2 = subsets[k];
                s2.push_back(i);
                subsets.push_back(std::move(s2));
            }
        }
        for (const auto& used : subsets) {
            if (used.empty())
                continue;
            // per-copy symmetries with nonempty domains
            std::vector<SymBij> per;
            for (const Config& c : nonempty)
                for (const auto& ph : sigma.fam->with_dom(c))
                    per.push_back(ph);
            // injections of `used` into [0, width)
            std::vector<std::vector<int>> imgs;
            {
                std::vector<int> cur(used.size());
                std::vector<char> taken(width, 0);
                auto rec2 = [&](auto&& self2, size_t k) -> void {
                    if (k == used.size()) {
                        imgs.push_back(cur);
                        return;
                    }
                    for (int v = 0; v < width; ++v)
                        if (!taken[v]) {
                            taken[v] = 1;
                            cur[k] = v;
                            self2(self2, k + 1);
                            taken[v] = 0;
                        }
                };
                rec2(rec2, 0);
            }
            std::vector<size_t> pick(used.size(), 0);
            for (const auto& img : imgs) {
                std::fill(pick.begin(), pick.end(), 0);
                while (true) {
                    std::vector<std::pair<EventId, EventId>> pr;
                    for (size_t k = 0; k < used.size(); ++k)
                        for (auto [u, v] : per[pick[k]].pairs())
                            pr.emplace_back(used[k] * ns + u, img[k] * ns + v);
                    members.emplace_back(std::move(pr));
                    size_t k = 0;
                    while (k < pick.size() && ++pick[k] == per.size()) {
                        pick[k] = 0;
                        ++k;
                    }
                    if (k == pick.size())
                        break;
                }
            }
        }
        fam = IsoFamily(std::move(members));
    }

    Strategy out = make_strategy(std::move(es), target, std::move(display), std::move(fam),
                                 sigma.name + "!");
    // +-covered configurations are families of nonempty +-covered ones
    std::vector<Config> nonempty;
    for (const auto& c : plus_covered(sigma))
        if (!c.empty())
            nonempty.push_back(c);
    std::vector<Config> pc = {{}};
    auto recf = [&](auto&& self, int start, const Config& acc) -> void {
        for (int i = start; i < width; ++i)
            for (const Config& c : nonempty) {
                Config next = acc;
                for (EventId e : c)
                    next.push_back(i * ns + e);
                next = config_sorted(std::move(next));
                pc.push_back(next);
                self(self, i + 1, next);
            }
    };
    recf(recf, 0, {});
    std::sort(pc.begin(), pc.end());
    pc.erase(std::unique(pc.begin(), pc.end()), pc.end());
    out.plus_covered_cache = std::move(pc);
    return out;
}

Strategy dereliction(const Game& a, int left_width, bool materialize_fam)
{
    Game left = bang(a, left_width);
    Game target = hom(left, a);
    HomView hg = HomView::of(target);
    EventStructure es = copycat_es(a);
    int n = a.size();
    std::vector<EventId> display(2 * n);
    for (EventId e = 0; e < n; ++e) {
        display[e] = hg.from_A(left.node().from_child[0][e]); // copy index 0
        display[n + e] = hg.from_B(e);
    }
    std::optional<IsoFamily> fam;
    if (materialize_fam)
        fam = copycat_family(a, es, 20000);
    return make_strategy(std::move(es), target, std::move(display), std::move(fam), "der");
}

Strategy projection(const Game& a, const Game& b, int which, int left_width,
                    bool materialize_fam)
{
    Game w = with_prod(a, b);
    Game left = bang(w, left_width);
    const Game& comp = which == 0 ? a : b;
    Game target = hom(left, comp);
    HomView hg = HomView::of(target);
    EventStructure es = copycat_es(comp);
    int n = comp.size();
    std::vector<EventId> display(2 * n);
    for (EventId e = 0; e < n; ++e) {
        EventId in_w = w.node().from_child[which][e];
        display[e] = hg.from_A(left.node().from_child[0][in_w]);
        display[n + e] = hg.from_B(e);
    }
    std::optional<IsoFamily> fam;
    if (materialize_fam)
        fam = copycat_family(comp, es, 20000);
    return make_strategy(std::move(es), target, std::move(display), std::move(fam),
                         which == 0 ? "pi1" : "pi2");
}

Strategy pairing(const Strategy& sigma, const Strategy& tau)
{
    HomView hs = HomView::of(sigma.game);
    HomView ht = HomView::of(tau.game);
    if (!structural_equal(hs.A, ht.A))
        throw EsError("pairing: context games differ");
    Game right = with_prod(hs.B, ht.B);
    Game target = hom(hs.A, right);
    HomView hg = HomView::of(target);

    int ns = sigma.es.size(), nt = tau.es.size();
    std::vector<std::pair<EventId, EventId>> cover, confl;
    for (auto [u, v] : sigma.es.cover_edges())
        cover.emplace_back(u, v);
    for (auto [u, v] : tau.es.cover_edges())
        cover.emplace_back(ns + u, ns + v);
    for (auto [u, v] : sigma.es.conflict_pairs())
        confl.emplace_back(u, v);
    for (auto [u, v] : tau.es.conflict_pairs())
        confl.emplace_back(ns + u, ns + v);
    for (EventId u : sigma.es.minimal_events())
        for (EventId v : tau.es.minimal_events())
            confl.emplace_back(u, ns + v);
    EventStructure es(ns + nt, cover, confl);

    std::vector<EventId> display(ns + nt);
    for (EventId e = 0; e < ns; ++e) {
        EventId d = sigma.display[e];
        display[e] = hs.on_left(d) ? d : hg.from_B(right.node().from_child[0][hs.to_B(d)]);
    }
    for (EventId e = 0; e < nt; ++e) {
        EventId d = tau.display[e];
        display[ns + e] =
            ht.on_left(d) ? d : hg.from_B(right.node().from_child[1][ht.to_B(d)]);
    }

    std::optional<IsoFamily> fam;
    if (sigma.fam && tau.fam) {
        std::vector<SymBij> members;
        for (const auto& s : sigma.fam->members())
            members.push_back(s);
        for (const auto& t : tau.fam->members()) {
            std::vector<std::pair<EventId, EventId>> pr;
            for (auto [u, v] : t.pairs())
                pr.emplace_back(ns + u, ns + v);
            members.emplace_back(std::move(pr));
        }
        fam = IsoFamily(std::move(members));
    }
    Strategy out = make_strategy(std::move(es), target, std::move(display), std::move(fam),
                                 "<" + sigma.name + "," + tau.name + ">");
    if (sigma.plus_covered_cache || tau.plus_covered_cache) {
        std::vector<Config> pc = {{}};
        for (const Config& x : plus_covered(sigma))
            if (!x.empty())
                pc.push_back(x);
        for (const Config& y : plus_covered(tau))
            if (!y.empty()) {
                Config c;
                for (EventId e : y)
                    c.push_back(ns + e);
                pc.push_back(config_sorted(std::move(c)));
            }
        std::sort(pc.begin(), pc.end());
        out.plus_covered_cache = std::move(pc);
    }
    return out;
}

Strategy evaluation(const Game& fun_board, const Game& arg_board,
                    const std::vector<EventId>& emb, int left_width)
{
    // fun_board = lolli(bang(A', wa), B)
    const GameNode& fn = fun_board.node();
    if (fn.kind != GameNode::Kind::Two || !fn.lolli)
        throw EsError("evaluation: function board is not a linear arrow");
    Game banged_arg = fn.child_l.node().child_l; // under the Dual
    const GameNode& bn = banged_arg.node();
    if (bn.kind != GameNode::Kind::Bang)
        throw EsError("evaluation: function board is not of the form !A' -o B");
    Game b_board = fn.child_r;
    Game w = with_prod(fun_board, arg_board);
    Game left = bang(w, left_width);
    Game target = hom(left, b_board);
    HomView hg = HomView::of(target);

    EventStructure es = copycat_es(fun_board);
    int nf = fun_board.size();
    std::vector<EventId> display(2 * nf);
    for (EventId e = 0; e < nf; ++e) {
        // left occurrence: the function itself, copy index 0, component i1
        display[e] = hg.from_A(left.node().from_child[0][w.node().from_child[0][e]]);
        // right occurrence: B moves to the result, !A' moves to argument copies
        if (fn.side_or_copy[e] == 1) {
            display[nf + e] = hg.from_B(fn.sub_event[e]);
        } else {
            EventId in_bang = fn.sub_event[e]; // event of bang(A', wa)
            int j = bn.side_or_copy[in_bang];
            EventId ap = bn.sub_event[in_bang]; // event of A'
            EventId a_ev = emb[ap];             // event of the argument board
            if (1 + j >= left_width)
                throw EsError("evaluation: left width too small for argument copies");
            display[nf + e] =
                hg.from_A(left.node().from_child[1 + j][w.node().from_child[1][a_ev]]);
        }
    }
    return make_strategy(std::move(es), target, std::move(display), std::nullopt, "ev");
}

Strategy currying(const Strategy& sigma, const Game& gamma, const Game& a, int arg_width)
{
    HomView h = HomView::of(sigma.game);
    const GameNode& bn = h.A.node();
    if (bn.kind != GameNode::Kind::Bang)
        throw EsError("currying: source is not a bang");
    const GameNode& wn = bn.child_l.node();
    if (wn.kind != GameNode::Kind::With)
        throw EsError("currying: source is not !(Gamma & A)");
    int width = bn.width;
    Game left = bang(gamma, width);
    Game fun = lolli(bang(a, arg_width), h.B);
    Game target = hom(left, fun);
    HomView hg = HomView::of(target);
    Game fun_bang = fun.node().child_l.node().child_l;

    std::vector<EventId> display(sigma.es.size());
    for (EventId e = 0; e < sigma.es.size(); ++e) {
        EventId d = sigma.display[e];
        if (!h.on_left(d)) {
            display[e] = hg.from_B(fun.node().from_child[1][h.to_B(d)]);
        } else {
            EventId in_bang = h.to_A(d);
            int k = bn.side_or_copy[in_bang];
            EventId in_w = bn.sub_event[in_bang];
            int side = wn.side_or_copy[in_w];
            EventId sub = wn.sub_event[in_w];
            if (side == 0) {
                display[e] = hg.from_A(left.node().from_child[k][sub]);
            } else {
                if (k >= arg_width)
                    throw EsError("currying: argument width too small");
                display[e] =
                    hg.from_B(fun.node().from_child[0][fun_bang.node().from_child[k][sub]]);
            }
        }
    }
    Strategy out = make_strategy(sigma.es, target, std::move(display), sigma.fam,
                                 "curry(" + sigma.name + ")");
    out.plus_covered_cache = sigma.plus_covered_cache;
    for (const Config& x : plus_covered(out))
        if (!target.es().is_configuration(out.display_config(x)))
            throw EsError("currying: display image is not a configuration");
    return out;
}

// ---------------------------------------------------------------------------
// iso search

namespace {

std::string orbit_key(const Game& g, EventId e)
{
    const GameNode& n = g.node();
    switch (n.kind) {
    case GameNode::Kind::Atom:
        return "a" + std::to_string(e);
    case GameNode::Kind::Dual:
        return "d" + orbit_key(n.child_l, e);
    case GameNode::Kind::Two:
        return (n.side_or_copy[e] == 0 ? "l" : "r") +
               orbit_key(n.side_or_copy[e] == 0 ? n.child_l : n.child_r, n.sub_event[e]);
    case GameNode::Kind::With:
        return (n.side_or_copy[e] == 0 ? "1" : "2") +
               orbit_key(n.side_or_copy[e] == 0 ? n.child_l : n.child_r, n.sub_event[e]);
    case GameNode::Kind::Bang:
        return "*" + orbit_key(n.child_l, n.sub_event[e]); // copy index erased
    }
    return {};
}

} // namespace

std::optional<PlusIso> iso_check(const Strategy& s, const Strategy& t)
{
    if (!structural_equal(s.game, t.game))
        return std::nullopt;
    if (s.es.size() != t.es.size())
        return std::nullopt;
    int n = s.es.size();
    std::vector<std::string> ks(n), kt(n);
    for (EventId e = 0; e < n; ++e) {
        ks[e] = orbit_key(s.game, s.display[e]);
        kt[e] = orbit_key(t.game, t.display[e]);
    }
    {
        auto a = ks;
        auto b = kt;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            return std::nullopt;
    }
    std::vector<EventId> order;
    {
        std::vector<int> indeg(n, 0);
        for (auto [u, v] : s.es.cover_edges())
            ++indeg[v];
        std::vector<EventId> st;
        for (EventId e = 0; e < n; ++e)
            if (indeg[e] == 0)
                st.push_back(e);
        while (!st.empty()) {
            EventId e = st.back();
            st.pop_back();
            order.push_back(e);
            for (EventId v : s.es.cover_successors(e))
                if (--indeg[v] == 0)
                    st.push_back(v);
        }
    }
    std::vector<EventId> f(n, -1), finv(n, -1);
    std::vector<Config> s_plus = plus_covered(s);
    std::vector<Config> t_plus = plus_covered(t);
    std::sort(t_plus.begin(), t_plus.end());

    auto ok_final = [&]() {
        for (EventId a = 0; a < n; ++a)
            for (EventId b = 0; b < n; ++b) {
                if (s.es.leq(a, b) != t.es.leq(f[a], f[b]))
                    return false;
                if (s.es.conflict(a, b) != t.es.conflict(f[a], f[b]))
                    return false;
            }
        std::vector<Config> imgs;
        for (const Config& x : s_plus) {
            Config y;
            for (EventId e : x)
                y.push_back(f[e]);
            imgs.push_back(config_sorted(std::move(y)));
        }
        std::sort(imgs.begin(), imgs.end());
        if (imgs != t_plus)
            return false;
        // display commutes up to positive symmetry, configuration by
        // configuration
        std::vector<Config> check_on =
            (s.skeleton() || t.skeleton()) ? s_plus : s.es.configurations();
        for (const Config& x : check_on) {
            std::vector<std::pair<EventId, EventId>> pr;
            for (EventId e : x)
                pr.emplace_back(s.display[e], t.display[f[e]]);
            if (!sym_in(s.game, SymBij(std::move(pr)), SymClass::Pos))
                return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, size_t i) -> bool {
        if (i == order.size())
            return ok_final();
        EventId e = order[i];
        for (EventId c = 0; c < n; ++c) {
            if (finv[c] != -1 || kt[c] != ks[e])
                continue;
            bool good = true;
            for (EventId p : s.es.cover_predecessors(e))
                if (f[p] == -1 || !t.es.lt(f[p], c))
                    good = false;
            if (!good)
                continue;
            f[e] = c;
            finv[c] = e;
            if (self(self, i + 1))
                return true;
            f[e] = -1;
            finv[c] = -1;
        }
        return false;
    };
    if (!rec(rec, 0))
        return std::nullopt;
    PlusIso iso;
    for (const Config& x : s_plus) {
        Config y;
        for (EventId e : x)
            y.push_back(f[e]);
        iso.map.emplace_back(x, config_sorted(std::move(y)));
    }
    return iso;
}

} // namespace gsp
