#include "gamespecies/dist.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gsp {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n)
    {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<int>> permutations(int n)
{
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do
        out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace

int FinGroupoid::then(int f, int g) const
{
    auto it = comp.find({f, g});
    if (it == comp.end())
        throw EsError("groupoid: morphisms not composable");
    return it->second;
}

std::vector<int> FinGroupoid::hom(int a, int b) const
{
    std::vector<int> out;
    for (int m = 0; m < static_cast<int>(mors.size()); ++m)
        if (mors[m].dom == a && mors[m].cod == b)
            out.push_back(m);
    return out;
}

ValidationReport validate_groupoid(const FinGroupoid& g)
{
    ValidationReport rep;
    int nm = static_cast<int>(g.mors.size());
    if (static_cast<int>(g.identity.size()) != g.n_objects)
        rep.fail("missing identities");
    for (int a = 0; a < g.n_objects && rep.ok; ++a) {
        int i = g.identity[a];
        if (g.dom(i) != a || g.cod(i) != a)
            rep.fail("identity endpoint mismatch at " + g.obj_name(a));
    }
    for (int f = 0; f < nm; ++f)
        for (int h = 0; h < nm; ++h) {
            bool composable = g.cod(f) == g.dom(h);
            bool present = g.comp.count({f, h}) > 0;
            if (composable != present) {
                rep.fail("composition table shape wrong");
                continue;
            }
            if (!composable)
                continue;
            int fh = g.then(f, h);
            if (g.dom(fh) != g.dom(f) || g.cod(fh) != g.cod(h))
                rep.fail("composite endpoints wrong");
        }
    if (!rep.ok)
        return rep;
    for (int f = 0; f < nm; ++f) {
        if (g.then(g.identity[g.dom(f)], f) != f || g.then(f, g.identity[g.cod(f)]) != f)
            rep.fail("unit law fails at morphism " + std::to_string(f));
        int i = g.inverse[f];
        if (g.then(f, i) != g.identity[g.dom(f)] || g.then(i, f) != g.identity[g.cod(f)])
            rep.fail("inverse law fails at morphism " + std::to_string(f));
        for (int h = 0; h < nm; ++h) {
            if (g.cod(f) != g.dom(h))
                continue;
            for (int k = 0; k < nm; ++k) {
                if (g.cod(h) != g.dom(k))
                    continue;
                if (g.then(g.then(f, h), k) != g.then(f, g.then(h, k)))
                    rep.fail("associativity fails");
            }
        }
    }
    return rep;
}

FinGroupoid trivial_groupoid()
{
    FinGroupoid g;
    g.n_objects = 1;
    g.obj_names = {"*"};
    g.mors = {{0, 0, "id"}};
    g.identity = {0};
    g.inverse = {0};
    g.comp[{0, 0}] = 0;
    return g;
}

FinGroupoid discrete_groupoid(int n)
{
    FinGroupoid g;
    g.n_objects = n;
    for (int a = 0; a < n; ++a) {
        g.mors.push_back({a, a, "id_" + std::to_string(a)});
        g.identity.push_back(a);
        g.inverse.push_back(a);
        g.comp[{a, a}] = a;
        g.obj_names.push_back(std::to_string(a));
    }
    return g;
}

FinGroupoid empty_groupoid()
{
    FinGroupoid g;
    g.n_objects = 0;
    return g;
}

FinGroupoid sum_groupoid(const FinGroupoid& a, const FinGroupoid& b)
{
    FinGroupoid g;
    g.n_objects = a.n_objects + b.n_objects;
    int ma = static_cast<int>(a.mors.size());
    for (const auto& m : a.mors)
        g.mors.push_back({m.dom, m.cod, "l." + m.name});
    for (const auto& m : b.mors)
        g.mors.push_back({a.n_objects + m.dom, a.n_objects + m.cod, "r." + m.name});
    for (int x = 0; x < a.n_objects; ++x) {
        g.identity.push_back(a.identity[x]);
        g.obj_names.push_back("l." + a.obj_name(x));
    }
    for (int x = 0; x < b.n_objects; ++x) {
        g.identity.push_back(ma + b.identity[x]);
        g.obj_names.push_back("r." + b.obj_name(x));
    }
    for (int m = 0; m < ma; ++m)
        g.inverse.push_back(a.inverse[m]);
    for (size_t m = 0; m < b.mors.size(); ++m)
        g.inverse.push_back(ma + b.inverse[m]);
    for (auto& [k, v] : a.comp)
        g.comp[k] = v;
    for (auto& [k, v] : b.comp)
        g.comp[{k.first + ma, k.second + ma}] = v + ma;
    return g;
}

FinGroupoid product_groupoid(const FinGroupoid& a, const FinGroupoid& b)
{
    FinGroupoid g;
    g.n_objects = a.n_objects * b.n_objects;
    auto obj = [&](int x, int y) { return x * b.n_objects + y; };
    std::map<std::pair<int, int>, int> mid;
    for (size_t m = 0; m < a.mors.size(); ++m)
        for (size_t k = 0; k < b.mors.size(); ++k) {
            mid[{static_cast<int>(m), static_cast<int>(k)}] = static_cast<int>(g.mors.size());
            g.mors.push_back({obj(a.mors[m].dom, b.mors[k].dom),
                              obj(a.mors[m].cod, b.mors[k].cod),
                              "(" + a.mors[m].name + "," + b.mors[k].name + ")"});
        }
    for (int x = 0; x < a.n_objects; ++x)
        for (int y = 0; y < b.n_objects; ++y) {
            g.identity.push_back(mid[{a.identity[x], b.identity[y]}]);
            g.obj_names.push_back("(" + a.obj_name(x) + "," + b.obj_name(y) + ")");
        }
    for (size_t m = 0; m < a.mors.size(); ++m)
        for (size_t k = 0; k < b.mors.size(); ++k)
            g.inverse.push_back(mid[{a.inverse[m], b.inverse[k]}]);
    for (auto& [k1, v1] : a.comp)
        for (auto& [k2, v2] : b.comp)
            g.comp[{mid[{k1.first, k2.first}], mid[{k1.second, k2.second}]}] = mid[{v1, v2}];
    return g;
}

FinGroupoid op_groupoid(const FinGroupoid& a)
{
    FinGroupoid g = a;
    for (auto& m : g.mors)
        std::swap(m.dom, m.cod);
    g.comp.clear();
    for (auto& [k, v] : a.comp)
        g.comp[{k.second, k.first}] = v;
    return g;
}

const std::vector<int>& Distributor::at(int a, int b) const
{
    static const std::vector<int> none;
    auto it = witnesses.find({a, b});
    return it == witnesses.end() ? none : it->second;
}

int Distributor::act_right(int w, int f) const
{
    auto it = right_action.find({w, f});
    if (it == right_action.end())
        throw EsError("distributor: right action undefined");
    return it->second;
}

int Distributor::act_left(int w, int g) const
{
    auto it = left_action.find({w, g});
    if (it == left_action.end())
        throw EsError("distributor: left action undefined");
    return it->second;
}

int Distributor::add_witness(int a, int b, std::string name)
{
    int id = n_witnesses();
    wit_point.emplace_back(a, b);
    wit_name.push_back(std::move(name));
    witnesses[{a, b}].push_back(id);
    return id;
}

ValidationReport validate_distributor(const Distributor& d)
{
    ValidationReport rep;
    for (int w = 0; w < d.n_witnesses(); ++w) {
        auto [a, b] = d.wit_point[w];
        if (d.act_right(w, d.A->identity[a]) != w)
            rep.fail("right identity action moves witness " + d.wit_name[w]);
        if (d.act_left(w, d.B->identity[b]) != w)
            rep.fail("left identity action moves witness " + d.wit_name[w]);
        for (size_t f = 0; f < d.A->mors.size(); ++f) {
            if (d.A->cod(static_cast<int>(f)) != a)
                continue;
            int wf = d.act_right(w, static_cast<int>(f));
            if (d.wit_point[wf] != std::make_pair(d.A->dom(static_cast<int>(f)), b))
                rep.fail("right action endpoint wrong");
            for (size_t f2 = 0; f2 < d.A->mors.size(); ++f2) {
                if (d.A->cod(static_cast<int>(f2)) != d.A->dom(static_cast<int>(f)))
                    continue;
                int lhs = d.act_right(wf, static_cast<int>(f2));
                int rhs = d.act_right(w, d.A->then(static_cast<int>(f2), static_cast<int>(f)));
                if (lhs != rhs)
                    rep.fail("right action not functorial");
            }
        }
        for (size_t g = 0; g < d.B->mors.size(); ++g) {
            if (d.B->dom(static_cast<int>(g)) != b)
                continue;
            int wg = d.act_left(w, static_cast<int>(g));
            if (d.wit_point[wg] != std::make_pair(a, d.B->cod(static_cast<int>(g))))
                rep.fail("left action endpoint wrong");
            for (size_t g2 = 0; g2 < d.B->mors.size(); ++g2) {
                if (d.B->dom(static_cast<int>(g2)) != d.B->cod(static_cast<int>(g)))
                    continue;
                if (d.act_left(wg, static_cast<int>(g2)) !=
                    d.act_left(w, d.B->then(static_cast<int>(g), static_cast<int>(g2))))
                    rep.fail("left action not functorial");
            }
            for (size_t f = 0; f < d.A->mors.size(); ++f) {
                if (d.A->cod(static_cast<int>(f)) != a)
                    continue;
                if (d.act_right(wg, static_cast<int>(f)) !=
                    d.act_left(d.act_right(w, static_cast<int>(f)), static_cast<int>(g)))
                    rep.fail("left and right actions do not commute");
            }
        }
    }
    return rep;
}

ValidationReport validate_functor(const DistFunctor& f)
{
    ValidationReport rep;
    for (size_t m = 0; m < f.dom->mors.size(); ++m) {
        int fm = f.mor[m];
        if (f.cod->dom(fm) != f.obj[f.dom->dom(static_cast<int>(m))] ||
            f.cod->cod(fm) != f.obj[f.dom->cod(static_cast<int>(m))])
            rep.fail("functor endpoint mismatch at morphism " + std::to_string(m));
    }
    for (int a = 0; a < f.dom->n_objects; ++a)
        if (f.mor[f.dom->identity[a]] != f.cod->identity[f.obj[a]])
            rep.fail("functor does not preserve identity at " + f.dom->obj_name(a));
    for (auto& [k, v] : f.dom->comp)
        if (f.cod->then(f.mor[k.first], f.mor[k.second]) != f.mor[v])
            rep.fail("functor does not preserve composition");
    return rep;
}

DistFunctor identity_functor(std::shared_ptr<const FinGroupoid> g)
{
    DistFunctor f;
    f.dom = f.cod = g;
    f.obj.resize(g->n_objects);
    std::iota(f.obj.begin(), f.obj.end(), 0);
    f.mor.resize(g->mors.size());
    std::iota(f.mor.begin(), f.mor.end(), 0);
    return f;
}

ValidationReport validate_nat(const Distributor& s, const Distributor& t, const NatTransform& n,
                              const DistFunctor* F, const DistFunctor* G)
{
    ValidationReport rep;
    auto fo = [&](int a) { return F ? F->obj[a] : a; };
    auto go = [&](int b) { return G ? G->obj[b] : b; };
    auto fm = [&](int m) { return F ? F->mor[m] : m; };
    auto gm = [&](int m) { return G ? G->mor[m] : m; };
    for (int w = 0; w < s.n_witnesses(); ++w) {
        auto it = n.component.find(w);
        if (it == n.component.end()) {
            rep.fail("missing component at witness " + s.wit_name[w]);
            continue;
        }
        auto [a, b] = s.wit_point[w];
        if (t.wit_point[it->second] != std::make_pair(fo(a), go(b)))
            rep.fail("component endpoint mismatch at " + s.wit_name[w]);
    }
    if (!rep.ok)
        return rep;
    for (int w = 0; w < s.n_witnesses(); ++w) {
        auto [a, b] = s.wit_point[w];
        int nw = n.component.at(w);
        for (size_t f = 0; f < s.A->mors.size(); ++f) {
            if (s.A->cod(static_cast<int>(f)) != a)
                continue;
            if (n.component.at(s.act_right(w, static_cast<int>(f))) !=
                t.act_right(nw, fm(static_cast<int>(f))))
                rep.fail("naturality square (right) fails at " + s.wit_name[w]);
        }
        for (size_t g = 0; g < s.B->mors.size(); ++g) {
            if (s.B->dom(static_cast<int>(g)) != b)
                continue;
            if (n.component.at(s.act_left(w, static_cast<int>(g))) !=
                t.act_left(nw, gm(static_cast<int>(g))))
                rep.fail("naturality square (left) fails at " + s.wit_name[w]);
        }
    }
    return rep;
}

bool nat_is_iso(const Distributor& s, const Distributor& t, const NatTransform& n)
{
    if (s.n_witnesses() != t.n_witnesses())
        return false;
    std::set<int> image;
    for (auto& [w, v] : n.component)
        image.insert(v);
    return static_cast<int>(image.size()) == t.n_witnesses();
}

Distributor dist_identity(std::shared_ptr<const FinGroupoid> a)
{
    Distributor d;
    d.A = d.B = a;
    for (int m = 0; m < static_cast<int>(a->mors.size()); ++m)
        d.add_witness(a->dom(m), a->cod(m), a->mors[m].name);
    for (int m = 0; m < static_cast<int>(a->mors.size()); ++m) {
        for (int f = 0; f < static_cast<int>(a->mors.size()); ++f)
            if (a->cod(f) == a->dom(m))
                d.right_action[{m, f}] = a->then(f, m);
        for (int g = 0; g < static_cast<int>(a->mors.size()); ++g)
            if (a->dom(g) == a->cod(m))
                d.left_action[{m, g}] = a->then(m, g);
    }
    return d;
}

ComposedDist dist_compose(const Distributor& alpha, const Distributor& beta)
{
    if (alpha.B.get() != beta.A.get())
        throw EsError("dist_compose: middle groupoids differ");
    const FinGroupoid& B = *alpha.B;
    std::vector<std::pair<int, int>> raw;
    std::map<std::pair<int, int>, int> raw_id;
    for (int x = 0; x < alpha.n_witnesses(); ++x)
        for (int y = 0; y < beta.n_witnesses(); ++y)
            if (alpha.wit_point[x].second == beta.wit_point[y].first) {
                raw_id[{x, y}] = static_cast<int>(raw.size());
                raw.emplace_back(x, y);
            }
    UnionFind uf(raw.size());
    for (int g = 0; g < static_cast<int>(B.mors.size()); ++g) {
        int bd = B.dom(g), bc = B.cod(g);
        for (int x = 0; x < alpha.n_witnesses(); ++x) {
            if (alpha.wit_point[x].second != bd)
                continue;
            int gx = alpha.act_left(x, g);
            for (int y = 0; y < beta.n_witnesses(); ++y) {
                if (beta.wit_point[y].first != bc)
                    continue;
                int yg = beta.act_right(y, g);
                uf.unite(raw_id.at({gx, y}), raw_id.at({x, yg}));
            }
        }
    }
    ComposedDist out;
    out.dist.A = alpha.A;
    out.dist.B = beta.B;
    std::map<int, int> root_to_wit;
    for (size_t r = 0; r < raw.size(); ++r) {
        int root = uf.find(static_cast<int>(r));
        if (root_to_wit.count(root))
            continue;
        auto [x, y] = raw[root];
        int a = alpha.wit_point[x].first;
        int c = beta.wit_point[y].second;
        root_to_wit[root] = out.dist.add_witness(
            a, c, "[" + alpha.wit_name[x] + ";" + beta.wit_name[y] + "]");
    }
    for (size_t r = 0; r < raw.size(); ++r)
        out.class_of[raw[r]] = root_to_wit.at(uf.find(static_cast<int>(r)));
    for (size_t r = 0; r < raw.size(); ++r) {
        auto [x, y] = raw[r];
        int w = out.class_of.at(raw[r]);
        for (int f = 0; f < static_cast<int>(alpha.A->mors.size()); ++f) {
            if (alpha.A->cod(f) != alpha.wit_point[x].first)
                continue;
            int img = out.class_of.at({alpha.act_right(x, f), y});
            auto it = out.dist.right_action.find({w, f});
            if (it != out.dist.right_action.end() && it->second != img)
                throw EsError("dist_compose: right action not well defined");
            out.dist.right_action[{w, f}] = img;
        }
        for (int g = 0; g < static_cast<int>(beta.B->mors.size()); ++g) {
            if (beta.B->dom(g) != beta.wit_point[y].second)
                continue;
            int img = out.class_of.at({x, beta.act_left(y, g)});
            auto it = out.dist.left_action.find({w, g});
            if (it != out.dist.left_action.end() && it->second != img)
                throw EsError("dist_compose: left action not well defined");
            out.dist.left_action[{w, g}] = img;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sym

int SymGroupoid::object_id(const std::vector<int>& seq) const
{
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == seq)
            return static_cast<int>(i);
    throw EsError("sym_groupoid: sequence exceeds the truncation");
}

int SymGroupoid::mor_id(const std::vector<int>& dom_seq, const std::vector<int>& pi,
                        const std::vector<int>& comps) const
{
    int d = object_id(dom_seq);
    for (int m = 0; m < static_cast<int>(mor_data.size()); ++m)
        if (g->dom(m) == d && mor_data[m].first == pi && mor_data[m].second == comps)
            return m;
    throw EsError("sym_groupoid: morphism not found");
}

SymGroupoid sym_groupoid(std::shared_ptr<const FinGroupoid> a, int max_len)
{
    SymGroupoid sg;
    sg.base = a;
    auto g = std::make_shared<FinGroupoid>();
    std::vector<std::vector<int>> objs = {{}};
    std::vector<std::vector<int>> frontier = {{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& s : frontier)
            for (int x = 0; x < a->n_objects; ++x) {
                auto s2 = s;
                s2.push_back(x);
                next.push_back(s2);
            }
        for (auto& s : next)
            objs.push_back(s);
        frontier = std::move(next);
    }
    sg.objects = objs;
    g->n_objects = static_cast<int>(objs.size());
    for (auto& s : objs) {
        std::string nm = "<";
        for (size_t i = 0; i < s.size(); ++i)
            nm += (i ? "," : "") + a->obj_name(s[i]);
        g->obj_names.push_back(nm + ">");
    }

    for (int d = 0; d < g->n_objects; ++d) {
        const auto& ds = objs[d];
        int n = static_cast<int>(ds.size());
        for (int c = 0; c < g->n_objects; ++c) {
            const auto& cs = objs[c];
            if (static_cast<int>(cs.size()) != n)
                continue;
            for (const auto& pi : permutations(n)) {
                std::vector<std::vector<int>> choices(n);
                bool possible = true;
                for (int i = 0; i < n && possible; ++i) {
                    choices[i] = a->hom(ds[pi[i]], cs[i]);
                    if (choices[i].empty())
                        possible = false;
                }
                if (!possible)
                    continue;
                std::vector<size_t> pick(n, 0);
                while (true) {
                    std::vector<int> comps(n);
                    for (int i = 0; i < n; ++i)
                        comps[i] = choices[i][pick[i]];
                    g->mors.push_back({d, c, ""});
                    sg.mor_data.emplace_back(pi, comps);
                    size_t k = 0;
                    while (k < pick.size() && ++pick[k] == choices[k].size()) {
                        pick[k] = 0;
                        ++k;
                    }
                    if (k == pick.size() || n == 0)
                        break;
                }
            }
        }
    }
    if (g->mors.size() > 2000000)
        throw EsError("sym_groupoid: truncation too large");

    g->identity.assign(g->n_objects, -1);
    for (int m = 0; m < static_cast<int>(g->mors.size()); ++m) {
        if (g->mors[m].dom != g->mors[m].cod)
            continue;
        const auto& [pi, comps] = sg.mor_data[m];
        bool is_id = true;
        for (size_t i = 0; i < pi.size(); ++i)
            if (pi[i] != static_cast<int>(i) ||
                comps[i] != a->identity[objs[g->mors[m].dom][i]])
                is_id = false;
        if (is_id)
            g->identity[g->mors[m].dom] = m;
    }
    auto find_mor = [&](int d, const std::vector<int>& pi, const std::vector<int>& comps) {
        for (int m = 0; m < static_cast<int>(g->mors.size()); ++m)
            if (g->mors[m].dom == d && sg.mor_data[m].first == pi &&
                sg.mor_data[m].second == comps)
                return m;
        throw EsError("sym_groupoid: internal morphism lookup failed");
    };
    for (int m1 = 0; m1 < static_cast<int>(g->mors.size()); ++m1)
        for (int m2 = 0; m2 < static_cast<int>(g->mors.size()); ++m2) {
            if (g->mors[m1].cod != g->mors[m2].dom)
                continue;
            const auto& [pi1, f1] = sg.mor_data[m1];
            const auto& [pi2, f2] = sg.mor_data[m2];
            int n = static_cast<int>(pi1.size());
            std::vector<int> pi(n), comps(n);
            for (int i = 0; i < n; ++i) {
                pi[i] = pi1[pi2[i]];
                comps[i] = a->then(f1[pi2[i]], f2[i]);
            }
            g->comp[{m1, m2}] = find_mor(g->mors[m1].dom, pi, comps);
        }
    g->inverse.assign(g->mors.size(), -1);
    for (int m = 0; m < static_cast<int>(g->mors.size()); ++m) {
        const auto& [pi, f] = sg.mor_data[m];
        int n = static_cast<int>(pi.size());
        std::vector<int> ipi(n), comps(n);
        for (int i = 0; i < n; ++i)
            ipi[pi[i]] = i;
        for (int i = 0; i < n; ++i)
            comps[i] = a->inverse[f[ipi[i]]];
        g->inverse[m] = find_mor(g->mors[m].cod, ipi, comps);
    }
    for (int m = 0; m < static_cast<int>(g->mors.size()); ++m) {
        std::string nm = "(";
        for (size_t i = 0; i < sg.mor_data[m].first.size(); ++i)
            nm += (i ? " " : "") + std::to_string(sg.mor_data[m].first[i]);
        nm += ")";
        g->mors[m].name = nm;
    }
    sg.g = g;
    return sg;
}

Distributor dereliction_i(const SymGroupoid& sa)
{
    const FinGroupoid& base = *sa.base;
    Distributor d;
    d.A = sa.g;
    d.B = sa.base;
    std::vector<int> mor_of_wit;
    for (int s = 0; s < static_cast<int>(sa.objects.size()); ++s) {
        if (sa.objects[s].size() != 1)
            continue;
        int a = sa.objects[s][0];
        for (int m = 0; m < static_cast<int>(base.mors.size()); ++m)
            if (base.dom(m) == a) {
                d.add_witness(s, base.cod(m), base.mors[m].name);
                mor_of_wit.push_back(m);
            }
    }
    for (int w = 0; w < d.n_witnesses(); ++w) {
        int m = mor_of_wit[w];
        auto [s, b] = d.wit_point[w];
        for (int f = 0; f < static_cast<int>(sa.g->mors.size()); ++f) {
            if (sa.g->cod(f) != s)
                continue;
            if (sa.objects[sa.g->dom(f)].size() != 1)
                continue;
            int f0 = sa.mor_data[f].second[0];
            int m2 = base.then(f0, m);
            for (int w2 = 0; w2 < d.n_witnesses(); ++w2)
                if (mor_of_wit[w2] == m2 && d.wit_point[w2].first == sa.g->dom(f)) {
                    d.right_action[{w, f}] = w2;
                    break;
                }
        }
        for (int gmor = 0; gmor < static_cast<int>(base.mors.size()); ++gmor) {
            if (base.dom(gmor) != b)
                continue;
            int m2 = base.then(m, gmor);
            for (int w2 = 0; w2 < d.n_witnesses(); ++w2)
                if (mor_of_wit[w2] == m2 && d.wit_point[w2].first == s) {
                    d.left_action[{w, gmor}] = w2;
                    break;
                }
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// promotion on the static side

namespace {

std::vector<std::vector<int>> compositions(int total, int parts)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(parts, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == parts) {
            if (left == 0)
                out.push_back(cur);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            cur[i] = k;
            self(self, i + 1, left - k);
        }
    };
    if (parts == 0) {
        if (total == 0)
            out.push_back({});
        return out;
    }
    rec(rec, 0, total);
    return out;
}

} // namespace

PromotedDist promotion_dagger(const Distributor& alpha, const SymGroupoid& sa,
                              const SymGroupoid& sb)
{
    if (alpha.A.get() != sa.g.get() || alpha.B.get() != sb.base.get())
        throw EsError("promotion_dagger: boundary mismatch");
    PromotedDist out;
    out.sa = &sa;
    out.sb = &sb;
    out.dist.A = sa.g;
    out.dist.B = sb.g;

    struct Raw {
        int dom, cod;
        std::vector<int> comps;
        int f;
        bool operator<(const Raw& o) const
        {
            return std::tie(dom, cod, comps, f) < std::tie(o.dom, o.cod, o.comps, o.f);
        }
    };
    std::vector<Raw> raws;
    std::map<Raw, int> raw_id;

    const FinGroupoid& SG = *sa.g;
    for (int cod = 0; cod < static_cast<int>(sb.objects.size()); ++cod) {
        const auto& bs = sb.objects[cod];
        int n = static_cast<int>(bs.size());
        for (int dom = 0; dom < static_cast<int>(sa.objects.size()); ++dom) {
            int total = static_cast<int>(sa.objects[dom].size());
            for (const auto& sizes : compositions(total, n)) {
                std::vector<std::vector<int>> per_choices(n);
                bool possible = true;
                for (int i = 0; i < n && possible; ++i) {
                    for (int o = 0; o < static_cast<int>(sa.objects.size()); ++o)
                        if (static_cast<int>(sa.objects[o].size()) == sizes[i])
                            for (int w : alpha.at(o, bs[i]))
                                per_choices[i].push_back(w);
                    if (per_choices[i].empty())
                        possible = false;
                }
                if (!possible)
                    continue;
                if (n == 0) {
                    int concat_obj = sa.object_id({});
                    for (int f = 0; f < static_cast<int>(SG.mors.size()); ++f)
                        if (SG.dom(f) == concat_obj && SG.cod(f) == dom) {
                            Raw r{dom, cod, {}, f};
                            if (!raw_id.count(r)) {
                                raw_id[r] = static_cast<int>(raws.size());
                                raws.push_back(r);
                            }
                        }
                    continue;
                }
                std::vector<size_t> pick(n, 0);
                while (true) {
                    std::vector<int> comps(n);
                    std::vector<int> concat;
                    for (int i = 0; i < n; ++i) {
                        comps[i] = per_choices[i][pick[i]];
                        const auto& seq = sa.objects[alpha.wit_point[comps[i]].first];
                        concat.insert(concat.end(), seq.begin(), seq.end());
                    }
                    bool in_trunc = true;
                    int concat_obj = -1;
                    try {
                        concat_obj = sa.object_id(concat);
                    } catch (const EsError&) {
                        in_trunc = false;
                    }
                    if (in_trunc)
                        for (int f = 0; f < static_cast<int>(SG.mors.size()); ++f)
                            if (SG.dom(f) == concat_obj && SG.cod(f) == dom) {
                                Raw r{dom, cod, comps, f};
                                if (!raw_id.count(r)) {
                                    raw_id[r] = static_cast<int>(raws.size());
                                    raws.push_back(r);
                                }
                            }
                    size_t k = 0;
                    while (k < pick.size() && ++pick[k] == per_choices[k].size()) {
                        pick[k] = 0;
                        ++k;
                    }
                    if (k == pick.size())
                        break;
                }
            }
        }
    }

    UnionFind uf(raws.size());
    for (size_t r = 0; r < raws.size(); ++r) {
        const Raw& raw = raws[r];
        int n = static_cast<int>(raw.comps.size());
        std::vector<int> offs(n + 1, 0);
        for (int i = 0; i < n; ++i)
            offs[i + 1] = offs[i] +
                          static_cast<int>(sa.objects[alpha.wit_point[raw.comps[i]].first].size());
        for (int i = 0; i < n; ++i) {
            int ai = alpha.wit_point[raw.comps[i]].first;
            for (int gmor = 0; gmor < static_cast<int>(SG.mors.size()); ++gmor) {
                if (SG.dom(gmor) != ai)
                    continue;
                int s2 = alpha.act_right(raw.comps[i], SG.inverse[gmor]);
                const auto& [pi_g, f_g] = sa.mor_data[gmor];
                int total = offs[n];
                std::vector<int> pi(total), comps_m(total);
                std::vector<int> concat_dom;
                for (int k = 0; k < n; ++k) {
                    const auto& seq =
                        sa.objects[alpha.wit_point[k == i ? s2 : raw.comps[k]].first];
                    concat_dom.insert(concat_dom.end(), seq.begin(), seq.end());
                }
                const auto& old_dom_seq = sa.objects[SG.dom(raw.f)];
                for (int p = 0; p < total; ++p) {
                    if (p < offs[i] || p >= offs[i + 1]) {
                        pi[p] = p;
                        comps_m[p] = sa.base->identity[old_dom_seq[p]];
                    } else {
                        int local = p - offs[i];
                        pi[p] = offs[i] + pi_g[local];
                        comps_m[p] = f_g[local];
                    }
                }
                int block = -1;
                try {
                    block = sa.mor_id(concat_dom, pi, comps_m);
                } catch (const EsError&) {
                    continue;
                }
                int f2 = SG.then(block, raw.f);
                Raw other{raw.dom, raw.cod, raw.comps, f2};
                other.comps[i] = s2;
                auto it = raw_id.find(other);
                if (it != raw_id.end())
                    uf.unite(static_cast<int>(r), it->second);
            }
        }
    }

    std::map<int, int> root_to_wit;
    for (size_t r = 0; r < raws.size(); ++r) {
        int root = uf.find(static_cast<int>(r));
        if (root_to_wit.count(root))
            continue;
        const Raw& raw = raws[root];
        std::string nm = "[[";
        for (size_t i = 0; i < raw.comps.size(); ++i)
            nm += (i ? "," : "") + alpha.wit_name[raw.comps[i]];
        nm += "]]";
        root_to_wit[root] = out.dist.add_witness(raw.dom, raw.cod, nm);
    }
    std::vector<int> class_of(raws.size());
    for (size_t r = 0; r < raws.size(); ++r)
        class_of[r] = root_to_wit.at(uf.find(static_cast<int>(r)));

    out.reps.resize(out.dist.n_witnesses());
    for (size_t r = 0; r < raws.size(); ++r) {
        out.index[{raws[r].comps, sa.mor_data[raws[r].f].first, raws[r].dom, raws[r].cod}] =
            class_of[r];
        bool ids = true;
        const auto& old_dom_seq = sa.objects[SG.dom(raws[r].f)];
        for (size_t i = 0; i < sa.mor_data[raws[r].f].second.size(); ++i) {
            int c = sa.mor_data[raws[r].f].second[i];
            if (c != sa.base->identity[old_dom_seq[sa.mor_data[raws[r].f].first[i]]])
                ids = false;
        }
        if (ids)
            out.reps[class_of[r]] = {raws[r].comps, sa.mor_data[raws[r].f].first};
    }

    for (size_t r = 0; r < raws.size(); ++r) {
        const Raw& raw = raws[r];
        int w = class_of[r];
        for (int m = 0; m < static_cast<int>(SG.mors.size()); ++m) {
            if (SG.cod(m) != raw.dom)
                continue;
            int f2 = SG.then(raw.f, SG.inverse[m]);
            Raw other{SG.dom(m), raw.cod, raw.comps, f2};
            auto it = raw_id.find(other);
            if (it == raw_id.end())
                throw EsError("promotion_dagger: right action left the table");
            int img = class_of[it->second];
            auto prev = out.dist.right_action.find({w, m});
            if (prev != out.dist.right_action.end() && prev->second != img)
                throw EsError("promotion_dagger: right action not well defined");
            out.dist.right_action[{w, m}] = img;
        }
        for (int m = 0; m < static_cast<int>(sb.g->mors.size()); ++m) {
            if (sb.g->dom(m) != raw.cod)
                continue;
            const auto& [rho, gs] = sb.mor_data[m];
            int n = static_cast<int>(rho.size());
            std::vector<int> comps2(n);
            std::vector<int> offs(n + 1, 0);
            for (int i = 0; i < n; ++i)
                offs[i + 1] =
                    offs[i] +
                    static_cast<int>(sa.objects[alpha.wit_point[raw.comps[i]].first].size());
            std::vector<int> offs2(n + 1, 0);
            for (int i = 0; i < n; ++i) {
                comps2[i] = alpha.act_left(raw.comps[rho[i]], gs[i]);
                offs2[i + 1] =
                    offs2[i] +
                    static_cast<int>(sa.objects[alpha.wit_point[comps2[i]].first].size());
            }
            int total = offs[n];
            std::vector<int> pi(total), comps_m(total);
            std::vector<int> concat2;
            for (int i = 0; i < n; ++i) {
                const auto& seq = sa.objects[alpha.wit_point[comps2[i]].first];
                concat2.insert(concat2.end(), seq.begin(), seq.end());
            }
            const auto& old_dom_seq = sa.objects[SG.dom(raw.f)];
            for (int i = 0; i < n; ++i)
                for (int dly = 0; dly < offs2[i + 1] - offs2[i]; ++dly) {
                    int p_target = offs[rho[i]] + dly;
                    int p_source = offs2[i] + dly;
                    pi[p_target] = p_source;
                    comps_m[p_target] = sa.base->identity[old_dom_seq[p_target]];
                }
            int block = sa.mor_id(concat2, pi, comps_m);
            int f2 = SG.then(block, raw.f);
            Raw other{raw.dom, sb.g->cod(m), comps2, f2};
            auto it = raw_id.find(other);
            if (it == raw_id.end())
                throw EsError("promotion_dagger: left action left the table");
            int img = class_of[it->second];
            auto prev = out.dist.left_action.find({w, m});
            if (prev != out.dist.left_action.end() && prev->second != img)
                throw EsError("promotion_dagger: left action not well defined");
            out.dist.left_action[{w, m}] = img;
        }
    }
    return out;
}

int PromotedDist::class_of(const std::vector<int>& components, const std::vector<int>& pi,
                           int dom_obj, int cod_obj) const
{
    auto it = index.find({components, pi, dom_obj, cod_obj});
    if (it == index.end())
        throw EsError("promotion_dagger: class lookup failed");
    return it->second;
}

ComposedDist esp_compose(const Distributor& alpha, const Distributor& beta,
                         const SymGroupoid& sa, const SymGroupoid& sb)
{
    PromotedDist pd = promotion_dagger(alpha, sa, sb);
    return dist_compose(pd.dist, beta);
}

Distributor companion(const DistFunctor& f)
{
    Distributor d;
    d.A = f.dom;
    d.B = f.cod;
    const FinGroupoid& B = *f.cod;
    std::vector<int> mor_of_wit;
    for (int a = 0; a < f.dom->n_objects; ++a)
        for (int m = 0; m < static_cast<int>(B.mors.size()); ++m)
            if (B.dom(m) == f.obj[a]) {
                d.add_witness(a, B.cod(m), B.mors[m].name);
                mor_of_wit.push_back(m);
            }
    for (int w = 0; w < d.n_witnesses(); ++w) {
        auto [a, b] = d.wit_point[w];
        int m = mor_of_wit[w];
        for (int fa = 0; fa < static_cast<int>(f.dom->mors.size()); ++fa) {
            if (f.dom->cod(fa) != a)
                continue;
            int m2 = B.then(f.mor[fa], m);
            for (int w2 = 0; w2 < d.n_witnesses(); ++w2)
                if (mor_of_wit[w2] == m2 && d.wit_point[w2].first == f.dom->dom(fa))
                    d.right_action[{w, fa}] = w2;
        }
        for (int g = 0; g < static_cast<int>(B.mors.size()); ++g) {
            if (B.dom(g) != b)
                continue;
            int m2 = B.then(m, g);
            for (int w2 = 0; w2 < d.n_witnesses(); ++w2)
                if (mor_of_wit[w2] == m2 && d.wit_point[w2].first == a)
                    d.left_action[{w, g}] = w2;
        }
    }
    return d;
}

Distributor conjoint(const DistFunctor& f)
{
    Distributor d;
    d.A = f.cod;
    d.B = f.dom;
    const FinGroupoid& B = *f.cod;
    std::vector<int> mor_of_wit;
    for (int a = 0; a < f.dom->n_objects; ++a)
        for (int m = 0; m < static_cast<int>(B.mors.size()); ++m)
            if (B.cod(m) == f.obj[a]) {
                d.add_witness(B.dom(m), a, B.mors[m].name);
                mor_of_wit.push_back(m);
            }
    for (int w = 0; w < d.n_witnesses(); ++w) {
        auto [b, a] = d.wit_point[w];
        int m = mor_of_wit[w];
        for (int g = 0; g < static_cast<int>(B.mors.size()); ++g) {
            if (B.cod(g) != b)
                continue;
            int m2 = B.then(g, m);
            for (int w2 = 0; w2 < d.n_witnesses(); ++w2)
                if (mor_of_wit[w2] == m2 && d.wit_point[w2].second == a)
                    d.right_action[{w, g}] = w2;
        }
        for (int fa = 0; fa < static_cast<int>(f.dom->mors.size()); ++fa) {
            if (f.dom->dom(fa) != a)
                continue;
            int m2 = B.then(m, f.mor[fa]);
            for (int w2 = 0; w2 < d.n_witnesses(); ++w2)
                if (mor_of_wit[w2] == m2 && d.wit_point[w2].first == b)
                    d.left_action[{w, fa}] = w2;
        }
    }
    return d;
}

Distributor restrict_left(const Distributor& alpha, const DistFunctor& s)
{
    if (s.cod.get() != alpha.A.get())
        throw EsError("restrict_left: functor codomain mismatch");
    Distributor d;
    d.A = s.dom;
    d.B = alpha.B;
    std::vector<int> orig;
    std::map<std::pair<int, int>, int> of;
    for (int a = 0; a < s.dom->n_objects; ++a)
        for (int b = 0; b < alpha.B->n_objects; ++b)
            for (int w : alpha.at(s.obj[a], b)) {
                of[{a, w}] = d.add_witness(a, b, alpha.wit_name[w]);
                orig.push_back(w);
            }
    for (int w = 0; w < d.n_witnesses(); ++w) {
        auto [a, b] = d.wit_point[w];
        for (int f = 0; f < static_cast<int>(s.dom->mors.size()); ++f) {
            if (s.dom->cod(f) != a)
                continue;
            d.right_action[{w, f}] = of.at({s.dom->dom(f), alpha.act_right(orig[w], s.mor[f])});
        }
        for (int g = 0; g < static_cast<int>(alpha.B->mors.size()); ++g) {
            if (alpha.B->dom(g) != b)
                continue;
            d.left_action[{w, g}] = of.at({a, alpha.act_left(orig[w], g)});
        }
    }
    return d;
}

Distributor restrict_right(const Distributor& alpha, const DistFunctor& t)
{
    if (t.cod.get() != alpha.B.get())
        throw EsError("restrict_right: functor codomain mismatch");
    Distributor d;
    d.A = alpha.A;
    d.B = t.dom;
    std::vector<int> orig;
    std::map<std::pair<int, int>, int> of;
    for (int a = 0; a < alpha.A->n_objects; ++a)
        for (int b = 0; b < t.dom->n_objects; ++b)
            for (int w : alpha.at(a, t.obj[b])) {
                of[{b, w}] = d.add_witness(a, b, alpha.wit_name[w]);
                orig.push_back(w);
            }
    for (int w = 0; w < d.n_witnesses(); ++w) {
        auto [a, b] = d.wit_point[w];
        for (int f = 0; f < static_cast<int>(alpha.A->mors.size()); ++f) {
            if (alpha.A->cod(f) != a)
                continue;
            d.right_action[{w, f}] = of.at({b, alpha.act_right(orig[w], f)});
        }
        for (int g = 0; g < static_cast<int>(t.dom->mors.size()); ++g) {
            if (t.dom->dom(g) != b)
                continue;
            d.left_action[{w, g}] = of.at({t.dom->cod(g), alpha.act_left(orig[w], t.mor[g])});
        }
    }
    return d;
}

ValidationReport check_adjoint_equivalence(const EquivalenceData& e)
{
    ValidationReport rep;
    auto lr = validate_functor(e.L);
    for (auto& v : lr.violations)
        rep.fail("L: " + v);
    auto rr = validate_functor(e.R);
    for (auto& v : rr.violations)
        rep.fail("R: " + v);
    if (!rep.ok)
        return rep;
    const FinGroupoid& A = *e.L.dom;
    const FinGroupoid& B = *e.L.cod;
    for (int a = 0; a < A.n_objects; ++a) {
        int u = a < static_cast<int>(e.unit.size()) ? e.unit[a] : -1;
        if (u < 0) {
            rep.fail("missing unit at " + A.obj_name(a));
            continue;
        }
        if (A.dom(u) != a || A.cod(u) != e.R.obj[e.L.obj[a]])
            rep.fail("unit endpoints wrong at " + A.obj_name(a));
    }
    for (int b = 0; b < B.n_objects; ++b) {
        int c = b < static_cast<int>(e.counit.size()) ? e.counit[b] : -1;
        if (c < 0) {
            rep.fail("missing counit at " + B.obj_name(b));
            continue;
        }
        if (B.dom(c) != e.L.obj[e.R.obj[b]] || B.cod(c) != b)
            rep.fail("counit endpoints wrong at " + B.obj_name(b));
    }
    if (!rep.ok)
        return rep;
    for (int m = 0; m < static_cast<int>(A.mors.size()); ++m) {
        int a = A.dom(m), a2 = A.cod(m);
        if (A.then(m, e.unit[a2]) != A.then(e.unit[a], e.R.mor[e.L.mor[m]]))
            rep.fail("unit not natural at morphism " + std::to_string(m));
    }
    for (int m = 0; m < static_cast<int>(B.mors.size()); ++m) {
        int b = B.dom(m), b2 = B.cod(m);
        if (B.then(e.counit[b], m) != B.then(e.L.mor[e.R.mor[m]], e.counit[b2]))
            rep.fail("counit not natural at morphism " + std::to_string(m));
    }
    for (int a = 0; a < A.n_objects; ++a)
        if (B.then(e.L.mor[e.unit[a]], e.counit[e.L.obj[a]]) != B.identity[e.L.obj[a]])
            rep.fail("triangle (L) fails at " + A.obj_name(a));
    for (int b = 0; b < B.n_objects; ++b)
        if (A.then(e.unit[e.R.obj[b]], e.R.mor[e.counit[b]]) != A.identity[e.R.obj[b]])
            rep.fail("triangle (R) fails at " + B.obj_name(b));
    return rep;
}

std::optional<NatTransform> find_natural_iso(const Distributor& s, const Distributor& t)
{
    if (s.A.get() != t.A.get() || s.B.get() != t.B.get())
        return std::nullopt;
    if (s.n_witnesses() != t.n_witnesses())
        return std::nullopt;
    int n = s.n_witnesses();
    std::vector<int> img(n, -1), used(t.n_witnesses(), 0);

    auto propagate_ok = [&](int w, int v) {
        for (int f = 0; f < static_cast<int>(s.A->mors.size()); ++f) {
            if (s.A->cod(f) != s.wit_point[w].first)
                continue;
            int w2 = s.act_right(w, f);
            if (img[w2] != -1 && img[w2] != t.act_right(v, f))
                return false;
        }
        for (int g = 0; g < static_cast<int>(s.B->mors.size()); ++g) {
            if (s.B->dom(g) != s.wit_point[w].second)
                continue;
            int w2 = s.act_left(w, g);
            if (img[w2] != -1 && img[w2] != t.act_left(v, g))
                return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, int w) -> bool {
        if (w == n)
            return true;
        if (img[w] != -1)
            return self(self, w + 1);
        for (int v = 0; v < t.n_witnesses(); ++v) {
            if (used[v] || t.wit_point[v] != s.wit_point[w])
                continue;
            std::vector<std::pair<int, int>> assigned;
            std::vector<std::pair<int, int>> queue = {{w, v}};
            bool ok = true;
            while (!queue.empty() && ok) {
                auto [cw, cv] = queue.back();
                queue.pop_back();
                if (img[cw] != -1) {
                    if (img[cw] != cv)
                        ok = false;
                    continue;
                }
                if (used[cv] || t.wit_point[cv] != s.wit_point[cw]) {
                    ok = false;
                    continue;
                }
                if (!propagate_ok(cw, cv)) {
                    ok = false;
                    continue;
                }
                img[cw] = cv;
                used[cv] = 1;
                assigned.emplace_back(cw, cv);
                for (int f = 0; f < static_cast<int>(s.A->mors.size()); ++f)
                    if (s.A->cod(f) == s.wit_point[cw].first)
                        queue.emplace_back(s.act_right(cw, f), t.act_right(cv, f));
                for (int g = 0; g < static_cast<int>(s.B->mors.size()); ++g)
                    if (s.B->dom(g) == s.wit_point[cw].second)
                        queue.emplace_back(s.act_left(cw, g), t.act_left(cv, g));
            }
            if (ok && self(self, w + 1))
                return true;
            for (auto [cw, cv] : assigned) {
                img[cw] = -1;
                used[cv] = 0;
            }
        }
        return false;
    };
    if (!rec(rec, 0))
        return std::nullopt;
    NatTransform out;
    for (int w = 0; w < n; ++w)
        out.component[w] = img[w];
    return out;
}

} // namespace gsp
