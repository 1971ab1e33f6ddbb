#include "gamespecies/rel.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace gsp::rel {

RType RType::fun(RType a, RType b)
{
    RType t;
    t.is_fun = true;
    t.arg = std::make_shared<RType>(std::move(a));
    t.res = std::make_shared<RType>(std::move(b));
    return t;
}

bool RType::operator==(const RType& o) const
{
    if (is_fun != o.is_fun)
        return false;
    if (!is_fun)
        return true;
    return *arg == *o.arg && *res == *o.res;
}

bool RPoint::operator<(const RPoint& o) const
{
    if (is_fun != o.is_fun)
        return is_fun < o.is_fun;
    if (!is_fun)
        return b < o.b;
    if (args != o.args)
        return args < o.args;
    return *result < *o.result;
}

bool RPoint::operator==(const RPoint& o) const { return !(*this < o) && !(o < *this); }

std::string RPoint::to_string() const
{
    if (!is_fun)
        return b ? "tt" : "ff";
    std::string s = "([";
    for (size_t i = 0; i < args.size(); ++i)
        s += (i ? "," : "") + args[i].to_string();
    return s + "]," + result->to_string() + ")";
}

RPoint point_tt()
{
    RPoint p;
    p.b = true;
    return p;
}

RPoint point_ff()
{
    RPoint p;
    p.b = false;
    return p;
}

RPoint point_fun(std::vector<RPoint> args, RPoint result)
{
    RPoint p;
    p.is_fun = true;
    std::sort(args.begin(), args.end());
    p.args = std::move(args);
    p.result = std::make_shared<RPoint>(std::move(result));
    return p;
}

namespace {

std::vector<std::vector<RPoint>> multisets(const std::vector<RPoint>& base, int max_size)
{
    std::vector<std::vector<RPoint>> out = {{}};
    std::vector<std::vector<RPoint>> frontier = {{}};
    for (int s = 1; s <= max_size; ++s) {
        std::vector<std::vector<RPoint>> next;
        for (const auto& m : frontier)
            for (const auto& p : base) {
                if (!m.empty() && p < m.back())
                    continue; // keep sorted to avoid duplicates
                auto m2 = m;
                m2.push_back(p);
                next.push_back(m2);
            }
        for (auto& m : next)
            out.push_back(m);
        frontier = std::move(next);
    }
    return out;
}

} // namespace

std::vector<RPoint> points_of(const RType& t, int multiset_bound)
{
    if (!t.is_fun)
        return {point_ff(), point_tt()};
    std::vector<RPoint> arg_pts = points_of(*t.arg, multiset_bound);
    std::vector<RPoint> res_pts = points_of(*t.res, multiset_bound);
    std::vector<RPoint> out;
    for (auto& m : multisets(arg_pts, multiset_bound))
        for (auto& r : res_pts)
            out.push_back(point_fun(m, r));
    std::sort(out.begin(), out.end());
    return out;
}

RTermPtr rvar(std::string x)
{
    auto t = std::make_shared<RTerm>();
    t->kind = RTerm::Kind::Var;
    t->var = std::move(x);
    return t;
}

RTermPtr rabs(std::string x, RTermPtr body)
{
    auto t = std::make_shared<RTerm>();
    t->kind = RTerm::Kind::Abs;
    t->var = std::move(x);
    t->a = std::move(body);
    return t;
}

RTermPtr rapp(RTermPtr f, RTermPtr arg)
{
    auto t = std::make_shared<RTerm>();
    t->kind = RTerm::Kind::App;
    t->a = std::move(f);
    t->b = std::move(arg);
    return t;
}

RTermPtr rif(RTermPtr c, RTermPtr th, RTermPtr el)
{
    auto t = std::make_shared<RTerm>();
    t->kind = RTerm::Kind::If;
    t->a = std::move(c);
    t->b = std::move(th);
    t->c = std::move(el);
    return t;
}

RTermPtr rtt()
{
    auto t = std::make_shared<RTerm>();
    t->kind = RTerm::Kind::ConstTT;
    return t;
}

RTermPtr rff()
{
    auto t = std::make_shared<RTerm>();
    t->kind = RTerm::Kind::ConstFF;
    return t;
}

RTermPtr rchoice()
{
    auto t = std::make_shared<RTerm>();
    t->kind = RTerm::Kind::Choice;
    return t;
}

namespace {

struct PcfParser {
    std::string s;
    size_t i = 0;
    void ws()
    {
        while (i < s.size() && isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool word(const std::string& w)
    {
        ws();
        if (s.compare(i, w.size(), w) == 0) {
            size_t j = i + w.size();
            if (j == s.size() || !isalnum(static_cast<unsigned char>(s[j]))) {
                i = j;
                return true;
            }
        }
        return false;
    }
    std::string ident()
    {
        ws();
        size_t start = i;
        while (i < s.size() && (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (start == i)
            throw EsError("pcf parse error at position " + std::to_string(i));
        return s.substr(start, i - start);
    }
    RTermPtr term()
    {
        ws();
        if (i < s.size() && (s[i] == '\\' || word("fn"))) {
            if (s[i] == '\\')
                ++i;
            std::string x = ident();
            ws();
            if (i >= s.size() || s[i] != '.')
                throw EsError("pcf: expected '.'");
            ++i;
            return rabs(x, term());
        }
        if (word("if")) {
            RTermPtr c = term_no_app();
            if (!word("then"))
                throw EsError("pcf: expected then");
            RTermPtr t = term_no_app();
            if (!word("else"))
                throw EsError("pcf: expected else");
            RTermPtr e = term();
            return rif(c, t, e);
        }
        RTermPtr head = atom();
        while (true) {
            ws();
            if (i >= s.size() || s[i] == ')' || s.compare(i, 4, "then") == 0 ||
                s.compare(i, 4, "else") == 0)
                break;
            head = rapp(head, atom());
        }
        return head;
    }
    RTermPtr term_no_app() { return atom_or_if(); }
    RTermPtr atom_or_if()
    {
        ws();
        if (word("if")) {
            RTermPtr c = term_no_app();
            if (!word("then"))
                throw EsError("pcf: expected then");
            RTermPtr t = term_no_app();
            if (!word("else"))
                throw EsError("pcf: expected else");
            RTermPtr e = term_no_app();
            return rif(c, t, e);
        }
        return atom();
    }
    RTermPtr atom()
    {
        ws();
        if (i < s.size() && s[i] == '(') {
            ++i;
            RTermPtr t = term();
            ws();
            if (i >= s.size() || s[i] != ')')
                throw EsError("pcf: expected ')'");
            ++i;
            return t;
        }
        if (word("tt"))
            return rtt();
        if (word("ff"))
            return rff();
        if (word("choice"))
            return rchoice();
        if (i < s.size() && s[i] == '\\')
            return term();
        return rvar(ident());
    }
};

Env env_union(const Env& a, const Env& b)
{
    Env out = a;
    for (auto& [k, v] : b) {
        auto& m = out[k];
        m.insert(m.end(), v.begin(), v.end());
        std::sort(m.begin(), m.end());
    }
    return out;
}

} // namespace

RTermPtr parse_rterm(const std::string& text)
{
    PcfParser p{text};
    RTermPtr t = p.term();
    p.ws();
    if (p.i != text.size())
        throw EsError("pcf: trailing input");
    return t;
}

RelResult interp(const RTermPtr& term, const std::map<std::string, RType>& ctx,
                 const RPoint& point, int multiset_bound)
{
    RelResult out;
    switch (term->kind) {
    case RTerm::Kind::Var: {
        Env e;
        e[term->var] = {point};
        out.witnesses.emplace_back(std::move(e), "v");
        break;
    }
    case RTerm::Kind::ConstTT:
        if (point == point_tt())
            out.witnesses.emplace_back(Env{}, "tt");
        break;
    case RTerm::Kind::ConstFF:
        if (point == point_ff())
            out.witnesses.emplace_back(Env{}, "ff");
        break;
    case RTerm::Kind::Choice:
        if (!point.is_fun)
            out.witnesses.emplace_back(Env{}, point.b ? "c1" : "c0");
        break;
    case RTerm::Kind::Abs: {
        if (!point.is_fun)
            break;
        auto ctx2 = ctx;
        // the bound variable's type, reconstructed from the queried point
        std::function<RType(const RPoint&)> type_of_point = [&](const RPoint& p) -> RType {
            if (!p.is_fun)
                return RType::boolean();
            RType at = p.args.empty() ? RType::boolean() : type_of_point(p.args[0]);
            return RType::fun(at, type_of_point(*p.result));
        };
        ctx2[term->var] =
            point.args.empty() ? RType::boolean() : type_of_point(point.args[0]);
        for (auto& [env, w] : interp(term->a, ctx2, *point.result, multiset_bound).witnesses) {
            Env e = env;
            std::vector<RPoint> got;
            if (auto f = e.find(term->var); f != e.end()) {
                got = f->second;
                e.erase(f);
            }
            std::vector<RPoint> want = point.args;
            std::sort(got.begin(), got.end());
            if (got == want)
                out.witnesses.emplace_back(std::move(e), "L(" + w + ")");
        }
        break;
    }
    case RTerm::Kind::App: {
        // argument type needed to enumerate candidate points
        // infer: f's context type must be an arrow; here we enumerate over
        // all bounded multisets of argument points, which requires knowing
        // the argument type; we reconstruct it syntactically
        std::function<RType(const RTermPtr&, std::map<std::string, RType>)> type_of =
            [&](const RTermPtr& t, std::map<std::string, RType> env) -> RType {
            switch (t->kind) {
            case RTerm::Kind::Var:
                return env.at(t->var);
            case RTerm::Kind::ConstTT:
            case RTerm::Kind::ConstFF:
            case RTerm::Kind::Choice:
                return RType::boolean();
            case RTerm::Kind::If:
                return type_of(t->b, env);
            case RTerm::Kind::App: {
                RType ft;
                if (t->a->kind == RTerm::Kind::Abs) {
                    RType argt = type_of(t->b, env);
                    auto env2 = env;
                    env2[t->a->var] = argt;
                    ft = RType::fun(argt, type_of(t->a->a, env2));
                } else {
                    ft = type_of(t->a, env);
                }
                if (!ft.is_fun)
                    throw EsError("rel: application of a non-function");
                return *ft.res;
            }
            case RTerm::Kind::Abs:
                throw EsError("rel: cannot infer a lambda's argument type here");
            }
            throw EsError("unreachable");
        };
        RType ft;
        if (term->a->kind == RTerm::Kind::Abs) {
            RType argt = type_of(term->b, ctx);
            auto ctx2 = ctx;
            ctx2[term->a->var] = argt;
            ft = RType::fun(argt, type_of(term->a->a, ctx2));
        } else {
            ft = type_of(term->a, ctx);
        }
        if (!ft.is_fun)
            throw EsError("rel: application of a non-function");
        std::vector<RPoint> arg_pts = points_of(*ft.arg, multiset_bound);
        // all bounded multisets of argument points
        std::vector<std::vector<RPoint>> msets;
        {
            std::vector<std::vector<RPoint>> frontier = {{}};
            msets.push_back({});
            for (int s = 1; s <= multiset_bound; ++s) {
                std::vector<std::vector<RPoint>> next;
                for (const auto& m : frontier)
                    for (const auto& p : arg_pts) {
                        if (!m.empty() && p < m.back())
                            continue;
                        auto m2 = m;
                        m2.push_back(p);
                        next.push_back(m2);
                    }
                for (auto& m : next)
                    msets.push_back(m);
                frontier = std::move(next);
            }
        }
        for (const auto& m : msets) {
            RPoint fpoint = point_fun(m, point);
            auto fr = interp(term->a, ctx, fpoint, multiset_bound);
            if (fr.witnesses.empty())
                continue;
            // derivations for each argument copy
            std::vector<RelResult> args;
            bool dead = false;
            for (const auto& ap : m) {
                args.push_back(interp(term->b, ctx, ap, multiset_bound));
                if (args.back().witnesses.empty())
                    dead = true;
            }
            if (dead)
                continue;
            for (auto& [fe, fw] : fr.witnesses) {
                std::vector<std::pair<Env, std::string>> acc = {{fe, fw}};
                for (auto& ar : args) {
                    std::vector<std::pair<Env, std::string>> nxt;
                    for (auto& [e1, w1] : acc)
                        for (auto& [e2, w2] : ar.witnesses)
                            nxt.emplace_back(env_union(e1, e2), w1 + "@" + w2);
                    acc = std::move(nxt);
                }
                for (auto& [e, w] : acc)
                    out.witnesses.emplace_back(e, w);
            }
        }
        break;
    }
    case RTerm::Kind::If: {
        for (bool cond : {true, false}) {
            auto cr = interp(term->a, ctx, cond ? point_tt() : point_ff(), multiset_bound);
            if (cr.witnesses.empty())
                continue;
            auto br = interp(cond ? term->b : term->c, ctx, point, multiset_bound);
            for (auto& [ce, cw] : cr.witnesses)
                for (auto& [be, bw] : br.witnesses)
                    out.witnesses.emplace_back(env_union(ce, be),
                                               "if" + std::string(cond ? "T" : "F") + "(" + cw +
                                                   ";" + bw + ")");
        }
        break;
    }
    }
    return out;
}

std::vector<Env> RelResult::envs() const
{
    std::vector<Env> out;
    for (auto& [e, w] : witnesses)
        out.push_back(e);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

size_t seely_check(int na, int nb, int multiset_bound)
{
    // elements of A are 0..na-1, of B are na..na+nb-1; multisets are sorted
    // vectors
    std::vector<int> all;
    for (int x = 0; x < na + nb; ++x)
        all.push_back(x);
    std::vector<std::vector<int>> sum_msets = {{}};
    {
        std::vector<std::vector<int>> frontier = {{}};
        for (int s = 1; s <= multiset_bound; ++s) {
            std::vector<std::vector<int>> next;
            for (auto& m : frontier)
                for (int x : all) {
                    if (!m.empty() && x < m.back())
                        continue;
                    auto m2 = m;
                    m2.push_back(x);
                    next.push_back(m2);
                }
            for (auto& m : next)
                sum_msets.push_back(m);
            frontier = std::move(next);
        }
    }
    // the Seely map: split a multiset on A+B into its A and B parts
    std::set<std::pair<std::vector<int>, std::vector<int>>> image;
    for (auto& m : sum_msets) {
        std::vector<int> ma, mb;
        for (int x : m)
            (x < na ? ma : mb).push_back(x);
        if (!image.insert({ma, mb}).second)
            throw EsError("seely_check: split map not injective");
    }
    // surjectivity onto pairs with |ma| + |mb| <= bound
    size_t expect = 0;
    std::vector<std::vector<int>> amsets = {{}}, bmsets = {{}};
    auto grow = [&](int n0, int off) {
        std::vector<std::vector<int>> out = {{}};
        std::vector<std::vector<int>> frontier = {{}};
        for (int s = 1; s <= multiset_bound; ++s) {
            std::vector<std::vector<int>> next;
            for (auto& m : frontier)
                for (int x = off; x < off + n0; ++x) {
                    if (!m.empty() && x < m.back())
                        continue;
                    auto m2 = m;
                    m2.push_back(x);
                    next.push_back(m2);
                }
            for (auto& m : next)
                out.push_back(m);
            frontier = std::move(next);
        }
        return out;
    };
    amsets = grow(na, 0);
    bmsets = grow(nb, na);
    for (auto& ma : amsets)
        for (auto& mb : bmsets)
            if (static_cast<int>(ma.size() + mb.size()) <= multiset_bound) {
                ++expect;
                if (!image.count({ma, mb}))
                    throw EsError("seely_check: split map not surjective");
            }
    if (expect != image.size())
        throw EsError("seely_check: cardinality mismatch");
    return expect;
}

} // namespace gsp::rel
