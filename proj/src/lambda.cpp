#include "gamespecies/lambda.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace gsp::lam {

// ---------------------------------------------------------------------------
// terms

TermPtr tvar(std::string x)
{
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Var;
    t->var = std::move(x);
    return t;
}

TermPtr tapp(TermPtr f, TermPtr arg)
{
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::App;
    t->a = std::move(f);
    t->b = std::move(arg);
    return t;
}

TermPtr tabs(std::string x, TermPtr body)
{
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Abs;
    t->var = std::move(x);
    t->a = std::move(body);
    return t;
}

namespace {

struct TermParser {
    std::string s;
    size_t i = 0;
    void ws()
    {
        while (i < s.size() && isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    std::string ident()
    {
        ws();
        size_t start = i;
        while (i < s.size() && (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        if (start == i)
            throw EsError("term parse error at " + std::to_string(i));
        return s.substr(start, i - start);
    }
    TermPtr term()
    {
        ws();
        if (i < s.size() && s[i] == '\\') {
            ++i;
            std::string x = ident();
            ws();
            if (i >= s.size() || s[i] != '.')
                throw EsError("term: expected '.' after binder");
            ++i;
            return tabs(x, term());
        }
        TermPtr head = atom();
        while (true) {
            ws();
            if (i >= s.size() || s[i] == ')')
                break;
            head = tapp(head, atom());
        }
        return head;
    }
    TermPtr atom()
    {
        ws();
        if (i < s.size() && s[i] == '(') {
            ++i;
            TermPtr t = term();
            ws();
            if (i >= s.size() || s[i] != ')')
                throw EsError("term: expected ')'");
            ++i;
            return t;
        }
        if (i < s.size() && s[i] == '\\')
            return term();
        return tvar(ident());
    }
};

} // namespace

TermPtr parse_term(const std::string& text)
{
    TermParser p{text};
    TermPtr t = p.term();
    p.ws();
    if (p.i != text.size())
        throw EsError("term: trailing input");
    return t;
}

std::string print_term(const TermPtr& t)
{
    switch (t->kind) {
    case Term::Kind::Var:
        return t->var;
    case Term::Kind::Abs:
        return "\\" + t->var + ". " + print_term(t->a);
    case Term::Kind::App: {
        std::string f = print_term(t->a);
        if (t->a->kind == Term::Kind::Abs)
            f = "(" + f + ")";
        std::string x = print_term(t->b);
        if (t->b->kind != Term::Kind::Var)
            x = "(" + x + ")";
        return f + " " + x;
    }
    }
    return {};
}

std::vector<std::string> free_vars(const TermPtr& t)
{
    std::vector<std::string> out;
    auto rec = [&](auto&& self, const TermPtr& u, std::vector<std::string> bound) -> void {
        switch (u->kind) {
        case Term::Kind::Var:
            if (std::find(bound.begin(), bound.end(), u->var) == bound.end() &&
                std::find(out.begin(), out.end(), u->var) == out.end())
                out.push_back(u->var);
            break;
        case Term::Kind::Abs:
            bound.push_back(u->var);
            self(self, u->a, bound);
            break;
        case Term::Kind::App:
            self(self, u->a, bound);
            self(self, u->b, bound);
            break;
        }
    };
    rec(rec, t, {});
    return out;
}

// ---------------------------------------------------------------------------
// objects

DObj dstar() { return DObj{}; }

DObj darrow(std::vector<DObj> args, DObj rest)
{
    DObj o;
    o.star = false;
    o.args = std::move(args);
    o.rest = std::make_shared<DObj>(std::move(rest));
    return o;
}

bool DObj::operator<(const DObj& o) const
{
    if (star != o.star)
        return star > o.star; // * first
    if (star)
        return false;
    if (args != o.args)
        return args < o.args;
    return *rest < *o.rest;
}

bool DObj::operator==(const DObj& o) const { return !(*this < o) && !(o < *this); }

std::string DObj::to_string() const
{
    if (star)
        return "*";
    std::string s = "(";
    for (size_t i = 0; i < args.size(); ++i)
        s += (i ? "," : "") + args[i].to_string();
    return s + ")-o" + rest->to_string();
}

namespace {

struct DObjParser {
    std::string s;
    size_t i = 0;
    void ws()
    {
        while (i < s.size() && isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool lit(const std::string& w)
    {
        ws();
        if (s.compare(i, w.size(), w) == 0) {
            i += w.size();
            return true;
        }
        return false;
    }
    DObj obj()
    {
        ws();
        if (lit("*")) {
            DObj star = dstar();
            // allow "* -o a" (unary sugar is not in the grammar; stop here)
            return star;
        }
        if (lit("(")) {
            std::vector<DObj> args;
            ws();
            if (!lit(")")) {
                args.push_back(obj());
                while (lit(","))
                    args.push_back(obj());
                if (!lit(")"))
                    throw EsError("type: expected ')'");
            }
            if (!lit("-o"))
                throw EsError("type: expected '-o'");
            return darrow(std::move(args), obj());
        }
        throw EsError("type: parse error at " + std::to_string(i));
    }
};

} // namespace

DObj parse_dobj(const std::string& text)
{
    DObjParser p{text};
    DObj o = p.obj();
    p.ws();
    if (p.i != text.size())
        throw EsError("type: trailing input");
    return o;
}

Point parse_point(const std::string& text)
{
    // "(a,...,a);(a,...);...;a" -- the last component is the result type,
    // earlier ones are per-variable sequences written as (a,...)
    Point pt;
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : text) {
        if (c == '(')
            ++depth;
        if (c == ')')
            --depth;
        if (c == ';' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    parts.push_back(cur);
    if (parts.empty())
        throw EsError("point: empty");
    for (size_t k = 0; k + 1 < parts.size(); ++k) {
        DObjParser p{parts[k]};
        std::vector<DObj> seq;
        p.ws();
        if (!p.lit("("))
            throw EsError("point: variable sequence must be parenthesized");
        p.ws();
        if (!p.lit(")")) {
            seq.push_back(p.obj());
            while (p.lit(","))
                seq.push_back(p.obj());
            if (!p.lit(")"))
                throw EsError("point: expected ')'");
        }
        p.ws();
        if (p.i != parts[k].size())
            throw EsError("point: trailing input in a sequence");
        pt.ctx.push_back(std::move(seq));
    }
    pt.type = parse_dobj(parts.back());
    return pt;
}

DObj strip(const DObj& a)
{
    if (a.star)
        return a;
    std::vector<DObj> args;
    for (const DObj& x : a.args)
        args.push_back(strip(x));
    DObj rest = strip(*a.rest);
    if (args.empty())
        return rest;
    return darrow(std::move(args), std::move(rest));
}

DObj canonical(const DObj& a)
{
    DObj s = strip(a);
    if (s.star)
        return s;
    std::vector<DObj> args;
    for (const DObj& x : s.args)
        args.push_back(canonical(x));
    std::sort(args.begin(), args.end());
    return darrow(std::move(args), canonical(*s.rest));
}

// ---------------------------------------------------------------------------
// morphisms

bool DCore::operator<(const DCore& o) const
{
    if (perm != o.perm)
        return perm < o.perm;
    if (comps != o.comps)
        return comps < o.comps;
    bool lr = rest != nullptr, rr = o.rest != nullptr;
    if (lr != rr)
        return lr < rr;
    if (!lr)
        return false;
    return *rest < *o.rest;
}

bool DCore::operator==(const DCore& o) const { return !(*this < o) && !(o < *this); }

namespace {

DCore core_id(const DObj& stripped)
{
    DCore c;
    if (stripped.star)
        return c;
    c.perm.resize(stripped.args.size());
    std::iota(c.perm.begin(), c.perm.end(), 0);
    for (const DObj& a : stripped.args)
        c.comps.push_back(core_id(a));
    c.rest = std::make_shared<DCore>(core_id(*stripped.rest));
    return c;
}

bool core_is_id(const DCore& c)
{
    for (size_t i = 0; i < c.perm.size(); ++i)
        if (c.perm[i] != static_cast<int>(i) || !core_is_id(c.comps[i]))
            return false;
    return !c.rest || core_is_id(*c.rest);
}

// g o f with f : a -> b, g : b -> c (cores over stripped objects)
DCore core_then(const DCore& f, const DCore& g)
{
    DCore out;
    if (!f.rest && !g.rest)
        return out; // star
    if (!f.rest || !g.rest)
        throw EsError("dmor: shape mismatch in composition");
    // sequence parts are contravariant: out.seq = g.seq then f.seq
    int n = static_cast<int>(f.perm.size());
    out.perm.resize(n);
    out.comps.resize(n);
    for (int i = 0; i < n; ++i) {
        out.perm[i] = g.perm[f.perm[i]];
        out.comps[i] = core_then(g.comps[f.perm[i]], f.comps[i]);
    }
    out.rest = std::make_shared<DCore>(core_then(*f.rest, *g.rest));
    return out;
}

DCore core_inv(const DCore& f)
{
    DCore out;
    if (!f.rest)
        return out;
    int n = static_cast<int>(f.perm.size());
    out.perm.resize(n);
    out.comps.resize(n);
    for (int i = 0; i < n; ++i)
        out.perm[f.perm[i]] = i;
    for (int i = 0; i < n; ++i)
        out.comps[i] = core_inv(f.comps[f.perm[i]]);
    out.rest = std::make_shared<DCore>(core_inv(*f.rest));
    return out;
}

std::vector<DCore> core_homs(const DObj& a, const DObj& b)
{
    // a, b stripped
    std::vector<DCore> out;
    if (a.star && b.star) {
        out.push_back(DCore{});
        return out;
    }
    if (a.star || b.star)
        return out;
    if (a.args.size() != b.args.size())
        return out;
    int n = static_cast<int>(a.args.size());
    std::vector<DCore> rests = core_homs(*a.rest, *b.rest);
    if (rests.empty())
        return out;
    // contravariant sequence part: perms pi with comps[i] : b.args[pi[i]] ->
    // a.args[i]... (cod-to-dom orientation: comps[i] : cod-args perm -> dom)
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    do {
        std::vector<std::vector<DCore>> choices(n);
        bool possible = true;
        for (int i = 0; i < n && possible; ++i) {
            choices[i] = core_homs(b.args[pi[i]], a.args[i]);
            if (choices[i].empty())
                possible = false;
        }
        if (!possible)
            continue;
        std::vector<size_t> pick(n, 0);
        while (true) {
            for (const DCore& r : rests) {
                DCore c;
                c.perm = pi;
                for (int i = 0; i < n; ++i)
                    c.comps.push_back(choices[i][pick[i]]);
                c.rest = std::make_shared<DCore>(r);
                out.push_back(std::move(c));
            }
            size_t k = 0;
            while (k < pick.size() && ++pick[k] == choices[k].size()) {
                pick[k] = 0;
                ++k;
            }
            if (k == pick.size() || n == 0)
                break;
        }
    } while (std::next_permutation(pi.begin(), pi.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

DMor did(const DObj& a) { return DMor{a, a, core_id(strip(a))}; }

bool dmor_is_id(const DMor& m) { return m.dom == m.cod && core_is_id(m.core); }

DMor dthen(const DMor& f, const DMor& g)
{
    if (!(f.cod == g.dom))
        throw EsError("dmor: endpoints do not compose");
    return DMor{f.dom, g.cod, core_then(f.core, g.core)};
}

DMor dinv(const DMor& f) { return DMor{f.cod, f.dom, core_inv(f.core)}; }

std::vector<DMor> dhoms(const DObj& a, const DObj& b)
{
    std::vector<DMor> out;
    for (DCore& c : core_homs(strip(a), strip(b)))
        out.push_back(DMor{a, b, std::move(c)});
    return out;
}

std::string DMor::to_string() const
{
    std::ostringstream os;
    os << dom.to_string() << (dmor_is_id(*this) ? " =id= " : " -> ") << cod.to_string();
    return os.str();
}

SeqMor seq_id(const std::vector<DObj>& s)
{
    SeqMor m;
    m.dom = m.cod = s;
    m.perm.resize(s.size());
    std::iota(m.perm.begin(), m.perm.end(), 0);
    for (const DObj& a : s)
        m.comps.push_back(did(a));
    return m;
}

SeqMor seq_then(const SeqMor& f, const SeqMor& g)
{
    if (!(f.cod == g.dom))
        throw EsError("seqmor: endpoints do not compose");
    SeqMor out;
    out.dom = f.dom;
    out.cod = g.cod;
    int n = static_cast<int>(f.perm.size());
    out.perm.resize(n);
    out.comps.resize(n);
    for (int i = 0; i < n; ++i) {
        out.perm[i] = f.perm[g.perm[i]];
        out.comps[i] = dthen(f.comps[g.perm[i]], g.comps[i]);
    }
    return out;
}

std::vector<SeqMor> seq_homs(const std::vector<DObj>& a, const std::vector<DObj>& b)
{
    std::vector<SeqMor> out;
    if (a.size() != b.size())
        return out;
    int n = static_cast<int>(a.size());
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    do {
        std::vector<std::vector<DMor>> choices(n);
        bool possible = true;
        for (int i = 0; i < n && possible; ++i) {
            choices[i] = dhoms(a[pi[i]], b[i]);
            if (choices[i].empty())
                possible = false;
        }
        if (!possible)
            continue;
        std::vector<size_t> pick(n, 0);
        while (true) {
            SeqMor m;
            m.dom = a;
            m.cod = b;
            m.perm = pi;
            for (int i = 0; i < n; ++i)
                m.comps.push_back(choices[i][pick[i]]);
            out.push_back(std::move(m));
            size_t k = 0;
            while (k < pick.size() && ++pick[k] == choices[k].size()) {
                pick[k] = 0;
                ++k;
            }
            if (k == pick.size() || n == 0)
                break;
        }
    } while (std::next_permutation(pi.begin(), pi.end()));
    return out;
}

CtxMor ctx_id(const std::vector<std::vector<DObj>>& ctx)
{
    CtxMor m;
    for (const auto& s : ctx)
        m.per_var.push_back(seq_id(s));
    return m;
}

CtxMor ctx_then(const CtxMor& f, const CtxMor& g)
{
    if (f.per_var.size() != g.per_var.size())
        throw EsError("ctxmor: arity mismatch");
    CtxMor out;
    for (size_t v = 0; v < f.per_var.size(); ++v)
        out.per_var.push_back(seq_then(f.per_var[v], g.per_var[v]));
    return out;
}

// ---------------------------------------------------------------------------
// derivations

bool Deriv::operator<(const Deriv& o) const
{
    if (kind != o.kind)
        return kind < o.kind;
    if (!(ctx == o.ctx))
        return ctx < o.ctx;
    if (!(type == o.type))
        return type < o.type;
    switch (kind) {
    case Kind::Var:
        return std::tie(var, f) < std::tie(o.var, o.f);
    case Kind::Abs: {
        if (!(bound_args == o.bound_args))
            return bound_args < o.bound_args;
        if (!(body_type == o.body_type))
            return body_type < o.body_type;
        if (!(f == o.f))
            return f < o.f;
        return *body < *o.body;
    }
    case Kind::App: {
        if (args.size() != o.args.size())
            return args.size() < o.args.size();
        if (*fun < *o.fun || *o.fun < *fun)
            return *fun < *o.fun;
        for (size_t i = 0; i < args.size(); ++i)
            if (*args[i] < *o.args[i] || *o.args[i] < *args[i])
                return *args[i] < *o.args[i];
        auto key = [](const CtxMor& m) {
            std::vector<SeqMor> v = m.per_var;
            return v;
        };
        return key(eta) < key(o.eta);
    }
    }
    return false;
}

bool deriv_less(const DerivPtr& a, const DerivPtr& b) { return *a < *b; }
bool deriv_equal(const DerivPtr& a, const DerivPtr& b)
{
    return !deriv_less(a, b) && !deriv_less(b, a);
}

std::string Deriv::to_string() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::Var:
        os << "x" << var << "[" << f.to_string() << "]";
        break;
    case Kind::Abs:
        os << "lam(" << body->to_string() << ")[" << f.to_string() << "]";
        break;
    case Kind::App: {
        os << "app(" << fun->to_string();
        for (auto& a : args)
            os << ", " << a->to_string();
        os << ")";
        break;
    }
    }
    return os.str();
}

DerivPtr make_var(std::vector<std::vector<DObj>> ctx, int var, DMor f)
{
    auto d = std::make_shared<Deriv>();
    d->kind = Deriv::Kind::Var;
    d->ctx = std::move(ctx);
    d->var = var;
    d->type = f.cod;
    d->f = std::move(f);
    return d;
}

DerivPtr make_abs(DerivPtr body, std::vector<DObj> bound_args, DObj body_type, DMor f, DObj type)
{
    auto d = std::make_shared<Deriv>();
    d->kind = Deriv::Kind::Abs;
    d->ctx = body->ctx;
    d->ctx.pop_back(); // the bound variable is the last context entry
    d->body = std::move(body);
    d->bound_args = std::move(bound_args);
    d->body_type = std::move(body_type);
    d->f = std::move(f);
    d->type = std::move(type);
    return d;
}

DerivPtr make_app(DerivPtr fun, std::vector<DerivPtr> args, CtxMor eta)
{
    auto d = std::make_shared<Deriv>();
    d->kind = Deriv::Kind::App;
    d->fun = std::move(fun);
    d->args = std::move(args);
    d->eta = std::move(eta);
    d->type = *d->fun->type.rest;
    for (const auto& s : d->eta.per_var)
        d->ctx.push_back(s.dom);
    return d;
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

// all canonical objects of syntactic size <= bound
std::vector<DObj> object_pool(int bound)
{
    std::vector<DObj> out = {dstar()};
    // iterative deepening: build arrows from smaller pool members
    bool grew = true;
    auto size_of = [&](auto&& self, const DObj& o) -> int {
        if (o.star)
            return 1;
        int s = 1 + self(self, *o.rest);
        for (const DObj& a : o.args)
            s += self(self, a);
        return s;
    };
    while (grew) {
        grew = false;
        std::vector<DObj> cur = out;
        for (const DObj& rest : cur) {
            // argument sequences over the pool, sorted, small
            std::vector<std::vector<DObj>> seqs = {{}};
            for (int len = 1; len <= 3; ++len) {
                std::vector<std::vector<DObj>> next;
                for (auto& s : seqs)
                    if (static_cast<int>(s.size()) == len - 1)
                        for (const DObj& a : cur) {
                            if (!s.empty() && a < s.back())
                                continue;
                            auto s2 = s;
                            s2.push_back(a);
                            next.push_back(s2);
                        }
                for (auto& s : next)
                    seqs.push_back(s);
            }
            for (auto& s : seqs) {
                if (s.empty())
                    continue; // canonical objects have no empty heads
                DObj cand = darrow(s, rest);
                if (size_of(size_of, cand) > bound)
                    continue;
                if (std::find(out.begin(), out.end(), cand) == out.end()) {
                    out.push_back(cand);
                    grew = true;
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int obj_size(const DObj& o)
{
    if (o.star)
        return 1;
    int s = 1 + obj_size(*o.rest);
    for (const DObj& a : o.args)
        s += obj_size(a);
    return s;
}

// ordered splittings of a sequence's index set into k parts (as index lists)
void splittings(int n, int parts, std::vector<std::vector<std::vector<int>>>& out)
{
    std::vector<std::vector<int>> cur(parts);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (int p = 0; p < parts; ++p) {
            cur[p].push_back(i);
            self(self, i + 1);
            cur[p].pop_back();
        }
    };
    if (parts == 0) {
        if (n == 0)
            out.push_back({});
        return;
    }
    rec(rec, 0);
}

struct Enumerator {
    std::vector<std::string> vars;
    int bound;
    std::map<std::pair<const Term*, std::pair<std::vector<std::vector<DObj>>, DObj>>,
             std::vector<DerivPtr>>
        memo;

    std::vector<DerivPtr> derivs(const TermPtr& m, const std::vector<std::vector<DObj>>& ctx,
                                 const DObj& type)
    {
        auto key = std::make_pair(m.get(), std::make_pair(ctx, type));
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
        memo[key] = {}; // cut loops defensively
        std::vector<DerivPtr> out;
        switch (m->kind) {
        case Term::Kind::Var: {
            int v = var_index(m->var);
            bool shape_ok = true;
            for (size_t u = 0; u < ctx.size(); ++u) {
                if (static_cast<int>(u) == v) {
                    if (ctx[u].size() != 1)
                        shape_ok = false;
                } else if (!ctx[u].empty())
                    shape_ok = false;
            }
            if (!shape_ok)
                break;
            for (DMor& f : dhoms(ctx[v][0], type))
                out.push_back(make_var(ctx, v, std::move(f)));
            break;
        }
        case Term::Kind::Abs: {
            // candidates (bound_args, body_type) with hom into `type`
            DObj st = canonical(type);
            std::vector<std::pair<std::vector<DObj>, DObj>> cands;
            if (st.star)
                cands.push_back({{}, dstar()});
            else {
                // permutations of the canonical argument multiset
                std::vector<DObj> base = st.args;
                std::sort(base.begin(), base.end());
                do
                    cands.push_back({base, *st.rest});
                while (std::next_permutation(base.begin(), base.end()));
            }
            for (auto& [bargs, btype] : cands) {
                DObj source = darrow(bargs, btype);
                std::vector<DMor> fs = dhoms(source, type);
                if (fs.empty())
                    continue;
                auto ctx2 = ctx;
                ctx2.push_back(bargs);
                vars.push_back(m->var);
                auto bodies = derivs(m->a, ctx2, btype);
                vars.pop_back();
                for (const DerivPtr& b : bodies)
                    for (const DMor& f : fs)
                        out.push_back(make_abs(b, bargs, btype, f, type));
            }
            break;
        }
        case Term::Kind::App: {
            // enumerate candidate argument types from the pool
            std::vector<DObj> pool = object_pool(bound);
            for (int k = 0; k <= 3; ++k) {
                // argument type tuples (sorted to limit duplicates; the
                // congruence quotient handles permuted variants)
                std::vector<std::vector<DObj>> tuples = {{}};
                for (int j = 0; j < k; ++j) {
                    std::vector<std::vector<DObj>> next;
                    for (auto& t : tuples)
                        for (const DObj& a : pool) {
                            auto t2 = t;
                            t2.push_back(a);
                            next.push_back(t2);
                        }
                    tuples = std::move(next);
                }
                for (auto& argtypes : tuples) {
                    int total = obj_size(type);
                    for (auto& at : argtypes)
                        total += obj_size(at);
                    if (total > bound + obj_size(type))
                        continue;
                    DObj funtype = darrow(argtypes, type);
                    // context splittings per variable
                    std::vector<std::vector<std::vector<std::vector<int>>>> per_var;
                    bool dead = false;
                    for (auto& seq : ctx) {
                        std::vector<std::vector<std::vector<int>>> sp;
                        splittings(static_cast<int>(seq.size()), k + 1, sp);
                        per_var.push_back(std::move(sp));
                        if (per_var.back().empty())
                            dead = true;
                    }
                    if (dead)
                        continue;
                    // iterate the product of per-variable splittings
                    std::vector<size_t> pick(ctx.size(), 0);
                    while (true) {
                        // build the k+1 sub-contexts (canonical entries)
                        std::vector<std::vector<std::vector<DObj>>> sub(k + 1);
                        for (size_t v = 0; v < ctx.size(); ++v) {
                            const auto& split = per_var[v][pick[v]];
                            for (int p = 0; p <= k; ++p) {
                                std::vector<DObj> entry;
                                for (int idx : split[p])
                                    entry.push_back(ctx[v][idx]);
                                sub[p].push_back(entry);
                            }
                        }
                        auto funs = derivs(m->a, sub[0], funtype);
                        if (!funs.empty()) {
                            std::vector<std::vector<DerivPtr>> argds(k);
                            bool alive = true;
                            for (int p = 0; p < k && alive; ++p) {
                                argds[p] = derivs(m->b, sub[p + 1], argtypes[p]);
                                if (argds[p].empty())
                                    alive = false;
                            }
                            if (alive) {
                                // eta: identity-shaped context morphism from
                                // ctx to the pointwise concatenation
                                CtxMor eta;
                                for (size_t v = 0; v < ctx.size(); ++v) {
                                    SeqMor sm;
                                    sm.dom = ctx[v];
                                    std::vector<int> order;
                                    for (int p = 0; p <= k; ++p)
                                        for (int idx : per_var[v][pick[v]][p])
                                            order.push_back(idx);
                                    for (int idx : order) {
                                        sm.cod.push_back(ctx[v][idx]);
                                        sm.comps.push_back(did(ctx[v][idx]));
                                    }
                                    // cod position i comes from dom position
                                    // order[i]
                                    sm.perm = order;
                                    eta.per_var.push_back(std::move(sm));
                                }
                                // assemble all combinations
                                std::vector<std::vector<DerivPtr>> acc = {{}};
                                for (int p = 0; p < k; ++p) {
                                    std::vector<std::vector<DerivPtr>> next;
                                    for (auto& pref : acc)
                                        for (auto& d : argds[p]) {
                                            auto pr = pref;
                                            pr.push_back(d);
                                            next.push_back(pr);
                                        }
                                    acc = std::move(next);
                                }
                                for (const DerivPtr& fd : funs)
                                    for (auto& chosen : acc)
                                        out.push_back(make_app(fd, chosen, eta));
                            }
                        }
                        size_t v = 0;
                        while (v < pick.size() && ++pick[v] == per_var[v].size()) {
                            pick[v] = 0;
                            ++v;
                        }
                        if (v == pick.size() || ctx.empty())
                            break;
                    }
                    if (ctx.empty() && k >= 0) {
                        // handled above via the single empty splitting
                    }
                }
            }
            break;
        }
        }
        std::sort(out.begin(), out.end(), deriv_less);
        out.erase(std::unique(out.begin(), out.end(), deriv_equal), out.end());
        memo[key] = out;
        return out;
    }

    int var_index(const std::string& x) const
    {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == x)
                return static_cast<int>(i);
        throw EsError("unbound variable " + x);
    }
};

} // namespace

std::vector<DerivPtr> enumerate_derivations(const TermPtr& m, const std::vector<std::string>& vars,
                                            const std::vector<std::vector<DObj>>& ctx,
                                            const DObj& type, int type_size_bound)
{
    Enumerator en;
    en.vars = vars;
    int b = type_size_bound;
    if (b == 0) {
        b = obj_size(type);
        for (auto& s : ctx)
            for (auto& a : s)
                b = std::max(b, obj_size(a));
    }
    en.bound = b;
    return en.derivs(m, ctx, type);
}

// ---------------------------------------------------------------------------
// actions

DerivPtr right_action(const DerivPtr& d, const CtxMor& theta)
{
    switch (d->kind) {
    case Deriv::Kind::Var: {
        // compose the axiom morphism with the single component at the var
        const SeqMor& sm = theta.per_var[d->var];
        DMor g = sm.comps[0];
        auto ctx = d->ctx;
        for (size_t v = 0; v < ctx.size(); ++v)
            ctx[v] = theta.per_var[v].dom;
        return make_var(std::move(ctx), d->var, dthen(g, d->f));
    }
    case Deriv::Kind::Abs: {
        CtxMor theta2 = theta;
        theta2.per_var.push_back(seq_id(d->bound_args));
        return make_abs(right_action(d->body, theta2), d->bound_args, d->body_type, d->f,
                        d->type);
    }
    case Deriv::Kind::App: {
        return make_app(d->fun, d->args, ctx_then(theta, d->eta));
    }
    }
    throw EsError("unreachable");
}

DerivPtr left_action(const DMor& g, const DerivPtr& d)
{
    switch (d->kind) {
    case Deriv::Kind::Var:
        return make_var(d->ctx, d->var, dthen(d->f, g));
    case Deriv::Kind::Abs:
        return make_abs(d->body, d->bound_args, d->body_type, dthen(d->f, g), g.cod);
    case Deriv::Kind::App: {
        // push id_args -o g into the function derivation
        DObj funtype = d->fun->type;
        DMor arrow_mor;
        arrow_mor.dom = funtype;
        arrow_mor.cod = darrow(funtype.args, g.cod);
        // core: contravariant part identity, forward part g
        DObj sd = strip(funtype);
        DCore c;
        if (sd.star) {
            // the function type strips to the result only when args are
            // empty; the forward core is just g's core
            c = g.core;
        } else {
            c.perm.resize(sd.args.size());
            std::iota(c.perm.begin(), c.perm.end(), 0);
            for (const DObj& a : sd.args)
                c.comps.push_back(core_id(a));
            c.rest = std::make_shared<DCore>(g.core);
        }
        arrow_mor.core = std::move(c);
        return make_app(left_action(arrow_mor, d->fun), d->args, d->eta);
    }
    }
    throw EsError("unreachable");
}

// ---------------------------------------------------------------------------
// congruence

namespace {

// structural neighbours of a derivation under the three congruence moves
// (both orientations), including rewriting inside subderivations
std::vector<DerivPtr> congruence_neighbours(const DerivPtr& d)
{
    std::vector<DerivPtr> out;
    auto add = [&](DerivPtr n) { out.push_back(std::move(n)); };

    switch (d->kind) {
    case Deriv::Kind::Var:
        break;
    case Deriv::Kind::Abs: {
        // rule: Abs([g] body{id, gbar}, f) ~ Abs(body, f o (gbar -o g))
        // orientation A: pull an iso out of the final morphism
        // enumerate isos gbar : a' -> bound_args (as a seq morphism) and
        // g : body_type -> b'
        for (auto& nb : congruence_neighbours(d->body))
            add(make_abs(nb, d->bound_args, d->body_type, d->f, d->type));
        // slide: for every iso pair, rewrite
        std::vector<DObj> cand_args = d->bound_args;
        std::sort(cand_args.begin(), cand_args.end());
        std::vector<std::vector<DObj>> arg_variants;
        do
            arg_variants.push_back(cand_args);
        while (std::next_permutation(cand_args.begin(), cand_args.end()));
        for (const auto& a2 : arg_variants)
            for (SeqMor& gbar : seq_homs(a2, d->bound_args)) {
                for (DMor& g : dhoms(d->body_type, canonical(d->body_type))) {
                    // new body: [g] body{id_ctx, gbar}
                    CtxMor theta = ctx_id(d->body->ctx);
                    theta.per_var.back() = gbar;
                    DerivPtr nb = left_action(g, right_action(d->body, theta));
                    // new final morphism: f o (gbar -o g)^-1 adjusted:
                    // (gbar^s -o g) : (bound_args -o body_type) ->
                    //                 (a2 -o g.cod)
                    DObj from = darrow(d->bound_args, d->body_type);
                    DObj to = darrow(a2, g.cod);
                    // build the arrow morphism explicitly
                    DObj sf = strip(from), st_ = strip(to);
                    DMor am;
                    am.dom = to; // contravariant: maps to -> from? no:
                    // arrow morphism goes (bound -o btype) -> (a2 -o gcod)
                    am.dom = from;
                    am.cod = to;
                    if (sf.star || st_.star) {
                        if (!(sf == st_))
                            continue;
                        am.core = core_id(sf);
                    } else {
                        DCore c;
                        // contravariant part: from a2-args to bound args:
                        // the stripped gbar
                        int n = static_cast<int>(gbar.perm.size());
                        // the arrow core's seq maps cod-args -> dom-args;
                        // sequence components relate strip shapes
                        c.perm.resize(n);
                        c.comps.resize(n);
                        bool ok = true;
                        // gbar : a2 -> bound_args with comps[i] :
                        // a2[perm[i]] -> bound[i]; the arrow's seq part needs
                        // cod-args(a2) -> dom-args(bound): use gbar inverse
                        SeqMor ginv;
                        ginv.dom = gbar.cod;
                        ginv.cod = gbar.dom;
                        ginv.perm.resize(n);
                        ginv.comps.resize(n);
                        for (int i = 0; i < n; ++i)
                            ginv.perm[gbar.perm[i]] = i;
                        for (int i = 0; i < n; ++i)
                            ginv.comps[i] = dinv(gbar.comps[ginv.perm[i]]);
                        for (int i = 0; i < n; ++i) {
                            c.perm[i] = ginv.perm[i];
                            c.comps[i] = ginv.comps[i].core;
                        }
                        c.rest = std::make_shared<DCore>(g.core);
                        am.core = std::move(c);
                        if (!ok)
                            continue;
                    }
                    // candidate fs with f = f' o am, i.e. f' = f o am^{-1}
                    DMor fprime = dthen(dinv(am), d->f);
                    add(make_abs(nb, a2, g.cod, fprime, d->type));
                }
            }
        break;
    }
    case Deriv::Kind::App: {
        for (auto& nf : congruence_neighbours(d->fun))
            add(make_app(nf, d->args, d->eta));
        for (size_t i = 0; i < d->args.size(); ++i)
            for (auto& na : congruence_neighbours(d->args[i])) {
                auto args2 = d->args;
                args2[i] = na;
                add(make_app(d->fun, args2, d->eta));
            }
        // rule: premise-context slide; theta_j acting on premises vs eta
        // composed; realized by pushing identities is trivial, so use the
        // generators: move an iso from eta into a premise
        // rule: permutation slide between the argument premises and the
        // function type
        int k = static_cast<int>(d->args.size());
        std::vector<int> sigma(k);
        std::iota(sigma.begin(), sigma.end(), 0);
        const DObj& funtype = d->fun->type;
        do {
            // f_i : b_i -> a_{sigma(i)} isos between the argument types
            bool identity = true;
            for (int i = 0; i < k; ++i)
                if (sigma[i] != i)
                    identity = false;
            if (identity)
                continue;
            std::vector<std::vector<DMor>> fchoices(k);
            bool possible = true;
            for (int i = 0; i < k && possible; ++i) {
                fchoices[i] = dhoms(d->args[i]->type, funtype.args[sigma[i]]);
                if (fchoices[i].empty())
                    possible = false;
            }
            if (!possible)
                continue;
            std::vector<size_t> pick(k, 0);
            while (true) {
                // new function derivation: [fbar^sigma -o id] fun
                DObj from = funtype;
                std::vector<DObj> new_args(k);
                for (int i = 0; i < k; ++i)
                    new_args[i] = d->args[i]->type;
                DObj to = darrow(new_args, *funtype.rest);
                DObj sf = strip(from), st_ = strip(to);
                DMor am;
                am.dom = from;
                am.cod = to;
                if (sf.star && st_.star)
                    am.core = core_id(sf);
                else if (sf.star || st_.star) {
                    // shapes differ: skip
                    goto advance;
                } else {
                    DCore c;
                    int n = static_cast<int>(sf.args.size());
                    if (static_cast<int>(st_.args.size()) != n)
                        goto advance;
                    c.perm.resize(k);
                    c.comps.resize(k);
                    for (int i = 0; i < k; ++i) {
                        // seq part maps cod args (new_args) -> dom args
                        // (funtype.args): component i : new_args[?] ...
                        // we need comps[i] : cod-args[perm[i]] -> dom-args[i]
                        // dom-args[i] = funtype.args[i]; its preimage is
                        // new_args[sigma^{-1}(i)] via f_{sigma^{-1}(i)}
                        int j = -1;
                        for (int x = 0; x < k; ++x)
                            if (sigma[x] == i)
                                j = x;
                        c.perm[i] = j;
                        c.comps[i] = fchoices[j][pick[j]].core;
                    }
                    c.rest = std::make_shared<DCore>(core_id(*sf.rest));
                    am.core = std::move(c);
                }
                {
                    DerivPtr nf = left_action(am, d->fun);
                    // new argument premises: [f_i^{-1}] args_{...}?
                    // the rule relates: fun at <b>-o a with args [f_i]pi_{s(i)}
                    // to fun' at <a>-o a with args pi_i. Here we go the
                    // other way: args'_i = [f_{?}] ...
                    // args for the new application: position i expects type
                    // new_args[i] = old args[i]. After changing the function
                    // type the premises are re-ordered by sigma with the
                    // isos folded in:
                    std::vector<DerivPtr> args2(k);
                    for (int i = 0; i < k; ++i)
                        args2[i] = d->args[i];
                    // eta gains the block permutation on the argument parts
                    // of the context; our eta already records the full
                    // splitting, so permuting premises permutes its blocks
                    // -- with on-the-nose identity-carrier etas this is a
                    // different eta; rebuild by permuting blocks
                    // (the function block stays first)
                    // Note: we keep eta unchanged because the premise list
                    // order is unchanged; only the function's type changed.
                    add(make_app(nf, args2, d->eta));
                }
            advance:;
                size_t adv = 0;
                while (adv < pick.size() && ++pick[adv] == fchoices[adv].size()) {
                    pick[adv] = 0;
                    ++adv;
                }
                if (adv == pick.size() || k == 0)
                    break;
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        break;
    }
    }
    return out;
}

} // namespace

CongruenceResult congruence_classes(const std::vector<DerivPtr>& derivs, bool reverse_order)
{
    // saturate the set under congruence moves, with union-find over the
    // discovered derivations
    std::vector<DerivPtr> all = derivs;
    if (reverse_order)
        std::reverse(all.begin(), all.end());
    auto find_or_add = [&](const DerivPtr& d) -> int {
        for (size_t i = 0; i < all.size(); ++i)
            if (deriv_equal(all[i], d))
                return static_cast<int>(i);
        all.push_back(d);
        return static_cast<int>(all.size()) - 1;
    };
    std::vector<int> parent;
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    parent.resize(all.size());
    std::iota(parent.begin(), parent.end(), 0);
    size_t head = 0;
    const size_t cap = 200000;
    while (head < all.size()) {
        if (all.size() > cap)
            throw EsError("congruence saturation exceeded the cap");
        DerivPtr d = all[head];
        for (auto& n : congruence_neighbours(d)) {
            int j = find_or_add(n);
            while (parent.size() < all.size()) {
                parent.push_back(static_cast<int>(parent.size()));
            }
            int a = find(static_cast<int>(head));
            int b = find(j);
            if (a != b)
                parent[a] = b;
        }
        ++head;
    }
    // collect classes restricted to the original derivations
    CongruenceResult out;
    std::map<int, std::vector<DerivPtr>> by_root;
    for (const DerivPtr& d : derivs) {
        int idx = find_or_add(d);
        by_root[find(idx)].push_back(d);
    }
    for (auto& [r, ds] : by_root)
        out.classes.push_back(ds);
    return out;
}

ItdResult itd(const TermPtr& m, const std::vector<std::string>& vars, const Point& point)
{
    ItdResult out;
    auto ds = enumerate_derivations(m, vars, point.ctx, point.type);
    out.derivation_count = ds.size();
    auto cong = congruence_classes(ds);
    out.class_count = cong.class_count();
    for (auto& cls : cong.classes)
        out.representatives.push_back(cls.front());
    return out;
}

} // namespace gsp::lam
