#pragma once

#include "gamespecies/collapse.hpp"

#include <memory>

namespace gsp::lam {

// --- terms ---

struct Term;
using TermPtr = std::shared_ptr<const Term>;
struct Term {
    enum class Kind { Var, App, Abs } kind;
    std::string var;
    TermPtr a, b; // Abs: a = body; App: a = function, b = argument
};
TermPtr tvar(std::string x);
TermPtr tapp(TermPtr f, TermPtr arg);
TermPtr tabs(std::string x, TermPtr body);
TermPtr parse_term(const std::string& text);
std::string print_term(const TermPtr& t);
std::vector<std::string> free_vars(const TermPtr& t);

// --- intersection types over the extensional graph model ---

/// objects: * | <a_1..a_k> -o a
struct DObj {
    bool star = true;
    std::vector<DObj> args;
    std::shared_ptr<DObj> rest;
    bool operator<(const DObj& o) const;
    bool operator==(const DObj& o) const;
    std::string to_string() const;
};
DObj dstar();
DObj darrow(std::vector<DObj> args, DObj rest);
/// parse "((*,*)-o*,*,*) ; *"-style type expressions; `point` parses a full
/// context;type point
DObj parse_dobj(const std::string& text);
struct Point {
    std::vector<std::vector<DObj>> ctx; // one sequence per variable
    DObj type;
};
Point parse_point(const std::string& text);

/// fully e-collapsed form: no empty argument sequences anywhere
DObj strip(const DObj& a);
/// canonical representative of the iso class: stripped, sequences sorted
DObj canonical(const DObj& a);

/// morphisms of the extensional model, stored as structural cores between
/// the stripped endpoints (the e / e-inverse generators become invisible)
struct DCore {
    // Star has empty args/comps; Arrow carries the contravariant sequence
    // part (perm, comps from cod args to dom args) and the forward rest
    std::vector<int> perm;
    std::vector<DCore> comps;
    std::shared_ptr<DCore> rest; // null for star
    bool operator<(const DCore& o) const;
    bool operator==(const DCore& o) const;
};
struct DMor {
    DObj dom, cod;
    DCore core;
    bool operator<(const DMor& o) const
    {
        return std::tie(dom, cod, core) < std::tie(o.dom, o.cod, o.core);
    }
    bool operator==(const DMor& o) const
    {
        return dom == o.dom && cod == o.cod && core == o.core;
    }
    std::string to_string() const;
};
DMor did(const DObj& a);
bool dmor_is_id(const DMor& m);
DMor dthen(const DMor& f, const DMor& g); // g o f
DMor dinv(const DMor& f);
std::vector<DMor> dhoms(const DObj& a, const DObj& b);

/// Sym(D*)-morphism between sequences, components indexed by the codomain
struct SeqMor {
    std::vector<DObj> dom, cod;
    std::vector<int> perm;      // cod index -> dom index
    std::vector<DMor> comps;    // comps[i] : dom[perm[i]] -> cod[i]
    bool operator<(const SeqMor& o) const
    {
        return std::tie(dom, cod, perm, comps) < std::tie(o.dom, o.cod, o.perm, o.comps);
    }
    bool operator==(const SeqMor& o) const
    {
        return dom == o.dom && cod == o.cod && perm == o.perm && comps == o.comps;
    }
};
SeqMor seq_id(const std::vector<DObj>& s);
SeqMor seq_then(const SeqMor& f, const SeqMor& g);
std::vector<SeqMor> seq_homs(const std::vector<DObj>& a, const std::vector<DObj>& b);

/// context morphism: one sequence morphism per variable
struct CtxMor {
    std::vector<SeqMor> per_var;
};
CtxMor ctx_id(const std::vector<std::vector<DObj>>& ctx);
CtxMor ctx_then(const CtxMor& f, const CtxMor& g);

// --- derivations ---

struct Deriv;
using DerivPtr = std::shared_ptr<const Deriv>;
struct Deriv {
    enum class Kind { Var, Abs, App } kind;
    // judgement
    std::vector<std::vector<DObj>> ctx;
    DObj type;
    // Var
    int var = -1;
    DMor f; // Var: the axiom morphism; Abs: the final morphism
    // Abs
    DerivPtr body;
    std::vector<DObj> bound_args;
    DObj body_type;
    // App
    DerivPtr fun;
    std::vector<DerivPtr> args;
    CtxMor eta;

    bool operator<(const Deriv& o) const;
    std::string to_string() const;
};
DerivPtr make_var(std::vector<std::vector<DObj>> ctx, int var, DMor f);
DerivPtr make_abs(DerivPtr body, std::vector<DObj> bound_args, DObj body_type, DMor f,
                  DObj type);
DerivPtr make_app(DerivPtr fun, std::vector<DerivPtr> args, CtxMor eta);
bool deriv_equal(const DerivPtr& a, const DerivPtr& b);
bool deriv_less(const DerivPtr& a, const DerivPtr& b);

/// all derivations of vars |- M : type in the given context point
std::vector<DerivPtr> enumerate_derivations(const TermPtr& m,
                                            const std::vector<std::string>& vars,
                                            const std::vector<std::vector<DObj>>& ctx,
                                            const DObj& type, int type_size_bound = 0);

/// the right action pi{theta} and the left action [f]pi
DerivPtr right_action(const DerivPtr& d, const CtxMor& theta);
DerivPtr left_action(const DMor& f, const DerivPtr& d);

/// congruence saturation: partitions the given derivations (plus any
/// neighbours generated by the congruence moves) into classes
struct CongruenceResult {
    std::vector<std::vector<DerivPtr>> classes; // restricted to the inputs
    size_t class_count() const { return classes.size(); }
};
CongruenceResult congruence_classes(const std::vector<DerivPtr>& derivs,
                                    bool reverse_order = false);

/// intersection type distributor value at a point: class count + reps
struct ItdResult {
    size_t derivation_count = 0;
    size_t class_count = 0;
    std::vector<DerivPtr> representatives;
};
ItdResult itd(const TermPtr& m, const std::vector<std::string>& vars, const Point& point);

} // namespace gsp::lam
