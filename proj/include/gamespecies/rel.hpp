#pragma once

#include "gamespecies/es.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gsp::rel {

/// Simple types for the micro-PCF fragment: booleans and arrows.
struct RType {
    bool is_fun = false;
    std::shared_ptr<const RType> arg, res;
    static RType boolean() { return {}; }
    static RType fun(RType a, RType b);
    bool operator==(const RType& o) const;
};

/// Web points: a boolean value, or a (finite multiset of argument points,
/// result point) pair.
struct RPoint {
    bool is_fun = false;
    bool b = false;                  // boolean case
    std::vector<RPoint> args;        // sorted multiset
    std::shared_ptr<RPoint> result;  // function case
    bool operator<(const RPoint& o) const;
    bool operator==(const RPoint& o) const;
    std::string to_string() const;
};

RPoint point_tt();
RPoint point_ff();
RPoint point_fun(std::vector<RPoint> args, RPoint result);

/// all web points of a type, with multisets bounded in size
std::vector<RPoint> points_of(const RType& t, int multiset_bound);

struct RTerm;
using RTermPtr = std::shared_ptr<const RTerm>;
struct RTerm {
    enum class Kind { Var, Abs, App, If, ConstTT, ConstFF, Choice } kind;
    std::string var;
    RTermPtr a, b, c;
};
RTermPtr rvar(std::string x);
RTermPtr rabs(std::string x, RTermPtr body);
RTermPtr rapp(RTermPtr f, RTermPtr arg);
RTermPtr rif(RTermPtr c, RTermPtr t, RTermPtr e);
RTermPtr rtt();
RTermPtr rff();
RTermPtr rchoice();
/// parser for the fragment: \x. M, M N, if M then N else P, tt, ff, choice
RTermPtr parse_rterm(const std::string& text);

using Env = std::map<std::string, std::vector<RPoint>>; // var -> multiset

/// All Kleisli-relational derivations of `point` for a term in context;
/// each entry is the environment consumed plus a witness tag. Rel semantics
/// is the deduplicated (env, point) set; PRRel keeps all witnesses.
struct RelResult {
    std::vector<std::pair<Env, std::string>> witnesses;
    std::vector<Env> envs() const; // deduplicated
};
RelResult interp(const RTermPtr& term, const std::map<std::string, RType>& ctx,
                 const RPoint& point, int multiset_bound);

/// Seely bijection M(A+B) ~ M(A) x M(B) checked by explicit enumeration;
/// returns the common cardinality, throwing if the bijection fails.
size_t seely_check(int na, int nb, int multiset_bound);

} // namespace gsp::rel
