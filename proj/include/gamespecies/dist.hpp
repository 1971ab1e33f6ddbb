#pragma once

#include "gamespecies/es.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gsp {

/// Explicit finite groupoid: objects 0..n-1, morphisms with a full
/// composition table, identities and inverses.
struct FinGroupoid {
    struct Mor {
        int dom = 0, cod = 0;
        std::string name;
    };
    int n_objects = 0;
    std::vector<Mor> mors;
    std::vector<int> identity;          // object -> morphism id
    std::map<std::pair<int, int>, int> comp; // (f, g) -> g o f  (f first)
    std::vector<int> inverse;
    std::vector<std::string> obj_names;

    int dom(int m) const { return mors[m].dom; }
    int cod(int m) const { return mors[m].cod; }
    int then(int f, int g) const; // g o f, throws if not composable
    std::vector<int> hom(int a, int b) const;
    std::string obj_name(int a) const
    {
        return a < static_cast<int>(obj_names.size()) && !obj_names[a].empty()
                   ? obj_names[a]
                   : std::to_string(a);
    }
};

ValidationReport validate_groupoid(const FinGroupoid& g);

/// groupoid with one object and only its identity
FinGroupoid trivial_groupoid();
FinGroupoid discrete_groupoid(int n);
FinGroupoid empty_groupoid();
/// disjoint union; the second groupoid's objects are shifted
FinGroupoid sum_groupoid(const FinGroupoid& a, const FinGroupoid& b);
FinGroupoid product_groupoid(const FinGroupoid& a, const FinGroupoid& b);
FinGroupoid op_groupoid(const FinGroupoid& a);

/// A distributor A -|-> B: witness sets per (a, b) with left/right actions.
/// Witnesses are globally interned ids with provenance strings.
struct Distributor {
    std::shared_ptr<const FinGroupoid> A, B;
    std::map<std::pair<int, int>, std::vector<int>> witnesses; // (a,b) -> ids
    std::vector<std::pair<int, int>> wit_point;                // id -> (a,b)
    std::vector<std::string> wit_name;
    // actions: right by f in A(a',a): alpha(a,b) -> alpha(a',b);
    // left by g in B(b,b'): alpha(a,b) -> alpha(a,b')
    std::map<std::pair<int, int>, int> right_action; // (wit, morA) -> wit
    std::map<std::pair<int, int>, int> left_action;  // (wit, morB) -> wit

    int n_witnesses() const { return static_cast<int>(wit_point.size()); }
    const std::vector<int>& at(int a, int b) const;
    int act_right(int w, int f) const;
    int act_left(int w, int g) const;
    int add_witness(int a, int b, std::string name);
};

ValidationReport validate_distributor(const Distributor& d);

/// A natural transformation between distributors over the same boundary
/// groupoids (up to boundary functors F: A->A', G: B->B').
struct NatTransform {
    std::map<int, int> component; // witness of source -> witness of target
};
struct DistFunctor {
    std::shared_ptr<const FinGroupoid> dom, cod;
    std::vector<int> obj; // object map
    std::vector<int> mor; // morphism map
};
ValidationReport validate_functor(const DistFunctor& f);
DistFunctor identity_functor(std::shared_ptr<const FinGroupoid> g);

ValidationReport validate_nat(const Distributor& s, const Distributor& t, const NatTransform& n,
                              const DistFunctor* F = nullptr, const DistFunctor* G = nullptr);
bool nat_is_iso(const Distributor& s, const Distributor& t, const NatTransform& n);

Distributor dist_identity(std::shared_ptr<const FinGroupoid> a);

/// Coend composition: classes of pairs via union-find, quotienting
/// (g.x, y) ~ (x, y.g) over middle morphisms g.
struct ComposedDist {
    Distributor dist;
    // pair (witness of alpha, witness of beta) -> class witness id
    std::map<std::pair<int, int>, int> class_of;
};
ComposedDist dist_compose(const Distributor& alpha, const Distributor& beta);

/// Free symmetric strict monoidal groupoid, truncated: objects are
/// sequences of A-objects with length <= max_len; morphisms are pairs
/// (permutation, per-component morphisms indexed by the codomain).
struct SymGroupoid {
    std::shared_ptr<const FinGroupoid> base;
    std::shared_ptr<const FinGroupoid> g;
    std::vector<std::vector<int>> objects;                 // sequences of base objects
    std::vector<std::pair<std::vector<int>, std::vector<int>>> mor_data;
    // mor m: (perm pi, components f) with f[i] in base(a_{pi(i)}, b_i)

    int object_id(const std::vector<int>& seq) const;
    /// morphism id from (pi, components); throws when absent
    int mor_id(const std::vector<int>& dom_seq, const std::vector<int>& pi,
               const std::vector<int>& comps) const;
};
SymGroupoid sym_groupoid(std::shared_ptr<const FinGroupoid> a, int max_len);

/// dereliction distributor i_A(<a>, a') = A[a, a']
Distributor dereliction_i(const SymGroupoid& sa);

/// promotion of alpha: Sym(A) -|-> B to Sym(A) -|-> Sym(B); witnesses are
/// coend classes of (per-component witnesses, splitting morphism) tuples.
struct PromotedDist {
    Distributor dist;
    const SymGroupoid* sa;
    const SymGroupoid* sb;
    // normalized representative of each class: component witnesses indexed
    // by the codomain sequence, plus the permutation
    struct Rep {
        std::vector<int> components;
        std::vector<int> pi; // pi : |dom| ~ sum of component dom lengths
    };
    std::vector<Rep> reps; // by class witness id
    /// class id of a normalized tuple
    int class_of(const std::vector<int>& components, const std::vector<int>& pi, int dom_obj,
                 int cod_obj) const;
    std::map<std::tuple<std::vector<int>, std::vector<int>, int, int>, int> index;
};
PromotedDist promotion_dagger(const Distributor& alpha, const SymGroupoid& sa,
                              const SymGroupoid& sb);

/// Kleisli composition beta . alpha^dagger
ComposedDist esp_compose(const Distributor& alpha, const Distributor& beta,
                         const SymGroupoid& sa, const SymGroupoid& sb);

Distributor companion(const DistFunctor& f);
Distributor conjoint(const DistFunctor& f);

/// alpha[S](a, b) = alpha(S a, b) and [T]alpha(a, b) = alpha(a, T b)
Distributor restrict_left(const Distributor& alpha, const DistFunctor& s);
Distributor restrict_right(const Distributor& alpha, const DistFunctor& t);

/// An adjoint-equivalence candidate between groupoids.
struct EquivalenceData {
    DistFunctor L, R;
    std::vector<int> unit;   // object of dom -> morphism a -> R(L(a)) (or -1)
    std::vector<int> counit; // object of cod -> morphism L(R(b)) -> b (or -1)
};
ValidationReport check_adjoint_equivalence(const EquivalenceData& e);

/// natural-iso discovery between distributors over identical boundaries:
/// per-point bijection search constrained by naturality
std::optional<NatTransform> find_natural_iso(const Distributor& s, const Distributor& t);

} // namespace gsp
