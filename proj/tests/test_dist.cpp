#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamespecies/dist.hpp"

#include <memory>

using namespace gsp;

namespace {

// the cyclic group Z/2 as a one-object groupoid
FinGroupoid z2()
{
    FinGroupoid g;
    g.n_objects = 1;
    g.obj_names = {"a"};
    g.mors = {{0, 0, "id"}, {0, 0, "s"}};
    g.identity = {0};
    g.inverse = {0, 1};
    g.comp[{0, 0}] = 0;
    g.comp[{0, 1}] = 1;
    g.comp[{1, 0}] = 1;
    g.comp[{1, 1}] = 0;
    return g;
}

} // namespace

TEST_CASE("groupoid validators")
{
    CHECK(validate_groupoid(trivial_groupoid()).ok);
    CHECK(validate_groupoid(discrete_groupoid(3)).ok);
    CHECK(validate_groupoid(z2()).ok);
    CHECK(validate_groupoid(sum_groupoid(z2(), discrete_groupoid(2))).ok);
    CHECK(validate_groupoid(product_groupoid(z2(), z2())).ok);
    CHECK(validate_groupoid(op_groupoid(z2())).ok);

    FinGroupoid bad = z2();
    bad.comp[{1, 1}] = 1; // breaks the inverse law
    CHECK_FALSE(validate_groupoid(bad).ok);
}

TEST_CASE("identity distributor")
{
    auto d2 = std::make_shared<FinGroupoid>(discrete_groupoid(2));
    Distributor id = dist_identity(d2);
    CHECK(id.at(0, 0).size() == 1);
    CHECK(id.at(0, 1).empty());
    CHECK(validate_distributor(id).ok);

    auto g = std::make_shared<FinGroupoid>(z2());
    Distributor idz = dist_identity(g);
    CHECK(idz.at(0, 0).size() == 2); // |Aut(a)| = 2
    CHECK(validate_distributor(idz).ok);
}

TEST_CASE("coend composition on discrete groupoids is the sum of products")
{
    auto A = std::make_shared<FinGroupoid>(discrete_groupoid(1));
    auto B = std::make_shared<FinGroupoid>(discrete_groupoid(2));
    auto C = std::make_shared<FinGroupoid>(discrete_groupoid(1));
    Distributor alpha;
    alpha.A = A;
    alpha.B = B;
    int w0 = alpha.add_witness(0, 0, "x0");
    int w1 = alpha.add_witness(0, 0, "x1");
    int w2 = alpha.add_witness(0, 1, "x2");
    for (int w : {w0, w1, w2}) {
        alpha.right_action[{w, 0}] = w;
        alpha.left_action[{w, alpha.wit_point[w].second}] = w;
    }
    Distributor beta;
    beta.A = B;
    beta.B = C;
    int y0 = beta.add_witness(0, 0, "y0");
    int y1 = beta.add_witness(1, 0, "y1");
    int y2 = beta.add_witness(1, 0, "y2");
    for (int y : {y0, y1, y2}) {
        beta.right_action[{y, beta.wit_point[y].first}] = y;
        beta.left_action[{y, 0}] = y;
    }
    CHECK(validate_distributor(alpha).ok);
    CHECK(validate_distributor(beta).ok);
    ComposedDist c = dist_compose(alpha, beta);
    // sum over b of |alpha(0,b)| * |beta(b,0)| = 2*1 + 1*2 = 4
    CHECK(c.dist.at(0, 0).size() == 4);
    CHECK(validate_distributor(c.dist).ok);
}

TEST_CASE("witnesses related through a middle automorphism collapse")
{
    auto T = std::make_shared<FinGroupoid>(trivial_groupoid());
    auto B = std::make_shared<FinGroupoid>(z2());
    Distributor alpha; // T -|-> B with a free orbit {x, s.x}
    alpha.A = T;
    alpha.B = B;
    int x0 = alpha.add_witness(0, 0, "x");
    int x1 = alpha.add_witness(0, 0, "sx");
    alpha.right_action[{x0, 0}] = x0;
    alpha.right_action[{x1, 0}] = x1;
    alpha.left_action[{x0, 0}] = x0;
    alpha.left_action[{x0, 1}] = x1;
    alpha.left_action[{x1, 0}] = x1;
    alpha.left_action[{x1, 1}] = x0;
    Distributor beta; // B -|-> T with a free orbit {y, y.s}
    beta.A = B;
    beta.B = T;
    int y0 = beta.add_witness(0, 0, "y");
    int y1 = beta.add_witness(0, 0, "ys");
    beta.left_action[{y0, 0}] = y0;
    beta.left_action[{y1, 0}] = y1;
    beta.right_action[{y0, 0}] = y0;
    beta.right_action[{y0, 1}] = y1;
    beta.right_action[{y1, 0}] = y1;
    beta.right_action[{y1, 1}] = y0;
    CHECK(validate_distributor(alpha).ok);
    CHECK(validate_distributor(beta).ok);
    ComposedDist c = dist_compose(alpha, beta);
    // 4 raw pairs quotient to 2 classes
    CHECK(c.dist.at(0, 0).size() == 2);
    // id . alpha ~ alpha
    ComposedDist unit = dist_compose(alpha, dist_identity(B));
    CHECK(unit.dist.at(0, 0).size() == alpha.at(0, 0).size());
    auto iso = find_natural_iso(unit.dist, alpha);
    CHECK(iso.has_value());
}

TEST_CASE("sym groupoid")
{
    auto T = std::make_shared<FinGroupoid>(trivial_groupoid());
    SymGroupoid s = sym_groupoid(T, 3);
    CHECK(validate_groupoid(*s.g).ok);
    CHECK(s.objects.size() == 4);
    int o2 = s.object_id({0, 0});
    CHECK(s.g->hom(o2, o2).size() == 2); // the two permutations
    CHECK(s.g->hom(s.object_id({0}), o2).empty());

    // over the empty base groupoid only the empty sequence exists
    auto E = std::make_shared<FinGroupoid>(empty_groupoid());
    SymGroupoid se = sym_groupoid(E, 3);
    CHECK(se.objects.size() == 1);
}

TEST_CASE("dereliction distributor")
{
    auto Z = std::make_shared<FinGroupoid>(z2());
    SymGroupoid s = sym_groupoid(Z, 2);
    Distributor i = dereliction_i(s);
    CHECK(validate_distributor(i).ok);
    CHECK(i.at(s.object_id({0}), 0).size() == 2); // |Aut(a)|
    CHECK(i.at(s.object_id({}), 0).empty());
    CHECK(i.at(s.object_id({0, 0}), 0).empty());
}

TEST_CASE("promotion dagger: unit and identity laws")
{
    auto Z = std::make_shared<FinGroupoid>(z2());
    SymGroupoid s = sym_groupoid(Z, 2);
    Distributor i = dereliction_i(s);

    PromotedDist pd = promotion_dagger(i, s, s);
    CHECK(validate_distributor(pd.dist).ok);
    // alpha^dagger on the empty sequences is a singleton
    CHECK(pd.dist.at(s.object_id({}), s.object_id({})).size() == 1);

    // (i_A)^dagger ~ id_{Sym A}  (theta_A)
    Distributor idsym = dist_identity(s.g);
    auto iso = find_natural_iso(pd.dist, idsym);
    REQUIRE(iso.has_value());
    CHECK(validate_nat(pd.dist, idsym, *iso).ok);

    // eta_alpha : alpha ~ i . alpha^dagger on the sample alpha = i
    ComposedDist comp = dist_compose(pd.dist, i);
    auto iso2 = find_natural_iso(comp.dist, i);
    CHECK(iso2.has_value());
}

TEST_CASE("esp composition is associative on samples")
{
    auto Z = std::make_shared<FinGroupoid>(z2());
    SymGroupoid s = sym_groupoid(Z, 2);
    Distributor i = dereliction_i(s);
    ComposedDist ba = esp_compose(i, i, s, s);
    ComposedDist left = esp_compose(i, ba.dist, s, s);
    ComposedDist right1 = esp_compose(i, i, s, s);
    ComposedDist right = esp_compose(right1.dist, i, s, s);
    for (int a = 0; a < s.g->n_objects; ++a)
        for (int b = 0; b < Z->n_objects; ++b)
            CHECK(left.dist.at(a, b).size() == right.dist.at(a, b).size());
}

TEST_CASE("companion and conjoint")
{
    auto Z = std::make_shared<FinGroupoid>(z2());
    DistFunctor id = identity_functor(Z);
    Distributor comp = companion(id);
    auto iso = find_natural_iso(comp, dist_identity(Z));
    CHECK(iso.has_value());
    Distributor conj = conjoint(id);
    CHECK(validate_distributor(conj).ok);
    ComposedDist cc = dist_compose(conj, comp);
    CHECK(validate_distributor(cc.dist).ok);
}

TEST_CASE("restriction operations")
{
    auto Z = std::make_shared<FinGroupoid>(z2());
    Distributor idz = dist_identity(Z);
    DistFunctor idf = identity_functor(Z);
    Distributor r = restrict_left(idz, idf);
    auto iso = find_natural_iso(r, idz);
    CHECK(iso.has_value());

    ComposedDist lhs = dist_compose(idz, restrict_left(idz, idf));
    ComposedDist rhs = dist_compose(restrict_right(idz, idf), idz);
    CHECK(lhs.dist.n_witnesses() == rhs.dist.n_witnesses());
}

TEST_CASE("adjoint equivalence checker accepts identity and rejects junk")
{
    auto Z = std::make_shared<FinGroupoid>(z2());
    EquivalenceData e;
    e.L = identity_functor(Z);
    e.R = identity_functor(Z);
    e.unit = {Z->identity[0]};
    e.counit = {Z->identity[0]};
    CHECK(check_adjoint_equivalence(e).ok);

    e.unit = {1}; // the swap is not a valid unit here
    CHECK_FALSE(check_adjoint_equivalence(e).ok);
}

TEST_CASE("natural iso search respects actions")
{
    auto Z = std::make_shared<FinGroupoid>(z2());
    Distributor idz = dist_identity(Z);
    Distributor triv;
    triv.A = triv.B = Z;
    int a0 = triv.add_witness(0, 0, "p");
    int a1 = triv.add_witness(0, 0, "q");
    for (int w : {a0, a1})
        for (int m : {0, 1}) {
            triv.right_action[{w, m}] = w;
            triv.left_action[{w, m}] = w;
        }
    CHECK(validate_distributor(triv).ok);
    CHECK(find_natural_iso(idz, idz).has_value());
    CHECK_FALSE(find_natural_iso(idz, triv).has_value());
}
