#include <doctest.h>

#include "hydroham/fman.hpp"
#include "test_support.hpp"

using namespace hydroham;

namespace {

RationalFn rf(const std::string& s, int n) { return parse_expr(s, n); }

Tensor semisimple_product(int n) {
    Tensor c(n, 1, 2);
    for (int i = 0; i < n; ++i)
        c.at({i, i, i}) = RationalFn::constant(n, Rational(1));
    return c;
}

std::vector<RationalFn> unit_field(int n) {
    return std::vector<RationalFn>(n, RationalFn::constant(n, Rational(1)));
}

std::vector<RationalFn> euler_field(int n) {
    std::vector<RationalFn> E;
    for (int i = 0; i < n; ++i)
        E.push_back(RationalFn::variable(n, i));
    return E;
}

// independent expansion of the nine-term condition on coordinate fields
RationalFn hm_oracle(const Tensor& c, int a, int i, int j, int k, int l) {
    const int n = c.nvars();
    RationalFn v(n);
    for (int m = 0; m < n; ++m) {
        v += c.at({m, i, j}) * c.at({a, k, l}).partial(m);
        v -= c.at({m, k, l}) * c.at({a, i, j}).partial(m);
        v += c.at({a, m, k}) * c.at({m, i, j}).partial(l);
        v += c.at({a, m, l}) * c.at({m, i, j}).partial(k);
        v -= c.at({a, i, m}) * c.at({m, l, k}).partial(j);
        v -= c.at({a, j, m}) * c.at({m, l, k}).partial(i);
    }
    return v;
}

} // namespace

TEST_CASE("Hertling-Manin condition") {
    // constant commutative associative products satisfy it trivially
    Tensor c(2, 1, 2);
    c.at({0, 0, 0}) = rf("1", 2);
    c.at({0, 1, 1}) = rf("1", 2);
    c.at({1, 0, 1}) = rf("1", 2);
    c.at({1, 1, 0}) = rf("1", 2);
    CHECK(hertling_manin_check(c).ok);

    // the canonical semisimple product
    CHECK(hertling_manin_check(semisimple_product(3)).ok);

    // variable product checked against the independent expansion
    Tensor cv(2, 1, 2);
    cv.at({0, 0, 0}) = rf("1", 2);
    cv.at({0, 1, 1}) = rf("v1", 2);
    cv.at({1, 0, 1}) = rf("1", 2);
    cv.at({1, 1, 0}) = rf("1", 2);
    HertlingManinResult r = hertling_manin_check(cv);
    for (int a = 0; a < 2; ++a)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) {
                        RationalFn expect = hm_oracle(cv, a, i, j, k, l);
                        bool found = false;
                        for (const auto& [idx, val] : r.residuals)
                            if (idx == std::vector<int>{a, i, j, k, l}) {
                                CHECK(val == expect);
                                found = true;
                            }
                        if (!found)
                            CHECK(expect.is_zero());
                    }
}

TEST_CASE("flat F-manifold checker") {
    // n=2 constant associative commutative unital product
    Tensor c(2, 1, 2);
    c.at({0, 0, 0}) = rf("1", 2);
    c.at({1, 0, 1}) = rf("1", 2);
    c.at({1, 1, 0}) = rf("1", 2);
    FlatFData d{c, {rf("1", 2), rf("0", 2)}};
    CHECK(flat_f_check(d).all());

    // the semisimple product with the trivial connection
    FlatFData ds{semisimple_product(2), unit_field(2)};
    CHECK(flat_f_check(ds).all());

    // broken associativity shows up in the lambda^2 coefficient
    Tensor cb(2, 1, 2);
    cb.at({0, 0, 0}) = rf("1", 2);
    cb.at({1, 0, 0}) = rf("1", 2);
    cb.at({1, 1, 1}) = rf("1", 2);
    FlatFData db{cb, {rf("1", 2), rf("0", 2)}};
    FlatFReport rb = flat_f_check(db);
    CHECK_FALSE(rb.associative);
    CHECK_FALSE(rb.family_flat_torsionless);
}

TEST_CASE("dual product") {
    int n = 2;
    Tensor c = semisimple_product(n);
    Tensor dual = dual_product(c, euler_field(n));
    for (int i = 0; i < n; ++i) {
        RationalFn expect = RationalFn::variable(n, i).inverse();
        CHECK(dual.at({i, i, i}) == expect);
    }
    // E = e reproduces the product
    CHECK(dual_product(c, unit_field(n)) == c);
    // singular E o
    std::vector<RationalFn> Ebad = {rf("u1", 2), rf("0", 2)};
    CHECK_THROWS_AS(dual_product(c, Ebad), SingularPencil);
}

TEST_CASE("bi-flat checker on the canonical trivial-A data") {
    std::map<std::pair<int, int>, RationalFn> A;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (i != j)
                A[{i, j}] = RationalFn(2);
    SemisimpleCanonical out = semisimple_canonical(A, 2);
    CHECK(out.biflat.nablaStar.at(0, 0, 0) == rf("-1/u1", 2));
    CHECK(out.biflat.nablaStar.at(1, 1, 1) == rf("-1/u2", 2));
    CHECK(biflat_check(out.biflat).all());
    CHECK(check_by_properties(out.geometry).all());

    // perturbations are caught check by check
    BiFlatData shifted = out.biflat;
    shifted.nablaStar.at(0, 0, 0) += rf("1", 2);
    BiFlatReport r1 = biflat_check(shifted);
    CHECK_FALSE(r1.star_euler_flat);
    BiFlatData coupled = out.biflat;
    coupled.nablaStar.at(0, 0, 0) += rf("u2", 2);
    CHECK_FALSE(biflat_check(coupled).star_flat);
}

TEST_CASE("bi-flat report is per-check") {
    // equal trivial connections, E = e constant, constant nonzero product:
    // only the Euler scaling of the product fails
    Tensor c(2, 1, 2);
    c.at({0, 0, 0}) = rf("1", 2);
    c.at({1, 0, 1}) = rf("1", 2);
    c.at({1, 1, 0}) = rf("1", 2);
    BiFlatData b{c, {rf("1", 2), rf("0", 2)}, {rf("1", 2), rf("0", 2)},
                 Connection(2), Connection(2)};
    BiFlatReport r = biflat_check(b);
    CHECK(r.star_torsionless);
    CHECK(r.star_flat);
    CHECK(r.star_euler_flat);
    CHECK(r.compatible_connections);
    CHECK_FALSE(r.euler_scales_product);
    CHECK_FALSE(r.all());
}

TEST_CASE("semisimple canonical form with nonzero off-diagonal functions") {
    std::map<std::pair<int, int>, RationalFn> A;
    A[{0, 1}] = rf("1/(u1-u2)", 2);
    A[{1, 0}] = rf("2/(u2-u1)", 2);
    SemisimpleCanonical out = semisimple_canonical(A, 2);
    CHECK(biflat_check(out.biflat).all());
    PropertyReport pr = check_by_properties(out.geometry);
    CHECK(pr.ahe);
    CHECK(pr.nijenhuis_zero);
    CHECK(pr.gm_flat);

    // constant nonzero entry violates the Euler equation
    std::map<std::pair<int, int>, RationalFn> bad;
    bad[{0, 1}] = rf("1", 2);
    bad[{1, 0}] = RationalFn(2);
    CHECK_THROWS_AS(semisimple_canonical(bad, 2), PDEViolation);
}

TEST_CASE("principal hierarchy of the Hopf structure") {
    Tensor c(1, 1, 2);
    c.at({0, 0, 0}) = rf("1", 1);
    FlatFData d{c, unit_field(1)};
    std::vector<HierarchyFlow> flows = principal_flows(d, 2);
    REQUIRE(flows.size() == 4);
    CHECK(flows[0].X[0] == rf("1", 1));
    CHECK(flows[1].X[0] == rf("v1", 1));
    CHECK(flows[2].X[0] == rf("1/2*v1^2", 1));
    CHECK(flows[3].X[0] == rf("1/6*v1^3", 1));
    // differentiate back through the recursion
    for (std::size_t k = 1; k < flows.size(); ++k)
        CHECK(flows[k].X[0].partial(0) == flows[k - 1].X[0]);
    // all pairs commute
    for (const auto& f1 : flows)
        for (const auto& f2 : flows)
            CHECK(flows_commute(f1, f2, c));
}

TEST_CASE("principal hierarchy of a constant n=2 product") {
    Tensor c(2, 1, 2);
    c.at({0, 0, 0}) = rf("1", 2);
    c.at({1, 0, 1}) = rf("1", 2);
    c.at({1, 1, 0}) = rf("1", 2);
    c.at({0, 1, 1}) = rf("0", 2);
    FlatFData d{c, {rf("1", 2), rf("0", 2)}};
    std::vector<HierarchyFlow> flows = principal_flows(d, 1);
    // level 0: X^l_{(a,0)} = c^l_{ba} v^b
    for (const HierarchyFlow& f : flows) {
        if (f.level != 0)
            continue;
        for (int l = 0; l < 2; ++l) {
            RationalFn expect(2);
            for (int b = 0; b < 2; ++b)
                expect += c.at({l, b, f.alpha}) * RationalFn::variable(2, b);
            CHECK(f.X[l] == expect);
        }
    }
    for (const auto& f1 : flows)
        for (const auto& f2 : flows)
            CHECK(flows_commute(f1, f2, c));
    // hierarchy flows are generalised Hamiltonian w.r.t. (identity, trivial)
    OddHydroDerivation ghs = derivation_from_data({mat_identity(2, 2), Connection(2)});
    for (const auto& f : flows)
        CHECK(extend_flow(hierarchy_hydro_flow(c, f), ghs).compatible);
}

TEST_CASE("non-hierarchy flow tensors do not commute") {
    HydroFlow X1{{{rf("v1", 2), rf("0", 2)}, {rf("0", 2), rf("0", 2)}}};
    HydroFlow X2{{{rf("0", 2), rf("v2", 2)}, {rf("0", 2), rf("0", 2)}}};
    Derivation d1 = flow_derivation(X1, 2);
    Derivation d2 = flow_derivation(X2, 2);
    CHECK_FALSE(graded_commutator(d1, d2).is_zero());
}

TEST_CASE("Frobenius pencil") {
    // n=1: eta = 1, c = 1, E = v d/dv, nu = 0
    Tensor c(1, 1, 2);
    c.at({0, 0, 0}) = rf("1", 1);
    BiGeometricData b = frobenius_pencil(mat_identity(1, 1), c, euler_field(1), Rational(0));
    CHECK(b.L.at({0, 0}) == rf("v1", 1));
    CHECK(b.nablaStar.at(0, 0, 0) == rf("-1/(2*v1)", 1));
    auto [d0, d1] = pencil_from_bi_data(b, mat_identity(1, 1));
    CHECK(is_gbhs(d0, d1));

    // constant Euler field: L constant, Delta = 0 at nu = 0
    std::vector<RationalFn> Ec = {rf("1", 1)};
    BiGeometricData bc = frobenius_pencil(mat_identity(1, 1), c, Ec, Rational(0));
    CHECK(bc.L.at({0, 0}) == rf("1", 1));
    CHECK(bc.nablaStar.at(0, 0, 0).is_zero());
}
