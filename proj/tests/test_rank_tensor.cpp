#include "support.hpp"

#include "sosgap/rank_tensor.hpp"

#include <doctest.h>

using namespace sosgap;
using namespace testing_support;

namespace {

Polynomial mono(std::initializer_list<int> e) { return Polynomial::monomial(ExponentVector(e)); }

std::size_t certificate_rank(const HermitianForm& h)
{
    auto res = is_sos(h);
    REQUIRE(std::holds_alternative<SosCertificate>(res));
    return std::get<SosCertificate>(res).rank;
}

} // namespace

TEST_CASE("linear_rank examples")
{
    const std::size_t n = 2;
    const Polynomial z1 = Polynomial::variable(n, 0), z2 = Polynomial::variable(n, 1);
    CHECK(linear_rank(PolyMap(n, {z1, z2, z1 + z2})).rank == 2);
    CHECK(linear_rank(PolyMap(n)).rank == 0);
    CHECK(linear_rank(PolyMap(n, {mono({2, 0}), mono({1, 1}), mono({1, 1}), mono({0, 2})})).rank == 3);
}

TEST_CASE("rank basis spans every component")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        PolyMap p = polymap(rng, 2, 2, 1 + trial % 5);
        if (trial % 3 == 0) p.push_back(p[0] + p[p.size() - 1]);
        const RankReport r = linear_rank(p);
        CHECK(r.basis.size() == r.rank);
        CHECK(r.rank == rank(coefficient_matrix(p).matrix));
        CHECK(subspace_contained(p, r.basis));
        CHECK(subspace_contained(r.basis, p));
    }
}

TEST_CASE("tensor_product examples")
{
    const std::size_t n = 2;
    const Polynomial z1 = Polynomial::variable(n, 0), z2 = Polynomial::variable(n, 1);
    CHECK(tensor_product(PolyMap(n, {z1}), PolyMap(n, {z2})) == PolyMap(n, {mono({1, 1})}));
    const PolyMap t = tensor_with_z(PolyMap::coordinates(n));
    CHECK(t == PolyMap(n, {mono({2, 0}), mono({1, 1}), mono({1, 1}), mono({0, 2})}));
    CHECK(linear_rank(t).rank == 3);
    CHECK(tensor_product(PolyMap(n, {z1}), PolyMap(n)).empty());
    CHECK_THROWS_AS(tensor_product(PolyMap(n, {z1}), PolyMap(3)), DimensionMismatch);
    CHECK(tensor_with_z(PolyMap(n, {Polynomial::constant(n, 1)})) == PolyMap::coordinates(n));
    CHECK(tensor_with_z(PolyMap(n)).empty());
}

TEST_CASE("subspace_contained examples")
{
    const std::size_t n = 2;
    const PolyMap b(n, {mono({2, 0}), mono({1, 1})});
    CHECK(subspace_contained(PolyMap(n), b));
    CHECK_FALSE(subspace_contained(PolyMap(n, {mono({1, 1}), mono({0, 2})}), b));
    CHECK(subspace_contained(b, b));
    CHECK_THROWS_AS(subspace_contained(PolyMap(3), b), DimensionMismatch);
}

TEST_CASE("specrk_bounds examples")
{
    const std::size_t n = 2;
    auto b = specrk_bounds(PolyMap::coordinates(n), PolyMap(n));
    CHECK(b.lower == 3);
    CHECK(b.upper == 3);
    for (std::size_t m = 2; m <= 4; ++m) {
        auto c = specrk_bounds(PolyMap::coordinates(m), PolyMap(m));
        CHECK(c.upper == m * (m + 1) / 2);
        CHECK(c.lower == c.upper);
    }
    std::mt19937_64 rng(32);
    const PolyMap f = polymap(rng, n, 2, 3);
    auto self = specrk_bounds(f, f);
    CHECK(self.lower == 0);
    CHECK(self.upper == linear_rank(tensor_with_z(f)).rank);
    CHECK_THROWS_AS(specrk_bounds(PolyMap(n, {mono({1, 0})}), PolyMap(n, {mono({0, 1})})), ContainmentViolated);
}

TEST_CASE("tensor rank bounds and three-way consistency")
{
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const int degree = trial % 3;
        const PolyMap f = polymap(rng, n, degree, 1 + trial % 3);
        const std::size_t r = linear_rank(tensor_with_z(f)).rank;
        CHECK(r <= f.size() * n);
        CHECK(r <= monomials_up_to_degree(n, degree + 1).size());
        if (trial % 4 == 0) {
            const auto b = specrk_bounds(f, PolyMap(n));
            CHECK(b.lower == r);
            CHECK(b.upper == r);
            CHECK(certificate_rank(squared_norm_form(tensor_with_z(f))) == r);
        }
    }
}

TEST_CASE("linear rank is certificate rank of the squared norm")
{
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const PolyMap p = polymap(rng, 1 + trial % 4, trial % 4, 1 + trial % 5);
        CHECK(certificate_rank(squared_norm_form(p)) == linear_rank(p).rank);
    }
}

TEST_CASE("family rank profile")
{
    const std::size_t n = 2;
    const PolyMap f = PolyMap::coordinates(n);
    const std::vector<Rational> ts{0, Rational(1, 3), Rational(1, 2), 1};
    const std::size_t generic = linear_rank(tensor_with_z(f)).rank;
    for (const auto& e : family_rank_profile(f, PolyMap(n), ts)) {
        CHECK(e.rank == generic);
        CHECK_FALSE(e.below_generic);
    }
    const PolyMap g(n, {Polynomial::variable(n, 0)});
    const auto prof = family_rank_profile(f, g, ts);
    REQUIRE(prof.size() == ts.size());
    CHECK(prof.front().rank == generic);
    CHECK(prof.back().rank < generic);
    CHECK(prof.back().below_generic);
    // A_1 = |z1|^2 - 2|z2|^2 makes A_1 ||z||^2 indefinite.
    const PolyMap g2(n, {Polynomial::variable(n, 1) * GaussianRational(2)});
    CHECK_THROWS_AS(family_rank_profile(f, g2, ts), Error);
}
