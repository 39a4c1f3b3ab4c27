#include "support.hpp"

#include "sosgap/rank_tensor.hpp"

#include <doctest.h>

using namespace sosgap;
using namespace testing_support;

namespace {

Polynomial z(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

} // namespace

TEST_CASE("gaussian rationals stay reduced")
{
    GaussianRational a(Rational(2, 4), Rational(-6, 8));
    CHECK(a.re() == Rational(1, 2));
    CHECK(a.re().get_den() == 2);
    CHECK(a.im().get_den() == 4);
    GaussianRational b = a * a.conj();
    CHECK(b.is_real());
    CHECK(b.re() == a.norm());
    CHECK((a / a) == GaussianRational(1));
    CHECK_THROWS_AS(a / GaussianRational(), std::domain_error);
    CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
}

TEST_CASE("rational parsing is strict")
{
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(parse_rational("12") == Rational(12));
    for (const char* bad : {"", "1.5", "1/0", "/3", "3/", "--1", "1/-2", "a", "1e3", " 1"})
        CHECK_THROWS_AS(parse_rational(bad), ParseError);
}

TEST_CASE("exponent vectors and the global order")
{
    CHECK_THROWS(ExponentVector({1, -1}));
    CHECK(ExponentVector{1, 0} < ExponentVector{0, 1});
    CHECK(ExponentVector{2, 0} < ExponentVector{1, 1});
    CHECK(ExponentVector{1, 1} < ExponentVector{0, 2});
    CHECK(ExponentVector{0, 1} < ExponentVector{2, 0});
    const auto m2 = monomials_of_degree(2, 2);
    REQUIRE(m2.size() == 3);
    CHECK(m2[0] == ExponentVector{2, 0});
    CHECK(m2[2] == ExponentVector{0, 2});
    CHECK(monomials_up_to_degree(3, 2).size() == 10);
    CHECK(monomials_of_degree(4, 3).size() == 20);
}

TEST_CASE("poly_mul examples")
{
    const std::size_t n = 2;
    CHECK(poly_mul(z(n, 0), z(n, 1)) == Polynomial::monomial(ExponentVector{1, 1}));
    Polynomial lhs = poly_mul(z(n, 0) + z(n, 1), z(n, 0) - z(n, 1));
    Polynomial rhs = Polynomial::monomial(ExponentVector{2, 0}) - Polynomial::monomial(ExponentVector{0, 2});
    CHECK(lhs == rhs);
    CHECK_THROWS_AS(poly_mul(z(2, 0), z(3, 0)), DimensionMismatch);
    CHECK(Polynomial(2).degree() == -1);
    CHECK((z(n, 0) - z(n, 0)).is_zero());
}

TEST_CASE("poly_mul matches point evaluation")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const Polynomial a = poly(rng, n, 3), b = poly(rng, n, 3);
        const Polynomial ab = poly_mul(a, b);
        if (!a.is_zero() && !b.is_zero()) CHECK(ab.degree() == a.degree() + b.degree());
        for (int k = 0; k < 20; ++k) {
            const auto pt = point(rng, n);
            CHECK(evaluate(ab, pt) == evaluate(a, pt) * evaluate(b, pt));
        }
    }
}

TEST_CASE("evaluate examples")
{
    const Polynomial p = Polynomial::monomial(ExponentVector{2, 1});
    CHECK(evaluate(p, std::vector<GaussianRational>{2, 3}) == GaussianRational(12));
    const Polynomial q = z(2, 0) + GaussianRational::i() * z(2, 1);
    CHECK(evaluate(q, std::vector<GaussianRational>{1, 1}) == GaussianRational(Rational(1), Rational(1)));
    std::mt19937_64 rng(3);
    const Polynomial r = poly(rng, 3, 3, 100);
    CHECK(evaluate(r, std::vector<GaussianRational>(3)) == r.coefficient(ExponentVector(3)));
    CHECK_THROWS_AS(evaluate(r, std::vector<GaussianRational>(2)), DimensionMismatch);
}

TEST_CASE("ring axioms on random triples")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const Polynomial a = poly(rng, n, 3, 30), b = poly(rng, n, 3, 30), c = poly(rng, n, 3, 30);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == Polynomial(n));
    }
}

TEST_CASE("coefficient matrix examples")
{
    const std::size_t n = 2;
    auto cm = coefficient_matrix(PolyMap::coordinates(n));
    REQUIRE(cm.basis.size() == 2);
    CHECK(cm.matrix == Matrix::identity(2));

    PolyMap dup(n, {z(n, 0) + z(n, 1), z(n, 0) + z(n, 1)});
    CHECK(rank(coefficient_matrix(dup).matrix) == 1);

    PolyMap sq(n, {Polynomial::monomial(ExponentVector{2, 0}), Polynomial::monomial(ExponentVector{1, 1}),
                   Polynomial::monomial(ExponentVector{1, 1}), Polynomial::monomial(ExponentVector{0, 2})});
    auto c = coefficient_matrix(sq);
    CHECK(c.matrix.rows() == 4);
    CHECK(c.matrix.cols() == 3);
    CHECK(rank(c.matrix) == 3);
}

TEST_CASE("rank is invariant under permutation and invertible recombination")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 2, q = 1 + trial % 4;
        PolyMap p = polymap(rng, n, 2, q);
        const std::size_t r = rank(coefficient_matrix(p).matrix);

        std::vector<Polynomial> comps = p.components();
        std::shuffle(comps.begin(), comps.end(), rng);
        CHECK(rank(coefficient_matrix(PolyMap(n, comps)).matrix) == r);

        Matrix m(q, q);
        do {
            for (std::size_t i = 0; i < q; ++i)
                for (std::size_t j = 0; j < q; ++j) m(i, j) = gauss(rng, -2, 2);
        } while (!inverse(m));
        CHECK(rank(coefficient_matrix(recombine(m, p)).matrix) == r);
    }
}

TEST_CASE("matrix helpers")
{
    Matrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = GaussianRational(Rational(0), Rational(2));
    m(1, 0) = GaussianRational(Rational(0), Rational(-2));
    m(1, 1) = 5;
    CHECK(m.is_hermitian());
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK(m * *inv == Matrix::identity(2));
    auto x = solve(m, std::vector<GaussianRational>{1, 0});
    REQUIRE(x);
    CHECK((*x)[0] == (*inv)(0, 0));
    Matrix singular(2, 2);
    singular(0, 0) = 1;
    singular(1, 0) = 1;
    CHECK_FALSE(inverse(singular));
    CHECK_FALSE(solve(singular, std::vector<GaussianRational>{0, 1}));
}
