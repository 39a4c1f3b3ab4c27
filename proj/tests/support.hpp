#pragma once

#include "sosgap/hermitian.hpp"
#include "sosgap/matrix.hpp"
#include "sosgap/polynomial.hpp"

#include <random>
#include <vector>

namespace testing_support {

using namespace sosgap;

inline GaussianRational gauss(std::mt19937_64& rng, long lo = -3, long hi = 3)
{
    std::uniform_int_distribution<long> d(lo, hi);
    return {Rational(d(rng)), Rational(d(rng))};
}

inline GaussianRational gauss_fraction(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    return {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
}

inline std::vector<GaussianRational> point(std::mt19937_64& rng, std::size_t n)
{
    std::vector<GaussianRational> p(n);
    for (auto& x : p) x = gauss_fraction(rng);
    return p;
}

// Dense random polynomial built term by term, independent of the library generator.
inline Polynomial poly(std::mt19937_64& rng, std::size_t n, int degree, int keep_percent = 50)
{
    Polynomial p(n);
    std::uniform_int_distribution<int> pct(0, 99);
    for (const auto& e : monomials_up_to_degree(n, degree))
        if (pct(rng) < keep_percent) p.add_term(e, gauss(rng));
    return p;
}

inline PolyMap polymap(std::mt19937_64& rng, std::size_t n, int degree, std::size_t q)
{
    PolyMap m(n);
    for (std::size_t k = 0; k < q; ++k) m.push_back(poly(rng, n, degree));
    return m;
}

// Random Hermitian form with terms of bidegree at most (degree, degree).
inline HermitianForm form(std::mt19937_64& rng, std::size_t n, int degree, int keep_percent = 40)
{
    HermitianForm h(n);
    const auto monos = monomials_up_to_degree(n, degree);
    std::uniform_int_distribution<int> pct(0, 99);
    for (std::size_t i = 0; i < monos.size(); ++i)
        for (std::size_t j = i; j < monos.size(); ++j) {
            if (pct(rng) >= keep_percent) continue;
            GaussianRational c = gauss(rng);
            if (i == j) c = GaussianRational(c.re());
            h.add(monos[i], monos[j], c);
        }
    return h;
}

inline Rational norm_squared(std::span<const GaussianRational> z)
{
    Rational s(0);
    for (const auto& x : z) s += x.norm();
    return s;
}

inline Rational map_norm_squared(const PolyMap& p, std::span<const GaussianRational> z)
{
    Rational s(0);
    for (const auto& c : p.components()) s += evaluate(c, z).norm();
    return s;
}

// Value of sum c_ab z^a conj(z)^b summed straight from the full term list.
inline Rational form_value(const HermitianForm& h, std::span<const GaussianRational> z)
{
    GaussianRational s;
    for (const auto& [k, c] : h.full_terms()) {
        GaussianRational za(1), zb(1);
        for (std::size_t i = 0; i < z.size(); ++i) {
            for (int t = 0; t < k.first[i]; ++t) za *= z[i];
            for (int t = 0; t < k.second[i]; ++t) zb *= z[i].conj();
        }
        s += c * za * zb;
    }
    return s.re();
}

} // namespace testing_support
