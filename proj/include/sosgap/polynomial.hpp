#pragma once

#include "sosgap/gaussian_rational.hpp"
#include "sosgap/matrix.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace sosgap {

/// Multi-index alpha of a monomial z^alpha.
///
/// The ordering is the global graded order used everywhere in the library:
/// lower total degree first, then the larger exponent at the first
/// differing position first (so z1 < z2 and z1^2 < z1 z2 < z2^2).
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t n) : e_(n, 0) {}
    ExponentVector(std::initializer_list<int> e);
    explicit ExponentVector(std::vector<int> e);

    static ExponentVector unit(std::size_t n, std::size_t i);

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    int degree() const;
    const std::vector<int>& values() const { return e_; }

    /// Componentwise sum; sizes must agree.
    friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
    /// True when every entry of this is >= the matching entry of other.
    bool divisible_by(const ExponentVector& other) const;
    ExponentVector minus(const ExponentVector& other) const;

    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
    friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b);

private:
    std::vector<int> e_;
};

/// All exponent vectors of length n and total degree exactly d, in the global order.
std::vector<ExponentVector> monomials_of_degree(std::size_t n, int d);
/// All exponent vectors of length n and total degree at most d, in the global order.
std::vector<ExponentVector> monomials_up_to_degree(std::size_t n, int d);

/// Sparse polynomial in n complex variables; zero coefficients are never stored.
class Polynomial {
public:
    using Terms = std::map<ExponentVector, GaussianRational>;

    explicit Polynomial(std::size_t n = 0) : n_(n) {}

    static Polynomial constant(std::size_t n, const GaussianRational& c);
    static Polynomial variable(std::size_t n, std::size_t i);
    static Polynomial monomial(const ExponentVector& e, const GaussianRational& c = 1);

    std::size_t dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Total degree, -1 for the zero polynomial.
    int degree() const;
    GaussianRational coefficient(const ExponentVector& e) const;

    /// Adds c z^e, dropping the term if the coefficient cancels.
    void add_term(const ExponentVector& e, const GaussianRational& c);

    /// Polynomial with conjugated coefficients (p*(w) = conj(p(conj w))).
    Polynomial conjugate_coefficients() const;
    /// Drops the constant term.
    Polynomial without_constant() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const GaussianRational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const GaussianRational& c) { return a *= c; }
    friend Polynomial operator*(const GaussianRational& c, Polynomial a) { return a *= c; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::size_t n_ = 0;
    Terms terms_;
};

Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

/// Direct evaluation sum_alpha c_alpha point^alpha.
GaussianRational evaluate(const Polynomial& p, std::span<const GaussianRational> point);

/// Ordered tuple of polynomials sharing the ambient dimension.
class PolyMap {
public:
    explicit PolyMap(std::size_t n = 0) : n_(n) {}
    PolyMap(std::size_t n, std::vector<Polynomial> components);

    /// The coordinate map z -> (z1, ..., zn).
    static PolyMap coordinates(std::size_t n);

    std::size_t dim() const { return n_; }
    std::size_t size() const { return components_.size(); }
    bool empty() const { return components_.empty(); }
    const Polynomial& operator[](std::size_t k) const { return components_[k]; }
    const std::vector<Polynomial>& components() const { return components_; }

    void push_back(Polynomial p);

    friend bool operator==(const PolyMap&, const PolyMap&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Polynomial> components_;
};

/// Components of a followed by components of b.
PolyMap stack(const PolyMap& a, const PolyMap& b);

/// Applies an invertible (or arbitrary) q' x q recombination: out_j = sum_k m(j,k) p_k.
PolyMap recombine(const Matrix& m, const PolyMap& p);

std::vector<GaussianRational> evaluate(const PolyMap& p, std::span<const GaussianRational> point);

struct CoefficientMatrix {
    std::vector<ExponentVector> basis;  // sorted union of monomials
    Matrix matrix;                      // q x basis.size(), row k = component k
};

CoefficientMatrix coefficient_matrix(const PolyMap& m);

} // namespace sosgap
