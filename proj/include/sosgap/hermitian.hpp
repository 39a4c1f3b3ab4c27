#pragma once

#include "sosgap/gaussian_rational.hpp"
#include "sosgap/matrix.hpp"
#include "sosgap/polynomial.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sosgap {

/// Real-valued polynomial sum c_ab z^a zbar^b with c_ba = conj(c_ab).
///
/// Only the canonical half a <= b (global monomial order) is stored;
/// diagonal coefficients are real.
class HermitianForm {
public:
    using Key = std::pair<ExponentVector, ExponentVector>;
    using Terms = std::map<Key, GaussianRational>;

    explicit HermitianForm(std::size_t n = 0) : n_(n) {}

    static HermitianForm constant(std::size_t n, const Rational& c);

    std::size_t dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Coefficient of z^a zbar^b.
    GaussianRational coefficient(const ExponentVector& a, const ExponentVector& b) const;

    /// Adds c z^a zbar^b and, for a != b, its partner conj(c) z^b zbar^a.
    /// Diagonal additions (a == b) must be real.
    void add(const ExponentVector& a, const ExponentVector& b, const GaussianRational& c);

    /// Every (a, b) with nonzero coefficient, both halves.
    std::map<Key, GaussianRational> full_terms() const;

    HermitianForm& operator+=(const HermitianForm& o);
    HermitianForm& operator-=(const HermitianForm& o);
    HermitianForm& operator*=(const Rational& c);

    friend HermitianForm operator+(HermitianForm a, const HermitianForm& b) { return a += b; }
    friend HermitianForm operator-(HermitianForm a, const HermitianForm& b) { return a -= b; }
    friend HermitianForm operator*(HermitianForm a, const Rational& c) { return a *= c; }

    friend bool operator==(const HermitianForm&, const HermitianForm&) = default;

private:
    std::size_t n_ = 0;
    Terms terms_;
};

/// Unique Hermitian coefficient matrix G with H = m^H G m, m the monomial vector over `basis`.
/// Entry (i, j) multiplies conj(basis_i) * basis_j.
struct GramMatrix {
    std::vector<ExponentVector> basis;
    Matrix entries;
};

GramMatrix gram_matrix(const HermitianForm& h);
HermitianForm form_from_gram(std::size_t n, const GramMatrix& g);

struct SosCertificate {
    PolyMap factor;               // Q
    std::vector<Rational> weights;  // w_k > 0
    std::size_t rank = 0;
};

struct NotSos {
    std::vector<ExponentVector> basis;
    std::vector<GaussianRational> witness;  // v with v^H G v < 0
    Rational value;                         // v^H G v
};

struct SignatureDecomposition {
    PolyMap F;
    std::vector<Rational> wplus;
    PolyMap G;
    std::vector<Rational> wminus;

    std::size_t q_plus() const { return wplus.size(); }
    std::size_t q_minus() const { return wminus.size(); }
};

struct NotDivisible {
    int r = 0;  // bidegree of the first block with a nonzero remainder
    int s = 0;
    ExponentVector a;  // leading remainder term z^a zbar^b
    ExponentVector b;
    GaussianRational coefficient;

    std::string describe() const;
};

enum class PivotStrategy { FirstIndex, LastIndex, LargestMagnitude };

/// sum_k w_k |P^k|^2
HermitianForm weighted_squared_norm(const PolyMap& p, std::span<const Rational> weights);
HermitianForm squared_norm_form(const PolyMap& p);

std::variant<SosCertificate, NotSos> is_sos(const HermitianForm& h, PivotStrategy strategy = PivotStrategy::FirstIndex);

/// Exact PSD decision on a Hermitian matrix; on failure returns a witness v with v^H G v < 0.
struct PsdVerdict {
    bool psd = false;
    std::vector<Rational> weights;
    std::vector<std::vector<GaussianRational>> vectors;  // G = sum w_k a_k a_k^H
    std::vector<GaussianRational> witness;
};
PsdVerdict decide_psd(const Matrix& g, PivotStrategy strategy = PivotStrategy::FirstIndex);

HermitianForm multiply_by_norm(const HermitianForm& a);
std::variant<HermitianForm, NotDivisible> divide_by_norm(const HermitianForm& h);

/// Divides by ||z||^2 + shift without splitting into bidegree blocks (shift = -1 is the sphere quadric).
std::variant<HermitianForm, NotDivisible> divide_by_shifted_norm(const HermitianForm& h, const Rational& shift);

/// A with ||P||^2 = A ||z||^2, or the failing block.
std::variant<HermitianForm, NotDivisible> check_sos_identity(const PolyMap& p);

SignatureDecomposition signature_decompose(const HermitianForm& h, PivotStrategy strategy = PivotStrategy::FirstIndex);

Rational evaluate_hermitian(const HermitianForm& h, std::span<const GaussianRational> point);

/// ||F||^2 - t ||G||^2 for 0 <= t <= 1.
HermitianForm a_t_family(const PolyMap& f, const PolyMap& g, const Rational& t);

/// Floating-point cross-check of a PSD verdict. Never authoritative.
struct FloatOracleResult {
    bool exact_psd = false;
    double lambda_min = 0.0;
    bool compared = false;  // false inside the dead zone
    bool agree = true;
};
double float_min_eigenvalue(const Matrix& g);
FloatOracleResult float_oracle_check(const Matrix& g, double dead_zone = 1e-6);

} // namespace sosgap
