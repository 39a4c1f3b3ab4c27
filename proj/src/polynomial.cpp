#include "sosgap/polynomial.hpp"

#include "sosgap/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace sosgap {

ExponentVector::ExponentVector(std::initializer_list<int> e) : ExponentVector(std::vector<int>(e)) {}

ExponentVector::ExponentVector(std::vector<int> e) : e_(std::move(e))
{
    for (int v : e_)
        if (v < 0) throw OutOfRange("negative exponent");
}

ExponentVector ExponentVector::unit(std::size_t n, std::size_t i)
{
    ExponentVector e(n);
    e.e_.at(i) = 1;
    return e;
}

int ExponentVector::degree() const
{
    return std::accumulate(e_.begin(), e_.end(), 0);
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b)
{
    if (a.size() != b.size()) throw DimensionMismatch("exponent vectors of different length");
    ExponentVector c = a;
    for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] += b.e_[i];
    return c;
}

bool ExponentVector::divisible_by(const ExponentVector& other) const
{
    if (size() != other.size()) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] < other.e_[i]) return false;
    return true;
}

ExponentVector ExponentVector::minus(const ExponentVector& other) const
{
    if (!divisible_by(other)) throw OutOfRange("exponent subtraction would go negative");
    ExponentVector c = *this;
    for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] -= other.e_[i];
    return c;
}

std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b)
{
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.e_[i] != b.e_[i]) return b.e_[i] <=> a.e_[i];
    return a.size() <=> b.size();
}

namespace {

void compositions(std::size_t n, int d, std::vector<int>& cur, std::size_t pos, std::vector<ExponentVector>& out)
{
    if (pos + 1 == n) {
        cur[pos] = d;
        out.emplace_back(cur);
        return;
    }
    for (int v = d; v >= 0; --v) {
        cur[pos] = v;
        compositions(n, d - v, cur, pos + 1, out);
    }
}

} // namespace

std::vector<ExponentVector> monomials_of_degree(std::size_t n, int d)
{
    std::vector<ExponentVector> out;
    if (n == 0) {
        if (d == 0) out.emplace_back(std::vector<int>{});
        return out;
    }
    std::vector<int> cur(n, 0);
    compositions(n, d, cur, 0, out);
    return out;
}

std::vector<ExponentVector> monomials_up_to_degree(std::size_t n, int d)
{
    std::vector<ExponentVector> out;
    for (int k = 0; k <= d; ++k) {
        auto part = monomials_of_degree(n, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Polynomial Polynomial::constant(std::size_t n, const GaussianRational& c)
{
    Polynomial p(n);
    p.add_term(ExponentVector(n), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t n, std::size_t i)
{
    return monomial(ExponentVector::unit(n, i));
}

Polynomial Polynomial::monomial(const ExponentVector& e, const GaussianRational& c)
{
    Polynomial p(e.size());
    p.add_term(e, c);
    return p;
}

int Polynomial::degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
    return d;
}

GaussianRational Polynomial::coefficient(const ExponentVector& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussianRational{} : it->second;
}

void Polynomial::add_term(const ExponentVector& e, const GaussianRational& c)
{
    if (e.size() != n_)
        throw DimensionMismatch("exponent vector of length " + std::to_string(e.size()) +
                                " in polynomial of dimension " + std::to_string(n_));
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::conjugate_coefficients() const
{
    Polynomial p(n_);
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, c.conj());
    return p;
}

Polynomial Polynomial::without_constant() const
{
    Polynomial p = *this;
    p.terms_.erase(ExponentVector(n_));
    return p;
}

Polynomial Polynomial::operator-() const
{
    Polynomial p(n_);
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    if (o.n_ != n_) throw DimensionMismatch("polynomial dimensions differ");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    if (o.n_ != n_) throw DimensionMismatch("polynomial dimensions differ");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const GaussianRational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.n_ != b.n_)
        throw DimensionMismatch("poly_mul: dimensions " + std::to_string(a.n_) + " and " + std::to_string(b.n_));
    Polynomial p(a.n_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) p.add_term(ea + eb, ca * cb);
    return p;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b)
{
    return a * b;
}

GaussianRational evaluate(const Polynomial& p, std::span<const GaussianRational> point)
{
    if (point.size() != p.dim())
        throw DimensionMismatch("evaluate: point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                                std::to_string(p.dim()));
    GaussianRational acc;
    for (const auto& [e, c] : p.terms()) {
        GaussianRational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

PolyMap::PolyMap(std::size_t n, std::vector<Polynomial> components) : n_(n), components_(std::move(components))
{
    for (const auto& c : components_)
        if (c.dim() != n_) throw DimensionMismatch("PolyMap component dimension differs from map dimension");
}

PolyMap PolyMap::coordinates(std::size_t n)
{
    PolyMap m(n);
    for (std::size_t i = 0; i < n; ++i) m.push_back(Polynomial::variable(n, i));
    return m;
}

void PolyMap::push_back(Polynomial p)
{
    if (p.dim() != n_) throw DimensionMismatch("PolyMap component dimension differs from map dimension");
    components_.push_back(std::move(p));
}

PolyMap stack(const PolyMap& a, const PolyMap& b)
{
    if (a.dim() != b.dim()) throw DimensionMismatch("stack: map dimensions differ");
    PolyMap out = a;
    for (const auto& c : b.components()) out.push_back(c);
    return out;
}

PolyMap recombine(const Matrix& m, const PolyMap& p)
{
    if (m.cols() != p.size()) throw DimensionMismatch("recombine: matrix columns differ from component count");
    PolyMap out(p.dim());
    for (std::size_t j = 0; j < m.rows(); ++j) {
        Polynomial acc(p.dim());
        for (std::size_t k = 0; k < p.size(); ++k)
            if (!m(j, k).is_zero()) acc += p[k] * m(j, k);
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<GaussianRational> evaluate(const PolyMap& p, std::span<const GaussianRational> point)
{
    std::vector<GaussianRational> out;
    out.reserve(p.size());
    for (const auto& c : p.components()) out.push_back(evaluate(c, point));
    return out;
}

CoefficientMatrix coefficient_matrix(const PolyMap& m)
{
    std::set<ExponentVector> support;
    for (const auto& c : m.components())
        for (const auto& [e, v] : c.terms()) support.insert(e);
    CoefficientMatrix out;
    out.basis.assign(support.begin(), support.end());
    out.matrix = Matrix(m.size(), out.basis.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
        std::size_t j = 0;
        for (const auto& [e, v] : m[k].terms()) {
            while (!(out.basis[j] == e)) ++j;
            out.matrix(k, j) = v;
        }
    }
    return out;
}

} // namespace sosgap
