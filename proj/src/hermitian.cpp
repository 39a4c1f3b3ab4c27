#include "sosgap/hermitian.hpp"

#include "sosgap/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <set>
#include <sstream>

namespace sosgap {

// ---------------------------------------------------------------------------
// HermitianForm

HermitianForm HermitianForm::constant(std::size_t n, const Rational& c)
{
    HermitianForm h(n);
    h.add(ExponentVector(n), ExponentVector(n), c);
    return h;
}

GaussianRational HermitianForm::coefficient(const ExponentVector& a, const ExponentVector& b) const
{
    const bool swapped = b < a;
    auto it = swapped ? terms_.find({b, a}) : terms_.find({a, b});
    if (it == terms_.end()) return {};
    return swapped ? it->second.conj() : it->second;
}

void HermitianForm::add(const ExponentVector& a, const ExponentVector& b, const GaussianRational& c)
{
    if (a.size() != n_ || b.size() != n_) throw DimensionMismatch("Hermitian term exponent length differs from form dimension");
    if (a == b && !c.is_real()) throw Error("diagonal Hermitian coefficient must be real");
    if (c.is_zero()) return;
    const bool swapped = b < a;
    Key key = swapped ? Key{b, a} : Key{a, b};
    const GaussianRational v = swapped ? c.conj() : c;
    auto [it, inserted] = terms_.try_emplace(std::move(key), v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::map<HermitianForm::Key, GaussianRational> HermitianForm::full_terms() const
{
    std::map<Key, GaussianRational> out;
    for (const auto& [k, c] : terms_) {
        out.emplace(k, c);
        if (!(k.first == k.second)) out.emplace(Key{k.second, k.first}, c.conj());
    }
    return out;
}

HermitianForm& HermitianForm::operator+=(const HermitianForm& o)
{
    if (o.n_ != n_) throw DimensionMismatch("Hermitian form dimensions differ");
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
}

HermitianForm& HermitianForm::operator-=(const HermitianForm& o)
{
    if (o.n_ != n_) throw DimensionMismatch("Hermitian form dimensions differ");
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
}

HermitianForm& HermitianForm::operator*=(const Rational& c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= GaussianRational(c);
    return *this;
}

// ---------------------------------------------------------------------------
// Gram matrices

GramMatrix gram_matrix(const HermitianForm& h)
{
    std::set<ExponentVector> support;
    for (const auto& [k, c] : h.terms()) {
        support.insert(k.first);
        support.insert(k.second);
    }
    GramMatrix g;
    g.basis.assign(support.begin(), support.end());
    g.entries = Matrix(g.basis.size(), g.basis.size());
    auto index = [&](const ExponentVector& e) {
        return static_cast<std::size_t>(std::lower_bound(g.basis.begin(), g.basis.end(), e) - g.basis.begin());
    };
    // c_ab multiplies z^a zbar^b = conj(m_b) m_a, i.e. entry (b, a).
    for (const auto& [k, c] : h.terms()) {
        const std::size_t ia = index(k.first);
        const std::size_t ib = index(k.second);
        g.entries(ib, ia) = c;
        g.entries(ia, ib) = c.conj();
    }
    return g;
}

HermitianForm form_from_gram(std::size_t n, const GramMatrix& g)
{
    if (!g.entries.is_hermitian()) throw Error("Gram matrix is not Hermitian");
    HermitianForm h(n);
    for (std::size_t i = 0; i < g.basis.size(); ++i)
        for (std::size_t j = i; j < g.basis.size(); ++j)
            h.add(g.basis[j], g.basis[i], g.entries(i, j));
    return h;
}

// ---------------------------------------------------------------------------
// Squared norms

HermitianForm weighted_squared_norm(const PolyMap& p, std::span<const Rational> weights)
{
    if (weights.size() != p.size()) throw DimensionMismatch("weight count differs from component count");
    HermitianForm h(p.dim());
    for (std::size_t k = 0; k < p.size(); ++k) {
        const auto& terms = p[k].terms();
        const GaussianRational w(weights[k]);
        for (auto it = terms.begin(); it != terms.end(); ++it) {
            h.add(it->first, it->first, w * GaussianRational(it->second.norm()));
            for (auto jt = std::next(it); jt != terms.end(); ++jt)
                h.add(it->first, jt->first, w * it->second * jt->second.conj());
        }
    }
    return h;
}

HermitianForm squared_norm_form(const PolyMap& p)
{
    std::vector<Rational> ones(p.size(), Rational(1));
    return weighted_squared_norm(p, ones);
}

// ---------------------------------------------------------------------------
// Congruence elimination

namespace {

struct ReductionStep {
    std::vector<GaussianRational> x;  // probe vector
    std::vector<GaussianRational> y;  // G x
    Rational s;                       // x^H G x
};

std::vector<GaussianRational> mat_vec(const Matrix& g, const std::vector<GaussianRational>& x)
{
    std::vector<GaussianRational> y(g.rows());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            if (!x[j].is_zero() && !g(i, j).is_zero()) y[i] += g(i, j) * x[j];
    return y;
}

GaussianRational inner(const std::vector<GaussianRational>& u, const std::vector<GaussianRational>& v)
{
    GaussianRational acc;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!u[i].is_zero() && !v[i].is_zero()) acc += u[i].conj() * v[i];
    return acc;
}

// G <- G - y y^H / s
void rank_one_update(Matrix& g, const std::vector<GaussianRational>& y, const Rational& s)
{
    const GaussianRational inv_s(Rational(1) / s);
    for (std::size_t i = 0; i < g.rows(); ++i) {
        if (y[i].is_zero()) continue;
        const GaussianRational yi = y[i] * inv_s;
        for (std::size_t j = 0; j < g.cols(); ++j)
            if (!y[j].is_zero()) g(i, j) -= yi * y[j].conj();
    }
}

std::optional<std::size_t> pick_diagonal(const Matrix& g, PivotStrategy strategy)
{
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        if (g(i, i).is_zero()) continue;
        switch (strategy) {
        case PivotStrategy::FirstIndex:
            return i;
        case PivotStrategy::LastIndex:
            best = i;
            break;
        case PivotStrategy::LargestMagnitude:
            if (!best || abs(g(i, i).re()) > abs(g(*best, *best).re())) best = i;
            break;
        }
    }
    return best;
}

std::optional<std::pair<std::size_t, std::size_t>> pick_off_diagonal(const Matrix& g, PivotStrategy strategy)
{
    std::optional<std::pair<std::size_t, std::size_t>> found;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = i + 1; j < g.cols(); ++j) {
            if (g(i, j).is_zero()) continue;
            if (strategy == PivotStrategy::FirstIndex) return std::pair{i, j};
            found = std::pair{i, j};
        }
    return found;
}

std::vector<GaussianRational> basis_vector(std::size_t m, std::size_t i)
{
    std::vector<GaussianRational> e(m);
    e[i] = 1;
    return e;
}

// Lifts a negative direction u of the reduced matrix back through the recorded steps.
std::vector<GaussianRational> lift_witness(std::vector<GaussianRational> u, const std::vector<ReductionStep>& steps)
{
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        const GaussianRational beta = -inner(it->y, u) / GaussianRational(it->s);
        if (beta.is_zero()) continue;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (!it->x[i].is_zero()) u[i] += beta * it->x[i];
    }
    return u;
}

struct Diagonalization {
    std::vector<ReductionStep> steps;
    std::optional<std::vector<GaussianRational>> negative_direction;  // in reduced coordinates
};

// Wedderburn rank-one reduction until the matrix vanishes. With stop_on_negative, halts at the
// first certificate of indefiniteness (negative diagonal or a nonzero entry off a zero diagonal).
Diagonalization diagonalize(Matrix g, PivotStrategy strategy, bool stop_on_negative)
{
    Diagonalization out;
    const std::size_t m = g.rows();
    for (;;) {
        if (stop_on_negative) {
            for (std::size_t i = 0; i < m; ++i)
                if (sgn(g(i, i).re()) < 0) {
                    out.negative_direction = basis_vector(m, i);
                    return out;
                }
        }
        ReductionStep step;
        if (auto p = pick_diagonal(g, strategy)) {
            step.x = basis_vector(m, *p);
        } else if (auto ij = pick_off_diagonal(g, strategy)) {
            const auto [i, j] = *ij;
            const GaussianRational c = g(i, j);
            if (stop_on_negative) {
                // (e_i - conj(c) e_j)^H G (e_i - conj(c) e_j) = -2|c|^2 on a zero diagonal
                auto u = basis_vector(m, i);
                u[j] = -c.conj();
                out.negative_direction = std::move(u);
                return out;
            }
            step.x = basis_vector(m, i);
            step.x[j] = c.conj();
        } else {
            return out;
        }
        step.y = mat_vec(g, step.x);
        step.s = inner(step.x, step.y).re();
        rank_one_update(g, step.y, step.s);
        out.steps.push_back(std::move(step));
    }
}

} // namespace

PsdVerdict decide_psd(const Matrix& g, PivotStrategy strategy)
{
    if (!g.is_hermitian()) throw Error("decide_psd: matrix is not Hermitian");
    Diagonalization d = diagonalize(g, strategy, true);
    PsdVerdict v;
    if (d.negative_direction) {
        v.psd = false;
        v.witness = lift_witness(std::move(*d.negative_direction), d.steps);
        return v;
    }
    v.psd = true;
    for (auto& step : d.steps) {
        std::vector<GaussianRational> a = step.y;
        const GaussianRational inv(Rational(1) / step.s);
        for (auto& x : a) x *= inv;
        v.weights.push_back(step.s);
        v.vectors.push_back(std::move(a));
    }
    return v;
}

namespace {

// Q_k = a_k^H m
PolyMap factor_from_vectors(std::size_t n, const std::vector<ExponentVector>& basis,
                            const std::vector<std::vector<GaussianRational>>& vectors)
{
    PolyMap q(n);
    for (const auto& a : vectors) {
        Polynomial p(n);
        for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], a[i].conj());
        q.push_back(std::move(p));
    }
    return q;
}

} // namespace

std::variant<SosCertificate, NotSos> is_sos(const HermitianForm& h, PivotStrategy strategy)
{
    const GramMatrix g = gram_matrix(h);
    PsdVerdict v = decide_psd(g.entries, strategy);
    if (!v.psd) {
        NotSos out;
        out.basis = g.basis;
        out.value = quadratic_form(g.entries, v.witness).re();
        out.witness = std::move(v.witness);
        return out;
    }
    SosCertificate cert;
    cert.factor = factor_from_vectors(h.dim(), g.basis, v.vectors);
    cert.weights = std::move(v.weights);
    cert.rank = cert.weights.size();
    return cert;
}

SignatureDecomposition signature_decompose(const HermitianForm& h, PivotStrategy strategy)
{
    const GramMatrix g = gram_matrix(h);
    const Diagonalization d = diagonalize(g.entries, strategy, false);
    std::vector<std::vector<GaussianRational>> pos, neg;
    SignatureDecomposition out;
    for (const auto& step : d.steps) {
        std::vector<GaussianRational> a = step.y;
        const GaussianRational inv(Rational(1) / step.s);
        for (auto& x : a) x *= inv;
        if (sgn(step.s) > 0) {
            out.wplus.push_back(step.s);
            pos.push_back(std::move(a));
        } else {
            out.wminus.push_back(-step.s);
            neg.push_back(std::move(a));
        }
    }
    out.F = factor_from_vectors(h.dim(), g.basis, pos);
    out.G = factor_from_vectors(h.dim(), g.basis, neg);
    return out;
}

// ---------------------------------------------------------------------------
// Multiplication and division by ||z||^2

HermitianForm multiply_by_norm(const HermitianForm& a)
{
    const std::size_t n = a.dim();
    HermitianForm out(n);
    for (const auto& [k, c] : a.terms())
        for (std::size_t i = 0; i < n; ++i) {
            const ExponentVector ei = ExponentVector::unit(n, i);
            out.add(k.first + ei, k.second + ei, c);
        }
    return out;
}

std::string NotDivisible::describe() const
{
    std::ostringstream os;
    os << "bidegree block (" << r << "," << s << ") leaves remainder " << to_string(coefficient) << " at z^[";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    os << "] zbar^[";
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << "]";
    return os.str();
}

namespace {

// Lexicographic on (a, b) as raw vectors: a monomial order in (z, w) with z1 w1 leading in sum z_i w_i.
using LexKey = std::pair<std::vector<int>, std::vector<int>>;
using LexTerms = std::map<LexKey, GaussianRational>;

void lex_add(LexTerms& t, LexKey key, const GaussianRational& c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = t.try_emplace(std::move(key), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
}

// Long division of a (z, w)-polynomial by sum_i z_i w_i + shift.
std::variant<LexTerms, LexTerms::value_type> lex_divide(LexTerms rest, std::size_t n, const Rational& shift)
{
    LexTerms quotient;
    const GaussianRational shift_c(shift);
    while (!rest.empty()) {
        auto lead = std::prev(rest.end());
        const auto [a, b] = lead->first;
        if (n == 0 || a[0] == 0 || b[0] == 0) return *lead;
        const GaussianRational c = lead->second;
        std::vector<int> qa = a, qb = b;
        --qa[0];
        --qb[0];
        lex_add(quotient, {qa, qb}, c);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<int> ta = qa, tb = qb;
            ++ta[i];
            ++tb[i];
            lex_add(rest, {std::move(ta), std::move(tb)}, -c);
        }
        if (sgn(shift) != 0) lex_add(rest, {qa, qb}, -(c * shift_c));
    }
    return quotient;
}

NotDivisible not_divisible_from(const LexTerms::value_type& term)
{
    NotDivisible nd;
    nd.a = ExponentVector(term.first.first);
    nd.b = ExponentVector(term.first.second);
    nd.r = nd.a.degree();
    nd.s = nd.b.degree();
    nd.coefficient = term.second;
    return nd;
}

HermitianForm form_from_lex(std::size_t n, const LexTerms& full)
{
    HermitianForm h(n);
    for (const auto& [k, c] : full) {
        ExponentVector a(k.first), b(k.second);
        if (b < a) continue;
        if (a == b) {
            if (!c.is_real()) throw std::logic_error("quotient lost Hermitian symmetry");
            h.add(a, b, c);
            continue;
        }
        auto partner = full.find({k.second, k.first});
        if (partner == full.end() || !(partner->second == c.conj()))
            throw std::logic_error("quotient lost Hermitian symmetry");
        h.add(a, b, c);
    }
    return h;
}

} // namespace

std::variant<HermitianForm, NotDivisible> divide_by_norm(const HermitianForm& h)
{
    const std::size_t n = h.dim();
    std::map<std::pair<int, int>, LexTerms> blocks;
    for (const auto& [k, c] : h.full_terms())
        blocks[{k.first.degree(), k.second.degree()}].emplace(LexKey{k.first.values(), k.second.values()}, c);

    LexTerms quotient;
    for (auto& [bideg, terms] : blocks) {
        auto res = lex_divide(std::move(terms), n, Rational(0));
        if (auto* bad = std::get_if<LexTerms::value_type>(&res)) return not_divisible_from(*bad);
        for (auto& [k, c] : std::get<LexTerms>(res)) quotient.emplace(k, c);
    }
    return form_from_lex(n, quotient);
}

std::variant<HermitianForm, NotDivisible> divide_by_shifted_norm(const HermitianForm& h, const Rational& shift)
{
    const std::size_t n = h.dim();
    LexTerms terms;
    for (const auto& [k, c] : h.full_terms()) terms.emplace(LexKey{k.first.values(), k.second.values()}, c);
    auto res = lex_divide(std::move(terms), n, shift);
    if (auto* bad = std::get_if<LexTerms::value_type>(&res)) return not_divisible_from(*bad);
    return form_from_lex(n, std::get<LexTerms>(res));
}

std::variant<HermitianForm, NotDivisible> check_sos_identity(const PolyMap& p)
{
    return divide_by_norm(squared_norm_form(p));
}

// ---------------------------------------------------------------------------

Rational evaluate_hermitian(const HermitianForm& h, std::span<const GaussianRational> point)
{
    if (point.size() != h.dim())
        throw DimensionMismatch("evaluate_hermitian: point has " + std::to_string(point.size()) +
                                " coordinates, form has " + std::to_string(h.dim()));
    std::map<ExponentVector, GaussianRational> powers;
    auto power = [&](const ExponentVector& e) -> const GaussianRational& {
        auto it = powers.find(e);
        if (it != powers.end()) return it->second;
        return powers.emplace(e, evaluate(Polynomial::monomial(e), point)).first->second;
    };
    Rational acc(0);
    for (const auto& [k, c] : h.terms()) {
        const GaussianRational t = c * power(k.first) * power(k.second).conj();
        acc += k.first == k.second ? t.re() : Rational(2 * t.re());
    }
    return acc;
}

HermitianForm a_t_family(const PolyMap& f, const PolyMap& g, const Rational& t)
{
    if (f.dim() != g.dim()) throw DimensionMismatch("a_t_family: F and G have different dimensions");
    if (sgn(t) < 0 || t > 1) throw OutOfRange("a_t_family: t = " + to_string(t) + " outside [0, 1]");
    HermitianForm h = squared_norm_form(f);
    h -= squared_norm_form(g) * t;
    return h;
}

// ---------------------------------------------------------------------------
// Floating-point oracle

double float_min_eigenvalue(const Matrix& g)
{
    const auto m = static_cast<Eigen::Index>(g.rows());
    if (m == 0) return 0.0;
    Eigen::MatrixXcd a(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            const auto& z = g(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            a(i, j) = {z.re().get_d(), z.im().get_d()};
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

FloatOracleResult float_oracle_check(const Matrix& g, double dead_zone)
{
    FloatOracleResult r;
    r.exact_psd = decide_psd(g).psd;
    r.lambda_min = float_min_eigenvalue(g);
    r.compared = std::abs(r.lambda_min) > dead_zone;
    if (r.compared) r.agree = r.exact_psd == (r.lambda_min > 0);
    return r;
}

} // namespace sosgap
