#include "sosgap/sphere_maps.hpp"

#include "sosgap/gap_tables.hpp"

#include <string>

namespace sosgap {

BallMap::BallMap(PolyMap map) : map_(std::move(map))
{
    if (map_.dim() < 1) throw DimensionMismatch("ball map needs at least one source variable");
    if (map_.size() < 1) throw DimensionMismatch("ball map needs at least one component");
    n_ = static_cast<long>(map_.dim()) - 1;
    big_n_ = static_cast<long>(map_.size()) - 1;
}

namespace {

Rational random_small_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 5);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

Rational squared_norm(const std::vector<GaussianRational>& v)
{
    Rational s(0);
    for (const auto& x : v) s += x.norm();
    return s;
}

} // namespace

std::vector<GaussianRational> rational_sphere_point(std::size_t m, std::mt19937_64& rng)
{
    const std::size_t reals = 2 * m;
    std::vector<Rational> t(reals - 1);
    Rational t2(0);
    for (auto& v : t) {
        v = random_small_rational(rng);
        t2 += v * v;
    }
    const Rational denom = t2 + 1;
    std::vector<Rational> x(reals);
    for (std::size_t i = 0; i + 1 < reals; ++i) x[i] = 2 * t[i] / denom;
    x[reals - 1] = (t2 - 1) / denom;
    std::vector<GaussianRational> z;
    z.reserve(m);
    for (std::size_t i = 0; i < m; ++i) z.emplace_back(x[2 * i], x[2 * i + 1]);
    return z;
}

std::variant<ProperCertificate, NotProper> is_proper_ball_map(const BallMap& f)
{
    const std::size_t m = f.map().dim();
    HermitianForm h = squared_norm_form(f.map());
    h -= HermitianForm::constant(m, Rational(1));
    auto res = divide_by_shifted_norm(h, Rational(-1));
    if (auto* q = std::get_if<HermitianForm>(&res)) return ProperCertificate{std::move(*q)};

    std::mt19937_64 rng(kDefaultSphereSeed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        auto pt = rational_sphere_point(m, rng);
        const Rational v = squared_norm(evaluate(f.map(), pt));
        if (v != 1) return NotProper{std::move(pt), v};
    }
    throw std::logic_error("||f||^2 - 1 is not divisible by ||z||^2 - 1 yet vanishes at every sampled sphere point");
}

BallMap identity_map(long n)
{
    return standard_linear_embedding(n, n);
}

BallMap standard_linear_embedding(long n, long big_n)
{
    if (n < 0) throw OutOfRange("standard_linear_embedding: negative n");
    if (big_n < n) throw OutOfRange("standard_linear_embedding: N = " + std::to_string(big_n) + " below n = " + std::to_string(n));
    const auto vars = static_cast<std::size_t>(n + 1);
    PolyMap m = PolyMap::coordinates(vars);
    for (long j = n; j < big_n; ++j) m.push_back(Polynomial(vars));
    return BallMap(std::move(m));
}

BallMap whitney_map(long n)
{
    if (n < 1) throw OutOfRange("whitney_map: n must be at least 1");
    const auto vars = static_cast<std::size_t>(n + 1);
    const auto last = static_cast<std::size_t>(n);
    PolyMap m(vars);
    for (std::size_t i = 0; i < last; ++i) m.push_back(Polynomial::variable(vars, i));
    for (std::size_t i = 0; i <= last; ++i) m.push_back(Polynomial::variable(vars, i) * Polynomial::variable(vars, last));
    return BallMap(std::move(m));
}

BallMap pad_zeros(const BallMap& f, long big_n)
{
    if (big_n < f.target_cr_dim()) throw OutOfRange("pad_zeros: target dimension would shrink");
    PolyMap m = f.map();
    for (long j = f.target_cr_dim(); j < big_n; ++j) m.push_back(Polynomial(m.dim()));
    return BallMap(std::move(m));
}

AffineDimensionReport affine_image_dimension(const BallMap& f, std::uint64_t seed)
{
    const std::size_t m = f.map().dim();
    const std::size_t comps = f.map().size();
    AffineDimensionReport rep;
    rep.evaluation_points = 4 * static_cast<std::size_t>(f.target_cr_dim() + 2);

    std::mt19937_64 rng(seed);
    const auto base = evaluate(f.map(), rational_sphere_point(m, rng));
    Matrix diffs(rep.evaluation_points - 1, comps);
    for (std::size_t p = 0; p + 1 < rep.evaluation_points; ++p) {
        const auto v = evaluate(f.map(), rational_sphere_point(m, rng));
        for (std::size_t j = 0; j < comps; ++j) diffs(p, j) = v[j] - base[j];
    }
    rep.dimension = static_cast<long>(rank(diffs));

    PolyMap nonconstant(m);
    for (const auto& c : f.map().components()) nonconstant.push_back(c.without_constant());
    rep.coefficient_rank = static_cast<long>(rank(coefficient_matrix(nonconstant).matrix));
    return rep;
}

GapConclusionReport check_gap_conclusion(const BallMap& f, std::uint64_t seed)
{
    auto proper = is_proper_ball_map(f);
    if (auto* bad = std::get_if<NotProper>(&proper))
        throw NotProperError("map is not proper: ||f||^2 = " + to_string(bad->norm_squared) + " at a sphere point");

    GapConclusionReport rep;
    rep.n = f.source_cr_dim();
    rep.big_n = f.target_cr_dim();
    rep.codim = rep.big_n - rep.n;
    const AffineDimensionReport dim = affine_image_dimension(f, seed);
    rep.affine_dim = dim.dimension;
    rep.n0 = dim.dimension - 1;
    rep.evaluation_points = dim.evaluation_points;
    if (rep.n >= 2) rep.kappa = gap_membership(rep.n, rep.codim);
    if (!rep.kappa) {
        rep.status = "outside gaps";
        return rep;
    }
    rep.bound = hjy_bound(rep.n, *rep.kappa);
    rep.consistent = rep.n0 - rep.n <= *rep.bound;
    rep.status = rep.consistent ? "consistent" : "VIOLATION";
    return rep;
}

} // namespace sosgap
