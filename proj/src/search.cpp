#include "sosgap/search.hpp"

#include "sosgap/rank_tensor.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>

namespace sosgap {

std::string to_string(SearchTarget t)
{
    switch (t) {
    case SearchTarget::SosConjecture:
        return "sos";
    case SearchTarget::WeakSos:
        return "weak-sos";
    case SearchTarget::HuangLemma:
        return "huang";
    case SearchTarget::GHBand:
        return "gh-band";
    }
    return "?";
}

std::string to_string(SearchMode m)
{
    return m == SearchMode::Exhaustive ? "exhaustive" : "random";
}

std::string to_string(Verdict v)
{
    return v == Verdict::Consistent ? "Consistent" : "CounterexampleCandidate";
}

SearchTarget parse_search_target(const std::string& name)
{
    for (auto t : {SearchTarget::SosConjecture, SearchTarget::WeakSos, SearchTarget::HuangLemma, SearchTarget::GHBand})
        if (to_string(t) == name) return t;
    throw ParseError("unknown search target '" + name + "' (expected sos, weak-sos, huang or gh-band)");
}

unsigned worker_count(unsigned requested)
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned n = requested ? requested : hw;
    if (const char* env = std::getenv("SOSGAP_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
    }
    return std::max(1u, n);
}

// ---------------------------------------------------------------------------
// Generators

namespace {

GaussianRational small_gaussian(std::mt19937_64& rng, long lo = -2, long hi = 2)
{
    std::uniform_int_distribution<long> d(lo, hi);
    return {Rational(d(rng)), Rational(d(rng))};
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

// sum_k w_k... realised by repeating monomials: B(x) = A(x) (x_1 + ... + x_n) with x_i = |z_i|^2.
PolyMap monomial_piece(long n, int a_degree, std::mt19937_64& rng)
{
    const auto nn = static_cast<std::size_t>(n);
    const auto monos = monomials_up_to_degree(nn, a_degree);
    Polynomial sum_x(nn);
    for (std::size_t i = 0; i < nn; ++i) sum_x += Polynomial::variable(nn, i);

    std::uniform_int_distribution<int> coef(0, 2);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    Polynomial base(nn);
    for (const auto& e : monos)
        if (rng() % 2) base.add_term(e, GaussianRational(coef(rng)));
    if (base.is_zero()) base.add_term(monos[pick(rng)], GaussianRational(1));

    Polynomial chosen = base;
    for (int attempt = 0; attempt < 20; ++attempt) {
        Polynomial a = base;
        const int dents = 1 + static_cast<int>(rng() % 2);
        for (int k = 0; k < dents; ++k) a.add_term(monos[pick(rng)], GaussianRational(-1 - static_cast<long>(rng() % 2)));
        const Polynomial b = a * sum_x;
        const bool nonneg = std::all_of(b.terms().begin(), b.terms().end(),
                                        [](const auto& t) { return sgn(t.second.re()) >= 0; });
        if (nonneg && !b.is_zero()) {
            chosen = a;
            break;
        }
    }
    const Polynomial b = chosen * sum_x;
    PolyMap p(nn);
    for (const auto& [e, c] : b.terms()) {
        const long copies = c.re().get_num().get_si();
        for (long k = 0; k < copies; ++k) p.push_back(Polynomial::monomial(e));
    }
    return p;
}

PolyMap gh_piece(long n, int f_degree, std::mt19937_64& rng)
{
    const auto nn = static_cast<std::size_t>(n);
    const std::size_t q = 1 + rng() % 3;
    PolyMap f(nn);
    for (std::size_t k = 0; k < q; ++k) f.push_back(random_polynomial(nn, f_degree, rng));
    return tensor_with_z(f);
}

Matrix cayley_unitary(std::size_t q, std::mt19937_64& rng)
{
    Matrix s(q, q);
    std::uniform_int_distribution<long> d(-1, 1);
    for (std::size_t i = 0; i < q; ++i) {
        s(i, i) = GaussianRational(Rational(0), Rational(d(rng)));
        for (std::size_t j = i + 1; j < q; ++j) {
            s(i, j) = small_gaussian(rng, -1, 1);
            s(j, i) = -s(i, j).conj();
        }
    }
    Matrix plus = Matrix::identity(q), minus = Matrix::identity(q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            plus(i, j) += s(i, j);
            minus(i, j) -= s(i, j);
        }
    // I + S is invertible for skew-Hermitian S.
    return minus * *inverse(plus);
}

} // namespace

Polynomial random_polynomial(std::size_t n, int max_degree, std::mt19937_64& rng, double density)
{
    std::bernoulli_distribution keep(density);
    Polynomial p(n);
    for (const auto& e : monomials_up_to_degree(n, std::max(0, max_degree)))
        if (keep(rng)) p.add_term(e, small_gaussian(rng));
    return p;
}

GhInstance gen_gh_instance(long n, long kappa, int degree, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return gen_gh_instance(n, kappa, degree, rng);
}

GhInstance gen_gh_instance(long n, long kappa, int degree, std::mt19937_64& rng)
{
    if (n < 1 || kappa < 1 || degree < 0) throw OutOfRange("gen_gh_instance: need n >= 1, kappa >= 1, degree >= 0");
    const auto nn = static_cast<std::size_t>(n);
    const std::size_t budget = monomials_up_to_degree(nn, degree).size();
    if (static_cast<std::size_t>(kappa) > budget)
        throw Error("gen_gh_instance: rank " + std::to_string(kappa) + " unreachable with " + std::to_string(budget) +
                    " monomials of degree <= " + std::to_string(degree));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        PolyMap f(nn);
        for (long k = 0; k < kappa; ++k) f.push_back(random_polynomial(nn, degree, rng));
        if (static_cast<long>(linear_rank(f).rank) == kappa) return {f, tensor_with_z(f)};
    }
    throw Error("gen_gh_instance: rank " + std::to_string(kappa) + " not reached after 1000 draws");
}

PolyMap random_identity_instance(long n, int max_degree, std::mt19937_64& rng)
{
    const auto nn = static_cast<std::size_t>(n);
    const int inner = std::max(0, max_degree - 1);
    std::discrete_distribution<int> kind({3, 3, 2, 2});
    PolyMap p(nn);
    switch (kind(rng)) {
    case 0:
        p = gh_piece(n, inner, rng);
        break;
    case 1:
        p = monomial_piece(n, inner, rng);
        break;
    case 2:
        p = stack(gh_piece(n, inner, rng), monomial_piece(n, inner, rng));
        break;
    default: {
        const std::size_t q = 1 + rng() % 3;
        const bool drop_constants = rng() % 2;
        for (std::size_t k = 0; k < q; ++k) {
            Polynomial c = random_polynomial(nn, max_degree, rng);
            p.push_back(drop_constants ? c.without_constant() : c);
        }
        return p;
    }
    }
    if (p.size() > 1 && rng() % 2) p = recombine(cayley_unitary(p.size(), rng), p);
    return p;
}

// ---------------------------------------------------------------------------
// Instance analysis

InstanceReport analyze_instance(const PolyMap& p, long n, SearchTarget target, std::optional<long> kappa_f)
{
    const auto start = std::chrono::steady_clock::now();
    InstanceReport rep;
    rep.P = p;
    rep.kappa_f = kappa_f;
    rep.A = HermitianForm(p.dim());
    rep.F = PolyMap(p.dim());
    rep.G = PolyMap(p.dim());

    auto res = check_sos_identity(p);
    if (auto* nd = std::get_if<NotDivisible>(&res)) {
        rep.identity_holds = false;
        rep.reason = "identity fails: " + nd->describe();
    } else {
        rep.identity_holds = true;
        rep.A = std::get<HermitianForm>(res);
        rep.r = static_cast<long>(linear_rank(p).rank);
        rep.classification = classify_rank(n, rep.r);
        const SignatureDecomposition sig = signature_decompose(rep.A);
        rep.F = sig.F;
        rep.G = sig.G;

        bool candidate = false;
        switch (target) {
        case SearchTarget::SosConjecture:
            candidate = rep.classification.tag == RankClass::Tag::Gap;
            rep.reason = candidate ? "rank falls in a gap" : "rank class " + rep.classification.to_string();
            break;
        case SearchTarget::WeakSos:
            candidate = sig.q_minus() > 0 && rep.r < rank_max_threshold(n);
            rep.reason = sig.q_minus() == 0 ? "G = 0"
                                           : (candidate ? "G != 0 with rank below the maximal threshold" : "G != 0, rank above threshold");
            break;
        case SearchTarget::HuangLemma:
            candidate = rep.r > 0 && rep.r < n;
            rep.reason = candidate ? "0 < r < n" : "r = 0 or r >= n";
            break;
        case SearchTarget::GHBand:
            if (kappa_f) {
                const IntRange band = rank_band(n, *kappa_f);
                candidate = rep.r < band.a || rep.r > band.b;
                rep.reason = "band for kappa = " + std::to_string(*kappa_f) + ": [" + std::to_string(band.a) + ", " +
                             std::to_string(band.b) + "]";
            } else {
                rep.reason = "no generating F";
            }
            break;
        }
        rep.verdict = candidate ? Verdict::CounterexampleCandidate : Verdict::Consistent;
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

bool reverify_instance(const InstanceReport& rep, std::uint64_t seed)
{
    const std::size_t n = rep.P.dim();
    std::mt19937_64 rng(seed);
    auto random_point = [&] {
        std::vector<GaussianRational> z(n);
        for (auto& x : z) x = small_gaussian(rng, -3, 3);
        return z;
    };
    for (int k = 0; k < 50; ++k) {
        const auto z = random_point();
        Rational lhs(0), zz(0);
        for (const auto& v : evaluate(rep.P, z)) lhs += v.norm();
        for (const auto& x : z) zz += x.norm();
        if (lhs != evaluate_hermitian(rep.A, z) * zz) return false;
    }
    const std::size_t q = rep.P.size();
    const std::size_t pts = q + 5;
    Matrix values(q, pts);
    for (std::size_t j = 0; j < pts; ++j) {
        const auto v = evaluate(rep.P, random_point());
        for (std::size_t k = 0; k < q; ++k) values(k, j) = v[k];
    }
    return static_cast<long>(rank(values)) == rep.r;
}

namespace {

void record(SearchStatistics& st, const InstanceReport& rep)
{
    if (!rep.identity_holds) {
        ++st.identity_failed;
        return;
    }
    ++st.identity_holds;
    if (!rep.G.empty()) ++st.with_negative_part;
    ++st.class_histogram[rep.classification.to_string()];
    ++st.rank_histogram[rep.r];
    if (rep.verdict == Verdict::CounterexampleCandidate) ++st.candidates;
}

// Confirms or demotes a candidate through the independent path.
void confirm(InstanceReport& rep, std::uint64_t seed, std::size_t& discrepancies)
{
    if (rep.verdict != Verdict::CounterexampleCandidate) return;
    if (!reverify_instance(rep, seed)) {
        ++discrepancies;
        rep.verdict = Verdict::Consistent;
        rep.reason += " (independent re-check failed)";
    }
}

void run_parallel(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body)
{
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    for (auto& t : pool) t.join();
}

double multiset_count(double m, std::size_t max_size)
{
    double total = 0, term = 1;  // C(m + q - 1, q)
    for (std::size_t q = 0; q <= max_size; ++q) {
        if (q > 0) term = term * (m + static_cast<double>(q) - 1) / static_cast<double>(q);
        total += term;
    }
    return total;
}

std::vector<GaussianRational> distinct(const std::vector<GaussianRational>& v)
{
    std::vector<GaussianRational> out;
    for (const auto& x : v)
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    return out;
}

} // namespace

double exhaustive_space_size(const SearchConfig& config)
{
    const auto coeffs = distinct(config.coefficient_set);
    if (coeffs.empty()) return 0;
    const double monos = static_cast<double>(monomials_up_to_degree(static_cast<std::size_t>(config.n), config.max_degree).size());
    const bool has_zero = std::find(coeffs.begin(), coeffs.end(), GaussianRational{}) != coeffs.end();
    const double comps = std::pow(static_cast<double>(coeffs.size()), monos) - (has_zero ? 1 : 0);
    return multiset_count(comps, config.max_components);
}

SearchResult exhaustive_scan(const SearchConfig& config)
{
    const auto start = std::chrono::steady_clock::now();
    if (config.mode != SearchMode::Exhaustive) throw Error("exhaustive_scan requires exhaustive mode");
    if (config.target == SearchTarget::GHBand) throw Error("the gh-band target needs generated F and runs in random mode only");
    SearchResult result;
    result.config = config;
    const auto coeffs = distinct(config.coefficient_set);
    if (coeffs.empty()) return result;
    const double size = exhaustive_space_size(config);
    if (size > config.space_ceiling)
        throw SearchSpaceTooLarge("exhaustive search space has " + std::to_string(static_cast<long double>(size)) +
                                  " instances, above the ceiling " + std::to_string(config.space_ceiling));

    const auto n = static_cast<std::size_t>(config.n);
    const auto monos = monomials_up_to_degree(n, config.max_degree);

    // Test pairs (z, w) with z . w = 0: sum_k P_k(z) P_k*(w) must vanish for divisible ||P||^2.
    std::mt19937_64 rng(config.seed);
    std::vector<std::pair<std::vector<GaussianRational>, std::vector<GaussianRational>>> probes;
    for (int t = 0; t < 6 && n >= 2; ++t) {
        std::vector<GaussianRational> z(n), w(n);
        for (auto& x : z) x = small_gaussian(rng, -3, 3);
        if (z[0].is_zero()) z[0] = 1;
        GaussianRational dot;
        for (std::size_t i = 1; i < n; ++i) {
            w[i] = small_gaussian(rng, -3, 3);
            dot += z[i] * w[i];
        }
        w[0] = -dot / z[0];
        probes.emplace_back(std::move(z), std::move(w));
    }

    std::vector<Polynomial> comps;
    std::vector<std::vector<GaussianRational>> products;
    std::vector<std::size_t> digits(monos.size(), 0);
    for (;;) {
        Polynomial p(n);
        for (std::size_t m = 0; m < monos.size(); ++m) p.add_term(monos[m], coeffs[digits[m]]);
        // A nonzero constant term contributes |P_k(0)|^2 that nothing can cancel.
        if (!p.is_zero() && p.coefficient(ExponentVector(n)).is_zero()) {
            std::vector<GaussianRational> prod;
            const Polynomial pc = p.conjugate_coefficients();
            for (const auto& [z, w] : probes) prod.push_back(evaluate(p, z) * evaluate(pc, w));
            products.push_back(std::move(prod));
            comps.push_back(std::move(p));
        }
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == coeffs.size()) digits[pos++] = 0;
        if (pos == digits.size()) break;
    }
    const std::size_t m = comps.size();
    result.stats.instances = static_cast<std::size_t>(std::llround(size));
    result.stats.prefiltered = result.stats.instances - static_cast<std::size_t>(std::llround(multiset_count(static_cast<double>(m), config.max_components)));

    const std::size_t width = std::to_string(std::max<std::size_t>(m, 1)).size();
    auto make_id = [&](const std::vector<std::size_t>& idx) {
        std::string id = "q" + std::to_string(idx.size()) + ":";
        for (std::size_t k = 0; k < idx.size(); ++k) {
            std::string s = std::to_string(idx[k]);
            id += (k ? "-" : "") + std::string(width - s.size(), '0') + s;
        }
        return id;
    };

    std::mutex mu;
    std::size_t prefiltered = 0;
    std::vector<InstanceReport> kept;
    SearchStatistics partial;

    auto visit = [&](const std::vector<std::size_t>& idx, std::size_t& local_pref, std::vector<InstanceReport>& local) {
        for (std::size_t t = 0; t < probes.size(); ++t) {
            GaussianRational s;
            for (std::size_t k : idx) s += products[k][t];
            if (!s.is_zero()) {
                ++local_pref;
                return;
            }
        }
        PolyMap p(n);
        for (std::size_t k : idx) p.push_back(comps[k]);
        InstanceReport rep = analyze_instance(p, config.n, config.target);
        rep.id = make_id(idx);
        local.push_back(std::move(rep));
    };

    // Empty map first, then multisets partitioned by their first index.
    {
        std::size_t local_pref = 0;
        visit({}, local_pref, kept);
        prefiltered += local_pref;
    }
    run_parallel(m, worker_count(config.threads), [&](std::size_t first) {
        std::size_t local_pref = 0;
        std::vector<InstanceReport> local;
        std::vector<std::size_t> idx{first};
        std::function<void()> rec = [&] {
            visit(idx, local_pref, local);
            if (idx.size() == config.max_components) return;
            for (std::size_t next = idx.back(); next < m; ++next) {
                idx.push_back(next);
                rec();
                idx.pop_back();
            }
        };
        if (config.max_components > 0) rec();
        std::lock_guard lock(mu);
        prefiltered += local_pref;
        for (auto& r : local) kept.push_back(std::move(r));
    });
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        return a.P.size() != b.P.size() ? a.P.size() < b.P.size() : a.id < b.id;
    });

    result.stats.prefiltered += prefiltered;
    std::size_t index = 0;
    for (auto& rep : kept) {
        rep.index = index++;
        confirm(rep, config.seed ^ rep.index, result.stats.discrepancies);
        record(result.stats, rep);
        if (!rep.identity_holds) continue;
        if (rep.verdict == Verdict::CounterexampleCandidate && !result.counterexample) result.counterexample = rep;
        result.reports.push_back(std::move(rep));
    }
    result.stats.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

SearchResult falsify(const SearchConfig& config)
{
    const auto start = std::chrono::steady_clock::now();
    if (config.mode != SearchMode::Random) throw Error("falsify requires random mode");
    if (config.n < 2) throw OutOfRange("falsify: n must be at least 2");
    SearchResult result;
    result.config = config;
    const long k0 = kappa0(config.n);

    std::vector<InstanceReport> reports(config.trials);
    run_parallel(config.trials, worker_count(config.threads), [&](std::size_t trial) {
        std::mt19937_64 rng = trial_rng(config.seed, trial);
        InstanceReport rep;
        if (config.target == SearchTarget::GHBand) {
            const long kappa = std::uniform_int_distribution<long>(1, k0)(rng);
            const int degree = std::uniform_int_distribution<int>(1, std::max(1, config.max_degree))(rng);
            const GhInstance gh = gen_gh_instance(config.n, kappa, degree, rng);
            rep = analyze_instance(gh.P, config.n, config.target, kappa);
        } else {
            rep = analyze_instance(random_identity_instance(config.n, config.max_degree, rng), config.n, config.target);
        }
        rep.index = trial;
        rep.id = "t" + std::to_string(trial);
        reports[trial] = std::move(rep);
    });

    result.stats.instances = config.trials;
    for (auto& rep : reports) {
        confirm(rep, config.seed ^ (0x9e3779b97f4a7c15ULL + rep.index), result.stats.discrepancies);
        record(result.stats, rep);
        if (!rep.identity_holds) continue;
        if (rep.verdict == Verdict::CounterexampleCandidate && !result.counterexample) result.counterexample = rep;
        result.reports.push_back(std::move(rep));
    }
    result.stats.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace sosgap
