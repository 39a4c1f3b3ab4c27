#include "sosgap/gap_tables.hpp"

#include "sosgap/error.hpp"

namespace sosgap {

namespace {

void require_n(long n, const char* what)
{
    if (n < 2) throw OutOfRange(std::string(what) + ": n = " + std::to_string(n) + " must be at least 2");
}

void require_kappa(long n, long kappa, const char* what)
{
    require_n(n, what);
    if (kappa < 1 || kappa > kappa0(n))
        throw OutOfRange(std::string(what) + ": kappa = " + std::to_string(kappa) + " outside [1, " +
                         std::to_string(kappa0(n)) + "] for n = " + std::to_string(n));
}

} // namespace

long partial_sum(long n, long kappa)
{
    return n * kappa - kappa * (kappa - 1) / 2;
}

long kappa0(long n)
{
    require_n(n, "kappa0");
    long best = 0;
    for (long k = 1; k < n; ++k)
        if ((k - 1) * n + k <= partial_sum(n, k) - 1) best = k;
    return best;
}

IntRange gap_interval(long n, long kappa)
{
    require_kappa(n, kappa, "gap_interval");
    return {(kappa - 1) * n + kappa, partial_sum(n, kappa) - 1};
}

long d_max(long n)
{
    const long k = kappa0(n);
    return k * n - k * (k - 1) / 2 - 1;
}

std::optional<long> gap_membership(long n, long codim)
{
    require_n(n, "gap_membership");
    if (codim < 0) throw OutOfRange("gap_membership: negative codimension");
    const long k0 = kappa0(n);
    for (long k = 1; k <= k0; ++k) {
        const IntRange r = gap_interval(n, k);
        if (r.a <= codim && codim <= r.b) return k;
    }
    return std::nullopt;
}

long hjy_bound(long n, long kappa)
{
    require_kappa(n, kappa, "hjy_bound");
    return (kappa - 1) * n + kappa - 1;
}

IntRange rank_band(long n, long kappa)
{
    return {partial_sum(n, kappa), kappa * n};
}

long rank_max_threshold(long n)
{
    const long k = kappa0(n);
    return (k + 1) * n - k * (k + 1) / 2 - 1;
}

std::string RankClass::to_string() const
{
    switch (tag) {
    case Tag::Zero:
        return "Zero";
    case Tag::Band:
        return "Band(" + std::to_string(kappa) + ")" + (above_max ? "+AboveMax" : "");
    case Tag::Gap:
        return "Gap";
    case Tag::AboveMax:
        return "AboveMax";
    }
    return "?";
}

RankClass classify_rank(long n, long r)
{
    require_n(n, "classify_rank");
    if (r < 0) throw OutOfRange("classify_rank: negative rank");
    RankClass c;
    if (r == 0) {
        c.tag = RankClass::Tag::Zero;
        return c;
    }
    c.above_max = r >= rank_max_threshold(n);
    const long k0 = kappa0(n);
    for (long k = 1; k <= k0; ++k) {
        const IntRange b = rank_band(n, k);
        if (b.a <= r && r <= b.b) {
            c.tag = RankClass::Tag::Band;
            c.kappa = k;
            return c;
        }
    }
    c.tag = c.above_max ? RankClass::Tag::AboveMax : RankClass::Tag::Gap;
    return c;
}

long first_band_overlap(long n)
{
    require_n(n, "first_band_overlap");
    for (long k = 1;; ++k) {
        const IntRange lo = rank_band(n, k);
        const IntRange hi = rank_band(n, k + 1);
        if (hi.a <= lo.b && lo.a <= hi.b) return k;
    }
}

GapTable make_gap_table(long n)
{
    GapTable t;
    t.n = n;
    t.kappa0 = kappa0(n);
    for (long k = 1; k <= t.kappa0; ++k) t.intervals.push_back(gap_interval(n, k));
    t.d_max = d_max(n);
    return t;
}

} // namespace sosgap
