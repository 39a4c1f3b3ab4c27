#include "sosgap/gap_tables.hpp"
#include "sosgap/error.hpp"

#include <doctest.h>

#include <cmath>

using namespace sosgap;

namespace {

// Brute-force reference values straight from the defining sums.
long sum_down(long n, long kappa)
{
    long s = 0;
    for (long i = 0; i < kappa; ++i) s += n - i;
    return s;
}

long kappa0_reference(long n)
{
    long best = 0;
    for (long k = 1; k < n; ++k)
        if ((k - 1) * n + k <= sum_down(n, k) - 1) best = k;
    return best;
}

} // namespace

TEST_CASE("kappa0 examples")
{
    CHECK(kappa0(2) == 1);
    CHECK(kappa0(4) == 2);
    CHECK(kappa0(7) == 3);
    CHECK(kappa0(6) == 2);
    CHECK_THROWS_AS(kappa0(1), OutOfRange);
    for (long n = 2; n <= 300; ++n) CHECK(kappa0(n) == kappa0_reference(n));
}

TEST_CASE("kappa0 closed-form cross-check")
{
    for (long n = 2; n <= 2000; ++n) {
        long k = 0;
        while ((k + 1) * (k + 2) / 2 + 1 <= n) ++k;
        CHECK(kappa0(n) == k);
    }
}

TEST_CASE("gap_interval examples")
{
    for (long n = 2; n <= 10; ++n) CHECK(gap_interval(n, 1) == IntRange{1, n - 1});
    CHECK(gap_interval(5, 2) == IntRange{7, 8});
    CHECK(gap_interval(7, 3) == IntRange{17, 17});
    CHECK_THROWS_AS(gap_interval(7, 4), OutOfRange);
    CHECK_THROWS_AS(gap_interval(7, 0), OutOfRange);
}

TEST_CASE("d_max examples")
{
    CHECK(d_max(2) == 1);
    CHECK(d_max(7) == 17);
    CHECK_THROWS_AS(d_max(1), OutOfRange);
}

TEST_CASE("gap_membership examples")
{
    CHECK(gap_membership(4, 3) == 1);
    CHECK_FALSE(gap_membership(4, 4));
    CHECK(gap_membership(4, 6) == 2);
    for (long n = 2; n <= 20; ++n) CHECK_FALSE(gap_membership(n, 0));
}

TEST_CASE("hjy_bound examples")
{
    for (long n = 2; n <= 10; ++n) CHECK(hjy_bound(n, 1) == 0);
    CHECK(hjy_bound(7, 3) == 16);
    CHECK(hjy_bound(4, 2) == 5);
    CHECK_THROWS_AS(hjy_bound(4, 3), OutOfRange);
}

TEST_CASE("classify_rank examples")
{
    const RankClass gap = classify_rank(2, 1);
    CHECK(gap.tag == RankClass::Tag::Gap);
    CHECK(gap.to_string() == "Gap");
    const RankClass both = classify_rank(2, 2);
    CHECK(both.tag == RankClass::Tag::Band);
    CHECK(both.kappa == 1);
    CHECK(both.above_max);
    CHECK(classify_rank(2, 0).tag == RankClass::Tag::Zero);
    CHECK(classify_rank(2, 5).tag == RankClass::Tag::AboveMax);
    CHECK_THROWS_AS(classify_rank(2, -1), OutOfRange);
}

TEST_CASE("classification follows the definitions")
{
    for (long n = 2; n <= 30; ++n) {
        const long k0 = kappa0(n);
        const long rmax = (k0 + 1) * n - k0 * (k0 + 1) / 2 - 1;
        CHECK(rank_max_threshold(n) == rmax);
        for (long r = 0; r <= n * (k0 + 2); ++r) {
            const RankClass c = classify_rank(n, r);
            long band = 0;
            for (long k = 1; k <= k0 && !band; ++k)
                if (n * k - k * (k - 1) / 2 <= r && r <= k * n) band = k;
            if (r == 0)
                CHECK(c.tag == RankClass::Tag::Zero);
            else if (band)
                CHECK((c.tag == RankClass::Tag::Band && c.kappa == band));
            else
                CHECK(c.tag == (r >= rmax ? RankClass::Tag::AboveMax : RankClass::Tag::Gap));
            if (r != 0) CHECK(c.above_max == (r >= rmax));
            if (0 < r && r < n) CHECK(c.tag == RankClass::Tag::Gap);
        }
    }
}

TEST_CASE("first_band_overlap")
{
    CHECK(first_band_overlap(2) == 2);
    CHECK(first_band_overlap(7) == 4);
    CHECK_THROWS_AS(first_band_overlap(1), OutOfRange);
}

TEST_CASE("gap table properties up to n = 200")
{
    long prev = 0;
    for (long n = 2; n <= 200; ++n) {
        const GapTable t = make_gap_table(n);
        CHECK(t.kappa0 == kappa0(n));
        CHECK(t.kappa0 < n);
        CHECK(t.kappa0 >= prev);
        prev = t.kappa0;
        REQUIRE(static_cast<long>(t.intervals.size()) == t.kappa0);
        for (long k = 1; k <= t.kappa0; ++k) {
            const IntRange& r = t.intervals[static_cast<std::size_t>(k - 1)];
            CHECK(r.a == (k - 1) * n + k);
            CHECK(r.b == sum_down(n, k) - 1);
            CHECK(r.a <= r.b);
            CHECK(r.a >= 0);
            CHECK(r.b <= t.d_max);
            if (k > 1) CHECK(t.intervals[static_cast<std::size_t>(k - 2)].b < r.a);
        }
        CHECK(t.intervals.back().b == t.d_max);
        CHECK(d_max(n) == t.d_max);
        CHECK(first_band_overlap(n) == t.kappa0 + 1);
    }
}

TEST_CASE("kappa0 grows like sqrt(2n)")
{
    for (long n = 2; n <= 10000; ++n) CHECK(std::abs(static_cast<double>(kappa0(n)) - std::sqrt(2.0 * n)) <= 2.0);
}
