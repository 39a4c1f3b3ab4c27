#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sosgap {

struct IntRange {
    long a = 0;
    long b = 0;
    friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// sum_{i=0}^{kappa-1} (n - i) = n kappa - kappa (kappa - 1) / 2
long partial_sum(long n, long kappa);

/// Largest kappa whose gap interval I_kappa is nonempty, by direct scan. n >= 2.
long kappa0(long n);

/// I_kappa = [(kappa-1) n + kappa, sum_{i<kappa}(n-i) - 1], 1 <= kappa <= kappa0(n).
IntRange gap_interval(long n, long kappa);

/// D_n = kappa0 n - kappa0 (kappa0 - 1) / 2 - 1
long d_max(long n);

/// The kappa with codim in I_kappa, if any.
std::optional<long> gap_membership(long n, long codim);

/// Largest flat codimension N_0 - n allowed in the kappa-th gap: (kappa-1) n + kappa - 1.
long hjy_bound(long n, long kappa);

/// Rank band [n kappa - kappa (kappa - 1) / 2, kappa n]; defined for every kappa >= 1.
IntRange rank_band(long n, long kappa);

/// (kappa0 + 1) n - kappa0 (kappa0 + 1) / 2 - 1
long rank_max_threshold(long n);

struct RankClass {
    enum class Tag { Zero, Band, Gap, AboveMax };
    Tag tag = Tag::Gap;
    long kappa = 0;          // set for Band
    bool above_max = false;  // r >= rank_max_threshold(n)

    std::string to_string() const;
    friend bool operator==(const RankClass&, const RankClass&) = default;
};

RankClass classify_rank(long n, long r);

/// Smallest kappa with rank_band(kappa) and rank_band(kappa+1) intersecting, by scan.
long first_band_overlap(long n);

struct GapTable {
    long n = 0;
    long kappa0 = 0;
    std::vector<IntRange> intervals;  // kappa = 1..kappa0
    long d_max = 0;
};

GapTable make_gap_table(long n);

} // namespace sosgap
