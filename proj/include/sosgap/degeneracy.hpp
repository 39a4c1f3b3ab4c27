#pragma once

#include "sosgap/error.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace sosgap {

class NoValidK : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

/// Degeneracy dimensions 0 = d_1 < d_2 < ... < d_{l0}.
class DegeneracySequence {
public:
    DegeneracySequence(long n, std::vector<long> dims);

    long n() const { return n_; }
    const std::vector<long>& dims() const { return dims_; }
    long d() const { return dims_.back(); }
    std::size_t l0() const { return dims_.size(); }

private:
    long n_;
    std::vector<long> dims_;
};

/// g(j) = n - j for 0 <= j < n, else 0.
long g(long n, long j);

struct KReport {
    std::vector<long> increments;  // d_l - d_{l-1}, l = 2..l0
    std::vector<long> k_l;         // minimal k_l per increment
    std::vector<long> shifts;      // m_l, l = 2..l0+1 (last entry equals k)
    long k = 0;
};

/// Minimal k_l with d_l - d_{l-1} < sum_{j=0}^{k_l} (n - j). Throws NoValidK when k_l would exceed n - 1.
KReport minimal_k_sequence(const DegeneracySequence& seq);

struct KClaimReport {
    KReport k;
    long kappa = 0;
    long d = 0;
    long dest_bound = 0;       // sum_{i<kappa}(n-i) - 1
    long telescoped = 0;       // sum of increments
    long unshifted_sum = 0;    // sum_l sum_{j<k_l} g(j)
    long shifted_sum = 0;      // sum_l sum_{j<k_l} g(j + m_l)
    long final_sum = 0;        // sum_{i<k} (n - i)
    bool telescoping_ok = false;
    bool minimality_ok = false;
    bool shift_ok = false;
    bool final_ok = false;     // final_sum == shifted_sum <= d
    bool claim_holds = false;  // k <= kappa - 1
};

/// Replays the argument that k <= kappa - 1 under d <= sum_{i<kappa}(n-i) - 1.
/// Throws HypothesisViolated when that bound fails, OutOfRange when kappa is outside [1, kappa0(n)].
KClaimReport verify_k_claim(const DegeneracySequence& seq, long kappa);

/// n + d + k + 1; requires k < n.
long theorem_affine_dim(long n, long d, long k);

struct TheoremReplay {
    long n = 0;
    long codim = 0;            // N - n
    long kappa = 0;
    long d = 0;
    long sos_bound = 0;        // (kappa - 1) n
    bool sos_assumed = false;
    bool sos_consequence_holds = false;
    KClaimReport claim;
    long n0 = 0;               // n + d + k
    long affine_dim = 0;       // n0 + 1
    long flat_codim = 0;       // n0 - n = d + k
    long bound = 0;            // hjy_bound(n, kappa)
    bool conclusion_holds = false;
};

/// With sos_assumed, an input violating d <= (kappa - 1) n is rejected as HypothesisViolated.
TheoremReplay replay_main_theorem(long n, long big_n, const DegeneracySequence& seq, bool sos_assumed);

struct ExhaustiveClaimSummary {
    long n = 0;
    std::size_t sequences = 0;
    std::size_t checks = 0;  // (sequence, kappa) pairs satisfying the hypothesis
    std::size_t violations = 0;
};

/// Every strictly increasing sequence from 0 with d <= max over kappa <= kappa0(n) of the hypothesis bound.
void enumerate_sequences(long n, long max_d, const std::function<void(const DegeneracySequence&)>& visit);

ExhaustiveClaimSummary exhaustive_k_claim(long n);

} // namespace sosgap
