#pragma once

#include "sosgap/error.hpp"
#include "sosgap/gap_tables.hpp"
#include "sosgap/gaussian_rational.hpp"
#include "sosgap/hermitian.hpp"
#include "sosgap/polynomial.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sosgap {

enum class SearchTarget { SosConjecture, WeakSos, HuangLemma, GHBand };
enum class SearchMode { Exhaustive, Random };
enum class Verdict { Consistent, CounterexampleCandidate };

std::string to_string(SearchTarget t);
std::string to_string(SearchMode m);
std::string to_string(Verdict v);
SearchTarget parse_search_target(const std::string& name);

class SearchSpaceTooLarge : public Error {
public:
    using Error::Error;
};

struct SearchConfig {
    long n = 2;
    int max_degree = 2;
    std::vector<GaussianRational> coefficient_set;  // exhaustive mode only
    std::size_t max_components = 2;                 // exhaustive mode only
    SearchMode mode = SearchMode::Random;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    SearchTarget target = SearchTarget::SosConjecture;
    double space_ceiling = 5e8;  // exhaustive refuses larger raw spaces
    unsigned threads = 0;        // 0: SOSGAP_THREADS or hardware concurrency
};

struct InstanceReport {
    std::size_t index = 0;  // trial number or enumeration rank; reports are sorted by it
    std::string id;
    PolyMap P;
    HermitianForm A;
    PolyMap F;
    PolyMap G;
    std::optional<long> kappa_f;  // linear rank of the generating F (GH instances)
    bool identity_holds = false;
    long r = 0;
    RankClass classification;
    Verdict verdict = Verdict::Consistent;
    std::string reason;
    double elapsed_ms = 0.0;  // never serialized into records
};

struct SearchStatistics {
    std::size_t instances = 0;
    std::size_t prefiltered = 0;        // rejected by the exact necessary-condition filter
    std::size_t identity_failed = 0;    // full check ran and ||P||^2 was not divisible
    std::size_t identity_holds = 0;
    std::size_t with_negative_part = 0; // q_- > 0 (WeakSos-relevant)
    std::size_t candidates = 0;
    std::size_t discrepancies = 0;      // candidates failing the independent re-check
    std::map<std::string, std::size_t> class_histogram;
    std::map<long, std::size_t> rank_histogram;
    double elapsed_seconds = 0.0;
};

struct SearchResult {
    SearchConfig config;
    std::vector<InstanceReport> reports;  // identity-satisfying instances, sorted by index
    SearchStatistics stats;
    std::optional<InstanceReport> counterexample;  // first confirmed candidate
};

/// Worker count from SOSGAP_THREADS (if set) capped by hardware concurrency.
unsigned worker_count(unsigned requested = 0);

/// Random polynomial of total degree <= max_degree with small Gaussian-integer coefficients.
Polynomial random_polynomial(std::size_t n, int max_degree, std::mt19937_64& rng, double density = 0.5);

struct GhInstance {
    PolyMap F;
    PolyMap P;  // F (x) z
};

/// F with linear rank exactly kappa and degree <= degree. Throws Error when the monomial budget cannot reach kappa.
GhInstance gen_gh_instance(long n, long kappa, int degree, std::uint64_t seed);
GhInstance gen_gh_instance(long n, long kappa, int degree, std::mt19937_64& rng);

/// Mixture of identity-satisfying constructions (GH pieces, monomial pieces with possibly
/// indefinite A, rational unitary mixing) and unconstrained maps.
PolyMap random_identity_instance(long n, int max_degree, std::mt19937_64& rng);

/// Runs the identity check, rank, classification and target verdict on one instance.
InstanceReport analyze_instance(const PolyMap& p, long n, SearchTarget target, std::optional<long> kappa_f = std::nullopt);

/// Independent re-check: point evaluation of ||P||^2 = A ||z||^2 at 50 points and rank from evaluations.
bool reverify_instance(const InstanceReport& rep, std::uint64_t seed);

/// Raw number of candidate maps (multisets of nonzero components) for an exhaustive config.
double exhaustive_space_size(const SearchConfig& config);

SearchResult exhaustive_scan(const SearchConfig& config);
SearchResult falsify(const SearchConfig& config);

} // namespace sosgap
