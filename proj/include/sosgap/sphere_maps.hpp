#pragma once

#include "sosgap/error.hpp"
#include "sosgap/gaussian_rational.hpp"
#include "sosgap/hermitian.hpp"
#include "sosgap/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace sosgap {

/// Polynomial map S^n -> S^N in ambient coordinates: n + 1 variables, N + 1 components.
class BallMap {
public:
    /// Dimensions are read off the map: n = variables - 1, N = components - 1.
    explicit BallMap(PolyMap map);

    const PolyMap& map() const { return map_; }
    long source_cr_dim() const { return n_; }
    long target_cr_dim() const { return big_n_; }

private:
    PolyMap map_;
    long n_;
    long big_n_;
};

/// ||f||^2 - 1 = q (||z||^2 - 1)
struct ProperCertificate {
    HermitianForm quotient;
};

struct NotProper {
    std::vector<GaussianRational> point;  // on the unit sphere
    Rational norm_squared;                // ||f(point)||^2 != 1
};

std::variant<ProperCertificate, NotProper> is_proper_ball_map(const BallMap& f);

class NotProperError : public Error {
public:
    using Error::Error;
};

/// Rational point of the unit sphere in C^m via inverse stereographic projection of a random t in Q^{2m-1}.
std::vector<GaussianRational> rational_sphere_point(std::size_t m, std::mt19937_64& rng);

BallMap identity_map(long n);
BallMap standard_linear_embedding(long n, long big_n);
/// (z_1, ..., z_n, z_1 z_{n+1}, ..., z_{n+1}^2): S^n -> S^{2n}.
BallMap whitney_map(long n);
/// L o f: appends zero components up to target dimension big_n.
BallMap pad_zeros(const BallMap& f, long big_n);

struct AffineDimensionReport {
    long dimension = 0;              // dimension of the affine hull of f(S^n)
    std::size_t evaluation_points = 0;
    long coefficient_rank = 0;       // rank of the nonconstant coefficient matrix (hull of f(C^{n+1}))
};

inline constexpr std::uint64_t kDefaultSphereSeed = 0x5eed5eedULL;

AffineDimensionReport affine_image_dimension(const BallMap& f, std::uint64_t seed = kDefaultSphereSeed);

struct GapConclusionReport {
    long n = 0;
    long big_n = 0;
    long codim = 0;
    std::optional<long> kappa;
    long affine_dim = 0;
    long n0 = 0;
    std::optional<long> bound;
    std::size_t evaluation_points = 0;
    bool consistent = true;
    std::string status;  // "outside gaps", "consistent", or "VIOLATION"
};

/// Throws NotProperError when f is not a proper ball map.
GapConclusionReport check_gap_conclusion(const BallMap& f, std::uint64_t seed = kDefaultSphereSeed);

} // namespace sosgap
