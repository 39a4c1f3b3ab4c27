#pragma once

#include "sosgap/error.hpp"
#include "sosgap/gaussian_rational.hpp"
#include "sosgap/polynomial.hpp"

#include <cstddef>
#include <vector>

namespace sosgap {

/// Dimension of V_P together with a spanning set drawn from P itself.
struct RankReport {
    std::size_t rank = 0;
    PolyMap basis;
};

RankReport linear_rank(const PolyMap& p);

/// Components F^j H^k, j outer, k inner.
PolyMap tensor_product(const PolyMap& f, const PolyMap& h);
PolyMap tensor_with_z(const PolyMap& f);

/// V_A subset of V_B.
bool subspace_contained(const PolyMap& a, const PolyMap& b);

class ContainmentViolated : public Error {
public:
    using Error::Error;
};

struct SpecrkBounds {
    std::size_t lower = 0;  // dim V_{F(x)z} - dim V_{G(x)z}
    std::size_t upper = 0;  // dim V_{F(x)z}
};

/// Throws ContainmentViolated when V_{G(x)z} is not inside V_{F(x)z}.
SpecrkBounds specrk_bounds(const PolyMap& f, const PolyMap& g);

struct ProfileEntry {
    Rational t;
    std::size_t rank = 0;
    bool below_generic = false;  // rank < dim V_{F(x)z}
};

/// SOS certificate rank of A_t ||z||^2 at each sample. Throws Error when A_1 ||z||^2 is not SOS.
std::vector<ProfileEntry> family_rank_profile(const PolyMap& f, const PolyMap& g, const std::vector<Rational>& t_samples);

} // namespace sosgap
