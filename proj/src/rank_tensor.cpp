#include "sosgap/rank_tensor.hpp"

#include "sosgap/hermitian.hpp"

#include <string>
#include <variant>

namespace sosgap {

RankReport linear_rank(const PolyMap& p)
{
    const CoefficientMatrix cm = coefficient_matrix(p);
    const RowEchelon e = row_reduce(cm.matrix);
    RankReport r;
    r.rank = e.pivots.size();
    r.basis = PolyMap(p.dim());
    for (std::size_t src : e.source) r.basis.push_back(p[src]);
    return r;
}

PolyMap tensor_product(const PolyMap& f, const PolyMap& h)
{
    if (f.dim() != h.dim())
        throw DimensionMismatch("tensor_product: dimensions " + std::to_string(f.dim()) + " and " + std::to_string(h.dim()));
    PolyMap out(f.dim());
    for (const auto& fj : f.components())
        for (const auto& hk : h.components()) out.push_back(fj * hk);
    return out;
}

PolyMap tensor_with_z(const PolyMap& f)
{
    return tensor_product(f, PolyMap::coordinates(f.dim()));
}

bool subspace_contained(const PolyMap& a, const PolyMap& b)
{
    if (a.dim() != b.dim()) throw DimensionMismatch("subspace_contained: dimensions differ");
    return linear_rank(stack(a, b)).rank == linear_rank(b).rank;
}

SpecrkBounds specrk_bounds(const PolyMap& f, const PolyMap& g)
{
    const PolyMap fz = tensor_with_z(f);
    const PolyMap gz = tensor_with_z(g);
    if (!subspace_contained(gz, fz))
        throw ContainmentViolated("V_{G(x)z} is not contained in V_{F(x)z}; no SOS identity can hold");
    SpecrkBounds b;
    b.upper = linear_rank(fz).rank;
    b.lower = b.upper - linear_rank(gz).rank;
    return b;
}

std::vector<ProfileEntry> family_rank_profile(const PolyMap& f, const PolyMap& g, const std::vector<Rational>& t_samples)
{
    if (!std::holds_alternative<SosCertificate>(is_sos(multiply_by_norm(a_t_family(f, g, Rational(1))))))
        throw Error("family_rank_profile: A_1 ||z||^2 is not a sum of squares");
    const std::size_t generic = linear_rank(tensor_with_z(f)).rank;
    std::vector<ProfileEntry> out;
    for (const auto& t : t_samples) {
        const HermitianForm h = multiply_by_norm(a_t_family(f, g, t));
        auto res = is_sos(h);
        const auto* cert = std::get_if<SosCertificate>(&res);
        if (!cert) throw std::logic_error("A_t ||z||^2 failed to be SOS although A_1 ||z||^2 is");
        out.push_back({t, cert->rank, cert->rank < generic});
    }
    return out;
}

} // namespace sosgap
