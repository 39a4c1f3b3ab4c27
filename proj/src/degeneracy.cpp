#include "sosgap/degeneracy.hpp"

#include "sosgap/gap_tables.hpp"

#include <string>

namespace sosgap {

DegeneracySequence::DegeneracySequence(long n, std::vector<long> dims) : n_(n), dims_(std::move(dims))
{
    if (n_ < 1) throw OutOfRange("degeneracy sequence: n must be positive");
    if (dims_.empty() || dims_.front() != 0) throw Error("degeneracy sequence must start with d_1 = 0");
    for (std::size_t l = 1; l < dims_.size(); ++l)
        if (dims_[l] <= dims_[l - 1])
            throw Error("degeneracy sequence must be strictly increasing (d_" + std::to_string(l + 1) + " = " +
                        std::to_string(dims_[l]) + ")");
}

long g(long n, long j)
{
    if (j < 0) throw OutOfRange("g: negative argument");
    return j < n ? n - j : 0;
}

KReport minimal_k_sequence(const DegeneracySequence& seq)
{
    const long n = seq.n();
    KReport r;
    r.shifts.push_back(0);
    for (std::size_t l = 1; l < seq.dims().size(); ++l) {
        const long inc = seq.dims()[l] - seq.dims()[l - 1];
        long k = 0;
        while (k <= n - 1 && !(inc < partial_sum(n, k + 1))) ++k;
        if (k > n - 1)
            throw NoValidK("increment d_" + std::to_string(l + 1) + " - d_" + std::to_string(l) + " = " +
                           std::to_string(inc) + " admits no k_l <= n - 1");
        r.increments.push_back(inc);
        r.k_l.push_back(k);
        r.k += k;
        r.shifts.push_back(r.k);
    }
    return r;
}

KClaimReport verify_k_claim(const DegeneracySequence& seq, long kappa)
{
    const long n = seq.n();
    if (n < 2 || kappa < 1 || kappa > kappa0(n))
        throw OutOfRange("verify_k_claim: kappa = " + std::to_string(kappa) + " outside [1, kappa0(n)]");
    KClaimReport rep;
    rep.kappa = kappa;
    rep.d = seq.d();
    rep.dest_bound = partial_sum(n, kappa) - 1;
    if (rep.d > rep.dest_bound)
        throw HypothesisViolated("d = " + std::to_string(rep.d) + " exceeds sum_{i<kappa}(n-i) - 1 = " +
                                 std::to_string(rep.dest_bound));
    rep.k = minimal_k_sequence(seq);

    for (long inc : rep.k.increments) rep.telescoped += inc;
    rep.telescoping_ok = rep.telescoped == rep.d;

    rep.minimality_ok = true;
    for (std::size_t i = 0; i < rep.k.k_l.size(); ++i) {
        const long kl = rep.k.k_l[i];
        const long inc = rep.k.increments[i];
        rep.minimality_ok = rep.minimality_ok && inc >= partial_sum(n, kl) && inc < partial_sum(n, kl + 1);
        for (long j = 0; j < kl; ++j) {
            rep.unshifted_sum += g(n, j);
            rep.shifted_sum += g(n, j + rep.k.shifts[i]);
        }
    }
    rep.shift_ok = rep.unshifted_sum >= rep.shifted_sum && rep.d >= rep.unshifted_sum;
    for (long i = 0; i < rep.k.k; ++i) rep.final_sum += g(n, i);
    rep.final_ok = rep.final_sum == rep.shifted_sum && rep.final_sum <= rep.d;
    rep.claim_holds = rep.k.k <= kappa - 1;
    return rep;
}

long theorem_affine_dim(long n, long d, long k)
{
    if (k >= n) throw OutOfRange("theorem_affine_dim: k = " + std::to_string(k) + " must be below n = " + std::to_string(n));
    return n + d + k + 1;
}

TheoremReplay replay_main_theorem(long n, long big_n, const DegeneracySequence& seq, bool sos_assumed)
{
    if (seq.n() != n) throw DimensionMismatch("replay_main_theorem: sequence built for a different n");
    TheoremReplay rep;
    rep.n = n;
    rep.codim = big_n - n;
    const auto kappa = gap_membership(n, rep.codim);
    if (!kappa)
        throw HypothesisViolated("codimension " + std::to_string(rep.codim) + " lies in no gap interval for n = " +
                                 std::to_string(n));
    rep.kappa = *kappa;
    rep.d = seq.d();
    if (rep.d > rep.codim)
        throw HypothesisViolated("d = " + std::to_string(rep.d) + " exceeds the codimension " + std::to_string(rep.codim));
    rep.sos_bound = (rep.kappa - 1) * n;
    rep.sos_assumed = sos_assumed;
    rep.sos_consequence_holds = rep.d <= rep.sos_bound;
    if (sos_assumed && !rep.sos_consequence_holds)
        throw HypothesisViolated("d = " + std::to_string(rep.d) + " contradicts the assumed SOS consequence d <= " +
                                 std::to_string(rep.sos_bound));
    rep.claim = verify_k_claim(seq, rep.kappa);
    rep.n0 = n + rep.d + rep.claim.k.k;
    rep.affine_dim = theorem_affine_dim(n, rep.d, rep.claim.k.k);
    rep.flat_codim = rep.n0 - n;
    rep.bound = hjy_bound(n, rep.kappa);
    rep.conclusion_holds = rep.flat_codim <= rep.bound;
    return rep;
}

namespace {

void extend(long n, long max_d, std::vector<long>& dims, const std::function<void(const DegeneracySequence&)>& visit)
{
    visit(DegeneracySequence(n, dims));
    for (long next = dims.back() + 1; next <= max_d; ++next) {
        dims.push_back(next);
        extend(n, max_d, dims, visit);
        dims.pop_back();
    }
}

} // namespace

void enumerate_sequences(long n, long max_d, const std::function<void(const DegeneracySequence&)>& visit)
{
    std::vector<long> dims{0};
    extend(n, max_d, dims, visit);
}

ExhaustiveClaimSummary exhaustive_k_claim(long n)
{
    ExhaustiveClaimSummary s;
    s.n = n;
    const long k0 = kappa0(n);
    enumerate_sequences(n, partial_sum(n, k0) - 1, [&](const DegeneracySequence& seq) {
        ++s.sequences;
        for (long kappa = 1; kappa <= k0; ++kappa) {
            if (seq.d() > partial_sum(n, kappa) - 1) continue;
            ++s.checks;
            const KClaimReport r = verify_k_claim(seq, kappa);
            if (!(r.claim_holds && r.telescoping_ok && r.minimality_ok && r.shift_ok && r.final_ok)) ++s.violations;
        }
    });
    return s;
}

} // namespace sosgap
