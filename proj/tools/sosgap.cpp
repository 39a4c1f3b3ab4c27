#include "sosgap/degeneracy.hpp"
#include "sosgap/gap_tables.hpp"
#include "sosgap/hermitian.hpp"
#include "sosgap/io.hpp"
#include "sosgap/rank_tensor.hpp"
#include "sosgap/search.hpp"
#include "sosgap/sphere_maps.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

using namespace sosgap;

namespace {

constexpr const char* kVersion = "0.1.0";

enum class Format { Text, Records, Both };

// Text goes to `text`, which is a null sink in records-only mode.
struct Session {
    Format format = Format::Text;
    RunManifest manifest;
    std::ostringstream text;
    std::optional<RecordWriter> records;

    Session(Format f, const std::string& subcommand, json params) : format(f)
    {
        manifest.tool_version = kVersion;
        manifest.subcommand = subcommand;
        manifest.params = std::move(params);
        manifest.timestamp = utc_timestamp();
    }

    void add_input(const std::string& path)
    {
        manifest.inputs.emplace_back(path, hex64(fnv1a64(read_text_file(path))));
    }

    void start() { if (format != Format::Text) records.emplace(record_buffer, manifest); }
    void emit(const std::string& kind, json body) { if (records) records->emit(kind, std::move(body)); }

    void flush()
    {
        if (format != Format::Records) std::cout << text.str();
        if (format != Format::Text) std::cout << record_buffer.str();
        std::cout.flush();
    }

    std::ostringstream record_buffer;
};

Format parse_format(const std::string& s)
{
    if (s == "text") return Format::Text;
    if (s == "records") return Format::Records;
    if (s == "both") return Format::Both;
    throw ParseError("--format: expected text, records or both");
}

PivotStrategy parse_pivot(const std::string& s)
{
    if (s == "first") return PivotStrategy::FirstIndex;
    if (s == "last") return PivotStrategy::LastIndex;
    if (s == "largest") return PivotStrategy::LargestMagnitude;
    throw ParseError("--pivot: expected first, last or largest");
}

PolyMap load_polymap(Session& s, const std::string& path)
{
    s.add_input(path);
    Instance inst = read_instance_file(path);
    if (auto* p = std::get_if<PolyMap>(&inst)) return *p;
    throw ParseError(path + ": components: expected a PolyMap instance, found a Hermitian form");
}

void print_map(std::ostream& os, const std::string& name, const PolyMap& p)
{
    if (p.empty()) os << "  " << name << " = ()\n";
    for (std::size_t k = 0; k < p.size(); ++k) os << "  " << name << "[" << k + 1 << "] = " << format_polynomial(p[k]) << "\n";
}

std::string join(const std::vector<long>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::vector<long> parse_long_list(const std::string& text, const std::string& field)
{
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw ParseError(field + ": malformed integer '" + item + "'");
        out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------

int cmd_gaps(Session& s, long n, std::optional<long> max_n)
{
    const long hi = max_n.value_or(n);
    if (hi < n) throw OutOfRange("--max-n: must be at least --n");
    s.start();
    for (long m = n; m <= hi; ++m) {
        const GapTable t = make_gap_table(m);
        s.text << "n = " << m << ", kappa0 = " << t.kappa0 << ", D_n = " << t.d_max << "\n";
        s.text << "  " << std::setw(6) << "kappa" << std::setw(8) << "a" << std::setw(8) << "b" << "\n";
        for (std::size_t k = 0; k < t.intervals.size(); ++k) {
            const IntRange& r = t.intervals[k];
            s.text << "  " << std::setw(6) << k + 1 << std::setw(8) << r.a << std::setw(8) << r.b << "\n";
            s.emit("gap_row", {{"n", m}, {"kappa", k + 1}, {"a", r.a}, {"b", r.b}, {"d_max", t.d_max}, {"kappa0", t.kappa0}});
        }
    }
    return 0;
}

int cmd_classify(Session& s, long n, long r)
{
    const RankClass c = classify_rank(n, r);
    s.start();
    s.text << c.to_string() << "\n";
    json body = to_json(c);
    body["n"] = n;
    body["r"] = r;
    s.emit("classification", body);
    return 0;
}

int check_form(Session& s, const HermitianForm& h, PivotStrategy pivot)
{
    s.text << "instance: Hermitian form, n = " << h.dim() << "\n";
    s.text << "H = " << format_form(h) << "\n";
    auto res = is_sos(h, pivot);
    if (auto* cert = std::get_if<SosCertificate>(&res)) {
        s.text << "SOS: yes, rank " << cert->rank << "\n";
        for (std::size_t k = 0; k < cert->factor.size(); ++k)
            s.text << "  " << to_string(cert->weights[k]) << " * |" << format_polynomial(cert->factor[k]) << "|^2\n";
        json w = json::array();
        for (const auto& x : cert->weights) w.push_back(to_string(x));
        s.emit("sos_certificate", {{"sos", true}, {"rank", cert->rank}, {"weights", w}, {"Q", to_json(cert->factor)}});
    } else {
        const auto& bad = std::get<NotSos>(res);
        s.text << "SOS: no, witness value v^H G v = " << to_string(bad.value) << "\n";
        json v = json::array();
        for (const auto& x : bad.witness) v.push_back(to_json(x));
        s.emit("not_sos", {{"sos", false}, {"value", to_string(bad.value)}, {"witness", v}});
    }
    return 0;
}

int check_polymap(Session& s, const PolyMap& p, PivotStrategy pivot)
{
    const long n = static_cast<long>(p.dim());
    s.text << "instance: PolyMap, n = " << n << ", " << p.size() << " components\n";
    auto res = check_sos_identity(p);
    if (auto* nd = std::get_if<NotDivisible>(&res)) {
        s.text << "identity: fails, " << nd->describe() << "\n";
        s.emit("identity", {{"holds", false}, {"detail", nd->describe()}});
        return 0;
    }
    const HermitianForm& a = std::get<HermitianForm>(res);
    const long r = static_cast<long>(linear_rank(p).rank);
    const SignatureDecomposition sig = signature_decompose(a, pivot);
    const bool a_sos = std::holds_alternative<SosCertificate>(is_sos(a, pivot));
    s.text << "identity: ||P||^2 = A ||z||^2 holds\n";
    s.text << "A = " << format_form(a) << "\n";
    s.text << "linear rank r = " << r << "\n";
    s.text << "A is SOS: " << (a_sos ? "yes" : "no") << ", signature (" << sig.q_plus() << ", " << sig.q_minus() << ")\n";
    json body = {{"holds", true}, {"A", to_json(a)}, {"r", r}, {"a_sos", a_sos}, {"q_plus", sig.q_plus()}, {"q_minus", sig.q_minus()}};

    int status = 0;
    if (n >= 2) {
        const RankClass c = classify_rank(n, r);
        s.text << "classification: " << c.to_string() << "\n";
        body["classification"] = to_json(c);
        std::string verdict = "Consistent";
        if (c.tag == RankClass::Tag::Gap) {
            verdict = "CounterexampleCandidate (rank in a gap)";
        } else if (sig.q_minus() > 0 && r < rank_max_threshold(n)) {
            verdict = "CounterexampleCandidate (G != 0 below the maximal threshold)";
        }
        if (verdict != "Consistent") status = 2;
        s.text << "verdict: " << verdict << "\n";
        body["verdict"] = verdict;
    } else {
        s.text << "classification: n/a for n < 2\n";
    }
    s.emit("identity", body);
    return status;
}

int cmd_check_sos(Session& s, const std::string& path, PivotStrategy pivot)
{
    s.add_input(path);
    Instance inst = read_instance_file(path);
    s.start();
    if (auto* h = std::get_if<HermitianForm>(&inst)) return check_form(s, *h, pivot);
    return check_polymap(s, std::get<PolyMap>(inst), pivot);
}

int cmd_decompose(Session& s, const std::string& path, PivotStrategy pivot)
{
    s.add_input(path);
    Instance inst = read_instance_file(path);
    HermitianForm h;
    if (auto* p = std::get_if<PolyMap>(&inst)) {
        auto res = check_sos_identity(*p);
        if (auto* nd = std::get_if<NotDivisible>(&res))
            throw ParseError(path + ": components: ||P||^2 is not divisible by ||z||^2 (" + nd->describe() + ")");
        h = std::get<HermitianForm>(res);
    } else {
        h = std::get<HermitianForm>(inst);
    }
    s.start();
    const SignatureDecomposition sig = signature_decompose(h, pivot);
    const HermitianForm back = weighted_squared_norm(sig.F, sig.wplus) - weighted_squared_norm(sig.G, sig.wminus);
    s.text << "A = " << format_form(h) << "\n";
    s.text << "signature (q+, q-) = (" << sig.q_plus() << ", " << sig.q_minus() << ")\n";
    for (std::size_t k = 0; k < sig.F.size(); ++k)
        s.text << "  + " << to_string(sig.wplus[k]) << " * |" << format_polynomial(sig.F[k]) << "|^2\n";
    for (std::size_t k = 0; k < sig.G.size(); ++k)
        s.text << "  - " << to_string(sig.wminus[k]) << " * |" << format_polynomial(sig.G[k]) << "|^2\n";
    s.text << "reconstruction: " << (back == h ? "exact" : "MISMATCH") << "\n";
    json wp = json::array(), wm = json::array();
    for (const auto& x : sig.wplus) wp.push_back(to_string(x));
    for (const auto& x : sig.wminus) wm.push_back(to_string(x));
    s.emit("decomposition", {{"A", to_json(h)}, {"F", to_json(sig.F)}, {"wplus", wp}, {"G", to_json(sig.G)},
                             {"wminus", wm}, {"exact", back == h}});
    return back == h ? 0 : 2;
}

int cmd_tensor(Session& s, const std::string& f_path, const std::string& with_path, const std::string& minus_path)
{
    const PolyMap f = load_polymap(s, f_path);
    std::optional<PolyMap> h, g;
    if (!with_path.empty()) h = load_polymap(s, with_path);
    if (!minus_path.empty()) g = load_polymap(s, minus_path);
    if (h && h->dim() != f.dim()) throw DimensionMismatch("--with: n = " + std::to_string(h->dim()) + " differs from F");
    if (g && g->dim() != f.dim()) throw DimensionMismatch("--minus: n = " + std::to_string(g->dim()) + " differs from F");
    s.start();
    const PolyMap p = h ? tensor_product(f, *h) : tensor_with_z(f);
    const std::size_t rf = linear_rank(f).rank, rp = linear_rank(p).rank;
    s.text << (h ? "F (x) H" : "F (x) z") << ": " << p.size() << " components\n";
    print_map(s.text, "P", p);
    s.text << "rank F = " << rf << ", rank P = " << rp << "\n";
    json body = {{"P", to_json(p)}, {"rank_F", rf}, {"rank_P", rp}};
    if (g) {
        const SpecrkBounds b = specrk_bounds(f, *g);
        s.text << "certificate rank bounds for ||F||^2 - ||G||^2 times ||z||^2: [" << b.lower << ", " << b.upper << "]\n";
        body["specrk_lower"] = b.lower;
        body["specrk_upper"] = b.upper;
    }
    s.emit("tensor", body);
    return 0;
}

int cmd_degeneracy(Session& s, long n, const std::string& dims_text, std::optional<long> kappa, std::optional<long> codim,
                   bool sos_assumed)
{
    const DegeneracySequence seq(n, parse_long_list(dims_text, "--dims"));
    s.start();
    const KReport k = minimal_k_sequence(seq);
    s.text << "n = " << n << ", d = (" << join(seq.dims()) << "), l0 = " << seq.l0() << "\n";
    s.text << "increments: " << join(k.increments) << "\n";
    s.text << "k_l:        " << join(k.k_l) << "\n";
    s.text << "shifts m_l: " << join(k.shifts) << "\n";
    s.text << "k = " << k.k << "\n";
    s.emit("k_report", {{"n", n}, {"dims", seq.dims()}, {"increments", k.increments}, {"k_l", k.k_l}, {"shifts", k.shifts}, {"k", k.k}});

    int status = 0;
    auto print_claim = [&](const KClaimReport& c) {
        s.text << "claim for kappa = " << c.kappa << ": d = " << c.d << " <= " << c.dest_bound << "\n";
        s.text << "  telescoped sum " << c.telescoped << (c.telescoping_ok ? " (ok)" : " (FAILED)") << "\n";
        s.text << "  minimality sum " << c.unshifted_sum << (c.minimality_ok ? " (ok)" : " (FAILED)") << "\n";
        s.text << "  shifted sum    " << c.shifted_sum << (c.shift_ok ? " (ok)" : " (FAILED)") << "\n";
        s.text << "  final sum      " << c.final_sum << (c.final_ok ? " (ok)" : " (FAILED)") << "\n";
        s.text << "  k <= kappa - 1: " << (c.claim_holds ? "holds" : "FAILS") << "\n";
        if (!c.claim_holds) status = 2;
        s.emit("k_claim", {{"kappa", c.kappa}, {"d", c.d}, {"dest_bound", c.dest_bound}, {"telescoped", c.telescoped},
                           {"unshifted_sum", c.unshifted_sum}, {"shifted_sum", c.shifted_sum}, {"final_sum", c.final_sum},
                           {"telescoping_ok", c.telescoping_ok}, {"minimality_ok", c.minimality_ok}, {"shift_ok", c.shift_ok},
                           {"final_ok", c.final_ok}, {"claim_holds", c.claim_holds}});
    };
    if (kappa) print_claim(verify_k_claim(seq, *kappa));
    if (codim) {
        const TheoremReplay t = replay_main_theorem(n, n + *codim, seq, sos_assumed);
        s.text << "theorem replay: N - n = " << t.codim << " in gap kappa = " << t.kappa << "\n";
        s.text << "  SOS consequence d <= " << t.sos_bound << ": " << (t.sos_consequence_holds ? "holds" : "fails")
               << (t.sos_assumed ? " (assumed)" : "") << "\n";
        if (!kappa) print_claim(t.claim);
        s.text << "  affine subspace dimension n + d + k + 1 = " << t.affine_dim << "\n";
        s.text << "  N0 - n = " << t.flat_codim << " <= " << t.bound << ": " << (t.conclusion_holds ? "holds" : "FAILS") << "\n";
        if (!t.conclusion_holds) status = 2;
        s.emit("theorem_replay", {{"n", t.n}, {"codim", t.codim}, {"kappa", t.kappa}, {"d", t.d}, {"sos_bound", t.sos_bound},
                                  {"sos_assumed", t.sos_assumed}, {"sos_consequence_holds", t.sos_consequence_holds},
                                  {"n0", t.n0}, {"affine_dim", t.affine_dim}, {"flat_codim", t.flat_codim},
                                  {"bound", t.bound}, {"conclusion_holds", t.conclusion_holds}});
    }
    return status;
}

int cmd_map_verify(Session& s, const std::string& path)
{
    const BallMap f(load_polymap(s, path));
    s.start();
    auto res = is_proper_ball_map(f);
    s.text << "map S^" << f.source_cr_dim() << " -> S^" << f.target_cr_dim() << "\n";
    if (auto* cert = std::get_if<ProperCertificate>(&res)) {
        s.text << "proper: yes, ||f||^2 - 1 = q (||z||^2 - 1) with q = " << format_form(cert->quotient) << "\n";
        s.emit("proper", {{"proper", true}, {"quotient", to_json(cert->quotient)}});
        return 0;
    }
    const auto& bad = std::get<NotProper>(res);
    s.text << "proper: no, ||f||^2 = " << to_string(bad.norm_squared) << " at a point of the unit sphere\n";
    json pt = json::array();
    for (const auto& x : bad.point) pt.push_back(to_json(x));
    s.emit("proper", {{"proper", false}, {"point", pt}, {"norm_squared", to_string(bad.norm_squared)}});
    return 1;
}

int cmd_map_report(Session& s, const std::string& path, std::uint64_t seed)
{
    const BallMap f(load_polymap(s, path));
    s.start();
    const GapConclusionReport r = check_gap_conclusion(f, seed);
    s.text << "map S^" << r.n << " -> S^" << r.big_n << ", codimension " << r.codim << "\n";
    s.text << "affine hull dimension of the image: " << r.affine_dim << " (" << r.evaluation_points << " sphere points)\n";
    s.text << "N0 = " << r.n0 << "\n";
    if (r.kappa) s.text << "gap kappa = " << *r.kappa << ", bound N0 - n <= " << *r.bound << "\n";
    s.text << "status: " << r.status << "\n";
    json body = {{"n", r.n}, {"N", r.big_n}, {"codim", r.codim}, {"affine_dim", r.affine_dim}, {"n0", r.n0},
                 {"evaluation_points", r.evaluation_points}, {"status", r.status}};
    if (r.kappa) {
        body["kappa"] = *r.kappa;
        body["bound"] = *r.bound;
    }
    s.emit("gap_conclusion", body);
    return r.consistent ? 0 : 2;
}

int cmd_map_generate(Session& s, const std::string& kind, long n, std::optional<long> big_n)
{
    BallMap f = [&] {
        if (kind == "identity") return identity_map(n);
        if (kind == "linear") return standard_linear_embedding(n, big_n.value_or(n));
        if (kind == "whitney") return whitney_map(n);
        throw ParseError("--kind: expected identity, linear or whitney");
    }();
    if (big_n && kind != "linear") f = pad_zeros(f, *big_n);
    std::cout << to_json(f.map()).dump(2) << "\n";
    (void)s;
    return 0;
}

struct SearchOptions {
    std::string target = "sos";
    long n = 2;
    int degree = 2;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    bool exhaustive = false;
    std::string coeffs = "0,1,-1,i,-i";
    std::size_t max_components = 2;
    bool show = false;
};

int cmd_search(Session& s, const SearchOptions& o)
{
    SearchConfig c;
    c.n = o.n;
    c.max_degree = o.degree;
    c.target = parse_search_target(o.target);
    c.seed = o.seed;
    c.trials = o.trials;
    if (o.exhaustive) {
        c.mode = SearchMode::Exhaustive;
        c.coefficient_set = parse_gaussian_list(o.coeffs);
        c.max_components = o.max_components;
    }
    s.start();
    const SearchResult res = o.exhaustive ? exhaustive_scan(c) : falsify(c);
    const SearchStatistics& st = res.stats;
    s.text << "search target " << to_string(c.target) << ", " << to_string(c.mode) << ", n = " << c.n << ", degree <= " << c.max_degree;
    if (o.exhaustive)
        s.text << ", coefficients {" << o.coeffs << "}, <= " << c.max_components << " components\n";
    else
        s.text << ", " << c.trials << " trials, seed " << c.seed << "\n";
    s.text << "instances " << st.instances << ", prefiltered " << st.prefiltered << ", identity fails " << st.identity_failed
           << ", identity holds " << st.identity_holds << "\n";
    s.text << "elapsed " << std::fixed << std::setprecision(2) << st.elapsed_seconds << " s\n" << std::defaultfloat;
    s.text << "with G != 0: " << st.with_negative_part << ", candidates: " << st.candidates << ", discrepancies: " << st.discrepancies << "\n";
    s.text << "rank histogram:";
    for (const auto& [r, count] : st.rank_histogram) s.text << " " << r << ":" << count;
    s.text << "\nclass histogram:";
    for (const auto& [k, count] : st.class_histogram) s.text << " " << k << ":" << count;
    s.text << "\n";
    if (o.show)
        for (const auto& rep : res.reports)
            s.text << "  " << rep.id << "  r = " << rep.r << "  " << rep.classification.to_string() << "  " << to_string(rep.verdict) << "\n";
    for (const auto& rep : res.reports) s.emit("instance", to_json(rep));
    s.emit("statistics", to_json(st));
    if (res.counterexample) {
        s.text << "COUNTEREXAMPLE CANDIDATE " << res.counterexample->id << ": " << res.counterexample->reason << "\n";
        print_map(s.text, "P", res.counterexample->P);
        s.emit("counterexample", to_json(*res.counterexample));
        return 2;
    }
    s.text << "no counterexample candidate\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact Hermitian sums of squares, rank gaps and sphere maps"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    std::string format_name = "text";
    app.add_option("--format", format_name, "text, records or both")->check(CLI::IsMember({"text", "records", "both"}));

    std::function<int(Format)> run;
    auto pivot_option = [](CLI::App* sub, std::string& pivot) {
        sub->add_option("--pivot", pivot, "first, last or largest")->check(CLI::IsMember({"first", "last", "largest"}));
    };

    long gaps_n = 2;
    std::optional<long> gaps_max;
    auto* gaps = app.add_subcommand("gaps", "gap intervals, kappa0 and D_n");
    gaps->add_option("--n", gaps_n)->required();
    gaps->add_option("--max-n", gaps_max);
    gaps->callback([&] {
        run = [&](Format f) {
            Session s(f, "gaps", {{"n", gaps_n}, {"max_n", gaps_max ? json(*gaps_max) : json(nullptr)}});
            int rc = cmd_gaps(s, gaps_n, gaps_max);
            s.flush();
            return rc;
        };
    });

    long cl_n = 2, cl_r = 0;
    auto* classify = app.add_subcommand("classify", "classify a rank r for dimension n");
    classify->add_option("--n", cl_n)->required();
    classify->add_option("--r", cl_r)->required();
    classify->callback([&] {
        run = [&](Format f) {
            Session s(f, "classify", {{"n", cl_n}, {"r", cl_r}});
            int rc = cmd_classify(s, cl_n, cl_r);
            s.flush();
            return rc;
        };
    });

    std::string file, pivot = "first";
    auto* check = app.add_subcommand("check-sos", "SOS identity and classification of a PolyMap, or SOS test of a form");
    check->add_option("file", file)->required();
    pivot_option(check, pivot);
    check->callback([&] {
        run = [&](Format f) {
            Session s(f, "check-sos", {{"file", file}, {"pivot", pivot}});
            int rc = cmd_check_sos(s, file, parse_pivot(pivot));
            s.flush();
            return rc;
        };
    });

    auto* decompose = app.add_subcommand("decompose", "difference-of-squares decomposition");
    decompose->add_option("file", file)->required();
    pivot_option(decompose, pivot);
    decompose->callback([&] {
        run = [&](Format f) {
            Session s(f, "decompose", {{"file", file}, {"pivot", pivot}});
            int rc = cmd_decompose(s, file, parse_pivot(pivot));
            s.flush();
            return rc;
        };
    });

    std::string with_file, minus_file;
    auto* tensor = app.add_subcommand("tensor", "tensor products and rank bounds");
    tensor->add_option("file", file)->required();
    tensor->add_option("--with", with_file, "second factor (default: coordinates z)");
    tensor->add_option("--minus", minus_file, "G for certificate rank bounds of ||F||^2 - ||G||^2");
    tensor->callback([&] {
        run = [&](Format f) {
            Session s(f, "tensor", {{"file", file}, {"with", with_file}, {"minus", minus_file}});
            int rc = cmd_tensor(s, file, with_file, minus_file);
            s.flush();
            return rc;
        };
    });

    long dg_n = 2;
    std::string dims;
    std::optional<long> dg_kappa, dg_codim;
    bool no_sos = false;
    auto* degeneracy = app.add_subcommand("degeneracy", "k_l, k, shifts and theorem replay for a degeneracy sequence");
    degeneracy->add_option("--n", dg_n)->required();
    degeneracy->add_option("--dims", dims, "comma-separated d_1, ..., d_l0")->required();
    degeneracy->add_option("--kappa", dg_kappa);
    degeneracy->add_option("--codim", dg_codim, "N - n for the theorem replay");
    degeneracy->add_flag("--no-sos", no_sos, "do not assume the SOS consequence in the replay");
    degeneracy->callback([&] {
        run = [&](Format f) {
            Session s(f, "degeneracy", {{"n", dg_n}, {"dims", dims}, {"kappa", dg_kappa ? json(*dg_kappa) : json(nullptr)},
                                        {"codim", dg_codim ? json(*dg_codim) : json(nullptr)}, {"sos_assumed", !no_sos}});
            int rc = cmd_degeneracy(s, dg_n, dims, dg_kappa, dg_codim, !no_sos);
            s.flush();
            return rc;
        };
    });

    std::uint64_t map_seed = kDefaultSphereSeed;
    std::string kind = "whitney";
    long gen_n = 1;
    std::optional<long> gen_big_n;
    auto* map = app.add_subcommand("map", "proper ball maps");
    map->require_subcommand(1);
    auto* verify = map->add_subcommand("verify", "certify ||f||^2 - 1 = q (||z||^2 - 1)");
    verify->add_option("file", file)->required();
    verify->callback([&] {
        run = [&](Format f) {
            Session s(f, "map verify", {{"file", file}});
            int rc = cmd_map_verify(s, file);
            s.flush();
            return rc;
        };
    });
    auto* report = map->add_subcommand("report", "affine hull dimension and gap conclusion");
    report->add_option("file", file)->required();
    report->add_option("--seed", map_seed);
    report->callback([&] {
        run = [&](Format f) {
            Session s(f, "map report", {{"file", file}, {"seed", map_seed}});
            int rc = cmd_map_report(s, file, map_seed);
            s.flush();
            return rc;
        };
    });
    auto* generate = map->add_subcommand("generate", "write a standard map as an instance file");
    generate->add_option("--kind", kind)->check(CLI::IsMember({"identity", "linear", "whitney"}));
    generate->add_option("--n", gen_n)->required();
    generate->add_option("--N", gen_big_n, "target dimension (zero padding)");
    generate->callback([&] {
        run = [&](Format f) {
            Session s(f, "map generate", json::object());
            return cmd_map_generate(s, kind, gen_n, gen_big_n);
        };
    });

    SearchOptions so;
    auto* search = app.add_subcommand("search", "falsification search");
    search->add_option("--target", so.target, "sos, weak-sos, huang or gh-band");
    search->add_option("--n", so.n);
    search->add_option("--degree", so.degree);
    search->add_option("--trials", so.trials);
    search->add_option("--seed", so.seed);
    search->add_flag("--exhaustive", so.exhaustive);
    search->add_option("--coeffs", so.coeffs, "comma-separated Gaussian rationals (exhaustive mode)");
    search->add_option("--max-components", so.max_components);
    search->add_flag("--show", so.show, "list every identity-satisfying instance");
    search->callback([&] {
        run = [&](Format f) {
            json params = {{"target", so.target}, {"n", so.n}, {"degree", so.degree}, {"seed", so.seed},
                           {"exhaustive", so.exhaustive}};
            if (so.exhaustive) {
                params["coeffs"] = so.coeffs;
                params["max_components"] = so.max_components;
            } else {
                params["trials"] = so.trials;
            }
            Session s(f, "search", params);
            int rc = cmd_search(s, so);
            s.flush();
            return rc;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const auto rest = app.remaining();
        if (app.get_subcommands().empty() && !rest.empty())
            std::cerr << "error: unknown subcommand '" << rest.front() << "'\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    try {
        return run(parse_format(format_name));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
