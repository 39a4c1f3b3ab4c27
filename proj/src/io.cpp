#include "sosgap/io.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace sosgap {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what)
{
    throw ParseError(field + ": " + what);
}

const json& require(const json& j, const std::string& key, const std::string& where)
{
    if (!j.is_object()) fail(where.empty() ? "document" : where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where.empty() ? key : where + "." + key, "missing field");
    return *it;
}

Rational rational_field(const json& j, const std::string& field)
{
    if (!j.is_string()) fail(field, "expected a rational string such as \"-3/4\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        fail(field, e.what());
    }
}

GaussianRational coefficient_field(const json& term, const std::string& where)
{
    const Rational re = rational_field(require(term, "re", where), where + ".re");
    Rational im(0);
    if (term.contains("im")) im = rational_field(term["im"], where + ".im");
    return {re, im};
}

ExponentVector exponent_field(const json& j, std::size_t n, const std::string& field)
{
    if (!j.is_array()) fail(field, "expected an array of " + std::to_string(n) + " exponents");
    if (j.size() != n) fail(field, "expected " + std::to_string(n) + " exponents, got " + std::to_string(j.size()));
    std::vector<int> e;
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_number_integer() || j[i].get<long long>() < 0 || j[i].get<long long>() > 1000000)
            fail(field + "[" + std::to_string(i) + "]", "expected a nonnegative integer");
        e.push_back(j[i].get<int>());
    }
    return ExponentVector(std::move(e));
}

std::size_t dimension_field(const json& j)
{
    const json& n = require(j, "n", "");
    if (!n.is_number_integer() || n.get<long long>() < 1 || n.get<long long>() > 10000) fail("n", "expected a positive integer");
    return n.get<std::size_t>();
}

} // namespace

json to_json(const GaussianRational& c)
{
    return {{"re", to_string(c.re())}, {"im", to_string(c.im())}};
}

json to_json(const ExponentVector& e)
{
    return e.values();
}

json to_json(const PolyMap& p)
{
    json comps = json::array();
    for (const auto& c : p.components()) {
        json terms = json::array();
        for (const auto& [e, v] : c.terms()) {
            json t = to_json(v);
            t["e"] = to_json(e);
            terms.push_back(std::move(t));
        }
        comps.push_back(std::move(terms));
    }
    return {{"n", p.dim()}, {"components", std::move(comps)}};
}

json to_json(const HermitianForm& h)
{
    json terms = json::array();
    for (const auto& [k, v] : h.terms()) {
        json t = to_json(v);
        t["a"] = to_json(k.first);
        t["b"] = to_json(k.second);
        terms.push_back(std::move(t));
    }
    return {{"n", h.dim()}, {"terms", std::move(terms)}};
}

PolyMap polymap_from_json(const json& j)
{
    const std::size_t n = dimension_field(j);
    const json& comps = require(j, "components", "");
    if (!comps.is_array()) fail("components", "expected a list of term lists");
    PolyMap p(n);
    for (std::size_t k = 0; k < comps.size(); ++k) {
        const std::string where = "components[" + std::to_string(k) + "]";
        if (!comps[k].is_array()) fail(where, "expected a list of terms");
        Polynomial poly(n);
        std::set<ExponentVector> seen;
        for (std::size_t t = 0; t < comps[k].size(); ++t) {
            const std::string tw = where + "[" + std::to_string(t) + "]";
            const ExponentVector e = exponent_field(require(comps[k][t], "e", tw), n, tw + ".e");
            if (!seen.insert(e).second) fail(tw + ".e", "duplicate exponent vector");
            poly.add_term(e, coefficient_field(comps[k][t], tw));
        }
        p.push_back(std::move(poly));
    }
    return p;
}

HermitianForm form_from_json(const json& j)
{
    const std::size_t n = dimension_field(j);
    const json& terms = require(j, "terms", "");
    if (!terms.is_array()) fail("terms", "expected a list of terms");
    HermitianForm h(n);
    std::set<HermitianForm::Key> seen;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string tw = "terms[" + std::to_string(t) + "]";
        ExponentVector a = exponent_field(require(terms[t], "a", tw), n, tw + ".a");
        ExponentVector b = exponent_field(require(terms[t], "b", tw), n, tw + ".b");
        const GaussianRational c = coefficient_field(terms[t], tw);
        if (a == b && !c.is_real()) fail(tw + ".im", "diagonal coefficient must be real");
        HermitianForm::Key key = a <= b ? HermitianForm::Key{a, b} : HermitianForm::Key{b, a};
        if (!seen.insert(key).second) fail(tw, "duplicate (a, b) pair");
        h.add(a, b, c);
    }
    return h;
}

Instance instance_from_json(const json& j)
{
    if (!j.is_object()) fail("document", "expected an object");
    if (j.contains("components") && j.contains("terms")) fail("document", "both \"components\" and \"terms\" present");
    if (j.contains("components")) return polymap_from_json(j);
    if (j.contains("terms")) return form_from_json(j);
    fail("components", "missing field (or \"terms\" for a Hermitian form)");
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Instance read_instance_file(const std::string& path)
{
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": malformed document (" + std::string(e.what()) + ")");
    }
    try {
        return instance_from_json(j);
    } catch (const Error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::uint64_t fnv1a64(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json RunManifest::to_json() const
{
    json in = json::array();
    for (const auto& [path, digest] : inputs) in.push_back({{"path", path}, {"fnv1a64", digest}});
    return {{"tool_version", tool_version}, {"subcommand", subcommand}, {"params", params},
            {"inputs", std::move(in)}, {"timestamp", timestamp}};
}

std::string RunManifest::run_id() const
{
    json j = to_json();
    j.erase("timestamp");
    return hex64(fnv1a64(j.dump()));
}

RunManifest RunManifest::from_json(const json& j)
{
    RunManifest m;
    m.tool_version = require(j, "tool_version", "manifest").get<std::string>();
    m.subcommand = require(j, "subcommand", "manifest").get<std::string>();
    m.params = require(j, "params", "manifest");
    for (const auto& in : require(j, "inputs", "manifest"))
        m.inputs.emplace_back(in.at("path").get<std::string>(), in.at("fnv1a64").get<std::string>());
    m.timestamp = j.value("timestamp", "");
    return m;
}

std::string serialize_record(const json& j)
{
    return j.dump();
}

RecordWriter::RecordWriter(std::ostream& out, const RunManifest& manifest) : out_(out), run_(manifest.run_id())
{
    json m = manifest.to_json();
    m["record"] = "manifest";
    m["run"] = run_;
    out_ << serialize_record(m) << '\n';
}

void RecordWriter::emit(const std::string& kind, json body)
{
    body["record"] = kind;
    body["run"] = run_;
    out_ << serialize_record(body) << '\n';
}

GaussianRational parse_gaussian(const std::string& text)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ParseError("empty Gaussian rational literal");
    if (t.back() != 'i') return GaussianRational(parse_rational(t));
    // Split "a+bi" at the last sign that is not the leading one.
    const std::string body = t.substr(0, t.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    const std::string re = split == std::string::npos ? "0" : body.substr(0, split);
    std::string im = split == std::string::npos ? body : body.substr(split);
    if (!im.empty() && im[0] == '+') im.erase(0, 1);
    if (im.empty()) im = "1";
    if (im == "-") im = "-1";
    try {
        return {parse_rational(re), parse_rational(im)};
    } catch (const ParseError&) {
        throw ParseError("malformed Gaussian rational '" + text + "'");
    }
}

std::vector<GaussianRational> parse_gaussian_list(const std::string& text)
{
    std::vector<GaussianRational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_gaussian(item));
    return out;
}

namespace {

std::string monomial_text(const ExponentVector& e, const char* var)
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += var + std::to_string(i + 1);
        if (e[i] > 1) s += '^' + std::to_string(e[i]);
    }
    return s;
}

std::string join_terms(const std::vector<std::pair<GaussianRational, std::string>>& terms)
{
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [c, mono] : terms) {
        std::string coef = to_string(c);
        const bool compound = !c.is_real() && sgn(c.re()) != 0;
        if (compound) coef = "(" + coef + ")";
        if (!out.empty()) {
            if (coef[0] == '-') {
                out += " - ";
                coef.erase(0, 1);
            } else {
                out += " + ";
            }
        }
        if (mono.empty())
            out += coef;
        else if (coef == "1")
            out += mono;
        else if (coef == "-1")
            out += "-" + mono;
        else
            out += coef + "*" + mono;
    }
    return out;
}

} // namespace

std::string format_polynomial(const Polynomial& p)
{
    std::vector<std::pair<GaussianRational, std::string>> terms;
    for (const auto& [e, c] : p.terms()) terms.emplace_back(c, monomial_text(e, "z"));
    return join_terms(terms);
}

std::string format_form(const HermitianForm& h)
{
    std::vector<std::pair<GaussianRational, std::string>> terms;
    for (const auto& [k, c] : h.full_terms()) {
        std::string a = monomial_text(k.first, "z"), b = monomial_text(k.second, "zb");
        terms.emplace_back(c, a.empty() ? b : (b.empty() ? a : a + "*" + b));
    }
    return join_terms(terms);
}

json to_json(const RankClass& c)
{
    json j = {{"class", c.to_string()}, {"above_max", c.above_max}};
    if (c.tag == RankClass::Tag::Band) j["kappa"] = c.kappa;
    return j;
}

json to_json(const InstanceReport& r)
{
    json j = {{"index", r.index},
              {"id", r.id},
              {"P", to_json(r.P)},
              {"identity_holds", r.identity_holds},
              {"verdict", to_string(r.verdict)},
              {"reason", r.reason}};
    if (r.kappa_f) j["kappa_f"] = *r.kappa_f;
    if (r.identity_holds) {
        j["A"] = to_json(r.A);
        j["F"] = to_json(r.F);
        j["G"] = to_json(r.G);
        j["r"] = r.r;
        j["classification"] = to_json(r.classification);
    }
    return j;
}

json to_json(const SearchStatistics& s)
{
    json classes = json::object();
    for (const auto& [k, v] : s.class_histogram) classes[k] = v;
    json ranks = json::object();
    for (const auto& [k, v] : s.rank_histogram) ranks[std::to_string(k)] = v;
    return {{"instances", s.instances},
            {"prefiltered", s.prefiltered},
            {"identity_failed", s.identity_failed},
            {"identity_holds", s.identity_holds},
            {"with_negative_part", s.with_negative_part},
            {"candidates", s.candidates},
            {"discrepancies", s.discrepancies},
            {"class_histogram", std::move(classes)},
            {"rank_histogram", std::move(ranks)}};
}

} // namespace sosgap
