#pragma once

#include "sosgap/hermitian.hpp"
#include "sosgap/polynomial.hpp"
#include "sosgap/search.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace sosgap {

using json = nlohmann::json;

// Instance files
//   PolyMap:       {"n": 2, "components": [[{"e": [1, 0], "re": "1", "im": "0"}, ...], ...]}
//   HermitianForm: {"n": 2, "terms": [{"a": [1, 0], "b": [0, 1], "re": "1/2", "im": "0"}, ...]}
// "im" may be omitted and defaults to 0.

json to_json(const GaussianRational& c);
json to_json(const ExponentVector& e);
json to_json(const PolyMap& p);
json to_json(const HermitianForm& h);

PolyMap polymap_from_json(const json& j);
/// Rejects duplicate (a, b) pairs, including a pair given in both orders, and non-real diagonals.
HermitianForm form_from_json(const json& j);

using Instance = std::variant<PolyMap, HermitianForm>;

/// Parses either file kind; "components" selects PolyMap, "terms" selects HermitianForm.
Instance instance_from_json(const json& j);
Instance read_instance_file(const std::string& path);
std::string read_text_file(const std::string& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

struct RunManifest {
    std::string tool_version;
    std::string subcommand;
    json params = json::object();
    std::vector<std::pair<std::string, std::string>> inputs;  // path, fnv1a64 digest of the contents
    std::string timestamp;                                    // UTC, ISO 8601

    /// Digest of the manifest without its timestamp; records of the run carry it as "run".
    std::string run_id() const;
    json to_json() const;
    static RunManifest from_json(const json& j);
};

std::string utc_timestamp();

/// Line-delimited records: the manifest first, then one object per record, each tagged with the run id.
class RecordWriter {
public:
    RecordWriter(std::ostream& out, const RunManifest& manifest);
    void emit(const std::string& kind, json body);

private:
    std::ostream& out_;
    std::string run_;
};

/// Canonical single-line serialization (sorted keys); parse + serialize is idempotent.
std::string serialize_record(const json& j);

/// Gaussian rational literal: "3", "-1/2", "i", "-2i", "1+i", "1/2-3/4i".
GaussianRational parse_gaussian(const std::string& text);
/// Comma-separated list of Gaussian rational literals.
std::vector<GaussianRational> parse_gaussian_list(const std::string& text);

/// Human-readable forms; zb_i stands for conj(z_i).
std::string format_polynomial(const Polynomial& p);
std::string format_form(const HermitianForm& h);

json to_json(const RankClass& c);
json to_json(const InstanceReport& r);
json to_json(const SearchStatistics& s);

} // namespace sosgap
