#include "support.hpp"

#include "sosgap/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace sosgap;
using namespace testing_support;

namespace {

std::string parse_error(const std::string& text)
{
    try {
        instance_from_json(json::parse(text));
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("polymap files round-trip")
{
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const PolyMap p = polymap(rng, 1 + trial % 3, 2, trial % 4);
        const json j = to_json(p);
        CHECK(polymap_from_json(j) == p);
        CHECK(polymap_from_json(json::parse(j.dump())) == p);
    }
}

TEST_CASE("form files round-trip and the writer stays canonical")
{
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 30; ++trial) {
        const HermitianForm h = form(rng, 1 + trial % 3, 2);
        const json j = to_json(h);
        CHECK(form_from_json(j) == h);
        for (const auto& t : j["terms"]) CHECK(ExponentVector(t["a"].get<std::vector<int>>()) <= ExponentVector(t["b"].get<std::vector<int>>()));
    }
}

TEST_CASE("instance parsing accepts either order of a pair and a missing im")
{
    const auto inst = instance_from_json(json::parse(R"({"n":2,"terms":[{"a":[0,1],"b":[1,0],"re":"1","im":"2"}]})"));
    REQUIRE(std::holds_alternative<HermitianForm>(inst));
    const auto& h = std::get<HermitianForm>(inst);
    CHECK(h.coefficient(ExponentVector{0, 1}, ExponentVector{1, 0}) == GaussianRational(Rational(1), Rational(2)));
    const auto p = instance_from_json(json::parse(R"({"n":1,"components":[[{"e":[2],"re":"-3/6"}]]})"));
    REQUIRE(std::holds_alternative<PolyMap>(p));
    CHECK(std::get<PolyMap>(p)[0].coefficient(ExponentVector{2}) == GaussianRational(Rational(-1, 2)));
}

TEST_CASE("malformed instances name the offending field")
{
    CHECK(parse_error(R"({"n":2,"components":[[{"e":[1,0,0],"re":"1"}]]})").find("components[0][0].e") != std::string::npos);
    CHECK(parse_error(R"({"n":2,"components":[[{"e":[1,0],"re":"1.5"}]]})").find("components[0][0].re") != std::string::npos);
    CHECK(parse_error(R"({"n":2,"components":[[{"e":[1,0],"re":"1","im":"2/0"}]]})").find(".im") != std::string::npos);
    CHECK(parse_error(R"({"n":2,"components":[[{"e":[1,-1],"re":"1"}]]})").find("components[0][0].e[1]") != std::string::npos);
    CHECK(parse_error(R"({"n":2,"components":[[{"e":[1,0],"re":1}]]})").find("re") != std::string::npos);
    CHECK(parse_error(R"({"n":2,"components":[[{"e":[1,0],"re":"1"},{"e":[1,0],"re":"2"}]]})").find("duplicate") != std::string::npos);
    CHECK(parse_error(R"({"components":[]})").find("n") != std::string::npos);
    CHECK(parse_error(R"({"n":0,"components":[]})").find("n") != std::string::npos);
    CHECK(parse_error(R"({"n":2})").find("components") != std::string::npos);
    CHECK(parse_error(R"({"n":2,"terms":[{"a":[1,0],"b":[1,0],"re":"1","im":"1"}]})").find("terms[0].im") != std::string::npos);
    CHECK(parse_error(R"({"n":2,"terms":[{"a":[1,0],"b":[0,1],"re":"1"},{"a":[0,1],"b":[1,0],"re":"1"}]})").find("duplicate") !=
          std::string::npos);
    CHECK(parse_error(R"({"n":2,"terms":[{"a":[1,0],"re":"1"}]})").find("terms[0].b") != std::string::npos);
}

TEST_CASE("gaussian literals")
{
    CHECK(parse_gaussian("3") == GaussianRational(3));
    CHECK(parse_gaussian("-1/2") == GaussianRational(Rational(-1, 2)));
    CHECK(parse_gaussian("i") == GaussianRational::i());
    CHECK(parse_gaussian("-i") == -GaussianRational::i());
    CHECK(parse_gaussian("-2i") == GaussianRational(Rational(0), Rational(-2)));
    CHECK(parse_gaussian("1+i") == GaussianRational(Rational(1), Rational(1)));
    CHECK(parse_gaussian("1/2-3/4i") == GaussianRational(Rational(1, 2), Rational(-3, 4)));
    CHECK(parse_gaussian_list("0, 1,-1, i ,-i").size() == 5);
    for (const char* bad : {"", "x", "1+", "ii", "1.5i", "1/0"}) CHECK_THROWS_AS(parse_gaussian(bad), ParseError);
}

TEST_CASE("fnv1a64 reference values")
{
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("records re-serialize idempotently and embed the run")
{
    RunManifest m;
    m.tool_version = "t";
    m.subcommand = "gaps";
    m.params = {{"n", 7}};
    m.timestamp = "2000-01-01T00:00:00Z";
    std::ostringstream out;
    RecordWriter w(out, m);
    std::mt19937_64 rng(63);
    w.emit("form", to_json(form(rng, 2, 2)));
    w.emit("map", to_json(polymap(rng, 2, 2, 2)));
    std::istringstream in(out.str());
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        const json j = json::parse(line);
        CHECK(serialize_record(j) == line);
        CHECK(j["run"] == m.run_id());
        ++lines;
    }
    CHECK(lines == 3);
    RunManifest later = m;
    later.timestamp = "2001-01-01T00:00:00Z";
    CHECK(later.run_id() == m.run_id());
    CHECK(RunManifest::from_json(m.to_json()).to_json() == m.to_json());
}

TEST_CASE("human-readable formatting")
{
    const std::size_t n = 2;
    const Polynomial p = Polynomial::variable(n, 0) * GaussianRational(Rational(1), Rational(1)) - Polynomial::monomial(ExponentVector{0, 2});
    CHECK(format_polynomial(p) == "(1+i)*z1 - z2^2");
    CHECK(format_polynomial(Polynomial(n)) == "0");
    HermitianForm h(n);
    h.add(ExponentVector{1, 0}, ExponentVector{1, 0}, 1);
    CHECK(format_form(h) == "z1*zb1");
}
