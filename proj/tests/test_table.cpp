#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "born/table.hpp"

using namespace born::table;

namespace {

// Minimal RFC 4180 reader for the round-trip check.
std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(field);
            field.clear();
        } else if (c == '\n') {
            row.push_back(field);
            field.clear();
            out.push_back(row);
            row.clear();
        } else {
            field += c;
        }
    }
    return out;
}

ResultTable sample() {
    ResultTable t({"n", "value", "odd,name"});
    t.set_meta("command", std::string("demo \"x\""));
    t.set_meta("epsilon", 0.1);
    t.set_meta("count", 3LL);
    t.add_row({0LL, 0.1, 1.0 / 3.0});
    t.add_row({1LL, {}, -2.5e-300});
    t.add_row({2LL, std::nan(""), 1e300});
    return t;
}

}  // namespace

TEST_CASE("Numbers print with 17 significant digits and round trip") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1e-300) == "1e-300");
    CHECK(format_number(2.0 / 3.0) == "0.66666666666666663");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
    for (double v : {1.0 / 3.0, 2.0 / 7.0, 6.02214076e23, 1.5e-310}) CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
}

TEST_CASE("Rows must match the header arity") {
    ResultTable t({"a", "b"});
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
    t.add_row({1.0, 2LL});
    CHECK(t.rows().size() == 1);
    CHECK(t.column("b") == 1);
    CHECK_THROWS_AS(t.column("c"), std::out_of_range);
}

TEST_CASE("Metadata keeps insertion order and replaces in place") {
    ResultTable t({"a"});
    t.set_meta("x", 1.0);
    t.set_meta("y", std::string("s"));
    t.set_meta("x", 2.0);
    REQUIRE(t.metadata().size() == 2);
    CHECK(t.metadata()[0].first == "x");
    CHECK(std::get<double>(*t.find_meta("x")) == 2.0);
    CHECK(t.find_meta("z") == nullptr);
}

TEST_CASE("CSV layout and round trip") {
    const std::string text = render(sample(), Format::csv);
    CHECK(text.rfind("# command=demo \"x\"\n# epsilon=0.10000000000000001\n# count=3\n", 0) == 0);
    std::string body;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (line.empty() || line[0] != '#') body += line + "\n";
    const auto rows = read_csv(body);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"n", "value", "odd,name"});
    CHECK(std::stod(rows[1][2]) == 1.0 / 3.0);
    CHECK(rows[2][1].empty());
    CHECK(std::strtod(rows[2][2].c_str(), nullptr) == -2.5e-300);
    CHECK(rows[3][1] == "nan");
}

TEST_CASE("JSON document parses and round trips") {
    const std::string text = render(sample(), Format::json);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["columns"] == nlohmann::json({"n", "value", "odd,name"}));
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0][0] == 0);
    CHECK(j["rows"][0][2].get<double>() == 1.0 / 3.0);
    CHECK(j["rows"][1][1].is_null());
    CHECK(j["rows"][2][1].is_null());  // NaN has no JSON form
    CHECK(j["metadata"]["command"] == "demo \"x\"");
    CHECK(j["metadata"]["count"] == 3);
    CHECK(j["metadata"]["epsilon"].get<double>() == 0.1);
}

TEST_CASE("Empty tables are still valid documents") {
    ResultTable t({"a"});
    CHECK(nlohmann::json::parse(render(t, Format::json))["rows"].empty());
    CHECK(render(t, Format::csv) == "a\n");
}

TEST_CASE("Rendering is deterministic") {
    CHECK(render(sample(), Format::json) == render(sample(), Format::json));
    CHECK(render(sample(), Format::csv) == render(sample(), Format::csv));
}
