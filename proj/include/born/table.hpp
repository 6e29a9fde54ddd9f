#pragma once

// Tabular results with deterministic CSV and JSON serialization.
//
// Numbers are printed with 17 significant digits ("%.17g" in the classic
// locale), so output round-trips exactly and is byte-stable. Empty cells are
// written as an empty CSV field and as JSON null.

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace born::table {

using Cell = std::variant<std::monostate, long long, double>;
using MetaValue = std::variant<std::string, long long, double>;

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class ResultTable {
public:
    ResultTable() = default;
    explicit ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
    const std::vector<std::pair<std::string, MetaValue>>& metadata() const noexcept { return meta_; }

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns_.size())
            throw std::invalid_argument("row has " + std::to_string(row.size()) + " cells, table has " +
                                        std::to_string(columns_.size()) + " columns");
        rows_.push_back(std::move(row));
    }

    /// Insert or replace; insertion order is kept.
    void set_meta(const std::string& key, MetaValue value) {
        for (auto& kv : meta_)
            if (kv.first == key) {
                kv.second = std::move(value);
                return;
            }
        meta_.emplace_back(key, std::move(value));
    }

    const MetaValue* find_meta(const std::string& key) const {
        for (const auto& kv : meta_)
            if (kv.first == key) return &kv.second;
        return nullptr;
    }

    /// Column position, or throws.
    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < columns_.size(); ++i)
            if (columns_[i] == name) return i;
        throw std::out_of_range("no column " + name);
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::pair<std::string, MetaValue>> meta_;
};

namespace detail {

inline std::string cell_text(const Cell& c) {
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    return {};
}

inline std::string meta_text(const MetaValue& v) {
    if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
    if (std::holds_alternative<long long>(v)) return std::to_string(std::get<long long>(v));
    return format_number(std::get<double>(v));
}

// RFC 4180 quoting.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

inline std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

}  // namespace detail

/// '#'-prefixed "key=value" metadata lines, then the header, then the rows.
inline void write_csv(const ResultTable& t, std::ostream& os) {
    for (const auto& [k, v] : t.metadata()) {
        std::string text = detail::meta_text(v);
        for (char& ch : text)
            if (ch == '\n' || ch == '\r') ch = ' ';
        os << "# " << k << '=' << text << '\n';
    }
    for (std::size_t i = 0; i < t.columns().size(); ++i) os << (i ? "," : "") << detail::csv_field(t.columns()[i]);
    os << '\n';
    for (const auto& row : t.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::cell_text(row[i]);
        os << '\n';
    }
}

/// {"columns": [...], "rows": [[...], ...], "metadata": {...}}
inline void write_json(const ResultTable& t, std::ostream& os) {
    os << "{\n  \"columns\": [";
    for (std::size_t i = 0; i < t.columns().size(); ++i)
        os << (i ? ", " : "") << detail::json_string(t.columns()[i]);
    os << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < t.rows().size(); ++r) {
        os << (r ? ",\n    [" : "\n    [");
        const auto& row = t.rows()[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? ", " : "");
            const Cell& c = row[i];
            if (std::holds_alternative<long long>(c))
                os << std::get<long long>(c);
            else if (std::holds_alternative<double>(c))
                os << detail::json_number(std::get<double>(c));
            else
                os << "null";
        }
        os << ']';
    }
    os << (t.rows().empty() ? "],\n" : "\n  ],\n");
    os << "  \"metadata\": {";
    for (std::size_t i = 0; i < t.metadata().size(); ++i) {
        const auto& [k, v] = t.metadata()[i];
        os << (i ? ",\n    " : "\n    ") << detail::json_string(k) << ": ";
        if (std::holds_alternative<std::string>(v))
            os << detail::json_string(std::get<std::string>(v));
        else if (std::holds_alternative<long long>(v))
            os << std::get<long long>(v);
        else
            os << detail::json_number(std::get<double>(v));
    }
    os << (t.metadata().empty() ? "}\n}\n" : "\n  }\n}\n");
}

enum class Format { csv, json };

inline std::string render(const ResultTable& t, Format f) {
    std::ostringstream os;
    if (f == Format::csv)
        write_csv(t, os);
    else
        write_json(t, os);
    return os.str();
}

}  // namespace born::table
