#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qstancu {

/// One table cell. Exact rationals travel as "p/q" strings so no precision
/// is lost in either output format.
using Cell = std::variant<long long, double, bool, std::string>;

struct CertificateRecord {
    std::string label;
    int n_terms = 0;
    double tail_bound = 0.0;
};

/// Column-named result rows plus the config echo and any truncation
/// certificates the computation produced. CSV carries the data rows only;
/// JSON carries everything.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<CertificateRecord> certificates;
};

/// RFC 4180: header row then data rows; fields holding comma, quote, or
/// newline are quoted with inner quotes doubled. Doubles print in shortest
/// round-trip form.
std::string to_csv(const ResultTable& table);

/// One JSON object {config, columns, rows, certificates}; doubles survive a
/// parse round trip bit-exactly.
std::string to_json(const ResultTable& table);

ResultTable table_from_json(const std::string& text);

/// Bit-exact comparison (doubles compared through their bit patterns).
bool operator==(const ResultTable& a, const ResultTable& b);

} // namespace qstancu
