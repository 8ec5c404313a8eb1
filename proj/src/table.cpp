#include "qstancu/table.hpp"

#include <bit>
#include <charconv>
#include <system_error>

#include <json.hpp>

#include "qstancu/errors.hpp"

namespace qstancu {

namespace {

std::string double_to_string(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string cell_to_csv(const Cell& cell) {
    struct Visitor {
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const { return double_to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return csv_escape(v); }
    };
    return std::visit(Visitor{}, cell);
}

bool cell_bit_equal(const Cell& a, const Cell& b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<double>(a))
        return std::bit_cast<std::uint64_t>(std::get<double>(a)) ==
               std::bit_cast<std::uint64_t>(std::get<double>(b));
    return a == b;
}

} // namespace

std::string to_csv(const ResultTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += csv_escape(table.columns[c]);
    }
    out += "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += cell_to_csv(row[c]);
        }
        out += "\r\n";
    }
    return out;
}

std::string to_json(const ResultTable& table) {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.config) j["config"][key] = value;
    j["columns"] = table.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
        for (const auto& cell : row)
            std::visit([&jrow](const auto& v) { jrow.push_back(v); }, cell);
        j["rows"].push_back(std::move(jrow));
    }
    j["certificates"] = nlohmann::ordered_json::array();
    for (const auto& cert : table.certificates)
        j["certificates"].push_back({{"label", cert.label},
                                     {"n_terms", cert.n_terms},
                                     {"tail_bound", cert.tail_bound}});
    return j.dump(2) + "\n";
}

ResultTable table_from_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::ordered_json::exception& e) {
        throw parse_error(std::string("bad table JSON: ") + e.what());
    }
    ResultTable table;
    if (j.contains("config"))
        for (const auto& [key, value] : j["config"].items())
            table.config.emplace_back(key, value.get<std::string>());
    for (const auto& name : j.at("columns"))
        table.columns.push_back(name.get<std::string>());
    for (const auto& jrow : j.at("rows")) {
        std::vector<Cell> row;
        for (const auto& v : jrow) {
            if (v.is_number_integer()) row.emplace_back(v.get<long long>());
            else if (v.is_number_float()) row.emplace_back(v.get<double>());
            else if (v.is_boolean()) row.emplace_back(v.get<bool>());
            else if (v.is_string()) row.emplace_back(v.get<std::string>());
            else throw parse_error("unsupported cell type in table JSON");
        }
        table.rows.push_back(std::move(row));
    }
    if (j.contains("certificates"))
        for (const auto& c : j["certificates"])
            table.certificates.push_back(CertificateRecord{
                c.at("label").get<std::string>(), c.at("n_terms").get<int>(),
                c.at("tail_bound").get<double>()});
    return table;
}

bool operator==(const ResultTable& a, const ResultTable& b) {
    if (a.columns != b.columns || a.config != b.config) return false;
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        if (a.rows[r].size() != b.rows[r].size()) return false;
        for (std::size_t c = 0; c < a.rows[r].size(); ++c)
            if (!cell_bit_equal(a.rows[r][c], b.rows[r][c])) return false;
    }
    if (a.certificates.size() != b.certificates.size()) return false;
    for (std::size_t i = 0; i < a.certificates.size(); ++i) {
        const auto& ca = a.certificates[i];
        const auto& cb = b.certificates[i];
        if (ca.label != cb.label || ca.n_terms != cb.n_terms ||
            std::bit_cast<std::uint64_t>(ca.tail_bound) !=
                std::bit_cast<std::uint64_t>(cb.tail_bound))
            return false;
    }
    return true;
}

} // namespace qstancu
