#include "geoprandtl/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "geoprandtl/core/error.hpp"

namespace geoprandtl::cli {

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, p);
}

std::string quote_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(columns.size()) {
    if (!out_) throw IoError("cannot open '" + path.string() + "' for writing");
    out_ << schema_line << "\r\n";
    row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw std::invalid_argument("csv row has the wrong number of cells");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << quote_field(cells[i]);
    }
    out_ << "\r\n";
    if (!out_) throw IoError("write failed on '" + path_.string() + "'");
}

void CsvWriter::close() {
    out_.close();
    if (out_.fail()) throw IoError("closing '" + path_.string() + "' failed");
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto line_end = [&](std::size_t from) {
        const auto e = text.find('\n', from);
        return e == std::string::npos ? n : e;
    };
    while (i < n && text[i] == '#') {
        const std::size_t e = line_end(i);
        std::string c = text.substr(i, e - i);
        if (!c.empty() && c.back() == '\r') c.pop_back();
        t.comments.push_back(c);
        i = e < n ? e + 1 : n;
    }

    std::vector<std::vector<std::string>> records;
    while (i < n) {
        std::vector<std::string> rec;
        std::string field;
        bool done = false;
        while (!done) {
            field.clear();
            if (i < n && text[i] == '"') {
                ++i;
                for (;;) {
                    if (i >= n) throw ConfigError("csv: unterminated quoted field");
                    if (text[i] == '"') {
                        if (i + 1 < n && text[i + 1] == '"') {
                            field += '"';
                            i += 2;
                            continue;
                        }
                        ++i;
                        break;
                    }
                    field += text[i++];
                }
                if (i < n && text[i] != ',' && text[i] != '\r' && text[i] != '\n')
                    throw ConfigError("csv: characters after closing quote");
            } else {
                while (i < n && text[i] != ',' && text[i] != '\r' && text[i] != '\n') field += text[i++];
            }
            rec.push_back(field);
            if (i < n && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < n && text[i] == '\r') ++i;
            if (i < n && text[i] == '\n') ++i;
            done = true;
        }
        records.push_back(std::move(rec));
    }
    if (!records.empty()) {
        t.header = std::move(records.front());
        t.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
    }
    return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

std::vector<std::string> diagnostics_columns() {
    return {"t",        "dt",           "sup_w",         "radius",          "theta",
            "norm_half", "norm_one",    "norm_dy_half",  "G",               "dG_dt_numeric",
            "dG_dt_terms_sum", "growth_rhs", "flags"};
}

void write_diagnostics(const std::filesystem::path& path, const std::vector<DiagnosticsRow>& rows) {
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const DiagnosticsRow& r = rows[i];
        const std::optional<double> all[] = {r.t,         r.dt,       r.sup_w,        r.radius,
                                             r.theta,     r.norm_half, r.norm_one,    r.norm_dy_half,
                                             r.G,         r.dG_dt_numeric, r.dG_dt_terms_sum, r.growth_rhs};
        for (const auto& v : all)
            if (v && std::isnan(*v)) throw NumericalError("diagnostics row " + std::to_string(i) + " contains NaN");
        if (i > 0 && !(r.t >= rows[i - 1].t)) throw NumericalError("diagnostics times are not monotone");
    }
    CsvWriter w(path, diagnostics_columns());
    for (const DiagnosticsRow& r : rows)
        w.row({format_number(r.t), format_number(r.dt), format_number(r.sup_w), opt(r.radius), opt(r.theta),
               opt(r.norm_half), opt(r.norm_one), opt(r.norm_dy_half), opt(r.G), opt(r.dG_dt_numeric),
               opt(r.dG_dt_terms_sum), opt(r.growth_rhs), r.flags});
    w.close();
}

}  // namespace geoprandtl::cli
