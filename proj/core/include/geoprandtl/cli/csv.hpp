#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace geoprandtl::cli {

inline constexpr const char* schema_line = "# schema=1";

/// Shortest round-trip-safe form with 17 significant digits ("inf"/"-inf" for infinities).
std::string format_number(double v);
/// RFC-4180 field: quoted when it contains a comma, quote, CR or LF; quotes doubled.
std::string quote_field(const std::string& s);

/// Writes `# schema=1`, the column header, then records. Throws IoError on failure.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    void close();

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
};

struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC-4180 reader; leading lines starting with '#' are collected as comments.
/// Throws IoError when the file cannot be read and ConfigError on malformed quoting.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text);

struct DiagnosticsRow {
    double t = 0.0;
    double dt = 0.0;
    double sup_w = 0.0;
    std::optional<double> radius;
    std::optional<double> theta;
    std::optional<double> norm_half;
    std::optional<double> norm_one;
    std::optional<double> norm_dy_half;
    std::optional<double> G;
    std::optional<double> dG_dt_numeric;
    std::optional<double> dG_dt_terms_sum;
    std::optional<double> growth_rhs;
    std::string flags;
};

std::vector<std::string> diagnostics_columns();

/// Absent optional fields are written as empty cells. Throws NumericalError on a
/// NaN or decreasing t, IoError on write failure.
void write_diagnostics(const std::filesystem::path& path, const std::vector<DiagnosticsRow>& rows);

}  // namespace geoprandtl::cli
