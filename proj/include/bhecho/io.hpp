#pragma once

#include <map>
#include <string>

#include "bhecho/trace.hpp"

namespace bhecho {

// Flat `key = value` text, '#' starts a comment. Duplicate keys and
// unparseable lines are reported with their line number.
std::map<std::string, std::string> parse_key_values(const std::string& text,
                                                    const std::string& origin);
std::map<std::string, std::string> load_key_values(const std::string& path);

// All floating-point output uses 17 significant digits so that reloading
// reproduces the in-memory doubles bit for bit.
std::string format_double(double v);

// Trace CSV: header t,gamma,Gamma,sqrtL[,dn1]. Echo samples above 1 are
// clipped in the file only; the count of clipped samples is returned.
std::size_t write_trace_csv(const DephasingTrace& tr, const std::string& path);
DephasingTrace load_trace_csv(const std::string& path);

// Generic numeric CSV (empty cells become NaN); used by readers and tests.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
};
CsvTable load_csv(const std::string& path);

// Write-to-temporary-then-rename, so partially written files never appear
// under the final name.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// FNV-1a 64-bit, hex-encoded; keys resumable sweep points.
std::string fnv1a_hex(const std::string& text);

}  // namespace bhecho
