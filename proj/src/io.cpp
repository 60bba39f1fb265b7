#include "bhecho/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace bhecho {

std::map<std::string, std::string> parse_key_values(const std::string& text,
                                                    const std::string& origin) {
    std::map<std::string, std::string> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (out.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        out[key] = value;
    }
    return out;
}

std::map<std::string, std::string> load_key_values(const std::string& path) {
    return parse_key_values(read_file(path), path);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::size_t write_trace_csv(const DephasingTrace& tr, const std::string& path) {
    std::ostringstream os;
    const bool with_dn1 = tr.dn1.has_value();
    os << "t,gamma,Gamma,sqrtL";
    if (with_dn1) os << ",dn1";
    os << '\n';
    std::size_t clipped = 0;
    for (std::size_t m = 0; m < tr.grid.samples(); ++m) {
        double echo = tr.sqrtL[m];
        if (echo > 1.0) {
            echo = 1.0;
            ++clipped;
        }
        os << format_double(tr.grid.time(m)) << ',' << format_double(tr.gamma[m]) << ','
           << format_double(tr.Gamma[m]) << ',' << format_double(echo);
        if (with_dn1) os << ',' << format_double((*tr.dn1)[m]);
        os << '\n';
    }
    write_file_atomic(path, os.str());
    return clipped;
}

CsvTable load_csv(const std::string& path) {
    std::istringstream is(read_file(path));
    CsvTable table;
    std::string line;
    if (!std::getline(is, line)) throw ConfigError(path + ": empty CSV");
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.header.push_back(cell);
    table.columns.resize(table.header.size());
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::size_t c = 0;
        while (std::getline(ls, cell, ',')) {
            if (c >= table.columns.size())
                throw ConfigError(path + ":" + std::to_string(lineno) + ": too many columns");
            double v = std::numeric_limits<double>::quiet_NaN();
            try {
                std::size_t pos = 0;
                if (!cell.empty()) v = std::stod(cell, &pos);
                if (pos != cell.size()) v = std::numeric_limits<double>::quiet_NaN();
            } catch (const std::exception&) {
                // non-numeric cells (status columns) read as NaN
            }
            table.columns[c].push_back(v);
            ++c;
        }
        while (c < table.columns.size())
            table.columns[c++].push_back(std::numeric_limits<double>::quiet_NaN());
    }
    return table;
}

DephasingTrace load_trace_csv(const std::string& path) {
    const CsvTable t = load_csv(path);
    if (t.header.size() < 4 || t.header[0] != "t" || t.header[1] != "gamma" ||
        t.header[2] != "Gamma" || t.header[3] != "sqrtL")
        throw ConfigError(path + ": unexpected trace CSV header");
    DephasingTrace tr;
    const auto& times = t.columns[0];
    if (times.size() < 2) throw ConfigError(path + ": trace too short");
    tr.grid.dt = times[1] - times[0];
    tr.grid.steps = times.size() - 1;
    tr.gamma = t.columns[1];
    tr.Gamma = t.columns[2];
    tr.sqrtL = t.columns[3];
    if (t.header.size() > 4 && t.header[4] == "dn1") tr.dn1 = t.columns[4];
    return tr;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw ConfigError("cannot write " + tmp.string());
        os << content;
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot read " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace bhecho
