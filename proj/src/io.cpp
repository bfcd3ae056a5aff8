#include "qudit/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qudit {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw ValidationError("row", "cell count does not match columns in table " + name);
    rows.push_back(std::move(row));
}

EmitFormat parse_format(const std::string& s) {
    if (s == "csv") return EmitFormat::csv;
    if (s == "json") return EmitFormat::json;
    if (s == "both") return EmitFormat::both;
    throw ValidationError("format", "expected csv, json or both");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

nlohmann::json cell_to_json(const Cell& c) {
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
    return std::get<std::string>(c);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace

std::vector<std::string> emit(const std::vector<Table>& tables, const EmitOptions& opts) {
    namespace fs = std::filesystem;
    fs::create_directories(opts.out_dir);
    std::vector<std::string> written;

    const bool csv = opts.format != EmitFormat::json;
    const bool json = opts.format != EmitFormat::csv;
    for (const auto& t : tables) {
        if (csv) {
            std::ostringstream os;
            for (std::size_t c = 0; c < t.columns.size(); ++c)
                os << (c ? "," : "") << t.columns[c];
            os << "\n";
            for (const auto& row : t.rows) {
                for (std::size_t c = 0; c < row.size(); ++c)
                    os << (c ? "," : "") << cell_to_string(row[c]);
                os << "\n";
            }
            const std::string path = (fs::path(opts.out_dir) / (t.name + ".csv")).string();
            write_text(path, os.str());
            written.push_back(t.name + ".csv");
        }
        if (json) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& row : t.rows) {
                nlohmann::json obj;
                for (std::size_t c = 0; c < row.size(); ++c)
                    obj[t.columns[c]] = cell_to_json(row[c]);
                rows.push_back(std::move(obj));
            }
            const std::string path = (fs::path(opts.out_dir) / (t.name + ".json")).string();
            write_text(path, rows.dump(2) + "\n");
            written.push_back(t.name + ".json");
        }
    }

    nlohmann::json manifest;
    manifest["version"] = QUDITREAD_VERSION;
    manifest["command"] = opts.command;
    manifest["config_hash"] = opts.config_hash;
    if (opts.has_seed) manifest["seed"] = opts.seed;
    manifest["outputs"] = written;
    const std::string mpath = (fs::path(opts.out_dir) / "manifest.json").string();
    write_text(mpath, manifest.dump(2) + "\n");
    written.push_back("manifest.json");
    return written;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace qudit
