#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qudit/errors.hpp"

namespace qudit {

using Cell = std::variant<double, long long, std::string>;

// Column-ordered result table; doubles are written with 12 significant digits.
struct Table {
    std::string name; // output file stem
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

enum class EmitFormat { csv, json, both };

EmitFormat parse_format(const std::string& s); // ValidationError on unknown

struct EmitOptions {
    std::string out_dir = ".";
    EmitFormat format = EmitFormat::csv;
    std::string command;      // subcommand name for the manifest
    std::string config_hash;  // hash of config file bytes + CLI parameters
    std::uint64_t seed = 0;
    bool has_seed = false;
};

std::string format_double(double v); // %.12g
std::string fnv1a64_hex(const std::string& bytes);

// Write every table (CSV and/or JSON mirror) plus manifest.json recording the
// config hash, seed, and version; contents are deterministic so identical
// manifests imply byte-identical outputs.
std::vector<std::string> emit(const std::vector<Table>& tables, const EmitOptions& opts);

std::string read_file(const std::string& path); // IOError -> std::runtime_error

// Minimal CSV splitting (no quoted-comma support; catalog names are plain).
std::vector<std::string> split_csv_line(const std::string& line);

} // namespace qudit
