#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qudit/errors.hpp"

namespace qudit {

// Sectioned key-value run configuration ("[section]" headers, "key = value"
// lines, '#'/';' comments). Frequencies in files are GHz; conversion to rad/s
// happens in the typed getters of the consumers.
struct RunConfig {
    std::string path;
    std::map<std::string, std::map<std::string, std::string>> sections;

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    long long get_int(const std::string& section, const std::string& key) const;
    long long get_int_or(const std::string& section, const std::string& key,
                         long long fallback) const;
};

RunConfig load_config(const std::string& path);      // ParseError with line context
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// One device row of a catalog CSV. Frequencies kept in GHz as read; derived
// quantities filled by device_catalog.
struct DeviceRecord {
    std::string name;
    double omega01_ghz = 0.0;
    double alpha1_ghz = 0.0;
    double omega_r_ghz = 0.0;
    double kappa_ghz = 0.0;
    std::optional<double> g_ghz, omega_drive_ghz, t_us, sigma;

    // derived
    double ej_over_ec = 0.0;
    double ec_ghz = 0.0;
    double epsilon3_ghz = 0.0;
};

struct CatalogResult {
    std::vector<DeviceRecord> devices;     // sorted by epsilon3
    std::vector<std::string> row_errors;   // per-row failures; run continues
};

// Parse a device CSV (header: name, omega01_ghz, alpha1_ghz, omega_r_ghz,
// kappa_ghz [, g_ghz, omega_drive_ghz, t_us, sigma]), fit E_J/E_C per row and
// derive the third-level charge dispersion.
CatalogResult device_catalog(const std::string& path);

} // namespace qudit
