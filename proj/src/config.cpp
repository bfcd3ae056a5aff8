#include "qudit/config.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qudit/io.hpp"
#include "qudit/spectrum.hpp"
#include "qudit/units.hpp"

namespace qudit {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

} // namespace

bool RunConfig::has(const std::string& section, const std::string& key) const {
    auto it = sections.find(section);
    return it != sections.end() && it->second.count(key) > 0;
}

std::string RunConfig::get(const std::string& section, const std::string& key) const {
    auto it = sections.find(section);
    if (it == sections.end() || !it->second.count(key))
        throw ValidationError(section + "." + key, "missing");
    return it->second.at(key);
}

std::string RunConfig::get_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double RunConfig::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ValidationError(section + "." + key, "not a number: '" + v + "'");
    }
}

double RunConfig::get_double_or(const std::string& section, const std::string& key,
                                double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long long RunConfig::get_int(const std::string& section, const std::string& key) const {
    const std::string v = get(section, key);
    try {
        std::size_t pos = 0;
        const long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ValidationError(section + "." + key, "not an integer: '" + v + "'");
    }
}

long long RunConfig::get_int_or(const std::string& section, const std::string& key,
                                long long fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    cfg.path = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ParseError(origin + ":" + std::to_string(line_no) +
                                 ": unterminated section header '" + t + "'");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ParseError(origin + ":" + std::to_string(line_no) + ": empty section name");
            cfg.sections[section];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ParseError(origin + ":" + std::to_string(line_no) + ": empty key");
        cfg.sections[section][key] = value;
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    return parse_config(read_file(path), path);
}

CatalogResult device_catalog(const std::string& path) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    CatalogResult result;
    if (!std::getline(in, line)) return result; // empty file -> empty catalog

    const auto header = split_csv_line(line);
    auto col = [&](const std::string& name) -> int {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    };
    const int c_name = col("name");
    const int c_w01 = col("omega01_ghz");
    const int c_a1 = col("alpha1_ghz");
    const int c_wr = col("omega_r_ghz");
    const int c_kap = col("kappa_ghz");
    if (c_name < 0 || c_w01 < 0 || c_a1 < 0 || c_wr < 0 || c_kap < 0)
        throw ParseError(path + ": header must contain name, omega01_ghz, alpha1_ghz, "
                                "omega_r_ghz, kappa_ghz");
    const int c_g = col("g_ghz");
    const int c_om = col("omega_drive_ghz");
    const int c_t = col("t_us");
    const int c_sig = col("sigma");

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        auto cell = [&](int c) -> std::string {
            return (c >= 0 && c < static_cast<int>(cells.size())) ? trim(cells[static_cast<std::size_t>(c)]) : "";
        };
        try {
            DeviceRecord rec;
            rec.name = cell(c_name);
            if (rec.name.empty()) throw ValidationError("name", "missing");
            rec.omega01_ghz = std::stod(cell(c_w01));
            rec.alpha1_ghz = std::stod(cell(c_a1));
            rec.omega_r_ghz = std::stod(cell(c_wr));
            rec.kappa_ghz = std::stod(cell(c_kap));
            if (!(rec.omega01_ghz > 0.0)) throw ValidationError("omega01_ghz", "must be > 0");
            if (!(rec.alpha1_ghz < 0.0)) throw ValidationError("alpha1_ghz", "must be < 0");
            if (!(rec.omega_r_ghz > 0.0)) throw ValidationError("omega_r_ghz", "must be > 0");
            if (!(rec.kappa_ghz > 0.0)) throw ValidationError("kappa_ghz", "must be > 0");
            if (!cell(c_g).empty()) rec.g_ghz = std::stod(cell(c_g));
            if (!cell(c_om).empty()) rec.omega_drive_ghz = std::stod(cell(c_om));
            if (!cell(c_t).empty()) rec.t_us = std::stod(cell(c_t));
            if (!cell(c_sig).empty()) rec.sigma = std::stod(cell(c_sig));

            const EjEcFit fit =
                fit_ej_ec(ghz_to_rad(rec.omega01_ghz), ghz_to_rad(rec.alpha1_ghz));
            rec.ej_over_ec = fit.ej_over_ec;
            rec.ec_ghz = rad_to_ghz(fit.ec);
            TransmonParams p;
            p.ej_over_ec = fit.ej_over_ec;
            p.ec = fit.ec;
            const Spectrum s = Spectrum::compute(p, 5);
            rec.epsilon3_ghz = rad_to_ghz(charge_dispersion(s, 3));
            result.devices.push_back(rec);
        } catch (const std::exception& e) {
            result.row_errors.push_back(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    std::sort(result.devices.begin(), result.devices.end(),
              [](const DeviceRecord& a, const DeviceRecord& b) {
                  return a.epsilon3_ghz < b.epsilon3_ghz;
              });
    return result;
}

} // namespace qudit
