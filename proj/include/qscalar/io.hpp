// Copyright 2026 The qscalar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qscalar/scenario.hpp"

namespace qscalar::io {

/// Shortest-safe round-trip formatting of a double.
inline std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

/// Three significant figures, for human-readable summaries.
inline std::string format_short(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", value);
    return buf;
}

// ---------------------------------------------------------------------------
// Scenario files

/// A parsed scenario file: the scenario plus run-level settings.
struct RunSpec {
    ScenarioConfig scenario;
    /// "pulse" or "basis:<index>".
    std::string initial = "pulse";
    bool fd10 = false;
    int reference_steps = 1024;
    std::string source = "<config>";
};

namespace detail {

inline std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::string unquote(const std::string &s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

class LineError {
  public:
    LineError(std::string source, int line) : source_(std::move(source)), line_(line) {}
    [[noreturn]] void operator()(const std::string &message) const {
        qscalar::detail::fail(source_ + ":" + std::to_string(line_) + ": " + message);
    }

  private:
    std::string source_;
    int line_;
};

inline double parse_number(const std::string &text, const LineError &error) {
    const char *begin = text.c_str();
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
        error("expected a number, got '" + text + "'");
    }
    return v;
}

inline int parse_int(const std::string &text, const LineError &error) {
    const double v = parse_number(text, error);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        error("expected an integer, got '" + text + "'");
    }
    return static_cast<int>(v);
}

inline bool parse_bool(const std::string &text, const LineError &error) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    error("expected true or false, got '" + text + "'");
}

inline VelocityProfile parse_profile(const std::string &text, const LineError &error) {
    const std::string name = unquote(text);
    if (name == "uniform") {
        return VelocityProfile::uniform();
    }
    if (name == "couette") {
        return VelocityProfile::couette();
    }
    if (name == "poiseuille" || name == "channel") {
        return VelocityProfile::poiseuille();
    }
    if (name == "blasius") {
        return VelocityProfile::blasius();
    }
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        error("unknown profile '" + name + "' (expected couette, poiseuille, blasius, uniform or [c0, c1, ...])");
    }
    std::vector<double> coefficients;
    std::stringstream items(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(items, item, ',')) {
        coefficients.push_back(parse_number(trim(item), error));
    }
    if (coefficients.empty()) {
        error("profile list is empty");
    }
    try {
        return VelocityProfile::custom(std::move(coefficients));
    } catch (const Error &e) {
        error(e.what());
    }
}

} // namespace detail

/// Parses `key = value` lines. Blank lines and lines starting with '#' are
/// ignored. Required keys: n_x, t_final, profile, and one of D or Pe.
inline RunSpec parse_config(const std::string &text, const std::string &source = "<config>") {
    RunSpec spec;
    spec.source = source;
    auto &c = spec.scenario;
    std::set<std::string> seen;
    std::optional<double> peclet;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const detail::LineError error(source, line_no);
        const auto hash = raw.find('#');
        const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            error("expected 'key = value'");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (value.empty()) {
            error("missing value for key '" + key + "'");
        }
        if (!seen.insert(key).second) {
            error("duplicate key '" + key + "'");
        }
        if (key == "n_x") {
            c.n_x = detail::parse_int(value, error);
        } else if (key == "n_y") {
            c.n_y = detail::parse_int(value, error);
        } else if (key == "L") {
            c.length = detail::parse_number(value, error);
        } else if (key == "U") {
            c.velocity = detail::parse_number(value, error);
        } else if (key == "D") {
            c.diffusivity = detail::parse_number(value, error);
        } else if (key == "Pe") {
            peclet = detail::parse_number(value, error);
            if (*peclet <= 0.0) {
                error("Pe must be positive");
            }
        } else if (key == "t_final") {
            c.t_final = detail::parse_number(value, error);
        } else if (key == "N_t") {
            c.steps = detail::parse_int(value, error);
        } else if (key == "splitting") {
            try {
                c.splitting = parse_splitting(detail::unquote(value));
            } catch (const Error &e) {
                error(e.what());
            }
        } else if (key == "profile") {
            c.profile = detail::parse_profile(value, error);
        } else if (key == "bc_x" || key == "bc_y") {
            try {
                (key == "bc_x" ? c.bc_x : c.bc_y) = parse_boundary_kind(detail::unquote(value));
            } catch (const Error &e) {
                error(e.what());
            }
        } else if (key == "checkpoints") {
            c.checkpoints = detail::parse_int(value, error);
        } else if (key == "merge_half_steps") {
            c.merge_half_steps = detail::parse_bool(value, error);
        } else if (key == "initial") {
            spec.initial = detail::unquote(value);
            if (spec.initial != "pulse" && spec.initial.rfind("basis:", 0) != 0) {
                error("unknown initial condition '" + spec.initial + "' (expected pulse or basis:<index>)");
            }
        } else if (key == "fd10") {
            spec.fd10 = detail::parse_bool(value, error);
        } else if (key == "reference_steps") {
            spec.reference_steps = detail::parse_int(value, error);
        } else {
            error("unknown key '" + key + "'");
        }
    }
    for (const char *key : {"n_x", "t_final", "profile"}) {
        qscalar::detail::require(seen.count(key) != 0, source + ": missing key '" + std::string(key) + "'");
    }
    qscalar::detail::require(seen.count("D") + seen.count("Pe") == 1,
                             source + ": exactly one of the keys 'D' and 'Pe' must be given");
    if (peclet) {
        c.diffusivity = c.velocity * c.length / *peclet;
    }
    try {
        c.validate();
    } catch (const Error &e) {
        qscalar::detail::fail(source + ": " + e.what());
    }
    return spec;
}

inline RunSpec load_config(const std::string &path) {
    std::ifstream in(path);
    qscalar::detail::require(static_cast<bool>(in), "cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

/// Initial main-register field for a spec.
inline std::vector<double> initial_field(const RunSpec &spec) {
    if (spec.initial == "pulse") {
        return pulse_initial_condition(spec.scenario);
    }
    const std::string digits = spec.initial.substr(6);
    char *end = nullptr;
    const unsigned long long index = std::strtoull(digits.c_str(), &end, 10);
    qscalar::detail::require(!digits.empty() && *end == '\0' && index < spec.scenario.points(),
                             "basis index out of range in '" + spec.initial + "'");
    std::vector<double> field(spec.scenario.points(), 0.0);
    field[index] = 1.0;
    return field;
}

// ---------------------------------------------------------------------------
// CSV

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline void write_csv(std::ostream &out, const CsvTable &table) {
    auto line = [&out](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << cells[i];
        }
        out << '\n';
    };
    line(table.header);
    for (const auto &row : table.rows) {
        line(row);
    }
}

inline void write_csv(const std::string &path, const CsvTable &table) {
    std::ofstream out(path);
    qscalar::detail::require(static_cast<bool>(out), "cannot write '" + path + "'");
    write_csv(out, table);
    qscalar::detail::require(static_cast<bool>(out), "failed writing '" + path + "'");
}

inline CsvTable read_csv(std::istream &in) {
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

inline CsvTable read_csv(const std::string &path) {
    std::ifstream in(path);
    qscalar::detail::require(static_cast<bool>(in), "cannot open '" + path + "'");
    return read_csv(in);
}

inline double to_double(const std::string &cell) {
    char *end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    qscalar::detail::require(!cell.empty() && *end == '\0', "not a number: '" + cell + "'");
    return v;
}

} // namespace qscalar::io
