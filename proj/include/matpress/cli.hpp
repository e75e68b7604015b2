#pragma once

// File-driven front end: measure documents, job dispatch and reports.
//
// Measure document:
//   {"d": 2, "atoms": [{"weight": 1.0, "matrix": [[0.5, 0], [0, 0.25]]}, ...]}
// "weight" defaults to 1.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "matpress/affinity.hpp"
#include "matpress/jsr.hpp"

namespace matpress::cli {

FiniteMatrixMeasure parse_measure(const std::string& text);
FiniteMatrixMeasure parse_input(const std::string& path);
/// Full-precision JSON; parse_measure(emit_measure(mu)) == mu bit for bit.
std::string emit_measure(const FiniteMatrixMeasure& mu);

enum class Command { pressure, pradius, svpressure, affdim, jsr, scan };
enum class Format { text, json };

const char* to_string(Command c);
Command parse_command(const std::string& name);

struct JobSpec {
    Command command = Command::pressure;
    std::string input_path;
    std::optional<std::string> s;  // real or rational ("3/2", "1+1/2")
    std::optional<std::string> p;
    std::optional<double> eps;     // per-command default when unset
    WordBudget budget;
    unsigned workers = 1;
    std::size_t q_cap = 6;
    Format format = Format::text;
    std::vector<double> s_list;    // scan grid; empty means the default
};

double default_eps(Command c);

struct Report {
    nlohmann::json data;
    int exit_code = 0;
    /// Rendering in the requested format.
    std::string render(Format f) const;
};

/// Validates the job, reads the input file and dispatches.
Report run(const JobSpec& job);
/// Same with the measure supplied directly; input_path is only echoed.
Report run(const JobSpec& job, const FiniteMatrixMeasure& mu);

/// Error report (exit code 1) for failures before dispatch.
Report error_report(const JobSpec& job, const std::string& message);

/// JSON number, or "inf" / "-inf" / "nan" for non-finite values.
nlohmann::json number(double x);
double number_value(const nlohmann::json& j);

}  // namespace matpress::cli
