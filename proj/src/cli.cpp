#include "matpress/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "matpress/error.hpp"

namespace matpress::cli {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::parse_error, msg); }

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

double finite_number(const json& j, const std::string& where) {
    if (!j.is_number()) parse_fail(where + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) parse_fail(where + ": value is not finite");
    return x;
}

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_real(const std::string& text, const char* what) {
    double x = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    const auto [ptr, ec] = std::from_chars(b, e, x);
    if (ec == std::errc{} && ptr == e) return x;
    try {
        return Rational::parse(text).value();
    } catch (const Error&) {
        invalid_input(std::string("cannot read ") + what + " = '" + text + "'");
    }
}

json bracket_fields(const PressureBracket& b) {
    return {{"status", to_string(b.status)},
            {"lower", number(b.lower)},
            {"upper", number(b.upper)},
            {"n_used", b.n_used},
            {"words_evaluated", b.words_evaluated},
            {"lower_bound_source", to_string(b.source)},
            {"note", b.note}};
}

int exit_for(BracketStatus s) { return s == BracketStatus::budget_exhausted ? 2 : 0; }

}  // namespace

json number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double number_value(const json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
}

FiniteMatrixMeasure parse_measure(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        parse_fail("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed document");
    }
    if (!doc.is_object()) parse_fail("top level: expected an object");
    if (!doc.contains("d")) parse_fail("d: missing");
    const json& dj = doc["d"];
    if (!dj.is_number_integer() || dj.get<long long>() <= 0) parse_fail("d: expected a positive integer");
    const auto d = static_cast<std::size_t>(dj.get<long long>());
    if (!doc.contains("atoms") || !doc["atoms"].is_array()) parse_fail("atoms: expected an array");
    const json& aj = doc["atoms"];
    if (aj.empty()) parse_fail("atoms: at least one atom is required");

    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < aj.size(); ++i) {
        const std::string at = "atoms[" + std::to_string(i) + "]";
        const json& a = aj[i];
        if (!a.is_object()) parse_fail(at + ": expected an object");
        double w = 1.0;
        if (a.contains("weight")) {
            w = finite_number(a["weight"], at + ".weight");
            if (!(w > 0.0)) parse_fail(at + ".weight: must be positive");
        }
        if (!a.contains("matrix") || !a["matrix"].is_array()) parse_fail(at + ".matrix: expected an array of rows");
        const json& m = a["matrix"];
        if (m.size() != d) {
            parse_fail(at + ".matrix: " + std::to_string(m.size()) + " rows, expected " + std::to_string(d));
        }
        std::vector<double> entries;
        entries.reserve(d * d);
        for (std::size_t r = 0; r < d; ++r) {
            const std::string rw = at + ".matrix[" + std::to_string(r) + "]";
            if (!m[r].is_array()) parse_fail(rw + ": expected a row");
            if (m[r].size() != d) {
                parse_fail(rw + ": " + std::to_string(m[r].size()) + " entries, expected " + std::to_string(d));
            }
            for (std::size_t c = 0; c < d; ++c) {
                entries.push_back(finite_number(m[r][c], rw + "[" + std::to_string(c) + "]"));
            }
        }
        atoms.push_back({w, Matrix(d, std::move(entries))});
    }
    return FiniteMatrixMeasure(d, std::move(atoms));
}

FiniteMatrixMeasure parse_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) invalid_input("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_measure(ss.str());
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.what());
    }
}

std::string emit_measure(const FiniteMatrixMeasure& mu) {
    json atoms = json::array();
    const std::size_t d = mu.dim();
    for (const Atom& a : mu.atoms()) {
        json rows = json::array();
        for (std::size_t r = 0; r < d; ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < d; ++c) row.push_back(a.matrix(r, c));
            rows.push_back(std::move(row));
        }
        atoms.push_back({{"weight", a.weight}, {"matrix", std::move(rows)}});
    }
    return json{{"d", d}, {"atoms", std::move(atoms)}}.dump(2) + "\n";
}

const char* to_string(Command c) {
    switch (c) {
        case Command::pressure: return "pressure";
        case Command::pradius: return "pradius";
        case Command::svpressure: return "svpressure";
        case Command::affdim: return "affdim";
        case Command::jsr: return "jsr";
        case Command::scan: return "scan";
    }
    return "unknown";
}

Command parse_command(const std::string& name) {
    for (Command c : {Command::pressure, Command::pradius, Command::svpressure, Command::affdim, Command::jsr,
                      Command::scan}) {
        if (name == to_string(c)) return c;
    }
    invalid_input("unknown command '" + name + "'");
}

double default_eps(Command c) { return c == Command::scan ? 1.0 : 0.1; }

std::string Report::render(Format f) const {
    if (f == Format::json) return data.dump(2) + "\n";
    std::ostringstream out;
    if (data.contains("rows")) {
        out << "s,lower,upper,exp_lower,exp_upper\n";
        for (const json& r : data["rows"]) {
            out << fmt(number_value(r["s"])) << ',' << fmt(number_value(r["lower"])) << ','
                << fmt(number_value(r["upper"])) << ',' << fmt(number_value(r["exp_lower"])) << ','
                << fmt(number_value(r["exp_upper"])) << '\n';
        }
        const json& j = data["jsr"];
        out << "# jsr [" << fmt(number_value(j["lower"])) << ", " << fmt(number_value(j["upper"])) << "] "
            << j["status"].get<std::string>() << '\n';
        return out.str();
    }
    for (const auto& [key, value] : data.items()) {
        if (value.is_object()) {
            for (const auto& [k2, v2] : value.items()) {
                out << key << '.' << k2 << ": "
                    << (v2.is_number_float() ? fmt(v2.get<double>()) : v2.is_string() ? v2.get<std::string>() : v2.dump())
                    << '\n';
            }
        } else if (value.is_number_float()) {
            out << key << ": " << fmt(value.get<double>()) << '\n';
        } else if (value.is_string()) {
            out << key << ": " << value.get<std::string>() << '\n';
        } else {
            out << key << ": " << value.dump() << '\n';
        }
    }
    return out.str();
}

Report error_report(const JobSpec& job, const std::string& message) {
    Report r;
    r.data = {{"command", to_string(job.command)}, {"input", job.input_path}, {"status", "error"},
              {"error", message}};
    r.exit_code = 1;
    return r;
}

Report run(const JobSpec& job) {
    FiniteMatrixMeasure mu;
    try {
        mu = parse_input(job.input_path);
    } catch (const Error& e) {
        return error_report(job, e.what());
    }
    return run(job, mu);
}

Report run(const JobSpec& job, const FiniteMatrixMeasure& mu) {
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    try {
        const double eps = job.eps.value_or(default_eps(job.command));
        if (!(eps > 0.0)) invalid_input("eps must be positive");
        if (job.workers == 0) invalid_input("workers must be at least 1");
        if ((job.command == Command::pressure || job.command == Command::svpressure) && !job.s) {
            invalid_input(std::string(to_string(job.command)) + " needs --s");
        }
        if (job.command == Command::pradius && !job.p) invalid_input("pradius needs --p");

        EngineOptions eng;
        eng.workers = job.workers;
        json params = {{"eps", eps},
                       {"max_n", job.budget.max_word_length},
                       {"max_words", job.budget.max_words},
                       {"time_limit", job.budget.wall_clock_cap},
                       {"workers", job.workers}};
        json& d = r.data;
        d["command"] = to_string(job.command);
        d["input"] = job.input_path;

        switch (job.command) {
            case Command::pressure: {
                const double s = parse_real(*job.s, "s");
                params["s"] = s;
                const PressureBracket b = estimate_M(mu, s, eps, {job.budget, eng});
                d["parameters"] = params;
                d.update(bracket_fields(b));
                r.exit_code = exit_for(b.status);
                break;
            }
            case Command::pradius: {
                const double p = parse_real(*job.p, "p");
                params["p"] = p;
                const PressureBracket b = p_radius(mu, p, eps, {job.budget, eng});
                d["parameters"] = params;
                d.update(bracket_fields(b));
                r.exit_code = exit_for(b.status);
                break;
            }
            case Command::svpressure: {
                SvOptions so{job.budget, eng, job.q_cap, 256};
                params["q_cap"] = job.q_cap;
                const std::string& text = *job.s;
                std::optional<Rational> exact;
                if (text.find_first_of("/+") != std::string::npos) {
                    exact = Rational::parse(text);
                } else {
                    try {
                        exact = Rational::parse(text, static_cast<std::int64_t>(job.q_cap));
                    } catch (const Error&) {
                    }
                }
                PressureBracket b;
                if (exact) {
                    params["s"] = exact->value();
                    params["s_rational"] = exact->str();
                    b = estimate_P(mu, *exact, eps, so);
                } else {
                    const double s = parse_real(text, "s");
                    params["s"] = s;
                    b = estimate_P(mu, s, eps, so);
                }
                d["parameters"] = params;
                d.update(bracket_fields(b));
                r.exit_code = exit_for(b.status);
                break;
            }
            case Command::affdim: {
                AffinityOptions ao{job.budget, eng, job.q_cap, 256};
                params["q_cap"] = job.q_cap;
                const AffinityResult a = affinity_dimension(mu, eps, ao);
                d["parameters"] = params;
                d["status"] = to_string(a.status);
                d["lower"] = number(a.interval.lo);
                d["upper"] = number(a.interval.hi);
                d["branch"] = to_string(a.branch);
                d["steps"] = a.steps;
                d["words_evaluated"] = a.words_evaluated;
                d["lower_bound_source"] = a.branch == AffinityBranch::determinant
                                              ? to_string(LowerBoundSource::determinant_formula)
                                              : (mu.dim() == 2 ? to_string(LowerBoundSource::planar_inequality)
                                                               : to_string(LowerBoundSource::lift_inequality));
                d["note"] = a.note;
                r.exit_code = exit_for(a.status);
                break;
            }
            case Command::jsr: {
                JsrOptions jo{job.budget, eng, true};
                const PressureBracket b = jsr_bracket(MatrixSet::support_of(mu), eps, jo);
                d["parameters"] = params;
                d.update(bracket_fields(b));
                d["lower_bound_source"] = "bochi-inequality+spectral-floor";
                r.exit_code = exit_for(b.status);
                break;
            }
            case Command::scan: {
                const std::vector<double> grid = job.s_list.empty() ? default_scan_grid() : job.s_list;
                params["s_list"] = grid;
                const ScanResult sc = zero_temperature_scan(mu, grid, eps, {job.budget, eng});
                d["parameters"] = params;
                json rows = json::array();
                BracketStatus worst = BracketStatus::certified;
                for (const ScanRow& row : sc.rows) {
                    json jr = bracket_fields(row.bracket);
                    jr["s"] = row.s;
                    jr["exp_lower"] = number(row.exp_lower);
                    jr["exp_upper"] = number(row.exp_upper);
                    rows.push_back(std::move(jr));
                    if (row.bracket.status == BracketStatus::budget_exhausted) worst = row.bracket.status;
                }
                if (sc.jsr.status == BracketStatus::budget_exhausted) worst = sc.jsr.status;
                d["status"] = to_string(worst);
                d["rows"] = std::move(rows);
                d["jsr"] = bracket_fields(sc.jsr);
                r.exit_code = exit_for(worst);
                break;
            }
        }
    } catch (const Error& e) {
        r = error_report(job, e.what());
    }
    r.data["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace matpress::cli
