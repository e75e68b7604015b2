#include <iostream>

#include <CLI11.hpp>

#include "matpress/cli.hpp"
#include "matpress/error.hpp"

using namespace matpress;

int main(int argc, char** argv) {
    CLI::App app{"Certified brackets for matrix pressures, affinity dimension and joint spectral radius"};
    std::string command, format = "text";
    cli::JobSpec job;
    std::string s, p;
    double eps = 0.0;
    app.add_option("command", command, "pressure | pradius | svpressure | affdim | jsr | scan")
        ->required()
        ->check(CLI::IsMember({"pressure", "pradius", "svpressure", "affdim", "jsr", "scan"}));
    app.add_option("input", job.input_path, "measure document (JSON)")->required();
    auto* s_opt = app.add_option("--s", s, "exponent, real or rational such as 3/2 or 1+1/2");
    auto* p_opt = app.add_option("--p", p, "p for the p-radius");
    auto* eps_opt = app.add_option("--eps", eps, "target bracket width (default 0.1, scan 1.0)");
    app.add_option("--max-n", job.budget.max_word_length, "longest word length")->capture_default_str();
    app.add_option("--max-words", job.budget.max_words, "word evaluation budget")->capture_default_str();
    app.add_option("--time-limit", job.budget.wall_clock_cap, "wall clock limit in seconds")->capture_default_str();
    app.add_option("--workers", job.workers, "worker threads")->capture_default_str();
    app.add_option("--q-cap", job.q_cap, "largest lift denominator")->capture_default_str();
    app.add_option("--s-list", job.s_list, "scan exponents, increasing")->delimiter(',');
    app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    job.format = format == "json" ? cli::Format::json : cli::Format::text;
    job.command = cli::parse_command(command);
    if (*s_opt) job.s = s;
    if (*p_opt) job.p = p;
    if (*eps_opt) job.eps = eps;

    const cli::Report r = cli::run(job);
    if (r.exit_code == 1) {
        std::cerr << "error: " << r.data.value("error", std::string("invalid input")) << '\n';
        if (job.format == cli::Format::json) std::cout << r.render(job.format);
        return 1;
    }
    std::cout << r.render(job.format);
    return r.exit_code;
}
