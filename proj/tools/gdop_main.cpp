// Command-line front end: experiment sweeps over (f, n, alpha, r), the
// verification suite, and exact moment-table export.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gdop/errors.hpp"
#include "gdop/kernels.hpp"
#include "gdop/rational.hpp"
#include "gdop/sweep.hpp"

namespace {

gdop::Rational parse_alpha_or_exit(const std::string& text) {
    auto a = gdop::Rational::parse(text);
    if (!a) {
        std::cerr << "alpha '" << text
                  << "' is not an exact rational; write it as num/den, e.g. 1/3 "
                     "(decimals are not accepted)\n";
        std::exit(2);
    }
    if (*a < gdop::Rational(0) || *a > gdop::Rational(1))
        std::cerr << "warning: alpha=" << a->str()
                  << " is outside [0,1]; the basis loses positivity there\n";
    return *a;
}

std::optional<gdop::sweep::FaultInjection> parse_fault(const std::string& text) {
    if (text.empty()) return std::nullopt;
    // n:alpha:p
    std::istringstream in(text);
    std::string n_part, a_part, p_part;
    if (!std::getline(in, n_part, ':') || !std::getline(in, a_part, ':') ||
        !std::getline(in, p_part)) {
        std::cerr << "--inject-fault expects n:alpha:p\n";
        std::exit(2);
    }
    auto alpha = gdop::Rational::parse(a_part);
    if (!alpha) {
        std::cerr << "--inject-fault alpha must be an exact rational\n";
        std::exit(2);
    }
    gdop::sweep::FaultInjection fault;
    try {
        fault.n = std::stoi(n_part);
        fault.p = std::stoi(p_part);
    } catch (const std::exception&) {
        std::cerr << "--inject-fault n and p must be integers\n";
        std::exit(2);
    }
    fault.alpha = *alpha;
    return fault;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genuine alpha-Bernstein-Durrmeyer operators: exact moments, disk "
                 "evaluation, convergence experiments"};
    app.require_subcommand(1);

    auto* sweep_cmd = app.add_subcommand("sweep", "run a (f, n, alpha) experiment sweep");
    std::string config_path;
    int jobs = 0;
    sweep_cmd->add_option("--config", config_path, "JSON experiment config")->required();
    sweep_cmd->add_option("--jobs", jobs, "worker count (default: available parallelism)");

    auto* verify_cmd = app.add_subcommand("verify", "run the assertion suite");
    bool full = false;
    std::string fault_text;
    verify_cmd->add_flag("--full", full, "extended ranges plus cross-route checks");
    verify_cmd->add_option("--inject-fault", fault_text, "test hook, n:alpha:p")
        ->group("");  // hidden

    auto* export_cmd = app.add_subcommand("export-moments", "write an exact moment table as JSON");
    int n = 0, max_p = 0;
    std::string alpha_text, out_path;
    export_cmd->add_option("--n", n, "operator order")->required();
    export_cmd->add_option("--alpha", alpha_text, "shape parameter as num/den")->required();
    export_cmd->add_option("--max-p", max_p, "largest monomial exponent")->required();
    export_cmd->add_option("--out", out_path, "output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "cannot read config: " << config_path << "\n";
                return 2;
            }
            std::stringstream buffer;
            buffer << in.rdbuf();
            auto parsed = gdop::sweep::parse_config(buffer.str());
            if (std::holds_alternative<std::string>(parsed)) {
                std::cerr << std::get<std::string>(parsed) << "\n";
                return 2;
            }
            const auto& cfg = std::get<gdop::sweep::ExperimentConfig>(parsed);
            return gdop::sweep::run_sweep(cfg, gdop::sweep::resolve_jobs(jobs), std::cout,
                                          std::cerr);
        }
        if (verify_cmd->parsed()) {
            const auto fault = parse_fault(fault_text);
            const auto level =
                full ? gdop::sweep::VerifyLevel::full : gdop::sweep::VerifyLevel::fast;
            std::cerr << "kernel backend: "
                      << gdop::kernels::backend_name(gdop::kernels::active_backend()) << "\n";
            return gdop::sweep::run_verify(level, std::cout, fault) ? 0 : 1;
        }
        if (export_cmd->parsed()) {
            const auto alpha = parse_alpha_or_exit(alpha_text);
            return gdop::sweep::export_moments(n, alpha, max_p, out_path, std::cerr);
        }
    } catch (const gdop::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
