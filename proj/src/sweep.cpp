#include "gdop/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "gdop/analysis.hpp"
#include "gdop/basis.hpp"
#include "gdop/errors.hpp"
#include "gdop/moments.hpp"
#include "gdop/operator.hpp"

namespace gdop::sweep {

using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

int resolve_jobs(int flag_jobs) {
    if (const char* env = std::getenv("GDOP_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    if (flag_jobs > 0) return flag_jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::variant<AnalyticSeries, std::string> resolve_function(const std::string& name) {
    if (auto f = AnalyticSeries::builtin(name)) return *f;
    std::ifstream in(name);
    if (!in) return "unknown function '" + name + "' (not a built-in, not a readable file)";
    json doc;
    try {
        in >> doc;
        std::vector<std::complex<double>> coeffs;
        for (const auto& c : doc.at("coeffs"))
            coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
        return AnalyticSeries::from_coefficients(doc.at("label").get<std::string>(),
                                                 doc.at("radius").get<double>(),
                                                 std::move(coeffs));
    } catch (const std::exception& e) {
        return "bad coefficient file '" + name + "': " + e.what();
    }
}

std::variant<ExperimentConfig, std::string> parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const std::exception& e) {
        return std::string("config is not valid JSON: ") + e.what();
    }
    ExperimentConfig cfg;
    try {
        cfg.functions = doc.at("functions").get<std::vector<std::string>>();
        cfg.n_values = doc.at("n_values").get<std::vector<int>>();
        for (const auto& s : doc.at("alphas").get<std::vector<std::string>>()) {
            auto a = Rational::parse(s);
            if (!a)
                return "alpha '" + s +
                       "' is not an exact rational; write it as num/den (decimals are rejected)";
            cfg.alphas.push_back(*a);
        }
        if (doc.contains("r")) cfg.r = doc.at("r").get<double>();
        if (doc.contains("r1")) cfg.r1 = doc.at("r1").get<double>();
        if (doc.contains("l_values")) cfg.l_values = doc.at("l_values").get<std::vector<int>>();
        if (doc.contains("trunc_tol")) cfg.trunc_tol = doc.at("trunc_tol").get<double>();
        if (doc.contains("grid_M")) cfg.grid_M = doc.at("grid_M").get<int>();
        if (doc.contains("output_format"))
            cfg.output_format = doc.at("output_format").get<std::string>();
        if (doc.contains("output_path")) cfg.output_path = doc.at("output_path").get<std::string>();
    } catch (const std::exception& e) {
        return std::string("config field error: ") + e.what();
    }
    if (cfg.functions.empty()) return std::string("config: functions must be nonempty");
    if (cfg.n_values.empty()) return std::string("config: n_values must be nonempty");
    for (int n : cfg.n_values)
        if (n < 1) return std::string("config: n_values entries must be >= 1");
    if (cfg.alphas.empty()) return std::string("config: alphas must be nonempty");
    if (cfg.r < 1.0) return std::string("config: r must be >= 1");
    if (!cfg.l_values.empty()) {
        if (!(cfg.r < cfg.r1)) return std::string("config: need 1 <= r < r1 when l_values is set");
        for (int l : cfg.l_values)
            if (l < 1) return std::string("config: l_values entries must be >= 1");
    }
    if (cfg.grid_M < 8) return std::string("config: grid_M must be >= 8");
    if (cfg.trunc_tol <= 0) return std::string("config: trunc_tol must be positive");
    if (cfg.output_format != "csv" && cfg.output_format != "json")
        return std::string("config: output_format must be csv or json");
    return cfg;
}

namespace {

struct Row {
    analysis::ConvergenceRecord rec;
    double bound_ratio = 0.0;
};

void write_csv(std::ostream& out, const ExperimentConfig& cfg, const std::vector<Row>& rows) {
    out << "f_label,n,alpha,r,sup_error,bound,bound_ratio,voronovskaja_residual";
    for (int l : cfg.l_values) out << ",deriv_err_l" << l;
    out << "\n";
    for (const auto& row : rows) {
        const auto& rec = row.rec;
        out << rec.f_label << ',' << rec.n << ',' << rec.alpha.str() << ','
            << format_double(rec.r) << ',' << format_double(rec.sup_error) << ','
            << format_double(rec.bound) << ',' << format_double(row.bound_ratio) << ','
            << format_double(rec.voronovskaja_residual);
        for (int l : cfg.l_values) out << ',' << format_double(rec.derivative_errors.at(l));
        out << "\n";
    }
}

void write_json(std::ostream& out, const ExperimentConfig& cfg, const std::vector<Row>& rows) {
    json doc;
    doc["rows"] = json::array();
    for (const auto& row : rows) {
        const auto& rec = row.rec;
        json r;
        r["f_label"] = rec.f_label;
        r["n"] = rec.n;
        r["alpha"] = rec.alpha.str();
        r["r"] = rec.r;
        r["sup_error"] = rec.sup_error;
        r["bound"] = rec.bound;
        r["bound_ratio"] = row.bound_ratio;
        r["voronovskaja_residual"] = rec.voronovskaja_residual;
        for (int l : cfg.l_values)
            r["deriv_err_l" + std::to_string(l)] = rec.derivative_errors.at(l);
        doc["rows"].push_back(std::move(r));
    }
    out << doc.dump(2) << "\n";
}

}  // namespace

int run_sweep(const ExperimentConfig& cfg, int jobs, std::ostream& out, std::ostream& log) {
    std::vector<AnalyticSeries> fns;
    for (const auto& name : cfg.functions) {
        auto r = resolve_function(name);
        if (std::holds_alternative<std::string>(r)) {
            log << "config: " << std::get<std::string>(r) << "\n";
            return 2;
        }
        fns.push_back(std::get<AnalyticSeries>(std::move(r)));
    }
    for (const auto& a : cfg.alphas)
        if (a < Rational(0) || a > Rational(1))
            log << "warning: alpha=" << a.str()
                << " is outside [0,1]; the basis loses positivity there\n";

    const std::size_t per_f = cfg.n_values.size() * cfg.alphas.size();
    const std::size_t total = fns.size() * per_f;
    std::vector<Row> rows(total);
    const op::TruncationPolicy trunc{cfg.trunc_tol, 256};

    try {
        parallel_for(total, jobs, [&](std::size_t idx) {
            const std::size_t fi = idx / per_f;
            const std::size_t rest = idx % per_f;
            const std::size_t ni = rest / cfg.alphas.size();
            const std::size_t ai = rest % cfg.alphas.size();
            const AnalyticSeries& f = fns[fi];
            const op::DiskSpec disk{cfg.r, f.radius(), cfg.grid_M};
            Row row;
            row.rec = analysis::make_record(f, cfg.n_values[ni], cfg.alphas[ai], disk, trunc,
                                            cfg.l_values, cfg.r1);
            row.bound_ratio = row.rec.bound > 0.0 ? row.rec.sup_error / row.rec.bound : 0.0;
            rows[idx] = std::move(row);
        });
    } catch (const BoundViolation& e) {
        log << "bound violation: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        log << "sweep failed: " << e.what() << "\n";
        return 2;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path, std::ios::binary);
        if (!file) {
            log << "cannot open output path: " << cfg.output_path << "\n";
            return 2;
        }
        sink = &file;
    }
    if (cfg.output_format == "csv")
        write_csv(*sink, cfg, rows);
    else
        write_json(*sink, cfg, rows);
    return 0;
}

namespace {

struct VerifyScope {
    int max_n;
    int max_p;
    std::vector<Rational> alphas;
};

VerifyScope scope_for(VerifyLevel level) {
    if (level == VerifyLevel::fast)
        return {12, 8, {Rational(0), Rational(1, 2), Rational(1)}};
    return {30, 12,
            {Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(1)}};
}

}  // namespace

bool run_verify(VerifyLevel level, std::ostream& log, const std::optional<FaultInjection>& fault) {
    const VerifyScope scope = scope_for(level);
    auto fail = [&log](const std::string& name, const std::string& detail) {
        log << "FAIL " << name << ": " << detail << "\n";
        return false;
    };

    // basis identities
    for (int n = 1; n <= scope.max_n; ++n) {
        for (const auto& a : scope.alphas) {
            QPoly sum = QPoly::zero();
            for (int k = 0; k <= n; ++k) sum = sum + basis::alpha_basis_poly(n, k, a);
            if (sum != QPoly::one())
                return fail("basis-partition-of-unity",
                            "n=" + std::to_string(n) + ", alpha=" + a.str());
        }
        for (int k = 0; k <= n; ++k)
            if (basis::alpha_basis_poly(n, k, Rational(1)) != basis::bernstein_poly(n, k))
                return fail("basis-alpha-one-reduction",
                            "n=" + std::to_string(n) + ", k=" + std::to_string(k));
    }
    log << "ok  basis identities (n <= " << scope.max_n << ")\n";

    for (int p = 1; p <= 10; ++p)
        for (int q = 1; q <= 10; ++q)
            if (!moments::beta_step_identity_check(p, q))
                return fail("beta-step-identity", "p=" + std::to_string(p) +
                                                      ", q=" + std::to_string(q));
    log << "ok  beta step identity ((p,q) in [1,10]^2)\n";

    // dual-path equality, with the optional fault hook on the closed form
    for (int n = 2; n <= scope.max_n; ++n) {
        for (const auto& a : scope.alphas) {
            const auto rec = moments::monomial_image_recurrence(n, a, scope.max_p);
            auto closed = moments::monomial_image_closed(n, a, scope.max_p);
            if (fault && fault->n == n && fault->alpha == a && fault->p <= scope.max_p) {
                auto coeffs = closed.images[static_cast<std::size_t>(fault->p)].coeffs();
                coeffs.resize(std::max<std::size_t>(coeffs.size(), 1), Rational(0));
                coeffs[0] += Rational(1, 97);
                closed.images[static_cast<std::size_t>(fault->p)] = QPoly(std::move(coeffs));
            }
            for (int p = 0; p <= scope.max_p; ++p)
                if (rec.image(p) != closed.image(p))
                    return fail("moment-dual-path", "images disagree at n=" + std::to_string(n) +
                                                        ", alpha=" + a.str() +
                                                        ", p=" + std::to_string(p));
        }
    }
    log << "ok  dual-path moment equality (n <= " << scope.max_n << ", p <= " << scope.max_p
        << ", " << scope.alphas.size() << " alphas)\n";

    // defining-sum oracle
    for (int n = 2; n <= std::min(8, scope.max_n); ++n)
        for (const auto& a : scope.alphas)
            for (int p = 0; p <= 6; ++p) {
                const QPoly oracle = moments::defining_sum_monomial_image(n, a, p);
                if (moments::monomial_image_closed(n, a, p).image(p) != oracle)
                    return fail("moment-defining-sum", "closed form vs defining sum at n=" +
                                                           std::to_string(n) + ", alpha=" +
                                                           a.str() + ", p=" + std::to_string(p));
            }
    log << "ok  defining-sum oracle (n <= " << std::min(8, scope.max_n) << ", p <= 6)\n";

    // quadratic image closed form
    for (int n = 2; n <= scope.max_n; ++n)
        for (const auto& a : scope.alphas) {
            const Rational c = Rational(2, n + 1) * (Rational(1) + (Rational(1) - a) / Rational(n));
            const QPoly expected =
                QPoly::monomial(2) +
                c * QPoly(std::vector<Rational>{Rational(0), Rational(1), Rational(-1)});
            if (moments::monomial_image_closed(n, a, 2).image(2) != expected)
                return fail("quadratic-image", "n=" + std::to_string(n) + ", alpha=" + a.str());
        }
    log << "ok  quadratic image closed form\n";

    // structure: endpoint values, degree bound, difference nonnegativity,
    // leading coefficient
    for (const auto& a : scope.alphas) {
        const auto table = moments::monomial_image_closed(16, a, std::min(scope.max_p, 12));
        for (int p = 0; p <= table.max_p(); ++p) {
            if (table.image(p)(Rational(1)) != Rational(1))
                return fail("image-endpoint-one", "p=" + std::to_string(p) + ", alpha=" + a.str());
            if (p >= 1 && table.image(p)(Rational(0)) != Rational(0))
                return fail("image-endpoint-zero", "p=" + std::to_string(p));
            if (table.image(p).degree() > std::min(16, p))
                return fail("image-degree-bound", "p=" + std::to_string(p));
        }
        for (int p = 2; p <= 6; ++p) {
            const Rational lead = moments::leading_coefficient_product(16, a, p);
            if (!(Rational(0) < lead && lead <= Rational(1)))
                return fail("leading-coefficient-range", "p=" + std::to_string(p));
            const Rational gap = Rational(1) - lead;
            const Rational budget = Rational(p * (p - 1)) *
                                    ((Rational(1) - a) / Rational(16) + a / Rational(17));
            if (gap > budget)
                return fail("leading-coefficient-bound",
                            "p=" + std::to_string(p) + ", alpha=" + a.str());
        }
    }
    {
        const auto fm = moments::FactorialMoments::build(8, 10);
        for (int p = 0; p <= 10; ++p)
            for (int s = 0; s <= p; ++s)
                if (fm.dE[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)] < Rational(0) ||
                    fm.dF[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)] < Rational(0))
                    return fail("difference-nonnegativity",
                                "p=" + std::to_string(p) + ", s=" + std::to_string(s));
    }
    log << "ok  image structure (endpoints, degrees, differences, leading coefficients)\n";

    if (level == VerifyLevel::full) {
        const AnalyticSeries f = AnalyticSeries::exponential();
        const Rational half(1, 2);
        const op::DiskSpec disk{1.0, 8.0, 720};
        const op::TruncationPolicy trunc;
        auto fn = [](double t) -> std::complex<double> { return std::exp(t); };
        for (int ri = 0; ri < 5; ++ri)
            for (int ti = 0; ti < 5; ++ti) {
                const std::complex<double> z =
                    std::polar(0.25 * ri, 2.0 * M_PI * ti / 5.0);
                const auto series_value = op::apply_analytic(f, 10, half, z, disk, trunc).value;
                const auto quad_value =
                    op::apply_quadrature(fn, 1.0, std::exp(1.0), 10, half, z, 1e-11);
                if (std::abs(series_value - quad_value) > 1e-10)
                    return fail("quadrature-vs-series",
                                "|diff|=" + format_double(std::abs(series_value - quad_value)) +
                                    " at z index (" + std::to_string(ri) + "," +
                                    std::to_string(ti) + ")");
            }
        log << "ok  quadrature route matches series route (n=10)\n";

        for (int l = 1; l <= 2; ++l)
            for (double theta : {0.3, 2.1, 4.4}) {
                const std::complex<double> z = std::polar(0.6, theta);
                const auto direct = op::operator_derivative(f, 8, half, l, z, disk, trunc).value;
                const auto contour = op::contour_derivative(f, 8, half, l, z, 1.5, 256);
                if (std::abs(direct - contour) > 1e-9)
                    return fail("contour-vs-series-derivative",
                                "l=" + std::to_string(l) +
                                    ", |diff|=" + format_double(std::abs(direct - contour)));
            }
        log << "ok  contour derivative matches exact differentiation (n=8, l=1,2)\n";
    }

    log << "verify: all checks passed (" << (level == VerifyLevel::fast ? "fast" : "full")
        << ")\n";
    return true;
}

int export_moments(int n, const Rational& alpha, int max_p, const std::string& path,
                   std::ostream& log) {
    try {
        const auto table = moments::monomial_image_closed(n, alpha, max_p);
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            log << "cannot open output path: " << path << "\n";
            return 2;
        }
        out << table.to_json() << "\n";
        if (!out) {
            log << "write failed: " << path << "\n";
            return 2;
        }
        return 0;
    } catch (const ExactCapError& e) {
        log << e.what() << "\n";
        return 2;
    }
}

}  // namespace gdop::sweep
