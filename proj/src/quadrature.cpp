#include "gdop/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "gdop/errors.hpp"

namespace gdop::quadrature {

namespace {

// Nodes as roots of the Legendre polynomial on [-1,1] by Newton iteration,
// then mapped to [0,1].
Rule build(int count) {
    if (count < 1) throw Error("gauss_legendre: count must be >= 1");
    Rule rule;
    rule.nodes.resize(static_cast<std::size_t>(count));
    rule.weights.resize(static_cast<std::size_t>(count));
    const int half = (count + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (count + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= count; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = count * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
        rule.nodes[static_cast<std::size_t>(count - 1 - i)] = 0.5 * (1.0 + x);
        rule.weights[static_cast<std::size_t>(i)] = 0.5 * w;
        rule.weights[static_cast<std::size_t>(count - 1 - i)] = 0.5 * w;
    }
    return rule;
}

}  // namespace

const Rule& gauss_legendre(int count) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Rule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[count];
    if (!slot) slot = std::make_unique<Rule>(build(count));
    return *slot;
}

}  // namespace gdop::quadrature
