#include "reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace qnetcap::testing {

ValueGraph random_connected_graph(std::mt19937_64& rng, std::size_t max_n) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ValueGraph g;
    g.n = std::uniform_int_distribution<std::size_t>(2, max_n)(rng);
    std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n, false));
    for (std::size_t v = 1; v < g.n; ++v) {
        const auto u = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
        adj[u][v] = adj[v][u] = true;
        g.edges.emplace_back(u, v, unit(rng));
    }
    const double p = unit(rng);
    for (std::size_t u = 0; u < g.n; ++u) {
        for (std::size_t v = u + 1; v < g.n; ++v) {
            if (!adj[u][v] && unit(rng) < p) {
                adj[u][v] = adj[v][u] = true;
                g.edges.emplace_back(u, v, unit(rng));
            }
        }
    }
    g.alpha = std::uniform_int_distribution<std::size_t>(0, g.n - 1)(rng);
    do {
        g.beta = std::uniform_int_distribution<std::size_t>(0, g.n - 1)(rng);
    } while (g.beta == g.alpha);
    return g;
}

double exhaustive_min_cut(const ValueGraph& g) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1U << g.n); ++mask) {
        if (!((mask >> g.alpha) & 1U) || ((mask >> g.beta) & 1U)) continue;
        double sum = 0.0;
        for (const auto& [u, v, c] : g.edges) {
            if (((mask >> u) & 1U) != ((mask >> v) & 1U)) sum += c;
        }
        best = std::min(best, sum);
    }
    return best;
}

namespace {

void extend(const ValueGraph& g, std::size_t u, double bottleneck, std::vector<bool>& visited,
            double& best) {
    if (u == g.beta) {
        best = std::max(best, bottleneck);
        return;
    }
    visited[u] = true;
    for (const auto& [a, b, c] : g.edges) {
        std::size_t w = g.n;
        if (a == u) w = b;
        if (b == u) w = a;
        if (w < g.n && !visited[w]) extend(g, w, std::min(bottleneck, c), visited, best);
    }
    visited[u] = false;
}

}  // namespace

double exhaustive_widest_path(const ValueGraph& g) {
    std::vector<bool> visited(g.n, false);
    double best = 0.0;
    extend(g, g.alpha, std::numeric_limits<double>::infinity(), visited, best);
    return best;
}

double binary_entropy(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    return -u * std::log2(u) - (1.0 - u) * std::log2(1.0 - u);
}

double thermal_entropy(double x) {
    if (x <= 0.0) return 0.0;
    return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

double grid_ad_rci(double p, int points) {
    auto f = [p](double u) { return binary_entropy(u) - binary_entropy(u * p); };
    int best = 0;
    double best_value = f(0.0);
    for (int i = 1; i < points; ++i) {
        const double value = f(static_cast<double>(i) / (points - 1));
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    if (best == 0 || best == points - 1) return best_value;
    const double h = 1.0 / (points - 1);
    const double x1 = best * h;
    const double f0 = f(x1 - h), f1 = best_value, f2 = f(x1 + h);
    const double denom = f0 - 2.0 * f1 + f2;
    if (denom >= 0.0) return best_value;
    const double x = x1 + 0.5 * h * (f0 - f2) / denom;
    return std::max(best_value, f(x));
}

}  // namespace qnetcap::testing
