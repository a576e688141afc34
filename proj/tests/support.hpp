#ifndef CMAG_TESTS_SUPPORT_HPP
#define CMAG_TESTS_SUPPORT_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cmag/inout.hpp"
#include "cmag/model.hpp"
#include "cmag/spectrum.hpp"

namespace cmag::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/*
 * Connected random graph: 1..3 cavities with baths a/b, 1..3 magnons,
 * a random spanning tree plus a few extra edges. Phases uniform.
 */
inline coupling_graph random_graph(std::mt19937_64& rng)
{
    coupling_graph g;
    const int n_cav = std::uniform_int_distribution<int>(1, 3)(rng);
    const int n_mag = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<std::string> ids;
    for (int i = 0; i < n_cav; ++i) {
        mode m;
        m.id = "c" + std::to_string(i);
        m.kind = mode_kind::cavity;
        m.frequency = uniform(rng, 3.0, 7.0);
        m.kappa = uniform(rng, 1e-4, 5e-3);
        m.baths["a"] = uniform(rng, 1e-3, 1e-2);
        m.baths["b"] = uniform(rng, 1e-3, 1e-2);
        ids.push_back(m.id);
        g.add_mode(m);
    }
    for (int i = 0; i < n_mag; ++i) {
        mode m;
        m.id = "m" + std::to_string(i);
        m.kind = mode_kind::magnon;
        m.frequency = uniform(rng, 3.0, 7.0);
        m.kappa = uniform(rng, 1e-4, 5e-3);
        ids.push_back(m.id);
        g.add_mode(m);
    }
    std::vector<std::pair<std::size_t, std::size_t>> used;
    auto add = [&](std::size_t a, std::size_t b) {
        const std::pair<std::size_t, std::size_t> key = std::minmax(a, b);
        if (std::find(used.begin(), used.end(), key) != used.end()) {
            return;
        }
        used.push_back(key);
        g.add_coupling(ids[a], ids[b], uniform(rng, 0.01, 0.3), uniform(rng, 0.0, two_pi));
    };
    for (std::size_t i = 1; i < ids.size(); ++i) {
        add(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng), i);
    }
    const int extra = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int e = 0; e < extra; ++e) {
        std::size_t a = std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng);
        std::size_t b = std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng);
        if (a != b) {
            add(a, b);
        }
    }
    return g;
}

/// Random two-sphere parameters with positive loss.
inline system_params random_params(std::mt19937_64& rng)
{
    system_params p;
    p.omega_c = uniform(rng, 3.0, 7.0);
    p.delta_c = uniform(rng, 0.2, 1.5);
    p.omega_m = p.omega_c + uniform(rng, -1.5, 1.5);
    p.delta_m = uniform(rng, -0.3, 0.3);
    p.g0 = uniform(rng, 0.0, 0.3);
    p.g1 = uniform(rng, 0.0, 0.3);
    p.theta = uniform(rng, 0.0, two_pi);
    p.kappa = uniform(rng, 1e-4, 1e-2);
    for (auto& r : p.gamma_a) r = uniform(rng, 1e-3, 2e-2);
    for (auto& r : p.gamma_b) r = uniform(rng, 1e-3, 2e-2);
    return p;
}

inline double abs_s21(const system_params& p, double w)
{
    return std::abs(s21_closed_form(p, w));
}

/// Largest interior local maximum of |S21| on a fine grid over [w - half, w + half].
inline std::optional<double> local_peak(const system_params& p, double w, double half,
                                        int points = 801)
{
    std::vector<double> f(points);
    for (int j = 0; j < points; ++j) {
        f[j] = abs_s21(p, w - half + 2.0 * half * j / (points - 1));
    }
    std::optional<double> best;
    for (int j = 1; j + 1 < points; ++j) {
        if (f[j] > f[j - 1] && f[j] >= f[j + 1] && (!best || f[j] > *best)) {
            best = f[j];
        }
    }
    return best;
}

/// True when |S21| at w is not smaller than at w +/- h.
inline bool is_local_max(const system_params& p, double w, double h = 1e-4)
{
    const double v = abs_s21(p, w);
    return v >= abs_s21(p, w - h) && v >= abs_s21(p, w + h);
}

inline std::size_t dimmest(const polariton_set& pols)
{
    return static_cast<std::size_t>(
        std::min_element(pols.brightness.begin(), pols.brightness.end()) -
        pols.brightness.begin());
}

} // namespace cmag::testing

#endif
