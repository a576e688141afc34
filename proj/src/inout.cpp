#include "cmag/inout.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cmag/dispersive.hpp"
#include "cmag/error.hpp"

namespace cmag {

namespace {

constexpr double singular_rcond = 1e-14;

} // namespace

complex s21_closed_form(const system_params& p, double probe)
{
    if (!std::isfinite(probe)) {
        throw input_error("probe frequency must be finite");
    }
    const complex i{0.0, 1.0};
    const auto g = coupling_matrix(p);
    const std::array<double, 2> wc{p.omega_c0(), p.omega_c1()};
    const std::array<double, 2> wm{p.omega_m0(), p.omega_m1()};

    // Detunings against complexified frequencies omega - i kappa.
    const std::array<complex, 2> dc{complex{probe - wc[0], p.kappa},
                                    complex{probe - wc[1], p.kappa}};
    const std::array<complex, 2> dm{complex{probe - wm[0], p.kappa},
                                    complex{probe - wm[1], p.kappa}};
    const complex dmm = dm[0] * dm[1];

    std::array<complex, 2> a_coef;
    for (int k = 0; k < 2; ++k) {
        const double port = 0.5 * (p.gamma_a[k] + p.gamma_b[k]);
        a_coef[k] = (dc[k] + i * port) * dmm - std::norm(g[k][0]) * dm[1] -
                    std::norm(g[k][1]) * dm[0];
    }
    auto b_coef = [&](int k, int kp) {
        const double port = 0.5 * (std::sqrt(p.gamma_a[k] * p.gamma_a[kp]) +
                                   std::sqrt(p.gamma_b[k] * p.gamma_b[kp]));
        return i * port * dmm - std::conj(g[k][0]) * g[kp][0] * dm[1] -
               std::conj(g[k][1]) * g[kp][1] * dm[0];
    };
    const complex b01 = b_coef(0, 1);
    const complex b10 = b_coef(1, 0);
    const complex oa0 = i * std::sqrt(p.gamma_a[0]) * dmm;
    const complex oa1 = i * std::sqrt(p.gamma_a[1]) * dmm;

    const complex denom = b10 * b01 - a_coef[0] * a_coef[1];
    const double scale = std::abs(b10 * b01) + std::abs(a_coef[0] * a_coef[1]);
    if (!(std::abs(denom) > 1e-15 * scale) || denom == complex{}) {
        throw singularity_error(
            fmt::format("closed-form S21 denominator vanishes at probe {} GHz", probe));
    }
    return std::sqrt(p.gamma_b[0]) * (oa0 * a_coef[1] - oa1 * b01) / denom -
           std::sqrt(p.gamma_b[1]) * (oa0 * b10 - oa1 * a_coef[0]) / denom;
}

complex s21_general(const coupling_graph& graph, std::string_view bath_in,
                    std::string_view bath_out, double probe)
{
    if (!std::isfinite(probe)) {
        throw input_error("probe frequency must be finite");
    }
    const auto h = build_hamiltonian(graph);
    const auto n = static_cast<Eigen::Index>(h.size());

    Eigen::VectorXd in = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    bool has_in = false, has_out = false;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& m = graph.mode_at(h.ids[static_cast<std::size_t>(k)]);
        for (const auto& [label, rate] : m.baths) {
            if (label == bath_in) {
                in(k) = std::sqrt(rate);
                has_in = true;
            }
            if (label == bath_out) {
                out(k) = std::sqrt(rate);
                has_out = true;
            }
        }
    }
    if (!has_in) {
        throw input_error(fmt::format("no mode couples to bath '{}'", bath_in));
    }
    if (!has_out) {
        throw input_error(fmt::format("no mode couples to bath '{}'", bath_out));
    }

    const complex i{0.0, 1.0};
    Eigen::MatrixXcd m = -h.entries;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& mk = graph.mode_at(h.ids[static_cast<std::size_t>(k)]);
        m(k, k) = probe - mk.frequency + i * mk.kappa;
        for (Eigen::Index kp = 0; kp < n; ++kp) {
            const auto& mkp = graph.mode_at(h.ids[static_cast<std::size_t>(kp)]);
            double port = 0.0;
            for (const auto& [label, rate] : mk.baths) {
                auto other = mkp.baths.find(label);
                if (other != mkp.baths.end()) {
                    port += k == kp ? rate : std::sqrt(rate * other->second);
                }
            }
            m(k, kp) += 0.5 * i * port;
        }
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    // rcond() alone misses exactly zero pivots, so check the U diagonal too
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double pivot_ratio = pivots.minCoeff() / pivots.maxCoeff();
    if (!(pivot_ratio > singular_rcond) || !(lu.rcond() > singular_rcond)) {
        throw singularity_error(
            fmt::format("response matrix is singular at probe {} GHz (lossless resonance)",
                        probe));
    }
    const Eigen::VectorXcd v = lu.solve(Eigen::VectorXcd(-i * in.cast<complex>()));
    return out.cast<complex>().dot(v);
}

probe_grid probe_grid::uniform(double start, double stop, int steps, const sweep_spec& sweep)
{
    sweep_spec axis{sweep_parameter::omega_m, start, stop, steps};
    axis.validate();
    probe_grid grid;
    grid.sweep = sweep;
    for (int j = 0; j < steps; ++j) {
        grid.frequencies.push_back(axis.value(j));
    }
    return grid;
}

void probe_grid::validate() const
{
    sweep.validate();
    if (frequencies.empty()) {
        throw input_error("probe grid is empty");
    }
    for (std::size_t j = 0; j < frequencies.size(); ++j) {
        if (!std::isfinite(frequencies[j]) || (j > 0 && !(frequencies[j] > frequencies[j - 1]))) {
            throw input_error("probe frequencies must be finite and strictly increasing");
        }
    }
}

} // namespace cmag
