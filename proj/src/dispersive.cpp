#include "cmag/dispersive.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cmag/error.hpp"

namespace cmag {

namespace {

bool vanishes(double detuning, double scale)
{
    return std::abs(detuning) <= 1e-12 * std::max(1.0, scale);
}

rmatrix2 detuning_matrix(const system_params& p)
{
    const std::array<double, 2> wc{p.omega_c0(), p.omega_c1()};
    const std::array<double, 2> wm{p.omega_m0(), p.omega_m1()};
    rmatrix2 d{};
    for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
            d[k][kp] = wm[kp] - wc[k];
        }
    }
    return d;
}

std::string describe(const system_params& p, int k, int kp)
{
    std::string msg = fmt::format("singular detuning Delta_{}{} = omega_m,{} - omega_c,{} = 0 "
                                  "(omega_c={}, delta_c={}, omega_m={}, delta_m={})",
                                  k, kp, kp, k, p.omega_c, p.delta_c, p.omega_m, p.delta_m);
    if (p.omega_m == p.omega_c && std::abs(p.delta_c) == std::abs(p.delta_m)) {
        msg += "; |delta_c| = |delta_m| at omega_m = omega_c";
    }
    return msg;
}

} // namespace

cmatrix2 coupling_matrix(const system_params& p)
{
    return {{{complex{p.g0}, complex{p.g0}},
             {complex{p.g1}, std::polar(p.g1, p.theta)}}};
}

complex effective_hamiltonian::magnon_coupling() const
{
    return magnon_magnon[0][1] + std::conj(magnon_magnon[1][0]);
}

Eigen::Matrix2cd effective_hamiltonian::magnon_block() const
{
    const complex g = magnon_coupling();
    Eigen::Matrix2cd m;
    // coefficient of m1^dagger m0 sits at (1, 0)
    m << shifted_magnon[0], std::conj(g), g, shifted_magnon[1];
    return m;
}

effective_hamiltonian compute_effective_hamiltonian(const system_params& p)
{
    p.validate();
    effective_hamiltonian eff;
    eff.detunings = detuning_matrix(p);
    const auto g = coupling_matrix(p);
    const auto& d = eff.detunings;
    const double scale = std::max(std::abs(p.omega_c), std::abs(p.omega_m));

    for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
            if (vanishes(d[k][kp], scale)) {
                throw singularity_error(describe(p, k, kp));
            }
            eff.small_parameters[k][kp] = g[k][kp] / d[k][kp];
        }
    }

    const std::array<double, 2> wc{p.omega_c0(), p.omega_c1()};
    const std::array<double, 2> wm{p.omega_m0(), p.omega_m1()};
    for (int k = 0; k < 2; ++k) {
        double cavity_shift = 0.0;
        double magnon_shift = 0.0;
        for (int l = 0; l < 2; ++l) {
            cavity_shift += std::norm(g[k][l]) / d[k][l];
            magnon_shift += std::norm(g[l][k]) / d[l][k];
        }
        eff.shifted_cavity[k] = wc[k] - cavity_shift;
        eff.shifted_magnon[k] = wm[k] + magnon_shift;
    }

    for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
            if (k == kp) {
                continue;
            }
            complex kappa{}, gmm{};
            for (int l = 0; l < 2; ++l) {
                kappa -= g[k][l] * std::conj(g[kp][l]) / (2.0 * d[k][l]);
                gmm += g[l][kp] * std::conj(g[l][k]) / (2.0 * d[l][kp]);
            }
            eff.photon_photon[k][kp] = kappa;
            eff.magnon_magnon[k][kp] = gmm;
        }
    }
    return eff;
}

complex magnon_magnon_coupling(const system_params& p)
{
    p.validate();
    if (std::abs(p.omega_m - p.omega_c) > 1e-12 * std::max(1.0, std::abs(p.omega_c))) {
        throw input_error(fmt::format(
            "closed-form G_theta requires omega_m = omega_c (got {} and {})", p.omega_m,
            p.omega_c));
    }
    const double denom = p.delta_c * p.delta_c - p.delta_m * p.delta_m;
    if (vanishes(std::abs(p.delta_c) - std::abs(p.delta_m), std::abs(p.delta_c))) {
        throw singularity_error(fmt::format(
            "singular magnon-magnon coupling: |delta_c| = |delta_m| ({} vs {})", p.delta_c,
            p.delta_m));
    }
    return p.delta_c / denom * (p.g0 * p.g0 - std::polar(p.g1 * p.g1, p.theta));
}

std::array<double, 2> shifted_magnon_closed_form(const system_params& p)
{
    p.validate();
    const double denom = p.delta_c * p.delta_c - p.delta_m * p.delta_m;
    if (vanishes(std::abs(p.delta_c) - std::abs(p.delta_m), std::abs(p.delta_c))) {
        throw singularity_error(fmt::format(
            "singular magnon shift: |delta_c| = |delta_m| ({} vs {})", p.delta_c, p.delta_m));
    }
    const double sum = p.g0 * p.g0 + p.g1 * p.g1;
    const double diff = p.g0 * p.g0 - p.g1 * p.g1;
    return {p.omega_m0() + (sum * p.delta_m + diff * p.delta_c) / denom,
            p.omega_m1() - (sum * p.delta_m - diff * p.delta_c) / denom};
}

validity_margin_result validity_margin(const system_params& p)
{
    p.validate();
    validity_margin_result r;
    const auto d = detuning_matrix(p);
    const auto g = coupling_matrix(p);
    const double scale = std::max(std::abs(p.omega_c), std::abs(p.omega_m));
    for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
            if (vanishes(d[k][kp], scale)) {
                r.singular = true;
                if (!r.offending) {
                    r.offending = std::pair{k, kp};
                }
                continue;
            }
            r.margin = std::max(r.margin, std::abs(g[k][kp]) / std::abs(d[k][kp]));
        }
    }
    return r;
}

} // namespace cmag
