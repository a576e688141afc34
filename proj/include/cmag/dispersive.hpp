#ifndef CMAG_DISPERSIVE_HPP
#define CMAG_DISPERSIVE_HPP

#include <array>
#include <optional>

#include "cmag/model.hpp"

namespace cmag {

using cmatrix2 = std::array<std::array<complex, 2>, 2>;
using rmatrix2 = std::array<std::array<double, 2>, 2>;

/// Couplings g_kk' between cavity c_k and magnon m_k' (term g_kk' c_k m_k'^dagger).
cmatrix2 coupling_matrix(const system_params& params);

/*
 * First-order Schrieffer-Wolff effective Hamiltonian of the two-sphere
 * system. Index convention: detunings[k][k'] = omega_m,k' - omega_c,k.
 * magnon_magnon[k][k'] multiplies m_k m_k'^dagger, photon_photon[k][k']
 * multiplies c_k c_k'^dagger (each plus h.c.). Diagonal entries of the
 * coupling blocks are zero. The constant energy offset is dropped.
 */
struct effective_hamiltonian
{
    std::array<double, 2> shifted_cavity{};
    std::array<double, 2> shifted_magnon{};
    cmatrix2 photon_photon{};
    cmatrix2 magnon_magnon{};
    rmatrix2 detunings{};
    cmatrix2 small_parameters{};

    /// Net coefficient of m0 m1^dagger: G_01 + conj(G_10).
    complex magnon_coupling() const;

    /// 2x2 magnon block in the (m0, m1) basis, same convention as build_hamiltonian.
    Eigen::Matrix2cd magnon_block() const;
};

/// Throws singularity_error naming (k, k') if any detuning vanishes.
effective_hamiltonian compute_effective_hamiltonian(const system_params& params);

/*
 * Closed-form virtual-photon coupling for omega_m = omega_c:
 * G_theta = delta_c (g0^2 - e^{i theta} g1^2) / (delta_c^2 - delta_m^2).
 */
complex magnon_magnon_coupling(const system_params& params);

/*
 * Closed-form shifted magnon frequencies for omega_m = omega_c,
 * omega_m,k + sum_l g_l^2 / Delta_lk written over the common denominator
 * delta_c^2 - delta_m^2.
 */
std::array<double, 2> shifted_magnon_closed_form(const system_params& params);

struct validity_margin_result
{
    bool singular = false;
    double margin = 0.0; ///< max |lambda_kk'|, meaningful only when !singular
    std::optional<std::pair<int, int>> offending;

    /// Dispersive predictions are trusted at margin <= 0.1.
    bool trusted() const { return !singular && margin <= 0.1; }
};

validity_margin_result validity_margin(const system_params& params);

} // namespace cmag

#endif
