#ifndef CMAG_SPECTRUM_HPP
#define CMAG_SPECTRUM_HPP

#include <array>
#include <span>
#include <vector>

#include "cmag/model.hpp"

namespace cmag {

/*
 * Eigenfrequencies in ascending order. Column mu of `vectors` is the
 * eigenvector of branch mu in the matrix basis of the input Hamiltonian;
 * brightness[mu] is its total weight on cavity modes.
 */
struct polariton_set
{
    std::vector<double> frequencies;
    Eigen::MatrixXcd vectors;
    std::vector<double> brightness;
};

/*
 * Hermitian eigendecomposition. Inside a cluster of (numerically) degenerate
 * eigenvalues the basis is rotated to diagonalize the cavity projector, so
 * a dark combination is separated from bright ones; cluster members are
 * ordered by descending brightness. Each eigenvector is phased so its
 * largest component is real and positive.
 *
 * Throws input_error if H deviates from Hermitian by more than 1e-12.
 */
polariton_set diagonalize(const hamiltonian_matrix& h);

/// Per-branch weight on the given matrix indices.
std::vector<double> brightness_profile(const polariton_set& pols,
                                       std::span<const std::size_t> cavity_indices);

enum class sweep_parameter { omega_m, delta_m };

struct sweep_spec
{
    sweep_parameter parameter = sweep_parameter::omega_m;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;

    void validate() const;
    /// start + i (stop - start) / (steps - 1)
    double value(int i) const;
};

/// Copy of `base` with the swept parameter set to `value`.
system_params with_parameter(const system_params& base, sweep_parameter parameter,
                             double value);

struct spectrum_row
{
    double parameter = 0.0;
    std::array<double, 4> omega{};
    std::array<double, 4> bright{};

    bool operator==(const spectrum_row&) const = default;
};

/// Spectrum of the two-sphere system at one parameter point.
spectrum_row spectrum_point(const system_params& params, sweep_parameter parameter,
                            double value);

/// OpenMP-parallel over sweep rows; output ordered by row index.
std::vector<spectrum_row> sweep_spectrum(const system_params& params,
                                         const sweep_spec& sweep);

namespace reference {
/// Serial sweep, kept as the baseline for the parallel kernel.
std::vector<spectrum_row> sweep_spectrum(const system_params& params,
                                         const sweep_spec& sweep);
} // namespace reference

struct gap_result
{
    std::size_t row = 0;    ///< discrete minimum
    double parameter = 0.0; ///< refined location
    double gap = 0.0;       ///< refined gap, GHz
    double center = 0.0;    ///< (omega_low + omega_high) / 2 at the refined location
};

/*
 * Minimum of omega[high] - omega[low] over the table, refined by a 3-point
 * parabola through the discrete minimum and its neighbours.
 */
gap_result minimum_gap(std::span<const spectrum_row> table, std::size_t branch_low,
                       std::size_t branch_high);

/*
 * Two-sphere Hamiltonian in the basis {c0, c1, M_theta, M_theta+pi} with
 * M_theta = (m0 + e^{-i theta} m1) / sqrt(2).
 */
hamiltonian_matrix rotated_basis_hamiltonian(const system_params& params);

} // namespace cmag

#endif
