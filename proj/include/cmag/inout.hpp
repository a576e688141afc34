#ifndef CMAG_INOUT_HPP
#define CMAG_INOUT_HPP

#include <string_view>
#include <vector>

#include "cmag/model.hpp"
#include "cmag/spectrum.hpp"

namespace cmag {

/*
 * S21 of the two-sphere system from the eliminated-magnon 2x2 cavity
 * system (coefficients A_k, B_kk', O_o,k). Bare frequencies are
 * complexified as omega - i kappa. Ports: input "a", output "b".
 */
complex s21_closed_form(const system_params& params, double probe);

/*
 * S21 of an arbitrary coupling graph. Solves M(w) v = -i K_in with
 *   M_kk  = w - w_k + i kappa_k + (i/2) sum_o gamma_o,k
 *   M_kk' = -A_kk' + (i/2) sum_o sqrt(gamma_o,k gamma_o,k')
 * and returns sum_k sqrt(gamma_out,k) v_k.
 */
complex s21_general(const coupling_graph& graph, std::string_view bath_in,
                    std::string_view bath_out, double probe);

struct probe_grid
{
    std::vector<double> frequencies; ///< strictly increasing, GHz
    sweep_spec sweep;

    static probe_grid uniform(double start, double stop, int steps, const sweep_spec& sweep);
    void validate() const;
};

/// Complex S21 indexed (sweep row, probe column), row-major.
struct transmission_trace
{
    std::vector<double> parameters;
    std::vector<double> probes;
    std::vector<complex> s21;
    system_params params;
    sweep_parameter parameter = sweep_parameter::omega_m;

    std::size_t rows() const { return parameters.size(); }
    std::size_t cols() const { return probes.size(); }
    complex at(std::size_t row, std::size_t col) const { return s21[row * cols() + col]; }
};

/// OpenMP-parallel over sweep rows, closed-form S21 per point.
transmission_trace transmission_map(const system_params& params, const probe_grid& grid);

namespace reference {
transmission_trace transmission_map(const system_params& params, const probe_grid& grid);
} // namespace reference

} // namespace cmag

#endif
