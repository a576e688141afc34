#ifndef CMAG_CONFIG_IO_HPP
#define CMAG_CONFIG_IO_HPP

#include <iosfwd>

#include "cmag/model.hpp"

namespace cmag {

/*
 * Plain-text graph format:
 *
 *   [mode.c0]
 *   kind = cavity
 *   frequency_ghz = 4
 *   kappa_ghz = 0.001
 *   gamma_a_ghz = 0.005
 *   gamma_b_ghz = 0.005
 *
 *   [coupling.0]
 *   from = c0
 *   to = m0
 *   g_ghz = 0.15
 *   phase_rad = 0
 *
 * Any `gamma_<label>_ghz` key declares a bath coupling. Mode order follows
 * the file. Lines starting with ';' or '#' are comments.
 */
coupling_graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const coupling_graph& graph);

/*
 * Optional `[params]` section for the two-sphere system. Recognized keys:
 * omega_c_ghz, delta_c_ghz, omega_m_ghz, delta_m_ghz, g0_ghz, g1_ghz,
 * theta_rad, kappa_ghz, gamma_ghz (all four port rates). Missing keys keep
 * the values already in `params`.
 */
void read_params(std::istream& in, system_params& params);

} // namespace cmag

#endif
