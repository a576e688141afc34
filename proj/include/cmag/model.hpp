#ifndef CMAG_MODEL_HPP
#define CMAG_MODEL_HPP

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cmag {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Reduces an angle to [0, 2pi). Values within 1e-12 of 2pi snap to 0.
double normalize_phase(double phase);

/// Circular distance between two angles, in [0, pi].
double phase_distance(double a, double b);

enum class mode_kind { cavity, magnon };

std::string_view to_string(mode_kind kind);
mode_kind parse_mode_kind(std::string_view text);

/*
 * A bosonic mode. Frequencies and rates are in GHz; bath couplings map a
 * bath label ("a", "b", ...) to the rate gamma of that port.
 */
struct mode
{
    std::string id;
    mode_kind kind = mode_kind::cavity;
    double frequency = 0.0;
    double kappa = 0.0;
    std::map<std::string, double> baths;
};

/*
 * Coupling term g e^{i phase} (from) (to)^dagger + h.c. Strength is kept
 * non-negative and phase in [0, 2pi).
 */
struct coupling
{
    std::string from;
    std::string to;
    double strength = 0.0;
    double phase = 0.0;
};

class coupling_graph
{
public:
    coupling_graph() = default;

    /// Appends a mode; throws input_error on duplicate id or bad values.
    void add_mode(mode m);

    /// Appends a coupling. A negative strength is folded into the phase.
    void add_coupling(std::string from, std::string to, double strength,
                      double phase);

    const std::vector<mode>& modes() const { return m_modes; }
    const std::vector<coupling>& couplings() const { return m_couplings; }

    std::optional<std::size_t> find_mode(std::string_view id) const;
    const mode& mode_at(std::string_view id) const;

    /// Replaces the phase of edge `index` (normalized).
    void set_phase(std::size_t index, double phase);

    /// Matrix order: cavities first, then magnons, each in insertion order.
    std::vector<std::size_t> matrix_order() const;

private:
    std::vector<mode> m_modes;
    std::vector<coupling> m_couplings;
};

/*
 * Two cavity modes c0, c1 and two magnon modes m0, m1. Frequencies are
 * reconstructed as omega -/+ delta. gamma_a / gamma_b are the per-cavity
 * port rates. Defaults are the standard two-sphere setup.
 */
struct system_params
{
    double omega_c = 5.0;
    double delta_c = 1.0;
    double omega_m = 5.0;
    double delta_m = 0.0;
    double g0 = 0.15;
    double g1 = 0.15;
    double theta = 0.0;
    double kappa = 1e-3;
    std::array<double, 2> gamma_a{5e-3, 5e-3};
    std::array<double, 2> gamma_b{5e-3, 5e-3};

    double omega_c0() const { return omega_c - delta_c; }
    double omega_c1() const { return omega_c + delta_c; }
    double omega_m0() const { return omega_m - delta_m; }
    double omega_m1() const { return omega_m + delta_m; }

    /// Throws input_error on non-finite values or negative strengths/rates.
    void validate() const;
};

/// Builds c0, c1, m0, m1 with edges (g0,0), (g0,0), (g1,0), (g1,theta).
coupling_graph two_sphere_system(const system_params& params);

struct hamiltonian_matrix
{
    Eigen::MatrixXcd entries;
    std::vector<std::string> ids;
    std::vector<mode_kind> kinds;

    std::size_t size() const { return ids.size(); }
    std::size_t index_of(std::string_view id) const;
    std::vector<std::size_t> cavity_indices() const;
};

/// A[to][from] = g e^{i phi}, A[from][to] = g e^{-i phi}, diagonal = bare frequency.
hamiltonian_matrix build_hamiltonian(const coupling_graph& graph);

} // namespace cmag

#endif
