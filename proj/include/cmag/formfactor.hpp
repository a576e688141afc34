#ifndef CMAG_FORMFACTOR_HPP
#define CMAG_FORMFACTOR_HPP

#include <array>
#include <iosfwd>
#include <vector>

#include "cmag/model.hpp"

namespace cmag {

/// One cell of a discretized cavity mode: center (m), complex H phasor, cell volume (m^3).
struct field_point
{
    std::array<double, 3> position{};
    std::array<complex, 3> h{};
    double cell_volume = 0.0;
};

class field_map
{
public:
    field_map() = default;
    /// Throws input_error on empty input, non-finite values or cell_volume <= 0.
    explicit field_map(std::vector<field_point> points);

    const std::vector<field_point>& points() const { return m_points; }

    /// sum |H|^2 dV over the whole map
    double energy() const;
    double volume() const;

private:
    std::vector<field_point> m_points;
};

/// Header: x_m,y_m,z_m,re_hx,im_hx,re_hy,im_hy,re_hz,im_hz,cell_volume_m3
field_map read_field_csv(std::istream& in);
void write_field_csv(std::ostream& out, const field_map& field);

/// Spherical sample; a cell belongs to it when its center lies inside.
struct sample_region
{
    std::array<double, 3> center{};
    double radius = 0.0;

    bool contains(const std::array<double, 3>& p) const;
};

/// YIG defaults; SI units.
struct material_constants
{
    double spin_density = 4.22e27;           ///< n_s, m^-3
    double moment_ratio = 2.5;               ///< mu / (g_L mu_B) with mu = 5 mu_B, g_L = 2
    double gyromagnetic_ratio = 1.76085963023e11; ///< rad s^-1 T^-1
    double mu0 = 1.25663706212e-6;           ///< T m / A
    double hbar = 1.054571817e-34;           ///< J s

    void validate() const;
};

/// Summed cell volume of the sample; throws compute_error if no cell is inside.
double sample_volume(const field_map& field, const sample_region& region);

/// sum over sample cells of (Hx + i Hy) dV
complex h_tilde(const field_map& field, const sample_region& region);

/// eta = |H~| / sqrt(V_m * sum_all |H|^2 dV), with V_m the summed sample cell volume.
double form_factor(const field_map& field, const sample_region& region);

/// arg H~ in [0, 2pi); throws compute_error when H~ vanishes.
double coupling_phase(const field_map& field, const sample_region& region);

/// g / 2pi in GHz for a cavity mode at omega_c (GHz, ordinary frequency).
double coupling_strength(double eta, double omega_c_ghz,
                         const material_constants& constants = {});

/// |int H.z| / (|H~| + |int H.z|); values above 0.05 break the transverse-mode assumption.
double z_component_check(const field_map& field, const sample_region& region);

inline constexpr double z_component_warn_threshold = 0.05;

} // namespace cmag

#endif
