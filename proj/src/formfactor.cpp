#include "cmag/formfactor.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "cmag/error.hpp"

namespace cmag {

namespace {

constexpr const char* field_header =
    "x_m,y_m,z_m,re_hx,im_hx,re_hy,im_hy,re_hz,im_hz,cell_volume_m3";

struct region_sums
{
    complex transverse{}; // sum (Hx + i Hy) dV
    complex axial{};      // sum Hz dV
    double volume = 0.0;
    std::size_t cells = 0;
};

region_sums integrate(const field_map& field, const sample_region& region)
{
    if (!(region.radius > 0.0) || !std::isfinite(region.radius)) {
        throw input_error("sample radius must be positive");
    }
    const complex i{0.0, 1.0};
    region_sums s;
    for (const auto& p : field.points()) {
        if (!region.contains(p.position)) {
            continue;
        }
        s.transverse += (p.h[0] + i * p.h[1]) * p.cell_volume;
        s.axial += p.h[2] * p.cell_volume;
        s.volume += p.cell_volume;
        ++s.cells;
    }
    if (s.cells == 0) {
        throw compute_error(fmt::format(
            "sample region (center {},{},{} radius {}) contains no grid cell",
            region.center[0], region.center[1], region.center[2], region.radius));
    }
    return s;
}

} // namespace

field_map::field_map(std::vector<field_point> points) : m_points(std::move(points))
{
    if (m_points.empty()) {
        throw input_error("field map has no points");
    }
    for (std::size_t n = 0; n < m_points.size(); ++n) {
        const auto& p = m_points[n];
        bool finite = std::isfinite(p.cell_volume);
        for (int k = 0; k < 3; ++k) {
            finite = finite && std::isfinite(p.position[k]) &&
                     std::isfinite(p.h[k].real()) && std::isfinite(p.h[k].imag());
        }
        if (!finite) {
            throw input_error(fmt::format("field point {} has non-finite values", n));
        }
        if (!(p.cell_volume > 0.0)) {
            throw input_error(fmt::format("field point {} has cell_volume <= 0", n));
        }
    }
}

double field_map::energy() const
{
    double e = 0.0;
    for (const auto& p : m_points) {
        e += (std::norm(p.h[0]) + std::norm(p.h[1]) + std::norm(p.h[2])) * p.cell_volume;
    }
    return e;
}

double field_map::volume() const
{
    double v = 0.0;
    for (const auto& p : m_points) {
        v += p.cell_volume;
    }
    return v;
}

field_map read_field_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<field_point> points;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != field_header) {
                throw input_error(fmt::format("field csv header must be '{}'", field_header));
            }
            header_seen = true;
            continue;
        }
        std::array<double, 10> v{};
        std::istringstream row(line);
        std::string cell;
        std::size_t n = 0;
        while (std::getline(row, cell, ',')) {
            if (n == v.size()) {
                ++n;
                break;
            }
            try {
                std::size_t used = 0;
                v[n] = std::stod(cell, &used);
                if (used != cell.size()) {
                    throw std::invalid_argument(cell);
                }
            } catch (const std::logic_error&) {
                throw input_error(
                    fmt::format("field csv line {}: '{}' is not a number", line_no, cell));
            }
            ++n;
        }
        if (n != v.size()) {
            throw input_error(fmt::format("field csv line {}: expected 10 columns", line_no));
        }
        field_point p;
        p.position = {v[0], v[1], v[2]};
        p.h = {complex{v[3], v[4]}, complex{v[5], v[6]}, complex{v[7], v[8]}};
        p.cell_volume = v[9];
        points.push_back(p);
    }
    if (!header_seen) {
        throw input_error("field csv is empty");
    }
    return field_map(std::move(points));
}

void write_field_csv(std::ostream& out, const field_map& field)
{
    out << field_header << '\n';
    for (const auto& p : field.points()) {
        out << fmt::format("{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                           p.position[0], p.position[1], p.position[2], p.h[0].real(),
                           p.h[0].imag(), p.h[1].real(), p.h[1].imag(), p.h[2].real(),
                           p.h[2].imag(), p.cell_volume);
    }
}

bool sample_region::contains(const std::array<double, 3>& p) const
{
    const double dx = p[0] - center[0];
    const double dy = p[1] - center[1];
    const double dz = p[2] - center[2];
    return dx * dx + dy * dy + dz * dz <= radius * radius;
}

void material_constants::validate() const
{
    for (double c : {spin_density, moment_ratio, gyromagnetic_ratio, mu0, hbar}) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw input_error("material constants must be positive and finite");
        }
    }
}

double sample_volume(const field_map& field, const sample_region& region)
{
    return integrate(field, region).volume;
}

complex h_tilde(const field_map& field, const sample_region& region)
{
    return integrate(field, region).transverse;
}

double form_factor(const field_map& field, const sample_region& region)
{
    const auto s = integrate(field, region);
    const double energy = field.energy();
    if (!(energy > 0.0)) {
        throw compute_error("field map carries zero energy");
    }
    return std::abs(s.transverse) / std::sqrt(s.volume * energy);
}

double coupling_phase(const field_map& field, const sample_region& region)
{
    const complex h = h_tilde(field, region);
    if (h == complex{}) {
        throw compute_error("coupling phase undefined: transverse field integral vanishes");
    }
    return normalize_phase(std::arg(h));
}

double coupling_strength(double eta, double omega_c_ghz, const material_constants& k)
{
    k.validate();
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw input_error(fmt::format("form factor {} outside [0, 1]", eta));
    }
    if (!(omega_c_ghz > 0.0) || !std::isfinite(omega_c_ghz)) {
        throw input_error("omega_c must be positive");
    }
    const double omega = two_pi * omega_c_ghz * 1e9; // rad/s
    const double g_hz = eta * std::sqrt(omega) * k.gyromagnetic_ratio / (4.0 * pi) *
                        std::sqrt(k.moment_ratio * k.mu0 * k.hbar * k.spin_density);
    return g_hz * 1e-9;
}

double z_component_check(const field_map& field, const sample_region& region)
{
    const auto s = integrate(field, region);
    const double axial = std::abs(s.axial);
    const double total = std::abs(s.transverse) + axial;
    return total == 0.0 ? 0.0 : axial / total;
}

} // namespace cmag
