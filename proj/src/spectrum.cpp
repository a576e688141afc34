#include "cmag/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "cmag/error.hpp"

namespace cmag {

namespace {

constexpr double hermitian_tolerance = 1e-12;
constexpr double cluster_tolerance = 1e-10;
constexpr double residual_tolerance = 1e-10;

double cavity_weight(const Eigen::MatrixXcd& vectors, Eigen::Index column,
                     std::span<const std::size_t> cavities)
{
    double w = 0.0;
    for (auto k : cavities) {
        w += std::norm(vectors(static_cast<Eigen::Index>(k), column));
    }
    return w;
}

void fix_phase(Eigen::MatrixXcd& vectors, Eigen::Index column)
{
    auto col = vectors.col(column);
    double largest = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < col.size(); ++i) {
        if (std::abs(col(i)) >= largest - 1e-12) {
            col *= std::conj(col(i)) / std::abs(col(i));
            col(i) = std::abs(col(i));
            return;
        }
    }
}

} // namespace

polariton_set diagonalize(const hamiltonian_matrix& h)
{
    const auto& a = h.entries;
    const auto n = a.rows();
    if (a.cols() != n || static_cast<std::size_t>(n) != h.kinds.size()) {
        throw input_error("hamiltonian matrix is not square or lacks mode kinds");
    }
    const double asymmetry = n == 0 ? 0.0 : (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (!(asymmetry <= hermitian_tolerance)) {
        throw input_error(
            fmt::format("matrix is not Hermitian (max asymmetry {:.3e})", asymmetry));
    }

    polariton_set out;
    if (n == 0) {
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
    if (solver.info() != Eigen::Success) {
        throw compute_error("eigensolver did not converge");
    }
    const Eigen::VectorXd values = solver.eigenvalues();
    Eigen::MatrixXcd vectors = solver.eigenvectors();
    const double norm = std::max(std::abs(values(0)), std::abs(values(n - 1)));
    const auto cavities = h.cavity_indices();

    // Resolve degenerate clusters against the cavity projector.
    const double tol = cluster_tolerance * std::max(1.0, norm);
    for (Eigen::Index first = 0; first < n;) {
        Eigen::Index last = first + 1;
        while (last < n && values(last) - values(last - 1) <= tol) {
            ++last;
        }
        const auto k = last - first;
        if (k > 1) {
            Eigen::MatrixXcd block = vectors.middleCols(first, k);
            Eigen::MatrixXcd projector = Eigen::MatrixXcd::Zero(k, k);
            for (auto c : cavities) {
                auto row = block.row(static_cast<Eigen::Index>(c));
                projector += row.adjoint() * row;
            }
            projector = 0.5 * (projector + projector.adjoint()).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner(projector);
            // ascending brightness -> reverse for descending
            Eigen::MatrixXcd rotation = inner.eigenvectors().rowwise().reverse();
            vectors.middleCols(first, k) = block * rotation;
        }
        first = last;
    }

    out.frequencies.assign(values.data(), values.data() + n);
    out.brightness.resize(static_cast<std::size_t>(n));
    for (Eigen::Index mu = 0; mu < n; ++mu) {
        fix_phase(vectors, mu);
        out.brightness[static_cast<std::size_t>(mu)] = cavity_weight(vectors, mu, cavities);
        const double residual = (a * vectors.col(mu) - values(mu) * vectors.col(mu)).norm();
        if (residual > residual_tolerance * std::max(1.0, norm)) {
            throw compute_error(fmt::format(
                "eigenvector residual {:.3e} exceeds tolerance on branch {}", residual, mu));
        }
    }
    out.vectors = std::move(vectors);
    return out;
}

std::vector<double> brightness_profile(const polariton_set& pols,
                                       std::span<const std::size_t> cavity_indices)
{
    for (auto k : cavity_indices) {
        if (k >= static_cast<std::size_t>(pols.vectors.rows())) {
            throw input_error(fmt::format("cavity index {} out of range", k));
        }
    }
    std::vector<double> out(static_cast<std::size_t>(pols.vectors.cols()));
    for (Eigen::Index mu = 0; mu < pols.vectors.cols(); ++mu) {
        out[static_cast<std::size_t>(mu)] = cavity_weight(pols.vectors, mu, cavity_indices);
    }
    return out;
}

void sweep_spec::validate() const
{
    if (steps < 2) {
        throw input_error("sweep needs at least 2 steps");
    }
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
        throw input_error(fmt::format("sweep needs start < stop (got {} .. {})", start, stop));
    }
}

double sweep_spec::value(int i) const
{
    if (i == steps - 1) {
        return stop;
    }
    return start + i * ((stop - start) / (steps - 1));
}

system_params with_parameter(const system_params& base, sweep_parameter parameter,
                             double value)
{
    system_params p = base;
    switch (parameter) {
    case sweep_parameter::omega_m:
        p.omega_m = value;
        break;
    case sweep_parameter::delta_m:
        p.delta_m = value;
        break;
    }
    return p;
}

spectrum_row spectrum_point(const system_params& params, sweep_parameter parameter,
                            double value)
{
    const auto p = with_parameter(params, parameter, value);
    const auto pols = diagonalize(build_hamiltonian(two_sphere_system(p)));
    spectrum_row row;
    row.parameter = value;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        row.omega[mu] = pols.frequencies[mu];
        row.bright[mu] = pols.brightness[mu];
    }
    return row;
}

gap_result minimum_gap(std::span<const spectrum_row> table, std::size_t branch_low,
                       std::size_t branch_high)
{
    if (table.empty()) {
        throw input_error("minimum_gap needs a non-empty table");
    }
    if (branch_low >= 4 || branch_high >= 4 || branch_low == branch_high) {
        throw input_error(
            fmt::format("branch indices ({}, {}) out of range", branch_low, branch_high));
    }
    auto gap_at = [&](std::size_t i) {
        return table[i].omega[branch_high] - table[i].omega[branch_low];
    };
    auto center_at = [&](std::size_t i) {
        return 0.5 * (table[i].omega[branch_high] + table[i].omega[branch_low]);
    };

    std::size_t best = 0;
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (gap_at(i) < gap_at(best)) {
            best = i;
        }
    }
    gap_result r{best, table[best].parameter, gap_at(best), center_at(best)};
    if (best == 0 || best + 1 == table.size()) {
        return r;
    }

    const double x0 = table[best - 1].parameter, x1 = table[best].parameter,
                 x2 = table[best + 1].parameter;
    const double y0 = gap_at(best - 1), y1 = gap_at(best), y2 = gap_at(best + 1);
    const double denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    // Only a convex parabola has a minimum to refine to.
    if (!(denom < 0.0)) {
        return r;
    }
    double x = x1 - 0.5 * ((x1 - x0) * (x1 - x0) * (y1 - y2) -
                           (x1 - x2) * (x1 - x2) * (y1 - y0)) / denom;
    x = std::clamp(x, x0, x2);

    auto lagrange = [&](double f0, double f1, double f2) {
        return f0 * (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2)) +
               f1 * (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2)) +
               f2 * (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
    };
    r.parameter = x;
    r.gap = std::clamp(lagrange(y0, y1, y2), 0.0, y1);
    r.center = lagrange(center_at(best - 1), center_at(best), center_at(best + 1));
    return r;
}

hamiltonian_matrix rotated_basis_hamiltonian(const system_params& params)
{
    params.validate();
    const double gt0 = std::sqrt(2.0) * params.g0;
    const double gt1 = std::sqrt(2.0) * params.g1;
    const double half = 0.5 * params.theta;
    const complex rot = std::polar(1.0, -half);
    const complex i{0.0, 1.0};

    hamiltonian_matrix h;
    h.ids = {"c0", "c1", "M_theta", "M_theta+pi"};
    h.kinds = {mode_kind::cavity, mode_kind::cavity, mode_kind::magnon, mode_kind::magnon};
    auto& a = h.entries;
    a = Eigen::MatrixXcd::Zero(4, 4);
    a(0, 0) = params.omega_c0();
    a(1, 1) = params.omega_c1();
    a(2, 2) = params.omega_m;
    a(3, 3) = params.omega_m;
    // -delta_m (M_theta M_theta+pi^dagger + h.c.)
    a(3, 2) = -params.delta_m;
    a(2, 3) = -params.delta_m;
    // g0~ e^{-i theta/2} c0 (cos M_theta - i sin M_theta+pi)^dagger
    a(2, 0) = gt0 * rot * std::cos(half);
    a(3, 0) = i * gt0 * rot * std::sin(half);
    // g1~ c1 M_theta^dagger
    a(2, 1) = gt1;
    for (int r = 0; r < 4; ++r) {
        for (int c = r + 1; c < 4; ++c) {
            if (r < 2 && c >= 2) {
                a(r, c) = std::conj(a(c, r));
            }
        }
    }
    return h;
}

} // namespace cmag
