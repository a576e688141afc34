#include "cmag/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cmag/error.hpp"

namespace cmag {

namespace {

constexpr double phase_snap = 1e-12;

void require_finite(double value, const char* what)
{
    if (!std::isfinite(value)) {
        throw input_error(std::string(what) + " must be finite");
    }
}

} // namespace

double normalize_phase(double phase)
{
    if (!std::isfinite(phase)) {
        throw input_error("phase must be finite");
    }
    double r = std::fmod(phase, two_pi);
    if (r < 0.0) {
        r += two_pi;
    }
    if (r < phase_snap || two_pi - r < phase_snap) {
        return 0.0;
    }
    return r;
}

double phase_distance(double a, double b)
{
    double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

std::string_view to_string(mode_kind kind)
{
    return kind == mode_kind::cavity ? "cavity" : "magnon";
}

mode_kind parse_mode_kind(std::string_view text)
{
    if (text == "cavity") {
        return mode_kind::cavity;
    }
    if (text == "magnon") {
        return mode_kind::magnon;
    }
    throw input_error("unknown mode kind '" + std::string(text) + "'");
}

void coupling_graph::add_mode(mode m)
{
    if (m.id.empty()) {
        throw input_error("mode id must not be empty");
    }
    if (find_mode(m.id)) {
        throw input_error("duplicate mode id '" + m.id + "'");
    }
    require_finite(m.frequency, "mode frequency");
    require_finite(m.kappa, "mode kappa");
    if (m.frequency <= 0.0) {
        throw input_error("mode '" + m.id + "' needs a positive frequency");
    }
    if (m.kappa < 0.0) {
        throw input_error("mode '" + m.id + "' has negative kappa");
    }
    for (const auto& [label, rate] : m.baths) {
        require_finite(rate, "bath coupling");
        if (rate < 0.0) {
            throw input_error("mode '" + m.id + "' has negative rate for bath '" +
                              label + "'");
        }
    }
    m_modes.push_back(std::move(m));
}

void coupling_graph::add_coupling(std::string from, std::string to,
                                  double strength, double phase)
{
    require_finite(strength, "coupling strength");
    require_finite(phase, "coupling phase");
    if (!find_mode(from)) {
        throw input_error("coupling references unknown mode '" + from + "'");
    }
    if (!find_mode(to)) {
        throw input_error("coupling references unknown mode '" + to + "'");
    }
    if (from == to) {
        throw input_error("self-coupling on mode '" + from + "'");
    }
    for (const auto& c : m_couplings) {
        if ((c.from == from && c.to == to) || (c.from == to && c.to == from)) {
            throw input_error("duplicate coupling between '" + from + "' and '" +
                              to + "'");
        }
    }
    if (strength < 0.0) {
        strength = -strength;
        phase += pi;
    }
    m_couplings.push_back({std::move(from), std::move(to), strength,
                           normalize_phase(phase)});
}

std::optional<std::size_t> coupling_graph::find_mode(std::string_view id) const
{
    for (std::size_t i = 0; i < m_modes.size(); ++i) {
        if (m_modes[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

const mode& coupling_graph::mode_at(std::string_view id) const
{
    auto idx = find_mode(id);
    if (!idx) {
        throw input_error("unknown mode id '" + std::string(id) + "'");
    }
    return m_modes[*idx];
}

void coupling_graph::set_phase(std::size_t index, double phase)
{
    m_couplings.at(index).phase = normalize_phase(phase);
}

std::vector<std::size_t> coupling_graph::matrix_order() const
{
    std::vector<std::size_t> order;
    order.reserve(m_modes.size());
    for (auto kind : {mode_kind::cavity, mode_kind::magnon}) {
        for (std::size_t i = 0; i < m_modes.size(); ++i) {
            if (m_modes[i].kind == kind) {
                order.push_back(i);
            }
        }
    }
    return order;
}

void system_params::validate() const
{
    const std::pair<double, const char*> finite[] = {
        {omega_c, "omega_c"}, {delta_c, "delta_c"}, {omega_m, "omega_m"},
        {delta_m, "delta_m"}, {g0, "g0"},           {g1, "g1"},
        {theta, "theta"},     {kappa, "kappa"},     {gamma_a[0], "gamma_a0"},
        {gamma_a[1], "gamma_a1"}, {gamma_b[0], "gamma_b0"},
        {gamma_b[1], "gamma_b1"}};
    for (const auto& [value, name] : finite) {
        require_finite(value, name);
    }
    if (g0 < 0.0 || g1 < 0.0) {
        throw input_error("coupling strengths g0, g1 must be non-negative");
    }
    if (kappa < 0.0) {
        throw input_error("kappa must be non-negative");
    }
    for (double rate : {gamma_a[0], gamma_a[1], gamma_b[0], gamma_b[1]}) {
        if (rate < 0.0) {
            throw input_error("bath rates must be non-negative");
        }
    }
    if (omega_c0() <= 0.0 || omega_c1() <= 0.0 || omega_m0() <= 0.0 ||
        omega_m1() <= 0.0) {
        std::ostringstream msg;
        msg << "bare frequencies must be positive (omega_c=" << omega_c
            << ", delta_c=" << delta_c << ", omega_m=" << omega_m
            << ", delta_m=" << delta_m << ")";
        throw input_error(msg.str());
    }
}

coupling_graph two_sphere_system(const system_params& params)
{
    params.validate();
    coupling_graph graph;
    graph.add_mode({"c0", mode_kind::cavity, params.omega_c0(), params.kappa,
                    {{"a", params.gamma_a[0]}, {"b", params.gamma_b[0]}}});
    graph.add_mode({"c1", mode_kind::cavity, params.omega_c1(), params.kappa,
                    {{"a", params.gamma_a[1]}, {"b", params.gamma_b[1]}}});
    graph.add_mode({"m0", mode_kind::magnon, params.omega_m0(), params.kappa, {}});
    graph.add_mode({"m1", mode_kind::magnon, params.omega_m1(), params.kappa, {}});
    graph.add_coupling("c0", "m0", params.g0, 0.0);
    graph.add_coupling("c0", "m1", params.g0, 0.0);
    graph.add_coupling("c1", "m0", params.g1, 0.0);
    graph.add_coupling("c1", "m1", params.g1, params.theta);
    return graph;
}

std::size_t hamiltonian_matrix::index_of(std::string_view id) const
{
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) {
        throw input_error("unknown mode id '" + std::string(id) + "'");
    }
    return static_cast<std::size_t>(it - ids.begin());
}

std::vector<std::size_t> hamiltonian_matrix::cavity_indices() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        if (kinds[i] == mode_kind::cavity) {
            out.push_back(i);
        }
    }
    return out;
}

hamiltonian_matrix build_hamiltonian(const coupling_graph& graph)
{
    const auto order = graph.matrix_order();
    const auto n = static_cast<Eigen::Index>(order.size());

    hamiltonian_matrix h;
    h.entries = Eigen::MatrixXcd::Zero(n, n);
    std::map<std::string_view, Eigen::Index> index;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& m = graph.modes()[order[static_cast<std::size_t>(i)]];
        h.ids.push_back(m.id);
        h.kinds.push_back(m.kind);
        h.entries(i, i) = m.frequency;
        index.emplace(m.id, i);
    }

    std::set<std::pair<Eigen::Index, Eigen::Index>> seen;
    for (const auto& c : graph.couplings()) {
        auto from = index.find(c.from);
        auto to = index.find(c.to);
        if (from == index.end() || to == index.end()) {
            throw input_error("coupling references unknown mode");
        }
        const auto pair = std::minmax(from->second, to->second);
        if (pair.first == pair.second || !seen.insert(pair).second) {
            throw input_error("duplicate coupling between '" + c.from + "' and '" +
                              c.to + "'");
        }
        const complex term = std::polar(c.strength, c.phase);
        h.entries(to->second, from->second) = term;
        h.entries(from->second, to->second) = std::conj(term);
    }
    return h;
}

} // namespace cmag
