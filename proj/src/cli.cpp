#include "cmag/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cmag/config_io.hpp"
#include "cmag/dispersive.hpp"
#include "cmag/error.hpp"
#include "cmag/formfactor.hpp"
#include "cmag/gauge.hpp"
#include "cmag/inout.hpp"
#include "cmag/spectrum.hpp"

namespace cmag::cli {

namespace {

double parse_double(const std::string& text, const char* what)
{
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used == text.size()) {
            return v;
        }
    } catch (const std::logic_error&) {
    }
    throw input_error(fmt::format("{}: '{}' is not a number", what, text));
}

double parse_theta(const std::string& text)
{
    if (text == "pi") {
        return pi;
    }
    if (text == "-pi") {
        return -pi;
    }
    return parse_double(text, "--theta");
}

/// start:stop:steps
sweep_spec parse_range(const std::string& text, sweep_parameter parameter, const char* flag)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) {
        parts.push_back(part);
    }
    if (parts.size() != 3) {
        throw input_error(fmt::format("{} expects start:stop:steps, got '{}'", flag, text));
    }
    sweep_spec s;
    s.parameter = parameter;
    s.start = parse_double(parts[0], flag);
    s.stop = parse_double(parts[1], flag);
    const double steps = parse_double(parts[2], flag);
    if (steps != std::floor(steps) || steps < 2 || steps > 1e7) {
        throw input_error(fmt::format("{}: steps must be an integer >= 2", flag));
    }
    s.steps = static_cast<int>(steps);
    s.validate();
    return s;
}

std::array<double, 3> parse_triple(const std::string& text, const char* flag)
{
    std::array<double, 3> v{};
    std::stringstream ss(text);
    std::string part;
    std::size_t n = 0;
    while (std::getline(ss, part, ',')) {
        if (n == 3) {
            ++n;
            break;
        }
        v[n++] = parse_double(part, flag);
    }
    if (n != 3) {
        throw input_error(fmt::format("{} expects x,y,z", flag));
    }
    return v;
}

sweep_parameter parse_parameter(const std::string& text)
{
    if (text == "omega_m") {
        return sweep_parameter::omega_m;
    }
    if (text == "delta_m") {
        return sweep_parameter::delta_m;
    }
    throw input_error(fmt::format("--param must be omega_m or delta_m, got '{}'", text));
}

std::string_view parameter_name(sweep_parameter p)
{
    return p == sweep_parameter::omega_m ? "omega_m" : "delta_m";
}

std::string fmt_e(double x)
{
    return fmt::format("{:.12e}", x);
}

/// Two-sphere parameters: optional [params] file, then explicit flags.
struct param_flags
{
    std::string params_file;
    std::optional<double> omega_c, delta_c, omega_m, delta_m, g0, g1;
    std::optional<std::string> theta;
    std::optional<double> kappa_mhz, gamma_mhz;

    void attach(CLI::App* app)
    {
        app->add_option("--params", params_file, "INI file with a [params] section");
        app->add_option("--omega-c", omega_c, "mean cavity frequency (GHz)");
        app->add_option("--delta-c", delta_c, "cavity half-splitting (GHz)");
        app->add_option("--omega-m", omega_m, "mean magnon frequency (GHz)");
        app->add_option("--delta-m", delta_m, "magnon half-splitting (GHz)");
        app->add_option("--g0", g0, "coupling to cavity mode 0 (GHz)");
        app->add_option("--g1", g1, "coupling to cavity mode 1 (GHz)");
        app->add_option("--theta", theta, "loop phase: 0, pi, or radians");
        app->add_option("--kappa", kappa_mhz, "intrinsic loss (MHz)");
        app->add_option("--gamma", gamma_mhz, "port rate per cavity mode and port (MHz)");
    }

    system_params resolve() const
    {
        system_params p;
        if (!params_file.empty()) {
            std::ifstream in(params_file);
            if (!in) {
                throw input_error(fmt::format("cannot open params file '{}'", params_file));
            }
            read_params(in, p);
        }
        auto apply = [](const std::optional<double>& flag, double& target) {
            if (flag) {
                target = *flag;
            }
        };
        apply(omega_c, p.omega_c);
        apply(delta_c, p.delta_c);
        apply(omega_m, p.omega_m);
        apply(delta_m, p.delta_m);
        apply(g0, p.g0);
        apply(g1, p.g1);
        if (theta) {
            p.theta = parse_theta(*theta);
        }
        if (kappa_mhz) {
            p.kappa = *kappa_mhz * 1e-3;
        }
        if (gamma_mhz) {
            const double gamma = *gamma_mhz * 1e-3;
            p.gamma_a = {gamma, gamma};
            p.gamma_b = {gamma, gamma};
        }
        p.validate();
        return p;
    }
};

std::string describe(const system_params& p)
{
    return fmt::format("omega_c={} delta_c={} omega_m={} delta_m={} g0={} g1={} theta={} "
                       "kappa={} gamma_a={},{} gamma_b={},{}",
                       p.omega_c, p.delta_c, p.omega_m, p.delta_m, p.g0, p.g1, p.theta,
                       p.kappa, p.gamma_a[0], p.gamma_a[1], p.gamma_b[0], p.gamma_b[1]);
}

/// Routes data to --output when given, otherwise to the caller's stream.
class sink
{
public:
    sink(const std::string& path, std::ostream& fallback) : m_stream(&fallback)
    {
        if (!path.empty()) {
            m_file.open(path, std::ios::binary);
            if (!m_file) {
                throw input_error(fmt::format("cannot open output '{}'", path));
            }
            m_stream = &m_file;
        }
    }
    std::ostream& stream() { return *m_stream; }
    bool to_file() const { return m_file.is_open(); }

private:
    std::ofstream m_file;
    std::ostream* m_stream;
};

struct common_flags
{
    std::string output;
    std::string format = "csv";

    void attach(CLI::App* app)
    {
        app->add_option("--output,-o", output, "output path (default: stdout)");
        app->add_option("--format", format, "output format")->check(CLI::IsMember({"csv"}));
    }
};

void run_spectrum(const param_flags& pf, const common_flags& cf, const std::string& sweep_text,
                  const std::string& param_text, std::ostream& out)
{
    const auto params = pf.resolve();
    const auto parameter = parse_parameter(param_text);
    const auto sweep = parse_range(sweep_text, parameter, "--sweep");
    const auto rows = sweep_spectrum(params, sweep);

    sink s(cf.output, out);
    auto& os = s.stream();
    os << "# cmag spectrum sweep=" << parameter_name(parameter) << ' ' << sweep_text << ' '
       << describe(params) << '\n';
    os << "param_ghz,omega0_ghz,omega1_ghz,omega2_ghz,omega3_ghz,bright0,bright1,bright2,bright3\n";
    for (const auto& r : rows) {
        os << fmt_e(r.parameter);
        for (double w : r.omega) {
            os << ',' << fmt_e(w);
        }
        for (double b : r.bright) {
            os << ',' << fmt_e(b);
        }
        os << '\n';
    }
}

void run_gap(const param_flags& pf, const common_flags& cf, const std::string& sweep_text,
             const std::string& param_text, const std::string& branches, std::ostream& out)
{
    const auto params = pf.resolve();
    const auto parameter = parse_parameter(param_text);
    const auto sweep = parse_range(sweep_text, parameter, "--sweep");
    std::size_t low = 0, high = 0;
    char comma = 0;
    std::istringstream pair(branches);
    if (!(pair >> low >> comma >> high) || comma != ',' || !pair.eof()) {
        throw input_error("--branches expects two indices low,high");
    }
    const auto rows = sweep_spectrum(params, sweep);
    const auto gap = minimum_gap(rows, low, high);

    sink s(cf.output, out);
    auto& os = s.stream();
    os << "# cmag gap sweep=" << parameter_name(parameter) << ' ' << sweep_text
       << " branches=" << branches << ' ' << describe(params) << '\n';
    os << "param_ghz,gap_ghz,center_ghz\n";
    os << fmt_e(gap.parameter) << ',' << fmt_e(gap.gap) << ',' << fmt_e(gap.center) << '\n';
}

void run_dispersive(const param_flags& pf, const common_flags& cf, std::ostream& out)
{
    const auto params = pf.resolve();
    const auto eff = compute_effective_hamiltonian(params);
    const auto margin = validity_margin(params);
    const bool resonant = std::abs(params.omega_m - params.omega_c) <= 1e-12 * params.omega_c;
    std::optional<complex> closed;
    if (resonant) {
        closed = magnon_magnon_coupling(params);
    }

    struct entry
    {
        std::string quantity;
        int k, kp;
        complex value;
    };
    std::vector<entry> entries;
    for (int k = 0; k < 2; ++k) {
        entries.push_back({"shifted_cavity", k, k, eff.shifted_cavity[k]});
    }
    for (int k = 0; k < 2; ++k) {
        entries.push_back({"shifted_magnon", k, k, eff.shifted_magnon[k]});
    }
    for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
            if (k != kp) {
                entries.push_back({"photon_photon", k, kp, eff.photon_photon[k][kp]});
            }
        }
    }
    for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
            if (k != kp) {
                entries.push_back({"magnon_magnon", k, kp, eff.magnon_magnon[k][kp]});
            }
        }
    }
    for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
            entries.push_back({"detuning", k, kp, eff.detunings[k][kp]});
        }
    }
    for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
            entries.push_back({"lambda", k, kp, eff.small_parameters[k][kp]});
        }
    }
    entries.push_back({"g_theta", 0, 1, eff.magnon_coupling()});
    if (closed) {
        entries.push_back({"g_theta_closed_form", 0, 1, *closed});
    }

    sink s(cf.output, out);
    if (s.to_file()) {
        out << fmt::format("{:<22}{:>3}{:>3}{:>22}{:>22}\n", "quantity", "k", "k'", "re (GHz)",
                           "im (GHz)");
        for (const auto& e : entries) {
            out << fmt::format("{:<22}{:>3}{:>3}{:>22.12e}{:>22.12e}\n", e.quantity, e.k, e.kp,
                               e.value.real(), e.value.imag());
        }
        out << fmt::format("max |lambda| = {:.6e} ({})\n", margin.margin,
                           margin.trusted() ? "dispersive regime" : "outside dispersive regime");
    }
    auto& os = s.stream();
    os << "# cmag dispersive " << describe(params) << " max_lambda=" << fmt_e(margin.margin)
       << '\n';
    os << "quantity,k,kprime,re_ghz,im_ghz\n";
    for (const auto& e : entries) {
        os << e.quantity << ',' << e.k << ',' << e.kp << ',' << fmt_e(e.value.real()) << ','
           << fmt_e(e.value.imag()) << '\n';
    }
}

void run_gauge(const param_flags& pf, const common_flags& cf, const std::string& config,
               const std::string& phases_text, std::ostream& out)
{
    coupling_graph graph;
    if (!config.empty()) {
        std::ifstream in(config);
        if (!in) {
            throw input_error(fmt::format("cannot open graph config '{}'", config));
        }
        graph = read_graph(in);
    } else {
        graph = two_sphere_system(pf.resolve());
        if (!phases_text.empty()) {
            std::vector<double> phases;
            std::stringstream ss(phases_text);
            std::string part;
            while (std::getline(ss, part, ',')) {
                phases.push_back(parse_double(part, "--phases"));
            }
            if (phases.size() != graph.couplings().size()) {
                throw input_error("--phases expects phi00,phi01,phi10,phi11");
            }
            for (std::size_t e = 0; e < phases.size(); ++e) {
                graph.set_phase(e, phases[e]);
            }
        }
    }
    const auto report = reduce_phases(graph);

    out << "mode rotations\n";
    std::size_t width = 4;
    for (const auto& [id, r] : report.mode_rotations) {
        width = std::max(width, id.size());
    }
    for (const auto& [id, r] : report.mode_rotations) {
        out << fmt::format("  {:<{}}  {:>20.12e} rad\n", id, width, r);
    }
    out << "canonical couplings\n";
    for (const auto& c : report.canonical_graph.couplings()) {
        out << fmt::format("  {:<{}} -> {:<{}}  g = {:>14.6e} GHz  phase = {:>20.12e} rad\n",
                           c.from, width, c.to, width, c.strength, c.phase);
    }
    out << fmt::format("loops ({})\n", report.cycles.size());
    for (std::size_t i = 0; i < report.cycles.size(); ++i) {
        const auto& loop = report.cycles[i];
        std::string seq;
        for (const auto& id : loop.modes) {
            seq += id + " -> ";
        }
        seq += loop.modes.front();
        out << fmt::format("  [{}] {}  theta = {:.12e} rad\n", i, seq, loop.theta);
    }

    if (!cf.output.empty()) {
        sink s(cf.output, out);
        auto& os = s.stream();
        os << "cycle_index,mode_sequence,theta_rad\n";
        for (std::size_t i = 0; i < report.cycles.size(); ++i) {
            std::string seq;
            for (const auto& id : report.cycles[i].modes) {
                seq += (seq.empty() ? "" : " ") + id;
            }
            os << i << ',' << seq << ',' << fmt_e(report.cycles[i].theta) << '\n';
        }
    }
}

void run_s21map(const param_flags& pf, const common_flags& cf, const std::string& probe_text,
                const std::string& sweep_text, const std::string& param_text, std::ostream& out)
{
    const auto params = pf.resolve();
    const auto parameter = parse_parameter(param_text);
    const auto sweep = parse_range(sweep_text, parameter, "--sweep");
    const auto axis = parse_range(probe_text, sweep_parameter::omega_m, "--probe");
    const auto grid = probe_grid::uniform(axis.start, axis.stop, axis.steps, sweep);
    const auto trace = transmission_map(params, grid);

    sink s(cf.output, out);
    auto& os = s.stream();
    os << "# cmag s21map sweep=" << parameter_name(parameter) << ' ' << sweep_text
       << " probe=" << probe_text << ' ' << describe(params) << '\n';
    os << "param_ghz,probe_ghz,re_s21,im_s21,abs_s21\n";
    std::string buffer;
    for (std::size_t r = 0; r < trace.rows(); ++r) {
        buffer.clear();
        for (std::size_t c = 0; c < trace.cols(); ++c) {
            const auto v = trace.at(r, c);
            fmt::format_to(std::back_inserter(buffer), "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                           trace.parameters[r], trace.probes[c], v.real(), v.imag(), std::abs(v));
        }
        os << buffer;
    }
}

void run_formfactor(const common_flags& cf, const std::string& field_path,
                    const std::string& center_text, double radius, double omega_c,
                    std::ostream& out, std::ostream& err)
{
    std::ifstream in(field_path);
    if (!in) {
        throw input_error(fmt::format("cannot open field map '{}'", field_path));
    }
    const auto field = read_field_csv(in);
    const sample_region region{parse_triple(center_text, "--center"), radius};
    const complex h = h_tilde(field, region);
    const double eta = form_factor(field, region);
    const double phase = coupling_phase(field, region);
    const double g = coupling_strength(eta, omega_c);
    const double z = z_component_check(field, region);
    if (z > z_component_warn_threshold) {
        err << fmt::format("warning: axial field fraction {:.3f} exceeds {:.2f}; the "
                           "transverse-mode coupling model may not apply\n",
                           z, z_component_warn_threshold);
    }

    sink s(cf.output, out);
    auto& os = s.stream();
    os << "# cmag formfactor field=" << field_path << " center=" << center_text
       << " radius=" << radius << " omega_c=" << omega_c << '\n';
    os << "quantity,value\n";
    os << "sample_volume_m3," << fmt_e(sample_volume(field, region)) << '\n';
    os << "cavity_volume_m3," << fmt_e(field.volume()) << '\n';
    os << "re_h_tilde," << fmt_e(h.real()) << '\n';
    os << "im_h_tilde," << fmt_e(h.imag()) << '\n';
    os << "eta," << fmt_e(eta) << '\n';
    os << "phase_rad," << fmt_e(phase) << '\n';
    os << "g_ghz," << fmt_e(g) << '\n';
    os << "z_fraction," << fmt_e(z) << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Coupling-phase simulator for multimode cavity magnonics", "cmag"};
    app.require_subcommand(1);

    param_flags pf;
    common_flags cf;
    std::string sweep_text, probe_text, param_text, branches = "1,2";
    std::string config, phases, field_path, center_text;
    double radius = 0.0, omega_c = 0.0;

    auto* spectrum = app.add_subcommand("spectrum", "polariton frequencies over a sweep");
    pf.attach(spectrum);
    cf.attach(spectrum);
    spectrum->add_option("--sweep", sweep_text, "start:stop:steps")->default_str("3.4:6.6:601");
    spectrum->add_option("--param", param_text, "omega_m or delta_m")->default_str("omega_m");

    auto* gap = app.add_subcommand("gap", "minimum gap between two branches");
    pf.attach(gap);
    cf.attach(gap);
    gap->add_option("--sweep", sweep_text, "start:stop:steps")->default_str("-0.2:0.2:401");
    gap->add_option("--param", param_text, "omega_m or delta_m")->default_str("delta_m");
    gap->add_option("--branches", branches, "low,high branch indices");

    auto* dispersive = app.add_subcommand("dispersive", "Schrieffer-Wolff effective Hamiltonian");
    pf.attach(dispersive);
    cf.attach(dispersive);

    auto* gauge = app.add_subcommand("gauge", "gauge fixing and loop phases");
    pf.attach(gauge);
    cf.attach(gauge);
    gauge->add_option("--config", config, "graph file ([mode.*] / [coupling.*] sections)");
    gauge->add_option("--phases", phases, "phi00,phi01,phi10,phi11 for the two-sphere graph");

    auto* s21 = app.add_subcommand("s21map", "transmission map");
    pf.attach(s21);
    cf.attach(s21);
    s21->add_option("--probe", probe_text, "start:stop:steps (GHz)")->default_str("3.4:6.6:601");
    s21->add_option("--sweep", sweep_text, "start:stop:steps")->default_str("3.4:6.6:601");
    s21->add_option("--param", param_text, "omega_m or delta_m")->default_str("omega_m");

    auto* ff = app.add_subcommand("formfactor", "form factor, phase and coupling from a field map");
    cf.attach(ff);
    ff->add_option("--field", field_path, "field CSV")->required();
    ff->add_option("--center", center_text, "sample center x,y,z (m)")->required();
    ff->add_option("--radius", radius, "sample radius (m)")->required();
    ff->add_option("--omega-c", omega_c, "cavity frequency (GHz)")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    auto or_default = [](std::string& text, const char* fallback) {
        if (text.empty()) {
            text = fallback;
        }
    };

    try {
        if (spectrum->parsed()) {
            or_default(sweep_text, "3.4:6.6:601");
            or_default(param_text, "omega_m");
            run_spectrum(pf, cf, sweep_text, param_text, out);
        } else if (gap->parsed()) {
            or_default(sweep_text, "-0.2:0.2:401");
            or_default(param_text, "delta_m");
            run_gap(pf, cf, sweep_text, param_text, branches, out);
        } else if (dispersive->parsed()) {
            run_dispersive(pf, cf, out);
        } else if (gauge->parsed()) {
            run_gauge(pf, cf, config, phases, out);
        } else if (s21->parsed()) {
            or_default(sweep_text, "3.4:6.6:601");
            or_default(probe_text, "3.4:6.6:601");
            or_default(param_text, "omega_m");
            run_s21map(pf, cf, probe_text, sweep_text, param_text, out);
        } else if (ff->parsed()) {
            run_formfactor(cf, field_path, center_text, radius, omega_c, out, err);
        }
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const compute_error& e) {
        err << "compute error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

int run(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

} // namespace cmag::cli
