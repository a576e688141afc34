#include "cmag/config_io.hpp"

#include <istream>
#include <ostream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "cmag/error.hpp"

namespace cmag {

namespace pt = boost::property_tree;

namespace {

pt::ptree parse(std::istream& in)
{
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw input_error(fmt::format("config line {}: {}", e.line(), e.message()));
    }
    return tree;
}

double number(const pt::ptree& section, const std::string& section_name,
              const std::string& key)
{
    auto value = section.get_optional<std::string>(key);
    if (!value) {
        throw input_error(fmt::format("[{}] is missing '{}'", section_name, key));
    }
    try {
        std::size_t used = 0;
        double x = std::stod(*value, &used);
        if (used != value->size()) {
            throw std::invalid_argument(*value);
        }
        return x;
    } catch (const std::logic_error&) {
        throw input_error(
            fmt::format("[{}] {} = '{}' is not a number", section_name, key, *value));
    }
}

bool starts_with(const std::string& s, std::string_view prefix)
{
    return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

} // namespace

coupling_graph read_graph(std::istream& in)
{
    const auto tree = parse(in);
    coupling_graph graph;

    // Modes first so couplings may appear anywhere in the file.
    for (const auto& [name, section] : tree) {
        if (!starts_with(name, "mode.")) {
            continue;
        }
        mode m;
        m.id = name.substr(5);
        m.kind = parse_mode_kind(section.get<std::string>("kind", ""));
        m.frequency = number(section, name, "frequency_ghz");
        m.kappa = section.count("kappa_ghz") ? number(section, name, "kappa_ghz") : 0.0;
        for (const auto& [key, value] : section) {
            if (key == "kind" || key == "frequency_ghz" || key == "kappa_ghz") {
                continue;
            }
            constexpr std::string_view prefix = "gamma_";
            constexpr std::string_view suffix = "_ghz";
            if (starts_with(key, prefix) && key.size() > prefix.size() + suffix.size() &&
                key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0) {
                auto label = key.substr(prefix.size(),
                                        key.size() - prefix.size() - suffix.size());
                m.baths[label] = number(section, name, key);
                continue;
            }
            throw input_error(fmt::format("[{}] unknown key '{}'", name, key));
        }
        graph.add_mode(std::move(m));
    }

    for (const auto& [name, section] : tree) {
        if (starts_with(name, "mode.") || name == "params") {
            continue;
        }
        if (!starts_with(name, "coupling.")) {
            throw input_error(fmt::format("unknown section [{}]", name));
        }
        for (const auto& [key, value] : section) {
            if (key != "from" && key != "to" && key != "g_ghz" && key != "phase_rad") {
                throw input_error(fmt::format("[{}] unknown key '{}'", name, key));
            }
        }
        auto from = section.get_optional<std::string>("from");
        auto to = section.get_optional<std::string>("to");
        if (!from || !to) {
            throw input_error(fmt::format("[{}] needs 'from' and 'to'", name));
        }
        double phase = section.count("phase_rad") ? number(section, name, "phase_rad") : 0.0;
        graph.add_coupling(*from, *to, number(section, name, "g_ghz"), phase);
    }
    return graph;
}

void write_graph(std::ostream& out, const coupling_graph& graph)
{
    for (const auto& m : graph.modes()) {
        out << fmt::format("[mode.{}]\nkind = {}\nfrequency_ghz = {:.17g}\nkappa_ghz = {:.17g}\n",
                           m.id, to_string(m.kind), m.frequency, m.kappa);
        for (const auto& [label, rate] : m.baths) {
            out << fmt::format("gamma_{}_ghz = {:.17g}\n", label, rate);
        }
        out << '\n';
    }
    std::size_t n = 0;
    for (const auto& c : graph.couplings()) {
        out << fmt::format("[coupling.{}]\nfrom = {}\nto = {}\ng_ghz = {:.17g}\nphase_rad = {:.17g}\n\n",
                           n++, c.from, c.to, c.strength, c.phase);
    }
}

void read_params(std::istream& in, system_params& params)
{
    const auto tree = parse(in);
    auto section = tree.get_child_optional("params");
    if (!section) {
        throw input_error("config has no [params] section");
    }
    const std::pair<const char*, double*> fields[] = {
        {"omega_c_ghz", &params.omega_c}, {"delta_c_ghz", &params.delta_c},
        {"omega_m_ghz", &params.omega_m}, {"delta_m_ghz", &params.delta_m},
        {"g0_ghz", &params.g0},           {"g1_ghz", &params.g1},
        {"theta_rad", &params.theta},     {"kappa_ghz", &params.kappa}};
    for (const auto& [key, value] : *section) {
        bool known = key == "gamma_ghz";
        for (const auto& [name, target] : fields) {
            if (key == name) {
                *target = number(*section, "params", key);
                known = true;
            }
        }
        if (!known) {
            throw input_error(fmt::format("[params] unknown key '{}'", key));
        }
    }
    if (section->count("gamma_ghz")) {
        double gamma = number(*section, "params", "gamma_ghz");
        params.gamma_a = {gamma, gamma};
        params.gamma_b = {gamma, gamma};
    }
}

} // namespace cmag
