#ifndef CMAG_GAUGE_HPP
#define CMAG_GAUGE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "cmag/model.hpp"

namespace cmag {

/*
 * A fundamental cycle of the coupling graph. `modes` lists the loop starting
 * at its smallest id and heading to the smaller of that id's two loop
 * neighbours; the loop closes back to modes.front(). `theta` is the signed
 * phase sum along that walk (+phi with the edge orientation, -phi against).
 */
struct phase_loop
{
    std::vector<std::string> modes;
    double theta = 0.0;
    std::size_t chord = 0;     ///< index of the non-tree edge in the input graph
    bool chord_aligned = true; ///< walk crosses the chord from -> to
};

struct gauge_report
{
    /// Rotation angle per mode, in the input graph's mode order.
    std::vector<std::pair<std::string, double>> mode_rotations;
    coupling_graph canonical_graph;
    std::vector<phase_loop> cycles;
};

/*
 * Applies U = exp(i phase a^dagger a) to mode `id`: a -> a e^{-i phase}.
 * Edges leaving the mode (from) lose `phase`, edges entering it (to) gain it.
 */
coupling_graph rotate_mode(const coupling_graph& graph, std::string_view id,
                           double phase);

/// Spanning-tree gauge fixing: zero phase on tree edges, loop phases on chords.
gauge_report reduce_phases(const coupling_graph& graph);

std::vector<phase_loop> loop_phases(const coupling_graph& graph);

/// |E| - |V| + number of connected components.
std::size_t cycle_rank(const coupling_graph& graph);

} // namespace cmag

#endif
