#include "transmission_detail.hpp"

namespace cmag::reference {

transmission_trace transmission_map(const system_params& params, const probe_grid& grid)
{
    auto trace = detail::make_trace(params, grid);
    for (std::size_t r = 0; r < trace.rows(); ++r) {
        detail::transmission_row(trace, r);
    }
    return trace;
}

} // namespace cmag::reference
