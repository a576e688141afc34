#ifndef CMAG_TRANSMISSION_DETAIL_HPP
#define CMAG_TRANSMISSION_DETAIL_HPP

#include "cmag/inout.hpp"

namespace cmag::detail {

transmission_trace make_trace(const system_params& params, const probe_grid& grid);

/// Fills row `row` of the trace; errors carry (row, col) context.
void transmission_row(transmission_trace& trace, std::size_t row);

} // namespace cmag::detail

#endif
