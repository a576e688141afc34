#include <exception>
#include <limits>

#include <fmt/format.h>

#include "cmag/error.hpp"
#include "transmission_detail.hpp"

namespace cmag {

namespace detail {

transmission_trace make_trace(const system_params& params, const probe_grid& grid)
{
    params.validate();
    grid.validate();
    transmission_trace trace;
    trace.params = params;
    trace.parameter = grid.sweep.parameter;
    trace.probes = grid.frequencies;
    for (int r = 0; r < grid.sweep.steps; ++r) {
        trace.parameters.push_back(grid.sweep.value(r));
    }
    trace.s21.resize(trace.rows() * trace.cols());
    return trace;
}

void transmission_row(transmission_trace& trace, std::size_t row)
{
    const auto p = with_parameter(trace.params, trace.parameter, trace.parameters[row]);
    try {
        p.validate();
    } catch (const input_error& e) {
        throw input_error(fmt::format("map row {}: {}", row, e.what()));
    }
    for (std::size_t col = 0; col < trace.cols(); ++col) {
        try {
            trace.s21[row * trace.cols() + col] = s21_closed_form(p, trace.probes[col]);
        } catch (const singularity_error& e) {
            throw singularity_error(fmt::format("map point (row {}, col {}): {}", row, col, e.what()));
        } catch (const compute_error& e) {
            throw compute_error(fmt::format("map point (row {}, col {}): {}", row, col, e.what()));
        } catch (const input_error& e) {
            throw input_error(fmt::format("map point (row {}, col {}): {}", row, col, e.what()));
        }
    }
}

} // namespace detail

transmission_trace transmission_map(const system_params& params, const probe_grid& grid)
{
    auto trace = detail::make_trace(params, grid);
    const auto rows = static_cast<long>(trace.rows());

    long failed_row = std::numeric_limits<long>::max();
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 4)
    for (long r = 0; r < rows; ++r) {
        try {
            detail::transmission_row(trace, static_cast<std::size_t>(r));
        } catch (...) {
#pragma omp critical(cmag_map_failure)
            if (r < failed_row) {
                failed_row = r;
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return trace;
}

} // namespace cmag
