#include <exception>
#include <limits>

#include "cmag/error.hpp"
#include "cmag/spectrum.hpp"

namespace cmag {

std::vector<spectrum_row> sweep_spectrum(const system_params& params,
                                         const sweep_spec& sweep)
{
    sweep.validate();
    params.validate();
    std::vector<spectrum_row> rows(static_cast<std::size_t>(sweep.steps));

    // Exceptions cannot leave the parallel region; keep the lowest failing row.
    int failed_row = std::numeric_limits<int>::max();
    std::exception_ptr failure;

#pragma omp parallel for schedule(static)
    for (int i = 0; i < sweep.steps; ++i) {
        try {
            rows[static_cast<std::size_t>(i)] =
                spectrum_point(params, sweep.parameter, sweep.value(i));
        } catch (...) {
#pragma omp critical(cmag_sweep_failure)
            if (i < failed_row) {
                failed_row = i;
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

} // namespace cmag
