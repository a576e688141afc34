#include "cmag/spectrum.hpp"

namespace cmag::reference {

std::vector<spectrum_row> sweep_spectrum(const system_params& params,
                                         const sweep_spec& sweep)
{
    sweep.validate();
    params.validate();
    std::vector<spectrum_row> rows;
    rows.reserve(static_cast<std::size_t>(sweep.steps));
    for (int i = 0; i < sweep.steps; ++i) {
        rows.push_back(spectrum_point(params, sweep.parameter, sweep.value(i)));
    }
    return rows;
}

} // namespace cmag::reference
