#ifndef CMAG_ERROR_HPP
#define CMAG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cmag {

/// Malformed input: bad parameters, unknown ids, duplicate edges, parse failures.
class input_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A well-formed input that the numerics cannot handle (poles, zero-energy fields).
class compute_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Vanishing detuning or singular response matrix.
class singularity_error : public compute_error
{
public:
    using compute_error::compute_error;
};

} // namespace cmag

#endif
