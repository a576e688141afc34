#ifndef CMAG_CLI_HPP
#define CMAG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cmag::cli {

/*
 * Subcommands: spectrum, gap, dispersive, gauge, s21map, formfactor.
 * Returns 0 on success, 1 on usage/input errors, 2 on compute errors
 * (singularities). Data goes to --output or `out`; diagnostics to `err`.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

} // namespace cmag::cli

#endif
