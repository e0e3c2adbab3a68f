#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wedgecot::cli
{
//! Exit codes of the command-line front end.
enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 2,    //!< bad flags or input validation failure
    exit_numeric = 3,  //!< convergence/apex failure, unwritable output, failed check
};

/*!
 * Run the front end on an argument vector (args[0] is the program name).
 * Datasets go to the --output destination; tables and messages go to
 * \c out and \c err.
 */
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace wedgecot::cli
