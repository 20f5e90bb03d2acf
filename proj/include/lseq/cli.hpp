#ifndef LSEQ_CLI_HPP
#define LSEQ_CLI_HPP

#include <ostream>

namespace lseq::cli {

/// Runs one subcommand. Reports go to `out` (JSON, or CSV for tables),
/// diagnostics to `err`. Returns 0 on success, 1 on input errors and 2 on
/// numerical failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace lseq::cli

#endif
