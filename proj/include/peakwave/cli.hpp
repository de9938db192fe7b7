#pragma once

namespace peakwave::cli {

/// Parses argv and runs one subcommand. Returns the process exit status:
/// 0 on success, 1 on computation failure, 2 on usage errors.
int dispatch(int argc, const char* const* argv);

}  // namespace peakwave::cli
