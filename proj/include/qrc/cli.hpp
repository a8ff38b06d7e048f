#pragma once

namespace qrc {

/// Entry point of the `qrc` tool: run, sweep, compare-feedback, check.
/// Returns the process exit code.
int cli_main(int argc, const char* const* argv);

}  // namespace qrc
