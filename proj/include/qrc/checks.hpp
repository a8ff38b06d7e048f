#pragma once

#include <iosfwd>

namespace qrc {

/// Fast invariant and oracle suite behind `qrc check`. Prints one line per
/// check and returns true when all pass.
bool run_checks(std::ostream& out);

}  // namespace qrc
