#pragma once

// Command-line dispatcher. Exit codes: 0 success, 1 verification failure
// (a witness or the first failing flag is reported), 2 budget exhaustion or
// usage errors. The default node budget comes from EGZLAB_BUDGET when the
// --budget flag is absent.

#include <iosfwd>

namespace egz::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace egz::cli
