#pragma once

#include <iosfwd>

namespace linrank::cli {

enum Exit : int {
    kOk = 0,
    kInputError = 2,
    kDisagreement = 3,
    kUnknown = 10,
};

/// Entry point of the linrank tool; writes to the given streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace linrank::cli
