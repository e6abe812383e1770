#pragma once

#include <iosfwd>

namespace cvlab::cli {

/// Exit codes: 0 success, 1 input or model error, 2 verdict failure under
/// --strict.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitVerdict = 2;

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace cvlab::cli
