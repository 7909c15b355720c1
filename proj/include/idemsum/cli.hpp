#pragma once

#include <cstdint>
#include <iosfwd>

namespace idemsum::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

// Exit codes: 0 when every requested check passes, 1 when a check fails or
// the library reports an error, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace idemsum::cli
