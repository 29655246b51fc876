#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ilconv {

// Base class for every recoverable failure the library reports. Scenario
// execution catches this type per query; anything else is a bug.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point fell outside the carrier set of the space it was used with.
struct SortError : Error {
  using Error::Error;
};

// The deviation profile could not certify the cells beyond the probe, so an
// exact answer would be a guess. Raised instead of returning a wrong set.
struct TailUncertifiedError : Error {
  explicit TailUncertifiedError(std::uint32_t probed)
      : Error("tail behaviour uncertified beyond cell probe " +
              std::to_string(probed)),
        probed_cells(probed) {}
  std::uint32_t probed_cells;
};

// The requested ideal has no supported additive-property decomposition.
struct ApUnsupportedError : Error {
  using Error::Error;
};

// An operation's stated precondition does not hold for the given input.
struct PreconditionError : Error {
  using Error::Error;
};

} // namespace ilconv
