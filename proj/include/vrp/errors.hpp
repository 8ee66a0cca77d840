#pragma once

#include <stdexcept>
#include <string>

namespace vrp {

// Raised when an exact procedure is asked for more than its enumeration
// budget allows (brute-force TSP, matching DP, partition oracle).
class SizeLimitError : public std::runtime_error {
 public:
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal invariant that the algorithms guarantee is
// observed broken (e.g. odd parity in the Euler multigraph).
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace vrp
