#pragma once

#include <stdexcept>

namespace hyperlab {

/// A structural guarantee of the library failed at run time.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// c * |X| <= 1: the query lower bound is undefined.
struct DegenerateGame : std::domain_error {
  using std::domain_error::domain_error;
};

/// Requested separation exceeds the circle's diameter.
struct InfeasiblePacking : std::domain_error {
  using std::domain_error::domain_error;
};

struct NoRoot : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace hyperlab
