#pragma once

#include <stdexcept>
#include <string>

namespace influx {

// Problems with input data: malformed files, out-of-range ids, events that
// would break a graph invariant. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant (index out of sync, tracker disagreeing with
// the structure it watches). The CLI maps these to exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Exact-oracle work would exceed the configured enumeration budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// True when INFLUX_ASSERT=1 is set in the environment. Guards expensive
// self-checks (full index revalidation, cache recomputation).
bool assertions_enabled();

}  // namespace influx
