#pragma once

#include <stdexcept>

namespace homalg {

struct CompositeNonzero : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegreeOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct NaturalityFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconclusiveStabilization : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SizeBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoIsomorphismFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationTooShallow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace homalg
