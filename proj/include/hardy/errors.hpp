#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

// Every failure raised by the library derives from Error so callers can
// catch the whole family at once.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HARDY_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

HARDY_DEFINE_ERROR(ParameterBelowCritical);
HARDY_DEFINE_ERROR(InvalidArgument);
HARDY_DEFINE_ERROR(EvalAtSingularity);
HARDY_DEFINE_ERROR(LogBranchOutOfRange);
HARDY_DEFINE_ERROR(RecipeDivergent);
HARDY_DEFINE_ERROR(DegenerateRegion);
HARDY_DEFINE_ERROR(NonFiniteIntegrand);
HARDY_DEFINE_ERROR(ZeroDenominator);
HARDY_DEFINE_ERROR(InadmissibleTestFunction);
HARDY_DEFINE_ERROR(NotPositiveDefinite);
HARDY_DEFINE_ERROR(SolverDiverged);
HARDY_DEFINE_ERROR(MonotonicityViolated);
HARDY_DEFINE_ERROR(DegenerateTestFunction);
HARDY_DEFINE_ERROR(CollarUnresolved);
HARDY_DEFINE_ERROR(ConfigInvalid);
HARDY_DEFINE_ERROR(FormatError);

#undef HARDY_DEFINE_ERROR

}  // namespace hardy
