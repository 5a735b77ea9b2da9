#pragma once

#include <stdexcept>
#include <string>

namespace sst {

// Every failure mode surfaced by the library derives from Error, so callers
// can either catch the precise condition or the whole family.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SST_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(what) {}       \
  }

SST_DEFINE_ERROR(AliasingError);
SST_DEFINE_ERROR(NonMonotoneError);
SST_DEFINE_ERROR(ConvergenceError);
SST_DEFINE_ERROR(TruncationError);
SST_DEFINE_ERROR(DegenerateSpectrumError);
SST_DEFINE_ERROR(IllConditionedFit);
SST_DEFINE_ERROR(UnreliableResidue);
SST_DEFINE_ERROR(NotUnitalError);
SST_DEFINE_ERROR(NotDerivationError);
SST_DEFINE_ERROR(DegreeMismatchError);
SST_DEFINE_ERROR(LocalizationError);
SST_DEFINE_ERROR(NotSelfAdjointError);
SST_DEFINE_ERROR(GradingError);
SST_DEFINE_ERROR(SingularDError);
SST_DEFINE_ERROR(NotIdempotentError);
SST_DEFINE_ERROR(ConfigError);
SST_DEFINE_ERROR(UnknownExpressionError);

#undef SST_DEFINE_ERROR

}  // namespace sst
