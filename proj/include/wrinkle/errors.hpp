#pragma once

#include <stdexcept>
#include <string>

namespace wrinkle {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WRINKLE_DEFINE_ERROR(Name)                       \
  class Name : public Error {                            \
   public:                                               \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  };

WRINKLE_DEFINE_ERROR(UnboundVariable)
WRINKLE_DEFINE_ERROR(DegreeError)
WRINKLE_DEFINE_ERROR(ParseError)
WRINKLE_DEFINE_ERROR(UnknownId)
WRINKLE_DEFINE_ERROR(ParameterOutOfRange)
WRINKLE_DEFINE_ERROR(Unsupported)
WRINKLE_DEFINE_ERROR(NotCritical)
WRINKLE_DEFINE_ERROR(Degenerate)
WRINKLE_DEFINE_ERROR(NotOnZeroSet)
WRINKLE_DEFINE_ERROR(SignatureError)
WRINKLE_DEFINE_ERROR(StepTooCoarse)
WRINKLE_DEFINE_ERROR(ModelInconsistency)
WRINKLE_DEFINE_ERROR(KNotFound)
WRINKLE_DEFINE_ERROR(RefineStep)
WRINKLE_DEFINE_ERROR(DimensionMismatch)
WRINKLE_DEFINE_ERROR(MoveRejected)

#undef WRINKLE_DEFINE_ERROR

}  // namespace wrinkle
