#pragma once

#include <stdexcept>
#include <string>

namespace clusterx {

// Base class for every domain error raised by the library. The CLI maps these
// to exit code 1; anything else escaping is treated as a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define CLUSTERX_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

CLUSTERX_DEFINE_ERROR(DimensionError);
CLUSTERX_DEFINE_ERROR(DivisionByZero);
CLUSTERX_DEFINE_ERROR(EmptyPolynomial);
CLUSTERX_DEFINE_ERROR(OverflowError);
CLUSTERX_DEFINE_ERROR(ParseError);
CLUSTERX_DEFINE_ERROR(ValidationError);
CLUSTERX_DEFINE_ERROR(IllDefinedMutation);
CLUSTERX_DEFINE_ERROR(NotAcyclic);
CLUSTERX_DEFINE_ERROR(DomainError);
CLUSTERX_DEFINE_ERROR(NotInScope);
CLUSTERX_DEFINE_ERROR(RootRequired);
CLUSTERX_DEFINE_ERROR(InhomogeneousError);
CLUSTERX_DEFINE_ERROR(NotInSpan);
CLUSTERX_DEFINE_ERROR(CapExceeded);
CLUSTERX_DEFINE_ERROR(InternalError);

#undef CLUSTERX_DEFINE_ERROR

}  // namespace clusterx
