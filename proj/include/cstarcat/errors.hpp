#ifndef CSTARCAT_ERRORS_HPP
#define CSTARCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cstarcat {

// Base of all library errors. `code()` is a stable machine-readable tag,
// `what()` the human-readable message.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

#define CSTARCAT_DEFINE_ERROR(Name)                        \
  class Name : public Error {                              \
  public:                                                  \
    explicit Name(const std::string& msg) : Error(#Name, msg) {} \
  }

CSTARCAT_DEFINE_ERROR(ShapeMismatch);
CSTARCAT_DEFINE_ERROR(NotHermitian);
CSTARCAT_DEFINE_ERROR(NotPSD);
CSTARCAT_DEFINE_ERROR(DimensionBlowup);
CSTARCAT_DEFINE_ERROR(EndpointMismatch);
CSTARCAT_DEFINE_ERROR(UnknownObject);
CSTARCAT_DEFINE_ERROR(NotAProjection);
CSTARCAT_DEFINE_ERROR(FamilyMismatch);
CSTARCAT_DEFINE_ERROR(DomainMismatch);
CSTARCAT_DEFINE_ERROR(NotMutuallyOrthogonal);
CSTARCAT_DEFINE_ERROR(NotAnIdeal);
CSTARCAT_DEFINE_ERROR(NonGeneric);
CSTARCAT_DEFINE_ERROR(NotUnital);
CSTARCAT_DEFINE_ERROR(RoundingFailure);
CSTARCAT_DEFINE_ERROR(NotAHomomorphism);
CSTARCAT_DEFINE_ERROR(NotInjectiveOnObjects);
CSTARCAT_DEFINE_ERROR(GroupTooLarge);
CSTARCAT_DEFINE_ERROR(InvalidAction);
CSTARCAT_DEFINE_ERROR(NotASubgroup);
CSTARCAT_DEFINE_ERROR(NotEquivariant);
CSTARCAT_DEFINE_ERROR(NotAnExactSquare);
CSTARCAT_DEFINE_ERROR(ParseError);
CSTARCAT_DEFINE_ERROR(ValidationError);

#undef CSTARCAT_DEFINE_ERROR

}  // namespace cstarcat

#endif
