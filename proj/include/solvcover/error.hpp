#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solvcover {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define SOLVCOVER_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    using Error::Error;                                                \
    const char* kind() const noexcept override { return #Name; }       \
  };

SOLVCOVER_DEFINE_ERROR(EmptyGenerators)
SOLVCOVER_DEFINE_ERROR(NotASubgroup)
SOLVCOVER_DEFINE_ERROR(NotNormal)
SOLVCOVER_DEFINE_ERROR(InternalInconsistency)
SOLVCOVER_DEFINE_ERROR(BadParameter)
SOLVCOVER_DEFINE_ERROR(NotAPrimePower)
SOLVCOVER_DEFINE_ERROR(EvenFieldOrder)
SOLVCOVER_DEFINE_ERROR(DeterminantNotSquare)
SOLVCOVER_DEFINE_ERROR(ElementNotFound)
SOLVCOVER_DEFINE_ERROR(NotTwoGenerated)
SOLVCOVER_DEFINE_ERROR(GroupSolvable)
SOLVCOVER_DEFINE_ERROR(ElementNotInGroup)
SOLVCOVER_DEFINE_ERROR(ElementInRadical)
SOLVCOVER_DEFINE_ERROR(ParseError)

#undef SOLVCOVER_DEFINE_ERROR

class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t cap)
      : Error("group order exceeds enumeration cap " + std::to_string(cap)), cap_(cap) {}
  const char* kind() const noexcept override { return "CapExceeded"; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

// Raised when some universe target has no candidate able to cover it.
class InfeasibleUniverse : public Error {
 public:
  InfeasibleUniverse(const std::string& what, std::size_t target)
      : Error(what), target_(target) {}
  const char* kind() const noexcept override { return "InfeasibleUniverse"; }
  std::size_t target() const noexcept { return target_; }

 private:
  std::size_t target_;
};

}  // namespace solvcover
