#pragma once

#include <stdexcept>
#include <string>

namespace zkframes {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ZKFRAMES_DEFINE_ERROR(Name)      \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

// exact-linalg
ZKFRAMES_DEFINE_ERROR(NonIntegralGram);
ZKFRAMES_DEFINE_ERROR(RankDeficient);
// zk-codes
ZKFRAMES_DEFINE_ERROR(NotValidPrime);
ZKFRAMES_DEFINE_ERROR(NotSelfDual);
ZKFRAMES_DEFINE_ERROR(ConditionViolated);
ZKFRAMES_DEFINE_ERROR(NotSelfOrthogonal);
ZKFRAMES_DEFINE_ERROR(TooLarge);
// lattices
ZKFRAMES_DEFINE_ERROR(NotUnimodular);
ZKFRAMES_DEFINE_ERROR(BudgetExceeded);
ZKFRAMES_DEFINE_ERROR(LatticeIsEven);
ZKFRAMES_DEFINE_ERROR(DimensionNotDiv8);
ZKFRAMES_DEFINE_ERROR(BadVector);
// frames
ZKFRAMES_DEFINE_ERROR(CongruenceViolated);
ZKFRAMES_DEFINE_ERROR(NotInLattice);
ZKFRAMES_DEFINE_ERROR(DimensionNotDiv4);
ZKFRAMES_DEFINE_ERROR(InvalidFrame);
ZKFRAMES_DEFINE_ERROR(UnknownLattice);
// representations
ZKFRAMES_DEFINE_ERROR(BadParams);
ZKFRAMES_DEFINE_ERROR(Unsupported);
// catalog / cli
ZKFRAMES_DEFINE_ERROR(UnknownName);
ZKFRAMES_DEFINE_ERROR(DataError);
ZKFRAMES_DEFINE_ERROR(UnsupportedTheorem);

#undef ZKFRAMES_DEFINE_ERROR

}  // namespace zkframes
