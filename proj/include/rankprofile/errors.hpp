#pragma once

#include <stdexcept>
#include <string>

namespace rankprofile {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define RANKPROFILE_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

RANKPROFILE_DEFINE_ERROR(NotPrime);
RANKPROFILE_DEFINE_ERROR(ModulusTooLarge);
RANKPROFILE_DEFINE_ERROR(ZeroInverse);
RANKPROFILE_DEFINE_ERROR(DimensionMismatch);
RANKPROFILE_DEFINE_ERROR(InvalidIndices);
RANKPROFILE_DEFINE_ERROR(InvalidPermutation);
RANKPROFILE_DEFINE_ERROR(SingularDiagonal);
RANKPROFILE_DEFINE_ERROR(NotRpmRevealing);
RANKPROFILE_DEFINE_ERROR(IndexOutOfRange);
RANKPROFILE_DEFINE_ERROR(PreconditionViolated);
RANKPROFILE_DEFINE_ERROR(SingularExtension);
RANKPROFILE_DEFINE_ERROR(BudgetExceeded);
RANKPROFILE_DEFINE_ERROR(NoCandidate);
RANKPROFILE_DEFINE_ERROR(MultipleCandidates);
RANKPROFILE_DEFINE_ERROR(InvalidRank);
RANKPROFILE_DEFINE_ERROR(ParseError);

#undef RANKPROFILE_DEFINE_ERROR

} // namespace rankprofile
