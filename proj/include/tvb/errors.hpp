#pragma once
// Error hierarchy shared by every module of the library.

#include <stdexcept>
#include <string>

namespace tvb {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define TVB_DECLARE_ERROR(Name)                                       \
    class Name : public Error {                                       \
    public:                                                           \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

TVB_DECLARE_ERROR(DimMismatch);
TVB_DECLARE_ERROR(NonFinite);
TVB_DECLARE_ERROR(SymmetryViolation);
TVB_DECLARE_ERROR(NumericalFailure);
TVB_DECLARE_ERROR(NonMonotoneWeights);
TVB_DECLARE_ERROR(BadTruncation);
TVB_DECLARE_ERROR(BadPrecision);
TVB_DECLARE_ERROR(BadConfig);
TVB_DECLARE_ERROR(BadSpec);
TVB_DECLARE_ERROR(ZeroGroundTruth);
TVB_DECLARE_ERROR(TooSmall);
TVB_DECLARE_ERROR(BadMagic);
TVB_DECLARE_ERROR(TruncatedPayload);
TVB_DECLARE_ERROR(UnsupportedVersion);
TVB_DECLARE_ERROR(UnsupportedFormat);
TVB_DECLARE_ERROR(CorruptHeader);
TVB_DECLARE_ERROR(IoFailure);

#undef TVB_DECLARE_ERROR

// DegenerateScale is declared next to the solver because it carries the
// partial trace of the aborted run.

}  // namespace tvb
