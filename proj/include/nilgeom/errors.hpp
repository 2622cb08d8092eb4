#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilgeom {

/// Base for every error raised by the library. `code()` is a stable tag used
/// in reports and for CLI exit-code mapping.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define NILGEOM_DEFINE_ERROR(Name)                                            \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& message) : Error(#Name, message) {}  \
    }

NILGEOM_DEFINE_ERROR(IndexOutOfRange);
NILGEOM_DEFINE_ERROR(AmbientMismatch);
NILGEOM_DEFINE_ERROR(DimensionMismatch);
NILGEOM_DEFINE_ERROR(LeeFormNotClosed);
NILGEOM_DEFINE_ERROR(NotClosed);
NILGEOM_DEFINE_ERROR(CupObstruction);
NILGEOM_DEFINE_ERROR(OmegaNotClosed);
NILGEOM_DEFINE_ERROR(OddDimension);
NILGEOM_DEFINE_ERROR(WrongDimension);
NILGEOM_DEFINE_ERROR(PreconditionFailed);
NILGEOM_DEFINE_ERROR(NotAlmostComplex);
NILGEOM_DEFINE_ERROR(NotNilpotent);
NILGEOM_DEFINE_ERROR(NotUnimodular);
NILGEOM_DEFINE_ERROR(NotHermitian);
NILGEOM_DEFINE_ERROR(DegenerateMetric);
NILGEOM_DEFINE_ERROR(IrrationalVolume);
NILGEOM_DEFINE_ERROR(UnknownName);
NILGEOM_DEFINE_ERROR(InvalidParameter);

#undef NILGEOM_DEFINE_ERROR

/// Jacobi identity fails; `witness()` is a 1-based triple (i,j,k) whose
/// Jacobiator is nonzero.
class JacobiViolation : public Error {
public:
    JacobiViolation(std::array<int, 3> witness, const std::string& message)
        : Error("JacobiViolation", message), witness_(witness) {}
    std::array<int, 3> witness() const noexcept { return witness_; }

private:
    std::array<int, 3> witness_;
};

/// Malformed notation. `position()` is a 0-based offset into the input.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, std::vector<std::string> expected,
                const std::string& message)
        : Error("SyntaxError", message + " at position " + std::to_string(position)),
          position_(position), expected_(std::move(expected)) {}
    std::size_t position() const noexcept { return position_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
};

/// JSON document does not fit the schema; `pointer()` is a JSON pointer.
class SchemaViolation : public Error {
public:
    SchemaViolation(std::string pointer, const std::string& message)
        : Error("SchemaViolation", (pointer.empty() ? std::string("/") : pointer) + ": " + message),
          pointer_(std::move(pointer)) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

} // namespace nilgeom
