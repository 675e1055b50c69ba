#pragma once

#include <stdexcept>
#include <string>

namespace ancr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroColumn : Error {
    explicit ZeroColumn(std::size_t index)
        : Error("column " + std::to_string(index) + " has (near-)zero norm"), index(index) {}
    std::size_t index;
};

struct NotPositiveDefinite : Error {
    NotPositiveDefinite() : Error("matrix is not symmetric positive definite") {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

struct DimensionTooLarge : Error {
    explicit DimensionTooLarge(const std::string& what) : Error("dimension too large: " + what) {}
};

struct DegenerateAffineSolution : Error {
    DegenerateAffineSolution() : Error("affine solution degenerate: 1'c is numerically zero") {}
};

struct ParseError : Error {
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct InconsistentDimension : Error {
    InconsistentDimension(const std::string& path, std::size_t line, std::size_t expected,
                          std::size_t got)
        : Error(path + ":" + std::to_string(line) + ": expected " + std::to_string(expected) +
                " features, got " + std::to_string(got)),
          line(line) {}
    std::size_t line;
};

struct EmptyClass : Error {
    explicit EmptyClass(const std::string& what) : Error("empty class: " + what) {}
};

struct ClassTooSmall : Error {
    ClassTooSmall(int class_id, std::size_t have, std::size_t want)
        : Error("class " + std::to_string(class_id) + " has " + std::to_string(have) +
                " samples, need " + std::to_string(want)),
          class_id(class_id) {}
    int class_id;
};

struct TooManyAtoms : Error {
    explicit TooManyAtoms(std::size_t n)
        : Error("grid oracle supports n <= 4, got n = " + std::to_string(n)) {}
};

struct SingularSystem : Error {
    SingularSystem() : Error("bordered KKT system is singular") {}
};

struct InfeasibleInput : Error {
    explicit InfeasibleInput(const std::string& what) : Error("infeasible input: " + what) {}
};

struct ConfigError : Error {
    using Error::Error;
};

struct DataError : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what) : Error("index out of range: " + what) {}
};

}  // namespace ancr
