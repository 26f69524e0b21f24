#pragma once

#include <stdexcept>
#include <string>

namespace qbr {

/// Base error; `code()` is the machine-readable name used in CLI error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct NotAUnit : Error {
    explicit NotAUnit(const std::string& w) : Error("NotAUnit", w) {}
};
struct PoleAtSpecialization : Error {
    explicit PoleAtSpecialization(const std::string& w) : Error("PoleAtSpecialization", w) {}
};
struct SizeMismatch : Error {
    explicit SizeMismatch(const std::string& w) : Error("SizeMismatch", w) {}
};
struct RangeError : Error {
    explicit RangeError(const std::string& w) : Error("RangeError", w) {}
};
struct NotInTransversal : Error {
    explicit NotInTransversal(const std::string& w) : Error("NotInTransversal", w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error("ParseError", w) {}
};
struct HypothesisViolation : Error {
    explicit HypothesisViolation(const std::string& w) : Error("HypothesisViolation", w) {}
};

} // namespace qbr
