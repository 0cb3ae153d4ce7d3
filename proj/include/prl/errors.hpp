#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// poset-core
class CycleError : public Error { public: using Error::Error; };
class DuplicateElement : public Error { public: using Error::Error; };
class UnknownElement : public Error { public: using Error::Error; };

// bound-quiver
class NotHasseQuiver : public Error { public: using Error::Error; };
class NotSubspaceRep : public Error { public: using Error::Error; };
class RelationViolation : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };

// linrep
class NestingViolation : public Error { public: using Error::Error; };
class RankDeficient : public Error { public: using Error::Error; };
class PosetMismatch : public Error { public: using Error::Error; };
class LatticeTooLarge : public Error { public: using Error::Error; };
class InvalidWeight : public Error { public: using Error::Error; };

// moment-solver
class SingularMetric : public Error { public: using Error::Error; };
class NoTraceIdentity : public Error { public: using Error::Error; };
class NumericalBreakdown : public Error { public: using Error::Error; };
class CheckFailed : public Error { public: using Error::Error; };
class WrongShape : public Error { public: using Error::Error; };

/// Input text that does not follow one of the file formats. Carries the
/// 1-based line number of the offending line (0 when not line-specific).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace prl
