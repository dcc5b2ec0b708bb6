#pragma once

#include <stdexcept>
#include <string>

namespace gframe {

// Error classes map one-to-one onto CLI exit codes.
enum class ErrorClass {
    Parse,        // exit 2: malformed input files, bad indices, bad usage
    Math,         // exit 3: domain violations, convergence failures, degenerate inputs
    Verification, // exit 4: a claimed relationship between objects does not hold
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
    ErrorClass error_class() const { return cls_; }

private:
    ErrorClass cls_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(ErrorClass::Parse, what) {}
};
struct RangeError : Error {
    explicit RangeError(const std::string& what) : Error(ErrorClass::Parse, what) {}
};
struct DuplicateEdge : Error {
    explicit DuplicateEdge(const std::string& what) : Error(ErrorClass::Parse, what) {}
};
struct SelfLoop : Error {
    explicit SelfLoop(const std::string& what) : Error(ErrorClass::Parse, what) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ErrorClass::Math, what) {}
};
struct NonSymmetric : Error {
    explicit NonSymmetric(const std::string& what) : Error(ErrorClass::Math, what) {}
};
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error(ErrorClass::Math, what) {}
};
struct RankZero : Error {
    explicit RankZero(const std::string& what) : Error(ErrorClass::Math, what) {}
};
struct NotCorank1 : Error {
    explicit NotCorank1(const std::string& what) : Error(ErrorClass::Math, what) {}
};
struct NotIndependent : Error {
    explicit NotIndependent(const std::string& what) : Error(ErrorClass::Math, what) {}
};
struct CombinatorialLimit : Error {
    explicit CombinatorialLimit(const std::string& what) : Error(ErrorClass::Math, what) {}
};

struct NotAFrame : Error {
    explicit NotAFrame(const std::string& what) : Error(ErrorClass::Verification, what) {}
};
struct NotADual : Error {
    explicit NotADual(const std::string& what) : Error(ErrorClass::Verification, what) {}
};
struct NotEquivalent : Error {
    explicit NotEquivalent(const std::string& what) : Error(ErrorClass::Verification, what) {}
};

inline int exit_code(ErrorClass cls) {
    switch (cls) {
    case ErrorClass::Parse: return 2;
    case ErrorClass::Math: return 3;
    case ErrorClass::Verification: return 4;
    }
    return 1;
}

} // namespace gframe
