#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (t <= 0, y below range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Inconsistent or out-of-scope parameters (theta > 2, d outside (1,p), ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// A numerical procedure did not reach its target accuracy.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double achieved) : Error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// A sampled hypothesis failed while constructing an object; names the condition.
class ConstructionError : public Error {
public:
    ConstructionError(std::string condition, const std::string& detail)
        : Error(condition + ": " + detail), condition_(std::move(condition)) {}
    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

// Operation called on an object that does not satisfy its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace fraclab
