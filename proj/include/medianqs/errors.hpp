#pragma once

#include <stdexcept>
#include <string>

namespace medianqs {

// Each error family maps onto one CLI exit code (see cli.hpp).
enum class ErrorKind {
    Parse = 2,
    Parameter = 3,
    Invariant = 4,
    Resource = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string stage, const std::string& message)
        : std::runtime_error(stage + ": " + message), kind_(kind), stage_(std::move(stage)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& stage() const noexcept { return stage_; }

private:
    ErrorKind kind_;
    std::string stage_;
};

class ParseError : public Error {
public:
    ParseError(std::string stage, const std::string& message)
        : Error(ErrorKind::Parse, std::move(stage), message) {}
};

class ParameterError : public Error {
public:
    ParameterError(std::string stage, const std::string& message)
        : Error(ErrorKind::Parameter, std::move(stage), message) {}
};

class InvariantViolation : public Error {
public:
    InvariantViolation(std::string stage, const std::string& message)
        : Error(ErrorKind::Invariant, std::move(stage), message) {}
};

class ResourceError : public Error {
public:
    ResourceError(std::string stage, const std::string& message)
        : Error(ErrorKind::Resource, std::move(stage), message) {}
};

}  // namespace medianqs
