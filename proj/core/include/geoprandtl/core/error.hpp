#pragma once

#include <stdexcept>
#include <string>

namespace geoprandtl {

/// Failure categories. The CLI maps each one to a process exit code.
enum class ErrorKind {
    config = 1,
    numerical = 2,
    infeasible_weight = 3,
    io = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

struct InfeasibleWeightError : Error {
    explicit InfeasibleWeightError(const std::string& what)
        : Error(ErrorKind::infeasible_weight, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace geoprandtl
