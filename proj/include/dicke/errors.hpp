#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dicke {

enum class ErrorKind { validation, resource, convergence, numeric, io, specification };

/// Base of every error raised by the library; `kind()` drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(ErrorKind::validation, field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(ErrorKind::resource, what) {}
};

/// Raised by the cutoff loop; `trace()` holds (cutoff, energy per atom) pairs tried so far.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<std::pair<int, double>> trace)
        : Error(ErrorKind::convergence, what), trace_(std::move(trace)) {}
    const std::vector<std::pair<int, double>>& trace() const noexcept { return trace_; }

private:
    std::vector<std::pair<int, double>> trace_;
};

class NumericError : public Error {
public:
    NumericError(const std::string& what, double best_u, double best_v, double best_energy)
        : Error(ErrorKind::numeric, what), best_u_(best_u), best_v_(best_v), best_energy_(best_energy) {}
    double best_u() const noexcept { return best_u_; }
    double best_v() const noexcept { return best_v_; }
    double best_energy() const noexcept { return best_energy_; }

private:
    double best_u_, best_v_, best_energy_;
};

class IoError : public Error {
public:
    IoError(std::string path, const std::string& what)
        : Error(ErrorKind::io, path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class SpecificationError : public Error {
public:
    explicit SpecificationError(const std::string& what) : Error(ErrorKind::specification, what) {}
};

}  // namespace dicke
