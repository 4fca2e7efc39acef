#pragma once

#include <stdexcept>
#include <string>

namespace tfbound {

/// Base of every numerical failure raised by the library. The CLI maps these
/// to exit status 3 and prefixes the message with `module()`.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string module, const std::string& what)
        : std::runtime_error(what), module_(std::move(module)) {}
    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

class DomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Non-finite integrand, divergent integral, bad profile.
class EvaluationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IntegrationError : public NumericalError {
public:
    IntegrationError(const std::string& what, double last_abscissa)
        : NumericalError("numerics", what), last_abscissa_(last_abscissa) {}
    double last_abscissa() const noexcept { return last_abscissa_; }

private:
    double last_abscissa_;
};

class BracketError : public NumericalError {
public:
    explicit BracketError(const std::string& what) : NumericalError("numerics", what) {}
};

class SolverError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Outermost bound state does not fit on the radial grid.
class GridExtensionError : public NumericalError {
public:
    GridExtensionError(const std::string& what, int ell)
        : NumericalError("spectrum", what), ell_(ell) {}
    int ell() const noexcept { return ell_; }

private:
    int ell_;
};

class DivergenceError : public NumericalError {
public:
    explicit DivergenceError(const std::string& what) : NumericalError("tf-energy", what) {}
};

/// Bad configuration or arguments (CLI exit status 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or inconsistent cache entry (CLI exit status 4).
class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tfbound
