#ifndef SHAKN_ERRORS_HPP
#define SHAKN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shakn {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid parameter, state, or configuration value.
class validation_error : public error {
public:
    explicit validation_error(const std::string& msg) : error(msg) {}
};

/// Numerical failure during integration or solving (width collapse,
/// divergence, boundary leakage, quadrature truncation, ...).
class numerical_error : public error {
public:
    explicit numerical_error(const std::string& msg) : error(msg) {}
};

/// Config-file parse error; carries the offending line number (1-based, 0 if n/a).
class config_error : public error {
public:
    config_error(const std::string& msg, int line = 0)
        : error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }
private:
    int line_;
};

} // namespace shakn

#endif
