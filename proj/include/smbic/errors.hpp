#ifndef SMBIC_ERRORS_HPP
#define SMBIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace smbic {

/// Invalid parameters or preconditions (CLI maps these to exit code 1).
class param_error : public std::invalid_argument {
public:
    explicit param_error(const std::string& what) : std::invalid_argument(what) {}
};

/// File and format problems (exit code 2).
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric failures: degenerate densities, non-finite scores (exit code 3).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace smbic

#endif
