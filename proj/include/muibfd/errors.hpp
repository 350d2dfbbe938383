#pragma once

#include <stdexcept>
#include <string>

namespace muibfd {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Degenerate geometry (coincident points, zero direction vector).
class geometry_error : public error {
public:
    using error::error;
};

/// Link evaluation requested inside the near-field cutoff.
class near_field_error : public geometry_error {
public:
    using geometry_error::geometry_error;
};

/// Unknown node, port, or channel id.
class reference_error : public error {
public:
    using error::error;
};

/// Operation invoked on an invalid channel plan.
class plan_error : public error {
public:
    using error::error;
};

/// No feasible solution under the given constraints.
class infeasibility_error : public error {
public:
    using error::error;
};

/// Numerical factorization failure (ill-conditioned kernel).
class conditioning_error : public error {
public:
    using error::error;
};

/// Argument outside the supported range (e.g. derangement count guard).
class size_error : public error {
public:
    using error::error;
};

/// Malformed input file. Carries a 1-based line number when known (0 otherwise).
class parse_error : public error {
public:
    parse_error(const std::string& msg, std::size_t line = 0)
        : error(line ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Filesystem read/write failure.
class io_error : public error {
public:
    using error::error;
};

} // namespace muibfd
