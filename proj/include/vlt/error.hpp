#pragma once

#include <stdexcept>
#include <string>

namespace vlt {

/// Base of all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters: grid sizes, supports, sample counts, malformed config.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Degenerate or singular geometry: dependent ray directions, non-invertible
/// star configurations, directions in a singular set.
class GeometryError : public Error {
public:
    using Error::Error;
};

class SingularDirectionError : public GeometryError {
public:
    enum class Type { orthogonal_ray = 1, vanishing_gamma = 2 };

    SingularDirectionError(Type type, int ray_index, const std::string& what)
        : GeometryError(what), type_(type), ray_index_(ray_index) {}

    Type type() const noexcept { return type_; }
    /// Offending ray for type-1 singularities, -1 otherwise.
    int ray_index() const noexcept { return ray_index_; }

private:
    Type type_;
    int ray_index_;
};

class NonInvertibleError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, int iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}

    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace vlt
