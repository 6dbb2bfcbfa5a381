#ifndef PGFS_ERRORS_HPP
#define PGFS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pgfs {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A function or surface was evaluated outside its domain of validity.
struct DomainError : Error {
    using Error::Error;
};

/// The surface normal is lightlike at the requested point (D = 0); the
/// fundamental forms and both curvatures are undefined there.
struct LightlikeNormalError : DomainError {
    using DomainError::DomainError;
};

/// The surface normal is timelike at the requested point ((f g')^2 > 1);
/// D is not real, so the second form and H are undefined.  K stays defined.
struct TimelikeNormalError : DomainError {
    using DomainError::DomainError;
};

/// The denominator of the curvature-relation factor vanishes (flat point).
struct DegenerateRelationError : DomainError {
    using DomainError::DomainError;
};

/// A constructor was given constants violating a reality constraint.
struct ConstraintError : Error {
    using Error::Error;
};

/// A JSON document failed schema validation; `path` is a JSON-pointer-style
/// location of the offending field.
struct SchemaError : Error {
    std::string path;
    SchemaError(std::string path_, const std::string& what_)
        : Error(path_ + ": " + what_), path(std::move(path_)) {}
};

/// A file could not be read or written.
struct IoError : Error {
    using Error::Error;
};

} // namespace pgfs

#endif // PGFS_ERRORS_HPP
