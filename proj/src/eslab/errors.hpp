#ifndef ESLAB_ERRORS_HPP
#define ESLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eslab {

// Thrown when a scan exhausts its bound without an answer; the caller can
// retry with a larger bound.
class NotFoundError : public std::runtime_error {
public:
    explicit NotFoundError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a requested tolerance cannot be met within the configured
// series cap.
class ToleranceError : public std::runtime_error {
public:
    explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a computation would exceed its configured memory budget.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace eslab

#endif
