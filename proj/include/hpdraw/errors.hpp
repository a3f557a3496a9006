#pragma once

#include <stdexcept>
#include <string>

namespace hpdraw {

// Base class for all errors raised by the library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed Newick or instance text. `position` is a byte offset into the
// input, or -1 when the error is not tied to a location.
class parse_error : public error {
public:
    parse_error(const std::string& what, long position = -1)
        : error(position >= 0 ? what + " (at offset " + std::to_string(position) + ")" : what),
          position_(position) {}
    long position() const { return position_; }

private:
    long position_;
};

// A node id or label that does not exist in the tree it was used with.
class unknown_node_error : public error {
public:
    using error::error;
};

// Layout was requested for an instance whose union graph is not planar.
class not_planar_error : public error {
public:
    using error::error;
};

// Layout was requested for a reconciliation with no valid temporal ordering.
class time_inconsistent_error : public error {
public:
    using error::error;
};

// An internal parasite node that matches none of the event rules.
class event_classification_error : public error {
public:
    using error::error;
};

// Oracle search space exceeds the configured limits.
class limits_exceeded_error : public error {
public:
    using error::error;
};

}  // namespace hpdraw
