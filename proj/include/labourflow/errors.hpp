#pragma once

#include <stdexcept>
#include <string>

namespace labourflow {

// Exit codes used by the CLI; library code throws, main() maps.
//   0 success, 2 input error, 3 constraint violation, 4 internal fault.

// Malformed or inconsistent user input (bad CSV row, unknown region,
// mismatched manifests, missing file).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input was well-formed but a model constraint cannot be satisfied
// (e.g. merging exhausted the code hierarchy without reaching connectivity).
class ConstraintError : public std::runtime_error {
public:
    explicit ConstraintError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal consistency violation; indicates a bug, aborts the run.
class InternalFault : public std::logic_error {
public:
    explicit InternalFault(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace labourflow
