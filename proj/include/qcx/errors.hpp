#pragma once

#include <stdexcept>
#include <string>

namespace qcx {

// Bad caller input: malformed JSON, violated type invariants, out-of-range
// parameters. The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical check failed on structurally valid input (no splitting
// interval, limit condition violated, verification residual over tolerance).
// The CLI maps this to exit code 1.
struct CheckError : std::runtime_error {
    explicit CheckError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qcx
