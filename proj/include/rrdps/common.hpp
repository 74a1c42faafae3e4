#pragma once

#include <stdexcept>
#include <string>

namespace rrdps {

// Thrown when a requested quantity has no solution for the given inputs
// (e.g. a bit-error threshold that no channel can satisfy), as opposed to
// arguments outside a function's domain, which raise std::domain_error.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rrdps
