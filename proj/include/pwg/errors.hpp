#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pwg {

// Thrown when an exhaustive computation would exceed its hard precondition
// cap. Callers must treat this as "instance too large", never as a partial
// result.
class resource_limit_error : public std::runtime_error {
  public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative solve fails to reach its tolerance. Carries the
// last iterate so callers can report or reseed.
class solver_failure : public std::runtime_error {
  public:
    solver_failure(const std::string& what, std::vector<double> last_iterate, double last_residual)
        : std::runtime_error(what), last_iterate_(std::move(last_iterate)), last_residual_(last_residual) {}

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
    double last_residual() const noexcept { return last_residual_; }

  private:
    std::vector<double> last_iterate_;
    double last_residual_;
};

}  // namespace pwg
