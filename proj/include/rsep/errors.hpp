#ifndef RSEP_ERRORS_HPP
#define RSEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rsep {

/// An allocation violates C1 or C2. The message names the constraint and
/// the offending index, e.g. "C1 violated at (m=2, b=1): got 3, expected 4".
class FeasibilityError : public std::runtime_error {
public:
    explicit FeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

/// The instance itself admits no feasible policy (per-BS quota overload).
class InfeasibleInstanceError : public std::runtime_error {
public:
    explicit InfeasibleInstanceError(const std::string& what) : std::runtime_error(what) {}
};

/// A search exceeded its node budget and refuses to answer silently.
class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

/// The aggregation mapping could not find a link-preserving partial swap.
/// Carries a dump of the RBAM state that triggered the failure.
class PartialSwapError : public std::runtime_error {
public:
    PartialSwapError(const std::string& what, std::string rbam_dump)
        : std::runtime_error(what), rbam_dump_(std::move(rbam_dump)) {}

    const std::string& rbam_dump() const { return rbam_dump_; }

private:
    std::string rbam_dump_;
};

} // namespace rsep

#endif // RSEP_ERRORS_HPP
