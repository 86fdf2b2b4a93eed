#pragma once

#include <stdexcept>
#include <string>

namespace rankloci {

/// A computed result broke one of its structural identities (budgets, partition
/// of the classification, fixture agreement). Always a bug, never bad input.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

inline void ensure(bool condition, const std::string& what)
{
    if (!condition) throw InvariantViolation(what);
}

} // namespace rankloci
