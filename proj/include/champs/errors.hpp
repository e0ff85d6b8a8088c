#pragma once

#include <stdexcept>
#include <string>

namespace champs {

// Requested computation exceeds the supported integer range.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Requested computation exceeds an explicit work budget; the message states
// the budget that would be required.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Output file or directory could not be written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace champs
