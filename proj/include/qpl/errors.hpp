#pragma once

#include <stdexcept>
#include <string>

namespace qpl {

// Error taxonomy shared by all modules.  The CLI maps these to exit codes:
// guard/config/truncation -> 2, invariant -> 3.

// A resource or feasibility guard was exceeded (memory, modulus size,
// enumeration budget, overflow).
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent configuration (bad grid size, delta out of range).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A requested index lies outside a truncated table.
struct truncation_error : std::runtime_error {
    explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

// A computed quantity violated a structural identity that must hold exactly
// (up to stated floating tolerance).  Never thrown for report-style bounds.
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qpl
