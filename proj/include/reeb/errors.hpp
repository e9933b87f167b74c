#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace reeb {

// Two exact values live in incompatible quadratic fields (different surd radicands).
class field_error : public std::domain_error {
public:
    explicit field_error(const std::string& what) : std::domain_error(what) {}
};

// Comparison of an exact value with an approximate one; never coerced silently.
class comparison_error : public std::domain_error {
public:
    explicit comparison_error(const std::string& what) : std::domain_error(what) {}
};

// A numerical answer could not be certified at the requested resolution.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Sampled geometric data too coarse to decide a combinatorial quantity.
class resolution_error : public std::runtime_error {
public:
    explicit resolution_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured budget (memory, entry count) was exhausted mid-computation.
class resource_error : public std::runtime_error {
public:
    resource_error(const std::string& what, std::int64_t completed)
        : std::runtime_error(what), completed_(completed) {}
    // how many results were produced before the budget ran out
    std::int64_t completed() const { return completed_; }

private:
    std::int64_t completed_;
};

} // namespace reeb
