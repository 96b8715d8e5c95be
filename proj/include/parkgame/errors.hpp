#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace parkgame {

// Thrown when an operation requires a parking function and the profile is not one.
class NotAParkingFunction : public std::domain_error {
public:
    explicit NotAParkingFunction(const std::string& what) : std::domain_error(what) {}
};

// Thrown when a brute-force or enumeration path would exceed its work cap.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Work cap shared by enumeration and brute-force paths. The default is the
// per-operation value passed in; the PARKGAME_RESOURCE_CAP environment
// variable overrides it globally.
std::uint64_t resource_cap(std::uint64_t default_units);

// Checks `units <= resource_cap(default_units)` and throws ResourceLimitError
// with `what` otherwise.
void check_resource(std::uint64_t units, std::uint64_t default_units, const std::string& what);

} // namespace parkgame
