#include "parkgame/errors.hpp"

#include <cstdlib>

namespace parkgame {

std::uint64_t resource_cap(std::uint64_t default_units) {
    if (const char* env = std::getenv("PARKGAME_RESOURCE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::uint64_t>(v);
        }
    }
    return default_units;
}

void check_resource(std::uint64_t units, std::uint64_t default_units, const std::string& what) {
    const std::uint64_t cap = resource_cap(default_units);
    if (units > cap) {
        throw ResourceLimitError(what + ": " + std::to_string(units) +
                                 " work units exceed cap " + std::to_string(cap));
    }
}

} // namespace parkgame
