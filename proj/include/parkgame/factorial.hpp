#pragma once

#include "parkgame/bigint.hpp"

#include <cstddef>
#include <shared_mutex>
#include <vector>

namespace parkgame {

/// Growable table of factorials. Values are immutable once computed; growth
/// takes the writer lock, lookups of already-present entries only the reader
/// lock. get() copies the value out so callers never hold references into a
/// vector that may reallocate.
class FactorialCache {
public:
    FactorialCache();

    BigInteger get(std::size_t k);

    // Copy of 0!, 1!, ..., max_k! for lock-free use inside tight loops.
    std::vector<BigInteger> snapshot(std::size_t max_k);

private:
    void grow(std::size_t k);  // requires exclusive lock

    std::shared_mutex mutex_;
    std::vector<BigInteger> table_;
};

/// k!, served from a process-wide FactorialCache.
BigInteger factorial(std::size_t k);

/// Pascal-triangle binomial coefficients, grown row by row on demand.
/// Not synchronized; intended as a per-computation scratch table.
class BinomialTable {
public:
    const BigInteger& choose(std::size_t n, std::size_t k);

private:
    std::vector<std::vector<BigInteger>> rows_;
};

} // namespace parkgame
