#include "parkgame/factorial.hpp"

#include <mutex>

namespace parkgame {

FactorialCache::FactorialCache() {
    table_.push_back(BigInteger(std::int64_t{1}));  // 0!
}

void FactorialCache::grow(std::size_t k) {
    while (table_.size() <= k) {
        BigInteger next = table_.back();
        next.multiply_small(static_cast<std::uint64_t>(table_.size()));
        table_.push_back(std::move(next));
    }
}

BigInteger FactorialCache::get(std::size_t k) {
    {
        std::shared_lock lock(mutex_);
        if (k < table_.size()) {
            return table_[k];
        }
    }
    std::unique_lock lock(mutex_);
    grow(k);
    return table_[k];
}

std::vector<BigInteger> FactorialCache::snapshot(std::size_t max_k) {
    {
        std::shared_lock lock(mutex_);
        if (max_k < table_.size()) {
            return {table_.begin(), table_.begin() + static_cast<std::ptrdiff_t>(max_k) + 1};
        }
    }
    std::unique_lock lock(mutex_);
    grow(max_k);
    return {table_.begin(), table_.begin() + static_cast<std::ptrdiff_t>(max_k) + 1};
}

namespace {
FactorialCache& global_factorials() {
    static FactorialCache cache;
    return cache;
}
} // namespace

BigInteger factorial(std::size_t k) {
    return global_factorials().get(k);
}

const BigInteger& BinomialTable::choose(std::size_t n, std::size_t k) {
    static const BigInteger zero;
    if (k > n) return zero;
    while (rows_.size() <= n) {
        const std::size_t r = rows_.size();
        std::vector<BigInteger> row(r + 1, BigInteger(std::int64_t{1}));
        for (std::size_t j = 1; j < r; ++j) {
            row[j] = rows_[r - 1][j - 1] + rows_[r - 1][j];
        }
        rows_.push_back(std::move(row));
    }
    return rows_[n][k];
}

} // namespace parkgame
