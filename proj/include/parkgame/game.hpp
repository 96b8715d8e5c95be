#pragma once

#include "parkgame/parking.hpp"

#include <cstdint>
#include <initializer_list>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace parkgame {

/// Subset of the cars [n], bitset semantics: bit (i-1) set means car i is a
/// member. Brute-force paths require n <= 64.
struct Coalition {
    std::uint64_t bits = 0;

    static Coalition empty() { return {}; }
    static Coalition full(int n) {
        return {n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1)};
    }
    static Coalition of(std::initializer_list<int> cars);
    static Coalition of(const std::vector<int>& cars);

    bool contains(int car) const { return (bits >> (car - 1)) & 1; }
    Coalition with(int car) const { return {bits | (std::uint64_t{1} << (car - 1))}; }
    Coalition without(int car) const { return {bits & ~(std::uint64_t{1} << (car - 1))}; }
    bool subset_of(Coalition other) const { return (bits & ~other.bits) == 0; }
    int size() const { return __builtin_popcountll(bits); }
    bool is_empty() const { return bits == 0; }

    std::vector<int> members() const;  // ascending 1-based car indices
    std::string to_string() const;     // "{1,3}"

    bool operator==(const Coalition&) const = default;
};

/// A parking game: the characteristic function c_alpha over coalitions of
/// cars, where c_alpha(S) is the total displacement of the sub-tuple
/// (a_i : i in S) parked on the full street of n spots. Values are cached per
/// coalition bitmask; the cache is safe for concurrent use.
class GameView {
public:
    // Requires alpha in PF_n (m == n and every car parks); throws
    // NotAParkingFunction otherwise.
    explicit GameView(PreferenceProfile profile);

    int players() const { return profile_.cars(); }
    const PreferenceProfile& profile() const { return profile_; }

    // c_alpha(S). Always succeeds: every sub-tuple of a parking function
    // parks on the full street.
    long long characteristic(Coalition coalition) const;

    // c_alpha(S + {i}) - c_alpha(S); throws std::invalid_argument when i in S.
    long long marginal_cost(Coalition coalition, int car) const;

private:
    long long evaluate(Coalition coalition) const;

    PreferenceProfile profile_;
    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::uint64_t, long long> cache_;
};

/// Result of a supermodularity check; `witness` carries a violating
/// (i, S, T) triple when the property fails.
struct SupermodularityReport {
    bool holds = true;
    std::optional<std::tuple<int, Coalition, Coalition>> witness;
};

struct SupermodularOptions {
    // Check only covers T = S + {j}. Equivalent to the full S subseteq T
    // quantifier: marginal costs nondecreasing across covers extend to chains
    // by telescoping, and any chain violation contains a cover violation.
    bool covers_only = true;
    int player_limit = 12;
};

/// Brute-force verification that marginal costs are nondecreasing in the
/// coalition joined. Throws ResourceLimitError above the player limit.
SupermodularityReport check_supermodular(const GameView& game,
                                         const SupermodularOptions& options = {});

/// True iff the preference tuple is a permutation of [n] (every coalition
/// then has zero cost, the modular case).
bool is_modular(const GameView& game);

} // namespace parkgame
