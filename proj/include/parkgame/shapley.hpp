#pragma once

#include "parkgame/bigint.hpp"
#include "parkgame/parking.hpp"
#include "parkgame/rational.hpp"

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

namespace parkgame {

/// Cost shares, one exact rational per car.
using Allocation = std::vector<Rational>;

/// Number of entries of beta that are >= t + 2 (cars that could park to the
/// right of an occupied block ending at t, Lambda_t).
int lambda_count(std::span<const int> beta, int t);

/// Number of entries of beta that are <= s - 2 (cars that could park to the
/// left of an occupied block starting at s, Gamma_s).
int gamma_count(std::span<const int> beta, int s);

/// Copy of beta with every minimal entry increased by one; weakly increasing
/// input stays weakly increasing. Throws std::invalid_argument on empty input.
std::vector<int> raise_min(std::vector<int> beta);

/// Query for Q(beta', s, t, k): the number of size-k increasing index
/// selections from the weakly increasing tuple beta' whose cars all park
/// within the spot segment s..t when that segment is parked as a street of
/// length t - s + 1.
struct SegmentQuery {
    std::vector<int> prefs;  // beta', weakly increasing, positive entries
    int first_spot = 1;      // s
    int last_spot = 1;       // t (t < s means an empty segment)
    int cars = 0;            // k
};

/// Memo for Q evaluations keyed by the canonicalized tuple content plus
/// (s, t, k). Not synchronized; instantiate one per computation.
class QMemo {
public:
    struct Key {
        std::vector<int> prefs;
        int s;
        int t;
        int k;
        bool operator==(const Key&) const = default;
    };
    struct KeyView {
        std::span<const int> prefs;
        int s;
        int t;
        int k;
    };

    const BigInteger* find(const KeyView& view) const;
    const BigInteger& store(Key key, BigInteger value);
    std::size_t size() const { return map_.size(); }
    void clear() { map_.clear(); }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(const Key& key) const;
        std::size_t operator()(const KeyView& view) const;
    };
    struct Eq {
        using is_transparent = void;
        bool operator()(const Key& a, const Key& b) const { return a == b; }
        bool operator()(const KeyView& a, const Key& b) const;
        bool operator()(const Key& a, const KeyView& b) const { return (*this)(b, a); }
    };

    std::unordered_map<Key, BigInteger, Hash, Eq> map_;
};

/// Q(beta', s, t, k) by the memoized recursion. Base cases test k == 0 first,
/// then the overflow cases k > t - s + 1 and k > |beta'|, then branch on the
/// first entry against s.
BigInteger count_Q(const SegmentQuery& query, QMemo& memo);
BigInteger count_Q(std::span<const int> beta, int s, int t, int k, QMemo& memo);

/// Independent oracle for Q: enumerates every size-k index subset, shifts
/// preferences by s - 1 and simulates them on a street of t - s + 1 spots,
/// counting the selections under which every car parks. Throws
/// ResourceLimitError when |beta'| > 20.
BigInteger count_Q_bruteforce(const SegmentQuery& query);

/// R(beta', s, t): the weighted count of ways to fill the street around an
/// occupied block on spots s..t,
///   sum_{lambda, gamma} C(Lambda_t, lambda) Q(beta', 1, s-2, gamma)
///                       (t-s+1+lambda+gamma)! (n-t+s-lambda-gamma-2)!.
/// Requires |beta'| == n - 1. Throws std::logic_error if a factorial argument
/// goes negative, which cannot happen when the (s, t) block is reachable
/// (i.e. Q(beta', s, t, t-s+1) > 0).
BigInteger segment_weight_R(std::span<const int> beta, int s, int t, int n, QMemo& memo);

/// Exact expected marginal displacement of one car under a uniformly random
/// arrival order, via the polynomial formula over the sorted rearrangement.
/// Throws NotAParkingFunction unless the profile is in PF_n.
Rational shapley_car(const PreferenceProfile& profile, int car);

/// Shapley value of the parking game: shapley_car for every car, sharing the
/// computation between cars with equal preferences. The shares sum to the
/// total displacement.
Allocation shapley(const PreferenceProfile& profile);

/// Oracle: average each car's marginal displacement over all n! arrival
/// orders. Exact; n <= 9 unless the resource cap is raised.
Allocation shapley_bruteforce_perm(const PreferenceProfile& profile);

/// Oracle: subset reweighting of the permutation average,
///   phi_i = sum_S |S|! (n-|S|-1)! / n! * (c(S+{i}) - c(S)),
/// over all 2^n coalitions. Exact; n <= 20 unless the resource cap is raised.
Allocation shapley_bruteforce_subset(const PreferenceProfile& profile);

} // namespace parkgame
