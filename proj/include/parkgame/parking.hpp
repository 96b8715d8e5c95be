#pragma once

#include "parkgame/bigint.hpp"
#include "parkgame/errors.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace parkgame {

/// Preference tuple for n cars on a one-way street of m >= n spots.
/// Preferences and spots are 1-based throughout the library.
class PreferenceProfile {
public:
    // m == 0 means "as many spots as cars".
    explicit PreferenceProfile(std::vector<int> prefs, int spots = 0);

    int cars() const { return static_cast<int>(prefs_.size()); }
    int spots() const { return spots_; }
    const std::vector<int>& prefs() const { return prefs_; }
    int pref(int car) const { return prefs_[static_cast<std::size_t>(car - 1)]; }  // 1-based

    bool operator==(const PreferenceProfile& rhs) const = default;

    std::string to_string() const;  // "1,4,3,3,1,2,7" plus " m=9" when m != n

private:
    std::vector<int> prefs_;
    int spots_;
};

/// Arrival order: a bijection pi on [n] where pi(car) is the car's arrival
/// position. Stored as the arrival sequence (0-based car indices).
class ArrivalOrder {
public:
    static ArrivalOrder identity(int n);
    // positions[i] = pi(car i+1), 1-based positions.
    static ArrivalOrder from_positions(const std::vector<int>& positions);
    // sequence[k] = 0-based index of the car arriving (k+1)-th.
    static ArrivalOrder from_sequence(std::vector<int> sequence);

    int cars() const { return static_cast<int>(sequence_.size()); }
    const std::vector<int>& sequence() const { return sequence_; }
    int position_of(int car) const;  // 1-based car -> 1-based position

private:
    explicit ArrivalOrder(std::vector<int> sequence) : sequence_(std::move(sequence)) {}
    std::vector<int> sequence_;
};

/// Result of running the parking process. Failure is a value, not an error.
struct ParkingOutcome {
    std::vector<int> spots;       // spots[i] = spot of car i+1; 0 for cars that never parked
    int failed_car = 0;           // 1-based index of the first car unable to park, 0 if none
    long long displacement = 0;   // sum of p_i - a_i over parked cars

    bool parked() const { return failed_car == 0; }
};

/// Runs the parking process: cars arrive per `order`, each driving to its
/// preferred spot and rolling forward to the first unoccupied spot.
ParkingOutcome simulate_park(const PreferenceProfile& profile, const ArrivalOrder& order);

/// Total displacement d(alpha) under the identity arrival order (the value is
/// arrival-order invariant). Throws NotAParkingFunction when a car fails to park.
long long total_displacement(const PreferenceProfile& profile);

/// True iff every car parks (simulation under the identity order).
bool is_parking_function(const PreferenceProfile& profile);

/// The sorted-profile criterion a'_i <= m - n + i, equivalent to
/// is_parking_function; kept separate as an independent check and for
/// enumeration pruning / rejection sampling.
bool sorted_criterion_holds(const PreferenceProfile& profile);

/// Bijection from original car index to its position in the weakly increasing
/// rearrangement, ties broken by original index.
struct RankMap {
    std::vector<int> to_sorted;  // to_sorted[i] = r(i+1), 1-based ranks

    int rank(int car) const { return to_sorted[static_cast<std::size_t>(car - 1)]; }
};

/// Weakly increasing rearrangement alpha' plus the rank bijection r with
/// a_i = a'_{r(i)}.
std::pair<PreferenceProfile, RankMap> sorted_rearrangement(const PreferenceProfile& profile);

/// (a_{pi^-1(1)}, ..., a_{pi^-1(n)}): the profile with subscripts permuted.
PreferenceProfile apply_permutation(const PreferenceProfile& profile, const ArrivalOrder& order);

/// Streaming lexicographic enumeration of PF_{n,m} (optionally only the
/// weakly increasing members). Single consumer. Throws ResourceLimitError if
/// the total member count exceeds the work cap.
class ParkingFunctionEnumerator {
public:
    ParkingFunctionEnumerator(int n, int m, bool weakly_increasing_only);

    // Advances to the next parking function; returns false when exhausted.
    bool next(PreferenceProfile& out);

private:
    bool advance();
    bool prefix_feasible(int upto) const;

    int n_;
    int m_;
    bool weakly_increasing_;
    bool done_ = false;
    bool started_ = false;
    std::vector<int> current_;
};

/// Materialized enumeration, same order and cap as the streaming form.
std::vector<PreferenceProfile> enumerate_parking_functions(int n, int m, bool weakly_increasing_only);

/// |PF_{n,m}| = (m+1)^{n-1} (m+1-n), exact.
BigInteger count_parking_functions(int n, int m);

} // namespace parkgame
