#include "parkgame/parking.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace parkgame {

PreferenceProfile::PreferenceProfile(std::vector<int> prefs, int spots)
    : prefs_(std::move(prefs)), spots_(spots) {
    const int n = static_cast<int>(prefs_.size());
    if (n < 1) {
        throw std::invalid_argument("profile needs at least one car");
    }
    if (spots_ == 0) spots_ = n;
    if (spots_ < n) {
        throw std::invalid_argument("profile needs at least as many spots as cars");
    }
    for (int i = 0; i < n; ++i) {
        if (prefs_[static_cast<std::size_t>(i)] < 1 || prefs_[static_cast<std::size_t>(i)] > spots_) {
            throw std::invalid_argument("preference of car " + std::to_string(i + 1) +
                                        " is outside [1, " + std::to_string(spots_) + "]");
        }
    }
}

std::string PreferenceProfile::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < prefs_.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(prefs_[i]);
    }
    if (spots_ != cars()) {
        out += " m=" + std::to_string(spots_);
    }
    return out;
}

ArrivalOrder ArrivalOrder::identity(int n) {
    std::vector<int> seq(static_cast<std::size_t>(n));
    std::iota(seq.begin(), seq.end(), 0);
    return ArrivalOrder(std::move(seq));
}

ArrivalOrder ArrivalOrder::from_positions(const std::vector<int>& positions) {
    const int n = static_cast<int>(positions.size());
    std::vector<int> seq(static_cast<std::size_t>(n), -1);
    for (int car = 0; car < n; ++car) {
        const int pos = positions[static_cast<std::size_t>(car)];
        if (pos < 1 || pos > n || seq[static_cast<std::size_t>(pos - 1)] != -1) {
            throw std::invalid_argument("arrival positions must form a bijection on [n]");
        }
        seq[static_cast<std::size_t>(pos - 1)] = car;
    }
    return ArrivalOrder(std::move(seq));
}

ArrivalOrder ArrivalOrder::from_sequence(std::vector<int> sequence) {
    const int n = static_cast<int>(sequence.size());
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int car : sequence) {
        if (car < 0 || car >= n || seen[static_cast<std::size_t>(car)]) {
            throw std::invalid_argument("arrival sequence must visit each car exactly once");
        }
        seen[static_cast<std::size_t>(car)] = 1;
    }
    return ArrivalOrder(std::move(sequence));
}

int ArrivalOrder::position_of(int car) const {
    for (int pos = 0; pos < cars(); ++pos) {
        if (sequence_[static_cast<std::size_t>(pos)] == car - 1) return pos + 1;
    }
    throw std::out_of_range("car index outside [1, n]");
}

ParkingOutcome simulate_park(const PreferenceProfile& profile, const ArrivalOrder& order) {
    if (order.cars() != profile.cars()) {
        throw std::invalid_argument("arrival order size does not match car count");
    }
    const int m = profile.spots();
    ParkingOutcome outcome;
    outcome.spots.assign(static_cast<std::size_t>(profile.cars()), 0);
    std::vector<char> occupied(static_cast<std::size_t>(m) + 1, 0);
    for (int car : order.sequence()) {
        const int want = profile.prefs()[static_cast<std::size_t>(car)];
        int spot = want;
        while (spot <= m && occupied[static_cast<std::size_t>(spot)]) ++spot;
        if (spot > m) {
            outcome.failed_car = car + 1;
            return outcome;
        }
        occupied[static_cast<std::size_t>(spot)] = 1;
        outcome.spots[static_cast<std::size_t>(car)] = spot;
        outcome.displacement += spot - want;
    }
    return outcome;
}

long long total_displacement(const PreferenceProfile& profile) {
    const ParkingOutcome outcome = simulate_park(profile, ArrivalOrder::identity(profile.cars()));
    if (!outcome.parked()) {
        throw NotAParkingFunction("car " + std::to_string(outcome.failed_car) +
                                  " cannot park under profile " + profile.to_string());
    }
    return outcome.displacement;
}

bool is_parking_function(const PreferenceProfile& profile) {
    return simulate_park(profile, ArrivalOrder::identity(profile.cars())).parked();
}

bool sorted_criterion_holds(const PreferenceProfile& profile) {
    std::vector<int> sorted = profile.prefs();
    std::sort(sorted.begin(), sorted.end());
    const int n = profile.cars();
    const int m = profile.spots();
    for (int i = 1; i <= n; ++i) {
        if (sorted[static_cast<std::size_t>(i - 1)] > m - n + i) return false;
    }
    return true;
}

std::pair<PreferenceProfile, RankMap> sorted_rearrangement(const PreferenceProfile& profile) {
    const int n = profile.cars();
    std::vector<int> index(static_cast<std::size_t>(n));
    std::iota(index.begin(), index.end(), 0);
    std::stable_sort(index.begin(), index.end(), [&](int a, int b) {
        return profile.prefs()[static_cast<std::size_t>(a)] < profile.prefs()[static_cast<std::size_t>(b)];
    });
    std::vector<int> sorted(static_cast<std::size_t>(n));
    RankMap ranks;
    ranks.to_sorted.assign(static_cast<std::size_t>(n), 0);
    for (int pos = 0; pos < n; ++pos) {
        const int original = index[static_cast<std::size_t>(pos)];
        sorted[static_cast<std::size_t>(pos)] = profile.prefs()[static_cast<std::size_t>(original)];
        ranks.to_sorted[static_cast<std::size_t>(original)] = pos + 1;
    }
    return {PreferenceProfile(std::move(sorted), profile.spots()), std::move(ranks)};
}

PreferenceProfile apply_permutation(const PreferenceProfile& profile, const ArrivalOrder& order) {
    if (order.cars() != profile.cars()) {
        throw std::invalid_argument("permutation size does not match car count");
    }
    // Entry i of the result is a_{pi^-1(i)}, and pi^-1(i) is the car arriving i-th.
    std::vector<int> permuted(static_cast<std::size_t>(profile.cars()));
    for (int pos = 0; pos < profile.cars(); ++pos) {
        const int car = order.sequence()[static_cast<std::size_t>(pos)];
        permuted[static_cast<std::size_t>(pos)] = profile.prefs()[static_cast<std::size_t>(car)];
    }
    return PreferenceProfile(std::move(permuted), profile.spots());
}

namespace {
constexpr std::uint64_t kEnumerationCap = 10'000'000;
} // namespace

ParkingFunctionEnumerator::ParkingFunctionEnumerator(int n, int m, bool weakly_increasing_only)
    : n_(n), m_(m), weakly_increasing_(weakly_increasing_only) {
    if (n < 1 || m < n) {
        throw std::invalid_argument("enumeration requires 1 <= n <= m");
    }
    if (!weakly_increasing_only) {
        const BigInteger total = count_parking_functions(n, m);
        const BigInteger cap(resource_cap(kEnumerationCap));
        if (total > cap) {
            throw ResourceLimitError("enumerating " + total.to_string() +
                                     " parking functions exceeds cap " + cap.to_string());
        }
    }
    current_.assign(static_cast<std::size_t>(n_), 0);
}

bool ParkingFunctionEnumerator::prefix_feasible(int upto) const {
    // A prefix extends to a member of PF_{n,m} iff no spot suffix is
    // oversubscribed: #{i <= upto : a_i > x} <= m - x for every x. Remaining
    // cars can always prefer spot 1, so the condition is also sufficient.
    std::vector<int> count(static_cast<std::size_t>(m_) + 2, 0);
    for (int i = 0; i <= upto; ++i) {
        ++count[static_cast<std::size_t>(current_[static_cast<std::size_t>(i)])];
    }
    int greater = 0;
    for (int x = m_ - 1; x >= 1; --x) {
        greater += count[static_cast<std::size_t>(x + 1)];
        if (greater > m_ - x) return false;
    }
    return true;
}

bool ParkingFunctionEnumerator::advance() {
    if (done_) return false;
    int k;
    if (!started_) {
        started_ = true;
        k = 0;
    } else {
        k = n_ - 1;
    }
    while (k >= 0) {
        auto& slot = current_[static_cast<std::size_t>(k)];
        ++slot;
        const int lo = (weakly_increasing_ && k > 0) ? current_[static_cast<std::size_t>(k - 1)] : 1;
        const int hi = weakly_increasing_ ? m_ - n_ + k + 1 : m_;
        if (slot < lo) slot = lo;
        if (slot > hi) {
            slot = 0;
            --k;
            continue;
        }
        if (!prefix_feasible(k)) continue;
        if (k == n_ - 1) return true;
        ++k;
    }
    done_ = true;
    return false;
}

bool ParkingFunctionEnumerator::next(PreferenceProfile& out) {
    if (!advance()) return false;
    out = PreferenceProfile(current_, m_);
    return true;
}

std::vector<PreferenceProfile> enumerate_parking_functions(int n, int m, bool weakly_increasing_only) {
    ParkingFunctionEnumerator en(n, m, weakly_increasing_only);
    std::vector<PreferenceProfile> result;
    PreferenceProfile profile(std::vector<int>{1}, 1);
    const std::uint64_t cap = resource_cap(kEnumerationCap);
    while (en.next(profile)) {
        if (result.size() >= cap) {
            throw ResourceLimitError("enumeration exceeds cap " + std::to_string(cap));
        }
        result.push_back(profile);
    }
    return result;
}

BigInteger count_parking_functions(int n, int m) {
    if (n < 1 || m < n) {
        throw std::invalid_argument("count requires 1 <= n <= m");
    }
    BigInteger base(static_cast<std::int64_t>(m + 1));
    BigInteger count = pow(base, static_cast<std::uint64_t>(n - 1));
    count.multiply_small(static_cast<std::uint64_t>(m + 1 - n));
    return count;
}

} // namespace parkgame
