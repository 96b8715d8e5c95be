#include "parkgame/game.hpp"

#include "parkgame/errors.hpp"

#include <stdexcept>

namespace parkgame {

Coalition Coalition::of(std::initializer_list<int> cars) {
    Coalition c;
    for (int car : cars) c.bits |= std::uint64_t{1} << (car - 1);
    return c;
}

Coalition Coalition::of(const std::vector<int>& cars) {
    Coalition c;
    for (int car : cars) c.bits |= std::uint64_t{1} << (car - 1);
    return c;
}

std::vector<int> Coalition::members() const {
    std::vector<int> out;
    for (int car = 1; car <= 64; ++car) {
        if (contains(car)) out.push_back(car);
    }
    return out;
}

std::string Coalition::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int car : members()) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(car);
    }
    return out + "}";
}

GameView::GameView(PreferenceProfile profile) : profile_(std::move(profile)) {
    if (profile_.spots() != profile_.cars()) {
        throw NotAParkingFunction("a parking game needs m == n, got " + profile_.to_string());
    }
    if (!is_parking_function(profile_)) {
        throw NotAParkingFunction(profile_.to_string() + " is not a parking function");
    }
    if (profile_.cars() > 64) {
        throw std::invalid_argument("coalition bitmasks support at most 64 cars");
    }
}

long long GameView::evaluate(Coalition coalition) const {
    if (coalition.is_empty()) return 0;
    std::vector<int> sub;
    sub.reserve(static_cast<std::size_t>(coalition.size()));
    for (int car = 1; car <= players(); ++car) {
        if (coalition.contains(car)) sub.push_back(profile_.pref(car));
    }
    // Sub-tuples park on the full street: an (|S|, n)-parking function.
    const PreferenceProfile subprofile(std::move(sub), players());
    const ParkingOutcome outcome = simulate_park(subprofile, ArrivalOrder::identity(subprofile.cars()));
    if (!outcome.parked()) {
        throw std::logic_error("sub-profile of a parking function failed to park");
    }
    return outcome.displacement;
}

long long GameView::characteristic(Coalition coalition) const {
    {
        std::lock_guard lock(cache_mutex_);
        auto it = cache_.find(coalition.bits);
        if (it != cache_.end()) return it->second;
    }
    const long long value = evaluate(coalition);
    std::lock_guard lock(cache_mutex_);
    return cache_.emplace(coalition.bits, value).first->second;
}

long long GameView::marginal_cost(Coalition coalition, int car) const {
    if (car < 1 || car > players()) {
        throw std::invalid_argument("car index outside [1, n]");
    }
    if (coalition.contains(car)) {
        throw std::invalid_argument("marginal cost requires a car outside the coalition");
    }
    return characteristic(coalition.with(car)) - characteristic(coalition);
}

SupermodularityReport check_supermodular(const GameView& game, const SupermodularOptions& options) {
    const int n = game.players();
    if (n > options.player_limit) {
        const std::uint64_t units = n >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << n;
        check_resource(units, std::uint64_t{1} << options.player_limit,
                       "supermodularity check on " + std::to_string(n) + " players");
    }
    SupermodularityReport report;
    const std::uint64_t all = Coalition::full(n).bits;
    if (options.covers_only) {
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                if (j == i) continue;
                const std::uint64_t excluded =
                    (std::uint64_t{1} << (i - 1)) | (std::uint64_t{1} << (j - 1));
                const std::uint64_t domain = all & ~excluded;
                // Enumerate S over subsets of [n] \ {i, j}.
                std::uint64_t s = 0;
                while (true) {
                    const Coalition small{s};
                    const Coalition cover = small.with(j);
                    if (game.marginal_cost(small, i) > game.marginal_cost(cover, i)) {
                        report.holds = false;
                        report.witness = {i, small, cover};
                        return report;
                    }
                    if (s == domain) break;
                    s = (s - domain) & domain;  // next subset of the masked domain
                }
            }
        }
        return report;
    }
    // Audit mode: every pair S subseteq T subseteq [n] \ {i}.
    for (int i = 1; i <= n; ++i) {
        const std::uint64_t domain = all & ~(std::uint64_t{1} << (i - 1));
        std::uint64_t t = 0;
        while (true) {
            std::uint64_t s = 0;
            while (true) {
                const Coalition small{s};
                const Coalition large{t};
                if (game.marginal_cost(small, i) > game.marginal_cost(large, i)) {
                    report.holds = false;
                    report.witness = {i, small, large};
                    return report;
                }
                if (s == t) break;
                s = (s - t) & t;
            }
            if (t == domain) break;
            t = (t - domain) & domain;
        }
    }
    return report;
}

bool is_modular(const GameView& game) {
    const int n = game.players();
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int pref : game.profile().prefs()) {
        if (pref > n || seen[static_cast<std::size_t>(pref)]) return false;
        seen[static_cast<std::size_t>(pref)] = 1;
    }
    return true;
}

} // namespace parkgame
