#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "parkgame/parking.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace parkgame;

namespace {

std::mt19937_64 rng(0x5eed0002ULL);

ArrivalOrder random_order(int n) {
    std::vector<int> seq(static_cast<std::size_t>(n));
    std::iota(seq.begin(), seq.end(), 0);
    std::shuffle(seq.begin(), seq.end(), rng);
    return ArrivalOrder::from_sequence(std::move(seq));
}

std::vector<std::vector<int>> all_tuples(int n, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 1);
    while (true) {
        out.push_back(cur);
        int k = n - 1;
        while (k >= 0 && cur[static_cast<std::size_t>(k)] == m) {
            cur[static_cast<std::size_t>(k)] = 1;
            --k;
        }
        if (k < 0) break;
        ++cur[static_cast<std::size_t>(k)];
    }
    return out;
}

std::set<int> occupied_set(const ParkingOutcome& outcome) {
    return {outcome.spots.begin(), outcome.spots.end()};
}

} // namespace

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(PreferenceProfile({}), std::invalid_argument);
    CHECK_THROWS_AS(PreferenceProfile({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(PreferenceProfile({4}, 3), std::invalid_argument);
    CHECK_THROWS_AS(PreferenceProfile({1, 1, 1}, 2), std::invalid_argument);
    const PreferenceProfile p({1, 2}, 5);
    CHECK(p.cars() == 2);
    CHECK(p.spots() == 5);
    CHECK(p.to_string() == "1,2 m=5");
    CHECK(PreferenceProfile({1, 2}).to_string() == "1,2");
}

TEST_CASE("simulate_park examples") {
    SUBCASE("all-ones profile parks in order with displacement n(n-1)/2") {
        const PreferenceProfile p({1, 1, 1, 1});
        const auto outcome = simulate_park(p, ArrivalOrder::identity(4));
        CHECK(outcome.parked());
        CHECK(outcome.spots == std::vector<int>{1, 2, 3, 4});
        CHECK(outcome.displacement == 6);
    }
    SUBCASE("permutation profile: every car lucky") {
        const auto outcome = simulate_park(PreferenceProfile({2, 1, 3}), ArrivalOrder::identity(3));
        CHECK(outcome.parked());
        CHECK(outcome.spots == std::vector<int>{2, 1, 3});
        CHECK(outcome.displacement == 0);
    }
    SUBCASE("failure reports the first stuck car") {
        const auto outcome = simulate_park(PreferenceProfile({2, 2}), ArrivalOrder::identity(2));
        CHECK_FALSE(outcome.parked());
        CHECK(outcome.failed_car == 2);
    }
}

TEST_CASE("total displacement examples") {
    CHECK(total_displacement(PreferenceProfile({1, 4, 3, 3, 1, 2, 7})) == 7);
    std::vector<int> ladder(9);
    std::iota(ladder.begin(), ladder.end(), 1);
    CHECK(total_displacement(PreferenceProfile(ladder)) == 0);
    CHECK(total_displacement(PreferenceProfile({1, 1, 2})) == 2);
    CHECK_THROWS_AS(total_displacement(PreferenceProfile({2, 2})), NotAParkingFunction);
}

TEST_CASE("is_parking_function examples") {
    CHECK(is_parking_function(PreferenceProfile({1, 1, 2})));
    CHECK_FALSE(is_parking_function(PreferenceProfile({2, 2})));
    CHECK(is_parking_function(PreferenceProfile({2, 3}, 3)));
}

TEST_CASE("simulation agrees with the sorted criterion") {
    SUBCASE("exhaustive over [n]^n for n <= 6") {
        for (int n = 1; n <= 6; ++n) {
            for (const auto& prefs : all_tuples(n, n)) {
                const PreferenceProfile p(prefs);
                CHECK(is_parking_function(p) == sorted_criterion_holds(p));
            }
        }
    }
    SUBCASE("random tuples with extra spots") {
        for (int trial = 0; trial < 2000; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 6);
            const int m = n + 2;
            std::vector<int> prefs(static_cast<std::size_t>(n));
            for (int& x : prefs) x = 1 + static_cast<int>(rng() % m);
            const PreferenceProfile p(prefs, m);
            CHECK(is_parking_function(p) == sorted_criterion_holds(p));
        }
    }
}

TEST_CASE("sorted_rearrangement") {
    const PreferenceProfile p({1, 4, 3, 3, 1, 2, 7});
    const auto [sorted, ranks] = sorted_rearrangement(p);
    CHECK(sorted.prefs() == std::vector<int>{1, 1, 2, 3, 3, 4, 7});
    CHECK(ranks.rank(2) == 6);
    // a_i == a'_{r(i)} for every car
    for (int car = 1; car <= p.cars(); ++car) {
        CHECK(p.pref(car) == sorted.pref(ranks.rank(car)));
    }
    // r is a bijection
    std::set<int> image(ranks.to_sorted.begin(), ranks.to_sorted.end());
    CHECK(image.size() == static_cast<std::size_t>(p.cars()));

    SUBCASE("already sorted input gives the identity map") {
        const auto [s2, r2] = sorted_rearrangement(PreferenceProfile({1, 2, 2, 5}, 5));
        CHECK(s2.prefs() == std::vector<int>{1, 2, 2, 5});
        CHECK(r2.to_sorted == std::vector<int>{1, 2, 3, 4});
    }
    SUBCASE("ties break by original index") {
        const auto [s3, r3] = sorted_rearrangement(PreferenceProfile({3, 3}, 3));
        CHECK(s3.prefs() == std::vector<int>{3, 3});
        CHECK(r3.to_sorted == std::vector<int>{1, 2});
    }
}

TEST_CASE("apply_permutation") {
    const PreferenceProfile p({1, 2});
    CHECK(apply_permutation(p, ArrivalOrder::identity(2)) == p);
    const ArrivalOrder swap = ArrivalOrder::from_positions({2, 1});
    CHECK(apply_permutation(p, swap).prefs() == std::vector<int>{2, 1});
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        std::vector<int> prefs(static_cast<std::size_t>(n));
        for (int& x : prefs) x = 1 + static_cast<int>(rng() % n);
        const PreferenceProfile q(prefs);
        const auto permuted = apply_permutation(q, random_order(n));
        auto a = q.prefs();
        auto b = permuted.prefs();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);  // multiset preserved
    }
}

TEST_CASE("displacement and occupied spots are invariant under arrival order") {
    SUBCASE("exhaustive permutations for n <= 5") {
        for (int n = 1; n <= 5; ++n) {
            for (const auto& prefs : all_tuples(n, n)) {
                const PreferenceProfile p(prefs);
                if (!is_parking_function(p)) continue;
                const auto base = simulate_park(p, ArrivalOrder::identity(n));
                std::vector<int> seq(static_cast<std::size_t>(n));
                std::iota(seq.begin(), seq.end(), 0);
                do {
                    const auto other = simulate_park(p, ArrivalOrder::from_sequence(seq));
                    REQUIRE(other.parked());
                    CHECK(other.displacement == base.displacement);
                    CHECK(occupied_set(other) == occupied_set(base));
                } while (std::next_permutation(seq.begin(), seq.end()));
            }
        }
    }
    SUBCASE("randomized orders for n <= 7, m in {n, n+2}") {
        int checked = 0;
        while (checked < 1200) {
            const int n = 1 + static_cast<int>(rng() % 7);
            const int m = (rng() & 1) ? n : n + 2;
            std::vector<int> prefs(static_cast<std::size_t>(n));
            for (int& x : prefs) x = 1 + static_cast<int>(rng() % m);
            const PreferenceProfile p(prefs, m);
            if (!is_parking_function(p)) continue;
            const auto base = simulate_park(p, ArrivalOrder::identity(n));
            const auto other = simulate_park(p, random_order(n));
            REQUIRE(other.parked());
            CHECK(other.displacement == base.displacement);
            CHECK(occupied_set(other) == occupied_set(base));
            ++checked;
        }
    }
}

TEST_CASE("closed form: d(alpha) = n(n+1)/2 - sum(a_i) on full streets") {
    for (int n = 1; n <= 6; ++n) {
        for (const auto& prefs : all_tuples(n, n)) {
            const PreferenceProfile p(prefs);
            if (!is_parking_function(p)) continue;
            const long long sum = std::accumulate(prefs.begin(), prefs.end(), 0LL);
            CHECK(total_displacement(p) == static_cast<long long>(n) * (n + 1) / 2 - sum);
        }
    }
}

TEST_CASE("every sub-tuple of a parking function parks on the full street") {
    for (int n = 1; n <= 5; ++n) {
        for (const auto& prefs : all_tuples(n, n)) {
            const PreferenceProfile p(prefs);
            if (!is_parking_function(p)) continue;
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
                std::vector<int> sub;
                for (int i = 0; i < n; ++i) {
                    if ((mask >> i) & 1) sub.push_back(prefs[static_cast<std::size_t>(i)]);
                }
                const PreferenceProfile subprofile(sub, n);
                CHECK(simulate_park(subprofile, ArrivalOrder::identity(subprofile.cars())).parked());
            }
        }
    }
}

TEST_CASE("count_parking_functions closed forms") {
    CHECK(count_parking_functions(3, 3) == BigInteger(16));
    CHECK(count_parking_functions(1, 1) == BigInteger(1));
    CHECK(count_parking_functions(2, 3) == BigInteger(8));
    CHECK(count_parking_functions(6, 6) == BigInteger(16807));
    CHECK_THROWS_AS(count_parking_functions(3, 2), std::invalid_argument);
}

TEST_CASE("enumeration matches the closed-form counts and is lexicographic") {
    const std::vector<long long> catalan = {1, 1, 2, 5, 14, 42, 132, 429, 1430};

    SUBCASE("all members, 1 <= n <= m <= 7") {
        for (int n = 1; n <= 7; ++n) {
            for (int m = n; m <= 7; ++m) {
                const auto members = enumerate_parking_functions(n, m, false);
                CHECK(BigInteger(static_cast<std::int64_t>(members.size())) ==
                      count_parking_functions(n, m));
                CHECK(std::is_sorted(members.begin(), members.end(),
                                     [](const PreferenceProfile& a, const PreferenceProfile& b) {
                                         return a.prefs() < b.prefs();
                                     }));
                for (const auto& p : members) CHECK(is_parking_function(p));
            }
        }
    }
    SUBCASE("weakly increasing members are counted by Catalan numbers") {
        for (int n = 1; n <= 8; ++n) {
            const auto members = enumerate_parking_functions(n, n, true);
            CHECK(static_cast<long long>(members.size()) == catalan[static_cast<std::size_t>(n)]);
            for (const auto& p : members) {
                CHECK(std::is_sorted(p.prefs().begin(), p.prefs().end()));
            }
        }
    }
    SUBCASE("small explicit listing") {
        const auto members = enumerate_parking_functions(2, 2, false);
        REQUIRE(members.size() == 3);
        CHECK(members[0].prefs() == std::vector<int>{1, 1});
        CHECK(members[1].prefs() == std::vector<int>{1, 2});
        CHECK(members[2].prefs() == std::vector<int>{2, 1});
    }
    SUBCASE("enumeration agrees with filtering all tuples") {
        for (int n = 1; n <= 5; ++n) {
            std::vector<std::vector<int>> expected;
            for (const auto& prefs : all_tuples(n, n)) {
                if (is_parking_function(PreferenceProfile(prefs))) expected.push_back(prefs);
            }
            const auto members = enumerate_parking_functions(n, n, false);
            REQUIRE(members.size() == expected.size());
            for (std::size_t i = 0; i < members.size(); ++i) {
                CHECK(members[i].prefs() == expected[i]);
            }
        }
    }
}

TEST_CASE("enumeration cap raises ResourceLimitError") {
    ParkingFunctionEnumerator small(2, 2, false);
    PreferenceProfile out({1});
    CHECK(small.next(out));

    // PF_9 has 10^8 members, beyond the default cap.
    CHECK_THROWS_AS(ParkingFunctionEnumerator(9, 9, false), ResourceLimitError);
}

TEST_CASE("arrival order conversions") {
    const auto order = ArrivalOrder::from_positions({3, 1, 2});
    CHECK(order.sequence() == std::vector<int>{1, 2, 0});
    CHECK(order.position_of(1) == 3);
    CHECK(order.position_of(2) == 1);
    CHECK_THROWS_AS(ArrivalOrder::from_positions({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(ArrivalOrder::from_sequence({0, 0}), std::invalid_argument);
}
