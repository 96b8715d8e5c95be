#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "parkgame/game.hpp"

#include <random>
#include <thread>

using namespace parkgame;

namespace {

std::mt19937_64 rng(0x5eed0003ULL);

PreferenceProfile random_parking_function(int n) {
    while (true) {
        std::vector<int> prefs(static_cast<std::size_t>(n));
        for (int& x : prefs) x = 1 + static_cast<int>(rng() % n);
        PreferenceProfile p(std::move(prefs));
        if (is_parking_function(p)) return p;
    }
}

} // namespace

TEST_CASE("coalition basics") {
    const Coalition s = Coalition::of({1, 3});
    CHECK(s.bits == 0b101);
    CHECK(s.contains(1));
    CHECK_FALSE(s.contains(2));
    CHECK(s.size() == 2);
    CHECK(s.with(2).bits == 0b111);
    CHECK(s.without(3).bits == 0b001);
    CHECK(s.subset_of(Coalition::full(3)));
    CHECK_FALSE(Coalition::full(3).subset_of(s));
    CHECK(s.to_string() == "{1,3}");
    CHECK(Coalition::empty().to_string() == "{}");
    CHECK(s.members() == std::vector<int>{1, 3});
}

TEST_CASE("game view validation") {
    CHECK_THROWS_AS(GameView(PreferenceProfile({2, 2})), NotAParkingFunction);
    CHECK_THROWS_AS(GameView(PreferenceProfile({1, 2}, 3)), NotAParkingFunction);
    CHECK_NOTHROW(GameView(PreferenceProfile({1, 1, 2})));
}

TEST_CASE("characteristic values of the (1,1,2) game") {
    const GameView game{PreferenceProfile({1, 1, 2})};
    CHECK(game.characteristic(Coalition::empty()) == 0);
    CHECK(game.characteristic(Coalition::of({1})) == 0);
    CHECK(game.characteristic(Coalition::of({2})) == 0);
    CHECK(game.characteristic(Coalition::of({3})) == 0);
    CHECK(game.characteristic(Coalition::of({1, 2})) == 1);
    CHECK(game.characteristic(Coalition::of({1, 3})) == 0);
    CHECK(game.characteristic(Coalition::of({2, 3})) == 0);
    CHECK(game.characteristic(Coalition::of({1, 2, 3})) == 2);
}

TEST_CASE("marginal cost") {
    const GameView game{PreferenceProfile({1, 1, 2})};
    CHECK(game.marginal_cost(Coalition::of({1, 2}), 3) == 1);
    CHECK(game.marginal_cost(Coalition::of({2}), 1) == 1);
    for (int car = 1; car <= 3; ++car) {
        CHECK(game.marginal_cost(Coalition::empty(), car) == 0);  // a lone car is never displaced
    }
    CHECK_THROWS_AS(game.marginal_cost(Coalition::of({1, 2}), 1), std::invalid_argument);
    CHECK_THROWS_AS(game.marginal_cost(Coalition::empty(), 9), std::invalid_argument);
}

TEST_CASE("grand coalition cost equals total displacement") {
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_parking_function(1 + static_cast<int>(rng() % 7));
        const GameView game{p};
        CHECK(game.characteristic(Coalition::full(p.cars())) == total_displacement(p));
    }
}

TEST_CASE("rearrangement remark: c_alpha(S) == c_alpha'(r(S)) exhaustively") {
    for (int n = 1; n <= 5; ++n) {
        for (const auto& p : enumerate_parking_functions(n, n, false)) {
            const GameView game{p};
            const auto [sorted, ranks] = sorted_rearrangement(p);
            const GameView sorted_game{sorted};
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                Coalition image;
                for (int car = 1; car <= n; ++car) {
                    if ((mask >> (car - 1)) & 1) image = image.with(ranks.rank(car));
                }
                CHECK(game.characteristic(Coalition{mask}) == sorted_game.characteristic(image));
            }
        }
    }
}

TEST_CASE("supermodularity of parking games") {
    SUBCASE("the paper's counterexample game") {
        const GameView game{PreferenceProfile({1, 1, 2})};
        CHECK(check_supermodular(game).holds);
    }
    SUBCASE("modular games have all-zero marginals") {
        const GameView game{PreferenceProfile({1, 2, 3})};
        CHECK(check_supermodular(game).holds);
    }
    SUBCASE("exhaustive covers and full-pair audit for n <= 5") {
        for (int n = 1; n <= 5; ++n) {
            for (const auto& p : enumerate_parking_functions(n, n, false)) {
                const GameView game{p};
                CHECK(check_supermodular(game).holds);
                SupermodularOptions audit;
                audit.covers_only = false;
                CHECK(check_supermodular(game, audit).holds);
            }
        }
    }
    SUBCASE("100 random members of PF_8") {
        for (int trial = 0; trial < 100; ++trial) {
            const GameView game{random_parking_function(8)};
            CHECK(check_supermodular(game).holds);
        }
    }
    SUBCASE("player limit raises ResourceLimitError") {
        SupermodularOptions tight;
        tight.player_limit = 4;
        const GameView game{random_parking_function(6)};
        CHECK_THROWS_AS(check_supermodular(game, tight), ResourceLimitError);
    }
}

TEST_CASE("a passing check carries no witness") {
    const auto report = check_supermodular(GameView{PreferenceProfile({1, 1, 2, 2})});
    CHECK(report.holds);
    CHECK_FALSE(report.witness.has_value());
}

TEST_CASE("monotone marginals along random chains") {
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9);  // up to 10 players
        const auto p = random_parking_function(n);
        const GameView game{p};
        const int car = 1 + static_cast<int>(rng() % n);
        // random chain S subset T not containing car
        std::uint64_t small = rng() & ((std::uint64_t{1} << n) - 1);
        small &= ~(std::uint64_t{1} << (car - 1));
        std::uint64_t large = small | (rng() & ((std::uint64_t{1} << n) - 1));
        large &= ~(std::uint64_t{1} << (car - 1));
        CHECK(game.marginal_cost(Coalition{small}, car) <=
              game.marginal_cost(Coalition{large}, car));
    }
}

TEST_CASE("is_modular detects permutation profiles") {
    CHECK(is_modular(GameView{PreferenceProfile({2, 1, 3})}));
    CHECK_FALSE(is_modular(GameView{PreferenceProfile({1, 1, 2})}));
    for (int n = 1; n <= 5; ++n) {
        for (const auto& p : enumerate_parking_functions(n, n, false)) {
            const GameView game{p};
            if (!is_modular(game)) continue;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                CHECK(game.characteristic(Coalition{mask}) == 0);
            }
        }
    }
}

TEST_CASE("characteristic cache is consistent and concurrency safe") {
    const auto p = random_parking_function(10);
    const GameView cached{p};
    // Uncached reference: a fresh view per query.
    for (int trial = 0; trial < 200; ++trial) {
        const Coalition s{rng() & ((std::uint64_t{1} << 10) - 1)};
        const GameView fresh{p};
        CHECK(cached.characteristic(s) == fresh.characteristic(s));
        CHECK(cached.characteristic(s) == cached.characteristic(s));
    }
    std::vector<std::thread> workers;
    std::vector<long long> sums(4, 0);
    for (int w = 0; w < 4; ++w) {
        workers.emplace_back([&cached, &sums, w] {
            long long sum = 0;
            for (std::uint64_t mask = 0; mask < (1u << 10); ++mask) {
                sum += cached.characteristic(Coalition{mask});
            }
            sums[static_cast<std::size_t>(w)] = sum;
        });
    }
    for (auto& t : workers) t.join();
    CHECK(sums[0] == sums[1]);
    CHECK(sums[1] == sums[2]);
    CHECK(sums[2] == sums[3]);
}
