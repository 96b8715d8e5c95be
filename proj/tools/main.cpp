// parkgame: exact cooperative-game analysis of parking functions.
//
// Subcommands cover validation, displacement, characteristic values, Shapley
// values (polynomial and brute-force), supermodularity checks, exact least
// core, enumeration/counting, and a benchmark mode. Output is a human table
// by default or one JSON document per profile with --format json.
//
// Exit codes: 0 success, 1 domain error (not a parking function, resource
// cap), 2 usage or parse error.

#include "CLI11.hpp"
#include "json.hpp"

#include "parkgame/errors.hpp"
#include "parkgame/game.hpp"
#include "parkgame/leastcore.hpp"
#include "parkgame/parking.hpp"
#include "parkgame/shapley.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
using namespace parkgame;

class ProfileParseError : public std::runtime_error {
public:
    ProfileParseError(const std::string& what, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what) {}
};

// "1,4,3,3,1,2,7" or "1 1 2 m=3": comma- or space-separated positive
// integers with an optional m=<spots> suffix. A "name:" prefix labels the
// line; the label is reported back through `label`.
PreferenceProfile parse_profile_line(std::string text, int line_no, int default_m,
                                     std::string* label = nullptr) {
    std::size_t offset = 0;
    const std::size_t colon = text.find(':');
    if (colon != std::string::npos) {
        std::string name = text.substr(0, colon);
        const std::size_t first = name.find_first_not_of(" \t");
        const std::size_t last = name.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw ProfileParseError("empty label before ':'", line_no, 1);
        }
        if (label != nullptr) *label = name.substr(first, last - first + 1);
        offset = colon + 1;
        text = text.substr(colon + 1);
    }
    std::vector<int> prefs;
    int spots = default_m;
    bool saw_m = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ',') {
            ++pos;
            continue;
        }
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t' && text[pos] != ',') {
            ++pos;
        }
        std::string token = text.substr(start, pos - start);
        const int column = static_cast<int>(offset + start) + 1;
        if (saw_m) {
            throw ProfileParseError("m=<spots> must be the last token", line_no, column);
        }
        std::string digits = token;
        bool is_m = false;
        if (token.rfind("m=", 0) == 0) {
            digits = token.substr(2);
            is_m = true;
        }
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                           [](unsigned char c) { return std::isdigit(c); })) {
            throw ProfileParseError("expected a positive integer, got '" + token + "'",
                                    line_no, column);
        }
        long long value = 0;
        try {
            value = std::stoll(digits);
        } catch (const std::out_of_range&) {
            throw ProfileParseError("value out of range: '" + token + "'", line_no, column);
        }
        if (value > 1000000) {
            throw ProfileParseError("value out of supported range: '" + token + "'",
                                    line_no, column);
        }
        if (is_m) {
            spots = static_cast<int>(value);
            saw_m = true;
        } else {
            prefs.push_back(static_cast<int>(value));
        }
    }
    if (prefs.empty()) {
        throw ProfileParseError("no preferences given", line_no, 1);
    }
    // Domain errors (entry out of [1, m], m < n) surface as invalid_argument.
    return PreferenceProfile(std::move(prefs), spots);
}

std::string join_rationals(const std::vector<Rational>& values, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += sep;
        out += values[i].to_string();
    }
    return out;
}

struct CommandOutput {
    std::vector<std::string> values;
    std::string method = "exact";
    json extras = json::object();
    std::string table;
    bool ok = true;
    std::string error;
};

struct ProfileOptions {
    std::string prefs_text;
    std::string file;
    int spots = 0;  // 0: as many spots as cars
    std::string format = "table";
};

void add_profile_options(CLI::App* cmd, ProfileOptions& opt) {
    cmd->add_option("--prefs", opt.prefs_text, "preference tuple, e.g. 1,4,3,3,1,2,7");
    cmd->add_option("--file", opt.file,
                    "read one profile per line ('-' for stdin; '#' starts a comment)");
    cmd->add_option("--m", opt.spots, "number of parking spots (default: one per car)");
    cmd->add_option("--format", opt.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
}

json result_document(const std::string& command, const PreferenceProfile* profile,
                     const CommandOutput& out, double ms) {
    json doc;
    doc["command"] = command;
    if (profile != nullptr) {
        doc["n"] = profile->cars();
        doc["m"] = profile->spots();
        doc["prefs"] = profile->prefs();
    } else {
        doc["n"] = 0;
        doc["m"] = 0;
        doc["prefs"] = json::array();
    }
    doc["method"] = out.method;
    doc["values"] = out.values;
    doc["timing_ms"] = ms;
    doc["status"] = out.ok ? "ok" : "error";
    if (!out.ok) doc["error"] = out.error;
    for (auto& [key, value] : out.extras.items()) doc[key] = value;
    return doc;
}

// Runs `handler` for every input profile (from --prefs, --file, or stdin) and
// prints per-profile output. Returns the process exit code.
template <typename Handler>
int for_each_profile(const std::string& command, const ProfileOptions& opt, Handler&& handler) {
    std::vector<std::pair<int, std::string>> lines;  // line number, text
    if (!opt.prefs_text.empty()) {
        lines.emplace_back(1, opt.prefs_text);
    } else if (!opt.file.empty()) {
        std::istream* in = &std::cin;
        std::ifstream file;
        if (opt.file != "-") {
            file.open(opt.file);
            if (!file) {
                std::cerr << "cannot open " << opt.file << "\n";
                return 2;
            }
            in = &file;
        }
        std::string line;
        int line_no = 0;
        while (std::getline(*in, line)) {
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            if (line.find_first_not_of(" \t,") == std::string::npos) continue;
            lines.emplace_back(line_no, line);
        }
    } else {
        std::cerr << "need --prefs or --file\n";
        return 2;
    }

    int exit_code = 0;
    bool first = true;
    for (const auto& [line_no, text] : lines) {
        std::optional<PreferenceProfile> profile;
        std::string label;
        CommandOutput out;
        double ms = 0.0;
        try {
            profile.emplace(parse_profile_line(text, line_no, opt.spots, &label));
            const auto start = std::chrono::steady_clock::now();
            out = handler(*profile);
            const auto stop = std::chrono::steady_clock::now();
            ms = std::chrono::duration<double, std::milli>(stop - start).count();
        } catch (const ProfileParseError& e) {
            std::cerr << e.what() << "\n";
            return 2;
        } catch (const std::invalid_argument& e) {
            out.ok = false;
            out.error = e.what();
        } catch (const NotAParkingFunction& e) {
            out.ok = false;
            out.error = e.what();
        } catch (const ResourceLimitError& e) {
            out.ok = false;
            out.error = e.what();
        }
        if (!out.ok) exit_code = 1;

        if (opt.format == "json") {
            json doc = result_document(command, profile ? &*profile : nullptr, out, ms);
            if (!label.empty()) doc["label"] = label;
            std::cout << doc.dump() << "\n";
        } else {
            if (!first) std::cout << "\n";
            if ((lines.size() > 1 || !label.empty()) && profile) {
                std::cout << "profile";
                if (!label.empty()) std::cout << " " << label;
                std::cout << ": " << profile->to_string() << "\n";
            }
            if (out.ok) {
                std::cout << out.table;
            } else {
                std::cout << "error: " << out.error << "\n";
            }
        }
        first = false;
    }
    return exit_code;
}

Allocation run_method(const PreferenceProfile& profile, const std::string& method) {
    if (method == "poly") return shapley(profile);
    if (method == "brute-subset") return shapley_bruteforce_subset(profile);
    return shapley_bruteforce_perm(profile);
}

std::vector<int> parse_coalition_list(const std::string& text, int n) {
    std::vector<int> cars;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        int car = 0;
        try {
            car = std::stoi(token);
        } catch (...) {
            throw std::invalid_argument("bad coalition member '" + token + "'");
        }
        if (car < 1 || car > n) {
            throw std::invalid_argument("coalition member " + std::to_string(car) +
                                        " outside [1, " + std::to_string(n) + "]");
        }
        cars.push_back(car);
    }
    return cars;
}

// Uniform member of PF_n: rejection sampling over [n]^n against the sorted
// criterion.
PreferenceProfile sample_parking_function(int n, std::mt19937_64& rng) {
    std::vector<int> prefs(static_cast<std::size_t>(n));
    while (true) {
        for (int& x : prefs) x = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        PreferenceProfile candidate(prefs);
        if (sorted_criterion_holds(candidate)) return candidate;
    }
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t mid = xs.size() / 2;
    if (xs.size() % 2 == 1) return xs[mid];
    return (xs[mid - 1] + xs[mid]) / 2.0;
}

int run_bench(int max_n, int samples, std::uint64_t seed) {
    std::vector<int> sizes;
    for (int n = 2; n < max_n; n *= 2) sizes.push_back(n);
    if (sizes.empty() || sizes.back() != max_n) sizes.push_back(max_n);

    std::cout << "n,method,status,samples,median_ms,min_ms,agree\n";
    for (int n : sizes) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n));
        std::vector<PreferenceProfile> instances;
        for (int i = 0; i < samples; ++i) instances.push_back(sample_parking_function(n, rng));

        std::vector<Allocation> poly_results;
        std::vector<double> poly_ms;
        for (const auto& p : instances) {
            const auto start = std::chrono::steady_clock::now();
            poly_results.push_back(shapley(p));
            const auto stop = std::chrono::steady_clock::now();
            poly_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        }
        std::cout << n << ",poly,ran," << samples << "," << median(poly_ms) << ","
                  << *std::min_element(poly_ms.begin(), poly_ms.end()) << ",\n";

        struct Brute {
            const char* name;
            int limit;
            Allocation (*run)(const PreferenceProfile&);
        };
        const Brute brutes[] = {{"brute-subset", 12, shapley_bruteforce_subset},
                                {"brute-perm", 9, shapley_bruteforce_perm}};
        for (const auto& brute : brutes) {
            if (n > brute.limit) {
                std::cout << n << "," << brute.name << ",skipped," << samples << ",,,\n";
                continue;
            }
            std::vector<double> ms;
            bool agree = true;
            for (std::size_t i = 0; i < instances.size(); ++i) {
                const auto start = std::chrono::steady_clock::now();
                const Allocation result = brute.run(instances[i]);
                const auto stop = std::chrono::steady_clock::now();
                ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
                agree = agree && result == poly_results[i];
            }
            std::cout << n << "," << brute.name << ",ran," << samples << "," << median(ms) << ","
                      << *std::min_element(ms.begin(), ms.end()) << ","
                      << (agree ? "yes" : "no") << "\n";
        }
    }
    return 0;
}

json coalition_to_json(const Coalition& c) { return json(c.members()); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cooperative-game analysis of parking functions"};
    app.require_subcommand(1);
    app.footer("Environment: PARKGAME_RESOURCE_CAP overrides enumeration/brute-force work caps.");

    ProfileOptions opt;
    std::string method = "poly";
    std::string coalition_text;
    bool full_pairs = false;
    int supermodular_limit = 12;
    bool with_gap = false;

    CLI::App* check = app.add_subcommand("check", "validate a preference profile");
    add_profile_options(check, opt);

    CLI::App* displacement = app.add_subcommand("displacement", "total displacement d(alpha)");
    add_profile_options(displacement, opt);

    CLI::App* characteristic =
        app.add_subcommand("characteristic", "coalition cost c_alpha(S)");
    add_profile_options(characteristic, opt);
    characteristic->add_option("--coalition", coalition_text, "coalition members, e.g. 1,3")
        ->required();

    CLI::App* shapley_cmd = app.add_subcommand("shapley", "exact Shapley value");
    add_profile_options(shapley_cmd, opt);
    shapley_cmd->add_option("--method", method, "poly, brute-subset, or brute-perm")
        ->check(CLI::IsMember({"poly", "brute-subset", "brute-perm"}));

    CLI::App* supermodular = app.add_subcommand("supermodular", "verify supermodularity");
    add_profile_options(supermodular, opt);
    supermodular->add_flag("--full-pairs", full_pairs,
                           "audit every S subseteq T instead of covers only");
    supermodular->add_option("--limit", supermodular_limit, "player limit for the check");

    CLI::App* leastcore_cmd =
        app.add_subcommand("leastcore", "least core value and an optimal allocation");
    add_profile_options(leastcore_cmd, opt);
    leastcore_cmd->add_flag("--gap", with_gap, "include the Shapley-vs-least-core gap report");

    int count_n = 0;
    int count_m = 0;
    bool weakly_increasing = false;
    bool count_only = false;
    CLI::App* enumerate = app.add_subcommand("enumerate", "list PF_{n,m} lexicographically");
    enumerate->add_option("--n", count_n, "number of cars")->required()->check(CLI::Range(1, 1000000));
    enumerate->add_option("--m", count_m, "number of spots (default n)")->check(CLI::Range(1, 1000000));
    enumerate->add_flag("--weakly-increasing", weakly_increasing,
                        "only weakly increasing members");
    enumerate->add_flag("--count-only", count_only, "print only the number of members");
    enumerate->add_option("--format", opt.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    CLI::App* count = app.add_subcommand("count", "closed-form |PF_{n,m}|");
    count->add_option("--n", count_n, "number of cars")->required()->check(CLI::Range(1, 1000000));
    count->add_option("--m", count_m, "number of spots (default n)")->check(CLI::Range(1, 1000000));
    count->add_option("--format", opt.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    int bench_max_n = 12;
    int bench_samples = 3;
    std::uint64_t bench_seed = 1;
    CLI::App* bench =
        app.add_subcommand("bench", "compare polynomial and brute-force Shapley (CSV)");
    bench->add_option("--max-n", bench_max_n, "largest instance size")->check(CLI::Range(1, 1000000));
    bench->add_option("--samples", bench_samples, "instances per size")->check(CLI::Range(1, 1000000));
    bench->add_option("--seed", bench_seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) {
            return for_each_profile("check", opt, [](const PreferenceProfile& p) {
                CommandOutput out;
                out.method = "simulate";
                const bool parks = is_parking_function(p);
                out.extras["is_parking_function"] = parks;
                if (parks) {
                    out.table = "parking function: yes\n";
                } else {
                    out.ok = false;
                    out.error = "not a parking function";
                }
                return out;
            });
        }
        if (displacement->parsed()) {
            return for_each_profile("displacement", opt, [](const PreferenceProfile& p) {
                CommandOutput out;
                out.method = "simulate";
                const long long d = total_displacement(p);
                out.values = {std::to_string(d)};
                out.table = "displacement: " + std::to_string(d) + "\n";
                return out;
            });
        }
        if (characteristic->parsed()) {
            return for_each_profile("characteristic", opt, [&](const PreferenceProfile& p) {
                CommandOutput out;
                out.method = "simulate";
                const GameView game{p};
                const auto members = parse_coalition_list(coalition_text, p.cars());
                const Coalition s = Coalition::of(members);
                const long long cost = game.characteristic(s);
                out.values = {std::to_string(cost)};
                out.extras["coalition"] = members;
                out.table = "c(" + s.to_string() + ") = " + std::to_string(cost) + "\n";
                return out;
            });
        }
        if (shapley_cmd->parsed()) {
            return for_each_profile("shapley", opt, [&](const PreferenceProfile& p) {
                CommandOutput out;
                out.method = method;
                const Allocation shares = run_method(p, method);
                Rational total;
                for (const auto& share : shares) total += share;
                for (const auto& share : shares) out.values.push_back(share.to_string());
                std::string table;
                for (std::size_t i = 0; i < shares.size(); ++i) {
                    table += "car " + std::to_string(i + 1) + ": " + shares[i].to_string() + "\n";
                }
                table += "total: " + total.to_string() + "\n";
                out.table = std::move(table);
                out.extras["total"] = total.to_string();
                return out;
            });
        }
        if (supermodular->parsed()) {
            return for_each_profile("supermodular", opt, [&](const PreferenceProfile& p) {
                CommandOutput out;
                out.method = full_pairs ? "brute-all-pairs" : "brute-covers";
                const GameView game{p};
                SupermodularOptions options;
                options.covers_only = !full_pairs;
                options.player_limit = supermodular_limit;
                const auto report = check_supermodular(game, options);
                out.extras["supermodular"] = report.holds;
                if (report.holds) {
                    out.table = "supermodular: true\n";
                } else {
                    const auto& [car, small, large] = *report.witness;
                    out.extras["witness"] = {{"car", car},
                                             {"S", coalition_to_json(small)},
                                             {"T", coalition_to_json(large)}};
                    out.table = "supermodular: false (car " + std::to_string(car) + ", S=" +
                                small.to_string() + ", T=" + large.to_string() + ")\n";
                }
                return out;
            });
        }
        if (leastcore_cmd->parsed()) {
            return for_each_profile("leastcore", opt, [&](const PreferenceProfile& p) {
                CommandOutput out;
                out.method = "simplex-exact";
                const LeastCoreResult result = least_core(p);
                for (const auto& share : result.allocation) {
                    out.values.push_back(share.to_string());
                }
                out.extras["z_star"] = result.z_star.to_string();
                json tight = json::array();
                for (const auto& coalition : result.tight_coalitions) {
                    tight.push_back(coalition_to_json(coalition));
                }
                out.extras["tight_coalitions"] = tight;
                std::string table = "z* = " + result.z_star.to_string() + "\n";
                table += "allocation: " + join_rationals(result.allocation, ", ") + "\n";
                table += "tight coalitions:";
                for (const auto& coalition : result.tight_coalitions) {
                    table += " " + coalition.to_string();
                }
                table += "\n";
                if (with_gap) {
                    const ShapleyGapReport gap = shapley_least_core_gap(p);
                    out.extras["shapley"] = json::array();
                    for (const auto& share : gap.shapley_allocation) {
                        out.extras["shapley"].push_back(share.to_string());
                    }
                    out.extras["max_violation"] = gap.max_violation.to_string();
                    out.extras["argmax_coalition"] = coalition_to_json(gap.argmax);
                    table += "shapley: " + join_rationals(gap.shapley_allocation, ", ") + "\n";
                    table += "max violation: " + gap.max_violation.to_string() + " at " +
                             gap.argmax.to_string() + "\n";
                }
                out.table = std::move(table);
                return out;
            });
        }
        if (enumerate->parsed()) {
            if (count_m == 0) count_m = count_n;
            ParkingFunctionEnumerator en(count_n, count_m, weakly_increasing);
            PreferenceProfile row({1});
            std::uint64_t total = 0;
            json profiles = json::array();
            while (en.next(row)) {
                ++total;
                if (count_only) continue;
                if (opt.format == "json") {
                    profiles.push_back(row.prefs());
                } else {
                    std::string line;
                    for (std::size_t i = 0; i < row.prefs().size(); ++i) {
                        if (i > 0) line += ',';
                        line += std::to_string(row.prefs()[i]);
                    }
                    std::cout << line << "\n";
                }
            }
            if (opt.format == "json") {
                json doc;
                doc["command"] = "enumerate";
                doc["n"] = count_n;
                doc["m"] = count_m;
                doc["weakly_increasing"] = weakly_increasing;
                doc["count"] = total;
                if (!count_only) doc["profiles"] = profiles;
                std::cout << doc.dump() << "\n";
            } else if (count_only) {
                std::cout << total << "\n";
            }
            return 0;
        }
        if (count->parsed()) {
            if (count_m == 0) count_m = count_n;
            const BigInteger total = count_parking_functions(count_n, count_m);
            if (opt.format == "json") {
                json doc;
                doc["command"] = "count";
                doc["n"] = count_n;
                doc["m"] = count_m;
                doc["count"] = total.to_string();
                std::cout << doc.dump() << "\n";
            } else {
                std::cout << total.to_string() << "\n";
            }
            return 0;
        }
        if (bench->parsed()) {
            return run_bench(bench_max_n, bench_samples, bench_seed);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotAParkingFunction& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
