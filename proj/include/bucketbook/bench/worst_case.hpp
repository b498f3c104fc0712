#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bucketbook/ledger.hpp"

namespace bucketbook::bench {

enum class WorstCaseKind {
    burn_all,
    transfer_all,
};

/// Deposit schedule that drives one book to the storage bound, followed by a
/// full-balance burn or transfer measured at `measure_time`.
struct WorstCaseScenario {
    ResourceConfig config;
    std::vector<Timestamp> mint_times; // non-decreasing
    Timestamp measure_time = 0;
    WorstCaseKind kind = WorstCaseKind::burn_all;
};

/// Builds the saturating schedule for bucket count k: one mint per bucket
/// window plus a final off-boundary mint inside the last window, yielding
/// k + 1 live records with distinct expirations at measure_time.
inline WorstCaseScenario worst_case_scenario(std::uint64_t k, WorstCaseKind kind) {
    constexpr Duration kWidth = 16;
    WorstCaseScenario scenario{ResourceConfig(kWidth * k, k), {}, kWidth * k - 1, kind};
    scenario.mint_times.reserve(k + 1);
    for (std::uint64_t i = 0; i < k; ++i) {
        scenario.mint_times.push_back(i * kWidth);
    }
    scenario.mint_times.push_back(kWidth * k - 1);
    return scenario;
}

struct ScenarioResult {
    std::size_t record_count = 0; // records in the victim book when measured
    OpCost cost;                  // cost of the measured operation
};

namespace detail {

inline Ledger saturated_ledger(const WorstCaseScenario& scenario, const ResourceId& resource,
                               const AccountId& account, std::span<const Amount> amounts) {
    Ledger ledger;
    ledger.define_resource(resource, scenario.config.ttl(), scenario.config.bucket_count());
    for (std::size_t i = 0; i < scenario.mint_times.size(); ++i) {
        ledger.advance_clock(scenario.mint_times[i]);
        ledger.mint(account, resource, amounts[i % amounts.size()]);
    }
    ledger.advance_clock(scenario.measure_time);
    return ledger;
}

} // namespace detail

/// Runs the scenario and measures its terminal operation.
inline ScenarioResult run_scenario(const WorstCaseScenario& scenario,
                                   std::span<const Amount> amounts) {
    ResourceId resource{"res"};
    AccountId account{"victim"};
    Ledger ledger = detail::saturated_ledger(scenario, resource, account, amounts);
    ScenarioResult result;
    result.record_count = ledger.records_of(account, resource).size();
    Amount balance = ledger.balance_of(account, resource);
    if (scenario.kind == WorstCaseKind::burn_all) {
        result.cost = ledger.burn(account, resource, balance).cost;
    } else {
        result.cost = ledger.transfer_between(account, AccountId{"recipient"}, resource, balance).cost;
    }
    return result;
}

struct CostRow {
    std::string operation;
    std::uint64_t k = 0;
    OpCost cost;
};

/// Worst-case cost of each public operation at bucket count k: a mint that
/// scans the whole saturated book, a full-balance burn, a prune with every
/// record expired, and a full-balance transfer into an empty account.
inline std::vector<CostRow> measure_costs(std::uint64_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> amount_dist(1, 1000);
    std::vector<Amount> amounts;
    amounts.reserve(k + 1);
    for (std::uint64_t i = 0; i <= k; ++i) {
        amounts.emplace_back(amount_dist(rng));
    }

    ResourceId resource{"res"};
    AccountId account{"victim"};
    std::vector<CostRow> rows;

    {
        WorstCaseScenario scenario = worst_case_scenario(k, WorstCaseKind::burn_all);
        Ledger ledger = detail::saturated_ledger(scenario, resource, account, amounts);
        rows.push_back({"insert", k, ledger.mint(account, resource, Amount{1})});
    }
    {
        WorstCaseScenario scenario = worst_case_scenario(k, WorstCaseKind::burn_all);
        rows.push_back({"burn", k, run_scenario(scenario, amounts).cost});
    }
    {
        WorstCaseScenario scenario = worst_case_scenario(k, WorstCaseKind::burn_all);
        Ledger ledger = detail::saturated_ledger(scenario, resource, account, amounts);
        // Past the last expiration every record prunes away.
        ledger.advance_clock(scenario.config.ttl() * 2);
        rows.push_back({"prune", k, ledger.prune_book(account, resource)});
    }
    {
        WorstCaseScenario scenario = worst_case_scenario(k, WorstCaseKind::transfer_all);
        rows.push_back({"transfer", k, run_scenario(scenario, amounts).cost});
    }
    return rows;
}

inline void write_cost_csv_header(std::ostream& os) {
    os << "operation,k,recordsVisited,recordsShifted,recordsCreated,recordsWritten,"
          "recordsDeleted,total,weightedTotal\n";
}

inline void write_cost_csv_row(std::ostream& os, const CostRow& row) {
    os << row.operation << ',' << row.k << ',' << row.cost.records_visited << ','
       << row.cost.records_shifted << ',' << row.cost.records_created << ','
       << row.cost.records_written << ',' << row.cost.records_deleted << ','
       << row.cost.total() << ',' << row.cost.weighted_total() << '\n';
}

/// Least-squares slope of log(y) against log(x). With cost totals as y and
/// bucket counts as x, linear growth fits near 1 and quadratic near 2.
inline double fit_loglog_slope(std::span<const std::pair<double, double>> points) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        double lx = std::log(x);
        double ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double n = static_cast<double>(points.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace bucketbook::bench
