#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string_view>
#include <vector>

#include "bucketbook/ledger.hpp"
#include "bucketbook/oracle/naive_book.hpp"

namespace bucketbook::sim {

enum class TimingStrategy {
    same_bucket,          // every deposit at the same instant
    spread_across_buckets, // advance exactly one bucket width between deposits
    random_times,         // random non-negative gaps up to two bucket widths
};

inline const char* to_string(TimingStrategy s) {
    switch (s) {
        case TimingStrategy::same_bucket: return "sameBucket";
        case TimingStrategy::spread_across_buckets: return "spreadAcrossBuckets";
        case TimingStrategy::random_times: return "randomTimes";
    }
    return "?";
}

inline TimingStrategy parse_strategy(std::string_view name) {
    if (name == "sameBucket") return TimingStrategy::same_bucket;
    if (name == "spreadAcrossBuckets") return TimingStrategy::spread_across_buckets;
    if (name == "randomTimes") return TimingStrategy::random_times;
    fail(Errc::invalid_config, "unknown timing strategy '" + std::string(name) + "'");
}

/// Adversarial deposit workload against one victim account.
struct AttackPlan {
    std::uint64_t deposit_count = 1;
    Amount amount_per_deposit{1};
    TimingStrategy timing = TimingStrategy::spread_across_buckets;
    AccountId target{"victim"};
};

struct AttackReport {
    std::size_t record_count_before = 0;
    std::size_t record_count_after = 0;
    std::size_t bound = 0; // bucket_count + 1
    OpCost victim_burn_cost;
    OpCost victim_transfer_cost;
    std::uint64_t attack_deposits = 0;
    Timestamp final_clock = 0;
};

/// Deposit schedule as absolute, non-decreasing timestamps. Deterministic in
/// (plan, config, seed).
inline std::vector<Timestamp> deposit_times(const AttackPlan& plan, const ResourceConfig& config,
                                            std::uint64_t seed) {
    std::vector<Timestamp> times;
    times.reserve(plan.deposit_count);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Duration> gap(0, 2 * config.width());
    Timestamp t = 0;
    for (std::uint64_t i = 0; i < plan.deposit_count; ++i) {
        if (i > 0) {
            switch (plan.timing) {
                case TimingStrategy::same_bucket: break;
                case TimingStrategy::spread_across_buckets: t += config.width(); break;
                case TimingStrategy::random_times: t += gap(rng); break;
            }
        }
        times.push_back(t);
    }
    return times;
}

/// Executes the deposit schedule against a fresh ledger, then measures what
/// the victim pays afterwards: a full-balance burn and a full-balance
/// transfer, each on its own copy of the post-attack ledger.
inline AttackReport run_attack(const AttackPlan& plan, const ResourceConfig& config,
                               std::uint64_t seed) {
    if (plan.deposit_count == 0 || plan.amount_per_deposit.is_zero()) {
        fail(Errc::invalid_config, "attack needs at least one deposit of at least one unit");
    }
    ResourceId resource{"res"};
    Ledger ledger;
    ledger.define_resource(resource, config.ttl(), config.bucket_count());

    AttackReport report;
    report.attack_deposits = plan.deposit_count;
    report.bound = book_capacity(config);
    report.record_count_before = ledger.records_of(plan.target, resource).size();

    for (Timestamp t : deposit_times(plan, config, seed)) {
        ledger.advance_clock(t);
        ledger.mint(plan.target, resource, plan.amount_per_deposit);
    }
    report.final_clock = ledger.clock();
    report.record_count_after = ledger.records_of(plan.target, resource).size();

    Amount balance = ledger.balance_of(plan.target, resource);
    {
        Ledger copy = ledger;
        report.victim_burn_cost = copy.burn(plan.target, resource, balance).cost;
    }
    {
        Ledger copy = ledger;
        report.victim_transfer_cost =
            copy.transfer_between(plan.target, AccountId{"rescue"}, resource, balance).cost;
    }
    return report;
}

/// The same attack against the unbounded per-deposit baseline, side by side
/// with the coalescing ledger.
struct PairedAttackReport {
    AttackReport coalesced;
    std::size_t naive_record_count = 0;
    OpCost naive_burn_cost;
    OpCost naive_transfer_cost;
};

inline PairedAttackReport compare_with_unbounded(const AttackPlan& plan,
                                                 const ResourceConfig& config,
                                                 std::uint64_t seed) {
    PairedAttackReport paired;
    paired.coalesced = run_attack(plan, config, seed);

    oracle::NaiveBucketedBook naive;
    Timestamp clock = 0;
    for (Timestamp t : deposit_times(plan, config, seed)) {
        clock = t;
        naive.insert(config, plan.amount_per_deposit, config.expiry_at(t), t);
    }
    paired.naive_record_count = naive.size();

    Amount balance = naive.valid_balance(clock);
    {
        oracle::NaiveBucketedBook copy = naive;
        paired.naive_burn_cost = copy.consume(balance, clock).cost;
    }
    {
        oracle::NaiveBucketedBook copy = naive;
        oracle::NaiveBucketedBook rescue;
        paired.naive_transfer_cost = oracle::transfer(config, copy, rescue, balance, clock).cost;
    }
    return paired;
}

inline void write_attack_csv(std::ostream& os, const PairedAttackReport& paired,
                             const AttackPlan& plan, const ResourceConfig& config,
                             std::uint64_t seed) {
    os << "model,strategy,deposits,k,ttl,bucketWidth,seed,recordCountAfter,bound,"
          "burnVisited,burnTotal,transferVisited,transferTotal\n";
    const AttackReport& c = paired.coalesced;
    os << "coalesced," << to_string(plan.timing) << ',' << plan.deposit_count << ','
       << config.bucket_count() << ',' << config.ttl() << ',' << config.width() << ',' << seed
       << ',' << c.record_count_after << ',' << c.bound << ',' << c.victim_burn_cost.records_visited
       << ',' << c.victim_burn_cost.total() << ',' << c.victim_transfer_cost.records_visited << ','
       << c.victim_transfer_cost.total() << '\n';
    os << "naive," << to_string(plan.timing) << ',' << plan.deposit_count << ','
       << config.bucket_count() << ',' << config.ttl() << ',' << config.width() << ',' << seed
       << ',' << paired.naive_record_count << ",," << paired.naive_burn_cost.records_visited << ','
       << paired.naive_burn_cost.total() << ',' << paired.naive_transfer_cost.records_visited << ','
       << paired.naive_transfer_cost.total() << '\n';
}

inline void write_attack_summary(std::ostream& os, const PairedAttackReport& paired,
                                 const AttackPlan& plan, const ResourceConfig& config) {
    const AttackReport& c = paired.coalesced;
    os << "attack: " << plan.deposit_count << " deposits of " << plan.amount_per_deposit
       << " unit(s), strategy " << to_string(plan.timing) << ", k=" << config.bucket_count()
       << ", ttl=" << config.ttl() << "s (bucket width " << config.width() << "s)\n";
    os << "victim records: coalesced " << c.record_count_after << " (bound " << c.bound
       << "), naive " << paired.naive_record_count << "\n";
    os << "victim burn-all: coalesced visits " << c.victim_burn_cost.records_visited
       << " records, naive visits " << paired.naive_burn_cost.records_visited << "\n";
    os << "victim transfer-all: coalesced total " << c.victim_transfer_cost.total()
       << ", naive total " << paired.naive_transfer_cost.total() << "\n";
}

} // namespace bucketbook::sim
