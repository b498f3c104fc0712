#pragma once

#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "bucketbook/oracle/exact_book.hpp"
#include "bucketbook/oracle/naive_book.hpp"
#include "bucketbook/record_book.hpp"

namespace bucketbook::oracle {

using ExpiryAggregate = std::map<Timestamp, Amount>;

/// Sums amounts per expiration over any record sequence (book contents or a
/// consumed slice). Zero totals are omitted.
inline ExpiryAggregate aggregate_by_expiry(std::span<const BalanceRecord> records) {
    ExpiryAggregate aggregate;
    for (const auto& r : records) {
        if (r.amount.is_zero()) {
            continue;
        }
        auto [it, inserted] = aggregate.emplace(r.expires_at, r.amount);
        if (!inserted) {
            it->second = it->second.checked_add(r.amount);
        }
    }
    return aggregate;
}

/// Same aggregation restricted to records still valid at `now`. This is the
/// comparison domain for coalesced-vs-naive equivalence: the two structures
/// may retain different sets of already-expired records (the coalescing book
/// prunes inside inserts, the naive book never does), but their live content
/// must match exactly.
inline ExpiryAggregate aggregate_valid(std::span<const BalanceRecord> records, Timestamp now) {
    ExpiryAggregate aggregate;
    for (const auto& r : records) {
        if (r.expires_at <= now || r.amount.is_zero()) {
            continue;
        }
        auto [it, inserted] = aggregate.emplace(r.expires_at, r.amount);
        if (!inserted) {
            it->second = it->second.checked_add(r.amount);
        }
    }
    return aggregate;
}

inline std::string format_aggregate(const ExpiryAggregate& aggregate) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [expiry, amount] : aggregate) {
        if (!first) {
            os << ", ";
        }
        os << expiry << ": " << amount;
        first = false;
    }
    os << "}";
    return os.str();
}

struct EquivalenceReport {
    bool equivalent = true;
    std::string divergence; // empty when equivalent

    explicit operator bool() const { return equivalent; }
};

/// Compares the coalescing book against the naive per-deposit book built
/// from the same operation trace. Equivalence is judged on valid per-expiry
/// aggregates at the given clock. On divergence the report carries the trace
/// prefix (one op per line) and both aggregates.
inline EquivalenceReport check_equivalence(const RecordBook& coalesced,
                                           const NaiveBucketedBook& naive, Timestamp now,
                                           std::span<const std::string> trace = {}) {
    ExpiryAggregate lhs = aggregate_valid(coalesced.records(), now);
    ExpiryAggregate rhs = aggregate_valid(naive.records(), now);
    if (lhs == rhs) {
        return {};
    }
    std::ostringstream os;
    os << "books diverge at clock " << now << "\n";
    os << "trace prefix:\n";
    for (const auto& line : trace) {
        os << "  " << line << "\n";
    }
    os << "coalesced aggregate: " << format_aggregate(lhs) << "\n";
    os << "naive aggregate:     " << format_aggregate(rhs) << "\n";
    return {false, os.str()};
}

/// Bucketed valid balance must never fall below the exact-expiry valid
/// balance on a shared deposit-only schedule.
inline bool check_dominance(const RecordBook& coalesced, const ExactExpiryBook& exact,
                            Timestamp now) {
    return coalesced.valid_balance(now) >= exact.valid_balance(now);
}

} // namespace bucketbook::oracle
