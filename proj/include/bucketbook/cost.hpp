#pragma once

#include <cstdint>
#include <ostream>

namespace bucketbook {

/// Abstract operation cost: one counter per record-level event. Each record
/// comparison, move, creation, mutation, or removal inside an operation
/// increments exactly one counter. All weights are 1; weighted_total applies
/// an illustrative storage-heavy weighting for reports only.
struct OpCost {
    std::uint64_t records_visited = 0;
    std::uint64_t records_shifted = 0;
    std::uint64_t records_created = 0;
    std::uint64_t records_written = 0;
    std::uint64_t records_deleted = 0;

    std::uint64_t total() const {
        return records_visited + records_shifted + records_created + records_written + records_deleted;
    }

    /// Report-only weighting that makes storage writes dominate reads,
    /// mimicking environments where a fresh storage slot costs orders of
    /// magnitude more than an in-place read. Never asserted against.
    std::uint64_t weighted_total() const {
        return records_visited * 1 + records_shifted * 3 + records_created * 100 +
               records_written * 20 + records_deleted * 5;
    }

    OpCost& operator+=(const OpCost& other) {
        records_visited += other.records_visited;
        records_shifted += other.records_shifted;
        records_created += other.records_created;
        records_written += other.records_written;
        records_deleted += other.records_deleted;
        return *this;
    }

    friend OpCost operator+(OpCost a, const OpCost& b) {
        a += b;
        return a;
    }

    friend bool operator==(const OpCost&, const OpCost&) = default;

    friend std::ostream& operator<<(std::ostream& os, const OpCost& c) {
        return os << "{visited=" << c.records_visited << " shifted=" << c.records_shifted
                  << " created=" << c.records_created << " written=" << c.records_written
                  << " deleted=" << c.records_deleted << "}";
    }
};

/// Upper bound on OpCost::total() as a polynomial in (k + 1), where k is the
/// resource's bucket count: quad * (k+1)^2 + linear * (k+1) + constant.
struct CostBound {
    std::uint64_t quad = 0;
    std::uint64_t linear = 0;
    std::uint64_t constant = 0;

    std::uint64_t eval(std::uint64_t bucket_count) const {
        std::uint64_t n = bucket_count + 1;
        return quad * n * n + linear * n + constant;
    }
};

// Repository-wide bounds. Fixed once; tests assert against these and never
// loosen them per-case.
inline constexpr CostBound kLinearOpBound{0, 5, 2};   // insert, consume, prune, balance
inline constexpr CostBound kTransferOpBound{5, 6, 2}; // transfer

inline bool within_bound(const OpCost& cost, std::uint64_t bucket_count, const CostBound& bound) {
    return cost.total() <= bound.eval(bucket_count);
}

} // namespace bucketbook
