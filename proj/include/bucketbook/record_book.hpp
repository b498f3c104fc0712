#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bucketbook/amount.hpp"
#include "bucketbook/bucket_math.hpp"
#include "bucketbook/cost.hpp"
#include "bucketbook/errors.hpp"

namespace bucketbook {

struct BalanceRecord {
    Amount amount;
    Timestamp expires_at = 0;

    friend bool operator==(const BalanceRecord&, const BalanceRecord&) = default;

    friend std::ostream& operator<<(std::ostream& os, const BalanceRecord& r) {
        return os << "(" << r.amount << ", " << r.expires_at << ")";
    }
};

/// FIFO-ordered (amount, expiry) pairs removed by a consume, oldest expiry
/// first. For a coalesced book the expirations are strictly increasing.
struct ConsumedSlice {
    std::vector<BalanceRecord> parts;

    bool empty() const { return parts.empty(); }

    Amount total() const {
        Amount sum;
        for (const auto& p : parts) {
            sum = sum.checked_add(p.amount);
        }
        return sum;
    }
};

enum class OpStatus {
    success,
    insufficient_balance,
};

inline const char* to_string(OpStatus s) {
    return s == OpStatus::success ? "success" : "insufficient-balance";
}

struct ConsumeResult {
    OpStatus status = OpStatus::success;
    ConsumedSlice slice;
    OpCost cost;
};

struct TransferResult {
    OpStatus status = OpStatus::success;
    OpCost cost;
};

/**
 * Sorted, coalescing balance book for one account-resource pair.
 *
 * Records are ordered by strictly increasing expiration and every expiration
 * is a bucket boundary (a multiple of the resource's bucket width). Deposits
 * whose expirations land on the same boundary merge into one record, which
 * keeps the book at no more than bucket_count + 1 records no matter how many
 * deposits it receives.
 *
 * A record is expired once now >= expires_at; tokens are valid on
 * [deposit, expiry). Operations taking `now` must be called with
 * non-decreasing values.
 *
 * Every mutating operation either completes or leaves the book exactly as it
 * was. Returned OpCost counters record the work of the operation's own
 * algorithm, including the pruning pass an insert performs first.
 */
class RecordBook {
public:
    RecordBook() = default;

    /// Wraps raw records without validation; pair with
    /// find_invariant_violation when the source is untrusted.
    static RecordBook from_records(std::vector<BalanceRecord> records) {
        RecordBook book;
        book.records_ = std::move(records);
        return book;
    }

    const std::vector<BalanceRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    /// Deposits `amount` expiring at bucket boundary `expiry`. Expired
    /// records are pruned first; then the deposit either coalesces into an
    /// existing record with the same expiry or becomes a new record in
    /// sorted position.
    OpCost insert(const ResourceConfig& config, Amount amount, Timestamp expiry, Timestamp now) {
        if (amount.is_zero()) {
            fail(Errc::zero_amount, "insert of zero amount");
        }
        if (!config.aligned(expiry)) {
            fail(Errc::misaligned_expiry,
                 "expiry " + std::to_string(expiry) + " is not a multiple of bucket width " +
                     std::to_string(config.width()));
        }
        if (expiry <= now) {
            fail(Errc::expiry_not_future, "expiry " + std::to_string(expiry) +
                                              " is not after now " + std::to_string(now));
        }

        // Overflow check before any mutation. A coalesce target has
        // expires_at == expiry > now, so pruning cannot remove it.
        auto pos = std::lower_bound(records_.begin(), records_.end(), expiry,
                                    [](const BalanceRecord& r, Timestamp e) { return r.expires_at < e; });
        if (pos != records_.end() && pos->expires_at == expiry) {
            (void)pos->amount.checked_add(amount);
        }

        OpCost cost = prune(now);

        for (std::size_t i = 0; i < records_.size(); ++i) {
            ++cost.records_visited;
            if (records_[i].expires_at == expiry) {
                records_[i].amount = records_[i].amount.checked_add(amount);
                ++cost.records_written;
                return cost;
            }
            if (records_[i].expires_at > expiry) {
                cost.records_shifted += records_.size() - i;
                records_.insert(records_.begin() + static_cast<std::ptrdiff_t>(i),
                                BalanceRecord{amount, expiry});
                ++cost.records_created;
                ++cost.records_written;
                return cost;
            }
        }
        records_.push_back(BalanceRecord{amount, expiry});
        ++cost.records_created;
        ++cost.records_written;
        return cost;
    }

    /// Withdraws `amount` FIFO from non-expired records. On success the
    /// expired prefix that the scan stepped over and any fully drained
    /// records are removed; on insufficient balance the book is unchanged
    /// and the slice is empty.
    ConsumeResult consume(Amount amount, Timestamp now) {
        if (amount.is_zero()) {
            fail(Errc::zero_amount, "consume of zero amount");
        }

        ConsumeResult result;
        Amount remaining = amount;
        // Planned deductions: (record index, delta).
        std::vector<std::pair<std::size_t, Amount>> plan;
        plan.reserve(records_.size());

        for (std::size_t i = 0; i < records_.size() && !remaining.is_zero(); ++i) {
            ++result.cost.records_visited;
            if (records_[i].expires_at <= now) {
                continue; // expired
            }
            Amount delta = min(remaining, records_[i].amount);
            plan.emplace_back(i, delta);
            remaining = remaining.checked_sub(delta);
        }

        if (!remaining.is_zero()) {
            result.status = OpStatus::insufficient_balance;
            return result;
        }

        result.slice.parts.reserve(plan.size());
        for (const auto& [index, delta] : plan) {
            records_[index].amount = records_[index].amount.checked_sub(delta);
            ++result.cost.records_written;
            result.slice.parts.push_back(BalanceRecord{delta, records_[index].expires_at});
        }
        compact(now, result.cost);
        result.status = OpStatus::success;
        return result;
    }

    /// Removes expired records, keeping order. Idempotent.
    OpCost prune(Timestamp now) {
        OpCost cost;
        cost.records_visited = records_.size();
        compact(now, cost);
        return cost;
    }

    /// Sum of non-expired amounts. Pure.
    Amount valid_balance(Timestamp now) const {
        Amount sum;
        for (const auto& r : records_) {
            if (r.expires_at > now) {
                sum = sum.checked_add(r.amount);
            }
        }
        return sum;
    }

    Amount valid_balance(Timestamp now, OpCost& cost) const {
        cost.records_visited += records_.size();
        return valid_balance(now);
    }

    friend bool operator==(const RecordBook&, const RecordBook&) = default;

private:
    // In-place compaction dropping expired and drained records.
    void compact(Timestamp now, OpCost& cost) {
        std::size_t out = 0;
        for (std::size_t i = 0; i < records_.size(); ++i) {
            if (records_[i].expires_at > now && !records_[i].amount.is_zero()) {
                if (out != i) {
                    records_[out] = records_[i];
                    ++cost.records_shifted;
                }
                ++out;
            } else {
                ++cost.records_deleted;
            }
        }
        records_.resize(out);
    }

    std::vector<BalanceRecord> records_;
};

/// Moves `amount` from sender to recipient, preserving each consumed slice's
/// original expiration (no re-bucketing). Atomic: on any failure both books
/// are left untouched.
inline TransferResult transfer(const ResourceConfig& config, RecordBook& sender,
                               RecordBook& recipient, Amount amount, Timestamp now) {
    if (&sender == &recipient) {
        fail(Errc::self_transfer, "sender and recipient are the same book");
    }

    RecordBook sender_next = sender;
    ConsumeResult consumed = sender_next.consume(amount, now);
    TransferResult result;
    result.cost = consumed.cost;
    if (consumed.status != OpStatus::success) {
        result.status = consumed.status;
        return result;
    }

    RecordBook recipient_next = recipient;
    for (const auto& part : consumed.slice.parts) {
        result.cost += recipient_next.insert(config, part.amount, part.expires_at, now);
    }

    sender = std::move(sender_next);
    recipient = std::move(recipient_next);
    result.status = OpStatus::success;
    return result;
}

/// Maximum records a well-formed book may hold: bucket_count + 1.
inline std::size_t book_capacity(const ResourceConfig& config) {
    return static_cast<std::size_t>(config.bucket_count()) + 1;
}

/// First violated book invariant as text, or nullopt if the book is well
/// formed under `config`. Used to vet snapshots and in tests.
inline std::optional<std::string> find_invariant_violation(const RecordBook& book,
                                                           const ResourceConfig& config) {
    const auto& records = book.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].amount.is_zero()) {
            return "record " + std::to_string(i) + " has zero amount";
        }
        if (!config.aligned(records[i].expires_at)) {
            return "record " + std::to_string(i) + " expiry " + std::to_string(records[i].expires_at) +
                   " is not a multiple of bucket width " + std::to_string(config.width());
        }
        if (i > 0 && records[i - 1].expires_at >= records[i].expires_at) {
            return "expirations not strictly increasing at record " + std::to_string(i);
        }
    }
    if (records.size() > book_capacity(config)) {
        return "book holds " + std::to_string(records.size()) + " records, bound is " +
               std::to_string(book_capacity(config));
    }
    return std::nullopt;
}

} // namespace bucketbook
