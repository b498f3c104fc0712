#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bucketbook/record_book.hpp"

namespace bucketbook::oracle {

/**
 * Unbounded per-deposit baseline: every insert stores its own record, nothing
 * coalesces and nothing is pruned implicitly, so the book grows with deposit
 * count. Records are sorted by expiration with ties kept in insertion order.
 * Expirations are the same bucket boundaries the coalescing book uses.
 *
 * Serves as the differential-testing reference: at any clock its valid
 * (non-expired) records must aggregate per expiry to exactly the coalescing
 * book's, and every operation must report the same status. Kept independent
 * of RecordBook's implementation on purpose; the code here is the plain,
 * slow reading of the semantics.
 */
class NaiveBucketedBook {
public:
    NaiveBucketedBook() = default;

    static NaiveBucketedBook from_records(std::vector<BalanceRecord> records) {
        NaiveBucketedBook book;
        book.records_ = std::move(records);
        return book;
    }

    const std::vector<BalanceRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    /// Appends one record for this deposit at its sorted position, after any
    /// existing records with the same expiration.
    OpCost insert(const ResourceConfig& config, Amount amount, Timestamp expiry, Timestamp now) {
        if (amount.is_zero()) {
            fail(Errc::zero_amount, "insert of zero amount");
        }
        if (!config.aligned(expiry)) {
            fail(Errc::misaligned_expiry, "expiry is not a multiple of the bucket width");
        }
        if (expiry <= now) {
            fail(Errc::expiry_not_future, "expiry is not after now");
        }
        OpCost cost;
        std::size_t pos = records_.size();
        while (pos > 0) {
            ++cost.records_visited;
            if (records_[pos - 1].expires_at <= expiry) {
                break;
            }
            --pos;
        }
        cost.records_shifted += records_.size() - pos;
        records_.insert(records_.begin() + static_cast<std::ptrdiff_t>(pos),
                        BalanceRecord{amount, expiry});
        ++cost.records_created;
        ++cost.records_written;
        return cost;
    }

    /// FIFO withdrawal over non-expired records; drained records are erased,
    /// expired ones are skipped and left in place. Unchanged on failure.
    ConsumeResult consume(Amount amount, Timestamp now) {
        if (amount.is_zero()) {
            fail(Errc::zero_amount, "consume of zero amount");
        }
        ConsumeResult result;
        Amount remaining = amount;
        std::vector<std::pair<std::size_t, Amount>> plan;

        for (std::size_t i = 0; i < records_.size() && !remaining.is_zero(); ++i) {
            ++result.cost.records_visited;
            if (records_[i].expires_at <= now) {
                continue;
            }
            Amount delta = min(remaining, records_[i].amount);
            plan.emplace_back(i, delta);
            remaining = remaining.checked_sub(delta);
        }
        if (!remaining.is_zero()) {
            result.status = OpStatus::insufficient_balance;
            return result;
        }

        for (auto it = plan.rbegin(); it != plan.rend(); ++it) {
            auto [index, delta] = *it;
            result.slice.parts.push_back(BalanceRecord{delta, records_[index].expires_at});
            records_[index].amount = records_[index].amount.checked_sub(delta);
            ++result.cost.records_written;
            if (records_[index].amount.is_zero()) {
                result.cost.records_shifted += records_.size() - index - 1;
                records_.erase(records_.begin() + static_cast<std::ptrdiff_t>(index));
                ++result.cost.records_deleted;
            }
        }
        std::reverse(result.slice.parts.begin(), result.slice.parts.end());
        result.status = OpStatus::success;
        return result;
    }

    /// Removes expired and drained records.
    OpCost prune(Timestamp now) {
        OpCost cost;
        for (std::size_t i = records_.size(); i > 0; --i) {
            ++cost.records_visited;
            const BalanceRecord& r = records_[i - 1];
            if (r.expires_at <= now || r.amount.is_zero()) {
                cost.records_shifted += records_.size() - i;
                records_.erase(records_.begin() + static_cast<std::ptrdiff_t>(i - 1));
                ++cost.records_deleted;
            }
        }
        return cost;
    }

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

    friend bool operator==(const NaiveBucketedBook&, const NaiveBucketedBook&) = default;

private:
    std::vector<BalanceRecord> records_;
};

/// Expiration-preserving transfer between naive books: consumed parts are
/// re-inserted with their original expirations, one record per part.
inline TransferResult transfer(const ResourceConfig& config, NaiveBucketedBook& sender,
                               NaiveBucketedBook& recipient, Amount amount, Timestamp now) {
    if (&sender == &recipient) {
        fail(Errc::self_transfer, "sender and recipient are the same book");
    }
    NaiveBucketedBook sender_next = sender;
    ConsumeResult consumed = sender_next.consume(amount, now);
    TransferResult result;
    result.cost = consumed.cost;
    if (consumed.status != OpStatus::success) {
        result.status = consumed.status;
        return result;
    }
    NaiveBucketedBook recipient_next = recipient;
    for (const auto& part : consumed.slice.parts) {
        result.cost += recipient_next.insert(config, part.amount, part.expires_at, now);
    }
    sender = std::move(sender_next);
    recipient = std::move(recipient_next);
    return result;
}

} // namespace bucketbook::oracle
