#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "bucketbook/record_book.hpp"

namespace bucketbook::oracle {

/**
 * Baseline with exact expirations: a deposit at time t with ttl T expires at
 * precisely t + T, no bucketing. One record per deposit, sorted by expiry
 * with ties in insertion order. The same half-open validity rule applies: a
 * record is expired once now >= expires_at.
 *
 * The bucketed book's valid balance must dominate this book's on any shared
 * deposit schedule, since rounding expirations up never shortens a lifetime.
 */
class ExactExpiryBook {
public:
    ExactExpiryBook() = default;

    const std::vector<BalanceRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    void insert(Amount amount, Timestamp deposit_time, Duration ttl) {
        if (amount.is_zero()) {
            fail(Errc::zero_amount, "insert of zero amount");
        }
        Timestamp expiry = deposit_time + ttl;
        if (expiry < deposit_time) {
            fail(Errc::overflow, "deposit time + ttl exceeds the timestamp range");
        }
        std::size_t pos = records_.size();
        while (pos > 0 && records_[pos - 1].expires_at > expiry) {
            --pos;
        }
        records_.insert(records_.begin() + static_cast<std::ptrdiff_t>(pos),
                        BalanceRecord{amount, expiry});
    }

    /// FIFO withdrawal, oldest exact expiry first.
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
                records_.erase(records_.begin() + static_cast<std::ptrdiff_t>(index));
                ++result.cost.records_deleted;
            }
        }
        std::reverse(result.slice.parts.begin(), result.slice.parts.end());
        return result;
    }

    void prune(Timestamp now) {
        for (std::size_t i = records_.size(); i > 0; --i) {
            const BalanceRecord& r = records_[i - 1];
            if (r.expires_at <= now || r.amount.is_zero()) {
                records_.erase(records_.begin() + static_cast<std::ptrdiff_t>(i - 1));
            }
        }
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

private:
    std::vector<BalanceRecord> records_;
};

} // namespace bucketbook::oracle
