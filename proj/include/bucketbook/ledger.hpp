#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bucketbook/record_book.hpp"

namespace bucketbook {

namespace detail {
inline std::string validated_id(std::string id, const char* what) {
    if (id.empty()) {
        fail(Errc::invalid_id, std::string(what) + " id is empty");
    }
    if (id.size() > 256) {
        fail(Errc::invalid_id, std::string(what) + " id exceeds 256 bytes");
    }
    return id;
}
} // namespace detail

class AccountId {
public:
    explicit AccountId(std::string id) : id_(detail::validated_id(std::move(id), "account")) {}
    const std::string& str() const { return id_; }
    friend auto operator<=>(const AccountId&, const AccountId&) = default;

private:
    std::string id_;
};

class ResourceId {
public:
    explicit ResourceId(std::string id) : id_(detail::validated_id(std::move(id), "resource")) {}
    const std::string& str() const { return id_; }
    friend auto operator<=>(const ResourceId&, const ResourceId&) = default;

private:
    std::string id_;
};

struct BookKey {
    AccountId account;
    ResourceId resource;
    friend auto operator<=>(const BookKey&, const BookKey&) = default;
};

struct LedgerOpResult {
    OpStatus status = OpStatus::success;
    OpCost cost;
};

/**
 * Multi-account, multi-resource ledger over RecordBook with a monotonic
 * virtual clock. Time only moves through advance_clock; no operation reads
 * the wall clock. Books are created lazily on first deposit and removed the
 * moment they hold no records, so the book map never stores empty books.
 *
 * Expirations are created exclusively by mint (deposit time + ttl rounded up
 * to the resource's bucket boundary); transfers move existing expirations
 * unchanged. Pruning happens inside inserts and on explicit request, never
 * on clock advance.
 */
class Ledger {
public:
    Ledger() = default;

    void define_resource(const ResourceId& resource, Duration ttl, std::uint64_t count) {
        if (configs_.contains(resource)) {
            fail(Errc::duplicate_resource, "resource '" + resource.str() + "' already defined");
        }
        configs_.emplace(resource, ResourceConfig(ttl, count));
    }

    void advance_clock(Timestamp to) {
        if (to < clock_) {
            fail(Errc::time_regression, "clock cannot move from " + std::to_string(clock_) +
                                            " back to " + std::to_string(to));
        }
        clock_ = to;
    }

    Timestamp clock() const { return clock_; }

    OpCost mint(const AccountId& account, const ResourceId& resource, Amount amount) {
        const ResourceConfig& config = config_of(resource);
        Timestamp expiry = config.expiry_at(clock_);
        auto [it, created] = books_.try_emplace(BookKey{account, resource});
        try {
            return it->second.insert(config, amount, expiry, clock_);
        } catch (...) {
            if (created) {
                books_.erase(it);
            }
            throw;
        }
    }

    LedgerOpResult burn(const AccountId& account, const ResourceId& resource, Amount amount) {
        (void)config_of(resource);
        if (amount.is_zero()) {
            fail(Errc::zero_amount, "burn of zero amount");
        }
        auto it = books_.find(BookKey{account, resource});
        if (it == books_.end()) {
            return {OpStatus::insufficient_balance, {}};
        }
        ConsumeResult consumed = it->second.consume(amount, clock_);
        if (consumed.status == OpStatus::success && it->second.empty()) {
            books_.erase(it);
        }
        return {consumed.status, consumed.cost};
    }

    LedgerOpResult transfer_between(const AccountId& from, const AccountId& to,
                                    const ResourceId& resource, Amount amount) {
        const ResourceConfig& config = config_of(resource);
        if (from == to) {
            fail(Errc::self_transfer, "transfer from '" + from.str() + "' to itself");
        }
        auto sender_it = books_.find(BookKey{from, resource});
        RecordBook sender = sender_it != books_.end() ? sender_it->second : RecordBook{};
        auto recipient_it = books_.find(BookKey{to, resource});
        RecordBook recipient = recipient_it != books_.end() ? recipient_it->second : RecordBook{};

        TransferResult result = transfer(config, sender, recipient, amount, clock_);
        if (result.status != OpStatus::success) {
            return {result.status, result.cost};
        }
        store(BookKey{from, resource}, std::move(sender));
        store(BookKey{to, resource}, std::move(recipient));
        return {result.status, result.cost};
    }

    /// Valid balance at the current clock; 0 for absent books. Pure.
    Amount balance_of(const AccountId& account, const ResourceId& resource) const {
        OpCost ignored;
        return balance_of(account, resource, ignored);
    }

    Amount balance_of(const AccountId& account, const ResourceId& resource, OpCost& cost) const {
        (void)config_of(resource);
        auto it = books_.find(BookKey{account, resource});
        if (it == books_.end()) {
            return Amount{};
        }
        return it->second.valid_balance(clock_, cost);
    }

    std::vector<BalanceRecord> records_of(const AccountId& account, const ResourceId& resource) const {
        (void)config_of(resource);
        auto it = books_.find(BookKey{account, resource});
        if (it == books_.end()) {
            return {};
        }
        return it->second.records();
    }

    /// Explicit prune of one book at the current clock.
    OpCost prune_book(const AccountId& account, const ResourceId& resource) {
        (void)config_of(resource);
        auto it = books_.find(BookKey{account, resource});
        if (it == books_.end()) {
            return {};
        }
        OpCost cost = it->second.prune(clock_);
        if (it->second.empty()) {
            books_.erase(it);
        }
        return cost;
    }

    const ResourceConfig& config_of(const ResourceId& resource) const {
        auto it = configs_.find(resource);
        if (it == configs_.end()) {
            fail(Errc::unknown_resource, "resource '" + resource.str() + "' is not defined");
        }
        return it->second;
    }

    const std::map<ResourceId, ResourceConfig>& resources() const { return configs_; }
    const std::map<BookKey, RecordBook>& books() const { return books_; }

    /// Rebuilds a ledger from externally supplied state, validating every
    /// book against its resource's invariants. Reject anything a sequence of
    /// ledger operations could not have produced.
    static Ledger restore(Timestamp clock, std::map<ResourceId, ResourceConfig> configs,
                          std::map<BookKey, RecordBook> books) {
        for (const auto& [key, book] : books) {
            auto config_it = configs.find(key.resource);
            if (config_it == configs.end()) {
                fail(Errc::invalid_state, "book for account '" + key.account.str() +
                                              "' references undefined resource '" +
                                              key.resource.str() + "'");
            }
            if (book.empty()) {
                fail(Errc::invalid_state,
                     "empty book stored for account '" + key.account.str() + "'");
            }
            if (auto violation = find_invariant_violation(book, config_it->second)) {
                fail(Errc::invalid_state, "book for account '" + key.account.str() +
                                              "', resource '" + key.resource.str() + "': " +
                                              *violation);
            }
        }
        Ledger ledger;
        ledger.clock_ = clock;
        ledger.configs_ = std::move(configs);
        ledger.books_ = std::move(books);
        return ledger;
    }

private:
    void store(BookKey key, RecordBook book) {
        if (book.empty()) {
            books_.erase(key);
        } else {
            books_.insert_or_assign(std::move(key), std::move(book));
        }
    }

    std::map<ResourceId, ResourceConfig> configs_;
    std::map<BookKey, RecordBook> books_;
    Timestamp clock_ = 0;
};

} // namespace bucketbook
