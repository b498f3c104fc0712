#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bucketbook/ledger.hpp"

namespace bucketbook {

inline constexpr std::int64_t kSnapshotFormatVersion = 1;

namespace snapshot_detail {

using nlohmann::json;

inline const json& require(const json& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end()) {
        fail(Errc::snapshot_invalid, std::string("missing field '") + field + "'");
    }
    return *it;
}

inline std::uint64_t as_u64(const json& value, const char* field) {
    if (!value.is_number_integer() && !value.is_number_unsigned()) {
        fail(Errc::snapshot_invalid, std::string("field '") + field + "' is not an integer");
    }
    if (value.is_number_integer() && value.get<std::int64_t>() < 0) {
        fail(Errc::snapshot_invalid, std::string("field '") + field + "' is negative");
    }
    return value.get<std::uint64_t>();
}

inline std::string as_string(const json& value, const char* field) {
    if (!value.is_string()) {
        fail(Errc::snapshot_invalid, std::string("field '") + field + "' is not a string");
    }
    return value.get<std::string>();
}

// Amounts are numbers while they survive a binary64 round trip, decimal
// strings beyond that.
inline json amount_to_json(Amount amount) {
    if (amount.double_safe()) {
        return json(amount.as_uint64());
    }
    return json(amount.str());
}

inline Amount amount_from_json(const json& value) {
    if (value.is_string()) {
        return Amount::parse(value.get<std::string>());
    }
    if (value.is_number_unsigned()) {
        return Amount{value.get<std::uint64_t>()};
    }
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
        return Amount{static_cast<std::uint64_t>(value.get<std::int64_t>())};
    }
    fail(Errc::snapshot_invalid, "amount is neither an unsigned integer nor a decimal string");
}

} // namespace snapshot_detail

/// Canonical JSON form of the ledger: resources sorted by id, books sorted
/// by (accountId, resourceId), records in book order. A pure function of the
/// ledger's observables, so identical ledgers serialize byte-identically.
inline nlohmann::json ledger_to_json(const Ledger& ledger) {
    using nlohmann::json;
    json resources = json::array();
    for (const auto& [id, config] : ledger.resources()) {
        resources.push_back({{"resourceId", id.str()},
                             {"ttl", config.ttl()},
                             {"bucketCount", config.bucket_count()},
                             {"bucketWidth", config.width()}});
    }
    json books = json::array();
    for (const auto& [key, book] : ledger.books()) {
        json records = json::array();
        for (const auto& r : book.records()) {
            records.push_back({{"amount", snapshot_detail::amount_to_json(r.amount)},
                               {"expiresAt", r.expires_at}});
        }
        books.push_back({{"accountId", key.account.str()},
                         {"resourceId", key.resource.str()},
                         {"records", std::move(records)}});
    }
    return json{{"formatVersion", kSnapshotFormatVersion},
                {"clock", ledger.clock()},
                {"resources", std::move(resources)},
                {"books", std::move(books)}};
}

inline std::string serialize_snapshot(const Ledger& ledger) {
    return ledger_to_json(ledger).dump(2) + "\n";
}

/// Parses and fully validates a snapshot. Anything that could not have been
/// produced by ledger operations is rejected; there is no partial result.
inline Ledger parse_snapshot(const std::string& text) {
    namespace sd = snapshot_detail;
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::snapshot_parse, e.what());
    }
    if (!root.is_object()) {
        fail(Errc::snapshot_parse, "snapshot root is not an object");
    }

    const auto& version = sd::require(root, "formatVersion");
    if (!version.is_number_integer() && !version.is_number_unsigned()) {
        fail(Errc::snapshot_invalid, "formatVersion is not an integer");
    }
    if (version.get<std::int64_t>() != kSnapshotFormatVersion) {
        fail(Errc::snapshot_version,
             "snapshot format version " + version.dump() + " is not supported");
    }

    Timestamp clock = sd::as_u64(sd::require(root, "clock"), "clock");

    const auto& resources = sd::require(root, "resources");
    if (!resources.is_array()) {
        fail(Errc::snapshot_invalid, "'resources' is not an array");
    }
    std::map<ResourceId, ResourceConfig> configs;
    for (const auto& entry : resources) {
        if (!entry.is_object()) {
            fail(Errc::snapshot_invalid, "resource entry is not an object");
        }
        try {
            ResourceId id{sd::as_string(sd::require(entry, "resourceId"), "resourceId")};
            ResourceConfig config(sd::as_u64(sd::require(entry, "ttl"), "ttl"),
                                  sd::as_u64(sd::require(entry, "bucketCount"), "bucketCount"));
            if (sd::as_u64(sd::require(entry, "bucketWidth"), "bucketWidth") != config.width()) {
                fail(Errc::snapshot_invalid, "stored bucketWidth for resource '" + id.str() +
                                                 "' does not match ttl/bucketCount");
            }
            if (!configs.emplace(id, config).second) {
                fail(Errc::snapshot_invalid, "duplicate resource '" + id.str() + "'");
            }
        } catch (const Error& e) {
            if (e.code() == Errc::snapshot_invalid) {
                throw;
            }
            fail(Errc::snapshot_invalid, e.what());
        }
    }

    const auto& books = sd::require(root, "books");
    if (!books.is_array()) {
        fail(Errc::snapshot_invalid, "'books' is not an array");
    }
    std::map<BookKey, RecordBook> parsed_books;
    for (const auto& entry : books) {
        if (!entry.is_object()) {
            fail(Errc::snapshot_invalid, "book entry is not an object");
        }
        try {
            BookKey key{AccountId{sd::as_string(sd::require(entry, "accountId"), "accountId")},
                        ResourceId{sd::as_string(sd::require(entry, "resourceId"), "resourceId")}};
            const auto& records = sd::require(entry, "records");
            if (!records.is_array()) {
                fail(Errc::snapshot_invalid, "'records' is not an array");
            }
            std::vector<BalanceRecord> parsed;
            parsed.reserve(records.size());
            for (const auto& record : records) {
                if (!record.is_object()) {
                    fail(Errc::snapshot_invalid, "record entry is not an object");
                }
                parsed.push_back(
                    {sd::amount_from_json(sd::require(record, "amount")),
                     sd::as_u64(sd::require(record, "expiresAt"), "expiresAt")});
            }
            if (!parsed_books.emplace(key, RecordBook::from_records(std::move(parsed))).second) {
                fail(Errc::snapshot_invalid, "duplicate book for account '" + key.account.str() +
                                                 "', resource '" + key.resource.str() + "'");
            }
        } catch (const Error& e) {
            if (e.code() == Errc::snapshot_invalid) {
                throw;
            }
            fail(Errc::snapshot_invalid, e.what());
        }
    }

    try {
        return Ledger::restore(clock, std::move(configs), std::move(parsed_books));
    } catch (const Error& e) {
        fail(Errc::snapshot_invalid, e.what());
    }
}

inline Ledger load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(Errc::io_failure, "cannot open snapshot '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        fail(Errc::io_failure, "cannot read snapshot '" + path.string() + "'");
    }
    return parse_snapshot(buffer.str());
}

/// Writes the snapshot atomically: the bytes land in a sibling temp file
/// which is renamed over the target, so a crash mid-write leaves the old
/// snapshot intact.
inline void save_snapshot(const Ledger& ledger, const std::filesystem::path& path) {
    std::filesystem::path temp = path;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail(Errc::io_failure, "cannot open '" + temp.string() + "' for writing");
        }
        out << serialize_snapshot(ledger);
        out.flush();
        if (!out) {
            fail(Errc::io_failure, "cannot write '" + temp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(temp, path, ec);
    if (ec) {
        fail(Errc::io_failure, "cannot rename '" + temp.string() + "' to '" + path.string() +
                                   "': " + ec.message());
    }
}

} // namespace bucketbook
