#pragma once

// Shared helpers for the Catch2 suites: a matcher for typed errors and
// terse builders for record books.

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "bucketbook/oracle/naive_book.hpp"
#include "bucketbook/record_book.hpp"

namespace bucketbook::testsupport {

class HasErrc : public Catch::Matchers::MatcherGenericBase {
public:
    explicit HasErrc(Errc expected) : expected_(expected) {}

    bool match(const Error& e) const { return e.code() == expected_; }

    std::string describe() const override {
        return std::string("raises ") + errc_name(expected_);
    }

private:
    Errc expected_;
};

inline std::vector<BalanceRecord> recs(
    std::initializer_list<std::pair<std::uint64_t, Timestamp>> pairs) {
    std::vector<BalanceRecord> out;
    out.reserve(pairs.size());
    for (const auto& [amount, expiry] : pairs) {
        out.push_back({Amount{amount}, expiry});
    }
    return out;
}

inline RecordBook make_book(std::initializer_list<std::pair<std::uint64_t, Timestamp>> pairs) {
    return RecordBook::from_records(recs(pairs));
}

inline oracle::NaiveBucketedBook make_naive(
    std::initializer_list<std::pair<std::uint64_t, Timestamp>> pairs) {
    return oracle::NaiveBucketedBook::from_records(recs(pairs));
}

} // namespace bucketbook::testsupport
