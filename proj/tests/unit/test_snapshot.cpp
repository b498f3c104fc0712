#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "bucketbook/snapshot.hpp"
#include "support/cli_runner.hpp"
#include "support/helpers.hpp"

using namespace bucketbook;
using testsupport::HasErrc;
using testsupport::TempDir;

namespace {

Ledger sample_ledger() {
    Ledger ledger;
    ledger.define_resource(ResourceId{"credits"}, 1000, 4);
    ledger.define_resource(ResourceId{"fuel"}, 600, 3);
    ledger.mint(AccountId{"alice"}, ResourceId{"credits"}, Amount{10});
    ledger.advance_clock(300);
    ledger.mint(AccountId{"alice"}, ResourceId{"credits"}, Amount{5});
    ledger.mint(AccountId{"bob"}, ResourceId{"fuel"}, Amount{2});
    return ledger;
}

bool observably_equal(const Ledger& a, const Ledger& b) {
    return a.clock() == b.clock() && a.resources() == b.resources() && a.books() == b.books();
}

} // namespace

TEST_CASE("snapshots round-trip the full ledger state") {
    Ledger original = sample_ledger();
    Ledger reloaded = parse_snapshot(serialize_snapshot(original));
    CHECK(observably_equal(original, reloaded));
}

TEST_CASE("an empty ledger round-trips") {
    Ledger reloaded = parse_snapshot(serialize_snapshot(Ledger{}));
    CHECK(reloaded.clock() == 0);
    CHECK(reloaded.resources().empty());
    CHECK(reloaded.books().empty());
}

TEST_CASE("serialization is a pure function of the ledger") {
    Ledger ledger = sample_ledger();
    CHECK(serialize_snapshot(ledger) == serialize_snapshot(ledger));
    // An independently built but observably identical ledger serializes to
    // the same bytes.
    CHECK(serialize_snapshot(ledger) == serialize_snapshot(sample_ledger()));
}

TEST_CASE("one book means exactly one books entry") {
    Ledger ledger;
    ledger.define_resource(ResourceId{"credits"}, 1000, 4);
    ledger.mint(AccountId{"alice"}, ResourceId{"credits"}, Amount{10});
    auto json = ledger_to_json(ledger);
    CHECK(json["books"].size() == 1);
    CHECK(json["resources"].size() == 1);
}

TEST_CASE("amounts beyond the binary64 window serialize as strings") {
    Ledger ledger;
    ledger.define_resource(ResourceId{"credits"}, 1000, 4);
    // 2^64: too big for either uint64 or double-safe JSON numbers.
    ledger.mint(AccountId{"alice"}, ResourceId{"credits"},
                Amount::parse("18446744073709551616"));
    std::string text = serialize_snapshot(ledger);
    CHECK(text.find("\"18446744073709551616\"") != std::string::npos);
    Ledger reloaded = parse_snapshot(text);
    CHECK(reloaded.balance_of(AccountId{"alice"}, ResourceId{"credits"}) ==
          Amount::parse("18446744073709551616"));
}

TEST_CASE("amounts inside the binary64 window stay plain numbers") {
    Ledger ledger;
    ledger.define_resource(ResourceId{"credits"}, 1000, 4);
    ledger.mint(AccountId{"alice"}, ResourceId{"credits"}, Amount{Amount::kMaxDoubleSafe});
    std::string text = serialize_snapshot(ledger);
    CHECK(text.find("\"amount\": 9007199254740991") != std::string::npos);
}

TEST_CASE("unsupported format versions are rejected as such") {
    auto json = ledger_to_json(Ledger{});
    json["formatVersion"] = 999;
    REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error, HasErrc(Errc::snapshot_version));
}

TEST_CASE("malformed json is a parse error") {
    REQUIRE_THROWS_MATCHES(parse_snapshot("{ not json"), Error, HasErrc(Errc::snapshot_parse));
    REQUIRE_THROWS_MATCHES(parse_snapshot("[1, 2, 3]"), Error, HasErrc(Errc::snapshot_parse));
    REQUIRE_THROWS_MATCHES(parse_snapshot(""), Error, HasErrc(Errc::snapshot_parse));
}

TEST_CASE("structurally invalid snapshots are rejected") {
    auto base = ledger_to_json(sample_ledger());

    SECTION("missing clock") {
        auto json = base;
        json.erase("clock");
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
    SECTION("negative clock") {
        auto json = base;
        json["clock"] = -5;
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
    SECTION("stored width contradicting ttl and bucket count") {
        auto json = base;
        json["resources"][0]["bucketWidth"] = 9999;
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
    SECTION("duplicate resource entries") {
        auto json = base;
        json["resources"].push_back(json["resources"][0]);
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
    SECTION("duplicate book entries") {
        auto json = base;
        json["books"].push_back(json["books"][0]);
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
    SECTION("book for an undefined resource") {
        auto json = base;
        json["books"][0]["resourceId"] = "mystery";
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
    SECTION("misaligned record expiry") {
        auto json = base;
        json["books"][0]["records"][0]["expiresAt"] = 1001;
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
    SECTION("zero-amount record") {
        auto json = base;
        json["books"][0]["records"][0]["amount"] = 0;
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
    SECTION("records out of order") {
        auto json = base;
        auto& records = json["books"][0]["records"];
        std::swap(records[0], records[1]);
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
    SECTION("empty records array") {
        auto json = base;
        json["books"][0]["records"] = nlohmann::json::array();
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
    SECTION("amount as a non-numeric string") {
        auto json = base;
        json["books"][0]["records"][0]["amount"] = "plenty";
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
    SECTION("more records than the bound allows") {
        auto json = base;
        auto& records = json["books"][0]["records"];
        records = nlohmann::json::array();
        for (int i = 1; i <= 6; ++i) { // bound for k=4 is 5
            records.push_back({{"amount", 1}, {"expiresAt", i * 250}});
        }
        REQUIRE_THROWS_MATCHES(parse_snapshot(json.dump()), Error,
                               HasErrc(Errc::snapshot_invalid));
    }
}

TEST_CASE("file i/o: save, load, overwrite, and the missing-file case") {
    TempDir dir;
    std::string path = dir.file("state.json");
    Ledger ledger = sample_ledger();

    save_snapshot(ledger, path);
    CHECK(observably_equal(load_snapshot(path), ledger));
    // No temp file lingers after a successful save.
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));

    // Saving again over the same path replaces the content atomically.
    ledger.advance_clock(500);
    save_snapshot(ledger, path);
    CHECK(load_snapshot(path).clock() == 500);

    REQUIRE_THROWS_MATCHES(load_snapshot(dir.file("absent.json")), Error,
                           HasErrc(Errc::io_failure));
}

TEST_CASE("saved bytes are identical across repeated saves") {
    TempDir dir;
    Ledger ledger = sample_ledger();
    save_snapshot(ledger, dir.file("a.json"));
    save_snapshot(ledger, dir.file("b.json"));
    CHECK(testsupport::read_file(dir.file("a.json")) ==
          testsupport::read_file(dir.file("b.json")));
}
