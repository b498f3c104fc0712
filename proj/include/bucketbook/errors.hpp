#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bucketbook {

// Fault categories. Domain outcomes that are part of normal control flow
// (e.g. insufficient balance) are statuses, not errors; see OpStatus.
enum class Errc {
    invalid_config,
    overflow,
    zero_amount,
    invalid_amount,
    misaligned_expiry,
    expiry_not_future,
    self_transfer,
    invalid_id,
    unknown_resource,
    duplicate_resource,
    time_regression,
    invalid_state,
    snapshot_parse,
    snapshot_version,
    snapshot_invalid,
    io_failure,
};

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::invalid_config: return "invalid-config";
        case Errc::overflow: return "overflow";
        case Errc::zero_amount: return "zero-amount";
        case Errc::invalid_amount: return "invalid-amount";
        case Errc::misaligned_expiry: return "misaligned-expiry";
        case Errc::expiry_not_future: return "expiry-not-future";
        case Errc::self_transfer: return "self-transfer";
        case Errc::invalid_id: return "invalid-id";
        case Errc::unknown_resource: return "unknown-resource";
        case Errc::duplicate_resource: return "duplicate-resource";
        case Errc::time_regression: return "time-regression";
        case Errc::invalid_state: return "invalid-state";
        case Errc::snapshot_parse: return "snapshot-parse";
        case Errc::snapshot_version: return "unsupported-snapshot-version";
        case Errc::snapshot_invalid: return "corrupt-snapshot";
        case Errc::io_failure: return "io-failure";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace bucketbook
