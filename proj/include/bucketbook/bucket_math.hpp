#pragma once

#include <cstdint>

#include "bucketbook/errors.hpp"

namespace bucketbook {

using Timestamp = std::uint64_t; // seconds since epoch 0
using Duration = std::uint64_t;  // seconds

/// Width of one expiration bucket: ceil(ttl / bucket_count).
inline Duration bucket_width(Duration ttl, std::uint64_t bucket_count) {
    if (ttl == 0) {
        fail(Errc::invalid_config, "ttl must be >= 1");
    }
    if (bucket_count == 0) {
        fail(Errc::invalid_config, "bucket count must be >= 1");
    }
    // (ttl + bucket_count - 1) / bucket_count without the intermediate overflow.
    return ttl / bucket_count + (ttl % bucket_count != 0 ? 1 : 0);
}

/// Expiration of a deposit made at deposit_time: t + ttl rounded up to the
/// next bucket boundary (a multiple of width). Never earlier than t + ttl,
/// never later than t + ttl + width - 1.
inline Timestamp bucketed_expiry(Timestamp deposit_time, Duration ttl, Duration width) {
    if (width == 0) {
        fail(Errc::invalid_config, "bucket width must be >= 1");
    }
    Timestamp exact = deposit_time + ttl;
    if (exact < deposit_time) {
        fail(Errc::overflow, "deposit time + ttl exceeds the timestamp range");
    }
    Timestamp boundary_index = exact / width + (exact % width != 0 ? 1 : 0);
    Timestamp expiry = boundary_index * width;
    if (boundary_index != 0 && expiry / boundary_index != width) {
        fail(Errc::overflow, "bucketed expiry exceeds the timestamp range");
    }
    return expiry;
}

/// Per-resource expiration parameters. Construction derives the bucket
/// width and rejects zero ttl or zero bucket count.
class ResourceConfig {
public:
    ResourceConfig(Duration ttl, std::uint64_t bucket_count)
        : ttl_(ttl), bucket_count_(bucket_count), bucket_width_(bucket_width(ttl, bucket_count)) {}

    Duration ttl() const { return ttl_; }
    std::uint64_t bucket_count() const { return bucket_count_; }
    Duration width() const { return bucket_width_; }

    /// Records may outlive t + ttl by at most this many seconds.
    Duration max_extra_lifetime() const { return bucket_width_ - 1; }

    Timestamp expiry_at(Timestamp deposit_time) const {
        return bucketed_expiry(deposit_time, ttl_, bucket_width_);
    }

    bool aligned(Timestamp t) const { return t % bucket_width_ == 0; }

    friend bool operator==(const ResourceConfig&, const ResourceConfig&) = default;

private:
    Duration ttl_;
    std::uint64_t bucket_count_;
    Duration bucket_width_;
};

} // namespace bucketbook
