#pragma once

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <span>
#include <vector>

#include "vcsim/core/types.hpp"
#include "vcsim/store/errors.hpp"

namespace vcsim::store {

/// Content-addressed bytes keyed by 64-bit FNV-1a. Equal digests are
/// treated as equal content.
class BlobStore {
public:
    BlobDigest put(std::span<const std::uint8_t> bytes);
    /// Throws StoreError{NotFound}.
    std::vector<std::uint8_t> get(BlobDigest digest) const;
    bool contains(BlobDigest digest) const;
    std::size_t size() const;

private:
    mutable std::shared_mutex mu_;
    std::map<BlobDigest, std::vector<std::uint8_t>> blobs_;
};

} // namespace vcsim::store
