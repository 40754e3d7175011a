#include "vcsim/store/blob_store.hpp"

#include <mutex>

#include "vcsim/core/digest.hpp"

namespace vcsim::store {

BlobDigest BlobStore::put(std::span<const std::uint8_t> bytes) {
    const BlobDigest digest{fnv1a64(bytes)};
    std::unique_lock lock(mu_);
    blobs_.try_emplace(digest, bytes.begin(), bytes.end());
    return digest;
}

std::vector<std::uint8_t> BlobStore::get(BlobDigest digest) const {
    std::shared_lock lock(mu_);
    auto it = blobs_.find(digest);
    if (it == blobs_.end()) {
        throw StoreError(StoreErrc::NotFound, "no blob " + digest.hex());
    }
    return it->second;
}

bool BlobStore::contains(BlobDigest digest) const {
    std::shared_lock lock(mu_);
    return blobs_.contains(digest);
}

std::size_t BlobStore::size() const {
    std::shared_lock lock(mu_);
    return blobs_.size();
}

} // namespace vcsim::store
