#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <memory>
#include <stdexcept>

namespace bidcg {

// Append-friendly array whose elements never move once created. Chunks are
// allocated on first touch with a CAS, so concurrent readers and writers of
// distinct (or identical, atomic) elements need no lock.
template <typename T, std::size_t ChunkBits = 12, std::size_t MaxChunks = (1u << 16)>
class ChunkedArray {
 public:
  static constexpr std::size_t kChunkSize = std::size_t{1} << ChunkBits;
  static constexpr std::size_t kCapacity = kChunkSize * MaxChunks;

  ChunkedArray() {
    for (auto& c : chunks_) c.store(nullptr, std::memory_order_relaxed);
  }
  ChunkedArray(const ChunkedArray&) = delete;
  ChunkedArray& operator=(const ChunkedArray&) = delete;

  ~ChunkedArray() {
    for (auto& c : chunks_) delete[] c.load(std::memory_order_relaxed);
  }

  T& at(std::size_t i) {
    return chunk(i >> ChunkBits)[i & (kChunkSize - 1)];
  }

  const T& at(std::size_t i) const {
    return const_cast<ChunkedArray*>(this)->at(i);
  }

 private:
  T* chunk(std::size_t c) {
    if (c >= MaxChunks) throw std::length_error("ChunkedArray capacity exceeded");
    T* p = chunks_[c].load(std::memory_order_acquire);
    if (p != nullptr) return p;
    auto fresh = std::make_unique<T[]>(kChunkSize);
    if (chunks_[c].compare_exchange_strong(p, fresh.get(), std::memory_order_acq_rel)) {
      return fresh.release();
    }
    return p;
  }

  std::array<std::atomic<T*>, MaxChunks> chunks_;
};

}  // namespace bidcg
