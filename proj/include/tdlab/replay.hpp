#pragma once

#include <cstddef>

#include "tdlab/core_types.hpp"
#include "tdlab/rng.hpp"

namespace tdlab {

/// Fixed-capacity ring of transitions with uniform with-replacement
/// sampling, gated on a minimum fill.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, std::size_t min_size);

  void push(const Transition& transition);
  std::size_t size() const { return count_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t min_size() const { return min_size_; }
  bool ready(std::size_t batch_size) const {
    return count_ >= min_size_ && count_ >= batch_size;
  }
  /// Throws BufferNotReady until `ready(batch_size)`; callers normally skip
  /// the update instead.
  Batch sample(std::size_t batch_size, SplitMix64& rng) const;

  const Transition& stored(std::size_t i) const { return storage_[i]; }

 private:
  std::size_t capacity_;
  std::size_t min_size_;
  std::vector<Transition> storage_;
  std::size_t write_cursor_ = 0;
  std::size_t count_ = 0;
};

struct BufferNotReady : std::runtime_error {
  BufferNotReady() : std::runtime_error("replay buffer below minimum fill") {}
};

}  // namespace tdlab
