#include "tdlab/replay.hpp"

#include <stdexcept>

namespace tdlab {

ReplayBuffer::ReplayBuffer(std::size_t capacity, std::size_t min_size)
    : capacity_(capacity), min_size_(min_size) {
  if (capacity == 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
  if (min_size == 0 || min_size > capacity) {
    throw std::invalid_argument("ReplayBuffer: min_size must be in [1, capacity]");
  }
  storage_.reserve(capacity);
}

void ReplayBuffer::push(const Transition& transition) {
  if (storage_.size() < capacity_) {
    storage_.push_back(transition);
  } else {
    storage_[write_cursor_] = transition;
  }
  write_cursor_ = (write_cursor_ + 1) % capacity_;
  if (count_ < capacity_) count_ += 1;
}

Batch ReplayBuffer::sample(std::size_t batch_size, SplitMix64& rng) const {
  if (!ready(batch_size)) throw BufferNotReady();
  Batch batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) {
    batch.push_back(storage_[rng.uniform_below(count_)]);
  }
  return batch;
}

}  // namespace tdlab
