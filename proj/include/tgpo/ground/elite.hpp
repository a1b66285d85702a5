#pragma once

#include <cstddef>
#include <vector>

#include "tgpo/decomp/taskset.hpp"

namespace tgpo::ground {

// Bounded archive of the best-scoring time assignments seen so far, sorted by
// score descending (ties broken by assignment, ascending, for determinism).
// Duplicate assignments keep their maximum score.
class EliteBuffer {
 public:
  struct Entry {
    decomp::TimeAssignment assignment;
    double score = 0.0;
  };

  explicit EliteBuffer(std::size_t capacity = 512);

  void add(const decomp::TimeAssignment& assignment, double score);
  void add_batch(const std::vector<Entry>& episodes);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  // The n best assignments (fewer when the buffer is smaller).
  std::vector<decomp::TimeAssignment> top(std::size_t n) const;

 private:
  void sort_and_truncate();

  std::size_t capacity_;
  std::vector<Entry> entries_;
};

}  // namespace tgpo::ground
