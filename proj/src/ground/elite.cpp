#include "tgpo/ground/elite.hpp"

#include <algorithm>
#include <stdexcept>

namespace tgpo::ground {

EliteBuffer::EliteBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("EliteBuffer: capacity must be positive");
}

void EliteBuffer::add(const decomp::TimeAssignment& assignment, double score) {
  add_batch({Entry{assignment, score}});
}

void EliteBuffer::add_batch(const std::vector<Entry>& episodes) {
  if (episodes.empty()) return;
  for (const auto& e : episodes) {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const Entry& x) { return x.assignment == e.assignment; });
    if (it != entries_.end())
      it->score = std::max(it->score, e.score);
    else
      entries_.push_back(e);
  }
  sort_and_truncate();
}

std::vector<decomp::TimeAssignment> EliteBuffer::top(std::size_t n) const {
  std::vector<decomp::TimeAssignment> out;
  const std::size_t take = std::min(n, entries_.size());
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(entries_[i].assignment);
  return out;
}

void EliteBuffer::sort_and_truncate() {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.assignment < b.assignment;
  });
  if (entries_.size() > capacity_) entries_.resize(capacity_);
}

}  // namespace tgpo::ground
