#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace uavcache {

using ContentId = std::uint32_t;
using AnchorId = std::uint32_t;
using Seconds = double;

// Membership set over the dense content universe [0, N).
class ContentSet {
 public:
  ContentSet() = default;
  explicit ContentSet(std::size_t universe) : bits_(universe, false) {}
  ContentSet(std::size_t universe, std::span<const ContentId> members) : bits_(universe, false) {
    for (ContentId c : members) insert(c);
  }

  bool contains(ContentId c) const { return c < bits_.size() && bits_[c]; }
  void insert(ContentId c) {
    if (!bits_[c]) {
      bits_[c] = true;
      ++size_;
    }
  }
  void erase(ContentId c) {
    if (bits_[c]) {
      bits_[c] = false;
      --size_;
    }
  }
  void clear() {
    bits_.assign(bits_.size(), false);
    size_ = 0;
  }
  std::size_t size() const { return size_; }
  std::size_t universe() const { return bits_.size(); }
  bool empty() const { return size_ == 0; }

 private:
  std::vector<bool> bits_;
  std::size_t size_ = 0;
};

}  // namespace uavcache
