#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "erw/error.hpp"

namespace erw {

/// Step sequence eta_1..eta_n stored one bit per step (+1 -> 1, -1 -> 0).
class PackedHistory {
 public:
  PackedHistory() = default;

  void reserve(std::size_t steps) { words_.reserve((steps + 63) / 64); }

  void push(int step) {
    if (step != 1 && step != -1) {
      throw DomainError("step must be +1 or -1");
    }
    if (size_ % 64 == 0) {
      words_.push_back(0);
    }
    if (step == 1) {
      words_.back() |= std::uint64_t{1} << (size_ % 64);
      ++ups_;
    }
    ++size_;
  }

  /// Step at zero-based index k.
  int operator[](std::size_t k) const {
    return ((words_[k / 64] >> (k % 64)) & 1u) ? 1 : -1;
  }

  int at(std::size_t k) const {
    if (k >= size_) {
      throw DomainError("history index out of range");
    }
    return (*this)[k];
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::size_t ups() const noexcept { return ups_; }

  /// Partial sum of all stored steps.
  std::int64_t sum() const noexcept {
    return 2 * static_cast<std::int64_t>(ups_) - static_cast<std::int64_t>(size_);
  }

  std::size_t bytes() const noexcept { return words_.size() * sizeof(std::uint64_t); }

  friend bool operator==(const PackedHistory&, const PackedHistory&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
  std::size_t ups_ = 0;
};

}  // namespace erw
