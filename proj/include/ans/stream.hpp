#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ans/alphabet.hpp"

namespace ans {

/// Lazy, resumable producer. Each call to next() yields the following item,
/// or nullopt once a finite stream is exhausted (and forever after).
/// Streams are single-owner cursors; copies are not provided.
template <typename T>
class Stream {
 public:
  using Source = std::function<std::optional<T>()>;

  explicit Stream(Source source) : source_(std::move(source)) {}
  Stream(Stream&&) noexcept = default;
  Stream& operator=(Stream&&) noexcept = default;
  Stream(const Stream&) = delete;
  Stream& operator=(const Stream&) = delete;

  std::optional<T> next() {
    if (done_) return std::nullopt;
    auto item = source_();
    if (!item) done_ = true;
    return item;
  }

  /// Up to n further items; fewer only if the stream ends.
  std::vector<T> take(std::size_t n) {
    std::vector<T> out;
    out.reserve(n);
    while (out.size() < n) {
      auto item = next();
      if (!item) break;
      out.push_back(std::move(*item));
    }
    return out;
  }

  bool exhausted() const { return done_; }

 private:
  Source source_;
  bool done_ = false;
};

using SymbolStream = Stream<Symbol>;
using WordStream = Stream<Word>;

/// Stream over the items of a vector (useful for feeding stored prefixes
/// into stream-based analyses).
template <typename T>
Stream<T> stream_of(std::vector<T> items) {
  return Stream<T>([items = std::move(items), i = std::size_t{0}]() mutable -> std::optional<T> {
    if (i >= items.size()) return std::nullopt;
    return items[i++];
  });
}

}  // namespace ans
