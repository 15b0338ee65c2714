#pragma once

#include <cstdint>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace grig {

/// Hash-consing table: equal values get the same dense 32-bit handle.
/// Safe for concurrent intern/at calls.
template <class T, class Hash = std::hash<T>>
class Interner {
 public:
  std::uint32_t intern(T value) {
    {
      std::shared_lock lock(mutex_);
      auto it = index_.find(value);
      if (it != index_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (items_.size() >= std::numeric_limits<std::uint32_t>::max()) {
      throw std::length_error("Interner: handle space exhausted");
    }
    auto [it, inserted] = index_.try_emplace(std::move(value), static_cast<std::uint32_t>(items_.size()));
    if (inserted) items_.push_back(&it->first);
    return it->second;
  }

  /// References stay valid for the lifetime of the table.
  const T& at(std::uint32_t id) const {
    std::shared_lock lock(mutex_);
    return *items_[id];
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return items_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<T, std::uint32_t, Hash> index_;
  std::vector<const T*> items_;
};

}  // namespace grig
