#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grig {

/// A computation outgrew its memory budget. `achieved` is the largest scale
/// (radius, level, ...) completed before giving up.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  std::size_t achieved() const { return achieved_; }

 private:
  std::size_t achieved_;
};

}  // namespace grig
