#pragma once

#include <cstddef>
#include <new>
#include <vector>

namespace litespark {

/// Allocator returning storage aligned to `Align` bytes. SIMD kernels load
/// full vectors from weight and activation buffers, so every buffer that
/// feeds a kernel is allocated through this.
template <class T, std::size_t Align = 64>
struct AlignedAllocator {
  using value_type = T;

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Align>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t{Align}));
  }
  void deallocate(T* p, std::size_t n) noexcept {
    ::operator delete(p, n * sizeof(T), std::align_val_t{Align});
  }

  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Align>;
  };

  friend bool operator==(const AlignedAllocator&, const AlignedAllocator&) { return true; }
  friend bool operator!=(const AlignedAllocator&, const AlignedAllocator&) { return false; }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

/// Smallest multiple of `multiple` that is >= n.
constexpr int round_up(int n, int multiple) {
  return ((n + multiple - 1) / multiple) * multiple;
}

}  // namespace litespark
