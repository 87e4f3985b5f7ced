#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace volsal {

// Axis order is (t, x, y): time/depth samples, crosslines, inlines.
enum class Axis { t = 0, x = 1, y = 2 };

struct Dims3 {
  std::size_t t = 0;
  std::size_t x = 0;
  std::size_t y = 0;

  constexpr std::size_t count() const noexcept { return t * x * y; }
  constexpr std::size_t operator[](Axis a) const noexcept {
    return a == Axis::t ? t : (a == Axis::x ? x : y);
  }
  friend constexpr bool operator==(const Dims3&, const Dims3&) = default;
};

// Dense 3-D grid stored t-fastest: index = t + T*x + T*X*y.
template <typename T>
class Grid3 {
 public:
  using value_type = T;

  Grid3() = default;
  explicit Grid3(Dims3 dims, T fill = T{})
      : dims_(dims), data_(dims.count(), fill) {}
  Grid3(Dims3 dims, std::vector<T> data) : dims_(dims), data_(std::move(data)) {}

  const Dims3& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::size_t index(std::size_t t, std::size_t x, std::size_t y) const noexcept {
    return t + dims_.t * (x + dims_.x * y);
  }
  T& operator()(std::size_t t, std::size_t x, std::size_t y) noexcept {
    return data_[index(t, x, y)];
  }
  const T& operator()(std::size_t t, std::size_t x, std::size_t y) const noexcept {
    return data_[index(t, x, y)];
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }
  std::vector<T>& storage() noexcept { return data_; }
  const std::vector<T>& storage() const noexcept { return data_; }

  friend bool operator==(const Grid3&, const Grid3&) = default;

 private:
  Dims3 dims_{};
  std::vector<T> data_;
};

// A T x X x Y scalar field of 32-bit samples.
using Volume3 = Grid3<float>;

// Real-valued grids used for energies and saliency maps.
using RealGrid = Grid3<double>;

}  // namespace volsal
