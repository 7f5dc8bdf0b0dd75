#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace nilbench {

// Partial transformation of {0..n-1} with sink theta. Printed 1-based, theta as '#'.
class PartialMap {
public:
  using Point = std::uint8_t;
  static constexpr Point kTheta = 0xFF;
  static constexpr std::size_t kMaxDegree = 254;

  PartialMap() = default;
  explicit PartialMap(std::size_t degree);  // all points to theta
  explicit PartialMap(std::vector<Point> images);

  static PartialMap identity(std::size_t degree);
  // 1-based images, 0 meaning theta.
  static PartialMap from_one_based(const std::vector<int>& images);

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  Point& operator[](std::size_t i) { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }
  const Point* data() const { return images_.data(); }

  bool is_zero() const;
  bool is_partial_injection() const;
  bool is_idempotent() const;
  std::size_t rank() const;
  // Inverse of a partial injection.
  PartialMap inverse() const;

  // Right action: (*this * rhs)(i) = rhs(this(i)).
  PartialMap operator*(const PartialMap& rhs) const;
  bool operator==(const PartialMap& rhs) const = default;
  bool operator<(const PartialMap& rhs) const { return images_ < rhs.images_; }

  std::string to_image_list() const;  // "[2,3,#,1]"

private:
  std::vector<Point> images_;
};

struct PartialMapHash {
  std::size_t operator()(const PartialMap& m) const {
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(m.data()), m.degree()));
  }
};

}  // namespace nilbench
