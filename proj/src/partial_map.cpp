#include "nilbench/partial_map.hpp"

#include "nilbench/errors.hpp"
#include "nilbench/kernels.hpp"

namespace nilbench {

PartialMap::PartialMap(std::size_t degree) : images_(degree, kTheta) {
  if (degree > kMaxDegree) throw BadParameter("degree exceeds " + std::to_string(kMaxDegree));
}

PartialMap::PartialMap(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.size() > kMaxDegree) throw BadParameter("degree exceeds " + std::to_string(kMaxDegree));
  for (Point p : images_) {
    if (p != kTheta && p >= images_.size()) throw BadParameter("image out of range");
  }
}

PartialMap PartialMap::identity(std::size_t degree) {
  PartialMap m(degree);
  for (std::size_t i = 0; i < degree; ++i) m.images_[i] = Point(i);
  return m;
}

PartialMap PartialMap::from_one_based(const std::vector<int>& images) {
  std::vector<Point> v(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] < 0 || std::size_t(images[i]) > images.size()) throw BadParameter("image out of range");
    v[i] = images[i] == 0 ? kTheta : Point(images[i] - 1);
  }
  return PartialMap(std::move(v));
}

bool PartialMap::is_zero() const {
  for (Point p : images_)
    if (p != kTheta) return false;
  return true;
}

bool PartialMap::is_partial_injection() const {
  std::vector<bool> hit(images_.size(), false);
  for (Point p : images_) {
    if (p == kTheta) continue;
    if (hit[p]) return false;
    hit[p] = true;
  }
  return true;
}

bool PartialMap::is_idempotent() const { return *this * *this == *this; }

std::size_t PartialMap::rank() const {
  std::vector<bool> hit(images_.size(), false);
  std::size_t r = 0;
  for (Point p : images_) {
    if (p != kTheta && !hit[p]) {
      hit[p] = true;
      ++r;
    }
  }
  return r;
}

PartialMap PartialMap::inverse() const {
  if (!is_partial_injection()) throw BadParameter("inverse of a non-injective map");
  PartialMap inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != kTheta) inv.images_[images_[i]] = Point(i);
  return inv;
}

PartialMap PartialMap::operator*(const PartialMap& rhs) const {
  if (rhs.degree() != degree()) throw DegreeMismatch("composition of maps with different degrees");
  PartialMap out(degree());
  kernels::compose(images_.data(), rhs.images_.data(), out.images_.data(), degree());
  return out;
}

std::string PartialMap::to_image_list() const {
  std::string s = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) s += ',';
    s += images_[i] == kTheta ? std::string("#") : std::to_string(int(images_[i]) + 1);
  }
  return s + "]";
}

}  // namespace nilbench
