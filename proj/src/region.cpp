#include "qgibbs/region.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qgibbs/errors.hpp"

namespace qgibbs {

bool site_less(const Site& a, const Site& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string site_to_string(const Site& s) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ")";
  return os.str();
}

Region::Region(std::vector<Site> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) return;
  nu_ = static_cast<int>(sites_[0].size());
  if (nu_ < 1) throw GeometryError("region sites must have dimension >= 1");
  for (const auto& s : sites_) {
    if (static_cast<int>(s.size()) != nu_)
      throw GeometryError("region sites have mixed dimensions");
  }
  std::sort(sites_.begin(), sites_.end(), site_less);
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end())
    throw GeometryError("region contains duplicate sites");
}

Region Region::box(const Site& lo, const Site& hi) {
  if (lo.size() != hi.size() || lo.empty())
    throw GeometryError("box bounds must have equal dimension >= 1");
  const int nu = static_cast<int>(lo.size());
  for (int d = 0; d < nu; ++d)
    if (lo[d] > hi[d]) throw GeometryError("box has lo > hi in some direction");
  std::vector<Site> sites;
  Site cur = lo;
  while (true) {
    sites.push_back(cur);
    int d = nu - 1;
    while (d >= 0) {
      if (++cur[d] <= hi[d]) break;
      cur[d] = lo[d];
      --d;
    }
    if (d < 0) break;
  }
  return Region(std::move(sites));
}

Region Region::interval(std::int32_t a, std::int32_t b) {
  return box(Site{a}, Site{b});
}

bool Region::contains(const Site& s) const {
  return std::binary_search(sites_.begin(), sites_.end(), s, site_less);
}

bool Region::contains(const Region& other) const {
  for (const auto& s : other.sites_)
    if (!contains(s)) return false;
  return true;
}

std::ptrdiff_t Region::index_of(const Site& s) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), s, site_less);
  if (it == sites_.end() || *it != s) return -1;
  return it - sites_.begin();
}

Region Region::translated(const Site& shift) const {
  if (!sites_.empty() && static_cast<int>(shift.size()) != nu_)
    throw GeometryError("translation vector dimension mismatch");
  std::vector<Site> out = sites_;
  for (auto& s : out)
    for (int d = 0; d < nu_; ++d) s[d] += shift[d];
  return Region(std::move(out));
}

Region Region::enlarged(int r) const {
  if (r < 0) throw GeometryError("collar width must be >= 0");
  if (r == 0 || sites_.empty()) return *this;
  std::set<Site> out(sites_.begin(), sites_.end());
  // odometer over the [-r, r]^nu offset cube
  Site off(nu_, -r);
  while (true) {
    for (const auto& s : sites_) {
      Site t = s;
      for (int d = 0; d < nu_; ++d) t[d] += off[d];
      out.insert(t);
    }
    int d = nu_ - 1;
    while (d >= 0) {
      if (++off[d] <= r) break;
      off[d] = -r;
      --d;
    }
    if (d < 0) break;
  }
  return Region(std::vector<Site>(out.begin(), out.end()));
}

Region Region::set_union(const Region& other) const {
  std::vector<Site> out = sites_;
  for (const auto& s : other.sites_)
    if (!contains(s)) out.push_back(s);
  return Region(std::move(out));
}

Region Region::set_minus(const Region& other) const {
  std::vector<Site> out;
  for (const auto& s : sites_)
    if (!other.contains(s)) out.push_back(s);
  return Region(std::move(out));
}

Region Region::set_intersect(const Region& other) const {
  std::vector<Site> out;
  for (const auto& s : sites_)
    if (other.contains(s)) out.push_back(s);
  return Region(std::move(out));
}

bool Region::intersects(const Region& other) const {
  const Region& small = volume() <= other.volume() ? *this : other;
  const Region& big = volume() <= other.volume() ? other : *this;
  for (const auto& s : small.sites())
    if (big.contains(s)) return true;
  return false;
}

void Region::bounding_box(Site& lo, Site& hi) const {
  if (sites_.empty()) throw GeometryError("bounding box of empty region");
  lo = sites_[0];
  hi = sites_[0];
  for (const auto& s : sites_)
    for (int d = 0; d < nu_; ++d) {
      lo[d] = std::min(lo[d], s[d]);
      hi[d] = std::max(hi[d], s[d]);
    }
}

bool Region::is_box() const {
  if (sites_.empty()) return false;
  Site lo, hi;
  bounding_box(lo, hi);
  std::size_t v = 1;
  for (int d = 0; d < nu_; ++d)
    v *= static_cast<std::size_t>(hi[d] - lo[d] + 1);
  return v == volume();
}

int Region::diameter() const {
  if (sites_.empty()) return 0;
  Site lo, hi;
  bounding_box(lo, hi);
  int diam = 0;
  for (int d = 0; d < nu_; ++d) diam = std::max(diam, hi[d] - lo[d]);
  return diam;
}

std::string Region::to_string() const {
  if (sites_.empty()) return "{}";
  Site lo, hi;
  bounding_box(lo, hi);
  std::ostringstream os;
  if (is_box()) {
    os << "box" << site_to_string(lo) << ".." << site_to_string(hi);
  } else {
    os << "{";
    for (std::size_t i = 0; i < sites_.size(); ++i)
      os << (i ? "," : "") << site_to_string(sites_[i]);
    os << "}";
  }
  os << " |" << volume() << " sites|";
  return os.str();
}

}  // namespace qgibbs
