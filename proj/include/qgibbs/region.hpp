#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qgibbs {

/// Lattice site: integer coordinates in Z^nu.
using Site = std::vector<std::int32_t>;

/// Canonical site order used everywhere (Kronecker factor order, marginal
/// labelling): lexicographic on coordinates.
bool site_less(const Site& a, const Site& b);

std::string site_to_string(const Site& s);

/// A finite set of lattice sites, stored sorted in canonical order.
class Region {
 public:
  Region() = default;
  /// From an arbitrary list of sites; sorts and rejects duplicates /
  /// mixed dimensions.
  explicit Region(std::vector<Site> sites);

  /// [lo_1,hi_1] x ... x [lo_nu,hi_nu], bounds inclusive.
  static Region box(const Site& lo, const Site& hi);
  /// 1D convenience: sites a..b inclusive.
  static Region interval(std::int32_t a, std::int32_t b);

  std::size_t volume() const { return sites_.size(); }
  int dimension() const { return nu_; }
  bool empty() const { return sites_.empty(); }
  const std::vector<Site>& sites() const { return sites_; }

  bool contains(const Site& s) const;
  bool contains(const Region& other) const;
  /// Position of a site in canonical order; -1 if absent.
  std::ptrdiff_t index_of(const Site& s) const;

  Region translated(const Site& shift) const;
  /// All sites within L-infinity distance r of this region (r >= 0).
  Region enlarged(int r) const;
  Region set_union(const Region& other) const;
  Region set_minus(const Region& other) const;
  Region set_intersect(const Region& other) const;
  bool intersects(const Region& other) const;

  /// Smallest box [lo,hi] covering the region.
  void bounding_box(Site& lo, Site& hi) const;
  /// True if the region is exactly a full box.
  bool is_box() const;
  /// Max coordinate-wise extent (L-infinity diameter); 0 for single sites.
  int diameter() const;

  bool operator==(const Region& other) const { return sites_ == other.sites_; }

  std::string to_string() const;

 private:
  int nu_ = 0;
  std::vector<Site> sites_;
};

}  // namespace qgibbs
