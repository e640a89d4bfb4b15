#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "qgibbs/errors.hpp"
#include "qgibbs/kernels.hpp"
#include "qgibbs/region.hpp"

// Mixed-radix index arithmetic for interleaved tensor factors, shared by the
// embed/partial-trace operations and the Gibbs engine. Everything here is
// layout math over column-major dense matrices.
namespace qgibbs {

class SiteIndexer {
 public:
  SiteIndexer(std::size_t n_sites, int site_dim)
      : n_sites_(n_sites), site_dim_(site_dim) {
    weights_.resize(n_sites);
    std::size_t w = 1;
    for (std::size_t k = n_sites; k-- > 0;) {
      weights_[k] = w;
      w *= static_cast<std::size_t>(site_dim);
    }
    dim_ = w;
  }

  std::size_t dim() const { return dim_; }
  std::size_t n_sites() const { return n_sites_; }
  int site_dim() const { return site_dim_; }
  /// Weight of the digit at site position `pos` (msd-first).
  std::size_t weight(std::size_t pos) const { return weights_[pos]; }

  /// Ambient-index offsets of all basis states of the sub-factor at the
  /// given (ascending) site positions. Table size site_dim^|positions|.
  std::vector<std::size_t> subspace_offsets(const std::vector<std::size_t>& positions) const {
    std::size_t sub_dim = 1;
    for (std::size_t k = 0; k < positions.size(); ++k) sub_dim *= site_dim_;
    std::vector<std::size_t> offs(sub_dim, 0);
    std::size_t rep = 1;  // run length of a fixed digit value, msd-first fill
    for (std::size_t k = positions.size(); k-- > 0;) {
      const std::size_t w = weights_[positions[k]];
      for (std::size_t i = 0; i < sub_dim; ++i)
        offs[i] += ((i / rep) % site_dim_) * w;
      rep *= site_dim_;
    }
    return offs;
  }

  /// Splits a sub-factor into (outer offsets, contiguous run length): the
  /// maximal suffix of `positions` that sits at the trailing ambient sites
  /// contributes offsets 0..run-1 with unit step, so inner loops over it are
  /// unit-stride in the combined row+column address.
  void split_offsets(const std::vector<std::size_t>& positions,
                     std::vector<std::size_t>& outer_offs, std::size_t& run) const {
    std::size_t t = 0;
    while (t < positions.size() &&
           positions[positions.size() - 1 - t] == n_sites_ - 1 - t)
      ++t;
    run = 1;
    for (std::size_t k = 0; k < t; ++k) run *= site_dim_;
    outer_offs = subspace_offsets(
        std::vector<std::size_t>(positions.begin(), positions.end() - t));
  }

 private:
  std::size_t n_sites_;
  int site_dim_;
  std::size_t dim_ = 1;
  std::vector<std::size_t> weights_;
};

/// Positions (ascending) of `sub`'s sites inside `ambient`; throws
/// ContainmentError if any site is missing.
std::vector<std::size_t> site_positions(const Region& sub, const Region& ambient,
                                        const std::string& what);

namespace detail {

/// target += term embedded at the given ambient positions (identity on the
/// rest). target is dim x dim column-major over the ambient space.
/// `positions[k]` is the ambient position of the term's k-th tensor factor;
/// the list may be unsorted (periodic wraps permute factor order).
template <typename Scalar>
void add_embedded(const Scalar* term, std::size_t term_dim,
                  const std::vector<std::size_t>& positions,
                  const SiteIndexer& ambient, Scalar* target) {
  const std::size_t ld = ambient.dim();
  const auto sup_offs = ambient.subspace_offsets(positions);
  std::vector<std::size_t> sorted_positions = positions;
  std::sort(sorted_positions.begin(), sorted_positions.end());
  std::vector<std::size_t> env_positions;
  for (std::size_t p = 0, k = 0; p < ambient.n_sites(); ++p) {
    if (k < sorted_positions.size() && sorted_positions[k] == p) {
      ++k;
    } else {
      env_positions.push_back(p);
    }
  }
  std::vector<std::size_t> outer;
  std::size_t run = 0;
  ambient.split_offsets(env_positions, outer, run);
  const std::size_t diag_step = 1 + ld;
  for (std::size_t j = 0; j < term_dim; ++j) {
    for (std::size_t i = 0; i < term_dim; ++i) {
      const Scalar a = term[i + j * term_dim];
      if (a == Scalar(0)) continue;
      Scalar* base = target + sup_offs[i] + sup_offs[j] * ld;
      for (const std::size_t e : outer)
        kernels::add_const_stride(a, base + e * diag_step, diag_step, run);
    }
  }
}

/// out (keep_dim x keep_dim, column-major) = partial trace of src over the
/// sites not in `keep_positions`.
template <typename Scalar>
void partial_trace_into(const Scalar* src, const SiteIndexer& full,
                        const std::vector<std::size_t>& keep_positions,
                        Scalar* out) {
  const std::size_t ld = full.dim();
  const auto keep_offs = full.subspace_offsets(keep_positions);
  std::vector<std::size_t> traced_positions;
  for (std::size_t p = 0, k = 0; p < full.n_sites(); ++p) {
    if (k < keep_positions.size() && keep_positions[k] == p) {
      ++k;
    } else {
      traced_positions.push_back(p);
    }
  }
  std::vector<std::size_t> outer;
  std::size_t run = 0;
  full.split_offsets(traced_positions, outer, run);
  const std::size_t keep_dim = keep_offs.size();
  const std::size_t diag_step = 1 + ld;
  for (std::size_t jc = 0; jc < keep_dim; ++jc) {
    for (std::size_t ir = 0; ir < keep_dim; ++ir) {
      const Scalar* base = src + keep_offs[ir] + keep_offs[jc] * ld;
      Scalar s = Scalar(0);
      for (const std::size_t e : outer)
        s += kernels::sum_stride(base + e * diag_step, diag_step, run);
      out[ir + jc * keep_dim] = s;
    }
  }
}

}  // namespace detail
}  // namespace qgibbs
