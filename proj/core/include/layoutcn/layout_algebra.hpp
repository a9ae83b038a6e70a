#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "layoutcn/errors.hpp"

namespace layoutcn {

using Coeff = std::int64_t;
using Vec = std::vector<Coeff>;

/// A primitive integer hyperplane coefficient vector. All array elements d
/// with equal v·d lie on one hyperplane of the family described by v.
///
/// Invariants: at least one nonzero coefficient, gcd of the coefficients
/// is 1, and the first nonzero coefficient is positive. Construction goes
/// through canonicalize(); the raw constructor validates.
class HyperplaneVector {
public:
  explicit HyperplaneVector(Vec coefficients);

  const Vec& coefficients() const { return coeffs_; }
  std::size_t dims() const { return coeffs_.size(); }
  Coeff operator[](std::size_t i) const { return coeffs_[i]; }

  Coeff dot(std::span<const Coeff> point) const;

  friend bool operator==(const HyperplaneVector&, const HyperplaneVector&) = default;
  friend auto operator<=>(const HyperplaneVector& a, const HyperplaneVector& b) {
    return a.coeffs_ <=> b.coeffs_;
  }

private:
  Vec coeffs_;
};

/// Reduce v to the canonical representative of its hyperplane family:
/// divide by the gcd and flip the sign so the first nonzero entry is
/// positive. Idempotent; canonicalize(c*v) == canonicalize(v) for any
/// nonzero integer c.
HyperplaneVector canonicalize(const Vec& v);

/// Ordered set of k-1 hyperplane vectors describing the memory layout of a
/// k-dimensional array. The first row is the slowest-varying storage
/// direction. A 1-D array has an empty matrix.
class LayoutMatrix {
public:
  /// Constructs the layout for a k-dimensional array. Throws
  /// DimensionError unless exactly k-1 rows of dimensionality k are given
  /// and the rows are linearly independent over the rationals.
  LayoutMatrix(std::size_t dims, std::vector<HyperplaneVector> rows);

  /// Row-major layout for a k-dimensional array: rows e_1 .. e_{k-1}.
  static LayoutMatrix row_major(std::size_t dims);

  std::size_t dims() const { return dims_; }
  const std::vector<HyperplaneVector>& rows() const { return rows_; }

  friend bool operator==(const LayoutMatrix&, const LayoutMatrix&) = default;
  friend auto operator<=>(const LayoutMatrix& a, const LayoutMatrix& b) {
    if (auto c = a.dims_ <=> b.dims_; c != 0) return c;
    return a.rows_ <=> b.rows_;
  }

private:
  std::size_t dims_;
  std::vector<HyperplaneVector> rows_;
};

/// True iff d1 and d2 lie on the same hyperplane for every row of Y, i.e.
/// y·d1 == y·d2 for each hyperplane vector y. An equivalence relation on
/// index points for fixed Y.
bool same_hyperplane(const LayoutMatrix& Y, std::span<const Coeff> d1,
                     std::span<const Coeff> d2);

/// A full integer address function realizing a LayoutMatrix. The first
/// k-1 rows of `transform` are the layout rows; the appended row makes the
/// matrix unimodular, so the map is injective. Addresses are row-major
/// positions inside the transformed bounding box, scaled by element size.
struct LinearizationMap {
  std::vector<Vec> transform;  // k x k, |det| == 1
  Vec origin_offset;           // minimum transformed coordinates
  Vec extents;                 // transformed bounding-box sizes
  Coeff element_size = 4;

  std::size_t dims() const { return transform.size(); }

  /// Byte offset of an index point within the array's storage.
  Coeff address(std::span<const Coeff> point) const;

  /// Total bytes spanned by the transformed bounding box.
  Coeff footprint_bytes() const;
};

/// Extend Y to a unimodular k x k matrix and fix the bounding box of the
/// index box [0, extents). The completion row is found by extended-gcd
/// over the cofactors, preferring the smallest-index unit column, so
/// addresses are reproducible across runs. Hyperplanes are ordered by
/// ascending transformed coordinate.
///
/// Throws InvariantError if the rows span no unimodular-completable
/// lattice (never the case for derived layouts or k <= 2).
LinearizationMap complete_linearization(const LayoutMatrix& Y,
                                        const Vec& extents,
                                        Coeff element_size);

/// Basis of the integer solution lattice { y : D y = 0 } where the rows of
/// `deltas` are the constraint vectors. The returned basis spans the full
/// (saturated) solution lattice. Deterministic.
std::vector<Vec> integer_kernel_basis(const std::vector<Vec>& deltas,
                                      std::size_t dims);

/// Determinant of a square integer matrix (fraction-free elimination).
Coeff determinant(const std::vector<Vec>& m);

/// Rank over the rationals.
std::size_t rank(std::vector<Vec> m);

std::string to_string(const HyperplaneVector& v);
std::string to_string(const LayoutMatrix& m);

} // namespace layoutcn
