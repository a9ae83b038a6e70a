#include "layoutcn/layout_algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace layoutcn {

namespace {

Coeff gcd(Coeff a, Coeff b) { return std::gcd(a, b); }

// g = s*a + t*b with g = gcd(|a|, |b|) >= 0.
struct ExtGcd {
  Coeff g, s, t;
};

ExtGcd ext_gcd(Coeff a, Coeff b) {
  if (b == 0) {
    if (a < 0) return {-a, -1, 0};
    return {a, 1, 0};
  }
  ExtGcd r = ext_gcd(b, a % b);
  return {r.g, r.t, r.s - (a / b) * r.t};
}

void check_dims(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    std::ostringstream os;
    os << what << ": expected dimensionality " << expected << ", got " << got;
    throw DimensionError(os.str());
  }
}

} // namespace

HyperplaneVector::HyperplaneVector(Vec coefficients) : coeffs_(std::move(coefficients)) {
  Coeff g = 0;
  Coeff first_nonzero = 0;
  for (Coeff c : coeffs_) {
    g = gcd(g, std::abs(c));
    if (first_nonzero == 0) first_nonzero = c;
  }
  if (first_nonzero == 0) throw ZeroVectorError("hyperplane vector is all zero");
  if (g != 1)
    throw InvariantError("hyperplane vector " + to_string(*this) + " is not primitive");
  if (first_nonzero < 0)
    throw InvariantError("hyperplane vector " + to_string(*this) +
                         " has a negative leading coefficient");
}

Coeff HyperplaneVector::dot(std::span<const Coeff> point) const {
  check_dims(coeffs_.size(), point.size(), "dot");
  Coeff acc = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) acc += coeffs_[i] * point[i];
  return acc;
}

HyperplaneVector canonicalize(const Vec& v) {
  Coeff g = 0;
  Coeff first_nonzero = 0;
  for (Coeff c : v) {
    g = gcd(g, std::abs(c));
    if (first_nonzero == 0) first_nonzero = c;
  }
  if (first_nonzero == 0) throw ZeroVectorError("cannot canonicalize an all-zero vector");
  Coeff scale = first_nonzero < 0 ? -g : g;
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / scale;
  return HyperplaneVector(std::move(out));
}

LayoutMatrix::LayoutMatrix(std::size_t dims, std::vector<HyperplaneVector> rows)
    : dims_(dims), rows_(std::move(rows)) {
  if (dims_ == 0) throw DimensionError("array dimensionality must be at least 1");
  if (rows_.size() + 1 != dims_) {
    std::ostringstream os;
    os << "layout for a " << dims_ << "-D array needs " << dims_ - 1 << " rows, got "
       << rows_.size();
    throw DimensionError(os.str());
  }
  std::vector<Vec> m;
  for (const auto& r : rows_) {
    check_dims(dims_, r.dims(), "layout row");
    m.push_back(r.coefficients());
  }
  if (rank(m) != rows_.size())
    throw InvariantError("layout rows are linearly dependent: " + to_string(*this));
}

LayoutMatrix LayoutMatrix::row_major(std::size_t dims) {
  std::vector<HyperplaneVector> rows;
  for (std::size_t i = 0; i + 1 < dims; ++i) {
    Vec e(dims, 0);
    e[i] = 1;
    rows.emplace_back(std::move(e));
  }
  return LayoutMatrix(dims, std::move(rows));
}

bool same_hyperplane(const LayoutMatrix& Y, std::span<const Coeff> d1,
                     std::span<const Coeff> d2) {
  check_dims(Y.dims(), d1.size(), "same_hyperplane d1");
  check_dims(Y.dims(), d2.size(), "same_hyperplane d2");
  for (const auto& row : Y.rows())
    if (row.dot(d1) != row.dot(d2)) return false;
  return true;
}

Coeff LinearizationMap::address(std::span<const Coeff> point) const {
  check_dims(dims(), point.size(), "address");
  Coeff pos = 0;
  for (std::size_t r = 0; r < transform.size(); ++r) {
    Coeff coord = 0;
    for (std::size_t c = 0; c < point.size(); ++c) coord += transform[r][c] * point[c];
    pos = pos * extents[r] + (coord - origin_offset[r]);
  }
  return pos * element_size;
}

Coeff LinearizationMap::footprint_bytes() const {
  Coeff cells = 1;
  for (Coeff e : extents) cells *= e;
  return cells * element_size;
}

std::size_t rank(std::vector<Vec> m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Coeff g = gcd(std::abs(m[r][c]), std::abs(m[i][c]));
      Coeff a = m[i][c] / g, b = m[r][c] / g;
      for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] * b - m[r][j] * a;
    }
    ++r;
  }
  return r;
}

Coeff determinant(const std::vector<Vec>& m) {
  // Bareiss fraction-free elimination; exact for integer matrices.
  std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<Vec> a = m;
  Coeff sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::vector<Vec> integer_kernel_basis(const std::vector<Vec>& deltas, std::size_t dims) {
  // Column elimination: maintain a unimodular U with D*U column-reduced;
  // once every delta row is processed, the columns of U past the rank
  // span { y : D y = 0 } exactly (the lattice is saturated by
  // construction).
  std::vector<Vec> d = deltas;
  std::vector<Vec> u(dims, Vec(dims, 0));
  for (std::size_t i = 0; i < dims; ++i) u[i][i] = 1;

  auto col_combine = [&](std::vector<Vec>& m, std::size_t rows, std::size_t ca,
                         std::size_t cb, Coeff s, Coeff t, Coeff x, Coeff y) {
    // (col_a, col_b) <- (s*col_a + t*col_b, x*col_a + y*col_b)
    for (std::size_t r = 0; r < rows; ++r) {
      Coeff va = m[r][ca], vb = m[r][cb];
      m[r][ca] = s * va + t * vb;
      m[r][cb] = x * va + y * vb;
    }
  };

  std::size_t rnk = 0;
  for (std::size_t row = 0; row < d.size() && rnk < dims; ++row) {
    // Move a nonzero entry into the pivot column, zero out the rest.
    for (std::size_t c = rnk + 1; c < dims; ++c) {
      if (d[row][c] == 0) continue;
      if (d[row][rnk] == 0) {
        for (auto& dr : d) std::swap(dr[rnk], dr[c]);
        for (auto& ur : u) std::swap(ur[rnk], ur[c]);
        continue;
      }
      auto [g, s, t] = ext_gcd(d[row][rnk], d[row][c]);
      Coeff a = d[row][rnk] / g, b = d[row][c] / g;
      col_combine(d, d.size(), rnk, c, s, t, -b, a);
      col_combine(u, dims, rnk, c, s, t, -b, a);
    }
    if (d[row][rnk] != 0) ++rnk;
  }

  std::vector<Vec> basis;
  for (std::size_t c = rnk; c < dims; ++c) {
    Vec v(dims);
    for (std::size_t r = 0; r < dims; ++r) v[r] = u[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearizationMap complete_linearization(const LayoutMatrix& Y, const Vec& extents,
                                        Coeff element_size) {
  std::size_t k = Y.dims();
  check_dims(k, extents.size(), "extents");
  for (Coeff e : extents)
    if (e <= 0) throw InvariantError("extents must be positive");
  if (element_size <= 0) throw InvariantError("element size must be positive");

  LinearizationMap map;
  map.element_size = element_size;
  for (const auto& row : Y.rows()) map.transform.push_back(row.coefficients());

  {
    // Cofactors of the appended row: det(T) = r . cof for any candidate
    // completion row r.
    Vec cof(k);
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Vec> minor;
      for (const auto& row : Y.rows()) {
        Vec m;
        for (std::size_t c = 0; c < k; ++c)
          if (c != j) m.push_back(row.coefficients()[c]);
        minor.push_back(std::move(m));
      }
      Coeff sgn = ((k + j) % 2 == 0) ? -1 : 1;  // expansion along the last row
      cof[j] = sgn * determinant(minor);
    }

    // Pivot columns of Y's row space; completion prefers unit vectors on
    // the remaining (free) columns, smallest index first.
    std::vector<bool> is_pivot(k, false);
    {
      std::vector<Vec> m;
      for (const auto& row : Y.rows()) m.push_back(row.coefficients());
      std::size_t r = 0;
      for (std::size_t c = 0; c < k && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[r], m[p]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
          if (m[i][c] == 0) continue;
          Coeff g = std::gcd(std::abs(m[r][c]), std::abs(m[i][c]));
          Coeff a = m[i][c] / g, b = m[r][c] / g;
          for (std::size_t j = c; j < k; ++j) m[i][j] = m[i][j] * b - m[r][j] * a;
        }
        is_pivot[c] = true;
        ++r;
      }
    }

    Vec completion(k, 0);
    bool found = false;
    for (int pass = 0; pass < 2 && !found; ++pass) {
      for (std::size_t j = 0; j < k && !found; ++j) {
        if ((pass == 0) == is_pivot[j]) continue;
        if (cof[j] == 1 || cof[j] == -1) {
          completion[j] = 1;
          found = true;
        }
      }
    }
    if (!found) {
      // General extended-gcd combination r with r . cof == gcd(cof).
      Coeff g = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (cof[j] == 0) continue;
        if (g == 0) {
          completion[j] = cof[j] < 0 ? -1 : 1;
          g = std::abs(cof[j]);
          continue;
        }
        auto [ng, s, t] = ext_gcd(g, cof[j]);
        for (std::size_t i = 0; i < j; ++i) completion[i] *= s;
        completion[j] = t;
        g = ng;
      }
      if (g != 1)
        throw InvariantError("layout rows admit no unimodular completion: " +
                             to_string(Y));
      found = true;
    }
    map.transform.push_back(std::move(completion));
  }

  Coeff det = determinant(map.transform);
  if (det != 1 && det != -1)
    throw InvariantError("completion is not unimodular for " + to_string(Y));

  // Exact bounding box of the transformed index box [0, extents).
  map.origin_offset.assign(k, 0);
  map.extents.assign(k, 0);
  for (std::size_t r = 0; r < k; ++r) {
    Coeff lo = 0, hi = 0;
    for (std::size_t c = 0; c < k; ++c) {
      Coeff v = map.transform[r][c] * (extents[c] - 1);
      lo += std::min<Coeff>(v, 0);
      hi += std::max<Coeff>(v, 0);
    }
    map.origin_offset[r] = lo;
    map.extents[r] = hi - lo + 1;
  }
  return map;
}

std::string to_string(const HyperplaneVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.dims(); ++i) {
    if (i) os << ' ';
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::string to_string(const LayoutMatrix& m) {
  if (m.rows().empty()) return "(trivial)";
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows().size(); ++i) {
    if (i) os << ' ';
    os << to_string(m.rows()[i]);
  }
  os << ']';
  return os.str();
}

} // namespace layoutcn
