#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Exact integer linear algebra on small matrices (dimension <= 8 in
// practice).  Everything here is fraction-free; intermediates use
// __int128 so Bareiss minors cannot overflow for the entry sizes that
// occur in root coordinates.

namespace rootfree {

// thrown when an enumeration or search would exceed its configured size
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Int = std::int64_t;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;

typedef __int128 Wide;

inline Int checked_narrow(Wide x) {
  assert(x <= INT64_MAX && x >= INT64_MIN);
  return static_cast<Int>(x);
}

inline Int gcd_int(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool is_zero(const Vec& v) {
  for (Int x : v)
    if (x) return false;
  return true;
}

// Divides by the content and makes the first nonzero entry positive.
// The zero vector is left alone.
inline void make_primitive(Vec& v) {
  Int g = 0;
  for (Int x : v) g = gcd_int(g, x);
  if (g == 0) return;
  Int lead = 0;
  for (Int x : v)
    if (x) {
      lead = x;
      break;
    }
  if (lead < 0) g = -g;
  for (Int& x : v) x /= g;
}

inline Vec primitive_copy(Vec v) {
  make_primitive(v);
  return v;
}

// Rank by fraction-free Gaussian elimination (Bareiss).
inline int int_rank(Mat m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<Wide>> a(rows, std::vector<Wide>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
  Wide prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j)
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

inline bool in_span(const Mat& rows, const Vec& v) {
  if (is_zero(v)) return true;
  if (rows.empty()) return false;
  Mat ext = rows;
  ext.push_back(v);
  return int_rank(rows) == int_rank(ext);
}

// Canonical basis for the rational row span: reduced echelon form with
// primitive integer rows and positive pivots.  Two matrices have equal
// row spans over Q iff this returns the same list.
inline Mat rref_canonical(const Mat& m) {
  if (m.empty()) return {};
  size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<Wide>> a(rows, std::vector<Wide>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
  size_t r = 0;
  std::vector<size_t> pivcol;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    // clear the column everywhere else by cross multiplication
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Wide p = a[r][c], q = a[i][c];
      for (size_t j = 0; j < cols; ++j) a[i][j] = a[i][j] * p - a[r][j] * q;
    }
    // keep entries small: reduce each touched row by its content
    for (size_t i = 0; i < rows; ++i) {
      Wide g = 0;
      for (size_t j = 0; j < cols; ++j) g = wide_gcd(g, a[i][j]);
      if (g > 1)
        for (size_t j = 0; j < cols; ++j) a[i][j] /= g;
    }
    pivcol.push_back(c);
    ++r;
  }
  Mat out;
  for (size_t i = 0; i < r; ++i) {
    Vec row(cols);
    Wide lead = a[i][pivcol[i]];
    for (size_t j = 0; j < cols; ++j) row[j] = checked_narrow(lead < 0 ? -a[i][j] : a[i][j]);
    make_primitive(row);
    // primitive + positive pivot; pivot order is already by column
    out.push_back(std::move(row));
  }
  return out;
}

// Integer basis of { x : x . a = 0 }, returned in canonical (rref) form.
// Any rational basis of the hyperplane works as a coordinate system for
// restrictions; canonicity is what matters for memo keys.
inline Mat hyperplane_kernel(const Vec& a) {
  size_t n = a.size();
  Vec w = a;
  Mat u(n, Vec(n, 0));
  for (size_t i = 0; i < n; ++i) u[i][i] = 1;  // u[i] = i-th basis column
  size_t lead = n;
  for (size_t i = 0; i < n; ++i)
    if (w[i]) {
      lead = i;
      break;
    }
  if (lead == n) {
    return rref_canonical(u);  // a = 0: kernel is everything
  }
  for (size_t j = 0; j < n; ++j) {
    if (j == lead || w[j] == 0) continue;
    // column ops: make w[j] zero, keeping u[k] . a = w[k]
    Int x = w[lead], y = w[j];
    Int g = gcd_int(x, y);
    // extended gcd on (x, y)
    Int s0 = 1, s1 = 0, t0 = 0, t1 = 1, a0 = x, a1 = y;
    while (a1) {
      Int q = a0 / a1;
      a0 -= q * a1;
      std::swap(a0, a1);
      s0 -= q * s1;
      std::swap(s0, s1);
      t0 -= q * t1;
      std::swap(t0, t1);
    }
    if (a0 < 0) {
      a0 = -a0;
      s0 = -s0;
      t0 = -t0;
    }
    assert(a0 == g);
    Vec nl(n), nj(n);
    for (size_t k = 0; k < n; ++k) {
      Wide l = (Wide)s0 * u[lead][k] + (Wide)t0 * u[j][k];
      Wide jj = (Wide)(x / g) * u[j][k] - (Wide)(y / g) * u[lead][k];
      nl[k] = checked_narrow(l);
      nj[k] = checked_narrow(jj);
    }
    u[lead] = nl;
    u[j] = nj;
    w[lead] = g;
    w[j] = 0;
  }
  Mat basis;
  for (size_t j = 0; j < n; ++j)
    if (j != lead) basis.push_back(u[j]);
  return rref_canonical(basis);
}

// Dense integer polynomial, coefficient of t^i at index i.
struct IntPoly {
  Vec c;

  IntPoly() {}
  IntPoly(std::initializer_list<Int> v) : c(v) { trim(); }
  explicit IntPoly(Vec v) : c(std::move(v)) { trim(); }

  static IntPoly one() { return IntPoly{1}; }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  Int coeff(int i) const { return i >= 0 && i < (int)c.size() ? c[i] : 0; }

  bool operator==(const IntPoly& o) const { return c == o.c; }
  bool operator!=(const IntPoly& o) const { return c != o.c; }

  IntPoly operator+(const IntPoly& o) const {
    Vec r(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff((int)i) + o.coeff((int)i);
    return IntPoly(std::move(r));
  }
  IntPoly operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    Vec r(c.size() + o.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return IntPoly(std::move(r));
  }
  // multiply by t, used by deletion-restriction
  IntPoly shift() const {
    if (is_zero()) return IntPoly();
    Vec r(c.size() + 1, 0);
    std::copy(c.begin(), c.end(), r.begin() + 1);
    return IntPoly(std::move(r));
  }

  // exact division; nullopt if not divisible over Z
  std::optional<IntPoly> divide_exact(const IntPoly& d) const {
    if (d.is_zero()) return std::nullopt;
    if (is_zero()) return IntPoly();
    if (degree() < d.degree()) return std::nullopt;
    Vec rem = c;
    Vec q(degree() - d.degree() + 1, 0);
    for (int i = (int)q.size() - 1; i >= 0; --i) {
      Int top = rem[i + d.degree()];
      Int lead = d.c.back();
      if (top % lead != 0) return std::nullopt;
      Int f = top / lead;
      q[i] = f;
      for (int j = 0; j <= d.degree(); ++j) rem[i + j] -= f * d.c[j];
    }
    for (Int x : rem)
      if (x) return std::nullopt;
    return IntPoly(std::move(q));
  }

  Int eval(Int x) const {
    Wide acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return checked_narrow(acc);
  }

  std::string str(const char* var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
      if (!c[i]) continue;
      Int a = c[i];
      if (!first) os << (a > 0 ? " + " : " - ");
      else if (a < 0) os << "-";
      Int m = a < 0 ? -a : a;
      if (i == 0) os << m;
      else {
        if (m != 1) os << m << "*";
        os << var;
        if (i > 1) os << "^" << i;
      }
      first = false;
    }
    return os.str();
  }
};

// [k]_q = 1 + q + ... + q^{k-1}
inline IntPoly q_integer(int k) {
  assert(k >= 1);
  return IntPoly(Vec(k, 1));
}

}  // namespace rootfree
