#include "spinor/tridiagonal.hpp"

#include "spinor/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace spinor {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxQlIterations = 60;

template <typename T>
void tridiagonal_apply(const SymTridiagonal &m, std::span<const T> x, std::span<T> y) {
  const std::size_t n = m.size();
  if (x.size() != n || y.size() != n)
    throw std::invalid_argument("tridiagonal apply: size mismatch");
  if (n == 1) {
    y[0] = m.diag[0] * x[0];
    return;
  }
  y[0] = m.diag[0] * x[0] + m.offdiag[0] * x[1];
  for (std::size_t i = 1; i + 1 < n; ++i)
    y[i] = m.offdiag[i - 1] * x[i - 1] + m.diag[i] * x[i] + m.offdiag[i] * x[i + 1];
  y[n - 1] = m.offdiag[n - 2] * x[n - 2] + m.diag[n - 1] * x[n - 1];
}

// Implicit QL with Wilkinson-type shifts. d is overwritten with eigenvalues
// (unsorted); if z is non-empty it must hold an n x n row-major identity and
// receives eigenvectors as columns.
void implicit_ql(std::vector<double> &d, std::vector<double> e, std::vector<double> &z) {
  const std::size_t n = d.size();
  e.push_back(0.0);
  const bool want_vectors = !z.empty();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd)
          break;
      }
      if (m == l)
        break;
      if (++iter > kMaxQlIterations)
        throw NumericalError("tridiagonal QL failed to converge at index " + std::to_string(l) +
                             " (residual off-diagonal " + std::to_string(e[l]) + ")");

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t ii = m; ii-- > l;) {
        const double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            double &zi = z[k * n + ii];
            double &zi1 = z[k * n + ii + 1];
            const double t = zi1;
            zi1 = s * zi + c * t;
            zi = c * zi - s * t;
          }
        }
      }
      if (underflow)
        continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

void check_shape(const SymTridiagonal &t) {
  if (t.diag.empty())
    throw std::invalid_argument("empty tridiagonal matrix");
  if (t.offdiag.size() + 1 != t.diag.size())
    throw std::invalid_argument("tridiagonal off-diagonal has wrong length");
}

} // namespace

SymTridiagonal::SymTridiagonal(std::vector<double> d, std::vector<double> e)
    : diag(std::move(d)), offdiag(std::move(e)) {
  check_shape(*this);
}

void SymTridiagonal::apply(std::span<const std::complex<double>> x,
                           std::span<std::complex<double>> y) const {
  tridiagonal_apply(*this, x, y);
}

void SymTridiagonal::apply(std::span<const double> x, std::span<double> y) const {
  tridiagonal_apply(*this, x, y);
}

std::pair<double, double> SymTridiagonal::spectral_bounds() const {
  const std::size_t n = size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0)
      radius += std::abs(offdiag[i - 1]);
    if (i + 1 < n)
      radius += std::abs(offdiag[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::max(hi, diag[i] + radius);
  }
  return {lo, hi};
}

double SymTridiagonal::norm_inf() const {
  double norm = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double row = std::abs(diag[i]);
    if (i > 0)
      row += std::abs(offdiag[i - 1]);
    if (i + 1 < size())
      row += std::abs(offdiag[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

std::vector<double> eigenvalues(const SymTridiagonal &t) {
  check_shape(t);
  std::vector<double> d = t.diag;
  std::vector<double> none;
  implicit_ql(d, t.offdiag, none);
  std::sort(d.begin(), d.end());
  return d;
}

TridiagonalEigen eigen_decomposition(const SymTridiagonal &t) {
  check_shape(t);
  const std::size_t n = t.size();
  std::vector<double> d = t.diag;
  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    z[i * n + i] = 1.0;
  implicit_ql(d, t.offdiag, z);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t col : order) {
    out.values.push_back(d[col]);
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k)
      v[k] = z[k * n + col];
    out.vectors.push_back(std::move(v));
  }
  return out;
}

std::size_t sturm_count(const SymTridiagonal &t, double x) {
  check_shape(t);
  const double pivmin = std::max(std::numeric_limits<double>::min(), kEps * kEps * t.norm_inf());
  std::size_t count = 0;
  double q = t.diag[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(q) < pivmin)
      q = -pivmin;
    if (q < 0.0)
      ++count;
    if (i + 1 == t.size())
      break;
    q = t.diag[i + 1] - x - t.offdiag[i] * t.offdiag[i] / q;
  }
  return count;
}

double eigenvalue_by_index(const SymTridiagonal &t, std::size_t index) {
  check_shape(t);
  if (index >= t.size())
    throw std::invalid_argument("eigenvalue index out of range");
  auto [lo, hi] = t.spectral_bounds();
  const double scale = std::max(t.norm_inf(), std::numeric_limits<double>::min());
  lo -= kEps * scale;
  hi += kEps * scale;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)))
      break;
    if (sturm_count(t, mid) > index)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> eigenvector_for(const SymTridiagonal &t, double eigenvalue) {
  check_shape(t);
  const std::size_t n = t.size();
  if (n == 1)
    return {1.0};

  // LU of (T - sigma I) with partial pivoting; U has two superdiagonals.
  const double tiny = kEps * std::max(t.norm_inf(), std::numeric_limits<double>::min());
  std::vector<double> lower(n - 1, 0.0);
  std::vector<char> swapped(n - 1, 0);
  std::vector<double> dd(n), du(n - 1), dl(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    dd[i] = t.diag[i] - eigenvalue;
  for (std::size_t i = 0; i + 1 < n; ++i)
    du[i] = dl[i] = t.offdiag[i];

  // Row i of the working matrix: (dd[i], du[i], du2[i]) on columns (i, i+1, i+2).
  std::vector<double> du2(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(dd[i]) >= std::abs(dl[i])) {
      if (std::abs(dd[i]) < tiny)
        dd[i] = tiny;
      const double f = dl[i] / dd[i];
      lower[i] = f;
      dd[i + 1] -= f * du[i];
    } else {
      const double f = dd[i] / dl[i];
      swapped[i] = 1;
      lower[i] = f;
      dd[i] = dl[i];
      const double tmp = dd[i + 1];
      dd[i + 1] = du[i] - f * tmp;
      du[i] = tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du2[i];
      }
    }
  }
  if (std::abs(dd[n - 1]) < tiny)
    dd[n - 1] = tiny;

  auto solve = [&](std::vector<double> &b) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - lower[i] * b[i];
      } else {
        b[i + 1] -= lower[i] * b[i];
      }
    }
    b[n - 1] /= dd[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
    for (std::size_t i = n - 2; i-- > 0;)
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i];
  };

  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = 1.0 + 0.01 * std::sin(static_cast<double>(i) + 1.0);
  for (int it = 0; it < 4; ++it) {
    solve(x);
    double norm = 0.0;
    for (double v : x)
      norm += v * v;
    norm = std::sqrt(norm);
    if (!std::isfinite(norm) || norm == 0.0)
      throw NumericalError("inverse iteration produced a non-finite vector");
    for (double &v : x)
      v /= norm;
  }

  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(x[i]) > std::abs(x[imax]))
      imax = i;
  if (x[imax] < 0.0)
    for (double &v : x)
      v = -v;
  return x;
}

} // namespace spinor
