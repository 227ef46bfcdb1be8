#include <gmp.h>

#include "pcsp/linalg.hpp"

namespace pcsp {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw ValidationError("dimension mismatch in matrix product");
  IntMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

std::vector<BigInt> IntMatrix::operator*(const std::vector<BigInt>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw ValidationError("dimension mismatch in matrix-vector product");
  std::vector<BigInt> out(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * x[j];
  return out;
}

namespace {

using Column = std::vector<BigInt>;

// g = s*a + t*b with g = gcd(a, b) >= 0.
void extended_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
  mpz_gcdext(g.backend().data(), s.backend().data(), t.backend().data(), a.backend().data(),
             b.backend().data());
}

// (x, y) <- (p*x + q*y, r*x + s*y), skipping rows where both are zero.
void combine(Column& x, Column& y, const BigInt& p, const BigInt& q, const BigInt& r,
             const BigInt& s) {
  BigInt nx, ny;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == 0 && y[k] == 0) continue;
    nx = p * x[k] + q * y[k];
    ny = r * x[k] + s * y[k];
    x[k].swap(nx);
    y[k].swap(ny);
  }
}

void subtract_multiple(Column& x, const Column& y, const BigInt& f) {
  for (std::size_t k = 0; k < x.size(); ++k)
    if (y[k] != 0) x[k] -= f * y[k];
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& a) {
  const int m = a.rows();
  const int n = a.cols();
  std::vector<Column> hc(n, Column(m)), uc(n, Column(n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) hc[j][i] = a(i, j);
    uc[j][j] = 1;
  }

  std::vector<int> pivot_rows;
  int pc = 0;
  BigInt g, s, t, p, q;
  for (int i = 0; i < m && pc < n; ++i) {
    for (int j = pc + 1; j < n; ++j) {
      if (hc[j][i] == 0) continue;
      if (hc[pc][i] == 0) {
        hc[pc].swap(hc[j]);
        uc[pc].swap(uc[j]);
        continue;
      }
      const BigInt x = hc[pc][i];
      const BigInt y = hc[j][i];
      extended_gcd(x, y, g, s, t);
      p = y / g;
      q = -(x / g);
      // [col_pc, col_j] * [[s, y/g], [t, -x/g]]; determinant -1.
      combine(hc[pc], hc[j], s, t, p, q);
      combine(uc[pc], uc[j], s, t, p, q);
    }
    if (hc[pc][i] == 0) continue;
    if (hc[pc][i] < 0) {
      for (auto& e : hc[pc]) e = -e;
      for (auto& e : uc[pc]) e = -e;
    }
    // Reduce the entries left of the pivot into [0, pivot).
    const BigInt piv = hc[pc][i];
    for (int k = 0; k < pc; ++k) {
      BigInt f = hc[k][i] / piv;
      if (hc[k][i] - f * piv < 0) f -= 1;
      if (f == 0) continue;
      subtract_multiple(hc[k], hc[pc], f);
      subtract_multiple(uc[k], uc[pc], f);
    }
    pivot_rows.push_back(i);
    ++pc;
  }

  HermiteForm out{IntMatrix(m, n), IntMatrix(n, n), std::move(pivot_rows)};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) out.h(i, j) = hc[j][i];
    for (int i = 0; i < n; ++i) out.u(i, j) = uc[j][i];
  }
  return out;
}

std::optional<std::vector<BigInt>> integer_solve(const IntMatrix& a, const std::vector<BigInt>& b) {
  if (static_cast<int>(b.size()) != a.rows())
    throw ValidationError("dimension mismatch: right-hand side has " + std::to_string(b.size()) +
                          " entries for " + std::to_string(a.rows()) + " rows");
  HermiteForm hnf = hermite_normal_form(a);
  const int n = a.cols();
  std::vector<BigInt> y(n);
  std::size_t k = 0;
  BigInt acc;
  for (int i = 0; i < a.rows(); ++i) {
    acc = b[i];
    for (std::size_t c = 0; c < k; ++c)
      if (hnf.h(i, static_cast<int>(c)) != 0) acc -= hnf.h(i, static_cast<int>(c)) * y[c];
    if (k < hnf.pivot_rows.size() && hnf.pivot_rows[k] == i) {
      const BigInt& piv = hnf.h(i, static_cast<int>(k));
      if (acc % piv != 0) return std::nullopt;
      y[k] = acc / piv;
      ++k;
    } else if (acc != 0) {
      return std::nullopt;
    }
  }
  return hnf.u * y;
}

}  // namespace pcsp
