#include "stoch/exact_matrix.hpp"

#include <utility>

namespace stoch {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  }
  return out;
}

BigInt determinant(const IntMatrix& input) {
  if (!input.is_square()) throw StructuralError("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  BigInt previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
        a(i, j) = std::move(t);
      }
      a(i, k) = 0;
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

// Row echelon form in place; returns rank and accumulates the determinant factor.
std::size_t eliminate(RatMatrix& a, Rational* det) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) {
      if (det) *det = 0;
      continue;
    }
    if (pivot != rank) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(rank, j));
      if (det) *det = -*det;
    }
    const Rational p = a(rank, col);
    if (det) *det *= p;
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      const Rational f = a(i, col) / p;
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw StructuralError("determinant of a non-square matrix");
  RatMatrix a = m;
  Rational det = 1;
  if (eliminate(a, &det) < m.rows()) return 0;
  return det;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return eliminate(a, nullptr);
}

bool is_invertible(const RatMatrix& m) { return m.is_square() && rank(m) == m.rows(); }

std::vector<std::vector<std::string>> to_strings(const IntMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  }
  return out;
}

std::vector<std::vector<std::string>> to_strings(const RatMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(to_string(m(i, j)));
  }
  return out;
}

}  // namespace stoch
