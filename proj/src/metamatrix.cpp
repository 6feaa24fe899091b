#include "stoch/metamatrix.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <sstream>

#include "stoch/contingency.hpp"
#include "stoch/errors.hpp"

namespace stoch {

namespace {

BigInt power(long base, unsigned exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), BigInt(base).get_mpz_t(), exponent);
  return out;
}

void require_positive(int n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": n must be positive");
}

BigInt sum_entries(const IntMatrix& m) {
  BigInt total = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) total += m(i, j);
  }
  return total;
}

// Bits of `mask` as sorted indices.
std::vector<std::size_t> bits(unsigned mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1U) {
    if (mask & 1U) out.push_back(i);
  }
  return out;
}

}  // namespace

BigInt generalized_count(long n, long p, long q) {
  if (n < 0 || p < 1 || q < 1) throw DomainError("generalized_count: need n >= 0 and p, q >= 1");
  return binomial(n + p * q - 1, n);
}

BigInt stirling_first(int n, int k) {
  if (n < 0 || k < 0) throw DomainError("stirling_first: negative argument");
  // coefficients of x(x+1)...(x+n-1), built one factor at a time
  std::vector<BigInt> poly{1};
  for (int m = 0; m < n; ++m) {
    std::vector<BigInt> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] += poly[i] * m;
    }
    poly = std::move(next);
  }
  return static_cast<std::size_t>(k) < poly.size() ? poly[static_cast<std::size_t>(k)] : BigInt(0);
}

BigInt stirling_second(int k, int p) {
  if (k < 0 || p < 0) throw DomainError("stirling_second: negative argument");
  BigInt sum = 0;
  for (int i = 0; i <= p; ++i) {
    const BigInt term = binomial(p, i) * power(i, static_cast<unsigned>(k));
    if ((p - i) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  const BigInt f = factorial(static_cast<unsigned>(p));
  if (sum % f != 0) throw std::logic_error("stirling_second: alternating sum not divisible by p!");
  return sum / f;
}

BigInt fubini(int k) {
  if (k < 0) throw DomainError("fubini: negative argument");
  BigInt total = 0;
  for (int p = 0; p <= k; ++p) total += factorial(static_cast<unsigned>(p)) * stirling_second(k, p);
  return total;
}

std::string_view to_string(MetaMethod method) {
  return method == MetaMethod::enumeration ? "enumeration" : "inclusion_exclusion";
}

MetaMethod parse_meta_method(std::string_view text) {
  if (text == "enumeration") return MetaMethod::enumeration;
  if (text == "inclusion_exclusion" || text == "inclusion-exclusion") return MetaMethod::inclusion_exclusion;
  throw DomainError("unknown method '" + std::string(text) + "'");
}

IntMatrix metamatrix(int n, MetaMethod method) {
  require_positive(n, "metamatrix");
  IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  if (method == MetaMethod::enumeration) {
    require_capacity(n, 7, "metamatrix by enumeration");
    for (int p = 1; p <= n; ++p) {
      for (int q = 1; q <= n; ++q) m(p - 1, q - 1) = count_cm(n, p, q);
    }
    return m;
  }
  require_capacity(n, 20, "metamatrix");
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) {
      BigInt sum = 0;
      for (int i = 0; i <= p; ++i) {
        for (int j = 0; j <= q; ++j) {
          const BigInt term = binomial(p, i) * binomial(q, j) * binomial(n + i * j - 1, n);
          if ((i + j + p + q) % 2 == 0) {
            sum += term;
          } else {
            sum -= term;
          }
        }
      }
      m(p - 1, q - 1) = sum;
    }
  }
  return m;
}

IntMatrix pascal_matrix(int n) {
  IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int p = 1; p <= n; ++p) {
    for (int i = 1; i <= n; ++i) m(p - 1, i - 1) = binomial(p, i);
  }
  return m;
}

IntMatrix pascal_inverse_matrix(int n) {
  IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int p = 1; p <= n; ++p) {
    for (int i = 1; i <= p; ++i) m(p - 1, i - 1) = (p - i) % 2 == 0 ? binomial(p, i) : BigInt(-binomial(p, i));
  }
  return m;
}

IntMatrix vandermonde_matrix(int n) {
  IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= n; ++k) m(i - 1, k - 1) = power(i, static_cast<unsigned>(k));
  }
  return m;
}

IntMatrix binomial_matrix(int n) {
  IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) m(p - 1, q - 1) = binomial(n + p * q - 1, n);
  }
  return m;
}

IntMatrix stirling_matrix(int n) {
  IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int p = 1; p <= n; ++p) {
    for (int k = 1; k <= n; ++k) m(p - 1, k - 1) = stirling_second(k, p);
  }
  return m;
}

RatMatrix scaled_stirling_matrix(int n) {
  RatMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int p = 1; p <= n; ++p) {
    for (int k = 1; k <= n; ++k) {
      m(p - 1, k - 1) = Rational(factorial(static_cast<unsigned>(p)) * stirling_second(k, p),
                                 factorial(static_cast<unsigned>(k)));
      m(p - 1, k - 1).canonicalize();
    }
  }
  return m;
}

IntMatrix q_matrix(int n) { return pascal_inverse_matrix(n) * vandermonde_matrix(n); }

bool FactorizationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

FactorizationReport verify_factorizations(int n) {
  require_positive(n, "verify_factorizations");
  require_capacity(n, 20, "verify_factorizations");
  const auto size = static_cast<std::size_t>(n);
  const IntMatrix meta = metamatrix(n, MetaMethod::inclusion_exclusion);
  const IntMatrix p = pascal_matrix(n);
  const IntMatrix p_inv = pascal_inverse_matrix(n);
  const IntMatrix v = vandermonde_matrix(n);
  const IntMatrix q = q_matrix(n);
  const IntMatrix s = stirling_matrix(n);
  const Rational inv_fact(BigInt(1), factorial(static_cast<unsigned>(n)));

  std::vector<BigInt> c(size);
  std::vector<BigInt> k_fact(size);
  std::vector<Rational> weighted(size);
  for (int k = 1; k <= n; ++k) {
    c[k - 1] = stirling_first(n, k);
    k_fact[k - 1] = factorial(static_cast<unsigned>(k));
    weighted[k - 1] = Rational(k_fact[k - 1] * k_fact[k - 1] * c[k - 1]);
  }

  FactorizationReport report{n, {}};
  auto add = [&](std::string name, bool ok) { report.checks.push_back({std::move(name), ok}); };

  add("pascal_inverse", p * p_inv == IntMatrix::identity(size));
  add("symmetric", meta == meta.transposed());
  add("pascal_congruence_binomial", p * meta * p.transposed() == binomial_matrix(n));

  const RatMatrix meta_q = to_rational(meta);
  const RatMatrix qr = to_rational(q);
  const RatMatrix via_q = inv_fact * (qr * RatMatrix::diagonal(std::span<const Rational>(
                                                std::vector<Rational>(c.begin(), c.end()))) *
                                      qr.transposed());
  add("q_diagonal_factorization", via_q == meta_q);

  bool q_entries = q.is_upper_triangular();
  for (int pp = 1; pp <= n && q_entries; ++pp) {
    for (int k = 1; k <= n; ++k) {
      if (q(pp - 1, k - 1) != factorial(static_cast<unsigned>(pp)) * stirling_second(k, pp)) {
        q_entries = false;
        break;
      }
    }
  }
  for (std::size_t k = 0; k < size && q_entries; ++k) q_entries = q(k, k) == k_fact[k];
  add("q_stirling_entries", q_entries);

  add("vandermonde_factorization", v == p * IntMatrix::diagonal(std::span<const BigInt>(k_fact)) * s);

  const RatMatrix s_star = scaled_stirling_matrix(n);
  const RatMatrix via_s = inv_fact * (s_star * RatMatrix::diagonal(std::span<const Rational>(weighted)) *
                                      s_star.transposed());
  add("scaled_stirling_factorization", via_s == meta_q);
  return report;
}

bool DeterminantReport::pass() const { return closed_form_integral && (!direct || Rational(*direct) == closed_form); }

DeterminantReport det_metamatrix(int n) {
  require_positive(n, "det_metamatrix");
  require_capacity(n, 20, "det_metamatrix");
  BigInt numerator = factorial(static_cast<unsigned>(n));
  BigInt denominator = 1;
  for (int i = 1; i < n; ++i) {
    numerator *= stirling_first(n, i);
    denominator *= binomial(n, i);
  }
  DeterminantReport report{n, Rational(numerator, denominator), std::nullopt, false};
  report.closed_form.canonicalize();
  report.closed_form_integral = report.closed_form.get_den() == 1;
  if (n <= capacity_limit(12)) report.direct = determinant(metamatrix(n, MetaMethod::inclusion_exclusion));
  return report;
}

PositivityReport total_positivity(const IntMatrix& a) {
  if (!a.is_square()) throw DomainError("total_positivity: matrix must be square");
  require_capacity(static_cast<int>(a.rows()), 7, "total_positivity");
  const auto n = static_cast<unsigned>(a.rows());
  PositivityReport report{true, std::nullopt, 0};
  for (unsigned k = 1; k <= n; ++k) {
    std::vector<unsigned> subsets;
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      if (static_cast<unsigned>(__builtin_popcount(mask)) == k) subsets.push_back(mask);
    }
    // masks in lexicographic order of their index lists
    std::sort(subsets.begin(), subsets.end(), [](unsigned x, unsigned y) { return bits(x) < bits(y); });
    for (unsigned rows : subsets) {
      const auto r = bits(rows);
      for (unsigned cols : subsets) {
        const auto c = bits(cols);
        const BigInt value = determinant(a.submatrix(r, c));
        ++report.minors_checked;
        if (value <= 0) {
          Minor witness{r, c, value};
          for (auto& x : witness.rows) ++x;
          for (auto& x : witness.cols) ++x;
          report.is_tp = false;
          report.witness = std::move(witness);
          return report;
        }
      }
    }
  }
  return report;
}

BigInt total_count(int n) {
  require_positive(n, "total_count");
  BigInt sum = 0;
  for (int k = 1; k <= n; ++k) {
    const BigInt f = fubini(k);
    sum += stirling_first(n, k) * f * f;
  }
  const BigInt nf = factorial(static_cast<unsigned>(n));
  if (sum % nf != 0) throw std::logic_error("total_count: sum not divisible by n!");
  return sum / nf;
}

BigInt total_count_alternating(int n) {
  require_positive(n, "total_count_alternating");
  std::vector<BigInt> a(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    for (int p = i; p <= n; ++p) {
      if ((p - i) % 2 == 0) {
        a[i] += binomial(p, i);
      } else {
        a[i] -= binomial(p, i);
      }
    }
  }
  BigInt sum = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) sum += a[i] * a[j] * binomial(n + i * j - 1, n);
  }
  return sum;
}

BigInt total_count_binomial_weights(int n) {
  require_positive(n, "total_count_binomial_weights");
  BigInt sum = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const BigInt term = binomial(n + 1, i + 1) * binomial(n + 1, j + 1) * binomial(n + i * j - 1, n);
      if ((i + j) % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
  }
  return sum;
}

BigInt total_count_enumerated(int n) { return sum_entries(metamatrix(n, MetaMethod::enumeration)); }

std::optional<std::pair<int, int>> subgrid_sum_failure(const IntMatrix& meta, int n) {
  if (meta.rows() != static_cast<std::size_t>(n) || !meta.is_square()) {
    throw StructuralError("count matrix has the wrong shape");
  }
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) {
      BigInt sum = 0;
      for (int i = 1; i <= p; ++i) {
        for (int j = 1; j <= q; ++j) sum += binomial(p, i) * binomial(q, j) * meta(i - 1, j - 1);
      }
      if (sum != generalized_count(n, p, q)) return std::pair{p, q};
    }
  }
  return std::nullopt;
}

std::string to_csv(const IntMatrix& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << to_string(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace stoch
