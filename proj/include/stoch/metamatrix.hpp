#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stoch/arith.hpp"
#include "stoch/exact_matrix.hpp"

namespace stoch {

/// Nonnegative integer p x q matrices of weight n, zero rows and columns allowed: C(n+pq-1, n).
BigInt generalized_count(long n, long p, long q);

/// Unsigned Stirling numbers of the first kind: x(x+1)...(x+n-1) = sum_k c(n,k) x^k.
BigInt stirling_first(int n, int k);
/// S(k, p), computed as sum_i (-1)^(p-i) C(p,i) i^k / p!.
BigInt stirling_second(int k, int p);
/// Ordered set partitions of a k-set: sum_p p! S(k,p).
BigInt fubini(int k);

enum class MetaMethod { enumeration, inclusion_exclusion };
std::string_view to_string(MetaMethod method);
MetaMethod parse_meta_method(std::string_view text);

/// Entry (p-1, q-1) counts contingency matrices of size p x q and weight n.
/// Enumeration is capped at n <= 7, inclusion-exclusion at n <= 20 (CONTINGENCY_MAX_N raises both).
IntMatrix metamatrix(int n, MetaMethod method = MetaMethod::inclusion_exclusion);

// Structured n x n matrices, indices running over 1..n.
IntMatrix pascal_matrix(int n);          // C(p, i)
IntMatrix pascal_inverse_matrix(int n);  // (-1)^(p-i) C(p, i)
IntMatrix vandermonde_matrix(int n);     // i^k
IntMatrix binomial_matrix(int n);        // C(n + pq - 1, n)
IntMatrix stirling_matrix(int n);        // S(k, p) at row p, column k
RatMatrix scaled_stirling_matrix(int n); // p! S(k, p) / k!
IntMatrix q_matrix(int n);               // P^-1 V

struct IdentityCheck {
  std::string name;
  bool pass;
};

struct FactorizationReport {
  int n;
  std::vector<IdentityCheck> checks;
  bool pass() const;
};

/// Checks every factorization of the count matrix exactly; n <= 20.
FactorizationReport verify_factorizations(int n);

struct DeterminantReport {
  int n;
  Rational closed_form;
  /// Bareiss determinant of the count matrix, computed for n <= 12.
  std::optional<BigInt> direct;
  bool closed_form_integral;
  bool pass() const;
};

/// d_n = n! prod c(n,i) / prod C(n,i) over 1 <= i < n, against the direct determinant.
DeterminantReport det_metamatrix(int n);

struct Minor {
  std::vector<std::size_t> rows;  // 1-based
  std::vector<std::size_t> cols;  // 1-based
  BigInt value;
};

struct PositivityReport {
  bool is_tp;
  std::optional<Minor> witness;  // first nonpositive minor, by size then row/column subsets
  std::size_t minors_checked;
};

/// Scans every square minor. Square input of size <= 7 (CONTINGENCY_MAX_N raises it).
PositivityReport total_positivity(const IntMatrix& a);

/// Total number of contingency matrices of weight n via the Stirling/Fubini sum.
BigInt total_count(int n);
/// Same total via sum_{i,j} a_i a_j C(n+ij-1, n), a_i = sum_{p=i..n} (-1)^(p-i) C(p,i).
BigInt total_count_alternating(int n);
/// The weight form sum_{i,j} (-1)^(i+j) C(n+1,i+1) C(n+1,j+1) C(n+ij-1,n) over 1 <= i,j <= n.
/// Kept for comparison only: it does not reproduce the totals (it is 1 for every n).
BigInt total_count_binomial_weights(int n);
/// Sum of the entries of metamatrix(n, enumeration).
BigInt total_count_enumerated(int n);

/// First (p, q), 1-based, where sum_{i<=p, j<=q} C(p,i) C(q,j) m_ij != C(n+pq-1, n).
std::optional<std::pair<int, int>> subgrid_sum_failure(const IntMatrix& meta, int n);

/// One line per row, entries as decimal strings separated by commas.
std::string to_csv(const IntMatrix& m);

}  // namespace stoch
