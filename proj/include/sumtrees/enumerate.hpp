// Exact counting of summation equivalence classes and parenthetic forms.
//
// Every count is an arbitrary-precision integer (n! overflows 64 bits at
// n = 21).  Where independent formulas exist, each is implemented and the
// agreement is enforced by the test suite.

#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "sumtrees/core.hpp"

namespace sumtrees {

using BigCount = mpz_class;

// Largest n accepted for factorial-scale counts.
inline constexpr std::int64_t kMaxFactorialN = 5000;
// Largest n accepted for the integer-valued sequences epsilon and beta.
inline constexpr std::int64_t kMaxIndexN = 1'000'000;

enum class EpsilonMethod { recursive, closed, baruchel };
enum class SigmaMethod { tournament_recursive, epsilon_recursive, epsilon_closed };
enum class BetaMethod { legendre, decomposition };

// (2n-3)!!: all computationally inequivalent summations on n terms.
BigCount count_all(std::int64_t n);

// n!/2: inequivalent ladder summations, n >= 2.
BigCount count_ladder(std::int64_t n);

// Number of S-nodes in the pairwise summation tree on n leaves.
// All three methods agree for every n >= 1.
std::int64_t epsilon(std::int64_t n, EpsilonMethod method = EpsilonMethod::recursive);

// Inequivalent pairwise summations; tournament recursion or n!/2^epsilon.
BigCount sigma_pairwise(std::int64_t n,
                        SigmaMethod method = SigmaMethod::epsilon_recursive);

// n! / 2^(s_node_count(shape)).
BigCount class_count(const Shape& shape);

// Non-isomorphic parenthetic forms on n leaves (half-Catalan numbers).
BigCount alpha(std::int64_t n);

// Non-isomorphic parenthetic forms on n leaves with exactly s S-nodes.
// Out-of-support (n, s) returns 0.
BigCount tau(std::int64_t n, std::int64_t s);

// Closed form for tau(n, 2).
BigCount tau2_closed(std::int64_t n);

// Exponent of 2 in n!; equals n - popcount(n).
std::int64_t beta(std::int64_t n, BetaMethod method = BetaMethod::legendre);

// nth Catalan number.
BigCount catalan(std::int64_t n);

// Rows n = 1..max_n of tau; row[n-1][s-1] = tau(n, s) for s = 1..n-1
// (row for n = 1 is empty).
std::vector<std::vector<BigCount>> tau_table(std::int64_t max_n);

}  // namespace sumtrees
