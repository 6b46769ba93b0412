#include "sumtrees/enumerate.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace sumtrees {

namespace {

void require_positive(std::int64_t n, std::int64_t cap, const char* what) {
  if (n < 1) throw std::domain_error(std::string(what) + ": n must be >= 1");
  if (n > cap) throw std::domain_error(std::string(what) + ": n exceeds cap");
}

BigCount factorial(std::int64_t n) {
  BigCount r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigCount binomial(std::int64_t n, std::int64_t k) {
  BigCount r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigCount exact_quotient(const BigCount& num, const BigCount& den, const char* what) {
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw std::logic_error(std::string(what) + ": nonzero remainder");
  return num / den;
}

std::int64_t epsilon_recursive_impl(std::int64_t n,
                                    std::unordered_map<std::int64_t, std::int64_t>& memo) {
  if (n == 1) return 0;
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  std::int64_t v;
  if (n % 2 == 0)
    v = 2 * epsilon_recursive_impl(n / 2, memo) + 1;
  else
    v = epsilon_recursive_impl(n / 2, memo) + epsilon_recursive_impl(n / 2 + 1, memo);
  memo.emplace(n, v);
  return v;
}

std::int64_t epsilon_recursive(std::int64_t n) {
  static std::unordered_map<std::int64_t, std::int64_t> memo;
  static std::mutex mu;
  std::lock_guard lock(mu);
  return epsilon_recursive_impl(n, memo);
}

// Literal sum over levels: at level i the number of S-nodes is
// notbit_i(n) * 2^i + (-1)^notbit_i(n) * (n mod 2^i).
std::int64_t epsilon_closed_arith(std::int64_t n) {
  std::int64_t total = 0;
  for (std::int64_t p = 1; p <= n; p *= 2) {
    std::int64_t notbit = (n / p + 1) % 2;
    std::int64_t rem = n % p;
    total += notbit * p + (notbit ? -rem : rem);
  }
  return total;
}

std::int64_t epsilon_closed_bitwise(std::int64_t n) {
  std::int64_t exp = 0;
  int bits = std::bit_width(static_cast<std::uint64_t>(n));
  for (int i = 0; i < bits; ++i) {
    std::int64_t nb = !((n >> i) & 1);
    exp += nb * (std::int64_t{1} << i) + (-(nb << 1) + 1) * (n - ((n >> i) << i));
  }
  return exp;
}

std::int64_t epsilon_baruchel(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t k = 1; k < n; ++k) {
    int lg = std::bit_width(static_cast<std::uint64_t>(k)) - 1;
    std::int64_t half = std::int64_t{1} << lg;
    if ((n - k - 1) % (2 * half) < half) ++count;
  }
  return count;
}

BigCount sigma_tournament_impl(std::int64_t n, std::map<std::int64_t, BigCount>& memo) {
  if (n <= 2) return 1;
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  std::int64_t m = n / 2;
  BigCount v;
  if (n % 2 == 0)
    v = exact_quotient(binomial(2 * m, m) * sigma_tournament_impl(m, memo) *
                           sigma_tournament_impl(m, memo),
                       2, "sigma tournament");
  else
    v = binomial(2 * m + 1, m) * sigma_tournament_impl(m, memo) *
        sigma_tournament_impl(m + 1, memo);
  memo.emplace(n, v);
  return v;
}

BigCount alpha_impl(std::int64_t n, std::map<std::int64_t, BigCount>& memo) {
  if (n == 1) return 1;
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  BigCount total = 0;
  for (std::int64_t i = 1; i <= n / 2; ++i)
    total += alpha_impl(i, memo) * alpha_impl(n - i, memo);
  memo.emplace(n, total);
  return total;
}

BigCount tau_impl(std::int64_t n, std::int64_t s,
                  std::map<std::pair<std::int64_t, std::int64_t>, BigCount>& memo) {
  if (s < 0) return 0;
  if (n == 0 || n == 1) return s == 0 ? 1 : 0;
  if (s == 0) return 0;
  auto key = std::make_pair(n, s);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  BigCount total = 0;
  for (std::int64_t j = 1; j <= (n - 1) / 2; ++j)
    for (std::int64_t i = 0; i <= s; ++i)
      total += tau_impl(j, i, memo) * tau_impl(n - j, s - i, memo);
  if (n % 2 == 0)
    for (std::int64_t i = 0; i <= s - 1; ++i)
      total += tau_impl(n / 2, i, memo) * tau_impl(n / 2, s - 1 - i, memo);
  memo.emplace(key, total);
  return total;
}

std::int64_t beta_decomposition(std::int64_t n) {
  std::int64_t total = 0;
  while (n > 0) {
    std::int64_t pow2 = std::int64_t{1} << (std::bit_width(static_cast<std::uint64_t>(n)) - 1);
    total += pow2 - 1;
    n -= pow2;
  }
  return total;
}

}  // namespace

BigCount count_all(std::int64_t n) {
  require_positive(n, kMaxFactorialN, "count_all");
  if (n == 1) return 1;
  BigCount r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(2 * n - 3));
  return r;
}

BigCount count_ladder(std::int64_t n) {
  require_positive(n, kMaxFactorialN, "count_ladder");
  if (n < 2) throw std::domain_error("count_ladder: n must be >= 2");
  return exact_quotient(factorial(n), 2, "count_ladder");
}

std::int64_t epsilon(std::int64_t n, EpsilonMethod method) {
  require_positive(n, kMaxIndexN, "epsilon");
  switch (method) {
    case EpsilonMethod::recursive:
      return epsilon_recursive(n);
    case EpsilonMethod::closed: {
      std::int64_t a = epsilon_closed_arith(n);
      std::int64_t b = epsilon_closed_bitwise(n);
      if (a != b) throw std::logic_error("epsilon closed: arithmetic/bitwise mismatch");
      return a;
    }
    case EpsilonMethod::baruchel:
      return epsilon_baruchel(n);
  }
  throw std::invalid_argument("epsilon: bad method");
}

BigCount sigma_pairwise(std::int64_t n, SigmaMethod method) {
  require_positive(n, kMaxFactorialN, "sigma_pairwise");
  switch (method) {
    case SigmaMethod::tournament_recursive: {
      static std::map<std::int64_t, BigCount> memo;
      static std::mutex mu;
      std::lock_guard lock(mu);
      return sigma_tournament_impl(n, memo);
    }
    case SigmaMethod::epsilon_recursive:
    case SigmaMethod::epsilon_closed: {
      auto em = method == SigmaMethod::epsilon_recursive ? EpsilonMethod::recursive
                                                         : EpsilonMethod::closed;
      BigCount den;
      mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(epsilon(n, em)));
      return exact_quotient(factorial(n), den, "sigma_pairwise");
    }
  }
  throw std::invalid_argument("sigma_pairwise: bad method");
}

BigCount class_count(const Shape& shape) {
  if (!shape.root) throw std::invalid_argument("class_count: empty shape");
  std::int64_t n = shape.root->leaf_count();
  BigCount den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(s_node_count(shape)));
  return exact_quotient(factorial(n), den, "class_count");
}

BigCount alpha(std::int64_t n) {
  require_positive(n, kMaxFactorialN, "alpha");
  static std::map<std::int64_t, BigCount> memo;
  static std::mutex mu;
  std::lock_guard lock(mu);
  return alpha_impl(n, memo);
}

BigCount tau(std::int64_t n, std::int64_t s) {
  require_positive(n, kMaxFactorialN, "tau");
  static std::map<std::pair<std::int64_t, std::int64_t>, BigCount> memo;
  static std::mutex mu;
  std::lock_guard lock(mu);
  return tau_impl(n, s, memo);
}

BigCount tau2_closed(std::int64_t n) {
  require_positive(n, kMaxFactorialN, "tau2_closed");
  if (n == 1) return 0;
  std::int64_t m = n / 2;
  if (n % 2 == 1) return BigCount(m - 1) * (m - 1);
  return BigCount(m - 1) * (m - 2);
}

std::int64_t beta(std::int64_t n, BetaMethod method) {
  require_positive(n, kMaxIndexN, "beta");
  if (method == BetaMethod::decomposition) return beta_decomposition(n);
  std::int64_t total = 0;
  for (std::int64_t p = 2; p <= n; p *= 2) total += n / p;
  return total;
}

BigCount catalan(std::int64_t n) {
  if (n < 0) throw std::domain_error("catalan: n must be >= 0");
  return exact_quotient(binomial(2 * n, n), n + 1, "catalan");
}

std::vector<std::vector<BigCount>> tau_table(std::int64_t max_n) {
  require_positive(max_n, kMaxFactorialN, "tau_table");
  std::vector<std::vector<BigCount>> rows;
  rows.reserve(static_cast<std::size_t>(max_n));
  for (std::int64_t n = 1; n <= max_n; ++n) {
    std::vector<BigCount> row;
    for (std::int64_t s = 1; s <= n - 1; ++s) row.push_back(tau(n, s));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sumtrees
