#include "mullat/integer.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "mullat/error.hpp"

namespace mullat {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Integer pollard_rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](Integer& v) {
      v = v * v + c;
      v %= n;
    };
    while (d == 1) {
      step(x);
      step(y);
      step(y);
      Integer diff = x - y;
      d = gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_into(Integer n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Integer parse_integer(std::string_view text) {
  text = trim(text);
  if (!valid_integer_text(text)) fail(ErrorKind::parse_error, "not an integer: '" + std::string(text) + "'");
  if (text.front() == '+') text.remove_prefix(1);
  return Integer(std::string(text));
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) fail(ErrorKind::parse_error, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const Rational& v) { return v.get_str(); }

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

bool is_prime(const Integer& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<unsigned, Integer> split_prime_power(Integer n, const Integer& p) {
  unsigned k = 0;
  while (n != 0 && mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    ++k;
  }
  return {k, n};
}

Integer strip_prime(const Integer& n, std::uint64_t p) {
  if (p == 0 || n == 0) return n;
  return split_prime_power(n, Integer(static_cast<unsigned long>(p))).second;
}

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n) {
  Integer m = abs(n);
  std::vector<Integer> primes;
  for (unsigned long d = 2; d < 1000 && d * d <= m; ++d) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      primes.emplace_back(d);
      m /= d;
    }
  }
  factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, unsigned>> out;
  for (const auto& q : primes) {
    if (!out.empty() && out.back().first == q)
      ++out.back().second;
    else
      out.emplace_back(q, 1);
  }
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> ds{1};
  for (const auto& [q, e] : factor_integer(n)) {
    std::size_t base = ds.size();
    Integer power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= q;
      for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * power);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

Integer pow(const Integer& base, unsigned exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational pow(const Rational& base, long exp) {
  unsigned e = static_cast<unsigned>(exp < 0 ? -exp : exp);
  Rational r(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
  if (exp < 0) {
    if (r == 0) fail(ErrorKind::zero_input, "zero to a negative power");
    r = 1 / r;
  }
  r.canonicalize();
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(ErrorKind::invalid_argument, "not invertible modulo " + m.get_str());
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool fits_int64(const Integer& v) {
  static const Integer lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
  static const Integer hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
  return v >= lo && v <= hi;
}

}  // namespace mullat
