#include "wturan/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>

#include "wturan/errors.hpp"

namespace wturan {

Rat frac(long num, long den) {
  if (den == 0) throw parse_error("fraction with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& s) {
  // strict shape: [+-]digits[/digits]
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (digits == 0) throw parse_error("bad rational '" + s + "'");
  if (i < s.size()) {
    if (s[i] != '/') throw parse_error("bad rational '" + s + "'");
    ++i;
    digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0 || i != s.size()) throw parse_error("bad rational '" + s + "'");
  }
  Rat r;
  if (r.set_str(s, 10) != 0) throw parse_error("bad rational '" + s + "'");
  if (r.get_den() == 0) throw parse_error("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string fmt_rat(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string fmt_rat_approx(const Rat& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", r.get_d());
  return fmt_rat(r) + " (~" + buf + ")";
}

Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Rat best_approx(const Rat& x, const Int& max_den) {
  if (max_den < 1) throw parse_error("denominator limit must be >= 1");
  if (x.get_den() <= max_den) return x;
  // Convergents h/kk of the continued fraction; when the next denominator
  // would overshoot, the answer is either the last convergent or the best
  // semiconvergent, whichever is closer.
  Int h0(1), k0(0);  // h_{-1}/k_{-1}
  Rat rest = x;
  Int a = floor_rat(rest);
  Int h1(a), k1(1);
  rest -= Rat(a);
  while (rest != 0) {
    rest = 1 / rest;
    a = floor_rat(rest);
    rest -= Rat(a);
    Int h2 = a * h1 + h0;
    Int k2 = a * k1 + k0;
    if (k2 > max_den) {
      Int t = (max_den - k0) / k1;
      Rat semi(t * h1 + h0, t * k1 + k0);
      semi.canonicalize();
      Rat conv(h1, k1);
      conv.canonicalize();
      Rat ds = abs(semi - x), dc = abs(conv - x);
      return ds < dc ? semi : conv;
    }
    h0 = std::move(h1);
    k0 = std::move(k1);
    h1 = std::move(h2);
    k1 = std::move(k2);
  }
  Rat res(h1, k1);
  res.canonicalize();
  return res;  // expansion ended within the limit
}

Rat round_to_denominator(double x, const Int& max_den) {
  if (!std::isfinite(x)) throw parse_error("non-finite value");
  return best_approx(Rat(x), max_den);
}

Int lcm_denominators(const std::vector<Rat>& vals) {
  Int l(1);
  for (const Rat& v : vals) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
  return l;
}

}  // namespace wturan
