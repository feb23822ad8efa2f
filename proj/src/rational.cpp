#include "segtri/rational.hpp"

#include <cctype>

namespace segtri {

static bool parse_integer(const std::string& s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  out = mpz_class(s, 10);
  return true;
}

std::optional<Rat> parse_rational(const std::string& text) {
  mpz_class num, den = 1;
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!parse_integer(text, num)) return std::nullopt;
  } else {
    if (!parse_integer(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_integer(text.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

std::string to_decimal(const Rat& r, int digits) {
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpz_class num = r.get_num() * scale * 2 + r.get_den() * (r < 0 ? -1 : 1);
  mpz_class q = num / (r.get_den() * 2);  // rounded numerator at 10^-digits
  bool neg = q < 0;
  mpz_class a = abs(q);
  std::string frac = mpz_class(a % scale).get_str();
  frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
  std::string out = mpz_class(a / scale).get_str();
  if (digits > 0) out += "." + frac;
  return neg && (a != 0) ? "-" + out : out;
}

bool vec_equal(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool vec_less(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace segtri
