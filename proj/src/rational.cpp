#include "leflab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace leflab {

Rational rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  // Accepted grammar: '-'? digits ('/' '-'? digits)?  with nonzero denominator.
  const auto bad = [&]() {
    return std::invalid_argument("malformed rational '" + text + "'");
  };
  std::size_t pos = 0;
  const auto scan_int = [&]() {
    if (pos < text.size() && text[pos] == '-') ++pos;
    std::size_t digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      ++digits;
    }
    if (digits == 0) throw bad();
  };
  scan_int();
  if (pos < text.size()) {
    if (text[pos] != '/') throw bad();
    ++pos;
    scan_int();
    if (pos != text.size()) throw bad();
  }
  Rational q;
  if (q.set_str(text, 10) != 0) throw bad();
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::optional<Rational> rational_sqrt(const Rational& value) {
  if (value < 0) return std::nullopt;
  const mpz_class num = value.get_num();
  const mpz_class den = value.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class num_root, den_root;
  mpz_sqrt(num_root.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(den_root.get_mpz_t(), den.get_mpz_t());
  Rational root(num_root, den_root);
  root.canonicalize();
  return root;
}

}  // namespace leflab
