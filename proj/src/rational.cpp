#include "qmatch/rational.hpp"

#include <boost/multiprecision/integer.hpp>
#include <cctype>

#include "qmatch/errors.hpp"

namespace qmatch {

std::string to_fraction_string(const Rational& r) {
  return rational_num(r).str() + "/" + rational_den(r).str();
}

namespace {

bool valid_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::size_t slash = text.find('/');
  const std::string num = text.substr(0, slash);
  if (!valid_integer_token(num))
    throw InputError("malformed rational '" + text + "'");
  if (slash == std::string::npos) return Rational(Integer(num));
  const std::string den = text.substr(slash + 1);
  if (!valid_integer_token(den))
    throw InputError("malformed rational '" + text + "'");
  const Integer d(den);
  if (d == 0) throw InputError("zero denominator in '" + text + "'");
  return Rational(Integer(num)) / Rational(d);
}

Integer denominator_lcm(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const Rational& v : values) l = boost::multiprecision::lcm(l, rational_den(v));
  return l;
}

}  // namespace qmatch
