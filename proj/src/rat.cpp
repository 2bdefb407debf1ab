#include "onx/rat.hpp"

#include <cctype>

#include "onx/error.hpp"

namespace onx {

namespace {

bool is_integer_token(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& s) {
  auto bad = [&](const char* why) {
    throw invalid_input("bad rational literal",
                        {{"literal", s}, {"why", why}});
  };
  std::string num = s, den;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
    if (den.find('/') != std::string::npos) bad("multiple slashes");
    if (!is_integer_token(den)) bad("denominator not an integer");
  }
  if (!is_integer_token(num)) bad("numerator not an integer");
  BigInt p(num);
  BigInt q = den.empty() ? BigInt(1) : BigInt(den);
  if (q == 0) bad("zero denominator");
  return Rat(p, q);  // cpp_rational normalizes sign and gcd
}

std::string rat_to_string(const Rat& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) {
    out += '/';
    out += denominator(r).str();
  }
  return out;
}

}  // namespace onx
