#include "tga/rational.hpp"

#include <stdexcept>

namespace tga {

BigInt floor_of(const Time& t) {
  BigInt n = boost::multiprecision::numerator(t);
  BigInt d = boost::multiprecision::denominator(t);
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

Time frac_of(const Time& t) { return t - Time(floor_of(t)); }

std::string to_pq(const Time& t) {
  return boost::multiprecision::numerator(t).str() + "/" + boost::multiprecision::denominator(t).str();
}

namespace {

BigInt parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  for (char c : s)
    if (c < '0' || c > '9') throw std::invalid_argument("bad digit in '" + std::string(s) + "'");
  return BigInt(std::string(s));
}

}  // namespace

Time parse_time(std::string_view text) {
  bool neg = false;
  if (!text.empty() && text.front() == '-') {
    neg = true;
    text.remove_prefix(1);
  }
  Time r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt d = parse_int(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator");
    r = Time(parse_int(text.substr(0, slash)), d);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto ip = text.substr(0, dot);
    auto fp = text.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt whole = ip.empty() ? BigInt(0) : parse_int(ip);
    BigInt part = fp.empty() ? BigInt(0) : parse_int(fp);
    r = Time(whole * scale + part, scale);
  } else {
    r = Time(parse_int(text));
  }
  return neg ? Time(-r) : r;
}

}  // namespace tga
