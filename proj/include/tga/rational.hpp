#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace tga {

// Exact time values. Region membership is decided on these, never on floats.
using Time = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline Time make_time(std::int64_t num, std::int64_t den = 1) { return Time(num, den); }

BigInt floor_of(const Time& t);
Time frac_of(const Time& t);

// Always "p/q", including integers ("3/1"), so traces parse uniformly.
std::string to_pq(const Time& t);

// Accepts "p/q", "p" or a finite decimal such as "0.25". Throws std::invalid_argument.
Time parse_time(std::string_view text);

}  // namespace tga
