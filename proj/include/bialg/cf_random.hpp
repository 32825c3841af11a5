#ifndef BIALG_CF_RANDOM_HPP
#define BIALG_CF_RANDOM_HPP

#include <array>
#include <random>

#include "cf_text.hpp"

namespace bialg {

// random real function: polynomial, real exponential and trig pieces in one or two coordinates
inline CF random_cf(std::mt19937& rng) {
  std::uniform_int_distribution<int> coord(0, 3), pw(0, 2), kind(0, 3), num(-4, 4), den(1, 3);
  CF f;
  int terms = 1 + coord(rng) % 3;
  for (int t = 0; t < terms; ++t) {
    CF piece(rat(num(rng), den(rng)));
    size_t c = static_cast<size_t>(coord(rng));
    for (int p = pw(rng); p > 0; --p) piece *= CF::coordinate(c);
    size_t c2 = static_cast<size_t>(coord(rng));
    Rational rate = rat(num(rng), den(rng));
    switch (kind(rng)) {
      case 1: piece *= CF::exp_rate(c2, rate); break;
      case 2: piece *= parse_cf("cos(" + to_string(rate) + "*x" + std::to_string(c2 + 1) + ")"); break;
      case 3: piece *= parse_cf("sinh(" + to_string(rate) + "*x" + std::to_string(c2 + 1) + ")"); break;
      default: break;
    }
    f += piece;
  }
  return f;
}

inline std::array<double, kCoords> random_point(std::mt19937& rng, double r = 1.0) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace bialg

#endif  // BIALG_CF_RANDOM_HPP
