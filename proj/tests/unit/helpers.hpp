#pragma once

#include "supermech/jet_geometry.hpp"

namespace helpers {

using namespace supermech;

// q even, theta odd, charts up to order 6.
struct Super {
  Signature sig{{"q"}, {"theta"}};
  Chart chart{sig, 6};
  SuperExpr q(int j) const { return chart("q", j); }
  SuperExpr t(int j) const { return chart("theta", j); }
  Generator Q(int j) const { return chart.generator("q", j); }
  Generator T(int j) const { return chart.generator("theta", j); }
};

inline SuperExpr half(const SuperExpr& e) { return e.scaled(Rational(1, 2)); }

}  // namespace helpers
