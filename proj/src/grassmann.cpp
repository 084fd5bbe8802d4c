#include "supermech/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include "supermech/errors.hpp"

namespace supermech {

GrassmannValue::GrassmannValue(int n) : n_(n) {
  if (n < 0 || n > kMaxGrassmannGenerators) {
    throw DomainMismatch("Grassmann algebras support 0.." + std::to_string(kMaxGrassmannGenerators) +
                         " generators");
  }
  coeffs_.assign(std::size_t{1} << n, 0.0);
}

GrassmannValue GrassmannValue::scalar(int n, double c) {
  GrassmannValue out(n);
  out.coeffs_[0] = c;
  return out;
}

GrassmannValue GrassmannValue::generator(int n, int i, double c) {
  if (i < 1 || i > n) throw DomainMismatch("eta index out of range");
  GrassmannValue out(n);
  out.coeffs_[1u << (i - 1)] = c;
  return out;
}

GrassmannValue& GrassmannValue::operator+=(const GrassmannValue& other) {
  if (other.n_ != n_) throw DomainMismatch("Grassmann values over different algebras");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

GrassmannValue& GrassmannValue::operator-=(const GrassmannValue& other) {
  if (other.n_ != n_) throw DomainMismatch("Grassmann values over different algebras");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

GrassmannValue& GrassmannValue::operator*=(double c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

int merge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  int swaps = 0;
  for (unsigned rest = b; rest; rest &= rest - 1) {
    unsigned bit = rest & (~rest + 1);
    // generators of a that sit after this one must be passed
    swaps += std::popcount(a & ~((bit << 1) - 1));
  }
  return swaps % 2 ? -1 : 1;
}

GrassmannValue operator*(const GrassmannValue& a, const GrassmannValue& b) {
  if (a.n_ != b.n_) throw DomainMismatch("Grassmann values over different algebras");
  GrassmannValue out(a.n_);
  const unsigned size = static_cast<unsigned>(a.coeffs_.size());
  for (unsigned i = 0; i < size; ++i) {
    if (a.coeffs_[i] == 0.0) continue;
    for (unsigned j = 0; j < size; ++j) {
      if (b.coeffs_[j] == 0.0) continue;
      int sign = merge_sign(i, j);
      if (sign != 0) out.coeffs_[i | j] += sign * a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

double GrassmannValue::sup_norm() const {
  double m = 0.0;
  for (double x : coeffs_) m = std::max(m, std::abs(x));
  return m;
}

bool GrassmannValue::finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double x) { return std::isfinite(x); });
}

bool GrassmannValue::supported_on(Parity p) const {
  for (unsigned mask = 0; mask < coeffs_.size(); ++mask) {
    bool odd_subset = std::popcount(mask) % 2 == 1;
    if (coeffs_[mask] != 0.0 && odd_subset != is_odd(p)) return false;
  }
  return true;
}

namespace {

std::string describe(Generator g) {
  return std::string(is_odd(g.parity) ? "odd" : "even") + " coordinate #" + std::to_string(g.base) +
         " at order " + std::to_string(g.order);
}

const GrassmannValue& lookup(const NumericState& state, Generator g) {
  auto it = state.values.find(g);
  if (it == state.values.end()) throw MissingValue("no value for " + describe(g));
  if (!it->second.supported_on(g.parity)) {
    throw ParityViolation("value of " + describe(g) + " breaks the parity support rule");
  }
  return it->second;
}

}  // namespace

GrassmannValue evaluate(const SuperExpr& e, const NumericState& state) {
  GrassmannValue out(state.n);
  for (const auto& [m, c] : e.terms()) {
    GrassmannValue term = GrassmannValue::scalar(state.n, to_double(c));
    for (const auto& [g, exponent] : m.even()) {
      const GrassmannValue& value = lookup(state, g);
      for (int i = 0; i < exponent; ++i) term = term * value;
    }
    for (const auto& g : m.odd()) term = term * lookup(state, g);
    out += term;
  }
  return out;
}

namespace {

using Coordinates = std::vector<Generator>;

std::vector<GrassmannValue> velocity(const Dynamics& dynamics, const Coordinates& coords,
                                     const NumericState& state) {
  const int top = dynamics.order();
  std::vector<GrassmannValue> out;
  out.reserve(coords.size());
  for (const auto& x : coords) {
    if (x.order < top) {
      out.push_back(state.values.at(x.raised()));
      continue;
    }
    auto it = dynamics.forces().find(x.raised());
    out.push_back(it == dynamics.forces().end() ? GrassmannValue(state.n)
                                                 : evaluate(it->second, state));
  }
  return out;
}

NumericState advanced(const NumericState& base, const Coordinates& coords,
                      const std::vector<GrassmannValue>& rate, double h) {
  NumericState out = base;
  out.time += h;
  for (std::size_t i = 0; i < coords.size(); ++i) out.values.at(coords[i]) += rate[i] * h;
  return out;
}

double constraint_violation(const Dynamics& dynamics, const NumericState& state) {
  double worst = 0.0;
  for (const auto& [x, value] : dynamics.constraints()) {
    if (x.order > dynamics.order()) continue;
    worst = std::max(worst, (state.values.at(x) - evaluate(value, state)).sup_norm());
  }
  return worst;
}

}  // namespace

Trajectory integrate(const Dynamics& dynamics, NumericState s0, double dt, double t_end) {
  if (!(dt > 0.0)) throw DomainMismatch("integration step must be positive");
  if (!(t_end >= 0.0)) throw DomainMismatch("integration horizon must be non-negative");
  const Coordinates coords = dynamics.signature().coordinates(dynamics.order());
  for (const auto& x : coords) {
    auto [it, inserted] = s0.values.try_emplace(x, GrassmannValue(s0.n));
    if (it->second.generators() != s0.n) throw DomainMismatch("state mixes Grassmann algebras");
    if (!it->second.supported_on(x.parity)) {
      throw ParityViolation("initial value of " + dynamics.signature().name(x) +
                            " breaks the parity support rule");
    }
  }
  for (const auto& [x, value] : dynamics.constraints()) {
    if (x.order <= dynamics.order()) s0.values.at(x) = evaluate(value, s0);
  }

  Trajectory out;
  const long long steps = std::llround(t_end / dt);
  out.states.reserve(static_cast<std::size_t>(steps) + 1);
  out.states.push_back(s0);
  NumericState state = std::move(s0);
  for (long long step = 1; step <= steps; ++step) {
    auto k1 = velocity(dynamics, coords, state);
    auto k2 = velocity(dynamics, coords, advanced(state, coords, k1, dt / 2));
    auto k3 = velocity(dynamics, coords, advanced(state, coords, k2, dt / 2));
    auto k4 = velocity(dynamics, coords, advanced(state, coords, k3, dt));
    for (std::size_t i = 0; i < coords.size(); ++i) {
      GrassmannValue& value = state.values.at(coords[i]);
      value += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6);
      if (!value.finite()) {
        std::ostringstream msg;
        msg << "non-finite value for " << dynamics.signature().name(coords[i]) << " at step "
            << step << " (t = " << std::setprecision(6) << state.time + dt << ")";
        throw NumericBreakdown(msg.str());
      }
    }
    state.time = static_cast<double>(step) * dt;
    out.max_constraint_violation =
        std::max(out.max_constraint_violation, constraint_violation(dynamics, state));
    out.states.push_back(state);
  }
  return out;
}

std::vector<double> conservation_report(const Trajectory& trajectory,
                                        const std::vector<SuperExpr>& quantities) {
  std::vector<double> drift(quantities.size(), 0.0);
  if (trajectory.states.empty()) return drift;
  for (std::size_t q = 0; q < quantities.size(); ++q) {
    const GrassmannValue initial = evaluate(quantities[q], trajectory.states.front());
    for (const auto& state : trajectory.states) {
      drift[q] = std::max(drift[q], (evaluate(quantities[q], state) - initial).sup_norm());
    }
  }
  return drift;
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory, const Signature& signature) {
  out << "t\tcoordinate\tsubset\tcoefficient\n";
  out << std::setprecision(17);
  for (const auto& state : trajectory.states) {
    for (const auto& [x, value] : state.values) {
      for (unsigned mask = 0; mask < value.size(); ++mask) {
        if (value[mask] == 0.0) continue;
        out << state.time << '\t' << signature.name(x) << '\t' << mask << '\t' << value[mask]
            << '\n';
      }
    }
  }
}

}  // namespace supermech
