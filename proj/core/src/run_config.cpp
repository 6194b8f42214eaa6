#include "lfl/run_config.hpp"

namespace lfl {

double InitLaw::second_moment(std::size_t d) const {
  if (kind == Kind::kPoint) return squared_norm(position);
  return static_cast<double>(d) * var + mean * mean;
}

double InitLaw::fourth_moment(std::size_t d) const {
  if (kind == Kind::kPoint) {
    const double s = squared_norm(position);
    return s * s;
  }
  // E||x||^4 for x ~ N(mean*e1, var*I): with s = ||x||^2,
  // E[s^2] = Var(s) + (E s)^2, Var(s) = 2 d var^2 + 4 var mean^2.
  const double dd = static_cast<double>(d);
  const double es = dd * var + mean * mean;
  return 2.0 * dd * var * var + 4.0 * var * mean * mean + es * es;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kLmc: return "lmc";
    case Variant::kSgLmc: return "sg_lmc";
    case Variant::kGsLmc: return "gs_lmc";
    case Variant::kVrLmc: return "vr_lmc";
    case Variant::kAveragedLmc: return "averaged_lmc";
  }
  return "unknown";
}

}  // namespace lfl
