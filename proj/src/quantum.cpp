#include "nsbox/quantum.hpp"

#include <algorithm>

namespace nsbox {

RationalizedBox rationalize_table(const Scenario& scenario, const std::vector<double>& table,
                                  double tolerance, long denominator_cap) {
  if (table.size() != scenario.table_size()) throw StructuralError("probability table has the wrong size");
  const Integer cap(denominator_cap);
  std::vector<Rational> exact(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double p = table[i];
    if (!std::isfinite(p)) throw DomainError("non-finite probability");
    if (p < -tolerance) throw DomainError("negative probability " + std::to_string(p));
    exact[i] = limit_denominator(Rational(std::clamp(p, 0.0, 1.0)), cap);
    if (std::abs(to_double(exact[i]) - p) > tolerance) {
      throw DomainError("probability " + std::to_string(p) + " has no approximation within tolerance");
    }
  }

  const std::size_t slice = scenario.outputs_a.size() * scenario.outputs_b.size();
  for (std::size_t start = 0; start < exact.size(); start += slice) {
    Rational sum = 0;
    for (std::size_t i = start; i < start + slice; ++i) sum += exact[i];
    if (sum == 0) throw DomainError("probability slice rationalizes to zero");
    for (std::size_t i = start; i < start + slice; ++i) exact[i] /= sum;
  }

  double max_error = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    max_error = std::max(max_error, std::abs(to_double(exact[i]) - table[i]));
  }
  return RationalizedBox{BipartiteBox(scenario, std::move(exact)), max_error};
}

}  // namespace nsbox
