#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace fuzzymark {

enum class Term : std::uint8_t { kLow = 0, kMedium = 1, kHigh = 2 };

std::string_view term_name(Term t);
Term parse_term(std::string_view name);

// Triangle with feet at a and c and peak at b. a == b or b == c gives a
// shoulder, so the default partition's end terms are half-triangles.
struct MembershipFunction {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x) const;
  friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;
};

struct FuzzyRule {
  Term antecedent;
  Term consequent;
  friend bool operator==(const FuzzyRule&, const FuzzyRule&) = default;
};

using TermSet = std::array<MembershipFunction, 3>;  // indexed by Term

// Single-input Mamdani system: normalized texture sensitivity in [0, 1] maps
// to an embedding strength. Immutable once built.
class FuzzySystem {
 public:
  FuzzySystem(TermSet input_terms, TermSet output_terms, std::vector<FuzzyRule> rules);

  // low=(0,0,.5) medium=(0,.5,1) high=(.5,1,1) on the input; the output terms
  // peak at alpha_min, the midpoint and alpha_max; rules map low->low,
  // medium->medium, high->high.
  static FuzzySystem standard(double alpha_min, double alpha_max);

  // standard() with bounds [q/8, 0.45 q].
  static FuzzySystem for_step(double q);

  const TermSet& input_terms() const { return input_; }
  const TermSet& output_terms() const { return output_; }
  const std::vector<FuzzyRule>& rules() const { return rules_; }

  // Smallest and largest consequent peak reachable through the rule base.
  double alpha_min() const;
  double alpha_max() const;

  friend bool operator==(const FuzzySystem&, const FuzzySystem&) = default;

 private:
  TermSet input_;
  TermSet output_;
  std::vector<FuzzyRule> rules_;
};

// Membership of x (clamped to [0, 1]) in each input term, in Term order.
std::array<double, 3> fuzzify(const FuzzySystem& sys, double x);

// Weighted average of consequent peaks by rule firing strength:
//   alpha = sum(w_i * z_i) / sum(w_i),  alpha_min() when nothing fires.
double infer(const FuzzySystem& sys, double x);

struct TextureSensitivity {
  std::size_t raw = 0;      // positions whose quantized value is nonzero
  double normalized = 0.0;  // raw / window length
};

// Counts j with round((coeffs[j] + key_offset) / q) != 0. Rounding is half
// away from zero.
TextureSensitivity texture_sensitivity(std::span<const double> coeffs, double q,
                                       std::int64_t key_offset = 0);

}  // namespace fuzzymark
