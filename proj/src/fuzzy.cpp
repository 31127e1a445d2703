#include "fuzzymark/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fuzzymark/error.hpp"

namespace fuzzymark {

std::string_view term_name(Term t) {
  switch (t) {
    case Term::kLow: return "low";
    case Term::kMedium: return "medium";
    case Term::kHigh: return "high";
  }
  return "?";
}

Term parse_term(std::string_view name) {
  if (name == "low") return Term::kLow;
  if (name == "medium") return Term::kMedium;
  if (name == "high") return Term::kHigh;
  throw ParameterError("unknown linguistic term '" + std::string(name) +
                       "' (expected low, medium or high)");
}

double MembershipFunction::operator()(double x) const {
  if (x < a || x > c) return 0.0;
  if (x == b) return 1.0;
  if (x < b) return (x - a) / (b - a);
  return (c - x) / (c - b);
}

FuzzySystem::FuzzySystem(TermSet input_terms, TermSet output_terms, std::vector<FuzzyRule> rules)
    : input_(input_terms), output_(output_terms), rules_(std::move(rules)) {
  if (rules_.empty()) throw ParameterError("fuzzy rule base is empty");
  auto check = [](const TermSet& set, const char* which) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      const auto& mf = set[i];
      if (!(mf.a <= mf.b && mf.b <= mf.c) || !std::isfinite(mf.a) || !std::isfinite(mf.c)) {
        throw ParameterError(std::string(which) + " term '" +
                             std::string(term_name(static_cast<Term>(i))) +
                             "' needs finite breakpoints a <= b <= c");
      }
    }
  };
  check(input_, "input");
  check(output_, "output");
}

FuzzySystem FuzzySystem::standard(double alpha_min, double alpha_max) {
  if (!(alpha_min <= alpha_max)) {
    throw ParameterError("strength bounds must satisfy alpha_min <= alpha_max");
  }
  const double mid = 0.5 * (alpha_min + alpha_max);
  const TermSet input{{{0.0, 0.0, 0.5}, {0.0, 0.5, 1.0}, {0.5, 1.0, 1.0}}};
  const TermSet output{{{alpha_min, alpha_min, mid}, {alpha_min, mid, alpha_max},
                        {mid, alpha_max, alpha_max}}};
  return FuzzySystem(input, output,
                     {{Term::kLow, Term::kLow}, {Term::kMedium, Term::kMedium},
                      {Term::kHigh, Term::kHigh}});
}

FuzzySystem FuzzySystem::for_step(double q) { return standard(0.5 * q / 4.0, 0.9 * q / 2.0); }

double FuzzySystem::alpha_min() const {
  double lo = output_[static_cast<std::size_t>(rules_.front().consequent)].b;
  for (const auto& r : rules_) lo = std::min(lo, output_[static_cast<std::size_t>(r.consequent)].b);
  return lo;
}

double FuzzySystem::alpha_max() const {
  double hi = output_[static_cast<std::size_t>(rules_.front().consequent)].b;
  for (const auto& r : rules_) hi = std::max(hi, output_[static_cast<std::size_t>(r.consequent)].b);
  return hi;
}

std::array<double, 3> fuzzify(const FuzzySystem& sys, double x) {
  x = std::clamp(x, 0.0, 1.0);
  const auto& in = sys.input_terms();
  return {in[0](x), in[1](x), in[2](x)};
}

double infer(const FuzzySystem& sys, double x) {
  const auto mu = fuzzify(sys, x);
  double num = 0.0;
  double den = 0.0;
  for (const auto& rule : sys.rules()) {
    const double w = mu[static_cast<std::size_t>(rule.antecedent)];
    const double z = sys.output_terms()[static_cast<std::size_t>(rule.consequent)].b;
    num += w * z;
    den += w;
  }
  if (den <= 0.0) return sys.alpha_min();
  return num / den;
}

TextureSensitivity texture_sensitivity(std::span<const double> coeffs, double q,
                                       std::int64_t key_offset) {
  if (!(q > 0.0)) throw ParameterError("quantization step must be positive");
  if (coeffs.empty()) throw ParameterError("texture window is empty");
  const auto offset = static_cast<double>(key_offset);
  TextureSensitivity s;
  for (double t : coeffs) {
    if (std::round((t + offset) / q) != 0.0) ++s.raw;
  }
  s.normalized = static_cast<double>(s.raw) / static_cast<double>(coeffs.size());
  return s;
}

}  // namespace fuzzymark
