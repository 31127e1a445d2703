#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fuzzymark/attacks.hpp"
#include "fuzzymark/codec.hpp"
#include "fuzzymark/fuzzy.hpp"
#include "fuzzymark/metrics.hpp"

namespace fuzzymark {

enum class ReportFormat { kCsv, kMarkdown, kDat };

// Everything a run needs. Loaded from a JSON file whose keys mirror these
// fields; see assets/bench.json for an annotated example.
struct BenchConfig {
  std::filesystem::path host;
  std::filesystem::path watermark;
  EmbedParams params;
  bool key_given = false;
  std::optional<FuzzySystem> fuzzy;  // empty: default_fuzzy(params)
  std::vector<AttackSpec> attacks;
  double peak = kPeak8Bit;
  std::filesystem::path out_dir = "bench_out";
  std::vector<ReportFormat> formats{ReportFormat::kCsv, ReportFormat::kMarkdown};
  bool timing = false;

  FuzzySystem fuzzy_system() const { return fuzzy ? *fuzzy : default_fuzzy(params); }
};

// Default grid: JPEG Q=10, median 3x3, crop 5/15/25/35 %, salt & pepper
// 5/10/15/20 % (seeds 1..4), rotation 4/8/12/16 degrees.
std::vector<AttackSpec> default_attack_grid();

// Relative paths inside the file resolve against the file's directory.
// Missing keys keep their defaults; unknown keys are rejected.
BenchConfig load_config(const std::filesystem::path& path);
BenchConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});

// Parameter record written next to a watermarked image. Holds everything
// extraction needs except the key; readable by load_config.
std::string sidecar_json(const EmbedParams& params, const FuzzySystem& fs);

std::string fuzzy_json(const FuzzySystem& fs);

}  // namespace fuzzymark
