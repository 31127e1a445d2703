#include "fuzzymark/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fuzzymark/error.hpp"

namespace fuzzymark {
namespace {

using Json = nlohmann::ordered_json;

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ParameterError("unknown key '" + key + "' in " + where);
  }
}

MembershipFunction mf_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ParameterError(where + " must be [a, b, c]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

TermSet terms_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParameterError(where + " must map low/medium/high to [a, b, c]");
  reject_unknown(j, {"low", "medium", "high"}, where);
  TermSet set;
  for (Term t : {Term::kLow, Term::kMedium, Term::kHigh}) {
    const std::string name(term_name(t));
    if (!j.contains(name)) throw ParameterError(where + " is missing term '" + name + "'");
    set[static_cast<std::size_t>(t)] = mf_from_json(j.at(name), where + "." + name);
  }
  return set;
}

Json terms_to_json(const TermSet& set) {
  Json j = Json::object();
  for (Term t : {Term::kLow, Term::kMedium, Term::kHigh}) {
    const auto& mf = set[static_cast<std::size_t>(t)];
    j[std::string(term_name(t))] = {mf.a, mf.b, mf.c};
  }
  return j;
}

FuzzySystem fuzzy_from_json(const Json& j) {
  reject_unknown(j, {"input", "output", "rules"}, "fuzzy");
  std::vector<FuzzyRule> rules;
  for (const auto& r : j.at("rules")) {
    if (!r.is_array() || r.size() != 2) throw ParameterError("fuzzy rule must be [antecedent, consequent]");
    rules.push_back({parse_term(r[0].get<std::string>()), parse_term(r[1].get<std::string>())});
  }
  return FuzzySystem(terms_from_json(j.at("input"), "fuzzy.input"),
                     terms_from_json(j.at("output"), "fuzzy.output"), std::move(rules));
}

Json fuzzy_to_json(const FuzzySystem& fs) {
  Json rules = Json::array();
  for (const auto& r : fs.rules()) {
    rules.push_back({std::string(term_name(r.antecedent)), std::string(term_name(r.consequent))});
  }
  return Json{{"input", terms_to_json(fs.input_terms())},
              {"output", terms_to_json(fs.output_terms())},
              {"rules", rules}};
}

std::uint64_t key_from_json(const Json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t used = 0;
    try {
      const unsigned long long v = std::stoull(s, &used, 0);
      if (used == s.size() && !s.empty() && s[0] != '-') return v;
    } catch (const std::logic_error&) {
    }
  }
  throw ParameterError("key must be an unsigned 64-bit integer");
}

void embed_from_json(const Json& j, BenchConfig& cfg) {
  reject_unknown(j, {"q", "key", "band", "window", "key_offset", "alpha_min", "alpha_max"}, "embed");
  EmbedParams& p = cfg.params;
  if (j.contains("q")) p.q = j.at("q").get<double>();
  if (j.contains("key")) {
    p.key = key_from_json(j.at("key"));
    cfg.key_given = true;
  }
  if (j.contains("band")) p.band = parse_band(j.at("band").get<std::string>());
  if (j.contains("window")) {
    const auto w = j.at("window").get<std::int64_t>();
    if (w < 1) throw ParameterError("embed.window must be >= 1");
    p.window = static_cast<std::size_t>(w);
  }
  if (j.contains("key_offset")) p.key_offset = j.at("key_offset").get<std::int64_t>();
  const bool has_min = j.contains("alpha_min");
  const bool has_max = j.contains("alpha_max");
  if (has_min != has_max) throw ParameterError("embed.alpha_min and embed.alpha_max go together");
  if (has_min) p.alpha_bounds = AlphaBounds{j.at("alpha_min").get<double>(), j.at("alpha_max").get<double>()};
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  if (path.is_absolute() || base.empty()) return path;
  return base / path;
}

}  // namespace

std::vector<AttackSpec> default_attack_grid() {
  std::vector<AttackSpec> grid;
  grid.push_back({AttackKind::kJpeg, 10});
  grid.push_back({AttackKind::kMedian, 3});
  for (double f : {0.05, 0.15, 0.25, 0.35}) grid.push_back({AttackKind::kCrop, f});
  std::uint64_t seed = 1;
  for (double d : {0.05, 0.10, 0.15, 0.20}) grid.push_back({AttackKind::kSaltPepper, d, seed++});
  for (double deg : {4.0, 8.0, 12.0, 16.0}) grid.push_back({AttackKind::kRotation, deg});
  return grid;
}

BenchConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  BenchConfig cfg;
  cfg.attacks = default_attack_grid();
  try {
    const Json j = Json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    if (!j.is_object()) throw ParameterError("config must be a JSON object");
    reject_unknown(j, {"host", "watermark", "embed", "fuzzy", "attacks", "peak", "out", "formats",
                       "timing", "levels", "host_size", "watermark_size"},
                   "config");
    if (j.contains("levels") && j.at("levels").get<int>() != static_cast<int>(kEmbedLevels)) {
      throw ParameterError("only 3-level decompositions are supported");
    }
    if (j.contains("host")) cfg.host = resolve(base_dir, j.at("host").get<std::string>());
    if (j.contains("watermark")) cfg.watermark = resolve(base_dir, j.at("watermark").get<std::string>());
    if (j.contains("embed")) embed_from_json(j.at("embed"), cfg);
    if (j.contains("fuzzy")) cfg.fuzzy = fuzzy_from_json(j.at("fuzzy"));
    if (j.contains("attacks")) {
      cfg.attacks.clear();
      for (const auto& a : j.at("attacks")) cfg.attacks.push_back(parse_attack(a.get<std::string>()));
    }
    if (j.contains("peak")) {
      cfg.peak = j.at("peak").get<double>();
      if (cfg.peak != kPeak8Bit && cfg.peak != kPeakLegacy) throw ParameterError("peak must be 255 or 511");
    }
    if (j.contains("out")) cfg.out_dir = resolve(base_dir, j.at("out").get<std::string>());
    if (j.contains("formats")) {
      cfg.formats.clear();
      for (const auto& f : j.at("formats")) {
        const auto name = f.get<std::string>();
        if (name == "csv") cfg.formats.push_back(ReportFormat::kCsv);
        else if (name == "markdown") cfg.formats.push_back(ReportFormat::kMarkdown);
        else if (name == "dat") cfg.formats.push_back(ReportFormat::kDat);
        else throw ParameterError("unknown report format '" + name + "' (csv, markdown, dat)");
      }
    }
    if (j.contains("timing")) cfg.timing = j.at("timing").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

BenchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str(), path.parent_path());
  } catch (const ParameterError& e) {
    throw ParameterError(path.string() + ": " + e.what());
  }
}

std::string sidecar_json(const EmbedParams& params, const FuzzySystem& fs) {
  Json embed{{"q", params.q},
             {"band", std::string(band_name(params.band))},
             {"window", params.window},
             {"key_offset", params.key_offset}};
  if (params.alpha_bounds) {
    embed["alpha_min"] = params.alpha_bounds->min;
    embed["alpha_max"] = params.alpha_bounds->max;
  }
  const Json j{{"levels", kEmbedLevels},
               {"host_size", kHostSize},
               {"watermark_size", kMarkSide},
               {"embed", embed},
               {"fuzzy", fuzzy_to_json(fs)}};
  return j.dump(2) + "\n";
}

std::string fuzzy_json(const FuzzySystem& fs) { return fuzzy_to_json(fs).dump(2) + "\n"; }

}  // namespace fuzzymark
