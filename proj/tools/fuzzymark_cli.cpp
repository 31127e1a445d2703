// fuzzymark: embed, extract, attack, evaluate and bench commands.
//
// Exit codes: 0 success, 1 usage error, 2 processing error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "fuzzymark/attacks.hpp"
#include "fuzzymark/bench.hpp"
#include "fuzzymark/codec.hpp"
#include "fuzzymark/config.hpp"
#include "fuzzymark/error.hpp"
#include "fuzzymark/image_io.hpp"
#include "fuzzymark/metrics.hpp"

namespace fs = std::filesystem;
using namespace fuzzymark;

namespace {

constexpr int kUsageError = 1;
constexpr int kProcessingError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string host;
  std::string watermark;
  std::string image;
  std::string reference;
  std::string attack;
  std::string out = ".";
  std::optional<std::uint64_t> key;
  std::optional<double> q;
  std::optional<std::string> band;
  std::optional<std::size_t> window;
  std::optional<double> peak;
  bool timing = false;
};

// A path with an image extension names the file; anything else is a directory.
fs::path output_file(const std::string& out, const char* default_name) {
  const fs::path p(out);
  const auto ext = p.extension().string();
  if (ext == ".png" || ext == ".bmp") {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
  }
  fs::create_directories(p);
  return p / default_name;
}

BenchConfig base_config(const Options& o) {
  BenchConfig cfg = o.config.empty() ? BenchConfig{} : load_config(o.config);
  if (o.config.empty()) cfg.attacks = default_attack_grid();
  if (!o.host.empty()) cfg.host = o.host;
  if (!o.watermark.empty()) cfg.watermark = o.watermark;
  if (o.key) {
    cfg.params.key = *o.key;
    cfg.key_given = true;
  }
  if (o.q) {
    cfg.params.q = *o.q;
  }
  if (o.band) cfg.params.band = parse_band(*o.band);
  if (o.window) cfg.params.window = *o.window;
  if (o.peak) {
    if (*o.peak != kPeak8Bit && *o.peak != kPeakLegacy) throw UsageError("--peak must be 255 or 511");
    cfg.peak = *o.peak;
  }
  if (o.timing) cfg.timing = true;
  return cfg;
}

void require(bool ok, const char* what) {
  if (!ok) throw UsageError(what);
}

std::string db(double v) { return std::isinf(v) ? "inf" : fmt::format("{:.4f}", v); }

int cmd_embed(const Options& o) {
  const BenchConfig cfg = base_config(o);
  require(!cfg.host.empty(), "embed needs --host (or 'host' in --config)");
  require(!cfg.watermark.empty(), "embed needs --watermark (or 'watermark' in --config)");
  require(cfg.key_given, "embed needs --key (or embed.key in --config)");
  const FuzzySystem fsys = cfg.fuzzy_system();
  check_decodable(cfg.params, fsys);

  const RgbImage host = prepare_host(load_image(cfg.host));
  const WatermarkBits wm = load_watermark(cfg.watermark);
  const RgbImage marked = embed_image(host, wm, cfg.params, fsys);

  const fs::path image_path = output_file(o.out, "watermarked.png");
  fs::path sidecar = image_path;
  sidecar.replace_extension(".params.json");
  save_image(image_path, marked);
  {
    std::ofstream f(sidecar);
    if (!f) throw IoError("cannot write " + sidecar.string());
    f << sidecar_json(cfg.params, fsys);
  }
  const QualityReport q = compare_images(host, marked, cfg.peak);
  fmt::print("wrote {}\nwrote {}\nmse {:.6f}\npsnr_db {} (R={:g})\nncc_image {:.6f}\n", image_path.string(),
             sidecar.string(), q.mse, db(q.psnr_db), cfg.peak, q.ncc);
  return 0;
}

int cmd_extract(const Options& o) {
  const BenchConfig cfg = base_config(o);
  require(!o.image.empty(), "extract needs --image");
  require(cfg.key_given, "extract needs --key");
  const RgbImage img = load_image(o.image);
  std::optional<WatermarkBits> reference;
  const std::string ref_path = !o.reference.empty() ? o.reference : cfg.watermark.string();
  if (!ref_path.empty()) reference = load_watermark(ref_path);

  const ExtractionResult r = extract_image(img, cfg.params, cfg.fuzzy_system(), reference);
  const fs::path out = output_file(o.out, "extracted.png");
  save_gray(out, watermark_to_plane(r.bits));
  fmt::print("wrote {}\n", out.string());
  if (r.ber) fmt::print("ber {:.6f}\nncc_watermark {:.6f}\n", *r.ber, *r.ncc_vs_original);
  return 0;
}

int cmd_attack(const Options& o) {
  require(!o.image.empty(), "attack needs --image");
  require(!o.attack.empty(), "attack needs --attack <kind:intensity[:opt=value]>");
  AttackSpec spec;
  try {
    spec = parse_attack(o.attack);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  const double peak = o.peak.value_or(kPeak8Bit);
  const RgbImage img = load_image(o.image);
  const RgbImage attacked = apply_attack(img, spec);
  const fs::path out = output_file(o.out, "attacked.png");
  save_image(out, attacked);
  const QualityReport q = compare_images(img, attacked, peak);
  fmt::print("wrote {}\nattack {}\nmse {:.6f}\npsnr_db {} (R={:g})\n", out.string(), format_attack(spec), q.mse,
             db(q.psnr_db), peak);
  return 0;
}

int cmd_evaluate(const Options& o) {
  require(!o.reference.empty() && !o.image.empty(), "evaluate needs --reference and --image");
  const BenchConfig cfg = base_config(o);
  const RgbImage ref = load_image(o.reference);
  const RgbImage img = load_image(o.image);
  const QualityReport q = compare_images(ref, img, cfg.peak);
  fmt::print("mse {:.6f}\npsnr_db {} (R={:g})\nncc_image {:.6f}\n", q.mse, db(q.psnr_db), cfg.peak, q.ncc);
  if (cfg.key_given && !cfg.watermark.empty()) {
    const auto r = extract_image(img, cfg.params, cfg.fuzzy_system(), load_watermark(cfg.watermark));
    fmt::print("ber {:.6f}\nncc_watermark {:.6f}\n", *r.ber, *r.ncc_vs_original);
  }
  return 0;
}

int cmd_bench(const Options& o, bool out_given) {
  BenchConfig cfg = base_config(o);
  if (out_given || o.config.empty()) cfg.out_dir = o.out;
  require(!cfg.host.empty() && !cfg.watermark.empty(), "bench needs a host and a watermark");
  require(cfg.key_given, "bench needs --key (or embed.key in --config)");
  const RgbImage host = load_image(cfg.host);
  const WatermarkBits wm = load_watermark(cfg.watermark);
  const BenchReport report = run_bench(host, wm, cfg);
  write_report_files(cfg.out_dir, report, cfg.formats);
  write_markdown(std::cout, report);
  std::size_t failed = 0;
  for (const auto& c : report.cells) failed += c.error ? 1 : 0;
  fmt::print("\n{} cells, {} failed; reports in {}\n", report.cells.size(), failed, cfg.out_dir.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blind DWT watermarking with fuzzy strength control"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON config or embed sidecar");
    sub->add_option("--key", o.key, "secret key (unsigned 64-bit)");
    sub->add_option("--q", o.q, "quantization step");
    sub->add_option("--band", o.band, "level-3 band: lh3, hl3 or hh3");
    sub->add_option("--window", o.window, "texture window length");
    sub->add_option("--peak", o.peak, "PSNR peak value: 255 or 511");
  };

  auto* embed = app.add_subcommand("embed", "embed a 64x64 watermark into a host image");
  add_common(embed);
  embed->add_option("--host", o.host, "host image (PNG/BMP)");
  embed->add_option("--watermark", o.watermark, "64x64 watermark bitmap (PNG/BMP/PGM)");
  embed->add_option("--out", o.out, "output directory or .png/.bmp file");

  auto* extract = app.add_subcommand("extract", "recover the watermark from an image");
  add_common(extract);
  extract->add_option("--image", o.image, "watermarked (possibly attacked) 512x512 image")->required();
  extract->add_option("--reference", o.reference, "original watermark, for BER/NCC");
  extract->add_option("--out", o.out, "output directory or .png/.bmp file");

  auto* attack = app.add_subcommand("attack", "apply one attack to an image");
  attack->add_option("--image", o.image, "input image")->required();
  attack->add_option("--attack", o.attack,
                     "jpeg:Q | median:W | crop:F[:anchor=A] | sp:D[:seed=N] | rot:DEG")
      ->required();
  attack->add_option("--peak", o.peak, "PSNR peak value: 255 or 511");
  attack->add_option("--out", o.out, "output directory or .png/.bmp file");

  auto* evaluate = app.add_subcommand("evaluate", "compare two images, optionally extract");
  add_common(evaluate);
  evaluate->add_option("--reference", o.reference, "reference image")->required();
  evaluate->add_option("--image", o.image, "test image")->required();
  evaluate->add_option("--watermark", o.watermark, "original watermark, enables extraction with --key");

  auto* bench = app.add_subcommand("bench", "run the attack grid and write reports");
  add_common(bench);
  bench->add_option("--host", o.host, "host image");
  bench->add_option("--watermark", o.watermark, "watermark bitmap");
  auto* bench_out = bench->add_option("--out", o.out, "report directory");
  bench->add_flag("--timing", o.timing, "fill the ms column with wall-clock times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*embed) return cmd_embed(o);
    if (*extract) return cmd_extract(o);
    if (*attack) return cmd_attack(o);
    if (*evaluate) return cmd_evaluate(o);
    if (*bench) return cmd_bench(o, bench_out->count() > 0);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProcessingError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProcessingError;
  }
  return kUsageError;
}
