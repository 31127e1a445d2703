#include "fuzzymark/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <thread>

#include <fmt/core.h>
#include <fmt/ostream.h>

#include "fuzzymark/codec.hpp"
#include "fuzzymark/error.hpp"
#include "fuzzymark/metrics.hpp"

namespace fuzzymark {
namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.6f}", v);
}

std::string attack_keyword(AttackKind kind) {
  switch (kind) {
    case AttackKind::kNone: return "none";
    case AttackKind::kJpeg: return "jpeg";
    case AttackKind::kMedian: return "median";
    case AttackKind::kCrop: return "crop";
    case AttackKind::kSaltPepper: return "sp";
    case AttackKind::kRotation: return "rot";
  }
  return "?";
}

std::string intensity_value(const AttackSpec& a) {
  if (a.kind == AttackKind::kNone) return "";
  return fmt::format("{:g}", a.intensity);
}

EvalRecord evaluate_cell(const RgbImage& host, const RgbImage& marked, const WatermarkBits& wm,
                         const AttackSpec& spec, const BenchConfig& cfg, const FuzzySystem& fs) {
  EvalRecord rec;
  rec.attack = spec;
  const auto start = std::chrono::steady_clock::now();
  try {
    const RgbImage attacked = apply_attack(marked, spec);
    const QualityReport q = compare_images(host, attacked, cfg.peak);
    const ExtractionResult ext = extract_image(attacked, cfg.params, fs, wm);
    rec.mse = q.mse;
    rec.psnr_db = q.psnr_db;
    rec.ncc_image = q.ncc;
    rec.ncc_watermark = ext.ncc_vs_original.value_or(0.0);
    rec.ber = ext.ber.value_or(1.0);
    rec.extracted = ext.bits;
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  if (cfg.timing) {
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

void write_series(const std::filesystem::path& path, const BenchReport& report, bool dat,
                  const char* name, double EvalRecord::*field) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  auto rows = [&](auto&& emit) {
    emit(0, report.baseline);
    for (std::size_t i = 0; i < report.cells.size(); ++i) emit(i + 1, report.cells[i]);
  };
  if (dat) {
    fmt::print(out, "# index attack intensity {}\n", name);
    rows([&](std::size_t i, const EvalRecord& r) {
      if (r.error) return;
      fmt::print(out, "{} {} {} {}\n", i, attack_keyword(r.attack.kind),
                 r.attack.kind == AttackKind::kNone ? "0" : intensity_value(r.attack), num(r.*field));
    });
  } else {
    fmt::print(out, "attack,intensity,{}\n", name);
    rows([&](std::size_t, const EvalRecord& r) {
      if (r.error) return;
      fmt::print(out, "{},{},{}\n", attack_keyword(r.attack.kind), intensity_value(r.attack), num(r.*field));
    });
  }
}

}  // namespace

BenchReport run_bench(const RgbImage& host_in, const WatermarkBits& wm, const BenchConfig& cfg) {
  if (cfg.attacks.empty()) throw ParameterError("bench needs a non-empty attack grid");
  const FuzzySystem fs = cfg.fuzzy_system();
  check_decodable(cfg.params, fs);
  const RgbImage host = prepare_host(host_in);

  BenchReport report;
  report.peak = cfg.peak;
  report.watermarked = embed_image(host, wm, cfg.params, fs);
  report.baseline = evaluate_cell(host, report.watermarked, wm, AttackSpec{}, cfg, fs);

  // Timing runs stay sequential so cells do not compete for cores.
  if (cfg.timing) {
    for (const auto& spec : cfg.attacks) {
      report.cells.push_back(evaluate_cell(host, report.watermarked, wm, spec, cfg, fs));
    }
    return report;
  }
  std::vector<std::future<EvalRecord>> pending;
  pending.reserve(cfg.attacks.size());
  for (const auto& spec : cfg.attacks) {
    pending.push_back(std::async(std::launch::async, evaluate_cell, std::cref(host),
                                 std::cref(report.watermarked), std::cref(wm), spec, std::cref(cfg),
                                 std::cref(fs)));
  }
  for (auto& f : pending) report.cells.push_back(f.get());
  return report;
}

void write_csv(std::ostream& out, const BenchReport& report) {
  out << "attack,intensity,mse,psnr_db,ncc_image,ncc_watermark,ber,ms\n";
  auto row = [&](const EvalRecord& r) {
    const std::string head = attack_keyword(r.attack.kind) + "," + intensity_value(r.attack);
    if (r.error) {
      out << head << ",,,,,,\n";
      return;
    }
    fmt::print(out, "{},{},{},{},{},{},{}\n", head, num(r.mse), num(r.psnr_db), num(r.ncc_image),
               num(r.ncc_watermark), num(r.ber), fmt::format("{:.3f}", r.ms));
  };
  row(report.baseline);
  for (const auto& r : report.cells) row(r);
}

void write_markdown(std::ostream& out, const BenchReport& report) {
  fmt::print(out,
             "| Type of Attack | Intensity | MSE | PSNR (dB, R={:g}) | NCC (image) | NCC (watermark) | BER |\n",
             report.peak);
  out << "|---|---|---|---|---|---|---|\n";
  auto row = [&](const EvalRecord& r) {
    const auto family = attack_family(r.attack.kind);
    const auto label = intensity_label(r.attack);
    if (r.error) {
      fmt::print(out, "| {} | {} | error: {} | | | | |\n", family, label, *r.error);
      return;
    }
    fmt::print(out, "| {} | {} | {:.4f} | {} | {:.4f} | {:.4f} | {:.4f} |\n", family, label, r.mse,
               std::isinf(r.psnr_db) ? std::string("inf") : fmt::format("{:.4f}", r.psnr_db),
               r.ncc_image, r.ncc_watermark, r.ber);
  };
  row(report.baseline);
  for (const auto& r : report.cells) row(r);
  out << "\nImage metrics compare the attacked image with the unwatermarked host, pooled over R, G "
         "and B. Watermark NCC maps bits to {0, 1} and normalizes by the embedded mark.\n";
}

void write_errors_csv(std::ostream& out, const BenchReport& report) {
  out << "attack,intensity,message\n";
  for (const auto& r : report.cells) {
    if (!r.error) continue;
    std::string msg = *r.error;
    for (char& c : msg) {
      if (c == '\n' || c == ',') c = ' ';
    }
    fmt::print(out, "{},{},{}\n", attack_keyword(r.attack.kind), intensity_value(r.attack), msg);
  }
}

void write_report_files(const std::filesystem::path& dir, const BenchReport& report,
                        const std::vector<ReportFormat>& formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  auto open = [&](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw IoError("cannot write " + (dir / name).string());
    return f;
  };
  bool dat = false;
  for (ReportFormat fmt : formats) {
    if (fmt == ReportFormat::kCsv) {
      auto f = open("report.csv");
      write_csv(f, report);
    } else if (fmt == ReportFormat::kMarkdown) {
      auto f = open("report.md");
      write_markdown(f, report);
    } else {
      dat = true;
    }
  }
  {
    auto f = open("errors.csv");
    write_errors_csv(f, report);
  }
  write_series(dir / "mse_series.csv", report, false, "mse", &EvalRecord::mse);
  write_series(dir / "psnr_series.csv", report, false, "psnr_db", &EvalRecord::psnr_db);
  write_series(dir / "ncc_series.csv", report, false, "ncc_watermark", &EvalRecord::ncc_watermark);
  if (dat) {
    write_series(dir / "mse_series.dat", report, true, "mse", &EvalRecord::mse);
    write_series(dir / "psnr_series.dat", report, true, "psnr_db", &EvalRecord::psnr_db);
    write_series(dir / "ncc_series.dat", report, true, "ncc_watermark", &EvalRecord::ncc_watermark);
  }
  save_image(dir / "watermarked.png", report.watermarked);
  if (report.baseline.extracted) save_gray(dir / "extracted_00_none.png", watermark_to_plane(*report.baseline.extracted));
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    const auto& r = report.cells[i];
    if (!r.extracted) continue;
    const auto name = fmt::format("extracted_{:02}_{}.png", i + 1, attack_keyword(r.attack.kind));
    save_gray(dir / name, watermark_to_plane(*r.extracted));
  }
}

}  // namespace fuzzymark
