#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fuzzymark/attacks.hpp"
#include "fuzzymark/config.hpp"
#include "fuzzymark/image_io.hpp"

namespace fuzzymark {

// One row of the robustness report. Image metrics compare against the
// prepared (unwatermarked) host; watermark metrics compare the extracted bits
// with the embedded ones.
struct EvalRecord {
  AttackSpec attack;
  double mse = 0.0;
  double psnr_db = 0.0;
  double ncc_image = 0.0;
  double ncc_watermark = 0.0;
  double ber = 0.0;
  double ms = 0.0;  // zero unless timing was requested
  std::optional<std::string> error;
  std::optional<WatermarkBits> extracted;
};

struct BenchReport {
  double peak = kPeak8Bit;
  EvalRecord baseline;             // watermarked, no attack
  std::vector<EvalRecord> cells;   // one per grid entry, in grid order
  RgbImage watermarked;
};

// Embeds once, then attacks, extracts and scores every grid cell. Cells run
// concurrently; the result order follows the grid. A failing cell records its
// error and the run continues.
BenchReport run_bench(const RgbImage& host, const WatermarkBits& wm, const BenchConfig& cfg);

// attack,intensity,mse,psnr_db,ncc_image,ncc_watermark,ber,ms
// The baseline is the first data row with attack "none". Failed cells keep
// their attack and intensity and leave the metric fields empty.
void write_csv(std::ostream& out, const BenchReport& report);

// Same records as a markdown robustness table.
void write_markdown(std::ostream& out, const BenchReport& report);

// attack,intensity,message for every failed cell (header only if none failed).
void write_errors_csv(std::ostream& out, const BenchReport& report);

// mse_series.csv, psnr_series.csv, ncc_series.csv (and .dat twins when
// requested), watermarked.png and extracted_<n>.png bitmaps.
void write_report_files(const std::filesystem::path& dir, const BenchReport& report,
                        const std::vector<ReportFormat>& formats);

}  // namespace fuzzymark
