#pragma once

// Reference robustness rows: (attack, intensity, MSE, PSNR at R = 511).
namespace fuzzymark::testing {

struct ReferenceRow {
  const char* attack;
  const char* intensity;
  double mse;
  double psnr;
};

inline constexpr ReferenceRow kReferenceTable[] = {
    {"Watermarked Image", "--", 21.1609, 40.9301},
    {"JPEG Compression", "Q=10", 33, 38.9818},
    {"Median Filtering", "--", 21, 40.9272},
    {"Cropping", "5%", 788, 25.2227},
    {"Cropping", "15%", 1289, 23.0837},
    {"Cropping", "25%", 2310, 20.5498},
    {"Cropping", "35%", 3014, 19.3946},
    {"Salt&Pepper Noise", "5%", 1023, 24.0884},
    {"Salt&Pepper Noise", "10%", 2020, 21.1326},
    {"Salt&Pepper Noise", "15%", 3057, 19.3320},
    {"Salt&Pepper Noise", "20%", 3995, 18.1700},
    {"Rotation", "4deg", 2269, 20.6275},
    {"Rotation", "8deg", 3039, 19.3581},
    {"Rotation", "12deg", 3499, 18.7460},
    {"Rotation", "16deg", 3902, 18.2720},
};

}  // namespace fuzzymark::testing
