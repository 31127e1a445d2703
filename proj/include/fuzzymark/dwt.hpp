#pragma once

#include <cstddef>
#include <vector>

#include "fuzzymark/plane.hpp"

namespace fuzzymark {

// One level of a 2-D Haar split. All four planes are half the analysed size.
struct SubbandSet {
  Plane ll;
  Plane lh;  // horizontal detail (row difference)
  Plane hl;  // vertical detail (column difference)
  Plane hh;  // diagonal detail
};

struct DetailBands {
  Plane lh;
  Plane hl;
  Plane hh;

  friend bool operator==(const DetailBands&, const DetailBands&) = default;
};

enum class DetailOrientation { kLH, kHL, kHH };

// detail[k] holds the bands of level k + 1; approx is the LL band of the
// deepest level.
struct SubbandPyramid {
  std::vector<DetailBands> detail;
  Plane approx;

  std::size_t levels() const { return detail.size(); }
  Plane& band(std::size_t level, DetailOrientation o);
  const Plane& band(std::size_t level, DetailOrientation o) const;

  friend bool operator==(const SubbandPyramid&, const SubbandPyramid&) = default;
};

// Orthonormal Haar: for a 2x2 block [[a, b], [c, d]]
//   ll = (a + b + c + d) / 2    lh = (a + b - c - d) / 2
//   hl = (a - b + c - d) / 2    hh = (a - b - c + d) / 2
SubbandSet haar_forward(const Plane& p);
Plane haar_inverse(const SubbandSet& s);

SubbandPyramid analyze(const Plane& p, std::size_t levels);
Plane reconstruct(const SubbandPyramid& pyr);

}  // namespace fuzzymark
