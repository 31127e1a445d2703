#include "fuzzymark/dwt.hpp"

#include <string>
#include <utility>

#include "fuzzymark/error.hpp"

namespace fuzzymark {
namespace {

std::string dims(const Plane& p) {
  return std::to_string(p.width()) + "x" + std::to_string(p.height());
}

}  // namespace

Plane& SubbandPyramid::band(std::size_t level, DetailOrientation o) {
  return const_cast<Plane&>(std::as_const(*this).band(level, o));
}

const Plane& SubbandPyramid::band(std::size_t level, DetailOrientation o) const {
  if (level == 0 || level > detail.size()) {
    throw StructureError("pyramid has " + std::to_string(detail.size()) + " levels, level " +
                         std::to_string(level) + " requested");
  }
  const DetailBands& d = detail[level - 1];
  switch (o) {
    case DetailOrientation::kLH: return d.lh;
    case DetailOrientation::kHL: return d.hl;
    case DetailOrientation::kHH: return d.hh;
  }
  throw StructureError("unknown band orientation");
}

SubbandSet haar_forward(const Plane& p) {
  if (p.empty() || p.width() % 2 != 0 || p.height() % 2 != 0) {
    throw DimensionError("Haar analysis needs even, non-zero dimensions, got " + dims(p));
  }
  const std::size_t w = p.width() / 2;
  const std::size_t h = p.height() / 2;
  SubbandSet s{Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const double a = p.at(2 * r, 2 * c);
      const double b = p.at(2 * r, 2 * c + 1);
      const double cc = p.at(2 * r + 1, 2 * c);
      const double d = p.at(2 * r + 1, 2 * c + 1);
      s.ll.at(r, c) = ((a + b) + (cc + d)) * 0.5;
      s.lh.at(r, c) = ((a + b) - (cc + d)) * 0.5;
      s.hl.at(r, c) = ((a - b) + (cc - d)) * 0.5;
      s.hh.at(r, c) = ((a - b) - (cc - d)) * 0.5;
    }
  }
  return s;
}

Plane haar_inverse(const SubbandSet& s) {
  if (s.ll.empty() || !s.ll.same_shape(s.lh) || !s.ll.same_shape(s.hl) || !s.ll.same_shape(s.hh)) {
    throw DimensionError("Haar synthesis needs four equal non-empty bands, got ll " + dims(s.ll) +
                         ", lh " + dims(s.lh) + ", hl " + dims(s.hl) + ", hh " + dims(s.hh));
  }
  const std::size_t w = s.ll.width();
  const std::size_t h = s.ll.height();
  Plane p(2 * w, 2 * h);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const double ll = s.ll.at(r, c);
      const double lh = s.lh.at(r, c);
      const double hl = s.hl.at(r, c);
      const double hh = s.hh.at(r, c);
      p.at(2 * r, 2 * c) = ((ll + lh) + (hl + hh)) * 0.5;
      p.at(2 * r, 2 * c + 1) = ((ll + lh) - (hl + hh)) * 0.5;
      p.at(2 * r + 1, 2 * c) = ((ll - lh) + (hl - hh)) * 0.5;
      p.at(2 * r + 1, 2 * c + 1) = ((ll - lh) - (hl - hh)) * 0.5;
    }
  }
  return p;
}

SubbandPyramid analyze(const Plane& p, std::size_t levels) {
  if (levels == 0) throw DimensionError("analysis needs at least one level");
  const std::size_t step = std::size_t{1} << levels;
  if (p.empty() || p.width() % step != 0 || p.height() % step != 0) {
    throw DimensionError("a " + std::to_string(levels) + "-level analysis needs dimensions divisible by " +
                         std::to_string(step) + ", got " + dims(p));
  }
  SubbandPyramid pyr;
  pyr.detail.reserve(levels);
  Plane current = p;
  for (std::size_t k = 0; k < levels; ++k) {
    SubbandSet s = haar_forward(current);
    pyr.detail.push_back({std::move(s.lh), std::move(s.hl), std::move(s.hh)});
    current = std::move(s.ll);
  }
  pyr.approx = std::move(current);
  return pyr;
}

Plane reconstruct(const SubbandPyramid& pyr) {
  if (pyr.detail.empty()) throw StructureError("pyramid has no detail levels");
  Plane current = pyr.approx;
  for (std::size_t k = pyr.detail.size(); k-- > 0;) {
    const DetailBands& d = pyr.detail[k];
    if (!current.same_shape(d.lh) || !current.same_shape(d.hl) || !current.same_shape(d.hh)) {
      throw StructureError("level " + std::to_string(k + 1) + " bands do not match the coarser " +
                           dims(current) + " approximation");
    }
    current = haar_inverse({std::move(current), d.lh, d.hl, d.hh});
  }
  return current;
}

}  // namespace fuzzymark
