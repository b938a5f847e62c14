#include "varlp/halfline.hpp"

#include <cmath>

#include "varlp/error.hpp"

namespace varlp {

HalfLineInstance::HalfLineInstance(std::vector<HalfLinePiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorKind::EmptySet, "half-line instance has no pieces");
  for (const auto& pc : pieces_) {
    if (!std::isfinite(pc.len) || !std::isfinite(pc.f) || !std::isfinite(pc.r) || !std::isfinite(pc.w)) {
      throw Error(ErrorKind::NonFinite, "non-finite half-line piece");
    }
    if (!(pc.len > 0.0)) throw Error(ErrorKind::OutOfDomain, "half-line piece length must be positive");
    if (pc.r < 1.0) throw Error(ErrorKind::ExponentBelowOne, "exponent below 1");
    if (pc.r > kMaxExponent) throw Error(ErrorKind::ExponentAboveCap, "exponent above P_MAX");
    if (!(pc.w > 0.0)) throw Error(ErrorKind::NonPositiveWeight, "weight must be positive");
  }
}

double HalfLineInstance::extent() const {
  double t = 0.0;
  for (const auto& pc : pieces_) t += pc.len;
  return t;
}

std::vector<WeightedPiece> HalfLineInstance::weighted() const {
  std::vector<WeightedPiece> out;
  out.reserve(pieces_.size());
  for (const auto& pc : pieces_) out.push_back({pc.len, pc.f, pc.r, pc.w});
  return out;
}

double halfline_map(double t) { return t / (1.0 + t); }

UnitImage to_unit_interval(const HalfLineInstance& inst, std::size_t refine) {
  if (refine == 0) throw Error(ErrorKind::EmptySet, "refine must be at least 1");
  UnitImage img;
  img.breakpoints.push_back(0.0);
  double start = 0.0;
  for (const auto& pc : inst.pieces()) {
    const double step = pc.len / static_cast<double>(refine);
    for (std::size_t k = 0; k < refine; ++k) {
      const double ta = start + step * static_cast<double>(k);
      const double tb = k + 1 == refine ? start + pc.len : start + step * static_cast<double>(k + 1);
      const double tm = 0.5 * (ta + tb);
      const double value = pc.f == 0.0 ? 0.0 : std::pow(1.0 + tm, 2.0 / pc.r) * pc.f;
      const double hb = halfline_map(tb);
      img.pieces.push_back({hb - img.breakpoints.back(), value, pc.r, pc.w});
      img.breakpoints.push_back(hb);
    }
    start += pc.len;
  }
  img.support_end = img.breakpoints.back();
  img.pieces.push_back({1.0 - img.support_end, 0.0, 1.0, 1.0});
  img.breakpoints.push_back(1.0);
  return img;
}

namespace {

template <class Get>
StepFunction image_function(const UnitImage& img, Get get) {
  std::vector<double> vals;
  vals.reserve(img.pieces.size());
  for (const auto& pc : img.pieces) vals.push_back(get(pc));
  return normalize(img.breakpoints, vals);
}

}  // namespace

StepFunction UnitImage::f() const {
  return image_function(*this, [](const WeightedPiece& pc) { return pc.f; });
}
ExponentProfile UnitImage::p() const {
  return ExponentProfile(image_function(*this, [](const WeightedPiece& pc) { return pc.p; }));
}
WeightProfile UnitImage::w() const {
  return WeightProfile(image_function(*this, [](const WeightedPiece& pc) { return pc.w; }));
}

NormResult source_norm(const HalfLineInstance& inst, double tol) {
  const auto pieces = inst.weighted();
  return luxemburg_norm(pieces, tol, NormMethod::weighted);
}

NormResult image_norm(const UnitImage& image, double tol) {
  return luxemburg_norm(image.pieces, tol, NormMethod::weighted);
}

IsometryReport verify_isometry(const HalfLineInstance& inst, std::size_t refine, std::size_t start) {
  if (refine == 0 || start == 0) throw Error(ErrorKind::EmptySet, "refine must be at least 1");
  IsometryReport rep;
  rep.report.name = "HALFLINE";
  rep.source = source_norm(inst).value;
  if (refine < start) {
    rep.refines.push_back(refine);
  } else {
    for (std::size_t n = start; n <= refine; n *= 2) rep.refines.push_back(n);
  }
  for (std::size_t n : rep.refines) {
    rep.image.push_back(image_norm(to_unit_interval(inst, n)).value);
    rep.discrepancy.push_back(std::abs(rep.image.back() - rep.source));
  }
  for (std::size_t k = 1; k < rep.discrepancy.size(); ++k) {
    const double prev = rep.discrepancy[k - 1];
    const double cur = rep.discrepancy[k];
    const Outcome o = prev > kIsometryNoise
                          ? leq(cur / prev, kIsometryRatio, 0.0, "discrepancy ratio per doubling")
                          : within(cur, kIsometryNoise, "discrepancy stays at the noise floor");
    rep.report.record(k, o, std::nullopt);
  }
  return rep;
}

}  // namespace varlp
