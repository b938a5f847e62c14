#pragma once

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "varlp/error.hpp"
#include "varlp/stepfn.hpp"

namespace support {

inline std::vector<oracle::RawPiece> raw(const varlp::Instance& inst) {
  std::vector<oracle::RawPiece> out;
  for (const auto& pc : inst.pieces()) out.push_back({pc.len, pc.f, pc.p, 1.0});
  return out;
}

/// f ≡ 1 with p = 1 on [0, 1/2) and p = 2 on [1/2, 1).
inline varlp::Instance two_piece_increasing() {
  return varlp::Instance({{0.5, 1.0, 1.0}, {0.5, 1.0, 2.0}});
}

inline varlp::Instance two_piece_decreasing() {
  return varlp::Instance({{0.5, 1.0, 2.0}, {0.5, 1.0, 1.0}});
}

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

template <class F>
varlp::ErrorKind error_kind(F&& fn) {
  try {
    fn();
  } catch (const varlp::Error& e) {
    return e.kind();
  }
  FAIL("expected a varlp::Error");
  return varlp::ErrorKind::ParseError;
}

}  // namespace support
