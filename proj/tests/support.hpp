#pragma once

// Shared helpers for the test binaries: exact ball comparison and an
// independent table of relative class numbers.

#include <mpfr.h>

#include <cstdint>
#include <map>
#include <string>

#include "kummer/ball.hpp"

namespace testsupport {

// Bitwise identity: same precision, same midpoint, same radius.
inline bool identical(const kummer::BallReal& a, const kummer::BallReal& b) {
  if (a.prec() != b.prec()) return false;
  if (!mpfr_equal_p(a.mid(), b.mid()) && !(mpfr_nan_p(a.mid()) && mpfr_nan_p(b.mid())))
    return false;
  return a.rad() <= b.rad() && b.rad() <= a.rad();
}

inline bool identical(const kummer::BallComplex& a, const kummer::BallComplex& b) {
  return identical(a.re, b.re) && identical(a.im, b.im);
}

// True value given as a high-precision MPFR number; checks containment.
inline bool encloses(const kummer::BallReal& b, mpfr_srcptr truth) {
  return b.contains(kummer::BallReal::from_mid_rad(truth, kummer::Mag()));
}

// h^- for p < 100 from published tables of cyclotomic class numbers.
inline const std::map<std::uint64_t, std::string>& published_hminus() {
  static const std::map<std::uint64_t, std::string> t{
      {3, "1"},         {5, "1"},          {7, "1"},           {11, "1"},
      {13, "1"},        {17, "1"},         {19, "1"},          {23, "3"},
      {29, "8"},        {31, "9"},         {37, "37"},         {41, "121"},
      {43, "211"},      {47, "695"},       {53, "4889"},       {59, "41241"},
      {61, "76301"},    {67, "853513"},    {71, "3882809"},    {73, "11957417"},
      {79, "100146415"}, {83, "838216959"}, {89, "13379363737"}, {97, "411322824001"},
  };
  return t;
}

}  // namespace testsupport
