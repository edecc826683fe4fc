#include <doctest.h>

#include <cmath>

#include "seds/error.hpp"
#include "seds/optics.hpp"

using namespace seds;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("gaussian spot values") {
  const auto one = make_gaussian_spot(1, 1.0, 1.0);
  CHECK(one.size() == 1);
  CHECK(one.at(0, 0) == 1.0);

  // Evaluated by hand: exp(-(u^2+v^2)/2).
  const auto g = make_gaussian_spot(3, 1.0, 1.0);
  CHECK(g.at(0, 0) == 1.0);
  for (auto [u, v] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
    CHECK(g.at(u, v) == doctest::Approx(0.60653065971263342).epsilon(1e-15));
  }
  for (auto [u, v] : {std::pair{-1, -1}, {-1, 1}, {1, -1}, {1, 1}}) {
    CHECK(g.at(u, v) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
  }

  const auto wide = make_gaussian_spot(101, 25.0, 1.0);
  CHECK(wide.size() == 101);
  CHECK(wide.half() == 50);
  CHECK(wide.values().size() == 101u * 101u);
}

TEST_CASE("gaussian spot is positive and peaks at the center") {
  for (int k : {1, 3, 5, 7, 11, 21}) {
    for (double sigma : {0.5, 1.0, 2.5, 7.0}) {
      const auto g = make_gaussian_spot(k, sigma, 3.0);
      for (int u = -g.half(); u <= g.half(); ++u) {
        for (int v = -g.half(); v <= g.half(); ++v) {
          CHECK(g.at(u, v) > 0.0);
          CHECK(g.at(u, v) <= g.at(0, 0));
        }
      }
      if (k >= 3) CHECK_FALSE(validate_spot(g).is_constant);
    }
  }
}

TEST_CASE("spot construction errors") {
  CHECK(code_of([] { make_gaussian_spot(4, 1.0, 1.0); }) == ErrorCode::EvenSize);
  CHECK(code_of([] { make_gaussian_spot(3, 0.0, 1.0); }) == ErrorCode::NonPositiveParam);
  CHECK(code_of([] { make_gaussian_spot(3, 1.0, -1.0); }) == ErrorCode::NonPositiveParam);
  CHECK(code_of([] { make_disk_spot(2, 1.0, 1.0); }) == ErrorCode::EvenSize);
  CHECK(code_of([] { make_disk_spot(3, -1.0, 1.0); }) == ErrorCode::NonPositiveParam);
  CHECK(code_of([] { SpotKernel(3, std::vector<double>(9, 0.0)); }) == ErrorCode::InvalidSpot);
  CHECK(code_of([] { SpotKernel(3, {1, 1, 1, 1, -1, 1, 1, 1, 1}); }) == ErrorCode::InvalidSpot);
  CHECK(code_of([] { SpotKernel(3, {1, 1, 1, 1, NAN, 1, 1, 1, 1}); }) == ErrorCode::InvalidSpot);
  CHECK(code_of([] { SpotKernel(3, {1, 1, 1}); }) == ErrorCode::InvalidSpot);
  CHECK(code_of([] { SpotKernel::from_grid(Grid(3, 5, 1.0)); }) == ErrorCode::InvalidSpot);
}

TEST_CASE("disk spot") {
  CHECK(make_disk_spot(1, 1.0, 5.0).at(0, 0) == 5.0);

  const auto full = make_disk_spot(3, 2.0, 1.0);
  for (double v : full.values()) CHECK(v == 1.0);

  const auto plus = make_disk_spot(3, 1.0, 1.0);
  CHECK(plus.to_grid() == Grid(3, 3, {0, 1, 0, 1, 1, 1, 0, 1, 0}));
}

TEST_CASE("disk covering the whole kernel is constant") {
  for (int k : {1, 3, 5, 9, 15}) {
    const int half = (k - 1) / 2;
    const auto disk = make_disk_spot(k, half * std::sqrt(2.0) + 1e-9, 2.0);
    CHECK(validate_spot(disk).is_constant);
  }
}

TEST_CASE("validate_spot diagnostics") {
  const auto ones = SpotKernel(3, std::vector<double>(9, 1.0));
  const auto d = validate_spot(ones);
  CHECK(d.is_constant);
  CHECK(d.sum == 9.0);
  CHECK(d.constancy_spread == 0.0);

  CHECK_FALSE(validate_spot(make_gaussian_spot(3, 1.0, 1.0)).is_constant);

  const auto single = validate_spot(SpotKernel(1, {4.5}));
  CHECK(single.is_constant);
  CHECK(single.sum == 4.5);

  // Spread just above the relative threshold is not constant.
  std::vector<double> nearly(9, 1.0);
  nearly[4] = 1.0 + 1e-11;
  CHECK_FALSE(validate_spot(SpotKernel(3, nearly)).is_constant);
  nearly[4] = 1.0 + 1e-13;
  CHECK(validate_spot(SpotKernel(3, nearly)).is_constant);
}

TEST_CASE("flipped kernel mirrors offsets") {
  SpotKernel s(3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  const auto f = s.flipped();
  for (int u = -1; u <= 1; ++u)
    for (int v = -1; v <= 1; ++v) CHECK(f.at(u, v) == s.at(-u, -v));
}

TEST_CASE("phantoms") {
  CHECK(make_phantom(2, 2, PhantomKind::Checkerboard, 7, 255.0) == Grid(2, 2, {255, 0, 0, 255}));
  CHECK(make_phantom(3, 3, PhantomKind::Constant, 7, 1.0) == Grid(3, 3, 1.0));

  const auto a = make_phantom(60, 60, PhantomKind::UniformRandom, 42, 255.0);
  const auto b = make_phantom(60, 60, PhantomKind::UniformRandom, 42, 255.0);
  const auto c = make_phantom(60, 60, PhantomKind::UniformRandom, 43, 255.0);
  CHECK(a.rows() == 60);
  CHECK(a.cols() == 60);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  for (double v : a.values()) {
    CHECK(v >= 0.0);
    CHECK(v < 255.0);
  }

  // SplitMix64(0): first output 0xE220A8397B1DCDAF.
  const auto first = make_phantom(1, 1, PhantomKind::UniformRandom, 0, 1.0);
  CHECK(first(0, 0) == static_cast<double>(0xE220A8397B1DCDAFULL >> 11) * 0x1.0p-53);

  CHECK(parse_phantom_kind("checkerboard") == PhantomKind::Checkerboard);
  CHECK(code_of([] { parse_phantom_kind("stripes"); }) == ErrorCode::UnknownKind);
  CHECK(code_of([] { make_phantom(0, 3, PhantomKind::Constant, 0, 1.0); }) ==
        ErrorCode::NonPositiveParam);
}
