#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "seds/error.hpp"
#include "seds/parallel.hpp"
#include "seds/scan.hpp"

using namespace seds;

TEST_CASE("scan_seds examples") {
  const auto zero = BoundaryCondition::zero();
  const auto one = scan_seds(Grid(1, 1, 7.0), SpotKernel(1, {1.0}), zero);
  CHECK(one.values == Grid(1, 1, 7.0));
  CHECK(one.mode == ScanMode::SEDS);
  CHECK(one.margin_px == 0);

  // In-range overlap counts of a 3x3 box on a 3x3 grid.
  const auto box = scan_seds(Grid(3, 3, 1.0), SpotKernel(3, std::vector<double>(9, 1.0)), zero);
  CHECK(box.values == Grid(3, 3, {4, 6, 4, 6, 9, 6, 4, 6, 4}));
  CHECK(box.spot_size_px == 3);

  const auto big = scan_seds(make_phantom(60, 60, PhantomKind::UniformRandom, 1, 255.0),
                             make_gaussian_spot(3, 1.0, 1.0), zero);
  CHECK(big.values.rows() == 60);
  CHECK(big.values.cols() == 60);
}

TEST_CASE("scan_seds matches the framed-image definition") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    const int k = 1 + 2 * static_cast<int>(rng() % 3);
    const auto e = oracle::random_grid(rng, r, c, 255.0);
    const auto spot = oracle::dominant_spot(rng, k);
    for (double fill : {0.0, 1.0, 5.0, 100.0}) {
      const auto bc = fill == 0.0 ? BoundaryCondition::zero() : BoundaryCondition::constant(fill);
      const auto s = scan_seds(e, spot, bc);
      CHECK(s.values == oracle::framed_scan(e, spot, fill));
      CHECK(s.bc == bc);
    }
  }
}

TEST_CASE("scan_seds is linear under the zero boundary") {
  std::mt19937_64 rng(5);
  const auto zero = BoundaryCondition::zero();
  for (int trial = 0; trial < 20; ++trial) {
    const auto e1 = oracle::random_grid(rng, 8, 8, 255.0);
    const auto e2 = oracle::random_grid(rng, 8, 8, 255.0);
    const auto spot = oracle::dominant_spot(rng, 3 + 2 * (trial % 2));
    const double a = 0.3 + trial * 0.1, b = 2.0 - trial * 0.05;
    Grid mix(8, 8);
    for (std::size_t i = 0; i < mix.size(); ++i) mix.values()[i] = a * e1.values()[i] + b * e2.values()[i];
    const auto s1 = scan_seds(e1, spot, zero).values;
    const auto s2 = scan_seds(e2, spot, zero).values;
    const auto sm = scan_seds(mix, spot, zero).values;
    for (std::size_t i = 0; i < sm.size(); ++i) {
      CHECK(std::abs(sm.values()[i] - (a * s1.values()[i] + b * s2.values()[i])) <=
            1e-12 * std::max(1.0, std::abs(sm.values()[i])));
    }
  }
}

TEST_CASE("scan_dds geometry") {
  const auto zero = BoundaryCondition::zero();
  const auto e = make_phantom(60, 60, PhantomKind::UniformRandom, 3, 255.0);
  const auto small = scan_dds(e, make_gaussian_spot(3, 1.0, 1.0), zero, 2);
  CHECK(small.values.rows() == 64);
  CHECK(small.values.cols() == 64);
  CHECK(small.mode == ScanMode::DDS);
  CHECK(small.roi_rows() == 60);

  const auto wide = scan_dds(e, make_gaussian_spot(101, 0.8, 1.0), zero, default_dds_margin(101));
  CHECK(wide.values.rows() == 260);
  CHECK(wide.values.cols() == 260);

  CHECK(scan_dds(Grid(1, 1, 1.0), SpotKernel(1, {1.0}), zero, 0).values == Grid(1, 1, 1.0));
  CHECK_THROWS_AS(scan_dds(e, SpotKernel(1, {1.0}), zero, -1), Error);
}

TEST_CASE("scan_dds central block equals scan_seds") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    const auto e = oracle::random_grid(rng, r, c, 255.0);
    const auto spot = oracle::dominant_spot(rng, 1 + 2 * (trial % 3));
    const auto bc = trial % 2 ? BoundaryCondition::constant(5.0) : BoundaryCondition::zero();
    const int m = static_cast<int>(rng() % 4);
    const auto dds = scan_dds(e, spot, bc, m);
    const auto seds = scan_seds(e, spot, bc);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) CHECK(dds.values(i + m, j + m) == seds.values(i, j));
  }
}

TEST_CASE("scan_sted") {
  const auto e = make_phantom(60, 60, PhantomKind::UniformRandom, 9, 255.0);
  const auto spot3 = make_gaussian_spot(3, 1.0, 1.0);
  const auto sted = scan_sted(e, spot3);
  CHECK(sted.rows() == 20);
  CHECK(sted.cols() == 20);

  const auto seds = scan_seds(e, spot3, BoundaryCondition::zero());
  for (std::size_t p = 0; p < 20; ++p)
    for (std::size_t q = 0; q < 20; ++q) CHECK(sted(p, q) == seds.values(3 * p + 1, 3 * q + 1));

  try {
    scan_sted(e, make_gaussian_spot(101, 0.8, 1.0));
    FAIL("expected SpotLargerThanROI");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::SpotLargerThanROI);
  }

  CHECK(scan_sted(e, SpotKernel(1, {1.0})) == e);

  // Floor division: 7x8 ROI with k = 3 gives 2x2.
  const auto odd = scan_sted(Grid(7, 8, 1.0), spot3);
  CHECK(odd.rows() == 2);
  CHECK(odd.cols() == 2);
}

TEST_CASE("blur_conventional") {
  Grid impulse(11, 11, 0.0);
  impulse(5, 5) = 1.0;
  const auto psf = make_gaussian_spot(5, 1.2, 3.0);
  const auto blurred = blur_conventional(impulse, psf);
  const double total = psf.sum();
  for (int u = -2; u <= 2; ++u) {
    for (int v = -2; v <= 2; ++v) {
      // Correlation places psf(-u,-v) at offset (u,v); symmetric here.
      CHECK(blurred(5 + u, 5 + v) == doctest::Approx(psf.at(-u, -v) / total).epsilon(1e-14));
    }
  }
  CHECK(blurred(0, 0) == 0.0);

  const auto flat = blur_conventional(Grid(12, 12, 7.5), psf);
  for (std::size_t i = 2; i < 10; ++i)
    for (std::size_t j = 2; j < 10; ++j) CHECK(flat(i, j) == doctest::Approx(7.5).epsilon(1e-14));
  CHECK(flat(0, 0) < 7.5);
}

TEST_CASE("footprint_count") {
  CHECK(footprint_count(ScanMode::SEDS, 60, 60, 3) == 3600);
  CHECK(footprint_count(ScanMode::SEDS, 60, 60, 101) == 3600);
  CHECK(footprint_count(ScanMode::DDS, 60, 60, 3, 2) == 4096);
  CHECK(footprint_count(ScanMode::DDS, 60, 60, 101, 100) == 67600);
  for (int m = 0; m < 20; ++m) {
    CHECK(footprint_count(ScanMode::DDS, 13, 7, 5, m + 1) > footprint_count(ScanMode::DDS, 13, 7, 5, m));
  }
  CHECK_THROWS_AS(footprint_count(ScanMode::SEDS, 0, 3, 3), Error);
  CHECK_THROWS_AS(footprint_count(ScanMode::SEDS, 3, 3, 4), Error);
}

TEST_CASE("boundary condition parsing") {
  CHECK(BoundaryCondition::parse("zero") == BoundaryCondition::zero());
  CHECK(BoundaryCondition::parse("const:5").value() == 5.0);
  CHECK(BoundaryCondition::parse("const:0.25").kind() == BoundaryCondition::Kind::Constant);
  CHECK(BoundaryCondition::parse(BoundaryCondition::constant(0.1).to_string()) ==
        BoundaryCondition::constant(0.1));
  CHECK_THROWS_AS(BoundaryCondition::parse("const:"), Error);
  CHECK_THROWS_AS(BoundaryCondition::parse("const:-1"), Error);
  CHECK_THROWS_AS(BoundaryCondition::parse("one"), Error);
}

TEST_CASE("noise hook is seeded and off by default") {
  const auto e = make_phantom(6, 6, PhantomKind::UniformRandom, 2, 255.0);
  const auto spot = make_gaussian_spot(3, 1.0, 1.0);
  const auto zero = BoundaryCondition::zero();
  const auto clean = scan_seds(e, spot, zero);
  const auto n1 = scan_seds(e, spot, zero, {0.5, 9});
  const auto n2 = scan_seds(e, spot, zero, {0.5, 9});
  CHECK(n1.values == n2.values);
  CHECK_FALSE(n1.values == clean.values);
}

TEST_CASE("scan output does not depend on the thread count") {
  const auto e = make_phantom(40, 37, PhantomKind::UniformRandom, 4, 255.0);
  const auto spot = make_gaussian_spot(7, 1.5, 1.0);
  set_thread_count(1);
  const auto a = scan_dds(e, spot, BoundaryCondition::constant(3.0), 6);
  set_thread_count(4);
  const auto b = scan_dds(e, spot, BoundaryCondition::constant(3.0), 6);
  set_thread_count(1);
  CHECK(a.values == b.values);
}
