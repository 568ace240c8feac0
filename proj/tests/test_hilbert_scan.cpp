#include <doctest.h>

#include <thread>

#include "dnaimg/hilbert_scan.hpp"
#include "dnaimg/pixel_pipeline.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dnaimg;

TEST_CASE("2x2 walk") {
  const auto o = scan_order(2, 2);
  const std::vector<Cell> expected{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(o.coords == expected);
}

TEST_CASE("degenerate shapes") {
  CHECK(scan_order(1, 1).coords == std::vector<Cell>{{0, 0}});
  const auto row = scan_order(1, 5);
  for (std::uint32_t k = 0; k < 5; ++k) CHECK(row.coords[k] == Cell{0, k});
  const auto col = scan_order(4, 1);
  for (std::uint32_t k = 0; k < 4; ++k) CHECK(col.coords[k] == Cell{k, 0});
  CHECK_THROWS_AS(scan_order(0, 3), DataError);
}

TEST_CASE("power-of-two square ends on the top-right corner") {
  const auto o = scan_order(8, 8);
  CHECK(o.coords.front() == Cell{0, 0});
  CHECK(o.coords.back() == Cell{0, 7});
}

TEST_CASE("unit steps for every shape up to 40x40; diagonals only for odd x odd") {
  for (std::size_t h = 1; h <= 40; ++h) {
    for (std::size_t w = 1; w <= 40; ++w) {
      const auto chk = oracle::check_walk(scan_order(h, w));
      INFO(h << "x" << w);
      REQUIRE(chk.covers_grid);
      REQUIRE(chk.chebyshev_one);
      if (h % 2 == 0 || w % 2 == 0)
        REQUIRE(chk.diagonal_steps == 0);
      else
        REQUIRE(chk.diagonal_steps <= 1);
    }
  }
}

TEST_CASE("large rectangular shapes stay valid") {
  for (auto [h, w] : {std::pair<std::size_t, std::size_t>{512, 512}, {400, 600}, {300, 451}, {1, 1000}, {257, 3}}) {
    const auto chk = oracle::check_walk(scan_order(h, w));
    CHECK(chk.covers_grid);
    CHECK(chk.chebyshev_one);
    CHECK(chk.diagonal_steps <= 1);
  }
}

TEST_CASE("linearize and delinearize are inverse") {
  const auto img = fixtures::random_image(17, 23, 9);
  const auto q = quantize_image(img);
  for (const auto& ch : q) {
    const auto v = linearize(ch);
    CHECK(v.size() == 17 * 23);
    CHECK(delinearize(v, 17, 23, ch.color) == ch);
  }
  CHECK_THROWS_AS(delinearize(LevelVector(5), 2, 2, Color::R), DataError);
}

TEST_CASE("cached orders are shared and equal to fresh ones under concurrency") {
  std::vector<std::shared_ptr<const ScanOrder>> got(4);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) threads.emplace_back([&, i] { got[i] = cached_scan_order(31, 45); });
  for (auto& t : threads) t.join();
  for (int i = 1; i < 4; ++i) CHECK(got[i].get() == got[0].get());
  CHECK(got[0]->coords == scan_order(31, 45).coords);
}
