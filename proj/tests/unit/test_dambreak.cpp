#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "irfit/dam/frames.hpp"
#include "irfit/dam/objective.hpp"
#include "irfit/dam/particles.hpp"
#include "irfit/dam/problem.hpp"
#include "irfit/errors.hpp"

using namespace irfit;
using namespace irfit::dam;

namespace {

const std::string kFramesPath = IRFIT_TEST_DATA_DIR "/frames.txt";

// Independent O(n^2) energy in extended precision.
long double brute_energy(const std::vector<double>& p, double x, double r = kRadius) {
  const std::size_t n = p.size() / 2;
  long double overlap = 0.0L, height = 0.0L;
  const long double reach = 4.0L * r * r;
  for (std::size_t j = 0; j < n; ++j) {
    height += p[2 * j + 1];
    for (std::size_t i = j + 1; i < n; ++i) {
      const long double dx = static_cast<long double>(p[2 * j]) - p[2 * i];
      const long double dy = static_cast<long double>(p[2 * j + 1]) - p[2 * i + 1];
      const long double gap = reach - (dx * dx + dy * dy);
      if (gap > 0) overlap += gap * gap;
    }
  }
  return x * overlap + (1.0L - x) * height;
}

std::vector<double> random_config(std::mt19937_64& rng, std::size_t n, double side) {
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<double> p(2 * n);
  for (auto& v : p) v = u(rng);
  return p;
}

DamSimulator shipped_simulator() {
  DamSettings s;
  s.frames = load_frames(kFramesPath);
  return DamSimulator(s);
}

}  // namespace

TEST_SUITE("dambreak") {

TEST_CASE("energy examples") {
  for (double x : {0.0, 0.3, 0.999}) CHECK(EnergyModel(x).value(std::vector<double>{0.0, 3.0}) == doctest::Approx((1 - x) * 3));
  CHECK(EnergyModel(1.0).value(std::vector<double>{1.0, 1.0, 1.0, 1.0}) == 0.00390625);
  CHECK(EnergyModel(1.0).value(std::vector<double>{1.0, 1.0, 1.3, 1.0}) == 0.0);
}

TEST_CASE("energy and gradient match the brute-force oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = t < 20 ? 10 : 200;
    const double side = t < 20 ? 1.0 : 4.0;
    auto p = random_config(rng, n, side);
    const double x = u(rng);
    EnergyModel model(x);
    const long double ref = brute_energy(p, x);
    CHECK(std::abs(model.value(p) - static_cast<double>(ref)) <= 1e-13 * (1.0 + std::abs(static_cast<double>(ref))));
    std::vector<double> g(p.size());
    CHECK(model.value_gradient(p, g) == model.value(p));
    // closed-form gradient, pair by pair
    for (std::size_t j = 0; j < n; ++j) {
      long double gx = 0, gy = 1.0L - x;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        const long double dx = static_cast<long double>(p[2 * j]) - p[2 * i];
        const long double dy = static_cast<long double>(p[2 * j + 1]) - p[2 * i + 1];
        const long double gap = 0.0625L - (dx * dx + dy * dy);
        if (gap > 0) gx += -4.0L * x * gap * dx, gy += -4.0L * x * gap * dy;
      }
      CHECK(std::abs(g[2 * j] - static_cast<double>(gx)) <= 1e-14);
      CHECK(std::abs(g[2 * j + 1] - static_cast<double>(gy)) <= 1e-14);
    }
  }
}

TEST_CASE("scattered configurations fall back to all pairs") {
  std::vector<double> p{0.0, 0.0, 0.1, 0.0, 1e6, 1e6, 1e6 + 0.2, 1e6};
  EnergyModel model(0.5);
  CHECK(model.value(p) == doctest::Approx(static_cast<double>(brute_energy(p, 0.5))).epsilon(1e-14));
}

TEST_CASE("gradient examples and finite differences") {
  std::vector<double> one{2.0, 3.0}, g(2);
  EnergyModel(0.25).value_gradient(one, g);
  CHECK(g == std::vector<double>{0.0, 0.75});
  std::vector<double> apart{0.0, 0.0, 0.5, 0.0}, g2(4);
  EnergyModel(0.25).value_gradient(apart, g2);
  CHECK(g2 == std::vector<double>{0.0, 0.75, 0.0, 0.75});

  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    auto p = random_config(rng, 10, 1.0);
    EnergyModel model(0.9);
    std::vector<double> grad(p.size());
    model.value_gradient(p, grad);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double keep = p[i], h = 1e-6;
      p[i] = keep + h;
      const double up = model.value(p);
      p[i] = keep - h;
      const double down = model.value(p);
      p[i] = keep;
      const double fd = (up - down) / (2 * h);
      CHECK(std::abs(fd - grad[i]) / std::max({1.0, std::abs(fd), std::abs(grad[i])}) <= 1e-5);
    }
  }
}

TEST_CASE("initial packings") {
  for (Packing packing : {Packing::Staggered, Packing::Square}) {
    const auto p0 = initial_packing(packing);
    CHECK(p0.size() == 419);
    CHECK(p0.x(0) == 0.125);
    CHECK(p0.y(0) == 0.125);
    double ymax = 0, xmax = 0;
    for (std::size_t j = 0; j < p0.size(); ++j) ymax = std::max(ymax, p0.y(j)), xmax = std::max(xmax, p0.x(j));
    CHECK(ymax == 6.625);
    CHECK(xmax <= 4.0 - 0.125);
    const auto frame = rasterize(p0.coords);
    CHECK(frame.count() == 28);
    for (int row = 1; row <= kRows; ++row) {
      for (int col = 1; col <= kCols; ++col) CHECK(frame.at(row, col) == (row <= 7 && col <= 4));
    }
  }
  // square lattice: 26 full rows of 16 and 3 balls left-aligned on top
  const auto sq = initial_packing(Packing::Square);
  CHECK(sq.x(416) == 0.125);
  CHECK(sq.x(418) == 0.625);
  CHECK(sq.y(418) == 6.625);
  // staggered: no two balls overlap
  const auto st = initial_packing(Packing::Staggered);
  CHECK(EnergyModel(1.0).value(st.coords) == 0.0);
  CHECK(parse_packing("square") == Packing::Square);
  CHECK_THROWS(parse_packing("hex"));
}

TEST_CASE("rasterization") {
  CHECK(rasterize(std::vector<double>{}).count() == 0);
  const auto one = rasterize(std::vector<double>{0.5, 0.5});
  CHECK(one.count() == 1);
  CHECK(one.at(1, 1));
  // half-open cells, closed on the far edges, outside ignored
  CHECK(rasterize(std::vector<double>{1.0, 0.0}).at(1, 2));
  CHECK(rasterize(std::vector<double>{20.0, 8.0}).at(8, 20));
  CHECK(rasterize(std::vector<double>{20.5, 1.0, 3.0, 9.0}).count() == 0);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(5.0, 10.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> p(40);
    for (auto& v : p) v = std::max(0.0, n(rng));
    CHECK(rasterize(p).count() <= kCells);
  }
}

TEST_CASE("fitness counts agreements") {
  BinaryFrame a, b;
  CHECK(fitness(a, a) == 160);
  b.set(3, 7);
  CHECK(fitness(a, b) == 159);
  const auto p0 = rasterize(initial_packing().coords);
  CHECK(fitness(p0, BinaryFrame{}) == 132);
}

TEST_CASE("frames file") {
  const auto fr = load_frames(kFramesPath);
  CHECK(fr.times == std::array<double, 4>{0.44, 1.10, 2.20, 5.0});
  std::ostringstream out;
  write_frames(out, fr);
  std::istringstream in(out.str());
  const auto back = parse_frames(in);
  CHECK(back.times == fr.times);
  for (int k = 0; k < kFrameCount; ++k) CHECK(back.frames[k] == fr.frames[k]);

  auto parse_error = [](const std::string& text) -> std::string {
    std::istringstream s(text);
    try {
      parse_frames(s, "test");
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  // drop the last column of the second row of the first block (line 3)
  std::string broken = out.str();
  const auto line3_end = broken.find('\n', broken.find('\n', broken.find('\n') + 1) + 1);
  broken.erase(line3_end - 2, 2);
  const auto msg = parse_error(broken);
  CHECK(msg.find("test:3:") == 0);
  CHECK(msg.find("row 7") != std::string::npos);
  CHECK(msg.find("19 columns") != std::string::npos);
  CHECK(parse_error("t=0.44\n0 1 2\n").find("not 0 or 1") != std::string::npos);
  CHECK(parse_error("t=1\n").find("blocks") != std::string::npos);
  CHECK(parse_error("0 0\n").find("outside") != std::string::npos);
  CHECK_THROWS_AS(load_frames("/nonexistent/frames.txt"), ParseError);
}

TEST_CASE("renders") {
  BinaryFrame f;
  f.set(1, 1);
  f.set(8, 20);
  const auto ascii = render_ascii(f);
  CHECK(ascii.substr(0, 21) == "...................#\n");
  CHECK(ascii.substr(ascii.size() - 21) == "#...................\n");
  const auto pgm = render_pgm(f);
  CHECK(pgm.substr(0, 13) == "P5\n20 8\n255\n" + std::string(1, static_cast<char>(0)));
  CHECK(pgm.size() == 12 + 160);
  CHECK(static_cast<unsigned char>(pgm[12 + 19]) == 255);
  CHECK(static_cast<unsigned char>(pgm[12 + 140]) == 255);
}

TEST_CASE("alignment: breakpoints agree with a dense sweep over c") {
  const auto sim = shipped_simulator();
  const auto& frames = sim.settings().frames;
  for (double x : {0.3, 0.995}) {
    FrameScores scores;
    sim.simulate(x, 50, [&](long, std::span<const double> p) {
      const auto r = rasterize(p);
      std::array<int, kFrameCount> row{};
      for (int k = 0; k < kFrameCount; ++k) row[k] = fitness(r, frames.frames[k]);
      scores.push(row);
    });
    const auto best = best_alignment(scores, frames.times);
    int dense = 0;
    const long n = std::lround(scores.last_index() / frames.times[0] / 1e-3);
    for (long i = 0; i <= n; ++i) dense = std::max(dense, aligned_total(scores, frames.times, i * 1e-3).total);
    CHECK(best.total == dense);
    CHECK(aligned_total(scores, frames.times, best.c).total == best.total);
  }
}

TEST_CASE("zero budget keeps only the initial frame") {
  const auto sim = shipped_simulator();
  const auto e = sim.evaluate(0.4, 0);
  CHECK(e.ybar == 0);
  const auto r0 = rasterize(sim.initial().coords);
  int expected = 0;
  for (int k = 0; k < kFrameCount; ++k) expected += fitness(r0, sim.settings().frames.frames[k]);
  CHECK(e.matched == expected);
  CHECK(e.f == 1.0 - expected / 640.0);
}

TEST_CASE("objective range, cache transparency and prefix monotonicity") {
  DamProblem cached(shipped_simulator()), fresh(shipped_simulator(), 0.5, false);
  for (double x : {0.0, 0.5, 0.99, 0.9993, 1.0}) {
    const auto y = cached.token(200);
    const double a = cached.evaluate(x, y), b = cached.evaluate(x, y), c = fresh.evaluate(x, y);
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    CHECK(cached.matched_cells(x, y) == std::lround((1.0 - a) * 640));
    CHECK(cached.evaluate(x, cached.token(400)) <= a);
  }
  CHECK(cached.cache_size() == 10);
  CHECK(fresh.cache_size() == 0);
  // x is simulated after rounding to 12 decimals
  CHECK(cached.evaluate(0.5 + 1e-14, cached.token(200)) == cached.evaluate(0.5, cached.token(200)));
  CHECK_THROWS(cached.evaluate(1.5, cached.token(10)));
}

TEST_CASE("accuracy and restoration") {
  CHECK(accuracy_h(100) == 0.01);
  CHECK(accuracy_h(12800) == 1.0 / 12800.0);
  for (long y : {1L, 3L, 100L, 777L, 6400L}) CHECK(accuracy_h(2 * y) == accuracy_h(y) / 2);
  CHECK_THROWS(accuracy_h(0));
  DamProblem prob(shipped_simulator());
  CHECK(prob.restore(prob.token(100)).id == 200);
  CHECK(prob.restore(prob.token(6400)).id == 12800);
  for (long y = 1; y < 5000; y += 37) {
    const auto t = prob.token(y);
    CHECK(prob.restore(t).accuracy <= 0.5 * t.accuracy);
  }
  CHECK(prob.total_cells() == 640);
}

}  // TEST_SUITE
