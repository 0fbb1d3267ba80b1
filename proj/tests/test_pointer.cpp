#include <cmath>
#include <complex>
#include <sstream>

#include "doctest.h"
#include "mzmirror/errors.hpp"
#include "mzmirror/io.hpp"
#include "mzmirror/pointer.hpp"
#include "oracles.hpp"

using namespace mzmirror;

namespace {

const MomentumGrid kGrid = MomentumGrid::symmetric(100.0, 2048);

// Band-limited, asymmetric, complex-valued test wavefunction.
PointerState asymmetric_state(const MomentumGrid& grid) {
  const Eigen::VectorXd p = grid.points();
  Eigen::VectorXcd amp(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const double x = p(k) / 10.0;
    amp(k) = std::exp(-0.5 * x * x) * std::complex<double>(1.0 + 0.4 * x, 0.3 * x * x);
  }
  return PointerState(grid, amp).normalized();
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(MomentumGrid(1.0, 1.0, 64), ConstraintViolation);
  CHECK_THROWS_AS(MomentumGrid(-1.0, 1.0, 15), ConstraintViolation);
  const MomentumGrid g(-1.0, 1.0, 21);
  CHECK(g.spacing() == doctest::Approx(0.1));
  CHECK(g.at(20) == doctest::Approx(1.0));
  CHECK(default_grid(10.0).p_max() == doctest::Approx(80.0));
  CHECK(default_grid(10.0, 40.0).p_max() == doctest::Approx(120.0));
  CHECK(default_grid(10.0).size() == 4096);
}

TEST_CASE("gaussian pointer") {
  const PointerState phi = gaussian_pointer(kGrid, 10.0);
  CHECK(std::abs(phi.norm() - 1.0) < 1e-12);
  CHECK(std::abs(mean_momentum(phi)) < 1e-10);
  CHECK(phi.sigma_hint().value() == 10.0);

  const Eigen::VectorXd p = kGrid.points();
  const Eigen::VectorXd density = phi.amplitudes().cwiseAbs2();
  const double second = std::sqrt(p.cwiseProduct(p).cwiseProduct(density).sum() * kGrid.spacing());
  CHECK(std::abs(second - 7.0710678118654755) < 1e-6);

  // Tails captured.
  CHECK(density(0) < 1e-12 * density.maxCoeff());
  CHECK(density(kGrid.size() - 1) < 1e-12 * density.maxCoeff());

  CHECK_THROWS_AS(gaussian_pointer(MomentumGrid::symmetric(20.0, 2048), 10.0), GridCoverageError);
  CHECK_THROWS_AS(gaussian_pointer(kGrid, 0.0), ConstraintViolation);
}

TEST_CASE("shift") {
  const PointerState phi = gaussian_pointer(kGrid, 10.0);

  SUBCASE("zero kick is the identity") {
    const PointerState same = shift(phi, 0.0);
    CHECK((same.amplitudes() - phi.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("translation matches analytic re-evaluation") {
    const PointerState moved = shift(phi, 1.0);
    CHECK(std::abs(mean_momentum(moved) - 1.0) < 1e-8);
    const PointerState expected = [&] {
      Eigen::VectorXcd amp(kGrid.size());
      for (Eigen::Index k = 0; k < kGrid.size(); ++k) {
        amp(k) = oracle::gaussian(kGrid.at(k), 1.0, 10.0);
      }
      return PointerState(kGrid, amp).normalized();
    }();
    CHECK((moved.amplitudes() - expected.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("inverse shift restores the state") {
    const PointerState back = shift(shift(phi, 3.7), -3.7);
    CHECK((back.amplitudes() - phi.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("kicks that leave the grid are rejected") {
    CHECK_THROWS_AS(shift(phi, 60.0), GridCoverageError);
    CHECK_THROWS_AS(shift(phi, -60.0), GridCoverageError);
  }
}

TEST_CASE("mean momentum") {
  const PointerState phi = gaussian_pointer(kGrid, 10.0);
  const double kick = 2.5;
  const Eigen::VectorXcd sum = phi.amplitudes() + shift(phi, kick).amplitudes();
  CHECK(std::abs(mean_momentum(PointerState(kGrid, sum).normalized()) - kick / 2) < 1e-10);

  const PointerState doubled(kGrid, 2.0 * phi.amplitudes());
  CHECK_THROWS_AS(mean_momentum(doubled), ConstraintViolation);
}

TEST_CASE("overlap against the Gaussian closed form") {
  const MomentumGrid grid = default_grid(10.0, 40.0);
  const PointerState phi = gaussian_pointer(grid, 10.0);
  CHECK(std::abs(overlap(phi, phi) - 1.0) < 1e-12);
  CHECK(std::abs(overlap(phi, shift(phi, 1.0)) - 0.99750312239746) < 1e-8);
  CHECK(std::abs(overlap(phi, shift(phi, 40.0)) - 0.018315638888734) < 1e-8);
  // The frozen values above agree with direct quadrature of the analytic Gaussians.
  CHECK(std::abs(oracle::gaussian_overlap_quadrature(1.0, 10.0, 200.0, 16001) - 0.99750312239746) <
        1e-12);

  const PointerState other = gaussian_pointer(MomentumGrid::symmetric(100.0, 1024), 10.0);
  CHECK_THROWS_AS(overlap(phi, other), GridMismatchError);
}

TEST_CASE("property: norm preservation and exact translation") {
  const PointerState gaussian = gaussian_pointer(kGrid, 10.0);
  const PointerState skewed = asymmetric_state(kGrid);
  for (const PointerState* state : {&gaussian, &skewed}) {
    const double base = mean_momentum(*state);
    for (double kick : {-20.0, -7.3, -0.01, 0.37, 1.0, 5.5, 19.9}) {
      const PointerState moved = shift(*state, kick);
      CHECK(std::abs(moved.norm() - 1.0) < 1e-10);
      CHECK(std::abs(mean_momentum(moved) - base - kick) < 1e-8);
    }
  }
}

TEST_CASE("property: overlap decays monotonically as exp(-kick^2 / (4 spread^2))") {
  const double spread = 10.0;
  const MomentumGrid grid = default_grid(spread, 5.0 * spread);
  const PointerState phi = gaussian_pointer(grid, spread);
  double previous = 2.0;
  for (double ratio = 0.0; ratio <= 5.0 + 1e-12; ratio += 0.125) {
    const double kick = ratio * spread;
    const double visibility = std::abs(overlap(phi, shift(phi, kick)));
    CHECK(std::abs(visibility - oracle::gaussian_overlap(kick, spread)) < 1e-8);
    CHECK(visibility < previous);
    previous = visibility;
  }
}

TEST_CASE("grid refinement converges") {
  const double spread = 10.0;
  const double kick = 3.3;
  auto measure = [&](Eigen::Index n) {
    const PointerState phi = gaussian_pointer(MomentumGrid::symmetric(100.0, n), spread);
    const PointerState moved = shift(phi, kick);
    return std::pair{mean_momentum(moved), overlap(phi, moved)};
  };
  const auto [mean_coarse, overlap_coarse] = measure(1024);
  const auto [mean_fine, overlap_fine] = measure(2048);
  CHECK(std::abs(mean_coarse - mean_fine) < 1e-9);
  CHECK(std::abs(overlap_coarse - overlap_fine) < 1e-9);
}

TEST_CASE("spectral derivative of a Gaussian") {
  const PointerState phi = gaussian_pointer(kGrid, 10.0);
  const Eigen::VectorXcd slope = spectral_derivative(kGrid, phi.amplitudes());
  const Eigen::VectorXd p = kGrid.points();
  const Eigen::VectorXcd expected =
      (-p.array() / 100.0).cast<std::complex<double>>() * phi.amplitudes().array();
  CHECK((slope - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pointer CSV") {
  const PointerState phi = gaussian_pointer(MomentumGrid::symmetric(80.0, 64), 10.0);
  std::ostringstream out;
  write_csv(out, phi);
  std::istringstream in(out.str());
  const auto rows = io::read_csv(in);
  REQUIRE(rows.size() == 65);
  CHECK(rows[0] == std::vector<std::string>{"p", "re_amplitude", "im_amplitude"});
  for (std::size_t k = 1; k < rows.size(); ++k) {
    REQUIRE(rows[k].size() == 3);
    CHECK(std::stod(rows[k][0]) == phi.grid().at(static_cast<Eigen::Index>(k - 1)));
    CHECK(std::stod(rows[k][1]) == phi.amplitudes()(static_cast<Eigen::Index>(k - 1)).real());
  }
}
