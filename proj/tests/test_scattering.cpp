/*
 *            Copyright 2026 The sphere-casimir Authors
 *
 *      Licensed under the Apache License, Version 2.0 (the "License")
 *
 * You may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *              http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <cmath>
#include <random>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "casimir/error.hpp"
#include "casimir/scattering.hpp"

namespace {

using namespace casimir;

SceneConfig scene_of(const std::vector<Eigen::Vector3d>& centers, double eps, int lmax,
                     std::vector<double> radii = {}) {
  SceneConfig s;
  s.lmax = lmax;
  for (size_t k = 0; k < centers.size(); ++k) {
    SphereSpec sp;
    sp.label = "s" + std::to_string(k + 1);
    sp.center = centers[k];
    sp.radius = radii.empty() ? 1.0 : radii[k];
    sp.permittivity = PermittivityModel::constant(eps);
    s.spheres.push_back(sp);
  }
  return s;
}

ForceOptions quick() {
  ForceOptions o;
  o.truncation_estimate = false;
  return o;
}

TEST(Integrand, ForceIsMinusGradientOfLogdet) {
  SceneConfig s = scene_of({{0, 0, 0}, {1.2, -0.4, 3.1}, {-2.6, 0.9, 0.3}}, 3.5, 2, {1.0, 0.8, 1.1});
  const BasisSpec basis(2);
  for (double xi : {0.05, 0.4, 1.5}) {
    const Eigen::Vector3d f = force_integrand(s, 1, xi, basis);
    for (int c = 0; c < 3; ++c) {
      // Richardson-extrapolated central difference.
      auto e = [&](double h) {
        Eigen::Vector3d p = s.spheres[1].center;
        p(c) += h;
        return energy_integrand(s.with_center(1, p), xi, basis, Order::all());
      };
      auto cd = [&](double h) { return (e(h) - e(-h)) / (2 * h); };
      const double h = 1e-3;
      const double g = (4 * cd(h / 2) - cd(h)) / 3;
      EXPECT_NEAR(f(c), -g, 1e-8 * f.norm() + 1e-15) << xi << ' ' << c;
    }
  }
}

TEST(Integrand, TwoBodyForceNearContact) {
  // Small |M| takes the trace-series branch of log det, where odd orders vanish.
  const SceneConfig s = scene_of({{0, 0, 0}, {0, 0, 3.0}}, 2.6, 2);
  const BasisSpec basis(2);
  for (double xi : {1e-3, 0.3, 2.0}) {
    const double f = force_integrand(s, 1, xi, basis).z();
    auto e = [&](double h) { return energy_integrand(s.with_center(1, {0, 0, 3.0 + h}), xi, basis, Order::all()); };
    auto cd = [&](double h) { return (e(h) - e(-h)) / (2 * h); };
    const double g = (4 * cd(5e-4) - cd(1e-3)) / 3;
    EXPECT_NEAR(f / -g, 1.0, 1e-9) << xi;
  }
}

TEST(Integrand, LogdetMatchesDenseDeterminant) {
  const SceneConfig s = scene_of({{0, 0, 0}, {0, 0, 3.0}, {2.5, 0, 1.5}}, 5.0, 2);
  const BasisSpec basis(2);
  for (double xi : {0.01, 0.5, 4.0}) {
    const Eigen::MatrixXcd m = round_trip_operator(s, xi, basis);
    const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(m.rows(), m.cols()) - m;
    const double ref = std::log(std::abs(a.fullPivLu().determinant()));
    // The dense route carries an absolute rounding floor of a few eps.
    EXPECT_NEAR(logdet_energy_oracle(s, xi), ref, 1e-13 * std::abs(ref) + 1e-14) << xi;
    const SceneConfig pair = s.subscene({0, 1});
    const Eigen::MatrixXcd mp = round_trip_operator(pair, xi, basis);
    const double rp = std::log(std::abs((Eigen::MatrixXcd::Identity(mp.rows(), mp.cols()) - mp).fullPivLu().determinant()));
    EXPECT_NEAR(logdet_energy_oracle(pair, xi), rp, 1e-13 * std::abs(rp) + 1e-14) << xi;
  }
}

TEST(Integrand, FixedOrdersSumToResummed) {
  const SceneConfig s = scene_of({{0, 0, 0}, {0, 0, 7.0}}, 2.6, 2);
  const BasisSpec basis(2);
  const double xi = 0.2;
  double series = 0.0;
  for (int k = 2; k <= 4; ++k) series += energy_integrand(s, xi, basis, Order::fixed(k));
  const double full = energy_integrand(s, xi, basis, Order::all());
  EXPECT_NEAR(series / full, 1.0, 1e-6);
  // Odd orders vanish for two bodies.
  EXPECT_NEAR(energy_integrand(s, xi, basis, Order::fixed(3)), 0.0, 1e-15 * std::abs(full));
  EXPECT_EQ(energy_integrand(s, xi, basis, Order::fixed(1)), 0.0);
}

TEST(Integrand, ClosedPathTracesMatchOperator) {
  const SceneConfig s = scene_of({{0, 0, 0}, {0.5, 2.0, 2.5}}, 4.0, 2);
  const BasisSpec basis(2);
  const double xi = 0.3;
  const Eigen::MatrixXcd m = round_trip_operator(s, xi, basis);
  const double t2 = (m * m).trace().real();
  const double path = trace_value(closed_path_product(s, {0, 1}, xi, basis)).real();
  EXPECT_NEAR(t2, 2.0 * path, 1e-13 * std::abs(t2));
  EXPECT_NEAR(hamiltonian_cycle_trace(s, xi, basis), path, 1e-13 * std::abs(path));
}

TEST(Integrand, BlocksVanishForMatchedSpheres) {
  const SceneConfig s = scene_of({{0, 0, 0}, {0, 0, 3.0}}, 1.0, 2);
  EXPECT_EQ(round_trip_operator(s, 0.4, BasisSpec(2)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Force, NewtonThirdLawRandomScenes) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    const SceneConfig s = scene_of({{0, 0, 0}, {3 * u(rng), 3 * u(rng), 4.0 + u(rng)}}, 2.0 + u(rng), 2);
    const auto a = casimir_force(s, 0, quick()).force;
    const auto b = casimir_force(s, 1, quick()).force;
    EXPECT_LT((a + b).norm(), 1e-10 * a.norm());
  }
  const SceneConfig three = scene_of({{0, 0, 0}, {0, 0, 4.0}, {3.5, 0.5, 2.0}}, 2.6, 2);
  Eigen::Vector3d total = Eigen::Vector3d::Zero();
  double scale = 0.0;
  for (int t = 0; t < 3; ++t) {
    const auto f = casimir_force(three, t, quick()).force;
    total += f;
    scale = std::max(scale, f.norm());
  }
  EXPECT_LT(total.norm(), 1e-10 * scale);
}

TEST(Force, AxialSymmetryAndAttraction) {
  const SceneConfig s = scene_of({{0, 0, 0}, {0, 0, 3.0}}, 2.6, 2);
  const auto f = casimir_force(s, 1, quick());
  EXPECT_LT(f.force.z(), 0.0);
  EXPECT_LT(f.force.head<2>().norm(), 1e-13 * std::abs(f.force.z()));
}

TEST(Force, MatchesEnergyDerivative) {
  const SceneConfig s = scene_of({{0, 0, 0}, {0, 0, 5.0}}, 2.6, 2);
  const double h = 1e-3 * 5.0;
  const double ep = interaction_energy(s.with_center(1, {0, 0, 5.0 + h}), quick()).energy;
  const double em = interaction_energy(s.with_center(1, {0, 0, 5.0 - h}), quick()).energy;
  const double fz = casimir_force(s, 1, quick()).force.z();
  EXPECT_NEAR(fz / (-(ep - em) / (2 * h)), 1.0, 1e-4);
}

TEST(Force, ErrorEstimateCoversTruncation) {
  const SceneConfig s = scene_of({{0, 0, 0}, {0, 0, 3.0}}, 2.6, 2);
  const auto f2 = casimir_force(s, 1);
  SceneConfig big = s;
  big.lmax = 6;
  const auto f6 = casimir_force(big, 1, quick());
  EXPECT_GT(f2.truncation_error, 0.0);
  EXPECT_LT((f6.force - f2.force).norm(), f2.error);
  EXPECT_EQ(f2.lmax, 2);
  EXPECT_DOUBLE_EQ(f2.exponent_scale, 2.0 * s.min_gap());
}

TEST(Energy, CasimirPolderDipoleLimit) {
  const SceneConfig s = scene_of({{0, 0, 0}, {0, 0, 40.0}}, 1.05, 1);
  const double alpha = 0.05 / 3.05;
  const double cp = -23.0 * alpha * alpha / (4.0 * pi * std::pow(40.0, 7));
  EXPECT_NEAR(interaction_energy(s, quick()).energy / cp, 1.0, 0.01);
}

TEST(ThreeBody, VanishesWhenThirdSphereIsInvisible) {
  SceneConfig s = scene_of({{0, 0, 0}, {0, 0, 4.0}, {3.0, 0, 2.0}}, 2.6, 1);
  s.spheres[2].permittivity = PermittivityModel::constant(1.0);
  EXPECT_EQ(three_body_energy(s, quick()).energy, 0.0);
  const double pair = casimir_force(s.subscene({0, 1}), 0, quick()).force.norm();
  EXPECT_LT(three_body_force(s, 0, quick()).force.norm(), 1e-14 * pair);
}

TEST(ThreeBody, ErrorEstimateTracksTruncation) {
  const SceneConfig s = scene_of({{0, 0, -3.0}, {0, 0, 3.0}, {4.0, 0, 0}}, 2.6, 1);
  const auto e1 = three_body_energy(s);
  SceneConfig big = s;
  big.lmax = 4;
  const auto e4 = three_body_energy(big, quick());
  EXPECT_NE(e1.energy, 0.0);
  EXPECT_LT(std::abs(e4.energy - e1.energy), 2.0 * e1.error);
  EXPECT_GT(std::abs(e1.energy), e1.error);
}

TEST(ThreeBody, RequiresThreeSpheres) {
  const SceneConfig s = scene_of({{0, 0, 0}, {0, 0, 4.0}}, 2.6, 1);
  EXPECT_THROW(three_body_energy(s), ValidationError);
}

TEST(Potential, IntegratedForceReproducesEnergy) {
  const SceneConfig s = scene_of({{0, 0, 0}, {0, 0, 3.0}}, 2.6, 2);
  const auto v = potential_along_path(s, 1, {0, 0, 1}, {0.0, 1.0}, quick());
  ASSERT_EQ(v.value.size(), 2u);
  for (size_t k = 0; k < 2; ++k) {
    const double e = interaction_energy(s.with_center(1, {0, 0, 3.0 + v.offsets[k]}), quick()).energy;
    EXPECT_NEAR(v.value[k] / e, 1.0, 2e-3) << k;
    EXPECT_LT(std::abs(v.value[k] - e), v.error[k]);
  }
  EXPECT_GT(v.tail_exponent, 6.0);
}

TEST(OrderSpec, ParseAndPrint) {
  EXPECT_TRUE(Order::parse("resummed").resummed);
  EXPECT_EQ(Order::parse("3").k, 3);
  EXPECT_EQ(Order::fixed(2).str(), "2");
  EXPECT_THROW(Order::parse("5"), DomainError);
  EXPECT_THROW(Order::parse("two"), ValidationError);
}

}  // namespace
