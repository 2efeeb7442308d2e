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

#include "casimir/spectral.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <queue>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"

namespace casimir {

namespace {

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

std::pair<Eigen::VectorXd, Eigen::VectorXd> golub_welsch(const Eigen::VectorXd& diag,
                                                         const Eigen::VectorXd& sub, double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const Eigen::VectorXd nodes = es.eigenvalues();
  const Eigen::VectorXd weights = mu0 * es.eigenvectors().row(0).transpose().array().square();
  return {nodes, weights};
}

// Gauss-Kronrod 7/15 on [-1, 1].
constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> gauss7_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Eigen::VectorXd value;
  double error;
};

Panel gk15(const Integrand& g, double a, double b, unsigned workers) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::vector<double> ts;
  ts.reserve(15);
  for (int k = 0; k < 7; ++k) {
    ts.push_back(c - h * kronrod_x[static_cast<size_t>(k)]);
    ts.push_back(c + h * kronrod_x[static_cast<size_t>(k)]);
  }
  ts.push_back(c);
  const auto vals = evaluate_batch(g, ts, workers);
  Eigen::VectorXd k15 = kronrod_w[7] * vals[14];
  Eigen::VectorXd g7 = gauss7_w[3] * vals[14];
  for (int k = 0; k < 7; ++k) {
    const Eigen::VectorXd pair = vals[static_cast<size_t>(2 * k)] + vals[static_cast<size_t>(2 * k + 1)];
    k15 += kronrod_w[static_cast<size_t>(k)] * pair;
    if (k % 2 == 1) g7 += gauss7_w[static_cast<size_t>(k / 2)] * pair;
  }
  k15 *= h;
  g7 *= h;
  return {a, b, k15, max_abs(k15 - g7)};
}

}  // namespace

void SpectralSettings::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 0.1)) throw ValidationError("spectral: rel_tol must lie in (0, 0.1]");
  if (gl_points < 2 || gl_points > 200) throw ValidationError("spectral: gl_points must lie in [2, 200]");
  if (n_max < 1) throw ValidationError("spectral: n_max must be >= 1");
  if (!(tail_tol > 0.0)) throw ValidationError("spectral: tail_tol must be > 0");
  if (chunk < 1) throw ValidationError("spectral: chunk must be >= 1");
  if (adaptive_max_intervals < 1) throw ValidationError("spectral: adaptive_max_intervals must be >= 1");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_laguerre(int n) {
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < n; ++k) sub(k - 1) = k;
  return golub_welsch(diag, sub, 1.0);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  return golub_welsch(diag, sub, 2.0);
}

std::vector<Eigen::VectorXd> evaluate_batch(const Integrand& f, const std::vector<double>& xs,
                                            unsigned workers) {
  std::vector<Eigen::VectorXd> out(xs.size());
  const unsigned nthreads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(xs.size())));
  if (nthreads == 1) {
    for (size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
    return out;
  }
  std::atomic<size_t> next{0};
  std::mutex mutex;
  size_t failed_index = xs.size();
  std::exception_ptr failure;
  auto work = [&]() {
    for (size_t i = next++; i < xs.size(); i = next++) {
      try {
        out[i] = f(xs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        // Report the failure of the lowest index so errors are reproducible.
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

Eigen::VectorXd pairwise_sum(const std::vector<Eigen::VectorXd>& terms, size_t begin, size_t end) {
  if (end - begin <= 8) {
    Eigen::VectorXd s = terms[begin];
    for (size_t i = begin + 1; i < end; ++i) s += terms[i];
    return s;
  }
  const size_t mid = begin + (end - begin) / 2;
  return pairwise_sum(terms, begin, mid) + pairwise_sum(terms, mid, end);
}

Eigen::VectorXd gauss_laguerre_integral(const Integrand& f, double decay_length, int n,
                                        unsigned workers) {
  const auto [u, w] = gauss_laguerre(n);
  const double scale = 1.0 / (2.0 * decay_length);
  std::vector<double> xs(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) xs[static_cast<size_t>(k)] = u(k) * scale;
  auto vals = evaluate_batch(f, xs, workers);
  for (int k = 0; k < n; ++k) vals[static_cast<size_t>(k)] *= w(k) * std::exp(u(k)) * scale;
  return pairwise_sum(vals, 0, vals.size());
}

SpectralResult integrate_adaptive(const Integrand& f, double decay_length,
                                  const SpectralSettings& settings) {
  const double d2 = 2.0 * decay_length;
  const Integrand g = [&f, d2](double t) -> Eigen::VectorXd {
    const double s = 1.0 - t;
    return f(t / (d2 * s)) / (d2 * s * s);
  };
  auto cmp = [](const Panel& x, const Panel& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> queue(cmp);
  std::vector<Panel> done;
  int intervals = 0;
  for (int k = 0; k < 4; ++k) {
    queue.push(gk15(g, 0.25 * k, 0.25 * (k + 1), settings.workers));
    ++intervals;
  }
  SpectralResult r;
  r.n_points = 15 * intervals;
  auto totals = [&]() {
    std::vector<Panel> all = done;
    auto copy = queue;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    std::vector<Eigen::VectorXd> vals;
    double err = 0.0;
    for (const auto& p : all) {
      vals.push_back(p.value);
      err += p.error;
    }
    return std::make_pair(pairwise_sum(vals, 0, vals.size()), err);
  };
  for (;;) {
    auto [value, err] = totals();
    r.value = value;
    r.error = err;
    if (err <= settings.rel_tol * max_abs(value) || err == 0.0) break;
    if (intervals + 1 > settings.adaptive_max_intervals) {
      r.flagged = true;
      r.diagnostics = "adaptive quadrature: interval budget exhausted";
      break;
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      done.push_back(worst);
      if (queue.empty()) {
        r.flagged = true;
        r.diagnostics = "adaptive quadrature: intervals cannot be split further";
        auto [v2, e2] = totals();
        r.value = v2;
        r.error = e2;
        break;
      }
      continue;
    }
    queue.push(gk15(g, worst.a, mid, settings.workers));
    queue.push(gk15(g, mid, worst.b, settings.workers));
    ++intervals;
    r.n_points += 30;
  }
  return r;
}

SpectralResult integrate_zero_t(const Integrand& f, double decay_length,
                                const SpectralSettings& settings) {
  settings.validate();
  if (!(decay_length > 0.0)) throw DomainError("integrate_zero_t: decay length must be > 0");
  if (settings.rule == QuadratureRule::Adaptive) return integrate_adaptive(f, decay_length, settings);
  SpectralResult r;
  const int n = settings.gl_points;
  r.value = gauss_laguerre_integral(f, decay_length, n, settings.workers);
  const Eigen::VectorXd check = gauss_laguerre_integral(f, decay_length, n + 8, settings.workers);
  r.error = max_abs(r.value - check);
  r.n_points = 2 * n + 8;
  if (r.error > settings.rel_tol * max_abs(r.value)) {
    SpectralResult a = integrate_adaptive(f, decay_length, settings);
    a.n_points += r.n_points;
    if (a.flagged) {
      std::ostringstream os;
      os << "gauss-laguerre(" << n << ") vs (" << n + 8 << ") differ by " << r.error << "; "
         << a.diagnostics;
      a.diagnostics = os.str();
    }
    return a;
  }
  return r;
}

Eigen::VectorXd zero_frequency_limit(const Integrand& f, double decay_length, bool* flagged,
                                     double xi_eps) {
  if (xi_eps <= 0.0) xi_eps = 1e-6 / decay_length;
  const Eigen::VectorXd f1 = f(xi_eps);
  const Eigen::VectorXd f2 = f(0.5 * xi_eps);
  const Eigen::VectorXd limit = 2.0 * f2 - f1;
  if (flagged) *flagged = max_abs(limit - f2) > 1e-6 * max_abs(limit) + 1e-300;
  return limit;
}

SpectralResult matsubara_sum(const Integrand& f, double reduced_temperature, double decay_length,
                             const SpectralSettings& settings) {
  settings.validate();
  if (!(reduced_temperature > 0.0)) throw DomainError("matsubara_sum: temperature must be > 0");
  if (!(decay_length > 0.0)) throw DomainError("matsubara_sum: decay length must be > 0");
  const double step = 2.0 * pi * reduced_temperature;
  SpectralResult r;
  bool zero_flag = false;
  std::vector<Eigen::VectorXd> terms;
  terms.push_back(0.5 * zero_frequency_limit(f, decay_length, &zero_flag));
  r.n_points = 2;
  double tail = std::numeric_limits<double>::infinity();
  int n = 1;
  while (n <= settings.n_max) {
    const int count = std::min(settings.chunk, settings.n_max - n + 1);
    std::vector<double> xs;
    for (int k = 0; k < count; ++k) xs.push_back(step * (n + k));
    auto vals = evaluate_batch(f, xs, settings.workers);
    for (auto& v : vals) terms.push_back(std::move(v));
    n += count;
    r.n_points += count;
    const double last = max_abs(terms.back());
    const double prev = max_abs(terms[terms.size() - 2]);
    if (last == 0.0) {
      tail = 0.0;
    } else if (last < prev) {
      const double rho = last / prev;
      tail = last * rho / (1.0 - rho);
    } else {
      tail = std::numeric_limits<double>::infinity();
    }
    const double sum = max_abs(pairwise_sum(terms, 0, terms.size()));
    if (tail <= settings.tail_tol * sum) break;
  }
  r.value = step * pairwise_sum(terms, 0, terms.size());
  r.error = step * tail;
  if (!(tail <= settings.tail_tol * max_abs(r.value) / step)) {
    r.flagged = true;
    std::ostringstream os;
    os << "matsubara: tail bound " << tail << " not below tolerance after " << n - 1 << " terms";
    r.diagnostics = os.str();
  }
  if (zero_flag) {
    r.flagged = true;
    r.diagnostics += (r.diagnostics.empty() ? "" : "; ");
    r.diagnostics += "matsubara: zero-frequency extrapolation unstable";
  }
  return r;
}

SpectralResult integrate_spectrum(const Integrand& f, double reduced_temperature, double decay_length,
                                  const SpectralSettings& settings) {
  if (reduced_temperature < 0.0) throw DomainError("temperature must be >= 0");
  if (reduced_temperature == 0.0) return integrate_zero_t(f, decay_length, settings);
  return matsubara_sum(f, reduced_temperature, decay_length, settings);
}

}  // namespace casimir
