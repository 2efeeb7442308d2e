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

#include "casimir/permittivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

PermittivityModel PermittivityModel::constant(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("permittivity: constant eps must be finite and > 0");
  }
  PermittivityModel m;
  m.kind_ = Kind::Constant;
  m.eps_inf_ = eps;
  return m;
}

PermittivityModel PermittivityModel::drude_lorentz(double eps_inf, std::vector<Oscillator> oscillators) {
  if (!(eps_inf > 0.0)) throw DomainError("permittivity: eps_inf must be > 0");
  for (const auto& o : oscillators) {
    if (!(o.strength >= 0.0) || !(o.resonance >= 0.0) || !(o.damping >= 0.0)) {
      throw DomainError("permittivity: oscillator parameters must be non-negative");
    }
  }
  PermittivityModel m;
  m.kind_ = Kind::DrudeLorentz;
  m.eps_inf_ = eps_inf;
  m.oscillators_ = std::move(oscillators);
  return m;
}

PermittivityModel PermittivityModel::table(std::vector<PermittivitySample> samples) {
  if (samples.size() < 2) throw DomainError("permittivity: table needs at least two samples");
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.xi_ev < b.xi_ev; });
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].xi_ev > 0.0) || !(samples[i].eps > 0.0)) {
      throw DomainError("permittivity: table samples need xi > 0 and eps > 0");
    }
    if (i > 0 && samples[i].xi_ev == samples[i - 1].xi_ev) {
      throw DomainError("permittivity: duplicate table frequency");
    }
  }
  PermittivityModel m;
  m.kind_ = Kind::Table;
  m.samples_ = std::move(samples);
  return m;
}

double PermittivityModel::operator()(double xi_ev) const {
  switch (kind_) {
    case Kind::Constant:
      return eps_inf_;
    case Kind::DrudeLorentz: {
      double eps = eps_inf_;
      for (const auto& o : oscillators_) {
        const double den = o.resonance * o.resonance + xi_ev * xi_ev + o.damping * xi_ev;
        eps += den > 0.0 ? o.strength / den : std::numeric_limits<double>::infinity();
      }
      return eps;
    }
    case Kind::Table: {
      if (xi_ev <= samples_.front().xi_ev) return samples_.front().eps;
      if (xi_ev >= samples_.back().xi_ev) return samples_.back().eps;
      const auto hi = std::upper_bound(samples_.begin(), samples_.end(), xi_ev,
                                       [](double x, const auto& s) { return x < s.xi_ev; });
      const auto lo = hi - 1;
      const double t = std::log(xi_ev / lo->xi_ev) / std::log(hi->xi_ev / lo->xi_ev);
      return lo->eps + t * (hi->eps - lo->eps);
    }
  }
  return eps_inf_;
}

std::string PermittivityModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::Constant:
      os << "constant(" << eps_inf_ << ")";
      break;
    case Kind::DrudeLorentz:
      os << "drude_lorentz(" << eps_inf_ << ";" << oscillators_.size() << " terms)";
      break;
    case Kind::Table:
      os << "table(" << samples_.size() << " samples)";
      break;
  }
  return os.str();
}

}  // namespace casimir
