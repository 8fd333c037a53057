#include "jump_laws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "error.hpp"
#include "special.hpp"

namespace garchlim {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

void check_z(double z) {
  if (!std::isfinite(z)) throw std::domain_error("density: z must be finite");
}

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

JumpLaw JumpLaw::standard_normal() {
  JumpLaw law;
  law.kind_ = LawKind::StandardNormal;
  return law;
}

JumpLaw JumpLaw::cauchy(double a) {
  require(a > 0.0 && std::isfinite(a), "cauchy: scale a must be positive");
  JumpLaw law;
  law.kind_ = LawKind::Cauchy;
  law.cauchy_a_ = a;
  return law;
}

JumpLaw JumpLaw::symmetric_mixture() {
  return normal_mixture({0.5, 0.5}, {-0.5, 0.5}, {0.75, 0.75});
}

JumpLaw JumpLaw::normal_mixture(std::vector<double> weights, std::vector<double> means,
                                std::vector<double> variances) {
  require(!weights.empty() && weights.size() == means.size() &&
              weights.size() == variances.size(),
          "mixture: weights/means/variances must be nonempty and equally sized");
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    require(weights[i] > 0.0 && std::isfinite(weights[i]), "mixture: weights must be positive");
    require(variances[i] > 0.0 && std::isfinite(variances[i]),
            "mixture: variances must be positive");
    require(std::isfinite(means[i]), "mixture: means must be finite");
    total += weights[i];
  }
  require(std::fabs(total - 1.0) < 1e-12, "mixture: weights must sum to 1");
  JumpLaw law;
  law.kind_ = LawKind::NormalMixture;
  law.mix_w_ = std::move(weights);
  law.mix_mean_ = std::move(means);
  law.mix_var_ = std::move(variances);
  return law;
}

JumpLaw JumpLaw::symmetric_gamma(double a, double b, double c) {
  require(a > 0.0 && b > 0.0 && c > 0.0 && std::isfinite(a) && std::isfinite(b) &&
              std::isfinite(c),
          "gengamma: a, b, c must be positive");
  JumpLaw law;
  law.kind_ = LawKind::SymmetricGamma;
  law.gg_a_ = a;
  law.gg_b_ = b;
  law.gg_c_ = c;
  law.gg_log_norm_ =
      std::log(b / 2.0) + (c / b) * std::log(a) - std::lgamma(c / b);
  return law;
}

JumpLaw JumpLaw::parse(std::string_view spec) {
  auto parse_params = [&](std::string_view body) {
    std::vector<std::pair<std::string, double>> out;
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string_view item = body.substr(pos, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - pos);
      std::size_t eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("bad law spec: expected key=value in '" + std::string(spec) + "'");
      }
      std::string key(item.substr(0, eq));
      std::string valstr(item.substr(eq + 1));
      char* end = nullptr;
      double val = std::strtod(valstr.c_str(), &end);
      if (end == valstr.c_str() || *end != '\0' || !std::isfinite(val)) {
        throw ConfigError("bad law spec: cannot parse number '" + valstr + "'");
      }
      out.emplace_back(std::move(key), val);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return out;
  };

  std::string_view name = spec;
  std::string_view body;
  if (std::size_t colon = spec.find(':'); colon != std::string_view::npos) {
    name = spec.substr(0, colon);
    body = spec.substr(colon + 1);
  }

  try {
    if (name == "normal") {
      if (!body.empty()) throw ConfigError("bad law spec: normal takes no parameters");
      return standard_normal();
    }
    if (name == "cauchy") {
      if (body.empty()) return cauchy(1.0);
      auto params = parse_params(body);
      if (params.size() != 1 || params[0].first != "a") {
        throw ConfigError("bad law spec: cauchy expects a=<real>");
      }
      return cauchy(params[0].second);
    }
    if (name == "mixture") {
      if (!body.empty()) throw ConfigError("bad law spec: mixture takes no parameters");
      return symmetric_mixture();
    }
    if (name == "gengamma") {
      auto params = parse_params(body);
      double a = 0, b = 0, c = 0;
      bool ha = false, hb = false, hc = false;
      for (auto& [k, v] : params) {
        if (k == "a") { a = v; ha = true; }
        else if (k == "b") { b = v; hb = true; }
        else if (k == "c") { c = v; hc = true; }
        else throw ConfigError("bad law spec: unknown gengamma parameter '" + k + "'");
      }
      if (!(ha && hb && hc)) {
        throw ConfigError("bad law spec: gengamma expects a=<real>,b=<real>,c=<real>");
      }
      return symmetric_gamma(a, b, c);
    }
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("bad law spec: ") + e.what());
  }
  throw ConfigError("bad law spec: unknown law '" + std::string(spec) + "'");
}

std::string JumpLaw::spec_string() const {
  switch (kind_) {
    case LawKind::StandardNormal:
      return "normal";
    case LawKind::Cauchy:
      return "cauchy:a=" + fmt_num(cauchy_a_);
    case LawKind::NormalMixture:
      return "mixture";
    case LawKind::SymmetricGamma:
      return "gengamma:a=" + fmt_num(gg_a_) + ",b=" + fmt_num(gg_b_) + ",c=" + fmt_num(gg_c_);
  }
  return "normal";
}

double JumpLaw::density(double z) const {
  check_z(z);
  switch (kind_) {
    case LawKind::StandardNormal:
      return normal_pdf(z);
    case LawKind::Cauchy: {
      const double az = cauchy_a_ * z;
      return (cauchy_a_ / kPi) / (1.0 + az * az);
    }
    case LawKind::NormalMixture: {
      double f = 0.0;
      for (std::size_t i = 0; i < mix_w_.size(); ++i) {
        const double sd = std::sqrt(mix_var_[i]);
        f += mix_w_[i] * normal_pdf((z - mix_mean_[i]) / sd) / sd;
      }
      return f;
    }
    case LawKind::SymmetricGamma: {
      const double az = std::fabs(z);
      if (az == 0.0) {
        if (gg_c_ > 1.0) return 0.0;
        if (gg_c_ < 1.0) return std::numeric_limits<double>::infinity();
        return std::exp(gg_log_norm_);
      }
      return std::exp(gg_log_norm_ - gg_a_ * std::pow(az, gg_b_) + (gg_c_ - 1.0) * std::log(az));
    }
  }
  return 0.0;
}

double JumpLaw::log_density(double z) const {
  check_z(z);
  switch (kind_) {
    case LawKind::StandardNormal:
      return normal_log_pdf(z);
    case LawKind::Cauchy: {
      const double az = cauchy_a_ * z;
      return std::log(cauchy_a_ / kPi) - std::log1p(az * az);
    }
    case LawKind::NormalMixture: {
      // log-sum-exp over component log densities; robust far in the tails.
      double best = -std::numeric_limits<double>::infinity();
      std::vector<double> terms(mix_w_.size());
      for (std::size_t i = 0; i < mix_w_.size(); ++i) {
        const double sd = std::sqrt(mix_var_[i]);
        const double u = (z - mix_mean_[i]) / sd;
        terms[i] = std::log(mix_w_[i]) + normal_log_pdf(u) - std::log(sd);
        best = std::max(best, terms[i]);
      }
      double acc = 0.0;
      for (double t : terms) acc += std::exp(t - best);
      return best + std::log(acc);
    }
    case LawKind::SymmetricGamma: {
      const double az = std::fabs(z);
      return gg_log_norm_ - gg_a_ * std::pow(az, gg_b_) + (gg_c_ - 1.0) * std::log(az);
    }
  }
  return -std::numeric_limits<double>::infinity();
}

double JumpLaw::cdf(double z) const {
  check_z(z);
  switch (kind_) {
    case LawKind::StandardNormal:
      return normal_cdf(z);
    case LawKind::Cauchy:
      return 0.5 + std::atan(cauchy_a_ * z) / kPi;
    case LawKind::NormalMixture: {
      double f = 0.0;
      for (std::size_t i = 0; i < mix_w_.size(); ++i) {
        f += mix_w_[i] * normal_cdf((z - mix_mean_[i]) / std::sqrt(mix_var_[i]));
      }
      return f;
    }
    case LawKind::SymmetricGamma: {
      if (z == 0.0) return 0.5;
      const double p = regularized_gamma_p(gg_c_ / gg_b_, gg_a_ * std::pow(std::fabs(z), gg_b_));
      return z > 0.0 ? 0.5 + 0.5 * p : 0.5 - 0.5 * p;
    }
  }
  return 0.0;
}

void JumpLaw::sample(std::size_t count, RngStream& stream, double* out) const {
  switch (kind_) {
    case LawKind::StandardNormal:
      for (std::size_t i = 0; i < count; ++i) out[i] = stream.normal();
      return;
    case LawKind::Cauchy:
      for (std::size_t i = 0; i < count; ++i) out[i] = stream.cauchy(cauchy_a_);
      return;
    case LawKind::NormalMixture:
      for (std::size_t i = 0; i < count; ++i) {
        double u = stream.uniform01();
        std::size_t k = 0;
        double cum = mix_w_[0];
        while (u > cum && k + 1 < mix_w_.size()) cum += mix_w_[++k];
        out[i] = mix_mean_[k] + std::sqrt(mix_var_[k]) * stream.normal();
      }
      return;
    case LawKind::SymmetricGamma:
      // |Z|^b has a Gamma(c/b, rate a) law; attach a symmetric sign.
      for (std::size_t i = 0; i < count; ++i) {
        const double y = stream.gamma(gg_c_ / gg_b_) / gg_a_;
        const double sign = (stream.next_u64() & 1u) ? 1.0 : -1.0;
        out[i] = sign * std::pow(y, 1.0 / gg_b_);
      }
      return;
  }
}

std::vector<double> JumpLaw::sample_batch(std::size_t count, RngStream& stream) const {
  if (count == 0) throw std::domain_error("sample_batch: count must be >= 1");
  std::vector<double> out(count);
  sample(count, stream, out.data());
  return out;
}

bool JumpLaw::symmetric() const {
  if (kind_ != LawKind::NormalMixture) return true;
  // Symmetric iff components pair up as (w, -m, v) <-> (w, m, v).
  for (std::size_t i = 0; i < mix_w_.size(); ++i) {
    bool matched = false;
    for (std::size_t j = 0; j < mix_w_.size(); ++j) {
      if (std::fabs(mix_w_[i] - mix_w_[j]) < 1e-15 &&
          std::fabs(mix_mean_[i] + mix_mean_[j]) < 1e-15 &&
          std::fabs(mix_var_[i] - mix_var_[j]) < 1e-15) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace garchlim
