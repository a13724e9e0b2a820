// Copyright 2026 The PolarForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polarforge/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polarforge/core/resample.hpp"

namespace polarforge::metrics {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimK1 = 0.01;
constexpr double kSsimK2 = 0.03;

double mean_abs_diff(const Plane& a, const Plane& b) {
  require_same_dims(a, b, "mean_abs_diff");
  double acc = 0.0;
  for (size_t k = 0; k < a.size(); ++k)
    acc += std::abs(static_cast<double>(a.data[k]) - b.data[k]);
  return acc / static_cast<double>(a.size());
}

double mean_abs_diff(const ColorImage& a, const ColorImage& b) {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) acc += mean_abs_diff(a.channels[c], b.channels[c]);
  return acc / 3.0;
}

double ssim_channel(const Plane& x, const Plane& y) {
  const int h = x.height;
  const int w = x.width;
  const int valid_h = h - kSsimWindow + 1;
  const int valid_w = w - kSsimWindow + 1;

  std::array<double, kSsimWindow> kernel;
  double ksum = 0.0;
  for (int i = 0; i < kSsimWindow; ++i) {
    const double d = i - (kSsimWindow - 1) / 2.0;
    kernel[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
    ksum += kernel[i];
  }
  for (double& k : kernel) k /= ksum;

  // Five separable moment maps: E[x], E[y], E[x^2], E[y^2], E[xy].
  const size_t plane_n = static_cast<size_t>(h) * valid_w;
  std::array<std::vector<double>, 5> horiz;
  for (auto& v : horiz) v.assign(plane_n, 0.0);
  for (int row = 0; row < h; ++row) {
    const float* xr = &x.data[static_cast<size_t>(row) * w];
    const float* yr = &y.data[static_cast<size_t>(row) * w];
    for (int col = 0; col < valid_w; ++col) {
      double mx = 0.0, my = 0.0, mxx = 0.0, myy = 0.0, mxy = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) {
        const double xv = xr[col + k];
        const double yv = yr[col + k];
        mx += kernel[k] * xv;
        my += kernel[k] * yv;
        mxx += kernel[k] * xv * xv;
        myy += kernel[k] * yv * yv;
        mxy += kernel[k] * xv * yv;
      }
      const size_t idx = static_cast<size_t>(row) * valid_w + col;
      horiz[0][idx] = mx;
      horiz[1][idx] = my;
      horiz[2][idx] = mxx;
      horiz[3][idx] = myy;
      horiz[4][idx] = mxy;
    }
  }

  const double c1 = kSsimK1 * kSsimK1;
  const double c2 = kSsimK2 * kSsimK2;
  double total = 0.0;
  for (int row = 0; row < valid_h; ++row) {
    for (int col = 0; col < valid_w; ++col) {
      double m[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
      for (int k = 0; k < kSsimWindow; ++k) {
        const size_t idx = static_cast<size_t>(row + k) * valid_w + col;
        for (int j = 0; j < 5; ++j) m[j] += kernel[k] * horiz[j][idx];
      }
      const double mu_x = m[0];
      const double mu_y = m[1];
      const double var_x = m[2] - mu_x * mu_x;
      const double var_y = m[3] - mu_y * mu_y;
      const double cov = m[4] - mu_x * mu_y;
      const double num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2);
      const double den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2);
      total += num / den;
    }
  }
  return total / (static_cast<double>(valid_h) * valid_w);
}

QualityEntry quality_entry(const ColorImage& pred, const ColorImage& gt) {
  QualityEntry e;
  e.psnr = psnr(pred, gt);
  e.ssim = ssim(pred, gt);
  e.identical = std::isinf(e.psnr);
  return e;
}

nlohmann::json entry_json(const QualityEntry& e) {
  nlohmann::json j;
  j["psnr"] = e.identical ? nlohmann::json(nullptr) : nlohmann::json(e.psnr);
  j["ssim"] = e.ssim;
  j["identical"] = e.identical;
  return j;
}

QualityEntry entry_from_json(const nlohmann::json& j) {
  QualityEntry e;
  e.identical = j.at("identical").get<bool>();
  e.psnr = e.identical ? std::numeric_limits<double>::infinity() : j.at("psnr").get<double>();
  e.ssim = j.at("ssim").get<double>();
  return e;
}

QualityEntry mean_entry(const std::vector<EvalReport>& reports,
                        QualityEntry EvalReport::* member) {
  QualityEntry out;
  double psnr_acc = 0.0, ssim_acc = 0.0;
  for (const EvalReport& r : reports) {
    psnr_acc += (r.*member).psnr;
    ssim_acc += (r.*member).ssim;
  }
  out.psnr = psnr_acc / reports.size();
  out.ssim = ssim_acc / reports.size();
  out.identical = std::isinf(out.psnr);
  return out;
}

}  // namespace

double psnr(const ColorImage& x, const ColorImage& gt) {
  require_same_dims(x, gt, "psnr");
  double acc = 0.0;
  size_t n = 0;
  for (int c = 0; c < 3; ++c) {
    const Plane& a = x.channels[c];
    const Plane& b = gt.channels[c];
    for (size_t k = 0; k < a.size(); ++k) {
      const double d = static_cast<double>(a.data[k]) - b.data[k];
      acc += d * d;
    }
    n += a.size();
  }
  const double mse = acc / static_cast<double>(n);
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(mse);
}

double ssim(const ColorImage& x, const ColorImage& gt) {
  require_same_dims(x, gt, "ssim");
  if (x.height() < kSsimWindow || x.width() < kSsimWindow)
    throw std::invalid_argument("ssim requires images of at least 11x11");
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) acc += ssim_channel(x.channels[c], gt.channels[c]);
  return acc / 3.0;
}

double mae_angular(const ColorImage& theta, const ColorImage& theta_gt) {
  require_same_dims(theta, theta_gt, "mae_angular");
  double acc = 0.0;
  size_t n = 0;
  for (int c = 0; c < 3; ++c) {
    const Plane& a = theta.channels[c];
    const Plane& b = theta_gt.channels[c];
    for (size_t k = 0; k < a.size(); ++k)
      acc += polar::angular_distance(a.data[k], b.data[k]);
    n += a.size();
  }
  return (acc / static_cast<double>(n)) * (180.0 / kPi);
}

double error_rate(const ColorImage& v, const ColorImage& v_gt) {
  require_same_dims(v, v_gt, "error_rate");
  double num = 0.0;
  double den = 0.0;
  for (int c = 0; c < 3; ++c) {
    const Plane& a = v.channels[c];
    const Plane& b = v_gt.channels[c];
    for (size_t k = 0; k < a.size(); ++k) {
      num += std::abs(static_cast<double>(a.data[k]) - b.data[k]);
      den += a.data[k];
    }
  }
  if (den <= 0.0) throw std::invalid_argument("degenerate denominator");
  return num / den;
}

double error_rate_angular(const ColorImage& theta, const ColorImage& theta_gt) {
  require_same_dims(theta, theta_gt, "error_rate_angular");
  double num = 0.0;
  double den = 0.0;
  for (int c = 0; c < 3; ++c) {
    const Plane& a = theta.channels[c];
    const Plane& b = theta_gt.channels[c];
    for (size_t k = 0; k < a.size(); ++k) {
      num += polar::angular_distance(a.data[k], b.data[k]);
      den += a.data[k];
    }
  }
  if (den <= 0.0) throw std::invalid_argument("degenerate denominator");
  return num / den;
}

LossTerms loss_terms(const PolarStack& pred, const PolarStack& gt) {
  require_same_dims(pred, gt, "loss_terms");
  LossTerms out;

  // Image term: polarization identity of the prediction + gradient loss.
  {
    double identity_acc = 0.0;
    size_t n = 0;
    for (int c = 0; c < 3; ++c) {
      const Plane& i000 = pred.i000().channels[c];
      const Plane& i045 = pred.i045().channels[c];
      const Plane& i090 = pred.i090().channels[c];
      const Plane& i135 = pred.i135().channels[c];
      for (size_t k = 0; k < i000.size(); ++k) {
        identity_acc += std::abs(static_cast<double>(i000.data[k]) + i090.data[k] -
                                 i045.data[k] - i135.data[k]);
      }
      n += i000.size();
    }
    double grad_acc = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int c = 0; c < 3; ++c)
        grad_acc += core::gradient_l1(pred.images[i].channels[c], gt.images[i].channels[c]);
    out.img = identity_acc / static_cast<double>(n) + grad_acc / 12.0;
  }

  const StokesStack sp = polar::compute_stokes(pred);
  const StokesStack sg = polar::compute_stokes(gt);

  // Stokes term: S0 gradient loss + S1/S2 L1.
  {
    double grad_acc = 0.0;
    for (int c = 0; c < 3; ++c)
      grad_acc += core::gradient_l1(sp.s0.channels[c], sg.s0.channels[c]);
    const double l1_s12 = (mean_abs_diff(sp.s1, sg.s1) + mean_abs_diff(sp.s2, sg.s2)) / 2.0;
    out.stokes = grad_acc / 3.0 + l1_s12;
  }

  // Polarization term: DoP L1 + pi-periodic AoP L1 (radians).
  {
    const PolarParams pp = polar::compute_params(sp);
    const PolarParams pg = polar::compute_params(sg);
    double aop_acc = 0.0;
    size_t n = 0;
    for (int c = 0; c < 3; ++c) {
      const Plane& a = pp.aop.channels[c];
      const Plane& b = pg.aop.channels[c];
      for (size_t k = 0; k < a.size(); ++k)
        aop_acc += polar::angular_distance(a.data[k], b.data[k]);
      n += a.size();
    }
    out.pol = mean_abs_diff(pp.dop, pg.dop) + aop_acc / static_cast<double>(n);
  }

  out.total = kLossWeightImg * out.img + kLossWeightStokes * out.stokes +
              kLossWeightPol * out.pol;
  return out;
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json j;
  j["method"] = method;
  j["scale"] = scale;
  j["scenes"] = scene_count;
  nlohmann::json q;
  static const char* image_keys[4] = {"I000", "I045", "I090", "I135"};
  for (int i = 0; i < 4; ++i) q[image_keys[i]] = entry_json(images[i]);
  q["S0"] = entry_json(s0);
  q["p"] = entry_json(dop);
  q["theta"] = {{"mae_deg", aop_mae_deg}};
  j["quantities"] = q;
  return j;
}

EvalReport EvalReport::from_json(const nlohmann::json& j) {
  EvalReport r;
  r.method = j.at("method").get<std::string>();
  r.scale = j.at("scale").get<std::string>();
  r.scene_count = j.at("scenes").get<int>();
  const nlohmann::json& q = j.at("quantities");
  static const char* image_keys[4] = {"I000", "I045", "I090", "I135"};
  for (int i = 0; i < 4; ++i) r.images[i] = entry_from_json(q.at(image_keys[i]));
  r.s0 = entry_from_json(q.at("S0"));
  r.dop = entry_from_json(q.at("p"));
  r.aop_mae_deg = q.at("theta").at("mae_deg").get<double>();
  return r;
}

EvalReport evaluate(const PolarStack& pred, const PolarStack& gt,
                    const std::string& scale_tag, const std::string& method_name) {
  require_same_dims(pred, gt, "evaluate");
  EvalReport r;
  r.method = method_name;
  r.scale = scale_tag;
  r.scene_count = 1;
  for (int i = 0; i < 4; ++i) r.images[i] = quality_entry(pred.images[i], gt.images[i]);

  const StokesStack sp = polar::compute_stokes(pred);
  const StokesStack sg = polar::compute_stokes(gt);
  r.s0 = quality_entry(sp.s0, sg.s0);

  const PolarParams pp = polar::compute_params(sp);
  const PolarParams pg = polar::compute_params(sg);
  r.dop = quality_entry(pp.dop, pg.dop);
  r.aop_mae_deg = mae_angular(pp.aop, pg.aop);
  return r;
}

EvalReport aggregate(const std::vector<EvalReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("aggregate of zero reports");
  EvalReport out;
  out.method = reports.front().method;
  out.scale = reports.front().scale;
  out.scene_count = 0;
  for (const EvalReport& r : reports) out.scene_count += r.scene_count;
  for (int i = 0; i < 4; ++i) {
    double psnr_acc = 0.0, ssim_acc = 0.0;
    for (const EvalReport& r : reports) {
      psnr_acc += r.images[i].psnr;
      ssim_acc += r.images[i].ssim;
    }
    out.images[i].psnr = psnr_acc / reports.size();
    out.images[i].ssim = ssim_acc / reports.size();
    out.images[i].identical = std::isinf(out.images[i].psnr);
  }
  out.s0 = mean_entry(reports, &EvalReport::s0);
  out.dop = mean_entry(reports, &EvalReport::dop);
  double mae_acc = 0.0;
  for (const EvalReport& r : reports) mae_acc += r.aop_mae_deg;
  out.aop_mae_deg = mae_acc / reports.size();
  return out;
}

}  // namespace polarforge::metrics
