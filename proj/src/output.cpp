// Copyright 2026 The Anatomy Authors
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

#include "anatomy/output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace anatomy {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

std::string grid_csv(const char* header, const MatrixXr& values, Complex center, const GridSpec& grid) {
  std::string out = header;
  const int m = static_cast<int>(values.rows());
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      append_row(out, {center.real() + grid.coordinate(i), center.imag() + grid.coordinate(j),
                       values(i, j)});
  return out;
}

}  // namespace

std::string trajectory_csv(const WeakTrajectory& traj) {
  std::string out =
      "t,rho_gg,rho_ee,re_rho_ge,im_rho_ge,sigma_wv_g,sigma_wv_e,J_g,J_e,cum_dN_g,cum_dN_e\n";
  for (int n = 0; n <= traj.n_bins(); ++n) {
    const Matrix2c& rho = traj.rho[n];
    append_row(out, {traj.time(n), rho(0, 0).real(), rho(1, 1).real(), rho(0, 1).real(),
                     rho(0, 1).imag(), traj.sigma[0][n].real(), traj.sigma[1][n].real(),
                     traj.J[0][n], traj.J[1][n], traj.cum_dN[0][n], traj.cum_dN[1][n]});
  }
  return out;
}

std::string unconditional_csv(const WeakTrajectory& traj) {
  std::string out = "t,cum_dN,minus_rho_ee\n";
  for (int n = 0; n <= traj.n_bins(); ++n)
    append_row(out, {traj.time(n), traj.cum_dN_unconditional[n], -traj.rho[n](1, 1).real()});
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  const bool truncation = !rows.empty() && rows.front().dN_trunc1.has_value();
  std::string out = "theta_over_pi,P_g,P_e,dN_g,dN_e,dN_g_omega0,dN_e_omega0,neg_g,neg_e";
  if (truncation) out += ",dN_trunc1_g,dN_trunc1_e,dN_trunc2_g,dN_trunc2_e";
  out += '\n';
  for (const SweepRow& r : rows) {
    std::string line;
    append_row(line, {r.theta_over_pi, r.P[0], r.P[1], r.dN[0], r.dN[1], r.dN_omega0[0],
                      r.dN_omega0[1], r.negativity[0], r.negativity[1]});
    if (truncation) {
      line.pop_back();
      line += ',';
      append_row(line, {(*r.dN_trunc1)[0], (*r.dN_trunc1)[1], (*r.dN_trunc2)[0], (*r.dN_trunc2)[1]});
    }
    out += line;
  }
  return out;
}

std::string wigner_csv(const WignerGrid& grid) {
  return grid_csv("re_mu,im_mu,W\n", grid.values, grid.center, grid.grid);
}

std::string husimi_csv(const HusimiSlice& slice) {
  return grid_csv("re_s,im_s,Q\n", slice.values, slice.center, slice.grid);
}

nlohmann::json husimi_sidecar(const HusimiSlice& slice) {
  return {
      {"n", slice.n},
      {"outcome", std::string(name(slice.eps))},
      {"alpha_n", {slice.center.real(), slice.center.imag()}},
      {"route", std::string(name(slice.route))},
      {"coefficients", {{"A", slice.A}, {"B", slice.B}, {"C", {slice.C.real(), slice.C.imag()}}}},
      {"integration",
       {{"rule", "riemann"},
        {"step", slice.grid.step},
        {"half_width", slice.grid.half_width},
        {"points_per_axis", slice.grid.points_per_axis()},
        {"integral", slice.integral()},
        {"boundary_mass", slice.boundary_mass()},
        {"min_value", slice.min_value()}}},
  };
}

nlohmann::json config_json(const GateConfig& cfg) {
  return {{"gamma_tau", cfg.gamma_tau()},       {"theta_over_pi", cfg.theta_over_pi()},
          {"tau", cfg.tau},                     {"n_bins", cfg.n_bins},
          {"photon_cap", cfg.photon_cap},       {"grid_half_width", cfg.wigner_grid.half_width},
          {"grid_step", cfg.wigner_grid.step}};
}

namespace {

constexpr double kWidth = 640, kHeight = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string svg_open(std::string_view title) {
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
                    "\" height=\"" + fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(title) + "</text>\n";
  return out;
}

}  // namespace

std::string svg_line_plot(std::string_view title, std::string_view x_label, std::string_view y_label,
                          const std::vector<Series>& series) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::string out = svg_open(title);
  out += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + k * (x1 - x0) / 4, yv = y0 + k * (y1 - y0) / 4;
    out += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(kTop + ph + 16) +
           "\" text-anchor=\"middle\">" + tick(xv) + "</text>\n";
    out += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(py(yv) + 4) +
           "\" text-anchor=\"end\">" + tick(yv) + "</text>\n";
  }
  out += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 12) +
         "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  out += "<text x=\"16\" y=\"" + fmt(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt(kTop + ph / 2) + ")\">" + escape(y_label) + "</text>\n";

  int legend = 0;
  for (const Series& s : series) {
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      points += fmt(px(s.x[i])) + "," + fmt(py(s.y[i])) + " ";
    }
    if (!points.empty()) points.pop_back();
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"" +
           points + "\"/>\n";
    const double ly = kTop + 14 + 16 * legend++;
    out += "<line x1=\"" + fmt(kLeft + pw - 130) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" +
           fmt(kLeft + pw - 110) + "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt(kLeft + pw - 104) + "\" y=\"" + fmt(ly) + "\">" + escape(s.label) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string svg_heatmap(std::string_view title, const MatrixXr& values, double x_min, double x_max,
                        double y_min, double y_max) {
  // At most kMaxCells cells per axis; larger grids are subsampled.
  constexpr int kMaxCells = 120;
  const int stride = static_cast<int>((values.rows() + kMaxCells - 1) / kMaxCells);
  const int m = static_cast<int>((values.rows() + stride - 1) / stride);
  const double scale = std::max(values.cwiseAbs().maxCoeff(), 1e-300);
  const double side = kHeight - kTop - kBottom;
  const double cell = side / m;
  std::string out = svg_open(title);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const double raw = values(i * stride, j * stride);
      const double v = raw / scale;
      const int fade = static_cast<int>(std::lround(255.0 * (1.0 - std::min(1.0, std::abs(v)))));
      char color[8];
      if (v >= 0)
        std::snprintf(color, sizeof color, "#ff%02x%02x", fade, fade);
      else
        std::snprintf(color, sizeof color, "#%02x%02xff", fade, fade);
      out += "<rect x=\"" + fmt(kLeft + i * cell) + "\" y=\"" + fmt(kTop + (m - 1 - j) * cell) +
             "\" width=\"" + fmt(cell + 0.05) + "\" height=\"" + fmt(cell + 0.05) + "\" fill=\"" +
             color + "\" data-v=\"" + format_number(raw) + "\"/>\n";
    }
  }
  out += "<text x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop + side + 16) + "\">" + tick(x_min) + "</text>\n";
  out += "<text x=\"" + fmt(kLeft + side) + "\" y=\"" + fmt(kTop + side + 16) +
         "\" text-anchor=\"end\">" + tick(x_max) + "</text>\n";
  out += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(kTop + side) + "\" text-anchor=\"end\">" +
         tick(y_min) + "</text>\n";
  out += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(kTop + 10) + "\" text-anchor=\"end\">" +
         tick(y_max) + "</text>\n";
  out += "<text x=\"" + fmt(kLeft + side + 20) + "\" y=\"" + fmt(kTop + 20) + "\">max |W| = " +
         tick(scale) + "</text>\n";
  out += "</svg>\n";
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  const std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return sha256_hex(content);
}

void RunManifest::write(const std::string& name, std::string_view content) {
  const std::filesystem::path path = out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
  outputs.emplace_back(name, sha256_hex(content));
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json in = nlohmann::json::array();
  for (const auto& [path, hash] : inputs) in.push_back({{"path", path}, {"sha256", hash}});
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& [file, hash] : outputs) outs.push_back({{"file", file}, {"sha256", hash}});
  return {{"tool", "anatomy"},
          {"version", version},
          {"subcommand", subcommand},
          {"out_dir", out_dir.string()},
          {"config", config_json(cfg)},
          {"wall_clock_seconds", wall_clock_seconds},
          {"inputs", in},
          {"outputs", outs}};
}

}  // namespace anatomy
