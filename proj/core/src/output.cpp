#include "heleshaw/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

#include "json.hpp"

#include "heleshaw/errors.hpp"

namespace heleshaw::output {

namespace {

using scenario::ItemResult;
using scenario::RunResult;
using Complex = scenario::Complex;

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string brief(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Markers for the overlay: every distinct field charge and hydrodynamic
// singularity across the run, deduplicated by kind and position.
struct Marker {
  Complex position;
  bool is_charge;
};

std::vector<Marker> collect_markers(const RunResult& result) {
  std::vector<Marker> markers;
  auto push = [&](Complex pos, bool is_charge) {
    for (const auto& m : markers) {
      if (m.position == pos && m.is_charge == is_charge) return;
    }
    markers.push_back({pos, is_charge});
  };
  for (const auto& item : result.items) {
    if (!item.solved) continue;
    if (item.fieldspec) {
      if (const auto* pc =
              std::get_if<field::PointChargeField>(&*item.fieldspec)) {
        for (const auto& charge : pc->charges) push(charge.position, true);
      }
    }
    for (const auto& s : item.singularities) push(s.position, false);
  }
  return markers;
}

}  // namespace

std::string boundary_csv(const RunResult& result) {
  std::string out = "phi,re_z,im_z\n";
  bool first = true;
  for (const auto& item : result.items) {
    if (!item.solved || item.z.empty()) continue;
    if (!first) out += "\n";
    first = false;
    for (size_t k = 0; k < item.z.size(); ++k) {
      out += full(item.phi[k]);
      out += ',';
      out += full(item.z[k].real());
      out += ',';
      out += full(item.z[k].imag());
      out += '\n';
    }
  }
  return out;
}

std::string relation_csv(const RunResult& result) {
  std::string out = "alpha,beta,x0,mu_over_alpha\n";
  for (const auto& row : result.relation) {
    out += full(row.alpha);
    out += ',';
    out += full(row.beta);
    out += ',';
    out += full(row.position);
    out += ',';
    out += full(row.moment_ratio);
    out += '\n';
  }
  return out;
}

std::string svg_overlay(const RunResult& result) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  const auto markers = collect_markers(result);

  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  auto grow = [&](Complex z) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  };
  for (const auto& item : result.items) {
    for (Complex z : item.z) grow(z);
  }
  for (const auto& m : markers) grow(m.position);
  if (x0 > x1) {
    x0 = y0 = 0.0;
    x1 = y1 = 1.0;
  }
  const double margin = 0.05 * std::max(x1 - x0, y1 - y0);
  x0 -= margin;
  x1 += margin;
  y0 -= margin;
  y1 += margin;
  const double w = std::max(x1 - x0, 1e-9);
  const double h = std::max(y1 - y0, 1e-9);
  const double stroke = 0.004 * std::max(w, h);
  const double dot = 0.012 * std::max(w, h);

  std::ostringstream svg;
  // SVG y grows downward, so points are written as (x, -y) and the view
  // box covers the reflected range.
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << brief(x0)
      << ' ' << brief(-y1) << ' ' << brief(w) << ' ' << brief(h)
      << "\" width=\"720\" height=\"" << brief(720.0 * h / w) << "\">\n";
  svg << "<rect x=\"" << brief(x0) << "\" y=\"" << brief(-y1) << "\" width=\""
      << brief(w) << "\" height=\"" << brief(h) << "\" fill=\"#ffffff\"/>\n";

  int color = 0;
  for (const auto& item : result.items) {
    if (!item.solved || item.z.empty()) continue;
    svg << "<path d=\"";
    for (size_t k = 0; k < item.z.size(); ++k) {
      svg << (k == 0 ? 'M' : 'L') << brief(item.z[k].real()) << ' '
          << brief(-item.z[k].imag());
    }
    svg << "Z\" fill=\"none\" stroke=\"" << palette[color % 8]
        << "\" stroke-width=\"" << brief(stroke) << '"';
    if (!item.univalent) svg << " stroke-dasharray=\"" << brief(4 * stroke)
                             << ' ' << brief(3 * stroke) << '"';
    svg << "/>\n";
    ++color;
  }
  for (const auto& m : markers) {
    svg << "<circle cx=\"" << brief(m.position.real()) << "\" cy=\""
        << brief(-m.position.imag()) << "\" r=\"" << brief(dot)
        << "\" fill=\"" << (m.is_charge ? "#e69f00" : "#336699") << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string report_json(const RunResult& result) {
  nlohmann::json j;
  j["solver"] = result.config.solver;
  j["grid"] = result.config.grid;
  j["verify"] = result.config.verify;
  j["tolerance"] = result.config.tolerance;
  if (result.config.sweep) {
    j["sweep"] = {{"parameter", result.config.sweep->parameter},
                  {"values", result.config.sweep->values}};
  } else {
    j["sweep"] = nullptr;
  }

  j["items"] = nlohmann::json::array();
  for (const auto& item : result.items) {
    nlohmann::json ji;
    ji["label"] = item.label;
    ji["parameters"] = item.parameters;
    ji["solved"] = item.solved;
    ji["error"] = item.solved ? nlohmann::json() : nlohmann::json(item.error);
    if (item.solved) {
      ji["univalent"] = item.univalent;
      ji["samples"] = item.z.size();
      ji["area"] = std::isfinite(item.area) ? nlohmann::json(item.area)
                                            : nlohmann::json();
      if (item.threshold_value) {
        ji["threshold"] = {{"parameter", item.threshold_parameter},
                           {"critical", *item.threshold_value},
                           {"actual", item.threshold_actual}};
      } else {
        ji["threshold"] = nullptr;
      }
      if (item.verified) {
        nlohmann::json jv;
        jv["equilibrium"] = item.equilibrium;
        jv["max_residual"] = item.max_residual;
        jv["scale"] = item.residual_scale;
        jv["residuals"] = item.residuals;
        if (item.feasibility) {
          jv["feasibility"] = {{"re", item.feasibility->real()},
                               {"im", item.feasibility->imag()}};
        } else {
          jv["feasibility"] = nullptr;
        }
        jv["rationality_defect"] =
            item.rationality_defect ? nlohmann::json(*item.rationality_defect)
                                    : nlohmann::json();
        ji["verification"] = std::move(jv);
      } else {
        ji["verification"] = nullptr;
      }
    }
    j["items"].push_back(std::move(ji));
  }
  j["relation_rows"] = result.relation.size();
  return j.dump(2) + "\n";
}

std::string report_text(const RunResult& result) {
  std::ostringstream out;
  int solved = 0;
  for (const auto& item : result.items) solved += item.solved ? 1 : 0;
  out << result.config.solver << ": " << solved << "/" << result.items.size()
      << " item(s) solved\n";
  for (const auto& item : result.items) {
    out << "  " << item.label << ": ";
    if (!item.solved) {
      out << "FAILED (" << item.error << ")\n";
      continue;
    }
    out << (item.univalent ? "univalent" : "self-intersecting");
    if (std::isfinite(item.area)) out << ", area " << brief(item.area);
    if (item.threshold_value) {
      out << ", " << item.threshold_parameter << "="
          << brief(item.threshold_actual) << " vs critical "
          << brief(*item.threshold_value);
    }
    out << '\n';
    if (item.verified) {
      out << "    residual " << brief(item.max_residual) << " on scale "
          << brief(item.residual_scale) << " -> equilibrium "
          << (item.equilibrium ? "yes" : "NO");
      if (item.feasibility) {
        out << ", feasibility " << brief(item.feasibility->real());
        if (std::abs(item.feasibility->imag()) >
            1e-10 * std::abs(*item.feasibility)) {
          out << "+" << brief(item.feasibility->imag()) << "i";
        }
      }
      if (item.rationality_defect) {
        out << ", rationality defect " << brief(*item.rationality_defect);
      }
      out << '\n';
    }
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write file '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ConfigError("short write to '" + path + "'");
}

}  // namespace heleshaw::output
