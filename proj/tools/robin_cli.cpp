// Command-line front end: corner constants, eigenvalue sweeps, model tables,
// and the cusp growth scan.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "robin/corner_constants.hpp"
#include "robin/fem2d.hpp"
#include "robin/io.hpp"
#include "robin/model_solvers.hpp"
#include "robin/rayleigh.hpp"
#include "robin/special_functions.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct GammaGrid {
  double start = 1.0;
  double stop = 8.0;
  int count = 4;
  bool log_spaced = false;

  std::vector<double> values() const {
    if (count < 1 || !(start > 0.0) || !(stop >= start))
      throw std::invalid_argument("gamma grid must be positive and increasing");
    std::vector<double> g;
    if (count == 1) {
      g.push_back(start);
      return g;
    }
    for (int i = 0; i < count; ++i) {
      double t = static_cast<double>(i) / (count - 1);
      g.push_back(log_spaced ? start * std::pow(stop / start, t)
                             : start + t * (stop - start));
    }
    return g;
  }
};

void add_gamma_flags(CLI::App* cmd, GammaGrid& grid) {
  cmd->add_option("--gamma-start", grid.start, "First gamma value");
  cmd->add_option("--gamma-stop", grid.stop, "Last gamma value");
  cmd->add_option("--gamma-count", grid.count, "Number of gamma values");
  cmd->add_flag("--gamma-log", grid.log_spaced, "Logarithmic gamma spacing");
}

// Minimal static SVG: points joined by a polyline plus one horizontal
// reference line.
void write_svg(const std::string& path, const std::vector<double>& xs,
               const std::vector<double>& ys, double ref_y, const std::string& title) {
  const double W = 640, H = 480, L = 70, Rm = 20, Tm = 40, Bm = 50;
  double xmin = *std::min_element(xs.begin(), xs.end());
  double xmax = *std::max_element(xs.begin(), xs.end());
  double ymin = std::min(ref_y, *std::min_element(ys.begin(), ys.end()));
  double ymax = std::max(ref_y, *std::max_element(ys.begin(), ys.end()));
  double pad = 0.08 * (ymax - ymin + 1e-12);
  ymin -= pad;
  ymax += pad;
  auto X = [&](double x) { return L + (x - xmin) / (xmax - xmin + 1e-300) * (W - L - Rm); };
  auto Y = [&](double y) { return H - Bm - (y - ymin) / (ymax - ymin + 1e-300) * (H - Tm - Bm); };

  std::ofstream os(path);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='16'>" << title
     << "</text>\n";
  // axes
  os << "<line x1='" << L << "' y1='" << Y(ymin) << "' x2='" << L << "' y2='" << Y(ymax)
     << "' stroke='black'/>\n";
  os << "<line x1='" << X(xmin) << "' y1='" << H - Bm << "' x2='" << X(xmax) << "' y2='"
     << H - Bm << "' stroke='black'/>\n";
  os << "<text x='" << W / 2 << "' y='" << H - 12 << "' text-anchor='middle' font-size='13'>gamma</text>\n";
  os << "<text x='18' y='" << H / 2 << "' font-size='13' transform='rotate(-90 18 " << H / 2
     << ")' text-anchor='middle'>lambda / gamma^2</text>\n";
  // reference line
  os << "<line x1='" << X(xmin) << "' y1='" << Y(ref_y) << "' x2='" << X(xmax) << "' y2='"
     << Y(ref_y) << "' stroke='red' stroke-dasharray='6,4'/>\n";
  os << "<text x='" << X(xmax) - 4 << "' y='" << Y(ref_y) - 6
     << "' text-anchor='end' font-size='12' fill='red'>" << ref_y << "</text>\n";
  // data
  os << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
  for (std::size_t i = 0; i < xs.size(); ++i) os << X(xs[i]) << "," << Y(ys[i]) << " ";
  os << "'/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << "<circle cx='" << X(xs[i]) << "' cy='" << Y(ys[i]) << "' r='3' fill='steelblue'/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    os << "<text x='" << X(xs[i]) << "' y='" << H - Bm + 16
       << "' text-anchor='middle' font-size='11'>" << xs[i] << "</text>\n";
  }
  os << "</svg>\n";
}

int cmd_corner(const std::string& input, const std::string& out_dir) {
  robin::DomainFile dom = robin::load_domain_file(input);
  if (dom.cusp_p) {
    std::cerr << "corner: outward-pointing cusp (p = " << *dom.cusp_p
              << ") rejected: the quadratic corner law does not apply, |lambda| "
                 "grows faster than gamma^2; use the cusp command instead\n";
    return kExitValidation;
  }
  if (dom.cone) {
    robin::ConeBounds b = robin::bounds_codim3(*dom.cone);
    std::cout << "C_y bracket: [" << std::setprecision(12) << b.lower << ", " << b.upper
              << "]" << (b.exact ? " (exact)" : "") << "\n";
    std::cout << "a_opt = " << b.a_opt << "\n";
    std::string json = robin::cone_bounds_to_json(b);
    std::cout << json << "\n";
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      std::ofstream(out_dir + "/cone_bounds.json") << json << "\n";
    }
    return 0;
  }
  const robin::PlanarPolygon& poly = *dom.polygon;
  const int n = static_cast<int>(poly.vertices.size());
  std::vector<robin::CornerDescriptor> corners;
  for (int i = 0; i < n; ++i) {
    robin::CornerDescriptor c;
    double alpha = poly.half_angle(i);
    c.kind = robin::CornerDescriptor::Kind::PlanarAngle;
    c.alpha = alpha;
    // G at the corner: the larger of the two adjacent edge values.
    c.weight = std::max(poly.edge_weight[(i + n - 1) % n], poly.edge_weight[i]);
    corners.push_back(c);
  }
  // Smooth part of the boundary: the strongest edge contributes G^2 * 1.
  robin::CornerDescriptor smooth;
  smooth.kind = robin::CornerDescriptor::Kind::SmoothPoint;
  smooth.weight = *std::max_element(poly.edge_weight.begin(), poly.edge_weight.end());
  corners.push_back(smooth);

  robin::DomainConstant dc = robin::domain_constant(corners);
  std::cout << "corner  half-angle[rad]  G       G^2*C_y\n";
  for (int i = 0; i < n; ++i) {
    double cy = robin::c2d(corners[i].alpha);
    std::cout << std::setw(6) << i << "  " << std::setw(15) << std::setprecision(6)
              << corners[i].alpha << "  " << std::setw(6) << corners[i].weight << "  "
              << corners[i].weight * corners[i].weight * cy << "\n";
  }
  std::cout << "smooth part: G^2*C = " << smooth.weight * smooth.weight << "\n";
  std::cout << "C_Omega = " << std::setprecision(12) << dc.value << " attained at "
            << (dc.argmax < static_cast<std::size_t>(n)
                    ? "corner " + std::to_string(dc.argmax)
                    : std::string("the smooth boundary"))
            << "\n";
  return 0;
}

int cmd_sweep(const std::string& input, const GammaGrid& grid, const std::string& out_dir,
              double h) {
  robin::DomainFile dom = robin::load_domain_file(input);
  if (!dom.polygon) {
    std::cerr << "sweep: input must be a polygon domain\n";
    return kExitValidation;
  }
  const robin::PlanarPolygon& poly = *dom.polygon;
  std::vector<double> gammas = grid.values();

  // Predicted constant from the corner law.
  const int n = static_cast<int>(poly.vertices.size());
  double c_pred = 1.0;
  for (int i = 0; i < n; ++i) {
    double g = std::max(poly.edge_weight[(i + n - 1) % n], poly.edge_weight[i]);
    c_pred = std::max(c_pred, g * g * robin::c2d(poly.half_angle(i)));
  }
  for (double g : poly.edge_weight) c_pred = std::max(c_pred, g * g);

  robin::SweepResult sw = robin::gamma_sweep(poly, gammas, h);

  std::cout << "gamma,lambda,ratio,dof,residual\n";
  for (const auto& r : sw.rows)
    std::cout << std::setprecision(12) << r.gamma << "," << r.lambda << "," << r.ratio << ","
              << r.dof << "," << r.residual << "\n";
  std::cout << "# C_est = " << sw.c_est << " (predicted " << c_pred << ")\n";

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream csv(out_dir + "/sweep.csv");
    csv << "gamma,lambda,ratio,dof,residual\n";
    for (const auto& r : sw.rows)
      csv << std::setprecision(17) << r.gamma << "," << r.lambda << "," << r.ratio << ","
          << r.dof << "," << r.residual << "\n";
    std::vector<double> xs, ys;
    for (const auto& r : sw.rows) {
      xs.push_back(r.gamma);
      ys.push_back(r.ratio);
    }
    write_svg(out_dir + "/sweep.svg", xs, ys, -c_pred, "lambda/gamma^2 vs gamma");
  }
  return 0;
}

int cmd_model(const std::string& name, const GammaGrid& grid, int m, double alpha,
              std::vector<double> half_sides, const std::string& out_dir) {
  robin::ModelDomain dom;
  if (name == "halfline") {
    dom = robin::HalfLine{};
  } else if (name == "ball") {
    dom = robin::Ball{m};
  } else if (name == "parallelepiped") {
    if (half_sides.empty()) {
      std::cerr << "model: parallelepiped needs --l half-side values\n";
      return kExitValidation;
    }
    dom = robin::Parallelepiped{half_sides};
  } else if (name == "angle") {
    dom = robin::ModelPlanarAngle{alpha};
  } else if (name == "halfspace-cone") {
    dom = robin::HalfSpaceCone{};
  } else {
    std::cerr << "model: unknown model \"" << name << "\"\n";
    return kExitValidation;
  }

  std::ostringstream table;
  table << "gamma,lambda,ratio\n";
  for (double g : grid.values()) {
    double lam = robin::model_lambda(dom, g);
    table << std::setprecision(12) << g << "," << lam << "," << lam / (g * g) << "\n";
  }
  std::cout << table.str();
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(out_dir + "/model.csv") << table.str();
  }
  return 0;
}

int cmd_cusp(double p, const GammaGrid& grid, const std::string& out_dir) {
  if (p >= 2.0) {
    std::cerr << "cusp: p = " << p
              << " rejected: |lambda| grows faster than any power of gamma "
                 "(unbounded order); only 1 < p < 2 has a finite exponent\n";
    return kExitValidation;
  }
  robin::CuspScanResult scan = robin::cusp_scan(p, grid.values());
  std::ostringstream csv;
  csv << "gamma,J,log_gamma,log_negJ\n";
  for (std::size_t i = 0; i < scan.gammas.size(); ++i)
    csv << std::setprecision(12) << scan.gammas[i] << "," << scan.quotients[i] << ","
        << std::log(scan.gammas[i]) << "," << std::log(-scan.quotients[i]) << "\n";
  std::cout << csv.str();
  std::cout << "# fitted exponent = " << scan.exponent << " (prediction "
            << robin::cusp_upper_exponent(p) << ")\n";
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(out_dir + "/cusp.csv") << csv.str();
  }
  return 0;
}

// A JSON config file may mirror the command-line flags:
// {"command": "sweep", "input": "...", "gamma_start": 1, ...}.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (std::next(it) == args.end())
    throw std::invalid_argument("--config needs a file path");
  std::ifstream in(*std::next(it));
  if (!in) throw std::invalid_argument("cannot open config file");
  nlohmann::json j;
  in >> j;
  std::vector<std::string> expanded;
  if (j.contains("command")) expanded.push_back(j["command"].get<std::string>());
  for (const auto& [key, val] : j.items()) {
    if (key == "command") continue;
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (val.is_boolean()) {
      if (val.get<bool>()) expanded.push_back(flag);
    } else if (val.is_array()) {
      for (const auto& v : val) {
        expanded.push_back(flag);
        expanded.push_back(v.dump());
      }
    } else {
      expanded.push_back(flag);
      expanded.push_back(val.is_string() ? val.get<std::string>() : val.dump());
    }
  }
  args.erase(it, std::next(it, 2));
  expanded.insert(expanded.end(), args.begin(), args.end());
  return expanded;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal Robin eigenvalue asymptotics toolkit"};
  app.require_subcommand(1);

  std::string input, out_dir;
  double h = 0.1, p = 1.5, alpha = 0.0;
  int m = 2;
  std::vector<double> half_sides;
  GammaGrid grid;
  std::string model_name;

  auto* corner = app.add_subcommand("corner", "Per-corner constants and C for a domain");
  corner->add_option("--input", input, "Domain JSON file")->required();
  corner->add_option("--out", out_dir, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "FEM eigenvalue sweep over gamma");
  sweep->add_option("--input", input, "Polygon JSON file")->required();
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--mesh-size", h, "Background mesh size");
  add_gamma_flags(sweep, grid);

  auto* model = app.add_subcommand("model", "Exact lambda table for a model domain");
  model->add_option("--model", model_name, "halfline|ball|parallelepiped|angle|halfspace-cone")
      ->required();
  model->add_option("--m", m, "Ball dimension");
  model->add_option("--alpha", alpha, "Angle half-opening (radians)");
  model->add_option("--l", half_sides, "Parallelepiped half-sides");
  model->add_option("--out", out_dir, "Output directory");
  add_gamma_flags(model, grid);

  auto* cusp = app.add_subcommand("cusp", "Cusp growth-exponent scan");
  cusp->add_option("--p", p, "Cusp exponent (1 < p < 2)")->required();
  cusp->add_option("--out", out_dir, "Output directory");
  grid.start = 10.0;
  grid.stop = 100.0;
  grid.count = 10;
  grid.log_spaced = true;
  add_gamma_flags(cusp, grid);

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::vector<const char*> cargs = {argv[0]};
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (corner->parsed()) return cmd_corner(input, out_dir);
    if (sweep->parsed()) return cmd_sweep(input, grid, out_dir, h);
    if (model->parsed()) return cmd_model(model_name, grid, m, alpha, half_sides, out_dir);
    if (cusp->parsed()) return cmd_cusp(p, grid, out_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
