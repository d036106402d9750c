#include "cli.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "curvcx/complex_io.hpp"
#include "curvcx/curvature.hpp"
#include "curvcx/errors.hpp"
#include "curvcx/generators.hpp"
#include "curvcx/isoperimetry.hpp"
#include "curvcx/kernels.hpp"
#include "curvcx/metric.hpp"
#include "curvcx/report.hpp"
#include "curvcx/spectral.hpp"

namespace curvcx {

namespace {

struct UsageError : Error {
  using Error::Error;
};

// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot write " + path);
    }
    os_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

Structure load(const std::string& path) { return make_structure(read_complex_file(path)); }

FaceId center_of(const Structure& s, std::optional<FaceId> flag) {
  FaceId o = flag ? *flag : s.center.value_or(0);
  if (o < 0 || static_cast<std::size_t>(o) >= s.complex->num_faces()) {
    throw UsageError("--center " + std::to_string(o) + " is not a face");
  }
  return o;
}

int eccentricity(const PolygonalComplex& X, FaceId o) {
  kernels::LocalBfs bfs(X.num_faces());
  bfs.run(X, o, static_cast<int>(X.num_faces()));
  int e = 0;
  for (FaceId f : bfs.order()) e = std::max(e, bfs.dist(f));
  return e;
}

int radius_of(const Structure& s, FaceId o, std::optional<int> flag) {
  if (flag) return *flag;
  if (s.complex->truncated()) {
    if (!s.trusted_radius) throw UsageError("--radius is required for this complex");
    return *s.trusted_radius;
  }
  return eccentricity(*s.complex, o);
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError("not a rational: '" + text + "'");
  }
}

// "face,value" rows; a first row that does not start with a digit is a header.
std::vector<std::pair<FaceId, std::string>> read_face_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<std::pair<FaceId, std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (first && !std::isdigit(static_cast<unsigned char>(line[0]))) {
      first = false;
      continue;
    }
    first = false;
    if (comma == std::string::npos) throw ParseError(path + ": expected face,value in '" + line + "'");
    try {
      rows.emplace_back(std::stoi(line.substr(0, comma)), line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError(path + ": bad face id in '" + line + "'");
    }
  }
  return rows;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return os.str();
}

void print_reports(std::ostream& os, const std::vector<ValidationReport>& reports, const std::string& prefix, bool& ok) {
  for (const auto& r : reports) {
    os << prefix << r.axiom << ' ' << (r.pass ? "pass" : "FAIL") << ' ' << r.scope << '\n';
    for (const auto& off : r.offending) {
      os << "  " << off.kind;
      for (auto c : off.cells) os << ' ' << c;
      os << ": " << off.detail << '\n';
    }
    ok = ok && r.pass;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"curvcx: curvature, face metric, isoperimetry and spectra of polygonal complexes"};
  app.require_subcommand(1);
  int threads = 0;
  std::uint64_t seed = 0;
  app.add_option("--threads", threads, "worker threads (default: all cores)")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for apartment sampling");

  std::string in_path, out_path;
  std::optional<FaceId> center;
  std::optional<int> radius;
  auto common = [&](CLI::App* sub, bool needs_in = true) {
    if (needs_in) sub->add_option("--in", in_path, "complex file")->required();
    sub->add_option("--out", out_path, "output file (default: stdout)");
  };
  auto ball = [&](CLI::App* sub) {
    sub->add_option("--center", center, "center face (default: the file's center, else 0)");
    sub->add_option("--radius", radius, "ball radius (default: the trusted radius)")->check(CLI::NonNegativeNumber);
  };

  // generate
  GeneratorSpec spec;
  std::optional<int> gp, gq, gr, gs, gt, gn, gk, gcore, gm;
  std::size_t apartment_cap = 4096;
  std::optional<std::size_t> face_cap;
  auto* gen = app.add_subcommand("generate", "build a complex from a family");
  common(gen, false);
  gen->add_option("--family", spec.family, "regular_pq, coxeter_triangle, product_trees, book, sigma_n, mixed, spherical, cubic_squares")
      ->required();
  gen->add_option("--p", gp);
  gen->add_option("--q", gq);
  gen->add_option("--r", gr);
  gen->add_option("--s", gs);
  gen->add_option("--t", gt);
  gen->add_option("--n", gn);
  gen->add_option("--k", gk);
  gen->add_option("--core", gcore, "square core radius for mixed");
  gen->add_option("--m", gm, "half side length for cubic_squares");
  gen->add_option("--kind", spec.kind, "spherical solid");
  gen->add_option("--radius", spec.radius, "trusted radius")->check(CLI::NonNegativeNumber);
  gen->add_option("--apartment-cap", apartment_cap)->check(CLI::PositiveNumber);
  gen->add_option("--face-cap", face_cap)->check(CLI::PositiveNumber);

  auto* val = app.add_subcommand("validate", "check tessellation and apartment axioms");
  common(val);
  ball(val);

  bool faces_only = false;
  std::string faces_out;
  auto* cur = app.add_subcommand("curvature", "corner and face curvature tables");
  common(cur);
  ball(cur);
  cur->add_option("--faces-out", faces_out, "face table file (default: after the corner table)");
  cur->add_flag("--faces-only", faces_only);

  FaceId from = 0, to = 0;
  bool enumerate = false;
  std::uint64_t geo_cap = 100000;
  auto* geo = app.add_subcommand("geodesics", "distance, interval and bigons between two faces");
  common(geo);
  geo->add_option("--from", from)->required();
  geo->add_option("--to", to)->required();
  geo->add_flag("--enumerate", enumerate, "list every geodesic");
  geo->add_option("--cap", geo_cap, "largest number of geodesics to list")->check(CLI::PositiveNumber);

  std::optional<int> max_radius;
  double budget = 1e10;
  auto* hyp = app.add_subcommand("hyperbolicity", "four-point delta of balls around the center");
  common(hyp);
  hyp->add_option("--center", center);
  hyp->add_option("--max-radius", max_radius)->check(CLI::PositiveNumber);
  hyp->add_option("--budget", budget, "largest |sample|^4");

  bool exact = false;
  std::string region_spec;
  std::size_t cheeger_cap = 22;
  auto* che = app.add_subcommand("cheeger", "Cheeger bounds and brute force");
  common(che);
  ball(che);
  che->add_flag("--exact", exact, "brute force over the region");
  che->add_option("--region", region_spec, "ball:r");
  che->add_option("--cap", cheeger_cap, "largest region")->check(CLI::PositiveNumber);

  std::string op_name = "both";
  std::size_t dense_budget = 4000;
  auto* spe = app.add_subcommand("spectrum", "spectrum of the Laplacian and degree operator on a ball");
  common(spe);
  ball(spe);
  spe->add_option("--operator", op_name)->check(CLI::IsMember({"delta", "degree", "both"}));
  spe->add_option("--budget", dense_budget)->check(CLI::PositiveNumber);

  bool search = false;
  std::string verify_path, lambda_text;
  auto* eig = app.add_subcommand("eigenfunctions", "finitely supported eigenfunctions");
  common(eig);
  ball(eig);
  eig->add_flag("--search", search, "search B_R");
  eig->add_option("--verify", verify_path, "face,value file to check exactly");
  eig->add_option("--lambda", lambda_text, "eigenvalue for --verify");

  std::string boundary_path;
  auto* dir = app.add_subcommand("dirichlet", "harmonic extension of boundary data");
  common(dir);
  ball(dir);
  dir->add_option("--boundary", boundary_path, "face,value file on the ball boundary")->required();

  auto* rep = app.add_subcommand("report", "dashboard of checked properties");
  common(rep);
  ball(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*gen) {
      std::vector<std::optional<int>> need;
      if (spec.family == "regular_pq") need = {gp, gq};
      else if (spec.family == "coxeter_triangle") need = {gr, gs, gt};
      else if (spec.family == "product_trees") need = {gr, gs};
      else if (spec.family == "book") need = {gk};
      else if (spec.family == "sigma_n") need = {gn};
      else if (spec.family == "mixed") need = {gcore};
      else if (spec.family == "spherical") need = {gn ? gn : std::optional<int>(0)};
      else if (spec.family == "cubic_squares") {
        if (!gm) throw UsageError("--m is required for cubic_squares");
        spec.radius = *gm;
      } else {
        throw UsageError("--family '" + spec.family + "' is unknown");
      }
      for (auto& x : need) {
        if (!x) throw UsageError("missing a parameter flag for --family " + spec.family);
        spec.params.push_back(*x);
      }
      GeneratorOptions opt;
      opt.seed = seed;
      opt.apartment_cap = apartment_cap;
      if (face_cap) opt.face_cap = *face_cap;
      Structure s = generate(spec, opt);
      if (out_path.empty()) out << emit_complex(to_raw(s));
      else write_complex_file(out_path, to_raw(s));
      err << s.complex->num_faces() << " faces, " << s.apartments.size() << " apartments\n";
      return 0;
    }

    if (!in_path.empty() && !out_path.empty() && in_path == out_path) throw UsageError("--in and --out are the same file");
    Structure s = load(in_path);
    const PolygonalComplex& X = *s.complex;

    if (*val) {
      bool ok = true;
      std::ostringstream os;
      if (s.apartments.empty()) {
        print_reports(os, validate_tessellation(X).reports, "", ok);
      } else {
        std::size_t skipped = 0;
        for (std::size_t a = 0; a < s.apartments.size(); ++a) {
          bool any = false;
          for (FaceId f : s.apartments[a].faces()) any = any || X.face_complete(f);
          if (!any) {
            ++skipped;
            continue;
          }
          TessellationCheck chk = validate_tessellation(s.apartments[a]);
          if (!chk.all_pass()) print_reports(os, chk.reports, "apartment " + std::to_string(a) + " ", ok);
        }
        if (ok) os << "apartments are tessellations (" << skipped << " without trusted faces skipped)\n";
        FaceId o = center_of(s, center);
        int R = radius_of(s, o, radius);
        print_reports(os, validate_pcps(X, s.apartments, R, o), "", ok);
      }
      Sink sink(out_path, out);
      *sink << os.str() << (ok ? "valid\n" : "invalid\n");
      return ok ? 0 : 1;
    }

    if (*cur) {
      FaceId o = center_of(s, center);
      int R = radius_of(s, o, radius);
      CurvatureReport r = curvature_report(s, o, R);
      Sink sink(out_path, out);
      if (!faces_only) {
        *sink << "apartment,vertex,face,kappa_c_num,kappa_c_den\n";
        for (const auto& c : r.corners) {
          *sink << c.apartment << ',' << c.vertex << ',' << c.face << ',' << c.kappa.numerator() << ','
                << c.kappa.denominator() << '\n';
        }
      }
      std::ofstream ff;
      std::ostream* fs = &*sink;
      if (!faces_out.empty()) {
        ff.open(faces_out);
        if (!ff) throw Error("cannot write " + faces_out);
        fs = &ff;
      } else if (!faces_only) {
        *fs << '\n';
      }
      *fs << "apartment,face,kappa_num,kappa_den\n";
      for (const auto& f : r.faces) {
        *fs << f.apartment << ',' << f.face << ',' << f.kappa.numerator() << ',' << f.kappa.denominator() << '\n';
      }
      err << "corners " << r.corners.size() << ", min " << to_string(r.min_corner) << ", max "
          << to_string(r.max_corner) << "; faces " << r.faces.size() << ", min " << to_string(r.min_face) << ", max "
          << to_string(r.max_face) << '\n';
      return 0;
    }

    if (*geo) {
      FaceMetric M(s.complex);
      Sink sink(out_path, out);
      GeodesicInterval I = M.interval(from, to);
      *sink << "distance," << I.length << '\n';
      *sink << "bigon_certificate," << bigon_certificate(M, from, to) << '\n';
      for (std::size_t k = 0; k < I.layers.size(); ++k) {
        *sink << "layer_" << k << ',';
        for (std::size_t i = 0; i < I.layers[k].size(); ++i) *sink << (i ? " " : "") << I.layers[k][i];
        *sink << '\n';
      }
      if (enumerate) {
        BigonEnumeration B = enumerate_bigons(M, from, to, geo_cap);
        *sink << "geodesics," << B.geodesic_count << '\n';
        *sink << "delta_bigon," << B.delta_bigon << '\n';
        for (const auto& g : B.geodesics) {
          *sink << "geodesic,";
          for (std::size_t i = 0; i < g.size(); ++i) *sink << (i ? " " : "") << g[i];
          *sink << '\n';
        }
      }
      return 0;
    }

    if (*hyp) {
      FaceId o = center_of(s, center);
      int top = max_radius ? *max_radius : radius_of(s, o, std::nullopt);
      FaceMetric M(s.complex);
      Sink sink(out_path, out);
      *sink << "radius,faces,delta\n";
      for (int r = 1; r <= top; ++r) {
        SphereStructure S = spheres(X, o, r);
        Rational d;
        try {
          d = four_point_delta(M, S.faces, budget);
        } catch (const Error& e) {
          err << "stopped at radius " << r << ": " << e.what() << '\n';
          break;
        }
        *sink << r << ',' << S.faces.size() << ',' << to_string(d) << '\n';
      }
      return 0;
    }

    if (*che) {
      FaceId o = center_of(s, center);
      int R = radius_of(s, o, radius);
      CheegerBounds b = cheeger_lower_bounds(X, o, R);
      Sink sink(out_path, out);
      *sink << "quantity,value,faces\n";
      *sink << "bound1," << to_string(b.bound1) << ',' << b.bound1_face << '\n';
      *sink << "bound2," << to_string(b.bound2) << ',' << b.bound2_face << '\n';
      if (b.certificate) *sink << "certificate," << to_string(*b.certificate) << ',' << b.certificate_face << '\n';
      auto seq = cheeger_at_infinity(X, o, R);
      for (std::size_t r = 0; r < seq.size(); ++r) *sink << "at_infinity_r" << r << ',' << to_string(seq[r]) << ",\n";
      if (exact) {
        int rr = R;
        if (!region_spec.empty()) {
          if (region_spec.rfind("ball:", 0) != 0) throw UsageError("--region must look like ball:r");
          try {
            rr = std::stoi(region_spec.substr(5));
          } catch (const std::exception&) {
            throw UsageError("--region must look like ball:r");
          }
        }
        SphereStructure S = spheres(X, o, rr);
        CheegerWitness w = cheeger_bruteforce(X, S.faces, {0, cheeger_cap, true});
        *sink << "bruteforce_upper," << to_string(w.ratio()) << ',';
        for (std::size_t i = 0; i < w.faces.size(); ++i) *sink << (i ? " " : "") << w.faces[i];
        *sink << '\n';
      }
      return 0;
    }

    if (*spe) {
      FaceId o = center_of(s, center);
      int R = radius_of(s, o, radius);
      SpectrumOptions so;
      so.op = op_name == "delta" ? SpectrumOperator::delta : op_name == "degree" ? SpectrumOperator::degree : SpectrumOperator::both;
      so.budget = dense_budget;
      SpectralReport r = spectrum(X, o, R, so);
      Sink sink(out_path, out);
      if (so.op == SpectrumOperator::both) {
        *sink << "index,delta,degree,ratio,in_window\n";
        for (const auto& row : r.ratios) {
          *sink << row.index << ',' << fmt(row.delta) << ',' << fmt(row.degree) << ',' << fmt(row.ratio) << ','
                << (r.window ? (row.in_window ? "1" : "0") : "") << '\n';
        }
      } else {
        *sink << "index,eigenvalue\n";
        const auto& v = so.op == SpectrumOperator::delta ? r.delta : r.degree;
        for (std::size_t i = 0; i < v.size(); ++i) *sink << i << ',' << fmt(v[i]) << '\n';
      }
      err << "ball of " << r.size << " faces, m_F " << r.m_F;
      if (!r.delta.empty()) err << ", lambda0 " << fmt(r.delta.front()) << ", residual " << r.max_residual;
      if (r.lambda0_lower) err << ", lower bound " << fmt(*r.lambda0_lower);
      if (r.window) err << ", window [" << fmt(r.window->first) << ", " << fmt(r.window->second) << "] holds "
                        << fmt(r.fraction_in_window);
      err << '\n';
      return 0;
    }

    if (*eig) {
      if (!search && verify_path.empty()) throw UsageError("eigenfunctions needs --search or --verify");
      Sink sink(out_path, out);
      if (!verify_path.empty()) {
        if (lambda_text.empty()) throw UsageError("--verify needs --lambda");
        std::map<FaceId, Rational> phi;
        for (auto& [f, v] : read_face_values(verify_path)) phi[f] = parse_rational(v);
        EigenCheck chk = verify_eigenfunction(X, phi, parse_rational(lambda_text));
        *sink << "face,residual\n";
        for (auto& [f, r] : chk.residuals) *sink << f << ',' << to_string(r) << '\n';
        err << (chk.pass ? "pass" : "fail") << ": support " << chk.support.size() << ", halo " << chk.halo.size() << '\n';
        if (!chk.pass) return 1;
      }
      if (search) {
        FaceId o = center_of(s, center);
        int R = radius_of(s, o, radius);
        auto found = finite_support_eigenfunctions(X, o, R);
        *sink << "certificate,lambda,face,value\n";
        for (std::size_t i = 0; i < found.size(); ++i) {
          const auto& c = found[i];
          std::string lam = c.exact_lambda ? to_string(*c.exact_lambda) : fmt(c.lambda);
          for (std::size_t j = 0; j < c.support.size(); ++j) {
            *sink << i << ',' << lam << ',' << c.support[j] << ','
                  << (c.exact_values ? to_string((*c.exact_values)[j]) : fmt(c.values[j])) << '\n';
          }
        }
        err << found.size() << " eigenfunctions supported in B_" << R << "(" << o << ")\n";
      }
      return 0;
    }

    if (*dir) {
      FaceId o = center_of(s, center);
      int R = radius_of(s, o, radius);
      std::map<FaceId, double> data;
      for (auto& [f, v] : read_face_values(boundary_path)) {
        try {
          data[f] = std::stod(v);
        } catch (const std::exception&) {
          throw ParseError(boundary_path + ": bad value '" + v + "'");
        }
      }
      DirichletSolution sol = solve_dirichlet(X, o, R, data);
      Sink sink(out_path, out);
      *sink << "face,interior,value\n";
      for (std::size_t i = 0; i < sol.faces.size(); ++i) {
        *sink << sol.faces[i] << ',' << int(sol.interior[i]) << ',' << fmt(sol.values[i]) << '\n';
      }
      err << "residual " << sol.residual << '\n';
      return 0;
    }

    if (*rep) {
      ReportOptions ro;
      ro.center = center;
      ro.radius = radius;
      Dashboard d = report(s, ro);
      Sink sink(out_path, out);
      *sink << "family: " << d.family << ", center " << d.center << ", radius " << d.radius << '\n';
      bool violated = false;
      for (const auto& row : d.rows) {
        *sink << "- " << row.name << ": " << to_string(row.status) << "\n    hypothesis: " << row.hypothesis
              << "\n    conclusion: " << row.conclusion << '\n';
        if (!row.cells.empty()) {
          *sink << "    cells:";
          for (auto c : row.cells) *sink << ' ' << c;
          *sink << '\n';
        }
        violated = violated || row.status == RowStatus::violated;
      }
      return violated ? 1 : 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidComplexError& e) {
    err << "invalid complex: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace curvcx
