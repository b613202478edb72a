#include "favard/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "favard/analysis.hpp"
#include "favard/dimension.hpp"
#include "favard/errors.hpp"
#include "favard/ifs.hpp"
#include "favard/kernels.hpp"
#include "favard/needle.hpp"
#include "favard/projection.hpp"

namespace favard::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

/// Raised for operational failures that still produced partial output.
struct ComputationFailed {
  std::string summary;
};

struct Common {
  std::string preset = "four-corner";
  std::string config;
  std::string out = "favard_out";
  int threads = -1;  // -1: not given on the command line
};

struct DirectionArgs {
  std::string slope;
  std::string chart = "X";
  std::optional<double> angle;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--preset", c.preset, "four-corner | sparse-corner(k) | sierpinski-gasket")->capture_default_str();
  sub->add_option("--config", c.config, "IFS config file (overrides --preset)");
  sub->add_option("--out", c.out, "output directory")->capture_default_str();
  sub->add_option("--threads", c.threads, "worker threads (0 = auto; env FAVARD_LAB_THREADS)");
}

void add_direction(CLI::App* sub, DirectionArgs& d, const std::string& default_slope) {
  d.slope = default_slope;
  sub->add_option("--slope", d.slope, "exact slope p/q (|slope| > 1 switches chart)")->capture_default_str();
  sub->add_option("--chart", d.chart, "X (x + t y) or Y (y + u x)")
      ->check(CLI::IsMember({"X", "Y", "x", "y"}))
      ->capture_default_str();
  sub->add_option("--angle", d.angle, "angle in radians, snapped to a rational slope");
}

Direction make_direction(const DirectionArgs& a) {
  if (a.angle) return Direction::from_angle(*a.angle);
  const bool y = a.chart == "Y" || a.chart == "y";
  const Rational t = Rational::parse(a.slope);
  if (abs(t) > Rational(1)) return Direction(y ? Chart::X : Chart::Y, Rational(1) / t);
  return Direction(y ? Chart::Y : Chart::X, t);
}

IFS2D load_ifs(const Common& c) { return c.config.empty() ? preset(c.preset) : load_config(c.config); }

void apply_threads(const Common& c) {
  int n = c.threads;
  if (n < 0) {
    if (const char* env = std::getenv("FAVARD_LAB_THREADS")) n = std::atoi(env);
  }
  set_thread_count(n < 0 ? 0 : n);
}

json direction_json(const Direction& d) {
  return {{"chart", d.chart() == Chart::X ? "X" : "Y"}, {"slope", d.slope().str()}, {"angle", d.angle()}};
}

class Output {
 public:
  Output(const Common& c, std::string sub) : dir_(c.out), sub_(std::move(sub)) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name) {
    files_.push_back(name);
    std::ofstream f(dir_ / name);
    if (!f) throw MalformedInput("cannot write " + (dir_ / name).string());
    return f;
  }

  void write_json(const std::string& name, const json& j) { open(name) << j.dump(2) << '\n'; }

  void manifest(const json& params, const std::string& backend, double seconds) {
    json m;
    m["subcommand"] = sub_;
    m["parameters"] = params;
    m["backend"] = backend;
    m["version"] = kVersion;
    m["threads"] = thread_count();
    m["wall_time_seconds"] = seconds;
    m["outputs"] = files_;
    std::ofstream f(dir_ / (sub_ + ".manifest.json"));
    f << m.dump(2) << '\n';
  }

 private:
  fs::path dir_;
  std::string sub_;
  std::vector<std::string> files_;
};

json ifs_params(const Common& c, const IFS2D& ifs) {
  json j;
  j["ifs"] = ifs.name();
  if (!c.config.empty()) j["config"] = c.config;
  j["ifs_definition"] = dump_config(ifs);
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Favard length laboratory: exact projection lengths of self-similar sets", "favard_lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  std::function<int()> action;
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count(); };

  // alpha ------------------------------------------------------------------
  int n_max = 6;
  bool dump_sets = false;
  DirectionArgs alpha_dir;
  auto* alpha_cmd = app.add_subcommand("alpha", "alpha_n at one direction, exact");
  add_common(alpha_cmd, common);
  add_direction(alpha_cmd, alpha_dir, "1/2");
  alpha_cmd->add_option("--n-max", n_max, "last generation")->capture_default_str();
  alpha_cmd->add_flag("--dump-sets", dump_sets, "also write generation intervals");
  alpha_cmd->callback([&] {
    action = [&] {
      const auto ifs = load_ifs(common);
      const auto d = make_direction(alpha_dir);
      const auto seq = alpha_sequence(ifs, d, n_max);
      Output o(common, "alpha");
      auto csv = o.open("alpha.csv");
      csv << "n,chart,slope,sheared,true,count\n";
      for (std::size_t n = 0; n < seq.values.size(); ++n) {
        csv << n << ',' << (d.chart() == Chart::X ? "X" : "Y") << ',' << d.slope() << ',' << seq.values[n] << ','
            << format_scalar(seq.values[n].to_double() * seq.scale) << ',' << seq.counts[n] << '\n';
      }
      if (dump_sets) {
        auto g = o.open("generations.csv");
        g << "n,chart,slope,lo,hi\n";
        ExactGenerator gen(project_ifs(ifs, d));
        for (int n = 0; n <= n_max; ++n) {
          gen.advance_to(n);
          for (const auto& iv : gen.set()) {
            g << n << ',' << (d.chart() == Chart::X ? "X" : "Y") << ',' << d.slope() << ',' << iv.lo << ',' << iv.hi
              << '\n';
          }
        }
      }
      json p = ifs_params(common, ifs);
      p["direction"] = direction_json(d);
      p["n_max"] = n_max;
      o.manifest(p, "exact", elapsed());
      out << "alpha " << ifs.name() << " " << d.label() << ": alpha_" << n_max << " = " << seq.values.back()
          << " (sheared), " << seq.values.back().to_double() * seq.scale << " (true)\n";
      return kOk;
    };
  });

  // convexity ----------------------------------------------------------------
  int depth = 8;
  DirectionArgs conv_dir;
  auto* conv_cmd = app.add_subcommand("convexity", "exact second differences of alpha_n");
  add_common(conv_cmd, common);
  add_direction(conv_cmd, conv_dir, "1/3");
  conv_cmd->add_option("--depth", depth, "last generation (>= 2)")->capture_default_str();
  conv_cmd->callback([&] {
    action = [&] {
      const auto ifs = load_ifs(common);
      const auto d = make_direction(conv_dir);
      const auto seq = alpha_sequence(ifs, d, depth);
      const auto rep = check_convexity(seq.values);
      Output o(common, "convexity");
      auto csv = o.open("convexity.csv");
      csv << "k,margin,difference\n";
      for (std::size_t k = 1; k < seq.values.size(); ++k) {
        csv << k << ',' << (k - 1 < rep.margins.size() ? rep.margins[k - 1].str() : std::string()) << ','
            << rep.differences[k - 1] << '\n';
      }
      json s;
      s["convex"] = rep.convex;
      s["differences_nonincreasing"] = rep.differences_nonincreasing;
      s["convexity_applies"] = ifs.convexity_applies();
      s["ratio_sum"] = ifs.ratio_sum().str();
      if (rep.first_violation) s["first_violation"] = *rep.first_violation;
      o.write_json("convexity.json", s);
      json p = ifs_params(common, ifs);
      p["direction"] = direction_json(d);
      p["depth"] = depth;
      o.manifest(p, "exact", elapsed());
      out << "convexity " << ifs.name() << " " << d.label() << " depth " << depth << ": "
          << (rep.convex ? "convex" : "NOT convex");
      if (!ifs.convexity_applies()) out << " (exploratory: ratio sum " << ifs.ratio_sum() << " != 1)";
      out << '\n';
      return !rep.convex && ifs.convexity_applies() ? kClaimFailure : kOk;
    };
  });

  // favard -----------------------------------------------------------------
  int fav_n = 0;
  QuadratureConfig quad;
  std::string backend = "float";
  bool no_symmetry = false;
  auto* fav_cmd = app.add_subcommand("favard", "Favard length of generation n by quadrature");
  add_common(fav_cmd, common);
  fav_cmd->add_option("--n", fav_n, "generation")->capture_default_str();
  fav_cmd->add_option("--tol", quad.tol, "stop when successive estimates differ by less")->capture_default_str();
  fav_cmd->add_option("--order", quad.order, "Gauss-Legendre points per panel")->capture_default_str();
  fav_cmd->add_option("--panels", quad.initial_panels, "initial panels")->capture_default_str();
  fav_cmd->add_option("--max-doublings", quad.max_doublings, "refinement limit")->capture_default_str();
  fav_cmd->add_option("--backend", backend, "exact | float")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  fav_cmd->add_flag("--no-symmetry", no_symmetry, "ignore declared symmetry");
  fav_cmd->callback([&] {
    action = [&] {
      const auto ifs = load_ifs(common);
      quad.backend = backend == "exact" ? Backend::Exact : Backend::Float;
      quad.use_symmetry = !no_symmetry;
      const auto est = favard(ifs, fav_n, quad);
      Output o(common, "favard");
      json s;
      s["n"] = fav_n;
      s["estimate"] = est.value;
      s["error"] = est.error;
      s["status"] = est.status == QuadStatus::Converged ? "converged" : "unconverged";
      s["panels"] = est.panels;
      s["evaluations"] = est.evaluations;
      s["history"] = est.history;
      if (fav_n >= 1) s["lower_bound_1_over_40n"] = 1.0 / (40.0 * fav_n);
      o.write_json("favard.json", s);
      json p = ifs_params(common, ifs);
      p["n"] = fav_n;
      p["tol"] = quad.tol;
      p["order"] = quad.order;
      p["panels"] = quad.initial_panels;
      p["max_doublings"] = quad.max_doublings;
      p["symmetry"] = quad.use_symmetry;
      o.manifest(p, backend, elapsed());
      out << "favard " << ifs.name() << " n=" << fav_n << ": " << format_scalar(est.value) << " +/- "
          << format_scalar(est.error) << " (" << s["status"].get<std::string>() << ")\n";
      if (est.status != QuadStatus::Converged) throw ComputationFailed{"quadrature did not converge"};
      return kOk;
    };
  });

  // certificate --------------------------------------------------------------
  int cert_n = 5;
  int grid = 64;
  std::string special = "1/2";
  bool cert_alpha_n = false;
  auto* cert_cmd = app.add_subcommand("certificate", "grid certificate of Fav(A_n) >= 1/(40n)");
  add_common(cert_cmd, common);
  cert_cmd->add_option("--n", cert_n, "generation (>= 1)")->capture_default_str();
  cert_cmd->add_option("--grid", grid, "grid directions across the window")->capture_default_str();
  cert_cmd->add_option("--special", special, "tiling slope (chart X)")->capture_default_str();
  cert_cmd->add_flag("--alpha-n", cert_alpha_n, "also compute alpha_n exactly at each grid point");
  cert_cmd->callback([&] {
    action = [&] {
      const auto ifs = load_ifs(common);
      CertificateOptions opts;
      opts.special = Direction(Chart::X, Rational::parse(special));
      opts.compute_alpha_n = cert_alpha_n;
      const auto cert = lower_bound_certificate(ifs, cert_n, grid, opts);
      Output o(common, "certificate");
      auto csv = o.open("certificate.csv");
      csv << "chart,slope,angle,alpha0,alpha1,defect,lower_bound,true_lower_bound,alpha_n,pass\n";
      for (const auto& e : cert.grid) {
        csv << (e.direction.chart() == Chart::X ? "X" : "Y") << ',' << e.direction.slope() << ','
            << format_scalar(e.angle) << ',' << e.alpha0 << ',' << e.alpha1 << ',' << e.defect << ',' << e.lower_bound
            << ',' << format_scalar(e.true_lower_bound) << ',' << (e.alpha_n ? e.alpha_n->str() : std::string())
            << ',' << (e.pass ? "pass" : "fail") << '\n';
      }
      json s;
      s["n"] = cert.n;
      s["special_slope"] = cert.special.slope().str();
      s["window_center"] = cert.center;
      s["window_half_width"] = cert.half_width;
      s["grid"] = grid;
      s["status"] = cert.pass ? "pass" : "fail";
      s["claimed_bound"] = cert.claimed_bound;
      s["rigor"] = "certified at grid resolution";
      if (cert.witness) s["witness"] = direction_json(*cert.witness);
      o.write_json("certificate.json", s);
      json p = ifs_params(common, ifs);
      p["n"] = cert_n;
      p["grid"] = grid;
      p["special"] = special;
      o.manifest(p, "exact", elapsed());
      out << "certificate " << ifs.name() << " n=" << cert_n << ": " << (cert.pass ? "pass" : "FAIL")
          << ", claimed_bound " << format_scalar(cert.claimed_bound) << '\n';
      return cert.pass ? kOk : kClaimFailure;
    };
  });

  // special-angle ------------------------------------------------------------
  DirectionArgs sp_dir;
  auto* sp_cmd = app.add_subcommand("special-angle", "exact tiling test alpha_0 = alpha_1");
  add_common(sp_cmd, common);
  add_direction(sp_cmd, sp_dir, "1/2");
  sp_cmd->callback([&] {
    action = [&] {
      const auto ifs = load_ifs(common);
      const auto d = make_direction(sp_dir);
      const auto v = special_slope_check(ifs, d);
      Output o(common, "special-angle");
      json s;
      s["direction"] = direction_json(d);
      s["pass"] = v.pass;
      s["alpha0"] = v.alpha0.str();
      s["alpha1"] = v.alpha1.str();
      s["defect"] = v.defect.str();
      s["generation1_count"] = v.count1;
      o.write_json("special_angle.json", s);
      o.manifest(ifs_params(common, ifs), "exact", elapsed());
      out << "special-angle " << ifs.name() << " " << d.label() << ": " << (v.pass ? "pass" : "FAIL") << ", defect "
          << v.defect << '\n';
      return v.pass ? kOk : kClaimFailure;
    };
  });

  // lipschitz ----------------------------------------------------------------
  LipschitzConfig lip;
  auto* lip_cmd = app.add_subcommand("lipschitz", "scan of alpha_0 - alpha_1 over directions");
  add_common(lip_cmd, common);
  lip_cmd->add_option("--nodes", lip.nodes, "grid size")->capture_default_str();
  lip_cmd->add_option("--lo", lip.lo, "first angle")->capture_default_str();
  lip_cmd->add_option("--hi", lip.hi, "end angle (exclusive)")->capture_default_str();
  lip_cmd->callback([&] {
    action = [&] {
      const auto ifs = load_ifs(common);
      const auto scan = lipschitz_scan(ifs, lip);
      Output o(common, "lipschitz");
      auto csv = o.open("lipschitz.csv");
      csv << "theta,g\n";
      for (std::size_t i = 0; i < scan.angles.size(); ++i)
        csv << format_scalar(scan.angles[i]) << ',' << format_scalar(scan.values[i]) << '\n';
      json s;
      s["nodes"] = lip.nodes;
      s["sup_slope"] = scan.sup_slope;
      s["sup_location"] = scan.sup_location;
      s["min_value"] = scan.min_value;
      s["argmin"] = scan.argmin;
      s["zero_candidates"] = scan.zero_candidates;
      o.write_json("lipschitz.json", s);
      json p = ifs_params(common, ifs);
      p["nodes"] = lip.nodes;
      p["lo"] = lip.lo;
      p["hi"] = lip.hi;
      o.manifest(p, "exact", elapsed());
      out << "lipschitz " << ifs.name() << ": sup slope " << format_scalar(scan.sup_slope) << " at "
          << format_scalar(scan.sup_location) << ", min g " << format_scalar(scan.min_value) << '\n';
      return kOk;
    };
  });

  // dimension ----------------------------------------------------------------
  std::vector<std::string> scale_text;
  std::string scale_base;
  int from_exp = 3, to_exp = 6;
  AngularWindow window;
  DecayConfig decay;
  auto* dim_cmd = app.add_subcommand("dimension", "neighborhood decay series and exponent fit");
  add_common(dim_cmd, common);
  dim_cmd->add_option("--scales", scale_text, "explicit scales (p/q), strictly decreasing")->delimiter(',');
  dim_cmd->add_option("--scale-base", scale_base, "scales base^-k for k in [from, to] (default 1/max ratio)");
  dim_cmd->add_option("--from", from_exp, "first exponent")->capture_default_str();
  dim_cmd->add_option("--to", to_exp, "last exponent")->capture_default_str();
  dim_cmd->add_option("--window-lo", window.lo, "angular window start")->capture_default_str();
  dim_cmd->add_option("--window-hi", window.hi, "angular window end")->capture_default_str();
  dim_cmd->add_option("--panels", decay.panels, "quadrature panels")->capture_default_str();
  dim_cmd->add_option("--order", decay.order, "points per panel")->capture_default_str();
  dim_cmd->add_flag("--sensitivity", decay.sensitivity, "also integrate at depth -1/+1");
  dim_cmd->callback([&] {
    action = [&] {
      const auto ifs = load_ifs(common);
      std::vector<Rational> scales;
      if (!scale_text.empty()) {
        for (const auto& s : scale_text) scales.push_back(Rational::parse(s));
      } else {
        const Rational b = scale_base.empty() ? Rational(1) / ifs.max_ratio() : Rational::parse(scale_base);
        for (int k = from_exp; k <= to_exp; ++k) scales.push_back(b.pow(-k));
      }
      const auto series = decay_series(ifs, window, scales, decay);
      Output o(common, "dimension");
      auto csv = o.open("decay.csv");
      csv << "r,depth,total,slope_so_far,total_coarser,total_finer\n";
      for (std::size_t i = 0; i < series.size(); ++i) {
        std::string slope;
        if (i >= 2) slope = format_scalar(exponent_fit(std::span(series).first(i + 1)).s);
        const auto& rec = series[i];
        csv << rec.r << ',' << rec.depth << ',' << format_scalar(rec.total) << ',' << slope << ','
            << (rec.total_coarser ? format_scalar(*rec.total_coarser) : std::string()) << ','
            << (rec.total_finer ? format_scalar(*rec.total_finer) : std::string()) << '\n';
      }
      json s;
      if (series.size() >= 3) {
        const auto fit = exponent_fit(series);
        s["s"] = fit.s;
        s["C"] = fit.C;
        s["residual"] = fit.residual;
        s["dimension_bound"] = fit.dimension_bound;
        out << "dimension " << ifs.name() << ": s = " << format_scalar(fit.s) << ", bound 1 - s = "
            << format_scalar(fit.dimension_bound) << " (similarity dimension "
            << format_scalar(ifs.similarity_dimension()) << ")\n";
      } else {
        out << "dimension " << ifs.name() << ": " << series.size() << " records (need 3 for a fit)\n";
      }
      s["similarity_dimension"] = ifs.similarity_dimension();
      o.write_json("dimension.json", s);
      json p = ifs_params(common, ifs);
      std::vector<std::string> sc;
      for (const auto& r : scales) sc.push_back(r.str());
      p["scales"] = sc;
      p["window"] = {window.lo, window.hi};
      p["panels"] = decay.panels;
      p["order"] = decay.order;
      p["sensitivity"] = decay.sensitivity;
      o.manifest(p, "float", elapsed());
      return kOk;
    };
  });

  // cover ----------------------------------------------------------------------
  std::string cover_r = "1/32";
  std::vector<double> exponents{0.5};
  int cover_depth = -1;
  DirectionArgs cover_dir;
  auto* cover_cmd = app.add_subcommand("cover", "cover intervals of a projected neighborhood and Hoelder sums");
  add_common(cover_cmd, common);
  add_direction(cover_cmd, cover_dir, "0");
  cover_cmd->add_option("--r", cover_r, "neighborhood radius (p/q)")->capture_default_str();
  cover_cmd->add_option("--exponents", exponents, "Hoelder exponents in (0,1)")->delimiter(',');
  cover_cmd->add_option("--depth", cover_depth, "generation (default: matched to r)");
  cover_cmd->callback([&] {
    action = [&] {
      const auto ifs = load_ifs(common);
      const auto d = make_direction(cover_dir);
      const auto st = cover_stats(ifs, d, Rational::parse(cover_r), exponents, cover_depth);
      Output o(common, "cover");
      auto csv = o.open("cover.csv");
      csv << "r,count,min_length,p,q,holder_sum,holder_bound\n";
      const std::string min_len = st.exact_min_length ? st.exact_min_length->str() : format_scalar(st.min_length);
      for (const auto& h : st.holder) {
        csv << st.r << ',' << st.count << ',' << min_len << ',' << format_scalar(h.p) << ',' << format_scalar(h.q)
            << ',' << format_scalar(h.sum) << ',' << format_scalar(h.bound) << '\n';
      }
      auto iv = o.open("cover_intervals.csv");
      iv << "lo,hi\n";
      if (st.exact_intervals) {
        for (const auto& i : *st.exact_intervals) iv << i.lo << ',' << i.hi << '\n';
      } else {
        for (const auto& i : st.intervals) iv << format_scalar(i.lo) << ',' << format_scalar(i.hi) << '\n';
      }
      json s;
      s["depth"] = st.depth;
      s["exact"] = st.exact;
      s["count"] = st.count;
      s["measure"] = st.exact_measure ? st.exact_measure->str() : format_scalar(st.measure);
      s["min_length"] = min_len;
      s["floor_holds"] = st.floor_holds;
      s["ceiling_holds"] = st.ceiling_holds;
      o.write_json("cover.json", s);
      json p = ifs_params(common, ifs);
      p["direction"] = direction_json(d);
      p["r"] = cover_r;
      p["exponents"] = exponents;
      p["depth"] = st.depth;
      o.manifest(p, st.exact ? "exact" : "float", elapsed());
      out << "cover " << ifs.name() << " " << d.label() << " r=" << cover_r << ": " << st.count
          << " intervals, min length " << min_len << '\n';
      return kOk;
    };
  });

  // counterexample -------------------------------------------------------------
  std::string points_file;
  std::vector<std::string> stage_text;
  std::string nb_base = "4";
  int nb_max = 4;
  auto* ce_cmd = app.add_subcommand("counterexample", "neighborhood sequences of finite sets (non-convexity)");
  ce_cmd->add_option("--out", common.out, "output directory")->capture_default_str();
  ce_cmd->add_option("--points", points_file, "file with one rational per line (default: {0, 1/4, ..., 100})");
  ce_cmd->add_option("--stage", stage_text, "lattice stage 'center,spacing,extent' (repeatable)");
  ce_cmd->add_option("--base", nb_base, "radius base b (radii b^-n)")->capture_default_str();
  ce_cmd->add_option("--n-max", nb_max, "last n")->capture_default_str();
  ce_cmd->callback([&] {
    action = [&] {
      std::vector<Interval<Rational>> pts;
      std::vector<std::string> warnings;
      std::vector<Rational> seq;
      int sign_changes = 0;
      const Rational b = Rational::parse(nb_base);
      if (!stage_text.empty()) {
        std::vector<LatticeStage> stages;
        for (const auto& t : stage_text) {
          std::vector<std::string> parts;
          std::stringstream ss(t);
          for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
          if (parts.size() != 3) throw MalformedInput("stage must be 'center,spacing,extent': " + t);
          stages.push_back({Rational::parse(parts[0]), Rational::parse(parts[1]), Rational::parse(parts[2])});
        }
        auto res = seesaw_builder(stages, b, nb_max);
        pts = std::move(res.points);
        seq = std::move(res.sequence);
        warnings = std::move(res.warnings);
        sign_changes = res.sign_changes;
      } else {
        if (points_file.empty()) {
          pts = quarter_lattice();
        } else {
          std::ifstream in(points_file);
          if (!in) throw MalformedInput("cannot open point file " + points_file);
          pts = read_point_set(in);
        }
        seq = neighborhood_sequence(pts, b, nb_max);
      }
      Output o(common, "counterexample");
      auto csv = o.open("neighborhood.csv");
      csv << "n,measure\n";
      for (std::size_t n = 0; n < seq.size(); ++n) csv << n << ',' << seq[n] << '\n';
      json s;
      s["points"] = pts.size();
      std::vector<std::string> seq_text;
      for (const auto& v : seq) seq_text.push_back(v.str());
      s["sequence"] = seq_text;
      if (seq.size() >= 3) {
        const auto rep = check_convexity(seq);
        auto c = o.open("convexity.csv");
        c << "k,margin\n";
        for (std::size_t k = 0; k < rep.margins.size(); ++k) c << k + 1 << ',' << rep.margins[k] << '\n';
        s["convex"] = rep.convex;
        if (rep.first_violation) {
          const auto k = static_cast<std::size_t>(*rep.first_violation);
          s["first_violation"] = k;
          s["margin"] = rep.margins[k - 1].str();
          // same failure stated as a_k - (a_{k-1} + a_{k+1}) / 2
          s["midpoint_excess"] = (seq[k] - (seq[k - 1] + seq[k + 1]) / Rational(2)).str();
        }
        out << "counterexample: " << (rep.convex ? "convex" : "NOT convex");
        if (rep.first_violation)
          out << " at k=" << *rep.first_violation << " (margin " << rep.margins[*rep.first_violation - 1] << ")";
        out << '\n';
      } else {
        out << "counterexample: " << seq.size() << " values\n";
      }
      if (!stage_text.empty()) s["sign_changes"] = sign_changes;
      s["warnings"] = warnings;
      for (const auto& w : warnings) err << "warning: " << w << '\n';
      o.write_json("counterexample.json", s);
      json p;
      p["points_file"] = points_file;
      p["stages"] = stage_text;
      p["base"] = nb_base;
      p["n_max"] = nb_max;
      o.manifest(p, "exact", elapsed());
      return kOk;
    };
  });

  // needle -----------------------------------------------------------------------
  NeedleConfig needle;
  std::optional<double> strip;
  auto* needle_cmd = app.add_subcommand("needle", "Monte-Carlo Buffon needle estimate of Fav(A_n)");
  add_common(needle_cmd, common);
  needle_cmd->add_option("--trials", needle.trials, "number of random lines")->capture_default_str();
  needle_cmd->add_option("--seed", needle.seed, "64-bit seed")->capture_default_str();
  needle_cmd->add_option("--n", needle.generation, "generation")->capture_default_str();
  needle_cmd->add_option("--W", strip, "strip half-width (default: base circumradius)");
  needle_cmd->add_option("--batch", needle.batch_size, "trials per batch")->capture_default_str();
  needle_cmd->callback([&] {
    action = [&] {
      const auto ifs = load_ifs(common);
      needle.strip_halfwidth = strip;
      const auto r = estimate_favard_mc(ifs, needle);
      Output o(common, "needle");
      json s;
      s["estimate"] = r.estimate;
      s["se"] = r.standard_error;
      s["hits"] = r.hits;
      s["trials"] = r.trials;
      s["seed"] = r.seed;
      s["W"] = r.strip_halfwidth;
      s["generation"] = needle.generation;
      s["generator"] = "mt19937_64 per batch, splitmix64 batch seeding";
      o.write_json("needle.json", s);
      json p = ifs_params(common, ifs);
      p["trials"] = needle.trials;
      p["seed"] = needle.seed;
      p["n"] = needle.generation;
      p["W"] = r.strip_halfwidth;
      p["batch"] = needle.batch_size;
      o.manifest(p, "float", elapsed());
      out << "needle " << ifs.name() << " n=" << needle.generation << ": " << format_scalar(r.estimate) << " +/- "
          << format_scalar(r.standard_error) << " (" << r.hits << "/" << r.trials << " hits)\n";
      return kOk;
    };
  });

  // validate ---------------------------------------------------------------------
  int display = 8;
  auto* val_cmd = app.add_subcommand("validate", "check the convexity hypotheses of an IFS");
  add_common(val_cmd, common);
  val_cmd->add_option("--display-depth", display, "cylinder counts up to this n")->capture_default_str();
  val_cmd->callback([&] {
    action = [&] {
      const auto ifs = load_ifs(common);
      const auto rep = validate(ifs, display);
      Output o(common, "validate");
      json s;
      s["name"] = ifs.name();
      s["ratio_sum"] = rep.ratio_sum.str();
      s["convexity_applies"] = rep.convexity_applies;
      s["nesting"] = rep.nesting_pass ? "pass" : "fail";
      json dirs = json::array();
      for (const auto& c : rep.nesting) dirs.push_back({{"direction", c.direction}, {"angle", c.angle}, {"pass", c.pass}});
      s["nesting_directions"] = dirs;
      s["maps"] = rep.map_count;
      std::vector<std::string> counts;
      for (const auto& c : rep.cylinder_counts) counts.push_back(c.get_str());
      s["cylinder_counts"] = counts;
      s["similarity_dimension"] = ifs.similarity_dimension();
      o.write_json("validate.json", s);
      o.manifest(ifs_params(common, ifs), "exact", elapsed());
      out << "validate " << ifs.name() << ": ratio_sum " << rep.ratio_sum
          << (rep.convexity_applies ? " (convexity applies)" : " (convexity does not apply)") << ", nesting "
          << (rep.nesting_pass ? "pass" : "FAIL") << '\n';
      return kOk;
    };
  });

  // presets ------------------------------------------------------------------------
  std::string dump_name;
  auto* pre_cmd = app.add_subcommand("presets", "list presets or print one as a config file");
  pre_cmd->add_option("--dump", dump_name, "preset to print");
  pre_cmd->callback([&] {
    action = [&] {
      if (!dump_name.empty()) {
        out << dump_config(preset(dump_name));
      } else {
        for (const auto& n : preset_names()) out << n << '\n';
      }
      return kOk;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    apply_threads(common);
    return action();
  } catch (const ComputationFailed& e) {
    err << "error: " << e.summary << '\n';
    return kComputationFailure;
  } catch (const SizeCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kComputationFailure;
  } catch (const MalformedInput& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputationFailure;
  }
}

}  // namespace favard::cli
