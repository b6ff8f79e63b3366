#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "merokit/inclusion.hpp"
#include "merokit/json_io.hpp"
#include "merokit/merokit.hpp"

namespace merokit::cli {

using json = nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every file-valued flag also accepts inline JSON text, which keeps suite
// files self-contained.
json load_json(const std::string& arg, const std::string& label) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw io::FormatError(label + ": cannot open '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw io::FormatError(label + ": malformed JSON (" + e.what() + ")");
  }
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::holds: return kExitHolds;
    case Verdict::fails: return kExitFails;
    case Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, x);
    if (std::strtod(shorter, nullptr) == x) return shorter;
  }
  return buf;
}

struct Common {
  std::string params;
  std::string series;
  std::string grid;
  std::string out;
  std::uint64_t seed = 0;
};

struct Loaded {
  json params_json;
  OperatorParams op;
  ClassParams cp;
};

Loaded load_params(const Common& c, bool need_class = true) {
  if (c.params.empty()) throw UsageError("--params is required");
  Loaded l;
  l.params_json = load_json(c.params, "params");
  l.op = io::operator_from_json(l.params_json);
  if (need_class) l.cp = io::class_from_json(l.params_json);
  return l;
}

LaurentSeries load_series(const std::string& arg, const char* label = "series") {
  if (arg.empty()) throw UsageError(std::string("--") + label + " is required");
  return io::series_from_json(load_json(arg, label), label);
}

SampleGrid load_grid(const Common& c) {
  if (c.grid.empty()) return SampleGrid{};
  return io::grid_from_json(load_json(c.grid, "grid"));
}

json config_of(const std::string& command, const Loaded& l) {
  json cfg = {{"command", command}, {"operator", io::to_json(l.op)}, {"class", io::to_json(l.cp)}};
  return cfg;
}

void emit(const json& j, const std::string& out_path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw io::FormatError("out: cannot write '" + out_path + "'");
  f << text;
}

json report_output(const json& config, const Report& r) {
  json j = io::to_json(r);
  j["config"] = config;
  return j;
}

void add_common(CLI::App* app, Common& c, bool series, bool grid, bool seed) {
  app->add_option("--params", c.params, "parameter JSON (file or inline)");
  if (series) app->add_option("--series", c.series, "series JSON (file or inline)");
  if (grid) app->add_option("--grid", c.grid, "sample grid JSON (file or inline)");
  if (seed) app->add_option("--seed", c.seed, "random seed");
  app->add_option("--out", c.out, "write output here instead of stdout");
}

DistortionKind parse_kind(const std::string& s) {
  if (s == "f-general") return DistortionKind::f_general;
  if (s == "fprime-general") return DistortionKind::fprime_general;
  return DistortionKind::f_plus;
}

TailPolicy::Mode parse_tail(const std::string& s) {
  if (s == "exact-support") return TailPolicy::Mode::exact_support;
  if (s == "tail-estimate") return TailPolicy::Mode::tail_estimate;
  return TailPolicy::Mode::divergent_flag;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"merokit: meromorphically multivalent function classes, constructions and checks", "merokit"};
  app.require_subcommand(1);
  Common c;

  // phi
  auto* phi_cmd = app.add_subcommand("phi", "coefficient multiplier of the operator");
  double lambda = 0, mu = 0;
  int m = 0, p = 1, k = 0;
  bool phi_json = false;
  phi_cmd->add_option("--lambda", lambda)->required();
  phi_cmd->add_option("--mu", mu)->required();
  phi_cmd->add_option("--m", m)->required();
  phi_cmd->add_option("--p", p)->required();
  phi_cmd->add_option("--k", k)->required();
  phi_cmd->add_flag("--json", phi_json, "emit a JSON object echoing the configuration");
  phi_cmd->add_option("--out", c.out);

  // apply
  auto* apply_cmd = app.add_subcommand("apply", "apply the operator, its inverse or the integral operator");
  add_common(apply_cmd, c, true, false, false);
  std::string route = "coeff";
  bool do_invert = false;
  std::optional<double> integral_c;
  apply_cmd->add_option("--route", route)->check(CLI::IsMember({"coeff", "differential"}));
  apply_cmd->add_flag("--invert", do_invert);
  apply_cmd->add_option("--integral", integral_c, "apply the integral operator with parameter c > 0");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "construct class members");
  gen_cmd->require_subcommand(1);
  int trunc = kDefaultTruncation;
  std::string atoms, wpoly;
  int n_index = 0;
  auto* gen_h = gen_cmd->add_subcommand("herglotz", "from a finite-atom probability measure");
  add_common(gen_h, c, false, false, false);
  gen_h->add_option("--atoms", atoms)->required();
  gen_h->add_option("--K", trunc);
  auto* gen_s = gen_cmd->add_subcommand("schwarz", "from a Schwarz polynomial");
  add_common(gen_s, c, false, false, false);
  gen_s->add_option("--w", wpoly)->required();
  gen_s->add_option("--K", trunc);
  auto* gen_e = gen_cmd->add_subcommand("extremal", "extremal monomial at index n");
  add_common(gen_e, c, false, false, false);
  gen_e->add_option("--n", n_index)->required();

  // check
  auto* check_cmd = app.add_subcommand("check", "membership checks");
  add_common(check_cmd, c, true, true, false);
  std::string criterion;
  check_cmd->add_option("--criterion", criterion)
      ->required()
      ->check(CLI::IsMember({"exact", "sufficient", "numeric", "disk", "subordination"}));

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "coefficient, distortion, convolution and partial-sum results");
  verify_cmd->require_subcommand(1);
  int n_max = 20, terms = kDefaultTruncation, theta_count = 360, m_cut = 1;
  double radius = 0.5, floor_value = 1e-6;
  std::string which = "f-plus", tail = "divergent-flag";
  auto* v_cg = verify_cmd->add_subcommand("coeff-general", "general-class coefficient bounds");
  add_common(v_cg, c, true, false, false);
  v_cg->add_option("--n-max", n_max);
  auto* v_cp = verify_cmd->add_subcommand("coeff-plus", "plus-class coefficient bounds");
  add_common(v_cp, c, true, false, false);
  v_cp->add_option("--n-max", n_max);
  auto* v_d = verify_cmd->add_subcommand("distortion", "distortion bounds at |z| = r");
  add_common(v_d, c, true, false, false);
  v_d->add_option("--r", radius)->required();
  v_d->add_option("--which", which)->check(CLI::IsMember({"f-general", "fprime-general", "f-plus"}));
  v_d->add_option("--tail", tail)->check(CLI::IsMember({"exact-support", "tail-estimate", "divergent-flag"}));
  v_d->add_option("--terms", terms);
  auto* v_c = verify_cmd->add_subcommand("conv-nonvanish", "convolution non-vanishing");
  add_common(v_c, c, true, true, false);
  v_c->add_option("--theta-count", theta_count);
  v_c->add_option("--floor", floor_value);
  auto* v_p = verify_cmd->add_subcommand("partial-sums", "partial-sum ratio bounds");
  add_common(v_p, c, true, true, false);
  v_p->add_option("--m-cut", m_cut)->required();

  // nbhd
  auto* nbhd_cmd = app.add_subcommand("nbhd", "coefficient neighborhoods");
  nbhd_cmd->require_subcommand(1);
  std::string other, kind = "plus";
  int trials = 100;
  double delta = 0.0, witness_factor = 1.0 + 1e-9;
  int spread = 16;
  auto* n_dist = nbhd_cmd->add_subcommand("distance", "weighted coefficient distance");
  add_common(n_dist, c, true, false, false);
  n_dist->add_option("--other", other)->required();
  n_dist->add_option("--kind", kind)->check(CLI::IsMember({"plus", "general"}));
  auto* n_delta = nbhd_cmd->add_subcommand("delta", "neighborhood radius for the plus class");
  add_common(n_delta, c, false, false, false);
  auto* n_vp = nbhd_cmd->add_subcommand("verify-plus", "sampled inclusion for the plus class");
  add_common(n_vp, c, true, false, true);
  n_vp->add_option("--trials", trials);
  n_vp->add_option("--witness-factor", witness_factor);
  n_vp->add_option("--spread", spread);
  auto* n_vg = nbhd_cmd->add_subcommand("verify-general", "sampled inclusion for the general class");
  add_common(n_vg, c, true, true, true);
  n_vg->add_option("--trials", trials);
  n_vg->add_option("--delta", delta)->required();
  n_vg->add_option("--spread", spread);

  // report
  auto* report_cmd = app.add_subcommand("report", "run a suite file");
  std::string suite_path;
  int jobs = 1;
  report_cmd->add_option("suite", suite_path, "suite JSON")->required();
  report_cmd->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  report_cmd->add_option("--out", c.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitHolds;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (phi_cmd->parsed()) {
      const OperatorParams op{lambda, mu, m, p};
      op.validate();
      const double v = phi(op, k);
      if (phi_json) {
        emit({{"value", v}, {"config", {{"command", "phi"}, {"operator", io::to_json(op)}, {"k", k}}}}, c.out, out);
      } else if (c.out.empty()) {
        out << format_number(v) << "\n";
      } else {
        std::ofstream(c.out) << format_number(v) << "\n";
      }
      return kExitHolds;
    }

    if (apply_cmd->parsed()) {
      const Loaded l = load_params(c, false);
      const LaurentSeries f = load_series(c.series);
      json cfg = {{"command", "apply"}, {"operator", io::to_json(l.op)}, {"trunc_order", f.trunc_order()}};
      LaurentSeries g = f;
      if (do_invert) {
        cfg["mode"] = "invert";
        g = invert(l.op, f);
      } else if (integral_c) {
        cfg["mode"] = "integral";
        cfg["c"] = *integral_c;
        g = integral_operator(f, *integral_c);
      } else {
        cfg["mode"] = "apply";
        cfg["route"] = route;
        g = route == "coeff" ? apply_coeff(l.op, f) : apply_differential(l.op, f);
      }
      emit({{"series", io::to_json(g)}, {"config", cfg}}, c.out, out);
      return kExitHolds;
    }

    if (gen_cmd->parsed()) {
      const Loaded l = load_params(c);
      json cfg = config_of("gen", l);
      auto build = [&]() -> Construction {
        if (gen_h->parsed()) {
          const MeasureAtoms mu_atoms = io::atoms_from_json(load_json(atoms, "atoms"));
          cfg["generator"] = "herglotz";
          cfg["atoms"] = io::to_json(mu_atoms);
          cfg["trunc_order"] = trunc;
          return construct_herglotz(l.op, l.cp.alpha, mu_atoms, trunc);
        }
        if (gen_s->parsed()) {
          const SchwarzPoly w = io::schwarz_from_json(load_json(wpoly, "w"));
          cfg["generator"] = "schwarz";
          cfg["w"] = io::to_json(w);
          cfg["trunc_order"] = trunc;
          return construct_schwarz(l.op, l.cp, w, trunc);
        }
        cfg["generator"] = "extremal";
        cfg["n"] = n_index;
        LaurentSeries f = extremal_fn(l.op, l.cp, n_index);
        const Report r = exact_membership_plus(l.op, l.cp, f);
        Certificate cert{"extremal", f.trunc_order(), {}};
        cert.checks.push_back({"criterion-equality", !r.fails() && std::abs(r.worst_margin) <= 1e-12, r.worst_margin});
        // Equality in the necessary criterion proves membership only where the sufficient sum agrees.
        cert.checks.push_back({"membership-established", r.holds(), r.worst_margin});
        return {std::move(f), std::move(cert)};
      };
      const Construction built = build();
      emit({{"series", io::to_json(built.series)}, {"certificate", io::to_json(built.certificate)}, {"config", cfg}},
           c.out, out);
      bool ok = true, undecided = false;
      for (const auto& ch : built.certificate.checks) {
        // exact-support only records whether the series is a truncation.
        if (ch.name == "exact-support") continue;
        if (ch.name == "membership-established")
          undecided = undecided || !ch.passed;
        else
          ok = ok && ch.passed;
      }
      return !ok ? kExitFails : undecided ? kExitInconclusive : kExitHolds;
    }

    if (check_cmd->parsed()) {
      const Loaded l = load_params(c);
      const LaurentSeries f = load_series(c.series);
      const SampleGrid grid = load_grid(c);
      json cfg = config_of("check", l);
      cfg["criterion"] = criterion;
      cfg["trunc_order"] = f.trunc_order();
      Report r;
      if (criterion == "exact") {
        r = exact_membership_plus(l.op, l.cp, f);
      } else if (criterion == "sufficient") {
        r = sufficient_condition(l.op, l.cp, f);
      } else {
        cfg["grid"] = io::to_json(grid);
        if (criterion == "numeric") r = numeric_membership(l.op, l.cp, f, grid);
        else if (criterion == "disk") r = disk_characterization(l.op, l.cp, f, grid);
        else r = subordination_power_target(l.op, l.cp.alpha, f, grid);
      }
      emit(report_output(cfg, r), c.out, out);
      return exit_code(r.verdict);
    }

    if (verify_cmd->parsed()) {
      const Loaded l = load_params(c);
      json cfg = config_of("verify", l);
      if (v_cg->parsed() || v_cp->parsed()) {
        const LaurentSeries f = load_series(c.series);
        cfg["check"] = v_cg->parsed() ? "coeff-general" : "coeff-plus";
        cfg["n_max"] = n_max;
        cfg["trunc_order"] = f.trunc_order();
        const Report r = v_cg->parsed() ? check_coeff_bound_general(l.op, l.cp, f, n_max)
                                        : check_coeff_bound_plus(l.op, l.cp, f, n_max);
        emit(report_output(cfg, r), c.out, out);
        return exit_code(r.verdict);
      }
      if (v_d->parsed()) {
        const TailPolicy policy{parse_tail(tail), terms};
        cfg["check"] = "distortion";
        cfg["r"] = radius;
        cfg["which"] = which;
        cfg["tail"] = tail;
        cfg["terms"] = terms;
        if (c.series.empty()) {
          const DistortionBounds b = distortion(l.op, l.cp, radius, parse_kind(which), policy);
          emit({{"bounds", io::to_json(b)}, {"config", cfg}}, c.out, out);
          return b.divergent || !b.premise_holds ? kExitInconclusive : kExitHolds;
        }
        const LaurentSeries f = load_series(c.series);
        cfg["trunc_order"] = f.trunc_order();
        const Report r = check_distortion(l.op, l.cp, f, radius, parse_kind(which), policy);
        emit(report_output(cfg, r), c.out, out);
        return exit_code(r.verdict);
      }
      const SampleGrid grid = load_grid(c);
      cfg["grid"] = io::to_json(grid);
      if (v_c->parsed()) {
        const LaurentSeries f = load_series(c.series);
        cfg["check"] = "conv-nonvanish";
        cfg["theta_count"] = theta_count;
        cfg["floor"] = floor_value;
        cfg["trunc_order"] = f.trunc_order();
        const Report r = convolution_nonvanishing(l.op, l.cp, f, grid, theta_count, floor_value);
        emit(report_output(cfg, r), c.out, out);
        return exit_code(r.verdict);
      }
      // partial-sums; without --series the extremal function for m_cut is used
      cfg["check"] = "partial-sums";
      cfg["m_cut"] = m_cut;
      const bool use_extremal = c.series.empty();
      const LaurentSeries f = use_extremal ? partial_sum_extremal(l.op, l.cp, m_cut) : load_series(c.series);
      cfg["series"] = use_extremal ? json("extremal") : json("input");
      cfg["trunc_order"] = f.trunc_order();
      Report r = partial_sum_bounds(l.op, l.cp, f, m_cut, grid);
      json j = report_output(cfg, r);
      if (use_extremal) {
        const PartialSumSharpness s = partial_sum_sharpness(l.op, l.cp, m_cut);
        j["sharpness"] = {{"ratio_fk_gap", io::finite_or_null(s.ratio_fk_gap)},
                          {"ratio_kf_gap", io::finite_or_null(s.ratio_kf_gap)},
                          {"radius", 0.999}};
        std::ostringstream note;
        note << std::setprecision(6) << "sharpness: extremal comes within " << s.ratio_fk_gap << " (f/k) and "
             << s.ratio_kf_gap << " (k/f) of the bounds at |z| = 0.999";
        j["sharpness"]["note"] = note.str();
      }
      emit(j, c.out, out);
      return exit_code(r.verdict);
    }

    if (nbhd_cmd->parsed()) {
      const bool need_class = !n_delta->parsed();
      const Loaded l = load_params(c, need_class);
      json cfg = config_of("nbhd", l);
      if (!need_class) cfg.erase("class");
      if (n_dist->parsed()) {
        const LaurentSeries f = load_series(c.series);
        const LaurentSeries g = load_series(other, "other");
        cfg["check"] = "distance";
        cfg["kind"] = kind;
        const WeightSeq seq{kind == "plus" ? WeightKind::plus : WeightKind::general, l.op, l.cp};
        emit({{"distance", distance(seq, f, g)}, {"config", cfg}}, c.out, out);
        return kExitHolds;
      }
      if (n_delta->parsed()) {
        cfg["check"] = "delta";
        json warnings = json::array();
        if (l.op.degenerate()) warnings.push_back("degenerate-delta: lambda = mu = 0 gives delta = 0");
        emit({{"delta", delta_star(l.op)},
              {"premise_bound", inclusion_premise_bound(l.op)},
              {"warnings", warnings},
              {"config", cfg}},
             c.out, out);
        return kExitHolds;
      }
      const LaurentSeries f = load_series(c.series);
      InclusionOptions opts;
      opts.spread = spread;
      opts.witness_factor = witness_factor;
      cfg["seed"] = c.seed;
      cfg["trials"] = trials;
      cfg["spread"] = spread;
      cfg["trunc_order"] = f.trunc_order();
      Report r;
      if (n_vp->parsed()) {
        cfg["check"] = "verify-plus";
        cfg["delta"] = delta_star(l.op);
        cfg["witness_factor"] = witness_factor;
        r = verify_inclusion_plus(l.op, l.cp, f, trials, c.seed, opts);
      } else {
        const SampleGrid grid = load_grid(c);
        cfg["check"] = "verify-general";
        cfg["delta"] = delta;
        cfg["grid"] = io::to_json(grid);
        r = verify_inclusion_general(l.op, l.cp, f, trials, grid, delta, c.seed, opts);
      }
      emit(report_output(cfg, r), c.out, out);
      return exit_code(r.verdict);
    }

    if (report_cmd->parsed()) {
      const json suite = load_json(suite_path, "suite");
      int code = 0;
      std::ostringstream table;
      json result = batch_report(suite, jobs, table, code);
      result["config"] = {{"command", "report"}, {"suite", suite_path}, {"jobs", jobs}};
      emit(result, c.out, out);
      err << table.str();
      return code;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::FormatError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    err << "overflow: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "usage error: no command\n";
  return kExitUsage;
}

namespace {

struct ItemResult {
  std::string id;
  std::string expect;
  int code = kExitUsage;
  json output;
  std::string error;
};

std::string verdict_of(int code) {
  switch (code) {
    case kExitHolds: return "holds";
    case kExitFails: return "fails";
    case kExitInconclusive: return "inconclusive";
    default: return "error";
  }
}

ItemResult run_item(const json& item, std::size_t index) {
  ItemResult res;
  res.id = "item-" + std::to_string(index);
  try {
    if (!item.is_object()) throw io::FormatError("items[" + std::to_string(index) + "]: expected an object");
    if (auto it = item.find("id"); it != item.end() && it->is_string()) res.id = it->get<std::string>();
    if (auto it = item.find("expect"); it != item.end() && it->is_string()) res.expect = it->get<std::string>();
    const auto it = item.find("args");
    if (it == item.end() || !it->is_array())
      throw io::FormatError("items[" + std::to_string(index) + "].args: expected an array of strings");
    std::vector<std::string> args;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& a = (*it)[i];
      if (a.is_string()) args.push_back(a.get<std::string>());
      else if (a.is_object() || a.is_array()) args.push_back(a.dump());
      else if (a.is_number()) args.push_back(a.dump());
      else throw io::FormatError("items[" + std::to_string(index) + "].args[" + std::to_string(i) + "]: unsupported value");
    }
    if (!args.empty() && args.front() == "report") throw io::FormatError("items[" + std::to_string(index) + "]: nested report");
    std::ostringstream out, err;
    res.code = run(args, out, err);
    if (res.code == kExitUsage) {
      res.error = err.str();
      while (!res.error.empty() && res.error.back() == '\n') res.error.pop_back();
    } else {
      const std::string text = out.str();
      try {
        res.output = json::parse(text);
      } catch (const json::parse_error&) {
        res.output = text;
      }
    }
  } catch (const std::exception& e) {
    res.code = kExitUsage;
    res.error = e.what();
  }
  return res;
}

}  // namespace

json batch_report(const json& suite, int jobs, std::ostream& table, int& exit_code) {
  const json* items = &suite;
  if (suite.is_object()) {
    auto it = suite.find("items");
    if (it == suite.end()) throw io::FormatError("suite.items: missing field");
    items = &*it;
  }
  if (!items->is_array()) throw io::FormatError("suite.items: expected an array");
  const std::size_t n = items->size();
  std::vector<ItemResult> results(n);
  const std::size_t width = static_cast<std::size_t>(std::max(jobs, 1));
  for (std::size_t start = 0; start < n; start += width) {
    std::vector<std::future<ItemResult>> batch;
    for (std::size_t i = start; i < std::min(n, start + width); ++i)
      batch.push_back(std::async(std::launch::async, run_item, std::cref((*items)[i]), i));
    for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
  }

  json out_items = json::array();
  int matched = 0, errored = 0;
  std::size_t id_width = 2;
  for (const auto& r : results) id_width = std::max(id_width, r.id.size());
  table << std::left << std::setw(static_cast<int>(id_width)) << "id" << "  " << std::setw(14) << "verdict"
        << std::setw(14) << "expected" << "status\n";
  for (const auto& r : results) {
    const std::string verdict = verdict_of(r.code);
    const bool ok = r.expect.empty() ? verdict != "error" : r.expect == verdict;
    matched += ok ? 1 : 0;
    errored += verdict == "error" ? 1 : 0;
    json j = {{"id", r.id}, {"verdict", verdict}, {"exit_code", r.code}, {"matches_expectation", ok}};
    if (!r.expect.empty()) j["expect"] = r.expect;
    if (r.code == kExitUsage) j["error"] = r.error;
    else j["output"] = r.output;
    out_items.push_back(j);
    table << std::setw(static_cast<int>(id_width)) << r.id << "  " << std::setw(14) << verdict << std::setw(14)
          << (r.expect.empty() ? "-" : r.expect) << (ok ? "ok" : "MISMATCH") << "\n";
  }
  table << matched << "/" << n << " items as expected, " << errored << " errored\n";
  exit_code = matched == static_cast<int>(n) ? 0 : 1;
  return {{"items", out_items},
          {"summary", {{"total", n}, {"as_expected", matched}, {"errored", errored}}}};
}

}  // namespace merokit::cli
