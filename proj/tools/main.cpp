// resnet: command-line front end for the resistance-network library.
// JSON results go to stdout (deterministic: sorted keys, shortest float
// form); human diagnostics go to stderr. Networks travel as NETX text.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "resnet/flows.hpp"
#include "resnet/generators.hpp"
#include "resnet/lattice.hpp"
#include "resnet/netx.hpp"
#include "resnet/reduce.hpp"
#include "resnet/resistance.hpp"
#include "resnet/solvers.hpp"
#include "resnet/walk.hpp"

using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumerical = 4;

struct NetInput {
  std::string path;
  std::string gen_spec;

  resnet::Network load() const {
    if (!gen_spec.empty()) return resnet::generate(gen_spec);
    if (!path.empty()) return resnet::load_network(path);
    throw resnet::ValidationError("no network given: use --net or --gen");
  }
};

void add_net_options(CLI::App* cmd, NetInput& in) {
  cmd->add_option("--net", in.path, "NETX file path");
  cmd->add_option("--gen", in.gen_spec, "generator spec, e.g. cycle:N=5");
}

std::pair<int, int> parse_pair(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw resnet::ValidationError("--pair expects 'x,y'");
  return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

std::vector<int> parse_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

std::vector<long> parse_vec(const std::string& text) {
  std::vector<long> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(std::stol(item));
  return out;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

json trace_json(const resnet::LimitTrace& t) {
  json arr = json::array();
  for (auto& [k, v] : t.trace) arr.push_back({k, v});
  return arr;
}

json mc_json(const resnet::McEstimate& e) {
  return {{"ci95", e.ci95},
          {"estimate", e.estimate},
          {"samples", e.samples},
          {"truncated", e.truncated},
          {"truncation_bias_bound", e.truncation_bias_bound},
          {"truncation_warning", e.truncation_warning}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and approximate analysis of electrical resistance networks"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker cap for parallel sections");

  // --- gen ---------------------------------------------------------------
  std::string gen_spec;
  auto* gen = app.add_subcommand("gen", "emit a generated network as NETX");
  gen->add_option("spec", gen_spec, "family:key=val,...")->required();

  // --- validate ------------------------------------------------------------
  NetInput validate_in;
  auto* validate = app.add_subcommand("validate", "parse and validate a network");
  add_net_options(validate, validate_in);

  // --- resistance ----------------------------------------------------------
  NetInput res_in;
  std::string res_pair, res_mode = "finite";
  double res_tol = 1e-8;
  int res_kmax = 30, res_origin = 0;
  auto* res = app.add_subcommand("resistance", "effective resistance in every variant");
  add_net_options(res, res_in);
  res->add_option("--pair", res_pair, "x,y")->required();
  res->add_option("--mode", res_mode, "finite|free|wired|trace|all");
  res->add_option("--tol", res_tol, "exhaustion convergence tolerance");
  res->add_option("--kmax", res_kmax, "exhaustion level cap");
  res->add_option("--origin", res_origin, "exhaustion origin");

  // --- solve ---------------------------------------------------------------
  NetInput solve_in;
  std::string solve_kind;
  int solve_a = 0, solve_w = 1, solve_o = 0, solve_k = 0;
  double solve_sign = 1.0;
  bool solve_vf = false;
  auto* solve = app.add_subcommand("solve", "dipole and wired-monopole solves");
  add_net_options(solve, solve_in);
  solve->add_option("kind", solve_kind, "dipole|monopole")->required();
  solve->add_option("--a", solve_a, "source vertex");
  solve->add_option("--w", solve_w, "sink vertex (dipole)");
  solve->add_option("--o", solve_o, "ground / origin vertex");
  solve->add_option("--k", solve_k, "exhaustion level (monopole)");
  solve->add_option("--sign", solve_sign, "monopole sign, +1 or -1");
  solve->add_flag("--vf", solve_vf, "emit 'v id value' lines instead of JSON");

  // --- reduce / replay -------------------------------------------------------
  NetInput reduce_in;
  std::string reduce_keep, reduce_log_path;
  auto* reduce = app.add_subcommand("reduce", "reduce to an equivalent pair conductance");
  add_net_options(reduce, reduce_in);
  reduce->add_option("--keep", reduce_keep, "a,b terminals")->required();
  reduce->add_option("--log", reduce_log_path, "write the reduction log (JSON lines)");

  NetInput replay_in;
  std::string replay_log_path;
  auto* replay_cmd = app.add_subcommand("replay", "replay a reduction log, emit NETX");
  add_net_options(replay_cmd, replay_in);
  replay_cmd->add_option("log", replay_log_path, "JSON-lines reduction log")->required();

  // --- flows -----------------------------------------------------------------
  NetInput flows_in;
  std::string flows_kind, flows_pair;
  int flows_origin = 0;
  auto* flows = app.add_subcommand("flows", "cycle space and minimal flows");
  add_net_options(flows, flows_in);
  flows->add_option("kind", flows_kind, "minflow|project|cyclebasis")->required();
  flows->add_option("--pair", flows_pair, "a,w endpoints (minflow)");
  flows->add_option("--origin", flows_origin, "ground vertex");

  // --- walk --------------------------------------------------------------------
  NetInput walk_in;
  std::string walk_kind, walk_pair, walk_mode = "exact", walk_avoid, walk_hf;
  uint64_t walk_seed = 1;
  int walk_samples = 100000, walk_nsteps = 5, walk_vertex = 0;
  auto* walk = app.add_subcommand("walk", "random-walk probabilities");
  add_net_options(walk, walk_in);
  walk->add_option("kind", walk_kind, "escape|hitprob|martingale")->required();
  walk->add_option("--pair", walk_pair, "a,b");
  walk->add_option("--avoid", walk_avoid, "comma list of absorbing vertices (hitprob)");
  walk->add_option("--mode", walk_mode, "exact|mc");
  walk->add_option("--seed", walk_seed, "RNG seed");
  walk->add_option("--samples", walk_samples, "MC sample count");
  walk->add_option("--steps", walk_nsteps, "horizon (martingale)");
  walk->add_option("--vertex", walk_vertex, "start vertex (martingale)");
  walk->add_option("--hf", walk_hf, "harmonic function as 'v id value' lines (martingale)");

  // --- lattice --------------------------------------------------------------
  std::string lat_kind, lat_x = "", lat_y = "";
  int lat_d = 3, lat_grid = 0, lat_levels = 0, lat_shell_points = 0;
  auto* lat = app.add_subcommand("lattice", "closed-form Z^d quantities by quadrature");
  lat->add_option("kind", lat_kind, "R|rinf|vx|monopole")->required();
  lat->add_option("--d", lat_d, "dimension");
  lat->add_option("--x", lat_x, "lattice vector, comma separated");
  lat->add_option("--y", lat_y, "lattice vector, comma separated");
  lat->add_option("--grid", lat_grid, "points per axis (even)");
  lat->add_option("--levels", lat_levels, "dyadic shell levels (singular integrands)");
  lat->add_option("--shell-points", lat_shell_points, "points per axis per shell");

  // --- decompose ---------------------------------------------------------------
  NetInput dec_in;
  int dec_vertex = 1, dec_depth = 1, dec_origin = 0;
  auto* dec = app.add_subcommand("decompose", "Royden split of an energy-kernel element");
  add_net_options(dec, dec_in);
  dec->add_option("--vertex", dec_vertex, "kernel index x (v_x)")->required();
  dec->add_option("--depth", dec_depth, "truncation level k")->required();
  dec->add_option("--origin", dec_origin, "origin o");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      std::cout << resnet::serialize_network(resnet::generate(gen_spec));
      return 0;
    }
    if (*validate) {
      resnet::Network net = validate_in.load();
      emit(json{{"edges", net.edge_count()},
                {"ok", true},
                {"vertices", net.vertex_count()}});
      return 0;
    }
    if (*res) {
      resnet::Network net = res_in.load();
      auto [x, y] = parse_pair(res_pair);
      resnet::ExhaustionPlan plan{res_origin, std::nullopt};
      resnet::LimitOptions lim;
      lim.tol = res_tol;
      lim.k_max = res_kmax;
      json out;
      if (res_mode == "finite") {
        out["finite"] = resnet::resistance_finite(net, x, y).value;
      } else if (res_mode == "free") {
        auto t = resnet::free_resistance(net, x, y, plan, lim);
        out["free"] = t.value;
        out["converged"] = t.converged;
        out["trace"] = trace_json(t);
      } else if (res_mode == "wired") {
        auto t = resnet::wired_resistance(net, x, y, plan, lim);
        out["wired"] = t.value;
        out["converged"] = t.converged;
        out["trace"] = trace_json(t);
      } else if (res_mode == "trace") {
        out["trace"] = resnet::trace_resistance(net, x, y);
      } else if (res_mode == "all") {
        auto rep = resnet::resistance_report(net, x, y, plan, lim);
        out = json::parse(rep.to_json());
      } else {
        std::cerr << "unknown --mode " << res_mode << "\n";
        return kExitUsage;
      }
      emit(out);
      return 0;
    }
    if (*solve) {
      resnet::Network net = solve_in.load();
      resnet::VertexFunction f;
      json out;
      if (solve_kind == "dipole") {
        f = resnet::solve_dipole(net, solve_a, solve_w, solve_o);
        out["energy"] = resnet::energy(net, f);
      } else if (solve_kind == "monopole") {
        resnet::ExhaustionPlan plan{solve_o, std::nullopt};
        auto mono = resnet::solve_monopole_wired(net, solve_o, plan, solve_k, solve_sign);
        f = mono.w;
        out["energy"] = mono.energy;
        json tr = json::array();
        for (auto& [k, e] : mono.energy_trace) tr.push_back({k, e});
        out["energy_trace"] = tr;
      } else {
        std::cerr << "unknown solve kind " << solve_kind << "\n";
        return kExitUsage;
      }
      if (solve_vf) {
        std::cout << resnet::serialize_vertex_function(f);
        return 0;
      }
      out["values"] = f.values;
      emit(out);
      return 0;
    }
    if (*reduce) {
      resnet::Network net = reduce_in.load();
      auto [a, b] = parse_pair(reduce_keep);
      auto red = resnet::reduce_to_pair(net, a, b);
      if (!reduce_log_path.empty()) {
        std::ofstream log(reduce_log_path);
        if (!log) throw resnet::ValidationError("cannot write " + reduce_log_path);
        log << red.log.to_json_lines();
      }
      emit(json{{"conductance", red.conductance},
                {"resistance", 1.0 / red.conductance},
                {"steps", red.log.steps.size()}});
      return 0;
    }
    if (*replay_cmd) {
      resnet::Network net = replay_in.load();
      std::ifstream in(replay_log_path);
      if (!in) throw resnet::ValidationError("cannot read " + replay_log_path);
      std::stringstream buf;
      buf << in.rdbuf();
      auto log = resnet::ReductionLog::from_json_lines(buf.str());
      std::cout << resnet::serialize_network(resnet::replay(net, log));
      return 0;
    }
    if (*flows) {
      resnet::Network net = flows_in.load();
      json out;
      if (flows_kind == "cyclebasis") {
        auto basis = resnet::cycle_basis(net);
        out["dimension"] = basis.dimension();
      } else if (flows_kind == "minflow") {
        auto [a, w] = parse_pair(flows_pair);
        resnet::Current I = resnet::min_dissipation_flow(net, a, w, flows_origin);
        out["dissipation"] = resnet::dissipation(net, I);
        json arr = json::array();
        for (int i = 0; i < net.edge_count(); ++i) {
          const resnet::Edge& e = net.edges()[i];
          arr.push_back({e.u, e.v, I.values[i]});
        }
        out["currents"] = arr;
      } else if (flows_kind == "project") {
        auto [a, w] = parse_pair(flows_pair);
        resnet::Current chi = resnet::path_characteristic(
            net, resnet::find_current_path(
                     net, resnet::solve_dipole(net, a, w, w), a, w));
        auto proj = resnet::project_to_induced(net, chi, flows_origin);
        out["dissipation_before"] = resnet::dissipation(net, chi);
        out["dissipation_after"] = resnet::dissipation(net, proj.projected);
        out["cycle_defect"] = resnet::cycle_condition(net, proj.projected);
      } else {
        std::cerr << "unknown flows kind " << flows_kind << "\n";
        return kExitUsage;
      }
      emit(out);
      return 0;
    }
    if (*walk) {
      resnet::Network net = walk_in.load();
      resnet::WalkConfig cfg;
      cfg.seed = walk_seed;
      cfg.samples = walk_samples;
      cfg.threads = threads;
      json out;
      if (walk_kind == "escape") {
        auto [a, b] = parse_pair(walk_pair);
        if (walk_mode == "exact") {
          double p = resnet::escape_probability_exact(net, a, b);
          out["exact"] = true;
          out["estimate"] = p;
        } else {
          out = mc_json(resnet::escape_probability_mc(net, a, b, cfg));
          out["exact"] = false;
        }
      } else if (walk_kind == "hitprob") {
        auto [s, t] = parse_pair(walk_pair);
        out["estimate"] = resnet::hit_before_exact(net, s, t, parse_list(walk_avoid));
        out["exact"] = true;
      } else if (walk_kind == "martingale") {
        if (walk_hf.empty()) {
          std::cerr << "martingale needs --hf <vertex-function file>\n";
          return kExitUsage;
        }
        std::ifstream hin(walk_hf);
        if (!hin) throw resnet::ValidationError("cannot read " + walk_hf);
        resnet::VertexFunction h = resnet::parse_vertex_function(hin, net.vertex_count());
        auto rep = resnet::martingale_check(net, h, walk_vertex, walk_nsteps, cfg);
        out = mc_json(rep.estimate);
        out["flagged"] = rep.flagged;
        out["h_start"] = rep.h_start;
        out["sigmas"] = rep.sigmas;
      } else {
        std::cerr << "unknown walk kind " << walk_kind << "\n";
        return kExitUsage;
      }
      emit(out);
      return 0;
    }
    if (*lat) {
      resnet::QuadratureGrid grid = resnet::QuadratureGrid::defaults(lat_d);
      if (lat_grid > 0) grid.points_per_axis = lat_grid;
      if (lat_levels > 0) grid.shell_levels = lat_levels;
      if (lat_shell_points > 0) grid.shell_points = lat_shell_points;
      std::vector<long> x = lat_x.empty() ? std::vector<long>(lat_d, 0) : parse_vec(lat_x);
      std::vector<long> y = lat_y.empty() ? std::vector<long>(lat_d, 0) : parse_vec(lat_y);
      json out;
      if (lat_kind == "R") {
        out["value"] = resnet::lattice_R(lat_d, x, y, grid);
      } else if (lat_kind == "rinf") {
        auto v = resnet::lattice_Rinf(lat_d, grid);
        out["value"] = v.value;
        out["error"] = v.error;
      } else if (lat_kind == "vx") {
        out["value"] = resnet::lattice_vx(lat_d, x, y, grid);
      } else if (lat_kind == "monopole") {
        auto v = resnet::lattice_monopole(lat_d, x, grid);
        out["value"] = v.value;
        out["error"] = v.error;
      } else {
        std::cerr << "unknown lattice kind " << lat_kind << "\n";
        return kExitUsage;
      }
      emit(out);
      return 0;
    }
    if (*dec) {
      resnet::Network net = dec_in.load();
      resnet::VertexFunction vx =
          resnet::solve_dipole(net, dec_vertex, dec_origin, dec_origin);
      resnet::ExhaustionPlan plan{dec_origin, std::nullopt};
      auto split = resnet::royden_split(net, vx, dec_origin, plan, dec_depth);
      emit(json{{"cross_energy", split.cross_energy},
                {"fin_energy", split.fin_energy},
                {"harm_energy", split.harm_energy},
                {"total_energy", resnet::energy(net, vx)}});
      return 0;
    }
  } catch (const resnet::SolverError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    emit(json{{"error", e.what()}, {"kind", "numerical"}});
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit(json{{"error", e.what()}, {"kind", "input"}});
    return kExitInput;
  }
  return kExitUsage;
}
