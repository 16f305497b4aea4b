#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "densegraph/core.hpp"
#include "densegraph/errors.hpp"
#include "densegraph/framework.hpp"
#include "densegraph/io.hpp"
#include "densegraph/oracle.hpp"

namespace dg = densegraph;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Flags {
  std::string input, cache, output, trace_csv;
  std::string algorithm = "greedy";
  std::string pruning = "exact";
  std::string approx_factor = "1.5";
  std::uint64_t iterations = 0;
  double epsilon = 0;
  bool epsilon_set = false, iterations_set = false, seed_set = false;
  bool reset_loads = false;
  int threads = 0;
  std::uint64_t repeats = 1;
  std::uint64_t seed = 0;
  std::uint32_t oracle_limit = 22;
  std::string coreness_csv;
};

// "1.5" or "2" -> reduced rational; the coreness approximation factor.
void parse_factor(const std::string& text, dg::u64& num, dg::u64& den) {
  std::size_t dot = text.find('.');
  std::string whole = dot == std::string::npos ? text : text.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (whole.empty() || frac.size() > 9 ||
      whole.find_first_not_of("0123456789") != std::string::npos ||
      frac.find_first_not_of("0123456789") != std::string::npos)
    throw dg::ParamError("invalid --approx-factor \"" + text + "\"");
  den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  num = std::stoull(whole) * den + (frac.empty() ? 0 : std::stoull(frac));
  dg::u64 g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (num <= den) throw dg::ParamError("--approx-factor must be > 1");
}

int env_threads() {
  const char* s = std::getenv("DENSEST_THREADS");
  if (!s || !*s) return 0;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end && *end == '\0' && v > 0) return static_cast<int>(v);
  std::cerr << "warning: ignoring invalid DENSEST_THREADS=\"" << s << "\"\n";
  return 0;
}

dg::Graph load_input(const Flags& f) {
  if (dg::is_cache_file(f.input)) return dg::read_cache(f.input);
  if (!f.cache.empty()) {
    if (std::filesystem::exists(f.cache)) {
      dg::u64 src = 0;
      dg::Graph g = dg::read_cache(f.cache, &src);
      if (src != dg::hash_file(f.input))
        throw dg::CacheHashError(f.cache + " was built from a different " + f.input);
      return g;
    }
    dg::Graph g = dg::parse_edge_list_file(f.input);
    dg::write_cache(g, f.cache, dg::hash_file(f.input));
    return g;
  }
  return dg::parse_edge_list_file(f.input);
}

dg::RunConfig make_config(const Flags& f) {
  dg::RunConfig cfg;
  cfg.algorithm = f.algorithm == "greedy" ? dg::Algorithm::peel : dg::Algorithm::sort;
  cfg.pruning = f.pruning == "none"     ? dg::Pruning::none
                : f.pruning == "exact"  ? dg::Pruning::exact
                : f.pruning == "approx" ? dg::Pruning::approx
                                        : dg::Pruning::hybrid;
  parse_factor(f.approx_factor, cfg.c_num, cfg.c_den);
  cfg.threads = f.threads;
  cfg.reset_loads = f.reset_loads;
  if (f.iterations_set) {
    if (f.iterations == 0) throw dg::ParamError("--iterations must be >= 1");
    cfg.iterations = f.iterations;
    if (f.epsilon_set)
      std::cerr << "warning: both --iterations and --epsilon given; --iterations wins\n";
  } else if (f.epsilon_set) {
    if (!(f.epsilon > 0 && f.epsilon < 1)) throw dg::ParamError("--epsilon must be in (0,1)");
    cfg.epsilon = f.epsilon;
  } else {
    cfg.iterations = 20;
  }
  if (f.repeats == 0) throw dg::ParamError("--repeats must be >= 1");
  return cfg;
}

void write_trace_csv(const dg::RunTrace& trace, std::ostream& out) {
  out << "iter,density_num,density_den,density_float,n,m,width,ms\n";
  char ms[32];
  for (const auto& r : trace.iters) {
    std::snprintf(ms, sizeof ms, "%.3f", r.ms);
    out << r.iter << ',' << r.rho.edges << ',' << r.rho.verts << ','
        << dg::format_fixed6(r.rho) << ',' << r.n << ',' << r.m << ',' << r.width << ',' << ms
        << '\n';
  }
}

int cmd_run(const Flags& f, bool trace_to_stdout) {
  dg::Graph g = load_input(f);
  dg::RunConfig cfg = make_config(f);
  dg::RunResult res = dg::run(g, cfg);
  double init_ms = res.trace.init.init_ms, total_ms = res.total_ms;
  for (dg::u64 r = 1; r < f.repeats; ++r) {
    dg::RunResult again = dg::run(g, cfg);
    if (again.best != res.best)
      throw dg::InvariantError("repeated run diverged from the first run");
    init_ms += again.trace.init.init_ms;
    total_ms += again.total_ms;
  }
  init_ms /= static_cast<double>(f.repeats);
  total_ms /= static_cast<double>(f.repeats);

  if (!f.trace_csv.empty()) {
    std::ofstream out(f.trace_csv, std::ios::trunc);
    if (!out) throw dg::IoError("cannot open " + f.trace_csv + " for writing");
    write_trace_csv(res.trace, out);
    if (!out.flush()) throw dg::IoError("write failure on " + f.trace_csv);
  }
  if (trace_to_stdout) {
    write_trace_csv(res.trace, std::cout);
    return 0;
  }

  ordered_json cfgj;
  cfgj["algorithm"] = f.algorithm;
  cfgj["pruning"] = f.pruning;
  cfgj["iterations"] = f.iterations_set ? ordered_json(f.iterations) : ordered_json(nullptr);
  cfgj["epsilon"] = f.epsilon_set ? ordered_json(f.epsilon) : ordered_json(nullptr);
  cfgj["approx_factor"] = f.approx_factor;
  cfgj["threads"] = f.threads;
  cfgj["repeats"] = f.repeats;
  cfgj["reset_loads"] = f.reset_loads;
  cfgj["seed"] = f.seed_set ? ordered_json(f.seed) : ordered_json(nullptr);

  const auto& init = res.trace.init;
  ordered_json j;
  j["input"] = f.input;
  j["config"] = cfgj;
  j["kmax"] = init.kmax_known ? ordered_json(init.kmax) : ordered_json(nullptr);
  j["L0"] = init.kmax_known ? ordered_json(init.threshold) : ordered_json(nullptr);
  j["best_density"] = {{"num", res.best.edges},
                       {"den", res.best.verts},
                       {"float", res.best.value()}};
  j["witness_size"] = res.witness.size();
  j["witness_edges"] = res.witness_edges;
  j["iterations"] = res.iterations;
  j["init_ms"] = init_ms;
  j["total_ms"] = total_ms;
  j["max_width"] = res.max_width;
  std::cout << j.dump(2) << '\n';
  return 0;
}

// Integer-exact truncation to three decimals, e.g. 2306/25973 -> "0.088".
std::string ratio3(dg::u64 num, dg::u64 den) {
  dg::u64 scaled = den == 0 ? 0 : num * 1000 / den;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%llu.%03llu", static_cast<unsigned long long>(scaled / 1000),
                static_cast<unsigned long long>(scaled % 1000));
  return buf;
}

int cmd_stats(const Flags& f) {
  dg::Graph g = load_input(f);
  dg::GraphStats st = g.stats();
  dg::CoreDecomposition dec = dg::exact_coreness(g);
  if (!f.coreness_csv.empty()) {
    std::ofstream out(f.coreness_csv, std::ios::trunc);
    if (!out) throw dg::IoError("cannot open " + f.coreness_csv + " for writing");
    out << "orig_id,coreness\n";
    for (dg::u64 v = 0; v < g.n; ++v) out << g.orig[v] << ',' << dec.labels[v] << '\n';
    if (!out.flush()) throw dg::IoError("write failure on " + f.coreness_csv);
  }
  dg::u32 k = static_cast<dg::u32>(dg::ceil_div(dec.kmax, 2));
  dg::Graph core = dg::get_core(g, dec, k);
  // Core edges are reported as arcs of the symmetric adjacency; the edge
  // ratio is the quotient of the two printed edge figures.
  dg::u64 core_arcs = 2 * core.m;
  std::printf("n              %llu\n", static_cast<unsigned long long>(st.n));
  std::printf("m              %llu\n", static_cast<unsigned long long>(st.m));
  std::printf("max_degree     %llu\n", static_cast<unsigned long long>(st.max_degree));
  std::printf("kmax           %u\n", dec.kmax);
  std::printf("core_threshold %u\n", k);
  std::printf("core_vertices  %llu\n", static_cast<unsigned long long>(core.n));
  std::printf("core_edges     %llu\n", static_cast<unsigned long long>(core_arcs));
  std::printf("vertex_ratio   %s\n", ratio3(core.n, g.n).c_str());
  std::printf("edge_ratio     %s\n", ratio3(core_arcs, g.m).c_str());
  return 0;
}

int cmd_oracle(const Flags& f) {
  dg::Graph g = load_input(f);
  dg::OracleResult res = dg::brute_force_densest(g, f.oracle_limit);
  std::string out = std::to_string(res.rho_star.edges) + "/" + std::to_string(res.rho_star.verts) +
                    " = " + dg::format_fixed6(res.rho_star) + ", witness [";
  for (std::size_t i = 0; i < res.witness.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(res.witness[i]);
  }
  std::cout << out << "]\n";
  return 0;
}

int cmd_convert(const Flags& f) {
  if (dg::is_cache_file(f.input)) {
    dg::Graph g = dg::read_cache(f.input);
    std::ofstream out(f.output, std::ios::trunc);
    if (!out) throw dg::IoError("cannot open " + f.output + " for writing");
    dg::write_edge_list(g, out);
    if (!out.flush()) throw dg::IoError("write failure on " + f.output);
    return 0;
  }
  dg::Graph g = dg::parse_edge_list_file(f.input);
  dg::write_cache(g, f.output, dg::hash_file(f.input));
  return 0;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--input", f.input, "input graph: text edge list or binary cache")->required();
  sub->add_option("--cache", f.cache, "binary cache path: read if present and matching, else written");
  sub->add_option("--threads", f.threads, "worker threads (default: all, or DENSEST_THREADS)");
}

void add_run_flags(CLI::App* sub, Flags& f) {
  add_common(sub, f);
  sub->add_option("--algorithm", f.algorithm, "refinement ordering")
      ->check(CLI::IsMember({"greedy", "sorting"}))
      ->capture_default_str();
  sub->add_option("--pruning", f.pruning, "core pruning mode")
      ->check(CLI::IsMember({"none", "exact", "approx", "hybrid"}))
      ->capture_default_str();
  auto* it = sub->add_option("--iterations", f.iterations, "refinement iterations T");
  auto* ep = sub->add_option("--epsilon", f.epsilon, "accuracy target; sets T when --iterations is absent");
  sub->add_option("--approx-factor", f.approx_factor, "coreness approximation factor c > 1")
      ->capture_default_str();
  sub->add_option("--repeats", f.repeats, "repeat the run and average timings")->capture_default_str();
  sub->add_option("--trace-csv", f.trace_csv, "write the per-iteration trace to this file");
  auto* sd = sub->add_option("--seed", f.seed, "reserved; runs are deterministic");
  sub->add_flag("--reset-loads", f.reset_loads, "zero the loads after every re-prune");
  sub->parse_complete_callback([&f, it, ep, sd] {
    f.iterations_set = it->count() > 0;
    f.epsilon_set = ep->count() > 0;
    f.seed_set = sd->count() > 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(1+eps)-approximate densest subgraph via core pruning and load-guided refinement"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* run = app.add_subcommand("run", "prune, refine, and print a JSON summary");
  add_run_flags(run, f);
  CLI::App* trace = app.add_subcommand("trace", "like run, but print the iteration trace CSV");
  add_run_flags(trace, f);
  CLI::App* stats = app.add_subcommand("stats", "graph and half-kmax-core statistics");
  add_common(stats, f);
  stats->add_option("--coreness-csv", f.coreness_csv, "dump per-vertex coreness to this file");
  CLI::App* oracle = app.add_subcommand("oracle", "exact densest subgraph by exhaustive search");
  add_common(oracle, f);
  oracle->add_option("--limit", f.oracle_limit, "maximum vertex count")->capture_default_str();
  CLI::App* convert = app.add_subcommand("convert", "text edge list <-> binary cache");
  add_common(convert, f);
  convert->add_option("--output", f.output, "destination path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion") ? code : 2;
  }

  try {
    if (f.threads == 0) f.threads = env_threads();
    if (f.threads > 0) dg::set_threads(f.threads);
    if (run->parsed()) return cmd_run(f, false);
    if (trace->parsed()) return cmd_run(f, true);
    if (stats->parsed()) return cmd_stats(f);
    if (oracle->parsed()) return cmd_oracle(f);
    return cmd_convert(f);
  } catch (const dg::ParamError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const dg::OracleSizeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const dg::CacheHashError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 6;
  } catch (const dg::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const dg::EmptyGraphError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const dg::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const dg::InvariantError& e) {
    std::cerr << "internal invariant violated: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
