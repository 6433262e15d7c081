#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dtlab/errors.hpp"
#include "dtlab/gadget.hpp"
#include "dtlab/io.hpp"
#include "dtlab/oracle.hpp"
#include "dtlab/reduction.hpp"
#include "dtlab/suites.hpp"

using namespace dtlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  return in;
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void write_to(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  fn(out);
}

Rational rational_arg(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidArgument, std::string(flag) + " expects a rational like 1/3, got '" + text + "'");
  }
}

OracleCaps with_env_cap(OracleCaps caps) {
  if (const char* env = std::getenv("DTLAB_CAP_POINTS")) {
    try {
      caps.max_points = std::stoul(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, std::string("DTLAB_CAP_POINTS is not a number: ") + env);
    }
  }
  return caps;
}

Graph load_graph(const std::string& path) {
  auto in = open_in(path);
  return read_graph(in);
}

PartialFn load_fn(const std::string& path) {
  auto in = open_in(path);
  return read_partial_fn(in);
}

Json load_json(const std::string& path) {
  auto in = open_in(path);
  return read_json(in);
}

Pmf uniform_pmf(const PartialFn& f) {
  std::vector<Mass> masses;
  for (const auto& p : f.points()) masses.push_back({p.x, Rational(1, static_cast<long long>(f.size()))});
  return Pmf(std::move(masses));
}

void print_bench(std::ostream& out, std::uint64_t seed, const std::string& format) {
  Json all = Json::array();
  if (format == "tsv") out << "criterion\tstatus\ttitle\tsummary\n";
  for (int id = 1; id <= kLibraryCriteria; ++id) {
    const auto res = run_criterion(id, seed);
    if (format == "json") {
      Json j{{"criterion", id}, {"status", res.pass ? "PASS" : "FAIL"}, {"title", res.title}, {"summary", res.summary}};
      j["notes"] = res.notes;
      Json fails = Json::array();
      for (const auto& f : res.failures) fails.push_back(report_to_json(f));
      j["failures"] = std::move(fails);
      Json trs = Json::array();
      for (const auto& t : res.transcripts) trs.push_back(transcript_to_json(t));
      if (!trs.empty()) j["transcripts"] = std::move(trs);
      all.push_back(std::move(j));
      continue;
    }
    out << id << '\t' << (res.pass ? "PASS" : "FAIL") << '\t' << res.title << '\t' << res.summary << '\n';
    for (const auto& note : res.notes) out << "\t\t\tnote: " << note << '\n';
    std::size_t shown = 0;
    for (const auto& f : res.failures) {
      if (++shown > 5) {
        out << "\t\t\t... " << res.failures.size() - 5 << " more failures\n";
        break;
      }
      out << "\t\t\tfail: " << f.name << ' ' << to_string(f.lhs) << ' ' << to_string(f.relation) << ' '
          << to_string(f.rhs) << " [" << f.context << "]\n";
    }
  }
  if (format == "json") out << all.dump(2) << '\n';
  else out << "12\t-\tDeterminism\tcompare two runs of this table byte for byte\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dtlab: decision tree lower-bound laboratory"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every verb");

  // gen-graph
  auto* gen = app.add_subcommand("gen-graph", "Generate a graph file (p n m / e u v, 1-based)");
  std::string kind = "complete";
  std::size_t gen_n = 3;
  std::uint64_t gen_seed = 0;
  std::size_t degree = 0;
  std::string gen_out;
  gen->add_option("--kind", kind, "complete, cycle, path, random-regular, random, triangle-union")->capture_default_str();
  gen->add_option("--n", gen_n, "Number of vertices")->capture_default_str();
  gen->add_option("--degree", degree, "Degree for random-regular");
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // gadget
  auto* gad = app.add_subcommand("gadget", "Export the hard support and canonical pmf of ell-IsEdge on a graph");
  std::string gad_graph;
  std::size_t gad_ell = 1;
  std::string gad_support;
  std::string gad_pmf;
  gad->add_option("--graph", gad_graph, "Graph file")->required();
  gad->add_option("--ell", gad_ell, "Number of blocks minus one")->capture_default_str();
  gad->add_option("--support", gad_support, "PartialFn text output (default stdout)");
  gad->add_option("--pmf", gad_pmf, "Pmf JSON output (omitted if not given)");

  // minimize
  auto* mini = app.add_subcommand("minimize", "Exact minimum decision tree size of a partial function");
  std::string mini_in;
  std::string mini_tree;
  mini->add_option("--input", mini_in, "PartialFn text file")->required();
  mini->add_option("--tree-out", mini_tree, "Write the witness tree JSON here");

  // pareto
  auto* par = app.add_subcommand("pareto", "Size/error frontier of a partial function under a pmf");
  std::string par_in;
  std::string par_pmf;
  par->add_option("--input", par_in, "PartialFn text file")->required();
  par->add_option("--pmf", par_pmf, "Pmf JSON file (default uniform over the domain)");

  // verify
  auto* ver = app.add_subcommand("verify", "Run a randomized verification suite; one JSON report per line");
  std::string suite = "all";
  std::size_t trials = 100;
  std::uint64_t ver_seed = 0;
  std::string suite_help = "One of:";
  for (const auto s : suite_names()) suite_help += " " + std::string(s);
  ver->add_option("--suite", suite, suite_help)->capture_default_str();
  ver->add_option("--trials", trials, "Random cases per suite")->capture_default_str();
  ver->add_option("--seed", ver_seed, "Seed")->capture_default_str();

  // reduce
  auto* red = app.add_subcommand("reduce", "Decide Vertex Cover through a DT-Learn run; prints YES or NO");
  std::string red_graph;
  std::size_t red_k = 1;
  std::string red_mode = "plain";
  std::string red_learner = "oracle";
  std::size_t red_r = 2;
  std::string red_delta = "1/10";
  std::string red_delta_prime = "1";
  std::string red_amp;
  std::string red_eps = "0";
  std::uint64_t red_seed = 0;
  std::string red_transcript;
  red->add_option("--graph", red_graph, "Graph file")->required();
  red->add_option("--k", red_k, "Cover size")->required();
  red->add_option("--mode", red_mode, "plain or xor")->capture_default_str();
  red->add_option("--learner", red_learner, "oracle or greedy")->capture_default_str();
  red->add_option("--r", red_r, "XOR copies (xor mode)")->capture_default_str();
  red->add_option("--delta", red_delta, "Size slack delta (plain mode)")->capture_default_str();
  red->add_option("--delta-prime", red_delta_prime, "Gap delta'")->capture_default_str();
  red->add_option("--amplification", red_amp, "Size factor A (xor mode; default (1+delta)^r)");
  red->add_option("--eps", red_eps, "Error budget")->capture_default_str();
  red->add_option("--seed", red_seed, "Seed")->capture_default_str();
  red->add_option("--transcript", red_transcript, "Write the run transcript JSON here");

  // emit-instance
  auto* emit = app.add_subcommand("emit-instance", "Write a DT-Dataset-Min instance from stacked cover trees");
  std::string emit_graph;
  std::size_t emit_ell = 1;
  std::size_t emit_r = 1;
  std::string emit_eps = "0";
  std::optional<std::size_t> emit_s;
  std::optional<std::size_t> emit_s_prime;
  std::string emit_out;
  emit->add_option("--graph", emit_graph, "Graph file")->required();
  emit->add_option("--ell", emit_ell, "Gadget ell")->capture_default_str();
  emit->add_option("--r", emit_r, "Stacked copies")->capture_default_str();
  emit->add_option("--eps", emit_eps, "Error budget")->capture_default_str();
  emit->add_option("--s", emit_s, "Promised size (default: instance tree size)");
  emit->add_option("--s-prime", emit_s_prime, "Allowed size (default: s)");
  emit->add_option("--out", emit_out, "Output path (default stdout)");

  // check-instance
  auto* check = app.add_subcommand("check-instance", "Check a tree against an instance; exit 1 if it does not pass");
  std::string check_instance;
  std::string check_tree;
  check->add_option("--instance", check_instance, "Instance JSON file")->required();
  check->add_option("--tree", check_tree, "Tree JSON file")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Run the acceptance criteria and print their table");
  std::uint64_t bench_seed = 0;
  std::string bench_format = "tsv";
  bench->add_option("--seed", bench_seed, "Seed")->capture_default_str();
  bench->add_option("--format", bench_format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();

  app.footer("Environment: DTLAB_CAP_POINTS overrides the oracle's domain point cap.\n"
             "Exit codes: 0 ok, 1 failed verification, 2 usage or cap error.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      const auto k = parse_graph_kind(kind);
      if (!k) throw Error(ErrorCode::InvalidArgument, "unknown graph kind: " + kind);
      const auto g = gen_graph(*k, gen_n, gen_seed, degree);
      write_to(gen_out, [&](std::ostream& out) { write_graph(out, g); });
      return kExitOk;
    }
    if (*gad) {
      const Gadget gadget(load_graph(gad_graph), gad_ell);
      const auto f = gadget.hard_support();
      write_to(gad_support, [&](std::ostream& out) { write_partial_fn(out, f); });
      if (!gad_pmf.empty()) {
        const auto pmf = canonical_hard_pmf(f).pmf;
        write_to(gad_pmf, [&](std::ostream& out) { out << pmf_to_json(pmf).dump() << '\n'; });
      }
      return kExitOk;
    }
    if (*mini) {
      const auto f = load_fn(mini_in);
      DtOracle oracle(with_env_cap({}));
      const auto res = oracle.minimize(f);
      std::cout << "{\"dtsize\": " << res.size << "}\n";
      if (!mini_tree.empty()) {
        write_to(mini_tree, [&](std::ostream& out) { out << tree_to_json(res.tree).dump() << '\n'; });
      }
      return kExitOk;
    }
    if (*par) {
      const auto f = load_fn(par_in);
      const Pmf pmf = par_pmf.empty() ? uniform_pmf(f) : pmf_from_json(load_json(par_pmf));
      DtOracle oracle(with_env_cap({}));
      Json pts = Json::array();
      const auto curve = oracle.pareto(f, pmf);
      for (const auto& p : curve.points()) pts.push_back({p.size, to_string(p.error)});
      std::cout << pts.dump() << '\n';
      return kExitOk;
    }
    if (*ver) {
      bool failed = false;
      for (const auto& rep : run_suite(suite, trials, ver_seed)) {
        failed = failed || rep.failed();
        std::cout << report_to_json(rep).dump() << '\n';
      }
      return failed ? kExitFailed : kExitOk;
    }
    if (*red) {
      const auto g = load_graph(red_graph);
      const auto mode = parse_reduction_mode(red_mode);
      const auto learner = parse_learner_kind(red_learner);
      if (!mode) throw Error(ErrorCode::InvalidArgument, "--mode must be plain or xor");
      if (!learner) throw Error(ErrorCode::InvalidArgument, "--learner must be oracle or greedy");
      const auto delta = rational_arg(red_delta, "--delta");
      const auto delta_prime = rational_arg(red_delta_prime, "--delta-prime");
      const auto eps = rational_arg(red_eps, "--eps");
      VcRunOptions options;
      options.mode = *mode;
      options.learner = *learner;
      options.seed = red_seed;
      options.caps = with_env_cap(options.caps);
      VcTranscript tr;
      if (g.max_degree() * red_k < g.m()) {
        // The degree pre-check answers before any parameters are needed.
        tr = decide_vc(g, red_k, ReductionParams{}, options);
      } else if (*mode == ReductionMode::Plain) {
        tr = decide_vc(g, red_k, choose_params_kst(g, red_k, delta, delta_prime, eps), options);
      } else {
        const Rational amp = red_amp.empty() ? pow(1 + delta, static_cast<unsigned>(red_r))
                                             : rational_arg(red_amp, "--amplification");
        tr = decide_vc(g, red_k, choose_params_xor(g, red_k, red_r, amp, delta_prime, eps), options);
      }
      std::cout << (tr.yes ? "YES" : "NO") << '\n';
      if (!red_transcript.empty()) {
        write_to(red_transcript, [&](std::ostream& out) { out << transcript_to_json(tr).dump(2) << '\n'; });
      }
      return kExitOk;
    }
    if (*emit) {
      const auto inst = emit_dataset_min(load_graph(emit_graph), emit_ell, emit_r, rational_arg(emit_eps, "--eps"),
                                         emit_s, emit_s_prime);
      write_to(emit_out, [&](std::ostream& out) { out << instance_to_json(inst).dump() << '\n'; });
      return kExitOk;
    }
    if (*check) {
      const auto inst = instance_from_json(load_json(check_instance));
      const auto tree = tree_from_json(load_json(check_tree), inst.domain.width());
      const auto v = check_dataset_min(inst, tree);
      std::cout << Json{{"size", v.size}, {"agreement", to_string(v.agreement)}, {"passes", v.passes}}.dump() << '\n';
      return v.passes ? kExitOk : kExitFailed;
    }
    if (*bench) {
      print_bench(std::cout, bench_seed, bench_format);
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
