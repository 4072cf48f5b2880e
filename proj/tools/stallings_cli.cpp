#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stallings/completion.hpp"
#include "stallings/experiment.hpp"
#include "stallings/io.hpp"
#include "stallings/lifts.hpp"
#include "stallings/recognition.hpp"
#include "stallings/separability.hpp"

using namespace stallings;
using io::Json;

namespace {

struct Common {
  std::string out;
  std::string csv;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
  std::string command;

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("STALLINGS_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput, "STALLINGS_SEED is not an integer");
      }
    }
    return 0;
  }
};

void emit(const Common& c, const Json& j) {
  std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + c.out);
  f << text;
}

void emit_csv(const Common& c, const std::string& text) {
  if (c.csv.empty()) return;
  std::ofstream f(c.csv);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + c.csv);
  f << text;
}

std::vector<Word> words_of(const std::vector<std::string>& texts, int rank) {
  std::vector<Word> out;
  for (const auto& t : texts) out.push_back(parse_word(t, rank));
  return out;
}

int rank_of(const std::vector<std::string>& texts) {
  int r = 1;
  for (const auto& t : texts) r = std::max(r, io::rank_needed(t));
  return r;
}

std::string csv_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stallings graphs, random covers and separability certificates"};
  app.require_subcommand(1);
  Common common;
  for (int i = 0; i < argc; ++i) common.command += (i ? " " : "") + std::string(argv[i]);

  auto add_common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--out", common.out, "Write JSON here instead of stdout");
    sub->add_option("--csv", common.csv, "Also write a CSV table here");
    sub->add_option("--threads", common.threads, "Worker threads (0: all cores)");
    if (seeded) sub->add_option("--seed", common.seed, "Seed (default: $STALLINGS_SEED, else 0)");
  };

  int rank = 0;
  std::vector<std::string> words;
  auto* fold_cmd = app.add_subcommand("fold", "Stallings graph of a subgroup");
  fold_cmd->add_option("--rank", rank, "Rank of the free group")->required();
  fold_cmd->add_option("--words", words, "Generators")->delimiter(',');
  add_common(fold_cmd, false);

  std::string graph_src;
  bool based = false;
  auto* core_cmd = app.add_subcommand("core", "Core of a graph");
  core_cmd->add_option("--graph", graph_src, "Graph source")->required();
  core_cmd->add_flag("--based", based, "Keep the basepoint and its tail");
  add_common(core_cmd, false);

  std::string a_src, b_src;
  std::size_t max_vertices = kPullbackGuard;
  auto* pullback_cmd = app.add_subcommand("pullback", "Based pullback of two graphs");
  pullback_cmd->add_option("--a", a_src, "First based graph")->required();
  pullback_cmd->add_option("--b", b_src, "Second based graph")->required();
  pullback_cmd->add_option("--max-vertices", max_vertices, "Vertex guard");
  add_common(pullback_cmd, false);

  std::vector<std::size_t> ns;
  std::size_t budget = kDefaultBudget;
  auto* complete_cmd = app.add_subcommand("complete", "Random completion and its classification");
  complete_cmd->add_option("--graph", graph_src, "Condition")->required();
  complete_cmd->add_option("--n", ns, "Degree")->required()->expected(1);
  complete_cmd->add_option("--rank", rank, "Rank (default: that of the graph)");
  complete_cmd->add_option("--budget", budget, "Random words tried by the q-cycle search");
  add_common(complete_cmd, true);

  std::uint64_t trials = 0;
  std::string condition_src = "empty";
  auto* dixon_cmd = app.add_subcommand("dixon", "Image classes of random completions");
  dixon_cmd->add_option("--rank", rank, "Rank")->required();
  dixon_cmd->add_option("--condition", condition_src, "Condition graph source");
  dixon_cmd->add_option("--n", ns, "Degree, or a comma separated sweep")->required()->delimiter(',');
  dixon_cmd->add_option("--trials", trials, "Completions per degree")->required();
  dixon_cmd->add_option("--budget", budget, "Random words tried by the q-cycle search");
  add_common(dixon_cmd, true);

  std::string target_src;
  bool exact = false;
  auto* lifts_cmd = app.add_subcommand("lifts", "Lift statistics next to the leading-order prediction");
  lifts_cmd->add_option("--condition", condition_src, "Condition graph source")->required();
  lifts_cmd->add_option("--target", target_src, "Target graph source")->required();
  lifts_cmd->add_flag("--based", based, "Count fixed points of the based target");
  lifts_cmd->add_option("--n", ns, "Degree, or a comma separated sweep")->required()->delimiter(',');
  lifts_cmd->add_option("--trials", trials, "Monte Carlo trials");
  lifts_cmd->add_flag("--exact", exact, "Enumerate every completion instead of sampling");
  lifts_cmd->add_option("--rank", rank, "Rank (default: smallest that fits)");
  add_common(lifts_cmd, true);

  std::string g_src, h_src;
  auto* quotients_cmd = app.add_subcommand("quotients", "Quotients of g ⊔ h with relative Euler characteristic");
  quotients_cmd->set_help_flag("--help", "Print this help message and exit");
  quotients_cmd->add_option("--g", g_src, "Condition graph source")->required();
  quotients_cmd->add_option("--h", h_src, "Target graph source")->required();
  quotients_cmd->add_option("--rank", rank, "Rank (default: smallest that fits)");
  add_common(quotients_cmd, false);

  std::vector<std::string> subgroup, elements, schedule_text;
  std::vector<std::size_t> schedule;
  bool symmetric_ok = false;
  std::uint64_t search_trials = 32;
  std::size_t max_multiplicity = 64;
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--n-schedule", schedule, "Degrees to try, in order")->delimiter(',');
    sub->add_option("--trials", search_trials, "Completions per degree and round");
    sub->add_option("--budget", budget, "Random words tried by the q-cycle search");
    sub->add_flag("--symmetric-ok", symmetric_ok, "Accept symmetric images too");
  };
  auto* member_cmd = app.add_subcommand("sep-member", "Finite quotient separating elements from a subgroup");
  member_cmd->add_option("--rank", rank, "Rank")->required();
  member_cmd->add_option("--subgroup", subgroup, "Subgroup generators")->delimiter(',');
  member_cmd->add_option("--elements", elements, "Elements outside the subgroup")->required()->delimiter(',');
  add_search(member_cmd);
  add_common(member_cmd, true);

  std::string subgroups_text;
  std::vector<std::size_t> primes;
  auto* conj_cmd = app.add_subcommand("sep-conj", "Finite quotient preserving non-conjugacy-into");
  conj_cmd->add_option("--rank", rank, "Rank")->required();
  conj_cmd->add_option("--subgroups", subgroups_text, "Generator lists, ';' between subgroups")->required();
  conj_cmd->add_option("--primes", primes, "One prime per subgroup, in search order")->delimiter(',');
  conj_cmd->add_option("--max-multiplicity", max_multiplicity, "Cap on planted copies");
  add_search(conj_cmd);
  add_common(conj_cmd, true);

  std::string certificate_path;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a certificate from its tuple alone");
  verify_cmd->add_option("--certificate", certificate_path, "Certificate JSON")->required();
  add_common(verify_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    Json j;
    j["error"] = "InvalidInput";
    j["message"] = e.what();
    j["exit_code"] = 3;
    std::cout << j.dump(2) << "\n";
    return 3;
  }

  try {
    if (fold_cmd->parsed()) {
      emit(common, io::to_json(stallings_graph(words_of(words, rank), rank)));
    } else if (core_cmd->parsed()) {
      io::GraphDocument doc = io::graph_from_source(graph_src);
      if (based) {
        if (!doc.basepoint) throw Error(ErrorCode::InvalidInput, "graph has no basepoint");
        emit(common, io::to_json(based_core({doc.graph, *doc.basepoint})));
      } else {
        emit(common, io::to_json(core(doc.graph)));
      }
    } else if (pullback_cmd->parsed()) {
      io::GraphDocument a = io::graph_from_source(a_src), b = io::graph_from_source(b_src);
      int r = std::max(a.graph.rank(), b.graph.rank());
      if (!a.basepoint || !b.basepoint)
        throw Error(ErrorCode::InvalidInput, "pullback needs two based graphs");
      emit(common, io::to_json(pullback({io::with_rank(a.graph, r), *a.basepoint},
                                        {io::with_rank(b.graph, r), *b.basepoint}, max_vertices)));
    } else if (complete_cmd->parsed()) {
      io::GraphDocument doc = io::graph_from_source(graph_src, rank);
      const std::size_t n = ns.front();
      const std::uint64_t seed = common.resolved_seed();
      check_completion_input(doc.graph, n);
      Rng rng = Rng::for_trial(seed, 0);
      PermTuple t = random_completion_tuple(Precover(doc.graph), n, rng);
      Classification c = classify(t, budget, rng);
      std::vector<VertexId> order = completion_vertex_order(doc.graph, n);
      Json j;
      j["command"] = common.command;
      j["seed"] = seed;
      j["cover"] = io::to_json(cover_from_tuple(t, order));
      j["vertex_order"] = order;
      j["tuple"] = io::to_json(t);
      j["classification"] = io::to_json(c);
      emit(common, j);
    } else if (dixon_cmd->parsed()) {
      LabeledGraph cond = io::graph_from_source(condition_src, rank).graph;
      if (cond.rank() != rank) throw Error(ErrorCode::InvalidInput, "condition rank differs from --rank");
      const std::uint64_t seed = common.resolved_seed();
      std::ostringstream csv;
      csv << "n,trials,verdict,count,frequency,wilson_lo,wilson_hi\n";
      Json runs = Json::array();
      for (std::size_t n : ns) {
        DixonReport r = run_dixon(cond, n, trials, seed, common.threads, budget);
        runs.push_back(to_json(r, common.command));
        for (std::size_t i = 0; i < kVerdictCount; ++i) {
          auto v = static_cast<Verdict>(i);
          Interval ci = wilson_interval(r.count(v), r.trials);
          csv << n << ',' << trials << ',' << to_string(v) << ',' << r.count(v) << ','
              << csv_number(r.frequency(v)) << ',' << csv_number(ci.lo) << ',' << csv_number(ci.hi)
              << '\n';
        }
      }
      if (runs.size() == 1) {
        emit(common, runs[0]);
      } else {
        Json j;
        j["command"] = common.command;
        j["seed"] = seed;
        j["runs"] = std::move(runs);
        emit(common, j);
      }
      emit_csv(common, csv.str());
    } else if (lifts_cmd->parsed()) {
      io::GraphDocument cond = io::graph_from_source(condition_src);
      io::GraphDocument target = io::graph_from_source(target_src);
      int r = std::max({rank, cond.graph.rank(), target.graph.rank()});
      LabeledGraph g = io::with_rank(cond.graph, r);
      LiftTarget lt{io::with_rank(target.graph, r), std::nullopt};
      if (based) {
        if (lt.h.empty()) throw Error(ErrorCode::InvalidInput, "empty target");
        lt.basepoint = target.basepoint ? *target.basepoint : lt.h.vertices().front();
      }
      if (!exact && trials == 0) throw Error(ErrorCode::InvalidInput, "--trials is required without --exact");
      const std::uint64_t seed = common.resolved_seed();
      Json prediction;
      if (based) {
        prediction = nullptr;
      } else {
        try {
          RelativeRank rr = relative_rank(g, lt.h);
          prediction["relative_rank"] = rr.r;
          prediction["critical_graphs"] = rr.critical.size();
          prediction["mean_leading"] = io::to_json(expected_lifts_leading(g, lt.h));
          prediction["variance_leading"] = io::to_json(variance_leading(g, lt.h));
        } catch (const Error& e) {
          if (exit_status(e.code()) != 4) throw;
          prediction["unavailable"] = e.what();
        }
      }
      Json runs = Json::array();
      std::string csv = csv_header() + "\n";
      for (std::size_t n : ns) {
        LiftStats s = exact ? exact_lift_stats(g, lt, n)
                            : monte_carlo_lift_stats(g, lt, n, trials, seed, common.threads);
        runs.push_back(io::to_json(s));
        csv += csv_row(s) + "\n";
      }
      Json j;
      j["command"] = common.command;
      j["seed"] = seed;
      j["mode"] = exact ? "exact" : "monte_carlo";
      j["statistic"] = based ? "fixed_points" : "lifts";
      j["runs"] = std::move(runs);
      j["prediction"] = std::move(prediction);
      emit(common, j);
      emit_csv(common, csv);
    } else if (quotients_cmd->parsed()) {
      io::GraphDocument gd = io::graph_from_source(g_src), hd = io::graph_from_source(h_src);
      int r = std::max({rank, gd.graph.rank(), hd.graph.rank()});
      LabeledGraph g = io::with_rank(gd.graph, r), h = io::with_rank(hd.graph, r);
      std::vector<QuotientDescriptor> qs = enumerate_quotients(g, h);
      long best = 0;
      bool any = false;
      for (const auto& q : qs)
        if (q.g_injective && (!any || q.chi_rel > best)) {
          best = q.chi_rel;
          any = true;
        }
      Json list = Json::array();
      std::string csv = "index,vertices,edges,chi_rel,g_injective,critical\n";
      for (std::size_t i = 0; i < qs.size(); ++i) {
        bool critical = any && qs[i].g_injective && qs[i].chi_rel == best;
        list.push_back(io::to_json(qs[i], critical));
        csv += std::to_string(i) + ',' + std::to_string(qs[i].quotient.num_vertices()) + ',' +
               std::to_string(qs[i].quotient.num_edges()) + ',' + std::to_string(qs[i].chi_rel) +
               ',' + (qs[i].g_injective ? "1" : "0") + ',' + (critical ? "1" : "0") + '\n';
      }
      Json j;
      j["count"] = qs.size();
      j["relative_rank"] = any ? Json(best) : Json(nullptr);
      j["quotients"] = std::move(list);
      emit(common, j);
      emit_csv(common, csv);
    } else if (member_cmd->parsed() || conj_cmd->parsed()) {
      SearchOptions opt;
      opt.n_schedule = schedule;
      opt.trials = search_trials;
      opt.seed = common.resolved_seed();
      opt.budget = budget;
      opt.symmetric_ok = symmetric_ok;
      opt.max_multiplicity = max_multiplicity;
      SeparationCertificate c;
      if (member_cmd->parsed()) {
        SubgroupSpec h = SubgroupSpec::from_words(words_of(subgroup, rank), rank);
        std::vector<Word> es = words_of(elements, rank);
        c = separate_membership(h, es, opt);
      } else {
        std::vector<SubgroupSpec> hs;
        std::stringstream ss(subgroups_text);
        for (std::string part; std::getline(ss, part, ';');) {
          std::vector<std::string> gens;
          std::stringstream ps(part);
          for (std::string w; std::getline(ps, w, ',');)
            if (!w.empty()) gens.push_back(w);
          if (gens.empty()) continue;
          hs.push_back(SubgroupSpec::from_words(words_of(gens, rank), rank));
        }
        c = separate_conjugacy(hs, primes, opt);
      }
      Json j = io::to_json(c);
      j["verified"] = verify_certificate(c);
      emit(common, j);
    } else if (verify_cmd->parsed()) {
      SeparationCertificate c = io::certificate_from_json(io::read_json_file(certificate_path));
      Json j;
      j["verified"] = verify_certificate(c);
      emit(common, j);
      return j["verified"].get<bool>() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cout << io::error_json(e).dump(2) << "\n";
    return exit_status(e.code());
  }
  return 0;
}
