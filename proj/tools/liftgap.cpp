// Command-line front end. Every JSON result embeds a run manifest; errors go
// to stderr as one JSON line (exit 1 for domain errors, 2 for usage errors).

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liftgap/caps.hpp"
#include "liftgap/error.hpp"
#include "liftgap/io.hpp"
#include "liftgap/kernels.hpp"
#include "liftgap/restriction.hpp"

using namespace liftgap;
using io::Json;

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

class Run {
 public:
  explicit Run(std::string command) { manifest_.command = std::move(command); }

  std::string read(const std::string& path) {
    std::string data;
    if (path == "-") {
      data.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw MalformedInput("cannot open input file " + path);
      data.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    manifest_.inputs.push_back({path == "-" ? "<stdin>" : path, sha256_hex(data)});
    return data;
  }

  Instance instance(const std::string& path) {
    const std::string text = read(path);
    try {
      return parse_instance(text);
    } catch (const ParseError& e) {
      throw ParseError(std::string(path == "-" ? "<stdin>" : path) + ": " + e.what());
    }
  }

  Json json(const std::string& path) { return io::parse_json(read(path)); }

  void param(const std::string& key, Json value) { manifest_.parameters[key] = std::move(value); }
  void seed(std::uint64_t s) { manifest_.seed = s; }
  void output(const std::string& name) { manifest_.outputs.push_back(name); }

  Json manifest() const { return io::to_json(manifest_); }

  void emit(Json result) {
    if (manifest_.outputs.empty()) manifest_.outputs.push_back("<stdout>");
    result["manifest"] = manifest();
    std::cout << result.dump(2) << '\n';
  }

  void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MalformedInput("cannot write " + path.string());
    out << content;
    output(path.string());
  }

 private:
  io::RunManifest manifest_;
};

PolyhedralRelaxation relaxation(Run& run, const std::string& spec, int n) {
  run.param("relaxation", spec);
  if (spec == "metric") return metric_maxcut(n);
  if (spec.rfind("universal:", 0) == 0) {
    int d = 0;
    try {
      d = std::stoi(spec.substr(10));
    } catch (const std::exception&) {
      throw ParameterError("bad relaxation spec " + spec);
    }
    return universal(n, d);
  }
  if (spec.rfind("file:", 0) == 0) {
    auto rel = io::relaxation_from_json(run.json(spec.substr(5)));
    if (rel.n != n)
      throw ParameterError("relaxation file has n = " + std::to_string(rel.n) + ", expected " + std::to_string(n));
    return rel;
  }
  throw ParameterError("relaxation must be metric, universal:<d> or file:<path>, got " + spec);
}

Json rational_list(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

void print_error(const std::string& kind, const std::string& message, const Json& extra = nullptr) {
  Json j{{"error", kind}, {"message", message}};
  if (!extra.is_null()) j["best"] = extra;
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Sherali-Adams, slack and restriction experiments for boolean Max-CSPs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", io::kVersion);
  std::function<void()> action;

  // opt
  std::string inst_path;
  auto* opt = app.add_subcommand("opt", "Brute-force optimum and witness");
  opt->add_option("instance", inst_path, "Edge list or DIMACS CNF file ('-' for stdin)")->required();
  opt->callback([&] {
    action = [&] {
      Run run("opt");
      const auto inst = run.instance(inst_path);
      const auto r = brute_force_opt(inst);
      run.emit(Json{{"value", to_string(r.value)}, {"witness", format_assignment(inst.n, r.witness)}});
    };
  });

  // sa
  int rounds = 2;
  auto* sa = app.add_subcommand("sa", "Sherali-Adams value and optimal local expectation functional");
  sa->add_option("instance", inst_path, "Instance file")->required();
  sa->add_option("--rounds,-d", rounds, "Level d")->required();
  sa->callback([&] {
    action = [&] {
      Run run("sa");
      const auto inst = run.instance(inst_path);
      run.param("rounds", rounds);
      const auto r = sa_value(inst, rounds);
      run.emit(Json{{"value", to_string(r.value)}, {"pe", io::to_json(r.pe)}, {"check", io::to_json(check_lef(r.pe))}});
    };
  });

  // sa-edge
  int level = 1;
  auto* sae = app.add_subcommand("sa-edge", "Edge-variable Sherali-Adams value over the metric polytope");
  sae->add_option("graph", inst_path, "Edge list file")->required();
  sae->add_option("--level,-r", level, "Level r")->required();
  sae->callback([&] {
    action = [&] {
      Run run("sa-edge");
      const auto g = run.instance(inst_path);
      run.param("level", level);
      const auto r = edge_sa_value(g, level);
      run.emit(Json{{"value", to_string(r.value)},
                    {"functional", io::to_json(r.pe)},
                    {"check", io::to_json(check_edge_functional(r.pe))}});
    };
  });

  // translate
  std::string direction, functional_path, graph_path;
  auto* tr = app.add_subcommand("translate", "Translate between vertex and edge functionals");
  tr->add_option("--direction", direction, "v2e or e2v")->required()->check(CLI::IsMember({"v2e", "e2v"}));
  tr->add_option("--input", functional_path, "Functional JSON ('-' for stdin)")->required();
  tr->add_option("--graph", graph_path, "Edge list whose objective is compared");
  tr->callback([&] {
    action = [&] {
      Run run("translate");
      run.param("direction", direction);
      Json in = run.json(functional_path);
      // Accept the full output of `sa` / `sa-edge` as well as a bare functional.
      for (const char* key : {"pe", "functional"})
        if (in.is_object() && in.contains(key)) in = Json(in[key]);
      std::optional<std::vector<std::pair<int, int>>> edges;
      if (!graph_path.empty()) edges = edges_of(run.instance(graph_path));
      Json out;
      if (direction == "v2e") {
        const auto pe = io::pseudo_expectation_from_json(in);
        const auto ef = vertex_to_edge(pe);
        out = Json{{"functional", io::to_json(ef)}, {"check", io::to_json(check_edge_functional(ef))}};
        if (edges) {
          const auto a = vertex_objective(pe, *edges), b = edge_objective(ef, *edges);
          out["objective"] = Json{{"vertex", to_string(a)}, {"edge", to_string(b)}, {"equal", a == b}};
        }
      } else {
        const auto ef = io::edge_functional_from_json(in);
        const auto pe = edge_to_vertex(ef);
        out = Json{{"functional", io::to_json(pe)}, {"check", io::to_json(check_lef(pe))}};
        if (ef.r >= 1) {
          Json res = Json::array();
          for (const auto& [p, v] : triple_residuals(ef))
            res.push_back(Json{{"pair", {p.first + 1, p.second + 1}}, {"residual", to_string(v)}});
          out["triple_residuals"] = res;
        }
        if (edges && pe.d >= 2) {
          const auto a = edge_objective(ef, *edges), b = vertex_objective(pe, *edges);
          out["objective"] = Json{{"edge", to_string(a)}, {"vertex", to_string(b)}, {"equal", a == b}};
        }
      }
      run.emit(out);
    };
  });

  // lp
  std::string rel_spec = "metric";
  auto* lp = app.add_subcommand("lp", "LP relaxation value");
  lp->add_option("instance", inst_path, "Instance file")->required();
  lp->add_option("--relaxation", rel_spec, "metric, universal:<d> or file:<path>");
  lp->callback([&] {
    action = [&] {
      Run run("lp");
      const auto inst = run.instance(inst_path);
      const auto rel = relaxation(run, rel_spec, inst.n);
      run.emit(Json{{"value", to_string(lp_value(rel, inst))}, {"inequalities", rel.size()}, {"dimension", rel.dim()}});
    };
  });

  // slack
  int slack_n = 3;
  std::string out_format = "json";
  auto* sl = app.add_subcommand("slack", "Slack function tables of a relaxation");
  sl->add_option("--relaxation", rel_spec, "metric, universal:<d> or file:<path>");
  sl->add_option("--n", slack_n, "Variable count")->required();
  sl->add_option("--out", out_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sl->callback([&] {
    action = [&] {
      Run run("slack");
      run.param("n", slack_n);
      const auto rel = relaxation(run, rel_spec, slack_n);
      const auto q = slack_functions(rel);
      if (out_format == "csv") {
        RationalMatrix m;
        for (const auto& f : q) m.push_back(f.values());
        std::vector<Mask> cols;
        for (Mask x = 0; x < (Mask{1} << slack_n); ++x) cols.push_back(x);
        std::cout << io::matrix_csv(m, cols);
        return;
      }
      Json list = Json::array();
      for (const auto& f : q) list.push_back(io::to_json(f));
      run.emit(Json{{"relaxation", rel.name}, {"slacks", list}});
    };
  });

  // farkas
  std::string c_text;
  auto* fk = app.add_subcommand("farkas", "Decompose c - I into slack functions or certify that none exists");
  fk->add_option("instance", inst_path, "Instance file")->required();
  fk->add_option("--c", c_text, "Threshold p/q")->required();
  fk->add_option("--relaxation", rel_spec, "metric, universal:<d> or file:<path>");
  fk->callback([&] {
    action = [&] {
      Run run("farkas");
      const auto inst = run.instance(inst_path);
      const Rational c = parse_rational(c_text);
      run.param("c", to_string(c));
      const auto rel = relaxation(run, rel_spec, inst.n);
      const auto slacks = slack_functions(rel);
      const auto dec = farkas_decompose(c, inst, slacks);
      Json out{{"feasible", dec.feasible}, {"c", to_string(c)}};
      if (dec.feasible) {
        out["lambda0"] = to_string(dec.lambda0);
        out["lambda"] = rational_list(dec.lambda);
        out["verify"] = verify_decomposition(c, inst, dec.lambda0, dec.lambda, slacks);
      } else {
        out["certificate"] = io::to_json(*dec.certificate);
        out["verify"] = verify_infeasibility_certificate(c, inst, *dec.certificate, slacks);
      }
      run.emit(out);
    };
  });

  // restrict
  std::string family_path;
  int rn = 0, rm = 0, rd = 2, rt = -1;
  std::uint64_t seed = 1;
  std::size_t max_trials = 50;
  auto* rs = app.add_subcommand("restrict", "Search for a good random restriction of a density family");
  rs->add_option("--family", family_path, "Densities JSON")->required();
  rs->add_option("--n", rn, "Variable count")->required();
  rs->add_option("--m", rm, "Restriction size")->required();
  rs->add_option("--d", rd, "Degree bound")->required();
  rs->add_option("--t", rt, "Entropy budget (default ceil(d log2 n))");
  rs->add_option("--seed", seed, "Master seed")->required();
  rs->add_option("--max-trials", max_trials, "Trial limit");
  rs->callback([&] {
    action = [&] {
      Run run("restrict");
      const auto family = io::densities_from_json(run.json(family_path));
      const int t = rt >= 0 ? rt : entropy_budget(rn, rd);
      run.param("n", rn);
      run.param("m", rm);
      run.param("d", rd);
      run.param("t", t);
      run.param("max_trials", max_trials);
      run.seed(seed);
      run.emit(io::to_json(find_good_restriction(family, rn, rm, rd, t, max_trials, seed)));
    };
  });

  // main-ineq
  int mn = 12;
  std::string inst0_path;
  auto* mi = app.add_subcommand("main-ineq", "Planting pipeline with the main inequality asserted exactly");
  mi->add_option("--relaxation", rel_spec, "metric, universal:<d> or file:<path>");
  mi->add_option("--n", mn, "Variable count of the relaxation")->required();
  mi->add_option("--inst0", inst0_path, "Instance to plant")->required();
  mi->add_option("--d", rd, "Level d")->required();
  mi->add_option("--seed", seed, "Master seed")->required();
  mi->add_option("--max-trials", max_trials, "Restriction trial limit");
  mi->callback([&] {
    action = [&] {
      Run run("main-ineq");
      const auto inst0 = run.instance(inst0_path);
      run.param("n", mn);
      run.param("d", rd);
      run.param("max_trials", max_trials);
      run.seed(seed);
      const auto rel = relaxation(run, rel_spec, mn);
      run.emit(io::to_json(main_inequality_experiment(rel, inst0, rd, seed, max_trials)));
    };
  });

  // protocol
  std::vector<std::string> row_paths;
  int full_n = 0, samples = 1;
  std::string s_text, out_dir;
  auto* pr = app.add_subcommand("protocol", "Slack matrix, protocol matrix and its nonnegative factorization");
  pr->add_option("--rows", row_paths, "Max Cut instance files");
  pr->add_option("--full", full_n, "Use every graph on this many vertices with opt <= s");
  pr->add_option("--c", c_text, "c as p/q")->required();
  pr->add_option("--s", s_text, "s as p/q")->required();
  pr->add_option("--T", samples, "Number of sampled edges")->required();
  pr->add_option("--out-dir", out_dir, "Directory for the CSV files");
  pr->callback([&] {
    action = [&] {
      Run run("protocol");
      const Rational c = parse_rational(c_text), s = parse_rational(s_text);
      run.param("c", to_string(c));
      run.param("s", to_string(s));
      run.param("T", samples);
      SlackMatrix m;
      if (full_n > 0) {
        run.param("full", full_n);
        m = full_maxcut_slack_matrix(full_n, c, s);
      } else {
        if (row_paths.empty()) throw ParameterError("give --rows or --full");
        std::vector<Instance> rows;
        int n = 0;
        for (const auto& p : row_paths) {
          rows.push_back(run.instance(p));
          n = std::max(n, rows.back().n);
        }
        for (auto& r : rows) r.n = n;
        std::vector<Mask> cols;
        for (Mask x = 0; x < (Mask{1} << n); ++x) cols.push_back(x);
        m = build_slack_matrix(rows, cols, c, s);
      }
      const auto mp = protocol_matrix(m, samples);
      Json out{{"rows", m.rows.size()}, {"cols", m.cols.size()}};
      bool bounded = true;
      for (std::size_t i = 0; i < m.rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols.size(); ++j) {
          const Rational diff = mp[i][j] - m.entries[i][j];
          if (diff < 0 || diff > protocol_tail(evaluate(m.rows[i], m.cols[j]), c, samples)) bounded = false;
        }
      out["error_within_tail"] = bounded;
      std::optional<ProtocolFactorization> f;
      try {
        f = protocol_factorization(m, samples);
      } catch (const SizeCapExceeded& e) {
        out["factorization_skipped"] = e.what();
      }
      if (f) {
        out["message_space"] = f->messages.size();
        out["product_matches"] = multiply(f->u, f->v) == mp;
      }
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path dir(out_dir);
        run.write_file(dir / "M.csv", io::matrix_csv(m.entries, m.cols));
        run.write_file(dir / "Mprime.csv", io::matrix_csv(mp, m.cols));
        if (f) {
          std::vector<std::string> msg_labels;
          for (const auto& msg : f->messages) {
            std::string l;
            for (int id : msg)
              l += (l.empty() ? "" : " ") + std::to_string(f->edges[id].first + 1) + "-" +
                   std::to_string(f->edges[id].second + 1);
            msg_labels.push_back(l);
          }
          std::vector<std::string> row_labels, col_labels;
          for (std::size_t i = 0; i < m.rows.size(); ++i) row_labels.push_back(std::to_string(i));
          for (Mask x : m.cols) col_labels.push_back(std::to_string(x));
          run.write_file(dir / "U.csv", io::matrix_csv(f->u, msg_labels, row_labels));
          run.write_file(dir / "V.csv", io::matrix_csv(f->v, col_labels, msg_labels));
          Json fm{{"T", samples}, {"messageSpace", f->messages.size()}, {"rows", m.rows.size()}, {"cols", m.cols.size()}};
          run.write_file(dir / "factorization.json", fm.dump(2) + "\n");
        }
      }
      run.emit(out);
    };
  });

  // symmetric-check
  int sd = 2;
  auto* sc = app.add_subcommand("symmetric-check", "Antidiagonal restriction and the symmetric-LP contradiction");
  sc->add_option("--inst0", inst0_path, "Instance on m variables")->required();
  sc->add_option("--c", c_text, "c as p/q")->required();
  sc->add_option("--d", sd, "Level d")->required();
  sc->add_option("--relaxation", rel_spec, "Sym-closed relaxation on 2m variables (default universal:<d>)");
  sc->callback([&] {
    action = [&] {
      Run run("symmetric-check");
      const auto inst0 = run.instance(inst0_path);
      const Rational c = parse_rational(c_text);
      run.param("c", to_string(c));
      run.param("d", sd);
      const std::string spec = sc->count("--relaxation") ? rel_spec : "universal:" + std::to_string(sd);
      const auto rel = relaxation(run, spec, 2 * inst0.n);
      run.emit(io::to_json(symmetric_contradiction_check(inst0, rel, c, sd)));
    };
  });

  // gen
  auto* gen = app.add_subcommand("gen", "Generate instance files");
  gen->require_subcommand(1);
  int gn = 3, gm = 1;
  std::string gp = "1/2";
  auto emit_instance = [](const Instance& inst) { std::cout << write_instance(inst); };
  auto* gc = gen->add_subcommand("cycle", "Cycle C_n");
  gc->add_option("--n", gn, "Vertices")->required();
  gc->callback([&] { action = [&] { emit_instance(cycle_graph(gn)); }; });
  auto* gk = gen->add_subcommand("complete", "Complete graph K_n");
  gk->add_option("--n", gn, "Vertices")->required();
  gk->callback([&] { action = [&] { emit_instance(complete_graph(gn)); }; });
  auto* gg = gen->add_subcommand("gnp", "Random graph G(n, p)");
  gg->add_option("--n", gn, "Vertices")->required();
  gg->add_option("--p", gp, "Edge probability p/q");
  gg->add_option("--seed", seed, "Seed")->required();
  gg->callback([&] { action = [&] { emit_instance(random_graph(gn, parse_rational(gp), seed)); }; });
  auto* g3 = gen->add_subcommand("3sat", "Random 3-SAT");
  g3->add_option("--n", gn, "Variables")->required();
  g3->add_option("--m", gm, "Clauses")->required();
  g3->add_option("--seed", seed, "Seed")->required();
  g3->callback([&] { action = [&] { emit_instance(random_3sat(gn, gm, seed)); }; });

  // kernels
  auto* kn = app.add_subcommand("kernels", "Report the kernel variant in use");
  kn->callback([&] {
    action = [&] {
      std::cout << Json{{"detected", kernels::to_string(kernels::detected_isa())},
                        {"active", kernels::to_string(kernels::active_isa())}}
                       .dump(2)
                << '\n';
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }
  try {
    if (action) action();
  } catch (const RestrictionExhausted& e) {
    print_error(e.kind(), e.what(), io::to_json(e.best()));
    return 1;
  } catch (const Error& e) {
    print_error(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return 0;
}
