#include "cubecat/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cubecat/corpus.hpp"
#include "cubecat/equivalence.hpp"
#include "cubecat/pipeline.hpp"
#include "cubecat/relations.hpp"

namespace cubecat {

namespace {

using nlohmann::json;

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Runs fn(0..n-1) on up to `jobs` threads; results land at their own index so
// the output order never depends on scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t n, int jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        out[k] = fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<SystemKind> theories(const std::string& name, bool allow_all) {
  if (name == "all") {
    if (!allow_all) throw ValidationError("--theory all is not accepted here");
    return {SystemKind::Khovanov, SystemKind::Nested, SystemKind::Odd};
  }
  try {
    return {parse_theory(name)};
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

std::vector<CorpusEntry> inputs(const RunConfig& c, bool required) {
  if (c.pd && c.file) throw ValidationError("give exactly one of --pd and --file");
  const OrientMode mode = parse_orient_mode(c.orient);
  if (c.pd) return {{"inline", parse_pd(*c.pd, mode)}};
  if (c.file) {
    if (!std::filesystem::exists(*c.file)) throw ValidationError("no such file or directory: " + *c.file);
    auto entries = load_corpus(*c.file, mode);
    if (entries.empty()) throw ValidationError("no .pd files in " + *c.file);
    return entries;
  }
  if (required) throw ValidationError("an input is required (--pd or --file)");
  return {};
}

void check_outer_face(const RunConfig& c, const LinkDiagram& d) {
  if (c.outer_face && (*c.outer_face < 0 || *c.outer_face >= d.planar_map().face_count()))
    throw ValidationError("--outer-face " + std::to_string(*c.outer_face) + " out of range for a diagram with " +
                          std::to_string(d.planar_map().face_count()) + " faces");
}

json table_json(const HomologyTable& h) { return json::parse(homology_json(h, graded_euler_characteristic(h))); }

// Wraps per-diagram results: a single input gives the object itself.
json collect(const std::vector<CorpusEntry>& entries, std::vector<json> results) {
  if (entries.size() == 1 && entries.front().name == "inline") return std::move(results.front());
  json arr = json::array();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    results[k]["name"] = entries[k].name;
    arr.push_back(std::move(results[k]));
  }
  return json{{"results", std::move(arr)}};
}

struct Outcome {
  json doc;
  bool certified = true;
};

Outcome do_compute(const RunConfig& c, std::ostream& err) {
  const auto entries = inputs(c, true);
  const SystemKind kind = theories(c.theory, false).front();
  const Coefficients coeff = Coefficients::parse(c.coefficients);
  for (const auto& e : entries) check_outer_face(c, e.diagram);
  const int inner_jobs = entries.size() == 1 ? c.jobs : 1;
  using Item = std::pair<json, HomologyTable>;
  auto items = parallel_map<Item>(entries.size(), c.jobs, [&](std::size_t k) {
    const LinkDiagram& d = entries[k].diagram;
    const FrobeniusSystem sys = builtin_system(kind);
    const Pipeline p = build_pipeline(d, sys, c.outer_face);
    HomologyTable h = homology_table(p.complex, coeff, inner_jobs);
    h.theory = sys.name;
    h.diagram = d.serialize();
    json j = table_json(h);
    if (c.dump_cube) j["cube"] = json::parse(cube_json(p.hypercube, p.psi, p.eps));
    if (c.dump_states) j["states"] = json::parse(states_json(d, c.outer_face));
    return Item{std::move(j), std::move(h)};
  });
  std::vector<json> results;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (c.table) err << entries[k].name << "\n" << homology_pretty(items[k].second) << "\n";
    results.push_back(std::move(items[k].first));
  }
  return {collect(entries, std::move(results)), true};
}

Outcome do_euler(const RunConfig& c) {
  const auto entries = inputs(c, true);
  const auto kinds = theories(c.theory, true);
  for (const auto& e : entries) check_outer_face(c, e.diagram);
  bool all = true;
  auto results = parallel_map<json>(entries.size(), c.jobs, [&](std::size_t k) {
    const LinkDiagram& d = entries[k].diagram;
    const LaurentPoly oracle = kauffman_bracket_oracle(d);
    json j{{"diagram", d.serialize()}, {"oracle", laurent_to_string(oracle)}};
    json per = json::object();
    bool match = true;
    for (SystemKind kind : kinds) {
      const FrobeniusSystem sys = builtin_system(kind);
      const LaurentPoly chi = graded_euler_characteristic(build_pipeline(d, sys, c.outer_face).complex);
      per[sys.name] = laurent_to_string(chi);
      match = match && chi == oracle;
    }
    j["euler"] = per;
    j["match"] = match;
    return j;
  });
  for (const auto& r : results) all = all && r["match"].get<bool>();
  return {collect(entries, std::move(results)), all};
}

Outcome do_verify(const RunConfig& c) {
  const std::string& t = c.theorem;
  if (t == "2") {
    const auto entries = inputs(c, false);
    std::vector<LinkDiagram> corpus;
    for (const auto& e : entries) corpus.push_back(e.diagram);
    const SignClassification s = classify_sign_systems(corpus, c.jobs, true);
    return {s.to_json(), s.ok()};
  }
  const auto entries = inputs(c, true);
  for (const auto& e : entries) check_outer_face(c, e.diagram);
  std::function<json(std::size_t)> fn;
  if (t == "1") {
    fn = [&](std::size_t k) { return verify_theorem1(entries[k].diagram, c.outer_face, 1).to_json(); };
  } else if (t == "mod2") {
    fn = [&](std::size_t k) { return compare_mod2(entries[k].diagram, c.outer_face, 1).to_json(); };
  } else if (t == "signs") {
    const auto kinds = theories(c.theory, true);
    fn = [&, kinds](std::size_t k) {
      json per = json::array();
      bool ok = true;
      for (SystemKind kind : kinds) {
        const RandomSignReport r =
            random_sign_trials(entries[k].diagram, builtin_system(kind), c.trials, c.seed, c.outer_face);
        ok = ok && r.ok();
        per.push_back(r.to_json());
      }
      return json{{"diagram", entries[k].diagram.serialize()}, {"reports", per}, {"ok", ok}};
    };
  } else if (t == "outerface") {
    const Coefficients coeff = Coefficients::parse(c.coefficients);
    fn = [&, coeff](std::size_t k) { return verify_outer_face_invariance(entries[k].diagram, coeff, 1).to_json(); };
  } else {
    throw ValidationError("--theorem must be one of 1, 2, mod2, signs, outerface");
  }
  auto results = parallel_map<json>(entries.size(), c.jobs, fn);
  bool all = true;
  for (const auto& r : results) {
    if (r.contains("ok")) all = all && r["ok"].get<bool>();
    if (r.contains("equal")) all = all && r["equal"].get<bool>();
    if (r.contains("invariant")) all = all && r["invariant"].get<bool>();
  }
  return {collect(entries, std::move(results)), all};
}

Outcome do_relations(const RunConfig& c) {
  json arr = json::array();
  bool all = true;
  for (SystemKind kind : theories(c.theory, true)) {
    const RelationReport r = check_relations(builtin_system(kind));
    all = all && r.all_ok();
    arr.push_back(json::parse(r.to_json()));
  }
  if (arr.size() == 1) return {arr.front(), all};
  return {json{{"reports", arr}}, all};
}

Outcome do_classify(const RunConfig& c) {
  std::vector<LinkDiagram> corpus;
  for (const auto& e : inputs(c, false)) corpus.push_back(e.diagram);
  const SignClassification s = classify_sign_systems(corpus, c.jobs, true);
  return {s.to_json(), s.ok()};
}

}  // namespace

int default_jobs() {
  if (const char* v = std::getenv("CUBECAT_JOBS")) {
    try {
      const int n = std::stoi(v);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

RunOutput run_capture(const RunConfig& config) {
  RunOutput out;
  std::ostringstream err;
  try {
    if (config.jobs < 1) throw ValidationError("--jobs must be positive");
    if (config.trials < 1) throw ValidationError("--trials must be positive");
    try {
      Coefficients::parse(config.coefficients);
    } catch (const HomologyError& e) {
      throw ValidationError(e.what());
    }
    Outcome o;
    const std::string& s = config.subcommand;
    if (s == "compute") o = do_compute(config, err);
    else if (s == "euler") o = do_euler(config);
    else if (s == "verify") o = do_verify(config);
    else if (s == "verify-relations") o = do_relations(config);
    else if (s == "classify-signs") o = do_classify(config);
    else throw ValidationError("unknown subcommand '" + s + "'");
    out.json = o.doc.dump(2) + "\n";
    out.status = o.certified ? kExitOk : kExitCertificationFailed;
    if (!o.certified) err << "certification failed\n";
  } catch (const ValidationError& e) {
    out.status = kExitInvalid;
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    out.status = kExitInvalid;
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    out.status = kExitInvalid;
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    out.status = kExitCertificationFailed;
    err << "error: " << e.what() << "\n";
  }
  out.error = err.str();
  return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunOutput r = run_capture(config);
  err << r.error;
  if (!r.json.empty()) {
    if (config.output) {
      std::ofstream f(*config.output, std::ios::binary);
      if (!f) {
        err << "error: cannot write " << *config.output << "\n";
        return kExitInvalid;
      }
      f << r.json;
    } else {
      out << r.json;
    }
  }
  return r.status;
}

}  // namespace cubecat
