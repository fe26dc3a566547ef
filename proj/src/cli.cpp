#include "tcawp/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "tcawp/chain.hpp"
#include "tcawp/error.hpp"
#include "tcawp/extender.hpp"
#include "tcawp/generator.hpp"
#include "tcawp/solver.hpp"

namespace tcawp {

using json = nlohmann::ordered_json;

json verdict_json(const Verdict& v) {
  json j = json::object();
  j["verdict"] = verdict_name(v);
  json issues = json::array();
  if (const auto* p = std::get_if<PartiallyConsistent>(&v))
    for (const Issue& i : p->issues) issues.push_back({{"class", issue_name(i.cls)}, {"sentence", i.sentence}});
  j["issues"] = std::move(issues);
  if (const auto* u = std::get_if<Unrepairable>(&v)) j["reason"] = reason_name(u->reason);
  return j;
}

json repairs_json(const RepairLog& log) {
  json out = json::array();
  for (const RepairEntry& e : log)
    out.push_back({{"issue", issue_name(e.issue)}, {"sentence", e.sentence}, {"before", e.before}, {"after", e.after}});
  return out;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One input line: a parsed problem or the reason it could not be read.
struct InputRecord {
  std::size_t line = 0;
  std::optional<RawProblem> problem;
  std::string error;
};

std::vector<InputRecord> read_records(std::istream& in) {
  std::vector<InputRecord> out;
  std::set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    InputRecord r{line, std::nullopt, {}};
    try {
      r.problem = problem_from_json(json::parse(text));
      if (!ids.insert(r.problem->id).second) {
        r.error = DuplicateId("id '" + r.problem->id + "' repeats at line " + std::to_string(line)).what();
        r.problem.reset();
      }
    } catch (const json::exception& e) {
      r.error = SchemaError(line, e.what()).what();
    } catch (const ParseError& e) {
      r.error = SchemaError(line, e.what()).what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

void merge(json& into, const json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

json error_record(const InputRecord& r) { return {{"line", r.line}, {"error", r.error}}; }

json error_record(const std::string& id, const std::exception& e) {
  json j{{"id", id}, {"error", e.what()}};
  if (const auto* err = dynamic_cast<const Error*>(&e)) j["error_kind"] = err->kind();
  return j;
}

// Applies fn to every item on `jobs` threads; results keep input order.
template <typename In, typename Out>
std::vector<Out> parallel_map(const std::vector<In>& items, unsigned jobs, const std::function<Out(const In&)>& fn) {
  std::vector<Out> results(items.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        results[i] = fn(items[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(items.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

struct Context {
  std::istream& in;
  std::ostream& out;
  std::string input = "-";
  std::string output = "-";
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::string names_path;
  NameLexicon names = NameLexicon::bundled();
  KindLexicon lexicon = KindLexicon::bundled();

  void load_lexicons() {
    try {
      if (!names_path.empty()) names = NameLexicon::load(names_path);
      if (const char* path = std::getenv("TCAWP_LEXICON"); path && *path) lexicon = KindLexicon::load(path);
    } catch (const std::ios_base::failure& e) {
      throw IoError(e.what());
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  }

  Analysis analyze(const RawProblem& p) const { return tcawp::analyze(p, names, lexicon); }

  std::vector<InputRecord> records() {
    if (input == "-") return read_records(in);
    std::ifstream f(input);
    if (!f) throw IoError("cannot open " + input);
    return read_records(f);
  }

  void write(const std::vector<json>& lines) {
    std::ostringstream buf;
    for (const json& j : lines) buf << j.dump() << '\n';
    if (output == "-") {
      out << buf.str();
      out.flush();
      return;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f) throw IoError("cannot write " + output);
    f << buf.str();
    if (!f) throw IoError("failed writing " + output);
  }

  // Runs fn over every readable record; unreadable ones pass through as error lines.
  void each_record(const std::function<std::vector<json>(const RawProblem&)>& fn) {
    const auto recs = records();
    const auto results = parallel_map<InputRecord, std::vector<json>>(recs, jobs, [&](const InputRecord& r) {
      if (!r.problem) return std::vector<json>{error_record(r)};
      try {
        return fn(*r.problem);
      } catch (const Error& e) {
        return std::vector<json>{error_record(r.problem->id, e)};
      }
    });
    std::vector<json> lines;
    for (const auto& rs : results) lines.insert(lines.end(), rs.begin(), rs.end());
    write(lines);
  }
};

std::string data_path(const std::string& file) { return std::string(TCAWP_DATA_DIR) + "/" + file; }

std::vector<std::pair<IssueClass, double>> parse_noise(const std::string& spec) {
  std::vector<std::pair<IssueClass, double>> out;
  double total = 0;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    const auto cls = issue_from_name(item.substr(0, colon));
    if (!cls) throw UsageError("unknown issue class '" + item.substr(0, colon) + "'");
    double rate = 1.0;
    if (colon != std::string::npos) {
      try {
        std::size_t used = 0;
        rate = std::stod(item.substr(colon + 1), &used);
        if (used != item.size() - colon - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw UsageError("bad noise rate in '" + item + "'");
      }
    }
    if (rate < 0) throw UsageError("noise rates must be non-negative");
    total += rate;
    out.emplace_back(*cls, rate);
  }
  if (total > 1.0 + 1e-9) throw UsageError("noise rates sum to more than 1");
  return out;
}

std::string record_id(std::size_t i) {
  std::ostringstream s;
  s << "gen-" << std::setw(6) << std::setfill('0') << i + 1;
  return s.str();
}

struct GenerateOptions {
  std::size_t count = 10;
  std::vector<int> sentences{4};
  int agents = 2;
  std::string mode = "template";
  std::string noise;
  int k = 2;
  std::string corpus;
  std::size_t max_tokens = 120;
  int value_lo = 1;
  int value_hi = 99;
  std::vector<std::string> types;
  bool surface_names = false;
};

json generated_record(const GeneratedProblem& g, int sentences) {
  json j = to_json(g.raw);
  j["sentences"] = sentences;
  return j;
}

void command_generate_template(Context& ctx, const GenerateOptions& o) {
  const auto noise = parse_noise(o.noise);
  std::vector<std::size_t> indexes(o.count);
  for (std::size_t i = 0; i < o.count; ++i) indexes[i] = i;
  TemplateSpec base;
  base.agents = o.agents;
  base.value_lo = o.value_lo;
  base.value_hi = o.value_hi;
  base.surface_names = o.surface_names;
  if (!o.types.empty()) {
    base.types.clear();
    for (const std::string& t : o.types) base.types.push_back(canonical_type(t));
  }
  for (int n : o.sentences) {
    TemplateSpec probe = base;
    probe.sentences = n;
    try {
      probe.validate();
    } catch (const InvalidSpec& e) {
      throw UsageError(e.what());
    }
  }
  const auto lines = parallel_map<std::size_t, json>(indexes, ctx.jobs, [&](const std::size_t& i) {
    const int n = o.sentences[i % o.sentences.size()];
    Rng pick(mix_seed(ctx.seed, 2 * i + 1));
    std::optional<IssueClass> chosen;
    const double u = pick.uniform01();
    double acc = 0;
    for (const auto& [cls, rate] : noise) {
      acc += rate;
      if (u < acc) {
        chosen = cls;
        break;
      }
    }
    // Redraw the clean problem a few times if its shape cannot host the issue.
    for (std::uint64_t attempt = 0;; ++attempt) {
      TemplateSpec spec = base;
      spec.sentences = n;
      spec.seed = mix_seed(mix_seed(ctx.seed, i), attempt);
      GeneratedProblem g = generate_template(spec, record_id(i));
      if (!chosen) return generated_record(g, n);
      try {
        Rng rng(mix_seed(spec.seed, 0x6e6f697365ULL));
        return generated_record(inject_noise(g, *chosen, rng), n);
      } catch (const NotApplicable& e) {
        if (attempt == 20) {
          json j = generated_record(g, n);
          j["noise_error"] = e.what();
          return j;
        }
      }
    }
  });
  ctx.write(lines);
}

void command_generate_chain(Context& ctx, const GenerateOptions& o) {
  const std::string corpus_path = o.corpus.empty() ? data_path("seed_corpus.jsonl") : o.corpus;
  std::vector<RawProblem> corpus;
  try {
    corpus = load(corpus_path);
  } catch (const std::ios_base::failure& e) {
    throw IoError(e.what());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  std::map<int, ChainModel> models;
  for (int n : o.sentences) {
    std::vector<NormalizedProblem> subset;
    for (const RawProblem& p : corpus) {
      try {
        NormalizedProblem np = normalize(p, ctx.names);
        if (static_cast<int>(np.sentences.size()) == n) subset.push_back(std::move(np));
      } catch (const Error&) {
      }
    }
    try {
      models.emplace(n, train_chain(subset, o.k));
    } catch (const Error& e) {
      throw UsageError(std::string(e.what()) + " (" + std::to_string(n) + "-sentence problems in " + corpus_path + ")");
    }
  }
  const std::vector<std::string> pool = o.types.empty() ? default_type_pool() : o.types;
  std::vector<std::size_t> indexes(o.count);
  for (std::size_t i = 0; i < o.count; ++i) indexes[i] = i;
  const auto lines = parallel_map<std::size_t, json>(indexes, ctx.jobs, [&](const std::size_t& i) {
    const int n = o.sentences[i % o.sentences.size()];
    const std::uint64_t seed = mix_seed(ctx.seed, i);
    Rng rng(mix_seed(seed, 1));
    GroundingOptions g;
    g.type = canonical_type(pool[rng.uniform_int(0, pool.size() - 1)]);
    g.value_lo = o.value_lo;
    g.value_hi = o.value_hi;
    g.bare_numbers = rng.bernoulli(0.5);
    RawProblem p{record_id(i), ground_sample(sample_chain(models.at(n), seed, o.max_tokens), rng, g), std::nullopt, {}};
    json j = to_json(p);
    j["sentences"] = n;
    const Analysis a = ctx.analyze(p);
    const Verdict v = check_consistency(a);
    merge(j, verdict_json(v));
    if (std::holds_alternative<PartiallyConsistent>(v)) {
      try {
        const RepairResult r = repair(p, a, v, ctx.seed);
        j["repairs"] = repairs_json(r.log);
        j["repaired_text"] = r.problem.text;
      } catch (const Error& e) {
        j["repair_error"] = e.what();
      }
    }
    return j;
  });
  ctx.write(lines);
}

void command_check(Context& ctx) {
  ctx.each_record([&](const RawProblem& p) {
    json j = to_json(p);
    merge(j, verdict_json(check_consistency(ctx.analyze(p))));
    return std::vector<json>{j};
  });
}

void command_repair(Context& ctx) {
  ctx.each_record([&](const RawProblem& p) {
    const Analysis a = ctx.analyze(p);
    const Verdict v = check_consistency(a);
    json j = to_json(p);
    if (!std::holds_alternative<Consistent>(v)) {
      try {
        const RepairResult r = repair(p, a, v, ctx.seed);
        j["text"] = r.problem.text;
        j["original_text"] = p.text;
        merge(j, verdict_json(r.verdict));
        j["repairs"] = repairs_json(r.log);
        return std::vector<json>{j};
      } catch (const Error& e) {
        merge(j, verdict_json(v));
        j["error"] = e.what();
        j["error_kind"] = e.kind();
        return std::vector<json>{j};
      }
    }
    merge(j, verdict_json(v));
    j["repairs"] = json::array();
    return std::vector<json>{j};
  });
}

void command_extend(Context& ctx, const std::string& combination, const ExtendOptions& options) {
  std::vector<Combination> combos;
  try {
    combos = combination == "all" ? all_combinations() : std::vector{parse_combination(combination)};
  } catch (const InvalidSpec& e) {
    throw UsageError(e.what());
  }
  ctx.each_record([&](const RawProblem& p) {
    const Analysis a = ctx.analyze(p);
    std::vector<json> out;
    for (std::size_t i = 0; i < combos.size(); ++i) {
      const Combination& c = combos[i];
      Rng rng(mix_seed(mix_seed(stable_hash(p.id), ctx.seed), static_cast<std::uint64_t>(c.from * 100 + c.to * 10 + c.ask)));
      try {
        out.push_back(to_json(extend(p, a, c, rng, options)));
      } catch (const Error& e) {
        json j = error_record(p.id + ":" + c.str(), e);
        j["derived_from"] = p.id;
        j["combination"] = {{"transfer", c.transfer()}, {"ask", c.ask_name()}};
        out.push_back(std::move(j));
        if (dynamic_cast<const NotApplicable*>(&e)) break;  // same answer for every combination
      }
    }
    return out;
  });
}

void command_classify(Context& ctx) {
  ctx.each_record([&](const RawProblem& p) {
    const NormalizedProblem np = normalize(p, ctx.names);
    json kinds = json::array();
    for (SentenceKind k : classify_all(np.sentences, ctx.lexicon)) kinds.push_back(kind_name(k));
    return std::vector<json>{{{"id", p.id}, {"kinds", kinds}}};
  });
}

void command_solve(Context& ctx) {
  ctx.each_record([&](const RawProblem& p) {
    const Analysis a = ctx.analyze(p);
    const Verdict v = check_consistency(a);
    if (!std::holds_alternative<Consistent>(v))
      throw UnsolvableState("problem is " + describe(v) + "; only consistent problems are solved");
    return std::vector<json>{{{"id", p.id}, {"answer", solve(a.abox).str()}}};
  });
}

void command_stats(Context& ctx, bool as_json) {
  struct Row {
    long consistent = 0, partial = 0, unrepairable = 0;
    long total() const { return consistent + partial + unrepairable; }
  };
  const auto recs = ctx.records();
  const auto tallies = parallel_map<InputRecord, std::optional<std::pair<int, std::string>>>(
      recs, ctx.jobs, [&](const InputRecord& r) -> std::optional<std::pair<int, std::string>> {
        if (!r.problem) return std::nullopt;
        const json& extra = r.problem->extra;
        const int n = extra.contains("sentences") && extra["sentences"].is_number_integer()
                          ? extra["sentences"].get<int>()
                          : static_cast<int>(sentence_texts(r.problem->text).size());
        if (extra.contains("verdict") && extra["verdict"].is_string()) return std::pair{n, extra["verdict"].get<std::string>()};
        return std::pair{n, std::string(verdict_name(check_consistency(ctx.analyze(*r.problem))))};
      });
  std::map<int, Row> rows;
  Row all;
  for (const auto& t : tallies) {
    if (!t) continue;
    for (Row* row : {&rows[t->first], &all}) {
      if (t->second == "consistent") ++row->consistent;
      else if (t->second == "partial") ++row->partial;
      else ++row->unrepairable;
    }
  }
  auto pct = [](long part, long total) { return total ? 100.0 * static_cast<double>(part) / static_cast<double>(total) : 0.0; };
  if (as_json) {
    std::vector<json> lines;
    auto emit = [&](const json& key, const Row& r) {
      lines.push_back({{"sentences", key}, {"count", r.total()}, {"consistent", pct(r.consistent, r.total())},
                       {"repairable", pct(r.partial, r.total())}, {"unrepairable", pct(r.unrepairable, r.total())}});
    };
    for (const auto& [n, r] : rows) emit(n, r);
    emit("all", all);
    ctx.write(lines);
    return;
  }
  std::ostringstream s;
  s << std::fixed << std::setprecision(1);
  s << "sentences  count  consistent%  repairable%  unrepairable%\n";
  auto line = [&](const std::string& key, const Row& r) {
    s << std::setw(9) << key << "  " << std::setw(5) << r.total() << "  " << std::setw(11) << pct(r.consistent, r.total())
      << "  " << std::setw(11) << pct(r.partial, r.total()) << "  " << std::setw(13) << pct(r.unrepairable, r.total())
      << "\n";
  };
  for (const auto& [n, r] : rows) line(std::to_string(n), r);
  line("all", all);
  if (ctx.output == "-") {
    ctx.out << s.str();
  } else {
    std::ofstream f(ctx.output);
    if (!f) throw IoError("cannot write " + ctx.output);
    f << s.str();
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transfer-case arithmetic word problems: generate, check, repair, extend, classify, solve."};
  app.name("tcawp");
  app.require_subcommand(1);
  Context ctx{in, out};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  ctx.jobs = hw;

  auto io_options = [&](CLI::App* sub, bool with_input) {
    if (with_input) sub->add_option("-i,--input", ctx.input, "input JSONL ('-' for stdin)");
    sub->add_option("-o,--out", ctx.output, "output file ('-' for stdout)");
    sub->add_option("--seed", ctx.seed, "random seed");
    sub->add_option("-j,--jobs", ctx.jobs, "worker threads; output order does not depend on it")->check(CLI::Range(1u, 1024u));
    sub->add_option("--names", ctx.names_path, "name lexicon file (one first name per line)");
  };

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "generate problems (template or chain mode)");
  io_options(generate, false);
  generate->add_option("-n,--count", gen.count, "number of problems");
  generate->add_option("--sentences", gen.sentences, "sentence count(s), cycled: 3, 4, 5 or e.g. 3,4,5")
      ->delimiter(',')
      ->check(CLI::IsMember({3, 4, 5}));
  generate->add_option("--agents", gen.agents, "agents per problem (template mode)")->check(CLI::IsMember({2, 3}));
  generate->add_option("--mode", gen.mode, "template or chain")->check(CLI::IsMember({"template", "chain"}));
  generate->add_option("--noise", gen.noise, "issue injection rates, e.g. QsObjTypeMismatch:0.2,TrSameAgents:0.1");
  generate->add_option("--k", gen.k, "chain order")->check(CLI::PositiveNumber);
  generate->add_option("--corpus", gen.corpus, "training corpus for chain mode");
  generate->add_option("--max-tokens", gen.max_tokens, "chain sampling cap")->check(CLI::PositiveNumber);
  generate->add_option("--min-value", gen.value_lo, "smallest initial stock")->check(CLI::NonNegativeNumber);
  generate->add_option("--max-value", gen.value_hi, "largest initial stock")->check(CLI::PositiveNumber);
  generate->add_option("--types", gen.types, "object types, comma separated")->delimiter(',');
  generate->add_flag("--surface-names", gen.surface_names, "use first names instead of Agent1, Agent2, ...");

  auto* check = app.add_subcommand("check", "attach a verdict to every problem");
  io_options(check, true);
  auto* repair_cmd = app.add_subcommand("repair", "repair partially consistent problems");
  io_options(repair_cmd, true);
  std::string combination = "all";
  ExtendOptions extend_opts;
  auto* extend_cmd = app.add_subcommand("extend", "add a third agent and a second transfer");
  io_options(extend_cmd, true);
  extend_cmd->add_option("--combination", combination, "'all' or e.g. A3->A2:A2 (transfer:question agent)");
  extend_cmd->add_option("--min-value", extend_opts.value_lo, "smallest stock for the new agent")->check(CLI::NonNegativeNumber);
  extend_cmd->add_option("--max-value", extend_opts.value_hi, "largest stock for the new agent")->check(CLI::NonNegativeNumber);
  auto* classify_cmd = app.add_subcommand("classify", "label each sentence BT, TR, AT or QS");
  io_options(classify_cmd, true);
  auto* solve_cmd = app.add_subcommand("solve", "answer consistent problems");
  io_options(solve_cmd, true);
  bool stats_json = false;
  auto* stats = app.add_subcommand("stats", "consistent / repairable / unrepairable shares by sentence count");
  io_options(stats, true);
  stats->add_flag("--json", stats_json, "JSONL rows instead of a table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "tcawp: " << e.what() << "\n";
    return exit_code::kUsage;
  }

  try {
    ctx.load_lexicons();
    if (generate->parsed()) {
      if (gen.value_hi < std::max(gen.value_lo, 1)) throw UsageError("--max-value must be at least max(--min-value, 1)");
      if (gen.mode == "template") command_generate_template(ctx, gen);
      else command_generate_chain(ctx, gen);
    } else if (check->parsed()) {
      command_check(ctx);
    } else if (repair_cmd->parsed()) {
      command_repair(ctx);
    } else if (extend_cmd->parsed()) {
      if (extend_opts.value_hi < extend_opts.value_lo) throw UsageError("--max-value must be at least --min-value");
      command_extend(ctx, combination, extend_opts);
    } else if (classify_cmd->parsed()) {
      command_classify(ctx);
    } else if (solve_cmd->parsed()) {
      command_solve(ctx);
    } else if (stats->parsed()) {
      command_stats(ctx, stats_json);
    }
  } catch (const UsageError& e) {
    err << "tcawp: " << e.what() << "\n";
    return exit_code::kUsage;
  } catch (const IoError& e) {
    err << "tcawp: " << e.what() << "\n";
    return exit_code::kIo;
  } catch (const std::exception& e) {
    err << "tcawp: internal error: " << e.what() << "\n";
    return exit_code::kInternal;
  }
  return exit_code::kOk;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace tcawp
