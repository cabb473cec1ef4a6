#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sulcheck/checker.hpp"
#include "sulcheck/oracle.hpp"
#include "sulcheck/reduction.hpp"
#include "sulcheck/update.hpp"

namespace sulcheck {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(Errc::io, "cannot write '" + path + "'");
  out << content;
}

std::string formula_argument(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@')
    return read_file(arg.substr(1));
  return arg;
}

json edge_list_json(const Model& m, const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges)
    out.push_back({m.state_name(e.src), m.state_name(e.dst)});
  return out;
}

std::string edge_set_text(const Model& m, const EdgeSet& set) {
  std::string out = "{";
  bool first = true;
  for (const Edge& e : set.pairs) {
    if (!first)
      out += ", ";
    first = false;
    out += "(" + m.state_name(e.src) + "," + m.state_name(e.dst) + ")";
  }
  return out + "}";
}

uint64_t fnv64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string short_digest(const std::string& canonical) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv64(canonical)));
  return buf;
}

json witness_json(const Model& m, const StrategyTable& table) {
  json out = json::array();
  for (const auto& [digest, entry] : table.entries) {
    json rec;
    rec["digest"] = short_digest(digest);
    rec["point"] = m.state_name(entry.point);
    rec["edges"] = edge_list_json(m, entry.edges);
    rec["add"] = edge_list_json(m, entry.choice.additions.pairs);
    rec["remove"] = edge_list_json(m, entry.choice.removals.pairs);
    out.push_back(std::move(rec));
  }
  return out;
}

json trace_json(const Model& m, const std::vector<TraceStep>& trace) {
  json out = json::array();
  for (const TraceStep& step : trace) {
    json rec;
    rec["add"] = edge_list_json(m, step.choice.additions.pairs);
    rec["remove"] = edge_list_json(m, step.choice.removals.pairs);
    rec["moved_to"] = step.moved_to;
    out.push_back(std::move(rec));
  }
  return out;
}

struct CheckOptions {
  std::string model_path;
  std::string formula;
  std::string point;
  bool witness = false;
  bool as_json = false;
  bool no_memo = false;
  bool parallel = false;
  uint64_t max_positions = 0;
  uint64_t depth_cap = 0;
};

CheckerConfig make_config(const CheckOptions& opt) {
  CheckerConfig cfg;
  cfg.memoization = !opt.no_memo;
  cfg.parallel = opt.parallel;
  if (opt.max_positions > 0)
    cfg.max_positions = opt.max_positions;
  if (opt.depth_cap > 0) {
    cfg.sul_depth_cap = opt.depth_cap;
  } else if (const char* env = std::getenv("SULCHECK_DEPTH_CAP")) {
    cfg.sul_depth_cap = std::strtoull(env, nullptr, 10);
  }
  return cfg;
}

int cmd_check(const CheckOptions& opt, std::ostream& out) {
  ParsedModel parsed = parse_model_file(read_file(opt.model_path));
  StateId point;
  if (!opt.point.empty())
    point = parsed.model.id_of(opt.point);
  else if (parsed.point)
    point = *parsed.point;
  else
    throw Error(Errc::syntax, "no point: in the model file and no --point given");
  PointedModel pm{parsed.model, point};
  Formula f = parse_formula(formula_argument(opt.formula));
  Verdict v = check(pm, f, make_config(opt), opt.witness);

  if (opt.as_json) {
    json rec;
    rec["verdict"] = v.value;
    rec["stats"] = {{"positions", v.stats.positions}, {"memo_hits", v.stats.memo_hits}};
    rec["witness"] = v.witness ? witness_json(pm.model, *v.witness) : json(nullptr);
    rec["trace"] = v.trace ? trace_json(pm.model, *v.trace) : json(nullptr);
    out << rec.dump() << '\n';
  } else {
    out << "verdict: " << (v.value ? "true" : "false") << '\n';
    out << "positions: " << v.stats.positions << '\n';
    out << "memo hits: " << v.stats.memo_hits << '\n';
    if (v.witness) {
      out << "witness:\n";
      for (const auto& [digest, entry] : v.witness->entries)
        out << "  [" << short_digest(digest) << "] point=" << pm.model.state_name(entry.point)
            << " add=" << edge_set_text(pm.model, entry.choice.additions)
            << " remove=" << edge_set_text(pm.model, entry.choice.removals) << '\n';
    }
    if (v.trace) {
      out << "trace:\n";
      for (const TraceStep& step : *v.trace)
        out << "  add=" << edge_set_text(pm.model, step.choice.additions)
            << " remove=" << edge_set_text(pm.model, step.choice.removals) << " -> "
            << step.moved_to << '\n';
    }
  }
  return v.value ? 0 : 1;
}

int cmd_enumerate(const std::string& model_path, const std::string& mode,
                  const std::string& budgets, std::ostream& out) {
  Model m = parse_model_file(read_file(model_path)).model;
  uint64_t first = 0, second = 0;
  {
    std::istringstream in(budgets);
    std::string tok;
    if (std::getline(in, tok, ','))
      first = std::strtoull(tok.c_str(), nullptr, 10);
    if (std::getline(in, tok, ','))
      second = std::strtoull(tok.c_str(), nullptr, 10);
    else
      second = first;
  }
  auto line = [&](const EdgeSet& add, const EdgeSet& rem) {
    json rec;
    rec["additions"] = edge_list_json(m, add.pairs);
    rec["removals"] = edge_list_json(m, rem.pairs);
    rec["cost_additions"] = add.total_cost;
    rec["cost_removals"] = rem.total_cost;
    out << rec.dump() << '\n';
  };
  if (mode == "sub") {
    SubmodelStream s(m, first);
    while (auto item = s.next())
      line(EdgeSet{}, item->first);
  } else if (mode == "super") {
    SupermodelStream s(m, first);
    while (auto item = s.next())
      line(item->first, EdgeSet{});
  } else if (mode == "update") {
    UpdateStream s(m, first, second);
    while (auto item = s.next())
      line(item->first.additions, item->first.removals);
  } else {
    throw Error(Errc::syntax, "--mode must be sub, super or update");
  }
  return 0;
}

int cmd_reduce_qbf(const std::string& qbf_text, const std::string& flavor, const std::string& emit,
                   bool verify, const std::string& out_dir, std::ostream& out) {
  QbfInstance q = parse_qbf(qbf_text);
  if (flavor != "sdl" && flavor != "scl")
    throw Error(Errc::syntax, "--flavor must be sdl or scl");
  Reduction red = flavor == "sdl" ? build_sdl_reduction(q) : build_scl_reduction(q);

  std::string model_text = serialize_pointed(red.pm);
  std::string formula_text = print_formula(red.formula);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_file((std::filesystem::path(out_dir) / "reduction.model").string(), model_text);
    write_file((std::filesystem::path(out_dir) / "reduction.formula").string(),
               formula_text + "\n");
  }
  if (emit == "model" || emit == "both")
    out << model_text;
  if (emit == "both")
    out << "formula: " << formula_text << '\n';
  else if (emit == "formula")
    out << formula_text << '\n';

  if (verify) {
    bool model_side = check(red.pm, red.formula).value;
    bool qbf_side = qbf_eval(q);
    out << "qbf: " << (qbf_side ? "true" : "false") << '\n';
    out << "check: " << (model_side ? "true" : "false") << '\n';
    out << "agree: " << (model_side == qbf_side ? "true" : "false") << '\n';
    return model_side == qbf_side ? 0 : 1;
  }
  return 0;
}

int cmd_fixtures(const std::string& out_dir, std::ostream& out) {
  std::filesystem::create_directories(out_dir);
  for (const auto& [key, pm] : build_figure_fixtures()) {
    std::string path = (std::filesystem::path(out_dir) / (key + ".model")).string();
    write_file(path, serialize_pointed(pm));
    out << "wrote " << path << '\n';
  }
  return 0;
}

int cmd_family(uint64_t n, const std::string& out_dir, std::ostream& out) {
  auto [small, large] = build_distinguishing_family(n);
  std::filesystem::create_directories(out_dir);
  std::string stem = "family" + std::to_string(n);
  std::string small_path =
      (std::filesystem::path(out_dir) / (stem + ".M" + std::to_string(n + 2) + ".model")).string();
  std::string large_path =
      (std::filesystem::path(out_dir) / (stem + ".M" + std::to_string(n + 3) + ".model")).string();
  write_file(small_path, serialize_pointed(small));
  write_file(large_path, serialize_pointed(large));
  out << "wrote " << small_path << '\n';
  out << "wrote " << large_path << '\n';
  return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sulcheck - model checking for strategic graph-update logics"};
  app.require_subcommand(1);

  CheckOptions copt;
  auto* c_check = app.add_subcommand("check", "check a formula against a model file");
  c_check->add_option("model", copt.model_path, "model file")->required();
  c_check->add_option("formula", copt.formula, "formula text, or @file")->required();
  c_check->add_option("--point", copt.point, "override the model file's point");
  c_check->add_flag("--witness", copt.witness, "extract and print a strategy table");
  c_check->add_flag("--json", copt.as_json, "machine-readable output");
  c_check->add_flag("--no-memo", copt.no_memo, "disable memoization");
  c_check->add_flag("--parallel", copt.parallel, "allow parallel search (same verdicts)");
  c_check->add_option("--max-positions", copt.max_positions, "abort after this many positions");
  c_check->add_option("--depth-cap", copt.depth_cap, "override the SUL depth cap");

  std::string nnf_text;
  auto* c_nnf = app.add_subcommand("nnf", "print the negation normal form");
  c_nnf->add_option("formula", nnf_text, "formula text, or @file")->required();

  std::string ctl_text, flavor = "sdl";
  auto* c_translate = app.add_subcommand("translate", "translate a CTL formula");
  c_translate->add_option("ctl", ctl_text, "CTL formula text")->required();
  c_translate->add_option("--flavor", flavor, "sdl, scl or sul")->required();

  std::string qbf_text, emit = "both", reduce_flavor, out_dir;
  bool verify = false;
  auto* c_reduce = app.add_subcommand("reduce-qbf", "build the model-checking reduction of a QBF");
  c_reduce->add_option("qbf", qbf_text, "QBF text, or @file")->required();
  c_reduce->add_option("--flavor", reduce_flavor, "sdl or scl")->required();
  c_reduce->add_option("--emit", emit, "model, formula or both");
  c_reduce->add_flag("--verify", verify, "run both sides and report agreement");
  c_reduce->add_option("--out", out_dir, "also write reduction.model / reduction.formula here");

  std::string fixtures_dir = "fixtures";
  auto* c_fixtures = app.add_subcommand("fixtures", "write the bundled example models");
  c_fixtures->add_option("--out", fixtures_dir, "output directory");

  uint64_t family_n = 1;
  std::string family_dir = ".";
  auto* c_family = app.add_subcommand("family", "write a distinguishing model pair");
  c_family->add_option("n", family_n, "family parameter (>= 1)")->required();
  c_family->add_option("--out", family_dir, "output directory");

  std::string enum_model, enum_mode = "sub", enum_budgets = "0";
  auto* c_enum = app.add_subcommand("enumerate", "dump an enumeration as JSON lines");
  c_enum->add_option("model", enum_model, "model file")->required();
  c_enum->add_option("--mode", enum_mode, "sub, super or update");
  c_enum->add_option("--budgets", enum_budgets, "budget, or angel,demon for update mode");

  std::vector<const char*> argv;
  argv.push_back("sulcheck");
  for (const auto& a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (c_check->parsed())
      return cmd_check(copt, out);
    if (c_nnf->parsed()) {
      Formula f = parse_formula(formula_argument(nnf_text), ParseMode::any);
      out << print_formula(to_nnf(f)) << '\n';
      return 0;
    }
    if (c_translate->parsed()) {
      Flavor fl;
      if (flavor == "sdl")
        fl = Flavor::sdl;
      else if (flavor == "scl")
        fl = Flavor::scl;
      else if (flavor == "sul")
        fl = Flavor::sul;
      else
        throw Error(Errc::syntax, "--flavor must be sdl, scl or sul");
      out << print_formula(translate_ctl(parse_ctl(ctl_text), fl)) << '\n';
      return 0;
    }
    if (c_reduce->parsed())
      return cmd_reduce_qbf(formula_argument(qbf_text), reduce_flavor, emit, verify, out_dir, out);
    if (c_fixtures->parsed())
      return cmd_fixtures(fixtures_dir, out);
    if (c_family->parsed())
      return cmd_family(family_n, family_dir, out);
    if (c_enum->parsed())
      return cmd_enumerate(enum_model, enum_mode, enum_budgets, out);
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (e.line() > 0)
      err << " (line " << e.line() << ", column " << e.column() << ")";
    err << '\n';
    return e.code() == Errc::resource_cap ? 3 : 2;
  }
  return 2;
}

} // namespace sulcheck
