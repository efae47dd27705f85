// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "closlab/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "closlab/coding.hpp"
#include "closlab/errors.hpp"
#include "closlab/io.hpp"
#include "closlab/ranks.hpp"
#include "closlab/reduction.hpp"
#include "closlab/shannon.hpp"
#include "json.hpp"

namespace closlab {
namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json rational_json(const BigRational& v) {
  Json j;
  if (v.fits_int64()) {
    j["num"] = v.small_num();
    j["den"] = v.small_den();
  } else {
    j["num"] = v.num_str();
    j["den"] = v.den_str();
  }
  return j;
}

Json entropy_json(const Entropy& e) {
  if (e.exact) return rational_json(*e.exact);
  return Json{{"approx", e.approx}, {"text", e.str()}};
}

Json subset_json(Mask x) { return Json(vertices_of(x)); }

Json subsets_json(const std::vector<Mask>& xs) {
  Json j = Json::array();
  for (Mask x : xs) j.push_back(subset_json(x));
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write " + path);
}

struct Loaded {
  ClosureOperator op;
  std::optional<TreeSpec> tree;
  std::optional<SetOperator> setop;  // set for tables with a "setop" header
};

std::string resolve_kind(const std::string& kind, const std::string& text) {
  const std::string keyword = header_keyword(text);
  const std::string detected = keyword == "digraph"                         ? "digraph"
                               : keyword == "closure" || keyword == "setop" ? "table"
                               : keyword == "tree"                          ? "tree"
                                                                            : "";
  if (kind.empty()) {
    if (detected.empty()) throw ParseError("unrecognised file header \"" + keyword + "\"", 1);
    return detected;
  }
  return kind;  // a mismatch surfaces as a header error from the parser
}

// Loads an operator. Closure tables are validated unless validate is false;
// a setop table is rejected unless allow_setop.
Loaded load(const std::string& path, const std::string& kind, bool validate, bool allow_setop) {
  if (path.empty()) throw UsageError("--input FILE is required");
  const std::string text = read_file(path);
  const std::string label = std::filesystem::path(path).stem().string();
  const std::string k = resolve_kind(kind, text);
  Loaded out;
  if (k == "digraph") {
    out.op = from_digraph(parse_digraph(text)).with_label(label);
  } else if (k == "tree") {
    const TreeFile file = parse_tree_file(text);
    auto [op, spec] = density_tree(file.r, file.H);
    out.op = op;
    out.tree = std::move(spec);
  } else {
    TableFile file = parse_table(text);
    if (file.setop) {
      if (!allow_setop) {
        throw ValidationError(path + " holds a set operator; this command needs a closure operator");
      }
      out.setop = SetOperator(file.n, file.table, label);
    } else if (validate) {
      out.op = parse_closure_table(text).with_label(label);
      return out;
    }
    out.op = ClosureOperator(file.n, std::move(file.table), label);
  }
  return out;
}

Json operator_json(const Loaded& in) {
  const ClosureOperator& op = in.op;
  Json j;
  j["n"] = op.size();
  j["label"] = op.label();
  if (in.setop) {
    j["setop"] = true;
  } else if (in.tree) {
    j["rank"] = in.tree->r;
    j["tree"] = {{"r", in.tree->r}, {"H", rational_json(in.tree->H)}, {"D", in.tree->D}};
  } else if (op.size() <= kMaxTableSize) {
    const int r = rank_of(op);
    j["rank"] = r;
    if (op.size() <= kEagerTableSize) j["uniform"] = same_table(op, uniform(r, op.size()));
  }
  return j;
}

std::optional<int> uniform_rank(const ClosureOperator& op) {
  for (int k = 0; k <= op.size(); ++k) {
    if (same_table(op, uniform(k, op.size()))) return k;
  }
  return std::nullopt;
}

Json violations_json(const ValidationReport& report) {
  Json j = Json::array();
  for (const Violation& v : report.violations) {
    j.push_back({{"rule", v.rule},
                 {"subset", subset_json(v.subset)},
                 {"other", subset_json(v.other)},
                 {"detail", v.detail}});
  }
  return j;
}

struct Options {
  std::string input, kind, out;
  std::uint64_t seed = 1;
  int threads = 1;
  // Subcommand options.
  bool all_witnesses = false;
  std::string subset;
  std::string mode = "reduced";
  bool pinch = false;
  bool witness = false;
  int alphabet = 0;
  std::uint64_t budget = 0;
  bool chain = false;
  std::vector<std::string> construct_args;
  std::string op_kind;
  std::vector<std::string> files;
  bool shannon = false;
  std::vector<int> equivalence;
};

struct Outcome {
  Json result;
  Json op;
  std::string status = "ok";
  int code = kExitOk;
  std::optional<std::string> artifact;  // operator file text for --out
};

Mask subset_arg(const std::string& text, int n) {
  try {
    return parse_subset(text, n);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--subset: ") + e.what());
  }
}

int int_arg(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("expected an integer for ") + what + ", got \"" + text + "\"");
}

Outcome cmd_validate(const Options& o) {
  Loaded in = load(o.input, o.kind, false, true);
  Outcome res;
  ValidationReport report;
  if (in.tree) {
    report = validate_tree_structure(*in.tree, in.op);
  } else {
    ValidateOptions vo;
    vo.all_witnesses = o.all_witnesses;
    report = in.setop ? validate_closure_table(in.setop->size(), in.setop->table(), vo)
                      : validate_closure(in.op, vo);
  }
  res.op = Json{{"n", in.op.size()}, {"label", in.op.label()}};
  if (report.valid) res.op = operator_json(Loaded{in.op, in.tree, std::nullopt});
  res.result = {{"valid", report.valid}, {"violations", violations_json(report)}};
  if (!report.valid) {
    res.status = "invalid";
    res.code = kExitInput;
  }
  return res;
}

Outcome cmd_ranks(const Options& o) {
  const Loaded in = load(o.input, o.kind, true, false);
  Outcome res;
  res.op = operator_json(in);
  const ClosureOperator& op = in.op;
  if (!o.subset.empty()) {
    const Mask x = subset_arg(o.subset, op.size());
    const RankValue ork = outer_rank(op, x);
    const RankValue irk = inner_rank(op, x);
    const LowerUpperRank lu = lower_upper_rank(op, x);
    res.result = {{"subset", subset_json(x)},
                  {"ork", ork.value},
                  {"irk", irk.value},
                  {"lrk", lu.lrk},
                  {"urk", lu.urk},
                  {"ork_witness", subset_json(ork.witness)},
                  {"irk_witness", subset_json(irk.witness)},
                  {"lrk_witness", subset_json(lu.lrk_witness)}};
    return res;
  }
  const RankProfile profile(op);
  Json rows = Json::array();
  for (Mask x = 0; x <= op.ground(); ++x) {
    rows.push_back({{"subset", subset_json(x)},
                    {"ork", profile.ork(x)},
                    {"irk", profile.irk(x)},
                    {"lrk", profile.lrk(x)},
                    {"urk", profile.urk(x)}});
  }
  res.result = {{"ranks", rows}};
  return res;
}

Outcome cmd_flats(const Options& o) {
  const Loaded in = load(o.input, o.kind, true, false);
  Outcome res;
  res.op = operator_json(in);
  const RankProfile profile(in.op);
  res.result = {{"closed", subsets_json(closed_sets(in.op))},
                {"flats", subsets_json(flats(profile))},
                {"upper_flats", subsets_json(upper_flats(profile))}};
  return res;
}

Outcome cmd_matroid(const Options& o) {
  const Loaded in = load(o.input, o.kind, true, false);
  Outcome res;
  res.op = operator_json(in);
  const RankProfile profile(in.op);
  const MatroidReport m = matroid_check(profile);
  Json exchange = nullptr;
  if (m.exchange_witness) {
    exchange = {{"X", subset_json(m.exchange_witness->x)},
                {"u", m.exchange_witness->u},
                {"v", m.exchange_witness->v}};
  }
  const SpanOperatorResult span = span_operator(profile);
  Json span_json = {{"closure_operator", span.report.valid},
                    {"is_matroid", span.is_matroid},
                    {"rank", span.report.valid ? Json(span.candidate_rank) : Json(nullptr)},
                    {"uniform_rank", nullptr},
                    {"verdict", span_verdict_name(span.verdict)}};
  if (span.report.valid) {
    if (const auto k = uniform_rank(span.candidate)) span_json["uniform_rank"] = *k;
  }
  Json submod = nullptr;
  if (in.op.size() <= kDefaultPairSweepCap) {
    if (const auto pair = ork_submodularity_violation(profile)) {
      const auto [x, y] = *pair;
      submod = {{"X", subset_json(x)},
                {"Y", subset_json(y)},
                {"lhs", profile.ork(x | y) + profile.ork(x & y)},
                {"rhs", profile.ork(x) + profile.ork(y)}};
    }
  }
  res.result = {{"matroid", m.exchange},
                {"consistent", m.consistent()},
                {"characterizations",
                 {{"exchange", m.exchange},
                  {"closed_eq_span", m.closed_eq_span},
                  {"closed_are_spans", m.closed_are_spans},
                  {"upper_closed_eq_uspan", m.upper_closed_eq_uspan},
                  {"upper_closed_are_uspans", m.upper_closed_are_uspans}}},
                {"exchange_witness", exchange},
                {"span_operator", span_json},
                {"ork_submodularity_violation", submod}};
  return res;
}

Outcome cmd_complemented(const Options& o) {
  const Loaded in = load(o.input, o.kind, true, false);
  Outcome res;
  res.op = operator_json(in);
  const RankProfile profile(in.op);
  if (!o.subset.empty()) {
    const Mask x = subset_arg(o.subset, in.op.size());
    const ComplementedStatus s = complemented_status(profile, x);
    res.result = {{"subset", subset_json(x)},
                  {"outer", s.outer},
                  {"inner", s.inner},
                  {"outer_has_complement", s.outer_has_complement},
                  {"outer_bases_extend", s.outer_bases_extend},
                  {"inner_via_outer", s.inner_via_outer},
                  {"inner_bases_extend", s.inner_bases_extend}};
    return res;
  }
  std::vector<Mask> not_outer, not_inner;
  for (Mask x = 0; x <= in.op.ground(); ++x) {
    if (profile.ork(x) != profile.urk(x)) not_outer.push_back(x);
    if (profile.irk(x) != profile.urk(x)) not_inner.push_back(x);
  }
  res.result = {{"outer_complemented", is_outer_complemented(profile)},
                {"outer_count", profile.op().ground() + 1 - not_outer.size()},
                {"not_outer", subsets_json(not_outer)},
                {"not_inner", subsets_json(not_inner)}};
  return res;
}

Outcome cmd_obstruction(const Options& o) {
  const Loaded in = load(o.input, o.kind, true, false);
  Outcome res;
  res.op = operator_json(in);
  const RankProfile profile(in.op);
  const auto witness = unsolvability_obstruction(profile);
  res.result = {{"obstruction", witness ? subset_json(*witness) : Json(nullptr)},
                {"outer_complemented", is_outer_complemented(profile)},
                {"verdict", span_verdict_name(span_operator(profile).verdict)}};
  return res;
}

Outcome cmd_shannon(const Options& o) {
  const Loaded in = load(o.input, o.kind, true, false);
  Outcome res;
  res.op = operator_json(in);
  if (o.pinch) {
    if (!in.tree) throw UsageError("--pinch needs a tree input");
    const DensityPinch p = density_pinch(*in.tree, in.op);
    res.result = {{"lower", rational_json(p.lower)},
                  {"upper", rational_json(p.upper)},
                  {"coding_valid", p.coding_valid},
                  {"pinched", p.pinched},
                  {"family_size", p.family_size}};
    if (p.pinched) res.result["value"] = rational_json(p.lower);
    return res;
  }
  ShannonOptions so;
  so.mode = o.mode == "full" ? ShannonMode::kFull : ShannonMode::kReduced;
  so.lexicographic_witness = o.witness;
  const ShannonResult r = shannon_entropy(in.op, so);
  res.result = {{"value", rational_json(r.value)},
                {"mode", shannon_mode_name(r.mode)},
                {"closed_sets", r.closed.size()},
                {"variables", r.variables},
                {"rows", r.rows},
                {"separation_rounds", r.separation_rounds},
                {"pivots", r.pivots}};
  if (o.witness) {
    Json w = Json::array();
    for (std::size_t i = 0; i < r.closed.size(); ++i) {
      w.push_back({{"subset", subset_json(r.closed[i])}, {"value", rational_json(r.witness[i])}});
    }
    res.result["witness"] = w;
  }
  return res;
}

Json coding_json(const CodingFunction& f) {
  Json parts = Json::array();
  for (const Partition& p : f.parts) parts.push_back(p.rgs());
  return {{"q", f.q}, {"r", f.r}, {"parts", parts}};
}

Outcome cmd_solve(const Options& o) {
  const Loaded in = load(o.input, o.kind, true, false);
  if (o.alphabet < 2) throw UsageError("--alphabet must be at least 2");
  Outcome res;
  res.op = operator_json(in);
  SolveOptions so;
  if (o.budget > 0) so.budget = o.budget;
  so.threads = o.threads;
  so.collect_solutions = o.chain;
  const SolveResult s = solve_exhaustive(in.op, o.alphabet, so);
  res.result = {{"q", o.alphabet},
                {"best", entropy_json(s.best)},
                {"best_f", s.best_f ? coding_json(*s.best_f) : Json(nullptr)},
                {"solvable", s.best_f && is_solution(*s.best_f)},
                {"complete", s.complete},
                {"budget_exhausted", s.budget_exhausted},
                {"nodes", s.nodes},
                {"search_space", s.search_space}};
  if (o.chain) {
    const RankProfile profile(in.op);
    std::vector<CodingFunction> checked = s.solutions;
    if (checked.empty() && s.best_f) checked.push_back(*s.best_f);
    Json failure = nullptr;
    for (const CodingFunction& f : checked) {
      const std::vector<Entropy> table = entropy_table(f);
      for (Mask x = 0; x <= in.op.ground() && failure.is_null(); ++x) {
        const CodingRankBounds b = coding_rank_bounds(f, table, profile, x);
        if (!b.chain_holds) {
          failure = {{"f", coding_json(f)},
                     {"subset", subset_json(x)},
                     {"lower", entropy_json(b.lower)},
                     {"lrk_f_closure", entropy_json(b.lrk_f_closure)},
                     {"urk_f", entropy_json(b.urk_f)},
                     {"h", entropy_json(b.h)},
                     {"ork", b.ork}};
        }
      }
    }
    res.result["chain"] = {{"functions", checked.size()},
                           {"holds", failure.is_null()},
                           {"failure", failure}};
  }
  if (s.budget_exhausted) {
    res.status = "budget_exceeded";
    res.code = kExitBudget;
  }
  return res;
}

Outcome cmd_construct(const Options& o) {
  const std::vector<std::string>& a = o.construct_args;
  auto need = [&](std::size_t count, const char* usage) {
    if (a.size() != count + 1) throw UsageError(std::string("usage: construct ") + usage);
  };
  const std::string& family = a.at(0);
  Outcome res;
  Loaded made;
  std::string text;
  if (family == "uniform") {
    need(2, "uniform R N");
    const int r = int_arg(a[1], "R"), n = int_arg(a[2], "N");
    made.op = uniform(r, n);
    text = format_closure_table(made.op);
  } else if (family == "chain") {
    need(1, "chain N");
    made.op = chain(int_arg(a[1], "N"));
    text = format_closure_table(made.op);
  } else if (family == "tree") {
    need(2, "tree R H");
    const int r = int_arg(a[1], "R");
    BigRational h;
    try {
      h = BigRational::parse(a[2]);
    } catch (const ParseError& e) {
      throw UsageError(std::string("H: ") + e.what());
    }
    auto [op, spec] = density_tree(r, h);
    made.op = op;
    made.tree = std::move(spec);
    text = format_tree_file(r, h);
  } else if (family == "cycle" || family == "dicycle" || family == "complete" ||
             family == "loops") {
    need(1, "cycle|dicycle|complete|loops N");
    const int n = int_arg(a[1], "N");
    const Digraph d = family == "cycle"     ? undirected_cycle(n)
                      : family == "dicycle" ? directed_cycle(n)
                      : family == "complete" ? complete_digraph(n)
                                             : all_loops(n);
    made.op = from_digraph(d);
    text = format_digraph(d);
  } else if (family == "random") {
    need(1, "random N");
    made.op = random_moore(int_arg(a[1], "N"), o.seed);
    text = format_closure_table(made.op);
  } else if (family == "randomset") {
    need(1, "randomset N");
    const SetOperator s = random_set_operator(int_arg(a[1], "N"), o.seed);
    made.setop = s;
    made.op = ClosureOperator(s.size(), s.table(), s.label());
    text = format_setop_table(s);
  } else {
    throw UsageError("unknown family \"" + family + "\"");
  }
  res.op = operator_json(made);
  res.result = {{"family", family}};
  if (o.out.empty()) res.result["file"] = text;
  res.artifact = text;
  return res;
}

UnionKind union_kind(const std::string& name) {
  if (name == "disjoint") return UnionKind::kDisjoint;
  if (name == "uni") return UnionKind::kUnidirectional;
  return UnionKind::kBidirectional;
}

Outcome cmd_combine(const Options& o) {
  if (o.files.size() != 2) throw UsageError("combine needs FILE1 FILE2");
  const Loaded a = load(o.files[0], o.kind, true, false);
  const Loaded b = load(o.files[1], o.kind, true, false);
  const UnionKind kind = union_kind(o.op_kind);
  const ClosureOperator op = union_combine(a.op, b.op, kind);
  Outcome res;
  res.op = operator_json(Loaded{op, std::nullopt, std::nullopt});
  res.result = {{"op", union_kind_name(kind)}, {"n1", a.op.size()}, {"n2", b.op.size()}};
  if (o.shannon) {
    const BigRational s1 = shannon_entropy(a.op).value;
    const BigRational s2 = shannon_entropy(b.op).value;
    const BigRational s = shannon_entropy(op).value;
    const bool additive = kind != UnionKind::kBidirectional;
    const BigRational bound = additive ? s1 + s2
                                       : std::min(s1 + BigRational(b.op.size()),
                                                  s2 + BigRational(a.op.size()));
    res.result["shannon"] = {
        {"first", rational_json(s1)},
        {"second", rational_json(s2)},
        {"union", rational_json(s)},
        {"law", additive ? "SE = SE1 + SE2" : "SE <= min(SE1 + n2, SE2 + n1)"},
        {"bound", rational_json(bound)},
        {"holds", additive ? s == bound : s <= bound}};
  }
  const std::string text = format_closure_table(op);
  if (o.out.empty()) res.result["file"] = text;
  res.artifact = text;
  return res;
}

Outcome cmd_reduce(const Options& o) {
  const Loaded in = load(o.input, o.kind, true, true);
  const SetOperator a = in.setop ? *in.setop : SetOperator::of(in.op);
  const Reduction red = reduce_to_closure(a);
  Outcome res;
  res.op = {{"n", a.size()}, {"label", a.label()}, {"setop", in.setop.has_value()}};
  std::vector<int> components = red.trace.component;
  std::sort(components.begin(), components.end());
  const auto distinct = std::unique(components.begin(), components.end()) - components.begin();
  const ValidationReport report = validate_closure(red.closure);
  res.result = {{"closure_valid", report.valid},
                {"rank", report.valid ? Json(rank_of(red.closure)) : Json(nullptr)},
                {"components", distinct},
                {"iterations", red.trace.iterations},
                {"union_of_images_not_extensive",
                 red.trace.union_of_images_not_extensive
                     ? subset_json(*red.trace.union_of_images_not_extensive)
                     : Json(nullptr)}};
  if (!o.equivalence.empty()) {
    EnumerateOptions eo;
    if (o.budget > 0) eo.budget = o.budget;
    const int q = o.equivalence[0], m = o.equivalence[1];
    res.result["equivalence"] = {
        {"q", q}, {"m", m},
        {"equivalent", operators_equivalent(a, SetOperator::of(red.closure), q, m, eo)}};
  }
  const std::string text = format_closure_table(red.closure);
  if (o.out.empty()) res.result["file"] = text;
  res.artifact = text;
  return res;
}

struct ErrorKind {
  const char* kind;
  int code;
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closure operators: ranks, matroid tests, Shannon entropy and reductions",
               "closlab"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--input", o.input, "Operator file");
  app.add_option("--kind", o.kind, "Input format; detected from the header when omitted")
      ->check(CLI::IsMember({"digraph", "table", "tree"}));
  app.add_option("--out", o.out,
                 "construct/combine/reduce: operator file; otherwise the report");
  app.add_option("--seed", o.seed, "Seed for random constructions");
  app.add_option("--threads", o.threads, "Worker threads for solve")->check(CLI::Range(1, 256));

  auto* validate = app.add_subcommand("validate", "Check the closure axioms");
  validate->add_flag("--all", o.all_witnesses, "Report every witness");
  auto* ranks = app.add_subcommand("ranks", "Outer, inner, lower and upper ranks");
  ranks->add_option("--subset", o.subset, "A subset such as \"{1,2}\"");
  app.add_subcommand("flats", "Closed sets, flats and upper flats");
  app.add_subcommand("matroid", "Matroid characterizations and the span operator");
  auto* complemented = app.add_subcommand("complemented", "Complemented subsets");
  complemented->add_option("--subset", o.subset, "Detail for one subset");
  app.add_subcommand("obstruction", "Unsolvability obstruction");
  auto* shannon = app.add_subcommand("shannon", "Shannon entropy by exact LP");
  shannon->add_option("--mode", o.mode)->check(CLI::IsMember({"reduced", "full"}));
  shannon->add_flag("--pinch", o.pinch, "Tree input: density coding against the relaxation");
  shannon->add_flag("--witness", o.witness, "Include the optimal point");
  auto* solve = app.add_subcommand("solve", "Exhaustive coding-function search");
  solve->add_option("--alphabet", o.alphabet, "Alphabet size q")->required();
  solve->add_option("--budget", o.budget, "Search node budget");
  solve->add_flag("--chain", o.chain, "Check the rank bound chain on every solution");
  auto* construct = app.add_subcommand("construct", "Build an operator file");
  construct
      ->add_option("family", o.construct_args,
                   "uniform R N | chain N | tree R H | cycle N | dicycle N | complete N | "
                   "loops N | random N | randomset N")
      ->required();
  auto* combine = app.add_subcommand("combine", "Union of two operators");
  combine->add_option("--op", o.op_kind)
      ->required()
      ->check(CLI::IsMember({"disjoint", "uni", "bi"}));
  combine->add_option("files", o.files, "FILE1 FILE2")->required()->expected(2);
  combine->add_flag("--shannon", o.shannon, "Check the union law for Shannon entropy");
  auto* reduce = app.add_subcommand("reduce", "Reduce a set operator to a closure operator");
  reduce->add_option("--equivalence", o.equivalence, "q m: compare coding functions")
      ->expected(2);
  reduce->add_option("--budget", o.budget, "Enumeration budget for --equivalence");

  Json report;
  report["command"] = args.empty() ? "" : args.front();
  report["argv"] = args;
  Outcome outcome;
  std::optional<ErrorKind> failure;
  std::string message;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    const std::string name = app.get_subcommands().front()->get_name();
    report["command"] = name;
    if (name == "validate") outcome = cmd_validate(o);
    else if (name == "ranks") outcome = cmd_ranks(o);
    else if (name == "flats") outcome = cmd_flats(o);
    else if (name == "matroid") outcome = cmd_matroid(o);
    else if (name == "complemented") outcome = cmd_complemented(o);
    else if (name == "obstruction") outcome = cmd_obstruction(o);
    else if (name == "shannon") outcome = cmd_shannon(o);
    else if (name == "solve") outcome = cmd_solve(o);
    else if (name == "construct") outcome = cmd_construct(o);
    else if (name == "combine") outcome = cmd_combine(o);
    else outcome = cmd_reduce(o);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    failure = ErrorKind{"usage", kExitInput};
    message = e.what();
  } catch (const UsageError& e) {
    failure = ErrorKind{"usage", kExitInput};
    message = e.what();
  } catch (const ParseError& e) {
    failure = ErrorKind{"parse", kExitInput};
    message = e.what();
  } catch (const ValidationError& e) {
    failure = ErrorKind{"validation", kExitInput};
    message = e.what();
  } catch (const std::invalid_argument& e) {
    failure = ErrorKind{"usage", kExitInput};
    message = e.what();
  } catch (const BudgetExceeded& e) {
    failure = ErrorKind{"budget", kExitBudget};
    message = e.what();
  } catch (const SizeLimitError& e) {
    failure = ErrorKind{"size_limit", kExitBudget};
    message = e.what();
  } catch (const std::exception& e) {
    failure = ErrorKind{"internal", kExitInternal};
    message = e.what();
  }

  int code = outcome.code;
  if (failure) {
    report["operator"] = nullptr;
    report["result"] = nullptr;
    report["status"] = "error";
    report["error"] = {{"kind", failure->kind}, {"message", message}};
    err << "closlab: " << message << '\n';
    code = failure->code;
  } else {
    report["operator"] = outcome.op;
    report["result"] = outcome.result;
    report["status"] = outcome.status;
    report["error"] = nullptr;
  }

  const std::string text = report.dump(2) + "\n";
  const bool writes_artifact = outcome.artifact.has_value();
  try {
    if (!o.out.empty() && !failure && writes_artifact) {
      write_file(o.out, *outcome.artifact);
      out << text;
    } else if (!o.out.empty() && !writes_artifact) {
      write_file(o.out, text);
    } else {
      out << text;
    }
  } catch (const UsageError& e) {
    err << "closlab: " << e.what() << '\n';
    out << text;
    return kExitInput;
  }
  return code;
}

}  // namespace closlab
