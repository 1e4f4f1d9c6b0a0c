// Copyright 2026 The cbranch Authors
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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cbranch/branching.hpp"
#include "cbranch/classtypes.hpp"
#include "cbranch/error.hpp"
#include "cbranch/export.hpp"
#include "cbranch/groups.hpp"
#include "cbranch/symcount.hpp"

namespace {

using cbranch::Error;
using cbranch::ErrorCode;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitUnclassified = 3;
constexpr int kExitMismatch = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string family = "u";
  int n = 2;
  std::string q = "formal";
  int k = 1;
  long long max_order = cbranch::kDefaultGroupLimit;
  long long max_iterations = 1000000000;
  std::string format = "json";
  std::string output;
  int jobs = 0;
  bool quiet = false;

  cbranch::Family fam() const { return cbranch::parse_family(family); }
  bool formal() const { return q == "formal"; }
  long long q_value() const {
    if (formal()) throw UsageError("this command needs a numeric --q");
    try {
      size_t pos = 0;
      const long long v = std::stoll(q, &pos);
      if (pos != q.size()) throw UsageError("bad --q: " + q);
      return v;
    } catch (const std::logic_error&) {
      throw UsageError("bad --q: " + q);
    }
  }
  std::optional<long long> q_optional() const {
    if (formal()) return std::nullopt;
    return q_value();
  }
};

void add_group_options(CLI::App* app, RunConfig& cfg, bool with_q = true) {
  app->add_option("--family", cfg.family, "gl, u, sp, o+ or o-")->required();
  app->add_option("--n", cfg.n, "dimension")->required();
  if (with_q) app->add_option("--q", cfg.q, "odd prime power or 'formal'");
}

void add_output_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--format", cfg.format, "json, csv or pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  app->add_option("--output", cfg.output, "write to this file instead of stdout");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw UsageError("cannot write " + cfg.output);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string dump(const ordered_json& j) { return j.dump(2); }

// Flattens an array of flat objects.
std::string records_to_csv(const ordered_json& rows) {
  std::ostringstream os;
  if (rows.empty()) return "";
  bool first = true;
  for (const auto& [key, _] : rows.front().items()) {
    os << (first ? "" : ",") << key;
    first = false;
  }
  os << '\n';
  for (const auto& r : rows) {
    first = true;
    for (const auto& [key, v] : r.items()) {
      std::string cell = v.is_string() ? v.get<std::string>() : v.dump();
      if (cell.find_first_of(",\"") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : cell) {
          if (c == '"') quoted += '"';
          quoted += c;
        }
        cell = quoted + "\"";
      }
      os << (first ? "" : ",") << cell;
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

std::string records_to_pretty(const ordered_json& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    bool first = true;
    for (const auto& [key, v] : r.items()) {
      os << (first ? "" : "  ") << key << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

void emit_records(const RunConfig& cfg, const ordered_json& header, const ordered_json& rows) {
  if (cfg.format == "csv") return emit(cfg, records_to_csv(rows));
  if (cfg.format == "pretty") return emit(cfg, records_to_pretty(rows));
  ordered_json j = header;
  j["rows"] = rows;
  emit(cfg, dump(j));
}

ordered_json header(const RunConfig& cfg) {
  ordered_json j;
  j["schema"] = cbranch::kSchemaVersion;
  j["family"] = cbranch::family_name(cfg.fam());
  j["n"] = cfg.n;
  if (cfg.formal()) {
    j["q"] = "formal";
  } else {
    j["q"] = cfg.q_value();
  }
  return j;
}

ordered_json tuple_to_json(const std::vector<cbranch::Mat>& tuple) {
  ordered_json out = ordered_json::array();
  for (const auto& m : tuple) out.push_back(m.rows());
  return out;
}

std::vector<cbranch::Mat> parent_tuple(const cbranch::TypeLabel& label, long long q) {
  const auto params = cbranch::parameter_space(label, q);
  if (!params.empty()) return cbranch::canonical_representative(label, q, params.front());
  auto fallback = cbranch::fallback_reference_tuple(label, q);
  if (fallback.empty()) {
    throw Error(ErrorCode::kInvalidParams,
                "type " + label.name + " has no representative at q = " + std::to_string(q));
  }
  return fallback;
}

void progress_line(const RunConfig& cfg, const std::string& msg) {
  if (!cfg.quiet) std::cerr << msg << std::endl;
}

int cmd_catalog(const RunConfig& cfg) {
  const auto q = cfg.q_optional();
  ordered_json rows = ordered_json::array();
  for (const auto& e : cbranch::type_catalog(cfg.fam(), cfg.n)) {
    ordered_json r;
    r["type"] = e.label.name;
    if (q) {
      r["class_count"] = cbranch::integer_to_json(e.class_count.eval_integer(*q));
      r["centralizer_order"] = cbranch::integer_to_json(e.centralizer_order.eval_integer(*q));
    } else if (cfg.format == "json") {
      r["class_count"] = cbranch::poly_to_json(e.class_count);
      r["centralizer_order"] = cbranch::poly_to_json(e.centralizer_order);
    } else {
      r["class_count"] = e.class_count.to_string();
      r["centralizer_order"] = e.centralizer_order.to_string();
    }
    r["parent_only"] = e.parent_only;
    rows.push_back(r);
  }
  emit_records(cfg, header(cfg), rows);
  return kExitOk;
}

int cmd_classes(const RunConfig& cfg) {
  const long long q = cfg.q_value();
  const auto spec = cbranch::make_group_spec(cfg.fam(), cfg.n, q);
  const auto g = cbranch::enumerate_group(spec, cfg.max_order);
  cbranch::Classifier classifier(cfg.fam(), cfg.n, q);
  struct Row {
    int type_index;
    std::string type;
    cbranch::Mat rep;
    long long size;
    long long centralizer_order;
  };
  std::vector<Row> rows;
  for (const auto& c : cbranch::conjugacy_classes(g)) {
    const auto cls = classifier.classify_tuple(g, {c.representative});
    rows.push_back({cbranch::catalog_index(cfg.fam(), cfg.n, cls.label.name), cls.label.name,
                    c.representative, static_cast<long long>(c.members.size()),
                    c.centralizer_order});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.type_index != b.type_index ? a.type_index < b.type_index : a.rep < b.rep;
  });
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["type"] = r.type;
    j["representative"] = cfg.format == "json" ? ordered_json(r.rep.rows()) : ordered_json(r.rep.to_string());
    j["class_size"] = r.size;
    j["centralizer_order"] = r.centralizer_order;
    out.push_back(j);
  }
  ordered_json h = header(cfg);
  h["group_order"] = g.size();
  h["class_count"] = static_cast<long long>(rows.size());
  emit_records(cfg, h, out);
  return kExitOk;
}

int cmd_centralizer(const RunConfig& cfg, const std::string& type) {
  const long long q = cfg.q_value();
  const auto label = cbranch::make_label(cfg.fam(), cfg.n, type);
  const auto tuple = parent_tuple(label, q);
  cbranch::Classifier classifier(cfg.fam(), cfg.n, q);
  const auto z = cbranch::centralizer_local(classifier.spec(), tuple, cfg.max_iterations);
  const auto cls = classifier.classify_centralizer(z);
  ordered_json j = header(cfg);
  j["type"] = type;
  j["tuple"] = tuple_to_json(tuple);
  j["centralizer_order"] = z.size();
  j["abelian"] = z.is_abelian();
  j["centralizer_classes"] = static_cast<long long>(cbranch::conjugacy_classes(z).size());
  j["classified_as"] = cls.label.name;
  j["equivalent"] = cls.equivalent;
  if (cfg.format == "json") {
    emit(cfg, dump(j));
  } else {
    ordered_json rows = ordered_json::array();
    j.erase("tuple");
    j.erase("equivalent");
    rows.push_back(j);
    emit(cfg, cfg.format == "csv" ? records_to_csv(rows) : records_to_pretty(rows));
  }
  return kExitOk;
}

int cmd_branch(const RunConfig& cfg, const std::string& type) {
  const long long q = cfg.q_value();
  const auto label = cbranch::make_label(cfg.fam(), cfg.n, type);
  cbranch::Classifier classifier(cfg.fam(), cfg.n, q);
  const auto col = cbranch::branch_column(classifier, type, parent_tuple(label, q));
  const auto& cat = cbranch::type_catalog(cfg.fam(), cfg.n);
  ordered_json rows = ordered_json::array();
  for (size_t i = 0; i < cat.size(); ++i) {
    if (col.tally[i] == 0) continue;
    rows.push_back({{"branch", cat[i].label.name}, {"count", col.tally[i]}});
  }
  ordered_json h = header(cfg);
  h["parent"] = type;
  h["centralizer_order"] = col.centralizer_order;
  h["centralizer_classes"] = col.class_count;
  h["merges"] = col.merges;
  emit_records(cfg, h, rows);
  return kExitOk;
}

cbranch::EmpiricalOptions empirical_options(const RunConfig& cfg,
                                            const std::vector<std::string>& columns) {
  cbranch::EmpiricalOptions opts;
  opts.jobs = cfg.jobs;
  opts.columns = columns;
  if (!cfg.quiet) opts.progress = [](const std::string& m) { std::cerr << m << std::endl; };
  return opts;
}

void emit_matrix(const RunConfig& cfg, const cbranch::BranchingMatrix& b) {
  if (cfg.format == "csv") return emit(cfg, cbranch::matrix_to_csv(b));
  if (cfg.format == "pretty") return emit(cfg, cbranch::matrix_to_pretty(b));
  emit(cfg, dump(cbranch::matrix_to_json(b)));
}

std::string verify_pretty(const cbranch::VerifyReport& r) {
  std::ostringstream os;
  os << cbranch::family_name(r.family) << r.n << " q=" << r.q << ": "
     << (r.ok() ? "verified" : "MISMATCH") << ", " << r.verified_columns.size()
     << " columns match, " << r.vacuous_columns.size() << " vacuous\n";
  for (const auto& v : r.vacuous_columns) os << "  vacuous " << v << '\n';
  for (const auto& m : r.merges) {
    os << "  merged";
    for (const auto& l : m) os << ' ' << l;
    os << '\n';
  }
  for (const auto& e : r.errata_applied) {
    os << "  erratum " << e.row << '/' << e.column << ": " << e.printed << " -> " << e.corrected
       << '\n';
  }
  for (const auto& m : r.mismatches) {
    os << "  mismatch parent " << m.parent << " branch";
    for (const auto& l : m.branch) os << ' ' << l;
    os << ": expected " << m.expected << ", got " << m.got << '\n';
  }
  for (const auto& c : r.column_sum_failures) os << "  column sum fails " << c << '\n';
  return os.str();
}

int cmd_branching(const RunConfig& cfg, const std::string& mode, const std::string& variant,
                  const std::vector<std::string>& columns) {
  if (mode == "symbolic") {
    auto b = cbranch::branching_matrix_symbolic(
        cfg.fam(), cfg.n,
        variant == "printed" ? cbranch::TableVariant::kPrinted : cbranch::TableVariant::kCorrected);
    if (!cfg.formal()) b = b.at_q(cfg.q_value());
    for (const auto& e : cbranch::branching_errata(cfg.fam(), cfg.n)) {
      if (variant != "printed") {
        progress_line(cfg, "erratum applied " + e.row + "/" + e.column + ": " + e.printed +
                               " -> " + e.corrected);
      }
    }
    emit_matrix(cfg, b);
    return kExitOk;
  }
  const long long q = cfg.q_value();
  if (mode == "empirical") {
    const auto emp =
        cbranch::branching_matrix_empirical(cfg.fam(), cfg.n, q, empirical_options(cfg, columns));
    emit_matrix(cfg, emp.matrix);
    return kExitOk;
  }
  const auto sym = cbranch::branching_matrix_symbolic(cfg.fam(), cfg.n);
  const auto emp =
      cbranch::branching_matrix_empirical(cfg.fam(), cfg.n, q, empirical_options(cfg, columns));
  const auto report = cbranch::compare_branching(sym, emp);
  emit(cfg, cfg.format == "json" ? dump(cbranch::verify_report_to_json(report))
                                 : verify_pretty(report));
  return report.ok() ? kExitOk : kExitMismatch;
}

int cmd_count(const RunConfig& cfg, bool census) {
  if (cfg.k < 0) throw UsageError("--k must be >= 0");
  const auto formal = cbranch::branching_matrix_symbolic(cfg.fam(), cfg.n);
  ordered_json j = header(cfg);
  j["k"] = cfg.k;
  if (cfg.formal()) {
    if (census) throw UsageError("--census needs a numeric --q");
    const auto c = cbranch::simultaneous_classes(formal, cfg.k);
    j["c"] = cfg.format == "json" ? cbranch::poly_to_json(c) : ordered_json(c.to_string());
  } else {
    const long long q = cfg.q_value();
    const auto c = cbranch::simultaneous_classes(formal.at_q(q), cfg.k);
    const mpz_class order(static_cast<long>(cbranch::group_order(cfg.fam(), cfg.n, q)));
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), order.get_mpz_t(), cfg.k);
    const mpz_class cv = c.eval_integer(0);
    j["c"] = cbranch::integer_to_json(cv);
    j["group_order"] = cbranch::integer_to_json(order);
    j["cp_k"] = cfg.k + 1;
    j["cp"] = cbranch::rational_to_json(mpq_class(cv, power));
    if (census) {
      const auto g = cbranch::enumerate_group(cbranch::make_group_spec(cfg.fam(), cfg.n, q),
                                              cfg.max_order);
      const mpz_class cen = cbranch::census_simultaneous_classes(g, cfg.k);
      j["census"] = cbranch::integer_to_json(cen);
      j["census_agrees"] = cen == cv;
    }
  }
  if (cfg.format == "json") {
    emit(cfg, dump(j));
  } else {
    ordered_json rows = ordered_json::array({j});
    emit(cfg, cfg.format == "csv" ? records_to_csv(rows) : records_to_pretty(rows));
  }
  if (census && j.contains("census_agrees") && !j["census_agrees"].get<bool>()) return kExitMismatch;
  return kExitOk;
}

int cmd_cp(const RunConfig& cfg, bool lescot) {
  if (cfg.k < 2) throw UsageError("--k must be >= 2");
  const long long q = cfg.q_value();
  const auto b = cbranch::branching_matrix_symbolic(cfg.fam(), cfg.n).at_q(q);
  const mpz_class order(static_cast<long>(cbranch::group_order(cfg.fam(), cfg.n, q)));
  const mpq_class cp = cbranch::commuting_probability(b, order, cfg.k);
  ordered_json j = header(cfg);
  j["k"] = cfg.k;
  j["cp"] = cbranch::rational_to_json(cp);
  bool ok = true;
  if (lescot) {
    const auto g =
        cbranch::enumerate_group(cbranch::make_group_spec(cfg.fam(), cfg.n, q), cfg.max_order);
    const auto r = cbranch::lescot_consistency(g, b, cfg.k);
    j["via_recurrence"] = cbranch::rational_to_json(r.via_recurrence);
    j["via_census"] = cbranch::rational_to_json(r.via_census);
    j["agree"] = r.agree();
    ok = r.agree();
  }
  if (cfg.format == "json") {
    emit(cfg, dump(j));
  } else {
    ordered_json rows = ordered_json::array({j});
    emit(cfg, cfg.format == "csv" ? records_to_csv(rows) : records_to_pretty(rows));
  }
  return ok ? kExitOk : kExitMismatch;
}

int cmd_series(const RunConfig& cfg, int expand) {
  const auto b = cbranch::branching_matrix_symbolic(cfg.fam(), cfg.n);
  const auto s = cbranch::generating_series(b);
  ordered_json j = header(cfg);
  if (cfg.format == "json") {
    for (const auto& [k, v] : cbranch::series_to_json(s, expand).items()) j[k] = v;
    emit(cfg, dump(j));
  } else {
    emit(cfg, s.to_string());
  }
  return kExitOk;
}

int cmd_verify_all(RunConfig cfg) {
  struct Target {
    const char* family;
    int n;
    long long q;
  };
  const std::vector<Target> targets = {{"u", 2, 3},  {"u", 2, 5},  {"sp", 2, 3}, {"sp", 2, 5},
                                       {"sp", 2, 7}, {"gl", 2, 3}, {"gl", 2, 5}, {"u", 3, 3},
                                       {"sp", 4, 3}};
  ordered_json reports = ordered_json::array();
  std::string pretty;
  bool ok = true;
  for (const auto& t : targets) {
    cfg.family = t.family;
    cfg.n = t.n;
    cfg.q = std::to_string(t.q);
    progress_line(cfg, std::string("verify ") + t.family + std::to_string(t.n) +
                           " q=" + std::to_string(t.q));
    const auto r = cbranch::verify_branching(cfg.fam(), t.n, t.q, empirical_options(cfg, {}));
    ok = ok && r.ok();
    reports.push_back(cbranch::verify_report_to_json(r));
    pretty += verify_pretty(r);
  }
  if (cfg.format == "json") {
    ordered_json j;
    j["schema"] = cbranch::kSchemaVersion;
    j["ok"] = ok;
    j["reports"] = reports;
    emit(cfg, dump(j));
  } else {
    emit(cfg, pretty);
  }
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branching matrices and commuting-tuple counts for classical groups over F_q"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--jobs", cfg.jobs, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--max-order", cfg.max_order, "largest group to enumerate")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iterations", cfg.max_iterations, "largest candidate scan")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", cfg.quiet, "no progress on stderr");

  auto* catalog = app.add_subcommand("catalog", "type catalog with class counts and centralizer orders");
  add_group_options(catalog, cfg);
  add_output_options(catalog, cfg);

  auto* classes = app.add_subcommand("classes", "conjugacy classes with types");
  add_group_options(classes, cfg);
  add_output_options(classes, cfg);

  std::string type;
  auto* centralizer = app.add_subcommand("centralizer", "centralizer of a type representative");
  add_group_options(centralizer, cfg);
  add_output_options(centralizer, cfg);
  centralizer->add_option("--type", type, "type label")->required();

  auto* branch = app.add_subcommand("branch", "branches of one parent type");
  add_group_options(branch, cfg);
  add_output_options(branch, cfg);
  branch->add_option("--type", type, "parent type label")->required();

  std::string mode = "symbolic";
  std::string variant = "corrected";
  std::vector<std::string> columns;
  auto* branching = app.add_subcommand("branching", "branching matrix");
  add_group_options(branching, cfg);
  add_output_options(branching, cfg);
  branching->add_option("--mode", mode)->check(CLI::IsMember({"symbolic", "empirical", "verify"}));
  branching->add_option("--table", variant, "symbolic table: corrected or printed")
      ->check(CLI::IsMember({"corrected", "printed"}));
  branching->add_option("--columns", columns, "restrict to these parent types");

  bool census = false;
  auto* count = app.add_subcommand("count", "c_G(k), the number of simultaneous classes of k-tuples");
  add_group_options(count, cfg);
  add_output_options(count, cfg);
  count->add_option("--k", cfg.k)->required();
  count->add_flag("--census", census, "cross-check against the group itself (k <= 2)");

  bool lescot = false;
  auto* cp = app.add_subcommand("cp", "commuting probability cp_k");
  add_group_options(cp, cfg);
  add_output_options(cp, cfg);
  cp->add_option("--k", cfg.k)->required();
  cp->add_flag("--lescot", lescot, "also evaluate the centralizer recurrence and the census");

  int expand = 8;
  auto* series = app.add_subcommand("series", "generating function of c_G(k)");
  add_group_options(series, cfg, false);
  add_output_options(series, cfg);
  series->add_option("--expand", expand, "coefficients to list")->check(CLI::NonNegativeNumber);

  auto* verify_all = app.add_subcommand("verify-all", "verify every supported table at small q");
  add_output_options(verify_all, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*catalog) return cmd_catalog(cfg);
    if (*classes) return cmd_classes(cfg);
    if (*centralizer) return cmd_centralizer(cfg, type);
    if (*branch) return cmd_branch(cfg, type);
    if (*branching) return cmd_branching(cfg, mode, variant, columns);
    if (*count) return cmd_count(cfg, census);
    if (*cp) return cmd_cp(cfg, lescot);
    if (*series) return cmd_series(cfg, expand);
    if (*verify_all) return cmd_verify_all(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kUnclassifiedType:
        return kExitUnclassified;
      case ErrorCode::kUnsupportedFamily:
      case ErrorCode::kInvalidParams:
        return kExitUsage;
      default:
        return kExitResource;
    }
  }
  return kExitUsage;
}
