#include "msk/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <utility>

#include "msk/checks.hpp"
#include "msk/crofoot.hpp"
#include "msk/zerosym.hpp"

namespace msk {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

[[noreturn]] void schema_fail(const std::string& msg) {
  throw SchemaError("scenario: " + msg);
}

bool is_pow2(int n) { return n >= 2 && (n & (n - 1)) == 0; }

const std::set<std::string>& known_tasks() {
  static const std::set<std::string> k{"basis", "tto",      "crofoot",
                                       "zero",  "dim",      "selftest"};
  return k;
}

double tol_of(const std::map<std::string, double>& tol, const std::string& key,
              double fallback) {
  const auto it = tol.find(key);
  return it == tol.end() ? fallback : it->second;
}

Json finding_json(const Finding& f) { return finding_to_json(f); }

}  // namespace

Scenario parse_scenario(const std::string& text) {
  const Json j = Json::parse(text);  // parse_error carries line/column
  if (!j.is_object()) schema_fail("root must be an object");
  static const std::set<std::string> keys{"seed",   "grid",  "d",
                                          "theta1", "theta2", "symbol",
                                          "W1",     "W2",    "tasks",
                                          "tolerances"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) schema_fail("unknown field \"" + it.key() + "\"");

  Scenario sc;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer())
      schema_fail("\"seed\" must be an integer");
    sc.seed = j.at("seed").get<std::uint64_t>();
    sc.seed_given = true;
  }
  if (j.contains("grid")) {
    if (!j.at("grid").is_number_integer())
      schema_fail("\"grid\" must be an integer");
    sc.grid = j.at("grid").get<int>();
    if (!is_pow2(sc.grid) || sc.grid < 16 || sc.grid > (1 << 20))
      schema_fail("\"grid\" must be a power of two in [16, 2^20]");
  }
  if (j.contains("d")) {
    if (!j.at("d").is_number_integer() || j.at("d").get<int>() < 1)
      schema_fail("\"d\" must be a positive integer");
    sc.d = j.at("d").get<int>();
  }
  for (const char* key : {"theta1", "theta2", "symbol", "W1", "W2"})
    if (j.contains(key) && !j.at(key).is_object())
      schema_fail(std::string("\"") + key + "\" must be an object");
  if (j.contains("theta1")) sc.theta1 = j.at("theta1");
  if (j.contains("theta2")) sc.theta2 = j.at("theta2");
  if (j.contains("symbol")) sc.symbol = j.at("symbol");
  if (j.contains("W1")) sc.w1 = j.at("W1");
  if (j.contains("W2")) sc.w2 = j.at("W2");

  if (!j.contains("tasks") || !j.at("tasks").is_array() || j.at("tasks").empty())
    schema_fail("\"tasks\" must be a nonempty array");
  for (const Json& t : j.at("tasks")) {
    if (!t.is_string() || !known_tasks().count(t.get<std::string>()))
      schema_fail("unknown task " + t.dump());
    sc.tasks.push_back(t.get<std::string>());
  }

  if (j.contains("tolerances")) {
    if (!j.at("tolerances").is_object())
      schema_fail("\"tolerances\" must be an object");
    for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end();
         ++it) {
      if (!it.value().is_number())
        schema_fail("tolerance \"" + it.key() + "\" must be a number");
      sc.tolerances[it.key()] = it.value().get<double>();
    }
  }

  for (const std::string& task : sc.tasks) {
    if (task == "selftest") continue;
    if (sc.theta1.is_null())
      schema_fail("task \"" + task + "\" needs \"theta1\"");
    if ((task == "tto" || task == "zero") && sc.symbol.is_null())
      schema_fail("task \"" + task + "\" needs \"symbol\"");
  }
  return sc;
}

namespace {

// Objects shared by the tasks of one scenario run.
struct TaskContext {
  std::uint64_t seed = 0;
  int grid = 0;
  bool has_theta = false;
  bool has_theta2 = false;  // distinct theta2 given in the file
  bool has_phi = false;
  InnerFn theta1, theta2;
  ModelSpaceBasis b1, b2;
  CircleFn phi;
  CMat w1, w2;
  std::map<std::string, double> tol;
};

TaskContext make_context(const Scenario& sc, const RunOptions& opt) {
  TaskContext cx;
  cx.seed = opt.seed_override ? *opt.seed_override
                              : (sc.seed_given ? sc.seed : opt.default_seed);
  cx.grid = opt.grid_override.value_or(sc.grid);
  cx.tol = sc.tolerances;
  for (const auto& [k, v] : opt.tol_overrides) cx.tol[k] = v;

  const bool need_theta =
      std::any_of(sc.tasks.begin(), sc.tasks.end(),
                  [](const std::string& t) { return t != "selftest"; });
  if (!need_theta) return cx;

  cx.theta1 = inner_from_spec(sc.theta1, cx.grid);
  const int d = cx.theta1.dim();
  if (sc.d && *sc.d != d)
    schema_fail("\"d\" disagrees with the theta1 dimension");
  cx.has_theta = true;
  cx.has_theta2 = !sc.theta2.is_null();
  cx.theta2 = cx.has_theta2 ? inner_from_spec(sc.theta2, cx.grid) : cx.theta1;
  if (cx.theta2.dim() != d)
    schema_fail("theta1 and theta2 dimensions disagree");
  cx.b1 = basis(cx.theta1);
  cx.b2 = basis(cx.theta2);

  if (!sc.symbol.is_null()) {
    Rng rng(derive_seed(cx.seed, 0x73796DULL));
    cx.phi = symbol_from_spec(sc.symbol, d, cx.grid, rng);
    cx.has_phi = true;
  }
  cx.w1 = sc.w1.is_null() ? CMat(CMat::Zero(d, d)) : mat_from_json(sc.w1);
  cx.w2 = sc.w2.is_null() ? CMat(CMat::Zero(d, d)) : mat_from_json(sc.w2);
  if (cx.w1.rows() != d || cx.w1.cols() != d || cx.w2.rows() != d ||
      cx.w2.cols() != d)
    schema_fail("W1/W2 must be d x d matrices");
  return cx;
}

std::string instance_digest(const TaskContext& cx) {
  if (!cx.has_theta) return "selftest";
  std::string s = symbol_digest(cx.theta1.fn());
  s += ":" + symbol_digest(cx.theta2.fn());
  if (cx.has_phi) s += ":" + symbol_digest(cx.phi);
  return s;
}

}  // namespace

int run_scenario(const Scenario& sc, const RunOptions& opt,
                 std::ostream& out) {
  const TaskContext cx = make_context(sc, opt);
  bool any_fail = false;

  for (const std::string& task : sc.tasks) {
    const auto t0 = Clock::now();
    Json metrics = Json::object();
    Json findings = Json::array();
    std::string verdict = "pass";
    std::string error;

    try {
      if (task == "basis") {
        const double gate = tol_of(cx.tol, "basis", 1e-8);
        metrics["dim1"] = cx.b1.dim();
        metrics["gram1"] = cx.b1.gram_defect();
        metrics["member1"] = cx.b1.membership_defect();
        double worst = std::max(cx.b1.gram_defect(), cx.b1.membership_defect());
        if (cx.has_theta2) {
          metrics["dim2"] = cx.b2.dim();
          metrics["gram2"] = cx.b2.gram_defect();
          metrics["member2"] = cx.b2.membership_defect();
          worst = std::max({worst, cx.b2.gram_defect(),
                            cx.b2.membership_defect()});
        }
        if (worst > gate) verdict = "fail";
      } else if (task == "tto") {
        const TTOMatrix t = build(cx.b1, cx.b2, cx.phi);
        metrics["rows"] = static_cast<int>(t.mat.rows());
        metrics["cols"] = static_cast<int>(t.mat.cols());
        metrics["op_norm"] = operator_norm(t.mat);
        metrics["grid_tol"] = t.grid_tol;
        const double adj = adjoint_pair_check(cx.b1, cx.b2, cx.phi);
        metrics["adjoint_defect"] = adj;
        if (adj > tol_of(cx.tol, "adjoint", 1e-9)) verdict = "fail";
      } else if (task == "crofoot") {
        const InnerFn t1p = crofoot_inner(cx.theta1, cx.w1);
        const ModelSpaceBasis b1p = basis(t1p);
        const CrofootPair pair = transform(cx.b1, b1p, cx.w1);
        metrics["unitarity"] = pair.unitarity_defect;
        Rng kr(derive_seed(cx.seed, 0x63726FULL));
        double kw = 0.0;
        for (int t = 0; t < 5; ++t) {
          const double r = kr.uniform(0.0, 0.7);
          const Complex dir = kr.unit_complex();
          CVec y(cx.theta1.dim());
          for (int q = 0; q < cx.theta1.dim(); ++q) y(q) = kr.gaussian();
          y.normalize();
          kw = std::max(kw, kernel_action_defect(pair, r * dir, y));
        }
        metrics["kernel_action"] = kw;
        metrics["purity_image"] = t1p.purity();
        if (pair.unitarity_defect > tol_of(cx.tol, "crofoot", 1e-7) ||
            kw > tol_of(cx.tol, "kernel", 1e-8))
          verdict = "fail";
      } else if (task == "zero") {
        const ZeroReport rep = zero_equivalence_check(cx.phi, cx.b1, cx.b2);
        metrics["op_norm"] = rep.op_norm;
        metrics["sym_residual"] = rep.sym_residual;
        metrics["scale"] = rep.scale;
        metrics["op_zero"] = rep.op_zero ? 1.0 : 0.0;
        metrics["sym_zero"] = rep.sym_zero ? 1.0 : 0.0;
        if (!rep.consistent) {
          verdict = "finding";
          findings.push_back(finding_json(
              Finding{"zero_equivalence_inconsistent", cx.seed,
                      rep.op_norm / rep.scale, rep.sym_residual / rep.scale,
                      rep.tol_op, "differs"}));
        }
      } else if (task == "dim") {
        const DimReport rep = tto_space_dim(cx.theta1, cx.theta2);
        metrics["computed"] = rep.computed;
        metrics["closed_form"] = rep.closed_form;
        metrics["m"] = rep.m;
        metrics["n"] = rep.n;
        metrics["d"] = rep.d;
        metrics["saturated"] = rep.saturated ? 1.0 : 0.0;
        if (rep.computed != rep.closed_form)
          findings.push_back(finding_json(Finding{
              "dimension_closed_form", cx.seed,
              static_cast<double>(rep.computed),
              static_cast<double>(rep.closed_form), 0.0, "differs"}));
        if (!rep.saturated) verdict = "fail";
      } else {  // selftest
        checks::Params sp;
        sp.base_seed = cx.seed;
        sp.grid = 512;
        sp.instances = 5;
        sp.max_dim = 2;
        sp.quick = true;
        const auto outcomes = checks::module_invariants(sp);
        int failed = 0;
        for (const checks::Outcome& o : outcomes) {
          if (!o.pass) {
            ++failed;
            findings.push_back(finding_json(Finding{
                "invariant:" + o.name, cx.seed, o.worst, o.tolerance, o.tolerance,
                "differs"}));
          }
        }
        metrics["passed"] = static_cast<int>(outcomes.size()) - failed;
        metrics["failed"] = failed;
        if (failed > 0) verdict = "fail";
      }
    } catch (const std::exception& e) {
      verdict = "fail";
      error = e.what();
    }

    Json rec;
    rec["schema"] = "msk-report/1";
    rec["task"] = task;
    rec["instance"] = Json{{"seed", cx.seed}, {"spec", instance_digest(cx)}};
    rec["metrics"] = std::move(metrics);
    rec["findings"] = std::move(findings);
    rec["verdict"] = verdict;
    if (!error.empty()) rec["error"] = error;
    rec["runtime_ms"] = ms_since(t0);
    out << rec.dump() << "\n";
    if (verdict == "fail") any_fail = true;
  }
  return any_fail ? 1 : 0;
}

int run_selftest(bool quick, std::uint64_t seed, std::ostream& out,
                 std::ostream* jsonl, bool quiet) {
  checks::Params p;
  p.base_seed = seed;
  p.quick = quick;
  if (quick) {
    p.grid = 512;
    p.instances = 5;
    p.max_dim = 2;
  } else {
    p.grid = 1024;
    p.instances = 20;
    p.max_dim = 3;
  }
  const auto outcomes = checks::module_invariants(p);

  int failed = 0;
  if (!quiet) {
    out << std::left << std::setw(34) << "invariant" << std::setw(8) << "status"
        << std::setw(14) << "worst" << std::setw(14) << "tolerance"
        << std::setw(8) << "cases" << "ms\n";
  }
  for (const checks::Outcome& o : outcomes) {
    if (!o.pass) ++failed;
    if (!quiet) {
      out << std::left << std::setw(34) << o.name << std::setw(8)
          << (o.pass ? "pass" : "FAIL") << std::setw(14) << std::scientific
          << std::setprecision(3) << o.worst << std::setw(14) << o.tolerance
          << std::defaultfloat << std::setw(8) << o.cases << std::fixed
          << std::setprecision(0) << o.runtime_ms << std::defaultfloat << "\n";
      if (!o.note.empty()) out << "    note: " << o.note << "\n";
    }
    if (jsonl) {
      Json rec;
      rec["schema"] = "msk-report/1";
      rec["task"] = "selftest:" + o.name;
      rec["instance"] = Json{{"seed", seed}, {"spec", "selftest"}};
      rec["metrics"] = Json{{"worst", o.worst},
                            {"tolerance", o.tolerance},
                            {"cases", o.cases}};
      Json fnd = Json::array();
      for (const Finding& f : o.findings) fnd.push_back(finding_json(f));
      rec["findings"] = std::move(fnd);
      rec["verdict"] = o.pass ? "pass" : "fail";
      if (!o.note.empty()) rec["error"] = o.note;
      rec["runtime_ms"] = o.runtime_ms;
      *jsonl << rec.dump() << "\n";
    }
  }
  if (!quiet)
    out << (failed == 0 ? "all invariants passed"
                        : std::to_string(failed) + " invariant(s) FAILED")
        << " (" << outcomes.size() << " run)\n";
  return failed == 0 ? 0 : 1;
}

int run_dim(const Json& theta1_spec, const Json& theta2_spec, int grid,
            std::ostream& out) {
  const auto t0 = Clock::now();
  const InnerFn th1 = inner_from_spec(theta1_spec, grid);
  const InnerFn th2 = inner_from_spec(theta2_spec, grid);
  const DimReport rep = tto_space_dim(th1, th2);
  Json rec;
  rec["schema"] = "msk-report/1";
  rec["task"] = "dim";
  rec["instance"] = Json{
      {"seed", 0},
      {"spec", symbol_digest(th1.fn()) + ":" + symbol_digest(th2.fn())}};
  rec["metrics"] = Json{{"computed", rep.computed},
                        {"closed_form", rep.closed_form},
                        {"m", rep.m},
                        {"n", rep.n},
                        {"d", rep.d},
                        {"saturated", rep.saturated ? 1.0 : 0.0}};
  Json findings = Json::array();
  if (rep.computed != rep.closed_form)
    findings.push_back(finding_json(Finding{
        "dimension_closed_form", 0, static_cast<double>(rep.computed),
        static_cast<double>(rep.closed_form), 0.0, "differs"}));
  rec["findings"] = std::move(findings);
  rec["verdict"] = rep.saturated ? "pass" : "fail";
  rec["runtime_ms"] = ms_since(t0);
  out << rec.dump() << "\n";
  return rep.saturated ? 0 : 1;
}

std::string schema_text() {
  return R"json({
  "scenario": {
    "type": "object",
    "fields": {
      "seed": "integer (optional; default MSK_SEED env or 20260819)",
      "grid": "integer power of two in [16, 2^20] (optional; default 1024)",
      "d": "positive integer (optional; cross-checked against theta1)",
      "theta1": "inner spec (required unless tasks == [selftest])",
      "theta2": "inner spec (optional; defaults to theta1)",
      "symbol": "symbol spec (required for tasks tto and zero)",
      "W1": "matrix {re, im} (optional; defaults to 0)",
      "W2": "matrix {re, im} (optional; defaults to 0)",
      "tasks": "nonempty array from [basis, tto, crofoot, zero, dim, selftest]",
      "tolerances": "object name -> number (optional)"
    },
    "inner spec": [
      {"type": "monomial", "n": "int >= 1", "d": "int >= 1"},
      {"type": "bp", "d": "int", "factors": [{"w": "[re, im], |w| <= 0.9", "P": "matrix"}]},
      {"type": "crofoot", "base": "inner spec", "W": "matrix, ||W|| < 1"}
    ],
    "symbol spec": [
      {"coeffs": [["k", "matrix"]]},
      {"random": {"degree": "int >= 0", "scale": "number (optional)"}}
    ],
    "matrix": {"re": "[[row-major reals]]", "im": "[[row-major reals]]"}
  },
  "report record (one JSON object per line)": {
    "schema": "msk-report/1",
    "task": "task name",
    "instance": {"seed": "integer", "spec": "digest string"},
    "metrics": "object name -> number",
    "findings": [{"check": "...", "instance_seed": 0, "lhs": 0.0, "rhs": 0.0, "tolerance": 0.0, "verdict": "agrees|differs"}],
    "verdict": "pass | fail | finding",
    "error": "exception text (only on task failure)",
    "runtime_ms": "number (varies run to run)"
  },
  "exit codes": {"0": "no fail verdicts", "1": "some fail verdict", "2": "schema or input error"}
})json";
}

}  // namespace msk
