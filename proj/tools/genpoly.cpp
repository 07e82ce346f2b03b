// genpoly: command-line front end for the generalized-polynomial calculus and the recurrence harness.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "genpoly/calculus.hpp"
#include "genpoly/config.hpp"
#include "genpoly/dynamics.hpp"
#include "genpoly/errors.hpp"
#include "genpoly/parse.hpp"
#include "genpoly/pet.hpp"

using json = nlohmann::ordered_json;
using namespace genpoly;

namespace {

struct Window {
  long long lo = 0;
  long long hi = 0;
};

Window parse_window(const std::string& text) {
  auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw SyntaxError(0, "window lo:hi", text);
  try {
    return Window{std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw SyntaxError(0, "window lo:hi", text);
  }
}

// Splits on commas outside parentheses.
std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::vector<Expr> parse_all(const std::vector<std::string>& texts) {
  std::vector<Expr> out;
  for (const auto& t : texts) out.push_back(parse(t));
  return out;
}

json coefficient_json(const Coefficient& c) { return {{"symbolic", c.format()}, {"approx", c.approx()}}; }

json rational_json(const Rational& q) { return {{"exact", to_string(q)}, {"approx", q.get_d()}}; }

json strings(const std::vector<Expr>& exprs) {
  json a = json::array();
  for (const auto& e : exprs) a.push_back(pretty(e));
  return a;
}

json weight_json(const WeightVector& w) {
  json a = json::array();
  for (auto x : w) a.push_back(x);
  return a;
}

json check_json(const WindowCheck& w) {
  return {{"lo", w.lo}, {"hi", w.hi}, {"members", w.members}, {"nontrivial", w.nontrivial},
          {"violations", w.violations}};
}

json verdict_json(const Verdict& v) {
  return {{"verdict", to_string(v.kind)}, {"bound", v.bound}, {"witness", v.witness}, {"note", v.note}};
}

json window_report_json(const WindowReport& r) {
  return {{"lo", r.lo},
          {"hi", r.hi},
          {"count", r.members.size()},
          {"max_gap", r.max_gap},
          {"head_margin", r.head_margin},
          {"tail_margin", r.tail_margin},
          {"max_run", r.max_run},
          {"probe", r.probe},
          {"syndetic", verdict_json(r.syndetic)},
          {"thick", verdict_json(r.thick)},
          {"thickly_syndetic", verdict_json(r.thickly_syndetic)}};
}

SymbolicSystem parse_system(const std::string& text, std::uint64_t seed) {
  auto parts = std::vector<std::string>{};
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.empty()) throw SyntaxError(0, "system", text);
  if (parts[0] == "chacon" && parts.size() == 1) return SymbolicSystem::chacon();
  if (parts[0] == "full" && parts.size() <= 2) {
    return SymbolicSystem::full_shift(parts.size() == 2 ? static_cast<unsigned>(std::stoul(parts[1])) : 2, seed);
  }
  if (parts[0] == "rotation" && parts.size() >= 2 && parts.size() <= 3) {
    Rational x0 = parts.size() == 3 ? parse_rational(parts[2]) : Rational(0);
    return SymbolicSystem::rotation(parse_coefficient(parts[1]), x0);
  }
  throw SyntaxError(0, "chacon | full[:K] | rotation:ALPHA[:X0]", text);
}

// Subshifts take a word, rotations "center:radius".
OpenSetSpec parse_open_set(const SymbolicSystem& sys, const std::string& text) {
  if (sys.is_subshift()) return OpenSetSpec::cylinder(text);
  auto colon = text.find(':');
  if (colon == std::string::npos) throw SyntaxError(0, "arc center:radius", text);
  return OpenSetSpec::arc(parse_rational(text.substr(0, colon)), parse_rational(text.substr(colon + 1)));
}

std::string open_set_text(const SymbolicSystem& sys, const OpenSetSpec& s) {
  return sys.is_subshift() ? "[" + s.word + "]" : "arc(" + to_string(s.center) + ", " + to_string(s.radius) + ")";
}

ConstraintSet constraint_from(const std::vector<std::string>& exprs, const Rational& eps) {
  return ConstraintSet(eps, parse_all(exprs));
}

json constraint_json(const ConstraintSet& c) {
  json a = json::array();
  for (const auto& [g, eps] : c.constraints) a.push_back({{"expr", pretty(g)}, {"eps", to_string(eps)}});
  return a;
}

std::vector<SgpNormal> to_normal_system(const std::vector<Expr>& exprs) {
  std::vector<SgpNormal> out;
  for (const auto& e : exprs) out.push_back(normalize_to_sgp(e).h);
  return out;
}

class Emitter {
 public:
  explicit Emitter(const RunConfig& c) : config_(c) {}

  void emit(const std::string& command, json result, const std::string& csv, const std::string& text) const {
    if (config_.format == "csv") {
      std::cout << csv;
      return;
    }
    if (config_.format == "text") {
      std::cout << text;
      return;
    }
    json doc;
    doc["command"] = command;
    json cfg;
    for (const auto& [k, v] : config_.entries()) cfg[k] = v;
    doc["config"] = cfg;
    doc["result"] = std::move(result);
    std::cout << doc.dump(2) << "\n";
  }

 private:
  const RunConfig& config_;
};

int exit_code_for(const std::exception& e) {
  if (auto* g = dynamic_cast<const Error*>(&e)) return g->exit_code();
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"genpoly: generalized polynomials, their normal forms and recurrence along them"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string config_path;
  std::optional<unsigned> precision_cap;
  std::optional<std::string> threshold_text;
  std::optional<std::string> epsilon_text;
  std::optional<long long> window_cap;
  std::optional<long long> horizon;
  std::optional<std::string> format_flag;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--precision-cap", precision_cap, "precision cap in bits");
  app.add_option("--threshold", threshold_text, "N in a >> b");
  app.add_option("--default-eps", epsilon_text, "default eps for constraint sets");
  app.add_option("--window-cap", window_cap, "largest window width");
  app.add_option("--horizon", horizon, "subshift search horizon");
  app.add_option("--format", format_flag, "json | csv | text");
  app.add_option("--seed", seed, "seed (full-shift point)");
  app.add_option("--jobs", jobs, "worker threads");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression at n or over a range");
  std::string eval_expr;
  std::optional<long long> eval_n;
  std::optional<std::string> eval_range;
  eval_cmd->add_option("expr", eval_expr)->required();
  eval_cmd->add_option("--n", eval_n, "point");
  eval_cmd->add_option("--range", eval_range, "lo:hi");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "degree, A, weight vector and non-degeneracy of a system");
  std::string analyze_file;
  std::vector<std::string> analyze_exprs;
  analyze_cmd->add_option("file", analyze_file, "one expression per line");
  // one value per flag: CLI11 would otherwise read "[| ... |]" as an array literal
  analyze_cmd->add_option("--exprs", analyze_exprs, "';'-separated expressions, flag repeatable")
      ->delimiter(';')
      ->allow_extra_args(false);

  // normalize
  auto* normalize_cmd = app.add_subcommand("normalize", "reduce an integer-valued expression to normal form");
  std::string normalize_expr;
  std::optional<std::string> normalize_check;
  normalize_cmd->add_option("expr", normalize_expr)->required();
  normalize_cmd->add_option("--check", normalize_check, "lo:hi window for p = h on C");

  // derive
  auto* derive_cmd = app.add_subcommand("derive", "derivative D(h, m) with its certification set");
  std::string derive_expr;
  std::string derive_m;
  std::optional<std::string> derive_check;
  derive_cmd->add_option("expr", derive_expr)->required();
  derive_cmd->add_option("--m", derive_m)->required();
  derive_cmd->add_option("--check", derive_check, "lo:hi window for the derivative identity");

  // qij
  auto* qij_cmd = app.add_subcommand("qij", "one PET step: q_ij system, descent and separation");
  std::string qij_polys;
  std::optional<std::string> qij_shifts;
  std::size_t qij_count = 1;
  std::optional<std::string> qij_prescale;
  qij_cmd->add_option("--polys", qij_polys, "comma-separated system")->required();
  qij_cmd->add_option("--shifts", qij_shifts, "comma-separated k_0..k_l (chosen automatically if absent)");
  qij_cmd->add_option("--count", qij_count, "number of shifts to choose");
  qij_cmd->add_option("--prescale", qij_prescale, "replace n by k n first");

  // sets
  auto* sets_cmd = app.add_subcommand("sets", "constraint sets C(eps, g_1..g_t)");
  sets_cmd->require_subcommand(1);
  auto* scan_cmd = sets_cmd->add_subcommand("scan", "members of C in a window");
  auto* classify_cmd = sets_cmd->add_subcommand("classify", "gap and run statistics in a window");
  std::string sets_exprs;
  std::optional<std::string> sets_eps;
  std::string sets_window;
  std::optional<std::string> sets_members;
  long long sets_probe = 10;
  for (auto* c : {scan_cmd, classify_cmd}) {
    c->add_option("--exprs", sets_exprs, "comma-separated g_k");
    c->add_option("--eps", sets_eps, "eps");
    c->add_option("--window", sets_window, "lo:hi")->required();
  }
  classify_cmd->add_option("--members", sets_members, "comma-separated integers instead of --exprs");
  classify_cmd->add_option("--probe", sets_probe, "run length probe");

  // recur
  auto* recur_cmd = app.add_subcommand("recur", "recurrence harness on concrete systems");
  recur_cmd->require_subcommand(1);
  auto* density_cmd = recur_cmd->add_subcommand("density", "coverage of product boxes by the orbit tuple");
  auto* hits_cmd = recur_cmd->add_subcommand("hits", "N(p, U, V) on a window");
  auto* syndetic_cmd = recur_cmd->add_subcommand("syndetic", "N ∩ C on a window, classified");
  std::string recur_system = "chacon";
  std::string recur_polys;
  std::string recur_window;
  unsigned recur_depth = 2;
  long recur_grid = 8;
  std::string recur_u;
  std::string recur_v;
  std::optional<std::string> recur_c_exprs;
  std::optional<std::string> recur_c_eps;
  long long recur_probe = 10;
  for (auto* c : {density_cmd, hits_cmd, syndetic_cmd}) {
    c->add_option("--system", recur_system, "chacon | full[:K] | rotation:ALPHA[:X0]");
    c->add_option("--polys", recur_polys, "comma-separated polynomials")->required();
    c->add_option("--window", recur_window, "lo:hi")->required();
  }
  density_cmd->add_option("--depth", recur_depth, "cylinder word length");
  density_cmd->add_option("--grid", recur_grid, "cells per axis (rotation)");
  for (auto* c : {hits_cmd, syndetic_cmd}) {
    c->add_option("--U", recur_u, "word, or center:radius")->required();
    c->add_option("--V", recur_v, "word(s) or arc(s), comma-separated")->required();
  }
  syndetic_cmd->add_option("--C-exprs", recur_c_exprs, "constraint expressions (default: all of Z)");
  syndetic_cmd->add_option("--C-eps", recur_c_eps, "constraint eps");
  syndetic_cmd->add_option("--probe", recur_probe, "run length probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) load_config_file(config, config_path);
    apply_environment(config);
    if (precision_cap) config.precision_cap = *precision_cap;
    if (threshold_text) config.threshold = parse_rational(*threshold_text);
    if (epsilon_text) config.epsilon = parse_rational(*epsilon_text);
    if (window_cap) config.window_cap = *window_cap;
    if (horizon) config.horizon = *horizon;
    if (format_flag) config.format = *format_flag;
    if (seed) config.seed = *seed;
    if (jobs) config.jobs = *jobs;
    config.validate();
    set_default_precision_cap(config.precision_cap);
    const PrecisionPolicy policy = config.policy();
    EnumerateOptions enum_opts{config.window_cap, config.jobs, policy};
    Emitter out(config);

    if (eval_cmd->parsed()) {
      Expr p = parse(eval_expr);
      Window w{0, 0};
      if (eval_range) {
        w = parse_window(*eval_range);
      } else if (eval_n) {
        w = Window{*eval_n, *eval_n};
      } else {
        throw PreconditionError("eval needs --n or --range");
      }
      if (w.hi - w.lo > config.window_cap) throw WindowTooLarge("range exceeds the window cap");
      // for a bracket the interesting fractional part is that of its argument
      bool bracket = p->kind == ExprKind::Bracket;
      Expr inner = bracket ? p->child() : p;
      PointEvaluator ev(policy);
      json points = json::array();
      std::string csv = "n,value,frac,precision_bits\n";
      std::string text;
      for (long long n = w.lo; n <= w.hi; ++n) {
        Integer N(static_cast<long>(n));
        Evaluation v = ev.eval(p, N);
        Evaluation f = ev.frac(inner, N);
        std::string value = v.exact ? to_string(*v.exact) : v.value.to_string(20);
        std::string fr = f.exact ? to_string(*f.exact) : f.value.to_string(12);
        points.push_back({{"n", n},
                          {"value", value},
                          {"value_approx", v.value.midpoint_double()},
                          {"exact", v.is_exact()},
                          {"frac", fr},
                          {"frac_approx", f.value.midpoint_double()},
                          {"precision_bits", std::max(v.precision_bits, f.precision_bits)}});
        csv += std::to_string(n) + "," + value + "," + fr + "," + std::to_string(v.precision_bits) + "\n";
        text += "n=" + std::to_string(n) + "  value " + value + "  frac " + fr + "\n";
      }
      json result{{"expr", pretty(p)}, {"frac_of", bracket ? "bracket argument" : "value"}, {"points", points}};
      out.emit("eval", result, csv, text);
      return 0;
    }

    if (analyze_cmd->parsed()) {
      std::vector<std::string> lines = analyze_exprs;
      if (!analyze_file.empty()) {
        std::ifstream in(analyze_file);
        if (!in) throw PreconditionError("cannot read " + analyze_file);
        for (std::string line; std::getline(in, line);) {
          if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
          lines.push_back(line);
        }
      }
      if (lines.empty()) throw PreconditionError("analyze needs a file or --exprs");
      std::vector<SgpNormal> system;
      json members = json::array();
      std::string csv = "expr,normal_form,degree,leading_sum,leading_sum_approx\n";
      std::string text;
      for (const auto& line : lines) {
        Expr e = parse(line);
        ReductionResult r = normalize_to_sgp(e);
        system.push_back(r.h);
        Coefficient a = leading_sum(r.h);
        members.push_back({{"expr", pretty(e)},
                           {"normal_form", r.h.format()},
                           {"valid_on_constraint_set", !r.constraint_exprs.empty()},
                           {"degree", degree(r.h)},
                           {"leading_sum", coefficient_json(a)}});
        csv += "\"" + pretty(e) + "\",\"" + r.h.format() + "\"," + std::to_string(degree(r.h)) + ",\"" + a.format() +
               "\"," + std::to_string(a.approx()) + "\n";
        text += pretty(e) + "\n  degree " + std::to_string(degree(r.h)) + "  A = " + a.format() + "\n";
      }
      WeightVector w = weight_vector(system);
      NondegeneracyReport nd = nondegenerate(system, policy);
      json witness = nullptr;
      if (!nd.nondegenerate) witness = {{"i", nd.i}, {"j", nd.j}, {"reason", nd.reason}};
      json result{{"members", members},
                  {"weight_vector", weight_json(w)},
                  {"nondegenerate", nd.nondegenerate},
                  {"witness", witness}};
      text += "weight vector " + format_weight_vector(w) + "\n" +
              (nd.nondegenerate ? std::string("non-degenerate\n") : "degenerate: " + nd.reason + "\n");
      out.emit("analyze", result, csv, text);
      return 0;
    }

    if (normalize_cmd->parsed()) {
      Expr p = parse(normalize_expr);
      ReductionResult r = normalize_to_sgp(p);
      json result{{"expr", pretty(p)},
                  {"normal_form", r.h.format()},
                  {"normal_form_exact", format(r.h.to_expr())},
                  {"delta", rational_json(r.delta)},
                  {"constraints", strings(r.constraint_exprs)},
                  {"check", nullptr}};
      std::string text = pretty(p) + "\n  = " + r.h.format() + "\n";
      if (!r.constraint_exprs.empty()) text += "  on C(" + to_string(r.delta) + ", " + std::to_string(r.constraint_exprs.size()) + " exprs)\n";
      if (normalize_check) {
        Window w = parse_window(*normalize_check);
        WindowCheck c = verify_reduction(p, r, w.lo, w.hi, policy);
        result["check"] = check_json(c);
        text += "  check: " + std::to_string(c.members) + " members, " + std::to_string(c.violations.size()) + " violations\n";
      }
      out.emit("normalize", result, "normal_form,delta\n\"" + r.h.format() + "\"," + to_string(r.delta) + "\n", text);
      return 0;
    }

    if (derive_cmd->parsed()) {
      SgpNormal h = normalize_to_sgp(parse(derive_expr)).h;
      Integer m(derive_m);
      Derivative d = derivative(h, m, policy);
      json result{{"h", h.format()},
                  {"m", m.get_str()},
                  {"degree_h", degree(h)},
                  {"D", d.d.format()},
                  {"degree_D", degree(d.d)},
                  {"leading_D", coefficient_json(d.leading_d)},
                  {"expected_leading", coefficient_json(d.expected_leading)},
                  {"error_bound", coefficient_json(d.error_bound)},
                  {"within_bound", d.within_bound},
                  {"certification",
                   {{"delta", rational_json(d.certification.delta)},
                    {"epsilon", to_string(d.certification.epsilon)},
                    {"constraints", strings(d.certification.constraint_exprs)}}},
                  {"check", nullptr}};
      std::string text = "D(h, " + m.get_str() + ") = " + d.d.format() + "\n  A(D) = " + d.leading_d.format() +
                         "  expected " + d.expected_leading.format() + "  bound " + d.error_bound.format() + "\n";
      if (derive_check) {
        Window w = parse_window(*derive_check);
        WindowCheck c = verify_derivative(d, w.lo, w.hi, policy);
        result["check"] = check_json(c);
        text += "  check: " + std::to_string(c.members) + " members, " + std::to_string(c.violations.size()) + " violations\n";
      }
      out.emit("derive", result, "D,leading_D,expected,bound\n\"" + d.d.format() + "\",\"" + d.leading_d.format() + "\",\"" +
                                     d.expected_leading.format() + "\",\"" + d.error_bound.format() + "\"\n",
               text);
      return 0;
    }

    if (qij_cmd->parsed()) {
      std::vector<SgpNormal> system = to_normal_system(parse_all(split_list(qij_polys)));
      if (qij_prescale) {
        Integer k(*qij_prescale);
        for (auto& p : system) p = substitute_scale(p, k);
      }
      NondegeneracyReport nd = nondegenerate(system, policy);
      if (!nd.nondegenerate) throw PreconditionError("degenerate system: " + nd.reason);
      std::vector<SgpNormal> high;
      for (const auto& p : system) {
        if (degree(p) >= 2) high.push_back(combine(p));
      }
      std::vector<Integer> shifts;
      if (qij_shifts) {
        for (const auto& s : split_list(*qij_shifts)) shifts.emplace_back(s);
      } else if (!high.empty()) {
        shifts = choose_shifts(high, qij_count, policy);
      }
      QijResult q = build_qij(system, shifts, config.threshold, policy);
      json rows = json::array();
      for (const auto& row : q.q) {
        json r = json::array();
        for (const auto& x : row) r.push_back(x.format());
        rows.push_back(r);
      }
      json next = json::array();
      for (const auto& p : q.next_system) next.push_back(p.format());
      json sorted = json::array();
      for (const auto& p : q.sorted) sorted.push_back(p.format());
      json shifts_json = json::array();
      for (const auto& k : shifts) shifts_json.push_back(k.get_str());
      json fails = json::array();
      for (const auto& f : q.separation_failures) fails.push_back({{"i", f.i}, {"j", f.j}, {"detail", f.detail}});
      json schedule = nullptr;
      if (!high.empty()) {
        RSchedule r = r_schedule(high, policy);
        schedule = {{"M", coefficient_json(r.M)}, {"L", coefficient_json(r.L)}, {"r0", r.at(Integer(0)).midpoint_double()}};
      }
      json result{{"system", sorted},
                  {"linear_count", q.linear_count},
                  {"shifts", shifts_json},
                  {"r_schedule", schedule},
                  {"q", rows},
                  {"next_system", next},
                  {"phi_before", weight_json(q.phi_before)},
                  {"phi_after", weight_json(q.phi_after)},
                  {"descent", pet_less(q.phi_after, q.phi_before)},
                  {"threshold", to_string(q.threshold)},
                  {"separation_failures", fails}};
      std::string text = "phi " + format_weight_vector(q.phi_before) + " -> " + format_weight_vector(q.phi_after) + "\n";
      for (const auto& p : q.next_system) text += "  " + p.format() + "\n";
      text += std::to_string(q.separation_failures.size()) + " separation failures\n";
      out.emit("qij", result, "phi_before,phi_after,separation_failures\n\"" + format_weight_vector(q.phi_before) + "\",\"" +
                                  format_weight_vector(q.phi_after) + "\"," + std::to_string(q.separation_failures.size()) + "\n",
               text);
      return 0;
    }

    if (scan_cmd->parsed() || classify_cmd->parsed()) {
      Window w = parse_window(sets_window);
      Rational eps = sets_eps ? parse_rational(*sets_eps) : config.epsilon;
      std::vector<long long> members;
      json c_json = nullptr;
      if (sets_members) {
        for (const auto& s : split_list(*sets_members)) members.push_back(std::stoll(s));
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        std::erase_if(members, [&](long long n) { return n < w.lo || n > w.hi; });
      } else {
        if (sets_exprs.empty()) throw PreconditionError("--exprs or --members is required");
        ConstraintSet c = constraint_from(split_list(sets_exprs), eps);
        c_json = constraint_json(c);
        members = enumerate(c, w.lo, w.hi, enum_opts);
      }
      if (scan_cmd->parsed()) {
        std::string csv = "n\n";
        for (long long n : members) csv += std::to_string(n) + "\n";
        std::string text;
        for (std::size_t i = 0; i < members.size(); ++i) text += (i ? " " : "") + std::to_string(members[i]);
        out.emit("sets scan",
                 json{{"constraints", c_json}, {"lo", w.lo}, {"hi", w.hi}, {"count", members.size()}, {"members", members}},
                 csv, text + "\n");
      } else {
        WindowReport r = classify(members, w.lo, w.hi, sets_probe);
        json result = window_report_json(r);
        result["constraints"] = c_json;
        std::string text = "syndetic: " + to_string(r.syndetic.kind) + " (max gap " + std::to_string(r.max_gap) +
                           ")\nthick: " + to_string(r.thick.kind) + " (max run " + std::to_string(r.max_run) +
                           ")\nthickly syndetic: " + to_string(r.thickly_syndetic.kind) + "\n";
        out.emit("sets classify", result,
                 "max_gap,max_run,syndetic,thick,thickly_syndetic\n" + std::to_string(r.max_gap) + "," +
                     std::to_string(r.max_run) + "," + to_string(r.syndetic.kind) + "," + to_string(r.thick.kind) + "," +
                     to_string(r.thickly_syndetic.kind) + "\n",
                 text);
      }
      return 0;
    }

    if (density_cmd->parsed() || hits_cmd->parsed() || syndetic_cmd->parsed()) {
      SymbolicSystem sys = parse_system(recur_system, config.seed);
      std::vector<Expr> polys = parse_all(split_list(recur_polys));
      Window w = parse_window(recur_window);

      if (density_cmd->parsed()) {
        DensityOptions o;
        o.depth = recur_depth;
        o.grid = recur_grid;
        o.window_cap = config.window_cap;
        o.jobs = config.jobs;
        o.policy = policy;
        DensityReport r = density_coverage(sys, polys, w.lo, w.hi, o);
        json curve = json::array();
        for (const auto& p : r.curve) curve.push_back({{"window_hi", p.window_hi}, {"coverage", p.coverage}, {"boxes_hit", p.boxes_hit}});
        json result{{"system", sys.name()},
                    {"polys", r.polys},
                    {"resolution", r.resolution},
                    {"lo", r.lo},
                    {"hi", r.hi},
                    {"boxes_total", r.boxes_total},
                    {"boxes_hit", r.boxes_hit},
                    {"coverage", r.coverage},
                    {"missing", r.missing},
                    {"curve", curve},
                    {"monotone", r.monotone}};
        out.emit("recur density", result, coverage_csv(r),
                 "coverage " + std::to_string(r.boxes_hit) + "/" + std::to_string(r.boxes_total) + " = " +
                     std::to_string(r.coverage) + "\n");
        return 0;
      }

      OpenSetSpec u = parse_open_set(sys, recur_u);
      std::vector<OpenSetSpec> v;
      for (const auto& s : split_list(recur_v)) v.push_back(parse_open_set(sys, s));
      json v_json = json::array();
      for (const auto& s : v) v_json.push_back(open_set_text(sys, s));

      if (hits_cmd->parsed()) {
        if (polys.size() != 1 || v.size() != 1) throw PreconditionError("hits takes one polynomial and one V");
        HittingReport r = hitting_times(sys, u, v.front(), polys.front(), w.lo, w.hi, config.horizon, enum_opts);
        std::string csv = "n\n";
        for (long long n : r.hits) csv += std::to_string(n) + "\n";
        json result{{"system", sys.name()},
                    {"U", open_set_text(sys, u)},
                    {"V", v_json},
                    {"poly", pretty(polys.front())},
                    {"lo", w.lo},
                    {"hi", w.hi},
                    {"horizon", config.horizon},
                    {"hits", r.hits},
                    {"not_found_within_horizon", r.not_found},
                    {"misses", r.misses}};
        out.emit("recur hits", result, csv,
                 std::to_string(r.hits.size()) + " hits, " + std::to_string(r.not_found.size()) +
                     " not found within horizon, " + std::to_string(r.misses) + " misses\n");
        return 0;
      }

      ConstraintSet c;
      if (recur_c_exprs) c = constraint_from(split_list(*recur_c_exprs), recur_c_eps ? parse_rational(*recur_c_eps) : config.epsilon);
      SyndeticReport r = syndetic_check(sys, u, v, polys, c, w.lo, w.hi, recur_probe, config.horizon, enum_opts);
      json result = window_report_json(r.window);
      result["system"] = sys.name();
      result["U"] = open_set_text(sys, u);
      result["V"] = v_json;
      result["polys"] = strings(polys);
      result["constraints"] = constraint_json(c);
      result["candidates"] = r.candidates;
      result["not_found_within_horizon"] = r.not_found;
      result["note"] = r.note;
      out.emit("recur syndetic", result,
               "max_gap,syndetic\n" + std::to_string(r.window.max_gap) + "," + to_string(r.window.syndetic.kind) + "\n",
               "N∩C: " + std::to_string(r.window.members.size()) + " of " + std::to_string(r.candidates) +
                   " candidates; syndetic " + to_string(r.window.syndetic.kind) + " (max gap " +
                   std::to_string(r.window.max_gap) + ")\n" + r.note + "\n");
      return 0;
    }
  } catch (const std::exception& e) {
    json err{{"error", e.what()}, {"exit_code", exit_code_for(e)}};
    std::cerr << err.dump() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
