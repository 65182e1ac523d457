// lcf — exact infinitesimal arithmetic from the command line.
//
// Every invocation is stateless: parse, compute, print, exit.
// Exit codes: 0 success, 2 usage error, 3 domain/computation error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "lcf/calculus.hpp"
#include "lcf/eval.hpp"
#include "lcf/hyperfinite.hpp"
#include "lcf/number_io.hpp"
#include "lcf/relations.hpp"
#include "lcf/transfer.hpp"
#include "plot.hpp"

using namespace lcf;
using nlohmann::json;

namespace {

struct Options {
  std::string mode = "exact";
  std::string window = "12";
  unsigned precision = 50;
  std::string output = "text";
  std::string plot_format = "svg";
  bool json_flag = false;

  Mode engine_mode() const {
    return mode == "numeric" ? Mode::numeric : Mode::exact;
  }
  bool json_output() const { return json_flag || output == "json"; }
  EngineConfig engine_config() const {
    EngineConfig cfg;
    cfg.window = parse_rational(window);
    cfg.precision_digits = precision;
    validate_config(cfg);
    return cfg;
  }
};

void print(const Options& opt, const json& j, const std::string& text) {
  if (opt.json_output())
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

std::map<std::string, bool> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, bool> params;
  for (const std::string& p : raw) {
    auto eq = p.find('=');
    params[p.substr(0, eq)] = p.substr(eq + 1) == "standard";
  }
  return params;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"exact infinitesimal arithmetic: a truncated Levi-Civita field "
               "with standard-part extraction, infinitesimal calculus, "
               "hyperfinite sums, and a transfer checker"};
  app.require_subcommand(1);

  Options opt;
  app.set_config("--config")->envname("LCF_CONFIG");
  app.add_option("--mode", opt.mode, "arithmetic mode")
      ->check(CLI::IsMember({"exact", "numeric"}))
      ->capture_default_str();
  app.add_option("--window", opt.window,
                 "series window: inverse/power expansions carry this many orders")
      ->capture_default_str();
  app.add_option("--precision", opt.precision, "numeric-mode decimal digits")
      ->capture_default_str();
  app.add_option("--output", opt.output, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--plot-format", opt.plot_format, "default plot file format")
      ->check(CLI::IsMember({"svg", "csv"}))
      ->capture_default_str();
  app.add_flag("--json", opt.json_flag, "shorthand for --output json");

  // eval
  std::string eval_expr, eval_at = "0";
  auto* c_eval = app.add_subcommand("eval", "evaluate an expression at a point");
  c_eval->fallthrough();
  c_eval->add_option("expr", eval_expr, "expression in x")->required();
  c_eval->add_option("--at", eval_at, "evaluation point (number syntax, e.g. '3 + eps')");

  // classify
  std::string cls_num;
  auto* c_cls = app.add_subcommand("classify", "zero / infinitesimal / appreciable / infinite");
  c_cls->fallthrough();
  c_cls->add_option("number", cls_num)->required();

  // st
  std::string st_num;
  auto* c_st = app.add_subcommand("st", "standard part (the assignable shadow)");
  c_st->fallthrough();
  c_st->add_option("number", st_num)->required();

  // relate
  std::string rel_kind, rel_a, rel_b;
  auto* c_rel = app.add_subcommand("relate", "incomparability and kindred relations");
  c_rel->fallthrough();
  c_rel->add_option("relation", rel_kind)
      ->required()
      ->check(CLI::IsMember({"inc", "comparable", "approx", "negligible"}));
  c_rel->add_option("a", rel_a)->required();
  c_rel->add_option("b", rel_b)->required();

  // purge
  std::string purge_num, purge_order;
  auto* c_purge = app.add_subcommand("purge", "discard negligible terms, keeping the dominant part");
  c_purge->fallthrough();
  c_purge->add_option("number", purge_num)->required();
  c_purge->add_option("--to-order", purge_order, "keep every term up to this exponent");

  // deriv
  std::string dv_expr, dv_at;
  unsigned dv_order = 1;
  auto* c_dv = app.add_subcommand("deriv", "derivative via an infinitesimal difference quotient");
  c_dv->fallthrough();
  c_dv->add_option("expr", dv_expr)->required();
  c_dv->add_option("--at", dv_at, "rational point")->required();
  c_dv->add_option("--order", dv_order, "derivative order")->capture_default_str();

  // ddpair
  std::string dd_expr, dd_at, dd_dx;
  auto* c_dd = app.add_subcommand("ddpair", "assignable differential pair (d)x, (d)y");
  c_dd->fallthrough();
  c_dd->add_option("expr", dd_expr)->required();
  c_dd->add_option("--at", dd_at)->required();
  c_dd->add_option("--dx", dd_dx, "assignable increment")->required();

  // tangent
  std::string tg_expr, tg_at, tg_form = "slope";
  auto* c_tg = app.add_subcommand("tangent", "tangent line through two infinitely close points");
  c_tg->fallthrough();
  c_tg->add_option("expr", tg_expr)->required();
  c_tg->add_option("--at", tg_at)->required();
  c_tg->add_option("--form", tg_form, "line normalization")
      ->check(CLI::IsMember({"slope", "normal", "max"}))
      ->capture_default_str();

  // curvature
  std::string cv_x, cv_y, cv_at;
  auto* c_cv = app.add_subcommand("curvature", "osculating circle of a parametric curve");
  c_cv->fallthrough();
  c_cv->add_option("x_expr", cv_x, "x(t)")->required();
  c_cv->add_option("y_expr", cv_y, "y(t)")->required();
  c_cv->add_option("--at", cv_at, "parameter value")->required();

  // integrate
  std::string in_expr, in_from, in_to;
  bool in_sum = false;
  auto* c_in = app.add_subcommand("integrate", "hyperfinite Riemann sum of a polynomial");
  c_in->fallthrough();
  c_in->add_option("poly", in_expr, "polynomial in x")->required();
  c_in->add_option("--from", in_from)->required();
  c_in->add_option("--to", in_to)->required();
  c_in->add_flag("--sum", in_sum, "print the full sum with its infinitesimal correction");

  // mu-demo
  auto* c_mu = app.add_subcommand("mu-demo", "arithmetic of the bounded infinity");
  c_mu->fallthrough();

  // transitus
  std::string ts_builtin, ts_family, ts_at;
  auto* c_ts = app.add_subcommand("transitus", "terminal conic of a parameterized family");
  c_ts->fallthrough();
  auto* ts_src = c_ts->add_option_group("family source");
  ts_src->add_option("--builtin", ts_builtin, "bundled family")
      ->check(CLI::IsMember({"ellipse-family"}));
  ts_src->add_option("--family", ts_family, "JSON file with coefficient polynomials A..F");
  ts_src->require_option(1);
  c_ts->add_option("--at", ts_at, "also show normalized coefficients at a finite parameter");

  // transfer
  std::string tf_formula;
  std::vector<std::string> tf_params;
  bool tf_test = false;
  std::uint64_t tf_seed = 20260819;
  std::size_t tf_budget = 4000;
  auto* c_tf = app.add_subcommand("transfer", "law-of-continuity applicability and rewrite");
  c_tf->fallthrough();
  c_tf->add_option("formula", tf_formula)->required();
  c_tf->add_option("--param", tf_params, "mark a parameter: name=standard|nonstandard")
      ->check([](const std::string& v) -> std::string {
        auto eq = v.find('=');
        if (eq == std::string::npos || eq == 0) return "expected name=standard|nonstandard";
        std::string mark = v.substr(eq + 1);
        if (mark != "standard" && mark != "nonstandard")
          return "mark must be 'standard' or 'nonstandard'";
        return {};
      });
  c_tf->add_flag("--test", tf_test, "run the sample-based instance tester");
  c_tf->add_option("--seed", tf_seed, "sampler seed")->capture_default_str();
  c_tf->add_option("--budget", tf_budget, "instance budget")->capture_default_str();

  // jet
  std::string jt_expr, jt_at;
  auto* c_jt = app.add_subcommand("jet", "nilsquare jet: value and slope, d^2 = 0");
  c_jt->fallthrough();
  c_jt->add_option("expr", jt_expr)->required();
  c_jt->add_option("--at", jt_at)->required();

  // plot
  std::string pl_kind, pl_expr, pl_at = "1", pl_dx = "1/2", pl_from = "0",
              pl_to = "1", pl_out, pl_format;
  unsigned pl_sides = 8;
  auto* c_pl = app.add_subcommand("plot", "emit a figure as SVG or CSV");
  c_pl->fallthrough();
  c_pl->add_option("kind", pl_kind)
      ->required()
      ->check(CLI::IsMember({"secant_vs_tangent", "polygon_approx"}));
  c_pl->add_option("expr", pl_expr)->required();
  c_pl->add_option("--at", pl_at, "tangency point")->capture_default_str();
  c_pl->add_option("--secant-dx", pl_dx, "assignable secant offset")->capture_default_str();
  c_pl->add_option("--from", pl_from)->capture_default_str();
  c_pl->add_option("--to", pl_to)->capture_default_str();
  c_pl->add_option("--sides", pl_sides, "polygon side count")
      ->check(CLI::Range(2u, 100000u))
      ->capture_default_str();
  c_pl->add_option("--out", pl_out, "output path")->required();
  c_pl->add_option("--format", pl_format, "svg or csv (default from --plot-format)")
      ->check(CLI::IsMember({"svg", "csv"}));

  // archimedean
  std::string ar_expr, ar_at, ar_limit, ar_tol = "1/100";
  unsigned long ar_scan = 1000;
  auto* c_ar = app.add_subcommand(
      "archimedean", "assignable-only difference-quotient stabilization check");
  c_ar->fallthrough();
  c_ar->add_option("expr", ar_expr)->required();
  c_ar->add_option("--at", ar_at)->required();
  c_ar->add_option("--limit", ar_limit, "claimed limit L")->required();
  c_ar->add_option("--tol", ar_tol, "tolerance")->capture_default_str();
  c_ar->add_option("--scan", ar_scan, "denominators to scan")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // contract: usage errors exit 2
  }

  const Mode mode = opt.engine_mode();
  const EngineConfig cfg = opt.engine_config();
  if (mode == Mode::numeric) apply_numeric_precision(cfg);

  if (*c_eval) {
    LCNumber at = parse_number(eval_at, mode, cfg);
    LCNumber v = expr::evaluate(expr::parse_expr(eval_expr), at, cfg);
    print(opt, number_to_json(v), render(v));
  } else if (*c_cls) {
    Classification c = classify(parse_number(cls_num, mode, cfg));
    print(opt, json{{"classification", classification_name(c)}},
          classification_name(c));
  } else if (*c_st) {
    Coefficient c = standard_part(parse_number(st_num, mode, cfg));
    print(opt, json{{"value", c.str()}}, c.str());
  } else if (*c_rel) {
    LCNumber a = parse_number(rel_a, mode, cfg);
    LCNumber b = parse_number(rel_b, mode, cfg);
    relations::RelationReport r;
    if (rel_kind == "inc") {
      r = relations::inc(a, b, cfg);
    } else if (rel_kind == "comparable") {
      r = relations::comparable(a, b, cfg);
    } else if (rel_kind == "approx") {
      r.holds = relations::approx_eq(a, b, cfg);
      r.rationale = r.holds ? "difference is negligible against both sides"
                            : "difference is comparable to a side";
    } else {
      r.holds = relations::negligible_relative(a, b, cfg);
      r.rationale = r.holds ? "first vanishes against the second"
                            : "first is not negligible against the second";
    }
    std::string text = r.holds ? "holds" : "fails";
    if (r.witness) text += "  (witness n = " + r.witness->str() + ")";
    text += "\n" + r.rationale;
    print(opt, relations::relation_to_json(r), text);
  } else if (*c_purge) {
    LCNumber a = parse_number(purge_num, mode, cfg);
    LCNumber p = purge_order.empty()
                     ? relations::purge(a)
                     : relations::purge_to_order(a, parse_rational(purge_order));
    print(opt, number_to_json(p), render(p));
  } else if (*c_dv) {
    auto f = expr::parse_expr(dv_expr);
    Coefficient d =
        dv_order == 1
            ? calculus::derivative(f, parse_rational(dv_at), cfg, mode)
            : calculus::nth_derivative(f, parse_rational(dv_at), dv_order, cfg, mode);
    print(opt, json{{"value", d.str()}}, d.str());
  } else if (*c_dd) {
    calculus::DdPair p = calculus::dd_pair(expr::parse_expr(dd_expr),
                                           parse_rational(dd_at),
                                           parse_rational(dd_dx), cfg, mode);
    print(opt, calculus::dd_pair_to_json(p),
          "(d)x = " + to_string(p.dx) + ", (d)y = " + p.dy.str() +
              ", ratio = " + p.ratio.str());
  } else if (*c_tg) {
    auto form = tg_form == "slope" ? calculus::LineNormalization::slope_intercept
                : tg_form == "normal" ? calculus::LineNormalization::unit_normal
                                      : calculus::LineNormalization::max_coeff;
    calculus::LineEq line = calculus::tangent_line(
        expr::parse_expr(tg_expr), parse_rational(tg_at), form, cfg, mode);
    print(opt, calculus::line_to_json(line), calculus::render_line(line));
  } else if (*c_cv) {
    calculus::OsculatingResult r = calculus::osculating_circle(
        expr::parse_expr(cv_x), expr::parse_expr(cv_y), parse_rational(cv_at),
        cfg, mode);
    print(opt, calculus::osculating_to_json(r),
          calculus::render_circle(r.circle) +
              ", curvature = " + r.curvature.str() +
              (r.curvature_exact ? "" : " (numeric)"));
  } else if (*c_in) {
    Polynomial p = expr::to_polynomial(expr::parse_expr(in_expr));
    Rational a = parse_rational(in_from), b = parse_rational(in_to);
    LCNumber sum = hyperfinite::riemann_sum_poly(p, a, b, cfg);
    Rational v = hyperfinite::integrate_poly(p, a, b, cfg);
    json j{{"integral", to_string(v)}, {"sum", number_to_json(sum)}};
    print(opt, j, in_sum ? render(sum) : to_string(v));
  } else if (*c_mu) {
    LCNumber m = hyperfinite::mu(mode);
    LCNumber rec = invert(m, cfg);
    Coefficient unit = standard_part(multiply(m, rec, cfg));
    bool chain = compare(m, add(m, LCNumber::one(mode), cfg), cfg) == Ordering::less &&
                 compare(add(m, LCNumber::one(mode), cfg),
                         multiply(LCNumber::from_rational(Rational(2), mode), m, cfg),
                         cfg) == Ordering::less &&
                 compare(multiply(LCNumber::from_rational(Rational(2), mode), m, cfg),
                         multiply(m, m, cfg), cfg) == Ordering::less;
    json j{{"mu", render(m)},
           {"reciprocal", render(rec)},
           {"reciprocal_class", classification_name(classify(rec))},
           {"st_mu_times_reciprocal", unit.str()},
           {"chain_mu_lt_mu_plus_1_lt_2mu_lt_mu_sq", chain}};
    std::string text = "mu = " + render(m) + "\n1/mu = " + render(rec) + "  (" +
                       classification_name(classify(rec)) + ")\nst(mu * 1/mu) = " +
                       unit.str() + "\nmu < mu + 1 < 2*mu < mu^2: " +
                       (chain ? "holds" : "FAILS");
    print(opt, j, text);
  } else if (*c_ts) {
    hyperfinite::ConicFamily fam;
    if (!ts_builtin.empty()) {
      fam = hyperfinite::ellipse_family();
    } else {
      std::ifstream in(ts_family);
      if (!in) raise(Errc::io_error, "cannot read '" + ts_family + "'");
      json jf = json::parse(in, nullptr, true, true);
      fam = hyperfinite::conic_family_from_json(jf);
    }
    hyperfinite::ConicLimit lim = hyperfinite::conic_limit(fam, cfg);
    json j = hyperfinite::conic_limit_to_json(lim);
    std::string text = hyperfinite::render_conic(lim.coeffs);
    if (!ts_at.empty()) {
      Rational t = parse_rational(ts_at);
      Rational dom = fam.at(lim.dominant).eval(t);
      if (dom == 0)
        raise(Errc::degenerate_family,
              "dominant coefficient vanishes at t = " + to_string(t));
      json finite = json::object();
      static const char* names[6] = {"A", "B", "C", "D", "E", "F"};
      text += "\nat t = " + to_string(t) + ":";
      for (std::size_t i = 0; i < 6; ++i) {
        Rational ci = fam.at(i).eval(t) / dom;
        finite[names[i]] = to_string(ci);
        text += " " + std::string(names[i]) + "=" + to_string(ci);
      }
      j["at_t"] = std::move(finite);
    }
    print(opt, j, text);
  } else if (*c_tf) {
    auto phi = transfer::parse_formula(tf_formula);
    auto params = parse_params(tf_params);
    transfer::TransferVerdict verdict = transfer::check_applicability(phi, params);
    json j = transfer::verdict_to_json(verdict);
    std::string text = verdict.applicable ? "applicable" : "not applicable";
    for (const auto& r : verdict.reasons) text += "\n  " + r.detail;
    if (verdict.applicable) {
      auto lifted = transfer::apply_transfer(phi, params);
      j["rewritten"] = transfer::render_formula(lifted);
      text += "\nrewritten: " + transfer::render_formula(lifted);
      if (tf_test) {
        transfer::TestOptions topt;
        topt.seed = tf_seed;
        topt.budget = tf_budget;
        transfer::TestReport rep = transfer::test_instances(lifted, cfg, mode, topt);
        json jr = transfer::report_to_json(rep);
        j["counterexample"] =
            rep.counterexample_found ? jr["counterexample"] : json(nullptr);
        j["report"] = std::move(jr);
        text += "\n" + rep.summary + " (" +
                std::to_string(rep.instances_checked) + " instances)";
        if (rep.counterexample_found)
          for (const auto& [name, value] : rep.bindings)
            text += "\n  " + name + " = " + value;
      }
    }
    print(opt, j, text);
  } else if (*c_jt) {
    Jet2 v = expr::evaluate_jet(expr::parse_expr(jt_expr), parse_rational(jt_at), mode);
    print(opt, json{{"value", v.value().str()}, {"slope", v.slope().str()}},
          v.str());
  } else if (*c_pl) {
    cli::PlotRequest req;
    req.kind = pl_kind == "secant_vs_tangent" ? cli::PlotKind::secant_vs_tangent
                                              : cli::PlotKind::polygon_approx;
    req.f = expr::parse_expr(pl_expr);
    req.x0 = parse_rational(pl_at);
    req.secant_dx = parse_rational(pl_dx);
    req.from = parse_rational(pl_from);
    req.to = parse_rational(pl_to);
    req.sides = pl_sides;
    req.path = pl_out;
    std::string fmt = pl_format.empty() ? opt.plot_format : pl_format;
    req.csv = fmt == "csv";
    EngineConfig plot_cfg = cfg;
    apply_numeric_precision(plot_cfg);  // sampling always runs numerically
    cli::emit_plot(req, plot_cfg);
    print(opt, json{{"written", req.path}, {"format", fmt}},
          "wrote " + req.path);
  } else if (*c_ar) {
    unsigned long witness = calculus::archimedean_check(
        expr::parse_expr(ar_expr), parse_rational(ar_at),
        parse_rational(ar_limit), parse_rational(ar_tol), ar_scan);
    print(opt,
          json{{"witness", witness},
               {"statement", "every finer assignable quotient stays within tol"}},
          "stabilization witness: n = " + std::to_string(witness));
  }
  return 0;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lcf::Error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "Error: " << e.what() << "\n";
    return 3;
  }
}
