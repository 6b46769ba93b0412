// Command-line surface for the summation-tree library.
//
// Exit codes: 0 success, 1 verification failure, 2 argument error,
// 3 evaluation error.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sumtrees/core.hpp"
#include "sumtrees/enumerate.hpp"
#include "sumtrees/floateval.hpp"
#include "sumtrees/generate.hpp"
#include "sumtrees/oeis.hpp"

using json = nlohmann::json;
using namespace sumtrees;

namespace {

struct Options {
  std::string format = "table";
  bool hex = false;
  std::int64_t max_n_cap = 64;
};

std::string fmt_double(double v, bool hex, Precision p) {
  if (hex) return hex_float(v, p);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Precision parse_precision(const std::string& s) {
  if (s == "binary32") return Precision::binary32;
  if (s == "binary64") return Precision::binary64;
  throw CLI::ValidationError("--precision must be binary32 or binary64");
}

Binding load_binding(const std::string& spec) {
  if (spec.find('=') == std::string::npos) return Binding::from_file(spec);
  std::string text = spec;
  for (char& c : text)
    if (c == ',') c = '\n';
  return Binding::from_text(text);
}

std::vector<std::string> split_labels(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int run_count(const std::string& kind, std::int64_t n, std::int64_t s,
              const std::string& method) {
  BigCount value;
  if (kind == "all") {
    value = count_all(n);
  } else if (kind == "ladder") {
    value = count_ladder(n);
  } else if (kind == "pairwise") {
    SigmaMethod m = SigmaMethod::epsilon_recursive;
    if (method == "tournament_recursive") m = SigmaMethod::tournament_recursive;
    else if (method == "epsilon_closed") m = SigmaMethod::epsilon_closed;
    else if (!method.empty() && method != "epsilon_recursive")
      throw CLI::ValidationError("unknown sigma method: " + method);
    value = sigma_pairwise(n, m);
  } else if (kind == "alpha") {
    value = alpha(n);
  } else if (kind == "tau") {
    value = tau(n, s);
  } else if (kind == "beta") {
    value = BigCount(beta(n));
  } else if (kind == "epsilon") {
    EpsilonMethod m = EpsilonMethod::recursive;
    if (method == "closed") m = EpsilonMethod::closed;
    else if (method == "baruchel") m = EpsilonMethod::baruchel;
    else if (!method.empty() && method != "recursive")
      throw CLI::ValidationError("unknown epsilon method: " + method);
    value = BigCount(epsilon(n, m));
  } else {
    throw CLI::ValidationError("unknown count kind: " + kind);
  }
  std::cout << value.get_str() << "\n";
  return 0;
}

int run_table(std::int64_t max_n, const Options& opt) {
  auto rows = tau_table(max_n);
  std::size_t width = rows.empty() ? 0 : rows.back().size();
  if (opt.format == "json") {
    json out = json::array();
    for (std::int64_t n = 1; n <= max_n; ++n) {
      json row;
      row["n"] = n;
      row["tau"] = json::array();
      for (const auto& v : rows[n - 1]) row["tau"].push_back(v.get_str());
      row["alpha"] = alpha(n).get_str();
      out.push_back(row);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (opt.format == "csv") {
    std::cout << "n";
    for (std::size_t s = 1; s <= width; ++s) std::cout << ",s" << s;
    std::cout << ",alpha\n";
    for (std::int64_t n = 1; n <= max_n; ++n) {
      std::cout << n;
      for (std::size_t s = 0; s < width; ++s)
        std::cout << "," << (s < rows[n - 1].size() ? rows[n - 1][s].get_str() : "");
      std::cout << "," << alpha(n).get_str() << "\n";
    }
    return 0;
  }
  for (std::int64_t n = 1; n <= max_n; ++n) {
    std::cout << "n=" << n << ":";
    for (const auto& v : rows[n - 1]) std::cout << " " << v.get_str();
    std::cout << "  alpha=" << alpha(n).get_str() << "\n";
  }
  return 0;
}

int run_check_oeis(const std::string& id, const std::string& fixture_path,
                   std::size_t max_terms) {
  auto fixture = OeisFixture::parse_file(fixture_path);
  auto result = oeis_check(id, fixture, max_terms);
  if (result.ok) {
    std::cout << id << ": PASS (" << result.terms_checked << " terms)\n";
    return 0;
  }
  std::cout << id << ": FAIL at index " << result.mismatch_index << ": fixture "
            << result.expected.get_str() << ", computed " << result.actual.get_str()
            << "\n";
  return 1;
}

int run_enumerate(const std::string& kind, std::int64_t n, std::optional<int> s,
                  const std::string& shape_expr, const std::string& labels_csv,
                  bool count_only, const Options& opt) {
  if (n > opt.max_n_cap) throw std::domain_error("n exceeds --max-n-cap");
  if (kind == "shapes") {
    ShapeStream stream(static_cast<int>(n), s);
    BigCount count = 0;
    while (auto sh = stream.next()) {
      if (count_only)
        count += 1;
      else
        std::cout << serialize(*sh) << "\n";
    }
    if (count_only) std::cout << count.get_str() << "\n";
    return 0;
  }
  if (kind != "classes") throw CLI::ValidationError("unknown enumerate kind: " + kind);
  std::vector<std::string> labels =
      labels_csv.empty() ? default_labels(static_cast<int>(n)) : split_labels(labels_csv);
  std::optional<ClassStream> stream;
  if (!shape_expr.empty())
    stream.emplace(parse_shape(shape_expr), labels);
  else
    stream.emplace(static_cast<int>(n), labels);
  BigCount count = 0;
  while (auto t = stream->next()) {
    if (count_only)
      count += 1;
    else
      std::cout << serialize(*t) << "\n";
  }
  if (count_only) std::cout << count.get_str() << "\n";
  return 0;
}

json eval_report_json(const EvalReport& r, bool hex) {
  json out;
  out["tree"] = r.tree;
  out["precision"] = r.precision == Precision::binary32 ? "binary32" : "binary64";
  out["rounded"] = fmt_double(r.rounded, hex, r.precision);
  out["exact"] = r.exact.get_str();
  out["abs_error"] = r.abs_error.get_str();
  out["relative_error"] = fmt_double(r.relative_error, false, Precision::binary64);
  return out;
}

int run_eval(const std::string& expr, const std::string& bind_spec,
             const std::string& precision_str, const Options& opt) {
  NodePtr tree = parse(expr);
  Binding binding = load_binding(bind_spec);
  Precision p = parse_precision(precision_str);
  EvalReport r = eval(tree, binding, p);
  if (opt.format == "json") {
    std::cout << eval_report_json(r, opt.hex).dump(2) << "\n";
  } else if (opt.format == "csv") {
    std::cout << "tree,precision,rounded,exact,abs_error,relative_error\n"
              << r.tree << "," << precision_str << ","
              << fmt_double(r.rounded, opt.hex, p) << "," << r.exact.get_str() << ","
              << r.abs_error.get_str() << "," << fmt_double(r.relative_error, false, p)
              << "\n";
  } else {
    std::cout << "tree      " << r.tree << "\n"
              << "precision " << precision_str << "\n"
              << "rounded   " << fmt_double(r.rounded, opt.hex, p) << "\n"
              << "exact     " << r.exact.get_str() << "\n"
              << "abs_error " << r.abs_error.get_str() << "\n"
              << "rel_error " << fmt_double(r.relative_error, false, p) << "\n";
  }
  return 0;
}

int run_survey(std::int64_t n, const std::string& selector_str,
               const std::string& shape_expr, const std::string& bind_spec,
               const std::string& precision_str, const Options& opt) {
  Selector selector;
  std::optional<Shape> shape;
  if (selector_str == "all") selector = Selector::all;
  else if (selector_str == "ladder") selector = Selector::ladder;
  else if (selector_str == "pairwise") selector = Selector::pairwise;
  else if (selector_str == "shape") {
    selector = Selector::single_shape;
    if (shape_expr.empty()) throw CLI::ValidationError("--selector shape needs --shape");
    shape = parse_shape(shape_expr);
  } else {
    throw CLI::ValidationError("unknown selector: " + selector_str);
  }
  Binding binding = load_binding(bind_spec);
  Precision p = parse_precision(precision_str);
  SurveyReport r =
      survey(static_cast<int>(n), binding, p, selector, shape ? &*shape : nullptr);
  if (opt.format == "json") {
    json out;
    out["n"] = r.n;
    out["selector"] = selector_str;
    out["classes"] = r.classes.get_str();
    out["distinct"] = r.distinct;
    out["min_abs_error"] = r.min_abs_error.get_str();
    out["max_abs_error"] = r.max_abs_error.get_str();
    out["mean_abs_error"] = r.mean_abs_error.get_str();
    out["argmin_tree"] = r.argmin_tree;
    out["argmax_tree"] = r.argmax_tree;
    std::cout << out.dump(2) << "\n";
  } else if (opt.format == "csv") {
    std::cout << "n,selector,classes,distinct,min_abs_error,max_abs_error,"
                 "mean_abs_error,argmin_tree,argmax_tree\n"
              << r.n << "," << selector_str << "," << r.classes.get_str() << ","
              << r.distinct << "," << r.min_abs_error.get_str() << ","
              << r.max_abs_error.get_str() << "," << r.mean_abs_error.get_str() << ","
              << r.argmin_tree << "," << r.argmax_tree << "\n";
  } else {
    std::cout << "classes=" << r.classes.get_str() << " distinct=" << r.distinct
              << " min=" << r.min_abs_error.get_str()
              << " max=" << r.max_abs_error.get_str()
              << " mean=" << r.mean_abs_error.get_str() << "\n"
              << "argmin " << r.argmin_tree << "\n"
              << "argmax " << r.argmax_tree << "\n";
  }
  return 0;
}

int run_canon(const std::string& expr, bool as_shape) {
  if (as_shape) {
    std::cout << serialize(canonical_shape(parse_shape(expr))) << "\n";
  } else {
    std::cout << serialize(canonical_labeled(parse(expr))) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Summation trees: enumeration, generation, and rounding-error surveys"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format: table, csv, json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_flag("--hex", opt.hex, "Print floating-point values as hex-float");
  app.add_option("--max-n-cap", opt.max_n_cap, "Cap on n for generation commands");

  std::int64_t n = 0, s = 0, max_n = 15;
  std::size_t max_terms = 0;
  int s_filter = -1;
  std::string kind, method, fixture, expr, bind_spec, labels_csv, shape_expr;
  std::string precision_str = "binary64", selector = "all", sequence;
  bool count_only = false, canon_shape = false;

  auto* c_count = app.add_subcommand("count", "Print an exact count");
  c_count->add_option("kind", kind)->required();
  c_count->add_option("--n", n)->required();
  c_count->add_option("--s", s);
  c_count->add_option("--method", method);

  auto* c_table = app.add_subcommand("table", "Emit the tau/alpha table");
  c_table->add_option("--max-n", max_n);

  auto* c_oeis = app.add_subcommand("check-oeis", "Verify a sequence against a b-file");
  c_oeis->add_option("sequence", sequence)->required();
  c_oeis->add_option("--fixture", fixture)->required();
  c_oeis->add_option("--max-terms", max_terms);

  auto* c_enum = app.add_subcommand("enumerate", "List shapes or class representatives");
  c_enum->add_option("kind", kind)->required();
  c_enum->add_option("--n", n)->required();
  c_enum->add_option("--s", s_filter);
  c_enum->add_option("--shape", shape_expr);
  c_enum->add_option("--labels", labels_csv);
  c_enum->add_flag("--count-only", count_only);

  auto* c_eval = app.add_subcommand("eval", "Evaluate a summation under IEEE rounding");
  c_eval->add_option("expr", expr)->required();
  c_eval->add_option("--bind", bind_spec)->required();
  c_eval->add_option("--precision", precision_str);

  auto* c_survey = app.add_subcommand("survey", "Rounding error across a class family");
  c_survey->add_option("--n", n)->required();
  c_survey->add_option("--selector", selector);
  c_survey->add_option("--shape", shape_expr);
  c_survey->add_option("--bind", bind_spec)->required();
  c_survey->add_option("--precision", precision_str);

  auto* c_canon = app.add_subcommand("canon", "Print the canonical form");
  c_canon->add_option("expr", expr)->required();
  c_canon->add_flag("--shape", canon_shape);

  // Global flags are accepted on either side of the subcommand.
  for (auto* sc : {c_count, c_table, c_oeis, c_enum, c_eval, c_survey, c_canon})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (c_count->parsed()) return run_count(kind, n, s, method);
    if (c_table->parsed()) {
      if (max_n > opt.max_n_cap) throw std::domain_error("--max-n exceeds --max-n-cap");
      return run_table(max_n, opt);
    }
    if (c_oeis->parsed()) return run_check_oeis(sequence, fixture, max_terms);
    if (c_enum->parsed())
      return run_enumerate(kind, n,
                           s_filter < 0 ? std::nullopt : std::optional<int>(s_filter),
                           shape_expr, labels_csv, count_only, opt);
    if (c_eval->parsed()) return run_eval(expr, bind_spec, precision_str, opt);
    if (c_survey->parsed())
      return run_survey(n, selector, shape_expr, bind_spec, precision_str, opt);
    if (c_canon->parsed()) return run_canon(expr, canon_shape);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " at position " << e.position << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
