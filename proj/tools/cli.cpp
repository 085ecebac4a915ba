#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "latidx/catalog.hpp"
#include "latidx/gram_io.hpp"
#include "latidx/index_engine.hpp"
#include "latidx/invariants.hpp"

namespace latidx::cli {

namespace {

using json = nlohmann::ordered_json;

// Usage problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GramMatrix load_input(const std::string& input, std::istream& in) {
  if (input == "-") return parse_gram(in, "<stdin>");
  if (input.rfind("catalog:", 0) == 0) return named_matrix(input.substr(8));
  return read_gram_file(input);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream ss(text);
  while (std::getline(ss, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

Rational rational_arg(const std::string& text, const std::string& what) {
  auto r = parse_rational(text);
  if (!r) throw UsageError(what + ": '" + text + "' is not an integer or p/q");
  return *r;
}

std::vector<Rational> rational_list(const std::string& text, const std::string& what) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  for (const auto& p : split(text, ',')) out.push_back(rational_arg(p, what));
  return out;
}

std::uint64_t natural_arg(const std::string& text, const std::string& what) {
  auto r = parse_rational(text);
  if (!r || r->get_den() != 1 || sgn(*r) < 0 || !r->get_num().fits_ulong_p())
    throw UsageError(what + ": '" + text + "' is not a non-negative integer");
  return r->get_num().get_ui();
}

json vector_json(std::span<const Integer> v) {
  json a = json::array();
  for (const auto& z : v) {
    if (z.fits_slong_p())
      a.push_back(z.get_si());
    else
      a.push_back(z.get_str());
  }
  return a;
}

json gram_json(const GramMatrix& g) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < g.dim(); ++j) r.push_back(to_string(g(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

json rat_matrix_json(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

// Flat key/value rendering of a JSON object for --format text.
void print_text(std::ostream& out, const json& report) {
  for (const auto& [key, value] : report.items()) {
    out << key;
    if (value.is_array()) {
      for (const auto& v : value) {
        if (v.is_array()) {
          out << "\n ";
          for (const auto& w : v) out << ' ' << (w.is_string() ? w.get<std::string>() : w.dump());
        } else {
          out << ' ' << (v.is_string() ? v.get<std::string>() : v.dump());
        }
      }
    } else if (value.is_object()) {
      for (const auto& [k, v] : value.items())
        out << ' ' << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
    } else {
      out << ' ' << (value.is_string() ? value.get<std::string>() : value.dump());
    }
    out << '\n';
  }
}

void emit(std::ostream& out, const json& report, const std::string& format) {
  if (format == "text")
    print_text(out, report);
  else
    out << report.dump(2) << '\n';
}

struct Common {
  std::string input = "-";
  std::string format = "json";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("input", c.input, "Gram file, '-' for stdin, or catalog:NAME")->required();
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
}

void add_engine(CLI::App* sub, EngineOptions& opts) {
  sub->add_option("--threads", opts.threads, "Worker threads (default: LATIDX_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--budget", opts.budget, "Cap on binom(s, n)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

FamilySpec parse_family(const std::vector<std::string>& tokens) {
  FamilySpec spec;
  bool have_d = false, have_m = false, have_n = false;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw UsageError("--family: expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    if (key == "d") {
      spec.d = natural_arg(value, "d");
      have_d = true;
    } else if (key == "m") {
      for (const auto& p : split(value, ',')) spec.blocks.push_back(natural_arg(p, "m"));
      have_m = true;
    } else if (key == "n") {
      spec.n = natural_arg(value, "n");
      have_n = true;
    } else if (key == "x") {
      spec.x = rational_list(value, "x");
    } else if (key == "y") {
      spec.y = rational_list(value, "y");
    } else if (key == "set") {
      auto parts = split(value, ',');
      if (parts.size() != 3) throw UsageError("set=i,j,value expects three fields");
      spec.overrides.push_back({natural_arg(parts[0], "set i"), natural_arg(parts[1], "set j"),
                                rational_arg(parts[2], "set value")});
    } else {
      throw UsageError("--family: unknown key '" + key + "'");
    }
  }
  if (!have_d || !have_m) throw UsageError("--family needs at least d= and m=");
  if (!have_n)
    for (std::size_t b : spec.blocks) spec.n += b;
  return spec;
}

GlueSpec parse_glue(const std::vector<std::string>& tokens, std::istream& in) {
  std::optional<GramMatrix> base;
  std::vector<std::vector<Rational>> vs;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw UsageError("--glue: expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    if (key == "base")
      base = load_input(value, in);
    else if (key == "v")
      vs.push_back(rational_list(value, "v"));
    else
      throw UsageError("--glue: unknown key '" + key + "'");
  }
  if (!base) throw UsageError("--glue needs base=");
  return GlueSpec{*base, std::move(vs)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Index systems of lattices generated by minimal vectors", "latidx"};
  app.require_subcommand(1);

  Common common;
  EngineOptions engine;
  bool counts = false, with_rank = false, timing = false;

  auto* minvec = app.add_subcommand("minvec", "Minimum and minimal vectors");
  add_common(minvec, common);

  auto* isys = app.add_subcommand("index-system", "Index system over all minimal-vector bases");
  add_common(isys, common);
  add_engine(isys, engine);
  isys->add_flag("--counts", counts, "Report how often each quotient occurs");
  isys->add_flag("--perfection-rank", with_rank, "Also report the perfection rank");
  isys->add_flag("--timing", timing, "Append wall-clock timing");

  auto* maxi = app.add_subcommand("max-index", "Maximal index only");
  add_common(maxi, common);
  add_engine(maxi, engine);

  auto* prank = app.add_subcommand("perfection-rank", "Rank of the x x^T over minimal vectors");
  add_common(prank, common);

  std::string subset_text;
  auto* code = app.add_subcommand("code", "Quotient and quotient code of a minimal-vector basis");
  add_common(code, common);
  code->add_option("--subset", subset_text, "n comma-separated 0-based minimal-vector indices")
      ->required();

  std::string watson_d, watson_a;
  auto* watson = app.add_subcommand("watson", "Check the norm identity for e = (sum a_i e_i)/d");
  add_common(watson, common);
  watson->add_option("--d", watson_d, "Denominator d >= 2")->required();
  watson->add_option("--a", watson_a, "Coefficients a_1,...,a_n")->required();

  std::vector<std::string> family_tokens, glue_tokens;
  std::string construct_format = "gram";
  auto* construct = app.add_subcommand("construct", "Build a lattice and print its Gram matrix");
  auto* fam_opt = construct->add_option("--family", family_tokens,
                                        "d=<d> m=<m1,...> [n=<n>] [x=<x1,...>] [y=<y12,...>] "
                                        "[set=<i,j,value>]...");
  auto* glue_opt = construct->add_option("--glue", glue_tokens, "base=<input> v=<p/q,...>...");
  fam_opt->excludes(glue_opt);
  construct->add_option("--format", construct_format, "gram (text Gram file) or json")
      ->check(CLI::IsMember({"gram", "json"}))
      ->capture_default_str();

  std::string catalog_action, catalog_name;
  auto* catalog = app.add_subcommand("catalog", "List or export built-in matrices");
  catalog->add_option("action", catalog_action, "list or export")
      ->required()
      ->check(CLI::IsMember({"list", "export"}));
  catalog->add_option("name", catalog_name, "Name for export");

  std::vector<const char*> argv;
  std::vector<std::string> storage = args;
  if (storage.empty()) storage.push_back("latidx");
  for (const auto& a : storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (minvec->parsed()) {
      GramMatrix g = load_input(common.input, in);
      MinimalVectorSet mv = minimal_vectors(g);
      json r;
      r["n"] = mv.dim;
      r["minimum"] = to_string(mv.minimum);
      r["s"] = mv.s();
      r["well_rounded"] = is_well_rounded(mv);
      json vs = json::array();
      for (std::size_t i = 0; i < mv.s(); ++i) vs.push_back(vector_json(mv.vectors.row(i)));
      r["vectors"] = std::move(vs);
      emit(out, r, common.format);
      return 0;
    }

    if (isys->parsed()) {
      GramMatrix g = load_input(common.input, in);
      const auto start = std::chrono::steady_clock::now();
      MinimalVectorSet mv = minimal_vectors(g);
      engine.want_counts = counts;
      IndexSystemReport rep = index_system(mv, engine);
      json r;
      r["n"] = rep.n;
      r["minimum"] = to_string(rep.minimum);
      r["s"] = rep.s;
      json sys = json::array();
      for (const auto& t : rep.system) sys.push_back(t.to_string());
      r["index_system"] = std::move(sys);
      if (counts) {
        json c = json::object();
        for (const auto& [t, k] : rep.counts) c[t.to_string()] = k;
        r["counts"] = std::move(c);
      }
      r["max_index"] = rep.max_index;
      if (with_rank) r["perfection_rank"] = perfection_rank(mv);
      if (timing) {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        json t;
        t["seconds"] = dt.count();
        t["threads"] = engine.threads ? engine.threads : default_thread_count();
        r["timing"] = std::move(t);
      }
      emit(out, r, common.format);
      return 0;
    }

    if (maxi->parsed()) {
      GramMatrix g = load_input(common.input, in);
      MinimalVectorSet mv = minimal_vectors(g);
      json r;
      r["n"] = mv.dim;
      r["minimum"] = to_string(mv.minimum);
      r["s"] = mv.s();
      r["max_index"] = max_index_only(mv, engine);
      emit(out, r, common.format);
      return 0;
    }

    if (prank->parsed()) {
      GramMatrix g = load_input(common.input, in);
      MinimalVectorSet mv = minimal_vectors(g);
      const std::size_t n = mv.dim;
      json r;
      r["n"] = n;
      r["minimum"] = to_string(mv.minimum);
      r["s"] = mv.s();
      r["perfection_rank"] = perfection_rank(mv);
      r["perfect"] = perfection_rank(mv) == n * (n + 1) / 2;
      emit(out, r, common.format);
      return 0;
    }

    if (code->parsed()) {
      GramMatrix g = load_input(common.input, in);
      MinimalVectorSet mv = minimal_vectors(g);
      std::vector<std::size_t> subset;
      for (const auto& p : split(subset_text, ',')) subset.push_back(natural_arg(p, "--subset"));
      Quotient q = quotient_of(mv, subset);
      QuotientCode c = quotient_code(mv, subset);
      json r;
      r["n"] = mv.dim;
      r["index"] = q.index.get_str();
      r["type"] = q.type.to_string();
      r["d"] = c.d.get_str();
      json gens = json::array();
      for (const auto& w : c.generators) {
        gens.push_back(vector_json(w));
      }
      r["generators"] = std::move(gens);
      json ws = json::array();
      for (const auto& w : c.generators) ws.push_back(QuotientCode::weight(w));
      r["weights"] = std::move(ws);
      r["support"] = c.support_size;
      emit(out, r, common.format);
      return 0;
    }

    if (watson->parsed()) {
      GramMatrix g = load_input(common.input, in);
      const Rational d = rational_arg(watson_d, "--d");
      if (d.get_den() != 1) throw UsageError("--d must be an integer");
      std::vector<Integer> a;
      for (const auto& r : rational_list(watson_a, "--a")) {
        if (r.get_den() != 1) throw UsageError("--a entries must be integers");
        a.push_back(r.get_num());
      }
      WatsonCertificate cert = watson_check(g, a, d.get_num());
      json r;
      r["n"] = g.dim();
      r["d"] = cert.d.get_str();
      r["a"] = vector_json(cert.a);
      r["lhs"] = to_string(cert.lhs);
      r["rhs"] = to_string(cert.rhs);
      r["identity_holds"] = cert.lhs == cert.rhs;
      r["balanced"] = cert.balanced;
      if (cert.balanced) r["minimal_shifts"] = cert.minimal_shifts;
      emit(out, r, common.format);
      return 0;
    }

    if (construct->parsed()) {
      GlueResult res = [&] {
        if (!family_tokens.empty()) return build_family(parse_family(family_tokens));
        if (!glue_tokens.empty()) return glue(parse_glue(glue_tokens, in));
        throw UsageError("construct needs --family or --glue");
      }();
      if (construct_format == "gram") {
        out << format_gram_text(res.gram);
      } else {
        json r;
        r["n"] = res.gram.dim();
        r["index"] = res.index.get_str();
        r["gram"] = gram_json(res.gram);
        r["basis"] = rat_matrix_json(res.basis);
        out << r.dump(2) << '\n';
      }
      return 0;
    }

    if (catalog->parsed()) {
      if (catalog_action == "list") {
        for (const auto& n : catalog_names()) out << n << '\n';
        out << "A<n> D<n> E6 E7 E8 Z<n>\n";
        return 0;
      }
      if (catalog_name.empty()) throw UsageError("catalog export needs a NAME");
      out << format_gram_text(named_matrix(catalog_name));
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace latidx::cli
