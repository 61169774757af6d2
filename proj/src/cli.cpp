#include "lyapna/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lyapna/hybrid.hpp"
#include "lyapna/measures.hpp"
#include "lyapna/parse.hpp"

namespace lyapna {

namespace {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[48];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

struct Common {
  std::string spec_path;
  std::string out_path;
  long seed_flag = -1;
  unsigned threads = 0;
  long budget = kWalkBudget;
  long max_len = 6;

  ParsedSpec parsed;
  std::string spec_hash;
  uint64_t seed = 0;

  void load() {
    std::ifstream in(spec_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open spec file: " + spec_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string bytes = ss.str();
    spec_hash = fnv1a_hex(bytes);
    parsed = parse_spec(bytes);
    if (seed_flag >= 0) {
      seed = static_cast<uint64_t>(seed_flag);
    } else if (const char* env = std::getenv(kSeedEnvVar)) {
      seed = std::strtoull(env, nullptr, 10);
    } else if (parsed.defaults.has_seed()) {
      seed = static_cast<uint64_t>(parsed.defaults.seed);
    } else {
      seed = 0;
    }
    if (threads == 0) threads = default_threads();
  }

  EstimatorParams params(long n_flag, long s_flag, long n_default, long s_default) const {
    EstimatorParams p;
    p.n = n_flag > 0 ? n_flag : (parsed.defaults.has_n() ? parsed.defaults.n : n_default);
    p.samples =
        s_flag > 0 ? s_flag : (parsed.defaults.has_samples() ? parsed.defaults.samples : s_default);
    p.seed = seed;
    p.threads = threads;
    p.budget = budget;
    return p;
  }

  json meta(const char* command) const {
    json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["command"] = command;
    m["spec_file"] = spec_path;
    m["spec_hash"] = spec_hash;
    m["seed"] = seed;
    m["threads"] = threads;
    m["budget"] = budget;
    return m;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(Common& c, const json& body) {
  Output out(c.out_path);
  out.stream() << body.dump(2) << "\n";
}

void emit_csv_header(std::ostream& os, const Common& c, const char* command,
                     const std::string& params_line, const std::string& columns) {
  os << "# tool=" << kToolName << " version=" << kToolVersion << " command=" << command << "\n";
  os << "# spec=" << c.spec_path << " hash=" << c.spec_hash << " seed=" << c.seed
     << " threads=" << c.threads << " budget=" << c.budget;
  if (!params_line.empty()) os << " " << params_line;
  os << "\n" << columns << "\n";
}

void require_t_range(double t) {
  if (!(t > 0.0 && t < 1.0)) throw ConfigError("t must lie in (0, 1)");
}

std::vector<double> parse_t_list(const std::string& tlist) {
  std::vector<double> out;
  std::stringstream ss(tlist);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw ConfigError("empty t list");
  for (double t : out)
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("t values must lie in (0, 1)");
  return out;
}

Word parse_word_flag(const std::string& word, std::size_t n_gens) {
  Word w;
  std::stringstream ss(word);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    long idx = std::stol(item);
    if (idx < 0 || static_cast<std::size_t>(idx) >= n_gens)
      throw ConfigError("word letter out of range: " + item);
    w.push_back(static_cast<uint32_t>(idx));
  }
  if (w.empty()) throw ConfigError("empty word");
  return w;
}

ModelSpec parse_model(const std::vector<std::string>& balls) {
  ModelSpec model = ModelSpec::trivial();
  for (const std::string& spec : balls) {
    std::size_t colon = spec.rfind(':');
    if (colon == std::string::npos)
      throw ConfigError("ball must be 'center_expr:radius_order', got: " + spec);
    Series center = parse_laurent(spec.substr(0, colon));
    Series r = parse_laurent(spec.substr(colon + 1));
    if (!r.is_exact() || (r.has_terms() && r.ord() != Ord(Rat(0))) ||
        (r.has_terms() && !r.leading().is_real()))
      throw ConfigError("radius order must be a rational constant: " + spec);
    Rat radius = r.has_terms() ? r.leading().re() : Rat(0);
    model.marked.push_back(BallNA(center, radius));
  }
  return model;
}

json estimate_json(const Estimate& e) {
  json j;
  j["value"] = e.value;
  j["stderr"] = e.stderror;
  j["n"] = e.n_steps;
  j["S"] = e.n_samples;
  j["seed"] = e.seed;
  return j;
}

json word_json(const MeasureSpec& spec, const Word& w) {
  json names = json::array();
  for (uint32_t idx : w) names.push_back(spec.gens[idx].name);
  return names;
}

int run_classify(Common& c) {
  const MeasureSpec& spec = c.parsed.measure;
  GroupClass gc = classify_group(spec, c.max_len, c.budget);
  json j = c.meta("classify");
  j["class"] = to_string(gc.tag);
  j["search_depth"] = gc.search_depth;
  if (gc.witness) {
    j["witness"] = json::array({word_json(spec, gc.witness->first), word_json(spec, gc.witness->second)});
    j["witness_verified"] = verify_witness(spec, gc.witness->first, gc.witness->second, c.budget);
  }
  if (gc.tag == GroupClass::Tag::Affine || gc.tag == GroupClass::Tag::ZeroInfty) {
    Rat chi(0);
    std::string method;
    if (gc.tag == GroupClass::Tag::ZeroInfty) {
      try {
        chi = chi_na_zero_infty(spec, *gc.conjugator);
        method = "zero-infty-closed-form";
      } catch (const NoSwapElement&) {
        chi = chi_na_affine(spec, *gc.conjugator);
        method = "affine-closed-form";
      }
    } else {
      chi = chi_na_affine(spec, *gc.conjugator);
      method = "affine-closed-form";
    }
    j["chi_na"] = {{"method", method}, {"exact", rat_to_string(chi)}, {"value", chi.get_d()}};
  }
  emit_json(c, j);
  return 0;
}

int run_chi_na(Common& c, long n_flag, long s_flag) {
  EstimatorParams p = c.params(n_flag, s_flag, 400, 50);
  Estimate e = chi_na_kingman(c.parsed.measure, p);
  json j = c.meta("chi-na");
  j["method"] = "kingman";
  j["result"] = estimate_json(e);
  emit_json(c, j);
  return 0;
}

int run_chi_exact(Common& c, long n_flag, long cap) {
  long n = n_flag > 0 ? n_flag : 4;
  Rat v = chi_na_exact(c.parsed.measure, n, cap);
  json j = c.meta("chi-exact");
  j["n"] = n;
  j["value_rational"] = rat_to_string(v);
  j["value"] = v.get_d();
  emit_json(c, j);
  return 0;
}

int run_chi(Common& c, double t, long n_flag, long s_flag) {
  require_t_range(t);
  EstimatorParams p = c.params(n_flag, s_flag, 2000, 100);
  Estimate e = chi_c(c.parsed.measure, t, p);
  json j = c.meta("chi");
  j["t"] = t;
  j["result"] = estimate_json(e);
  j["ratio"] = e.value / std::log(1.0 / t);
  emit_json(c, j);
  return 0;
}

int run_sweep(Common& c, const std::string& tlist, long n_flag, long s_flag, long na_n,
              long na_s) {
  std::vector<double> ts = parse_t_list(tlist);
  EstimatorParams cp = c.params(n_flag, s_flag, 2000, 100);
  EstimatorParams np = c.params(na_n, na_s, 400, 50);
  SweepResult r = sweep(c.parsed.measure, ts, cp, np, c.max_len);
  Output out(c.out_path);
  std::ostream& os = out.stream();
  std::string params = "n=" + std::to_string(cp.n) + " S=" + std::to_string(cp.samples) +
                       " chi_na_method=" + r.chi_na.method +
                       " monotone_improvement=" + (r.monotone_improvement ? "true" : "false");
  emit_csv_header(os, c, "sweep", params, "t,chi,chi_ratio,chi_na,abs_error,n,S,seed");
  for (const SweepRow& row : r.rows) {
    os << format_double(row.t) << "," << format_double(row.chi) << ","
       << format_double(row.chi_ratio) << "," << format_double(row.chi_na) << ","
       << format_double(row.abs_error) << "," << cp.n << "," << cp.samples << "," << c.seed
       << "\n";
  }
  return 0;
}

int run_trace(Common& c, const std::string& side, double t, long n_flag, long s_flag) {
  if (side != "na") require_t_range(t);
  EstimatorParams p = c.params(n_flag, s_flag, side == "na" ? 400 : 2000, side == "na" ? 50 : 100);
  TraceEstimate te =
      side == "na" ? chi_trace_na(c.parsed.measure, p) : chi_trace_c(c.parsed.measure, t, p);
  json j = c.meta("trace");
  j["side"] = side;
  if (side != "na") j["t"] = t;
  j["result"] = estimate_json(te.estimate);
  j["hyperbolic_fraction"] = te.hyperbolic_fraction;
  j["n_hyperbolic"] = te.n_hyperbolic;
  emit_json(c, j);
  return 0;
}

int run_stationary(Common& c, const std::string& side, double t, long n_flag, long s_flag,
                   bool reversed) {
  if (side != "na") require_t_range(t);
  EstimatorParams p = c.params(n_flag, s_flag, 60, 500);
  Output out(c.out_path);
  std::ostream& os = out.stream();
  std::string params = "side=" + side + " n=" + std::to_string(p.n) +
                       " S=" + std::to_string(p.samples) +
                       " reversed=" + (reversed ? "true" : "false");
  if (side == "na") {
    P1SampleNA s = sample_stationary_na(c.parsed.measure, p, reversed);
    emit_csv_header(os, c, "stationary",
                    params + " excluded=" + std::to_string(s.n_excluded), "index,point");
    for (std::size_t i = 0; i < s.points.size(); ++i)
      os << i << ",\"" << s.points[i].to_string() << "\"\n";
  } else {
    P1SampleC s = sample_stationary_c(c.parsed.measure, t, p, reversed);
    emit_csv_header(os, c, "stationary",
                    params + " t=" + format_double(t) + " excluded=" + std::to_string(s.n_excluded),
                    "index,re,im,infinite");
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const P1C& z = s.points[i];
      if (z.is_infinity())
        os << i << ",0,0,1\n";
      else
        os << i << "," << format_double(z.affine().real()) << ","
           << format_double(z.affine().imag()) << ",0\n";
    }
  }
  return 0;
}

int run_residual(Common& c, const std::vector<std::string>& balls, double t, long n_flag,
                 long s_flag, double cluster_tol) {
  EstimatorParams p = c.params(n_flag, s_flag, 60, 500);
  ModelSpec model = parse_model(balls);
  json j = c.meta("residual");
  j["n"] = p.n;
  j["S"] = p.samples;
  j["model_points"] = model.marked.size();

  if (t > 0.0) {
    require_t_range(t);
    CompareReport rep = compare_residual(c.parsed.measure, model, t, p, cluster_tol);
    json atoms = json::array();
    for (const auto& row : rep.rows) {
      json a;
      if (row.na_residue_infinite) {
        a["residue"] = "inf";
      } else {
        a["residue_re"] = row.na_residue.real();
        a["residue_im"] = row.na_residue.imag();
      }
      a["mass_na"] = row.mass_na;
      a["mass_c"] = row.mass_c;
      atoms.push_back(a);
    }
    j["t"] = t;
    j["atoms"] = atoms;
    j["tv"] = rep.tv;
    j["matched_atoms"] = rep.matched_atoms;
    j["unmatched_complex_mass"] = rep.unmatched_complex_mass;
    j["na_deficit"] = rep.na_deficit;
    j["c_deficit"] = rep.c_deficit;
  } else {
    P1SampleNA s = sample_stationary_na(c.parsed.measure, p);
    EmpiricalMeasure em = residual_measure(s, model);
    json atoms = json::array();
    for (const auto& atom : em.atoms) {
      json a;
      P1C res = residue_of(s.points[atom.rep_index], c.budget);
      if (res.is_infinity()) {
        a["residue"] = "inf";
      } else {
        a["residue_re"] = res.affine().real();
        a["residue_im"] = res.affine().imag();
      }
      a["mass"] = atom.mass;
      a["count"] = atom.count;
      atoms.push_back(a);
    }
    j["atoms"] = atoms;
    j["deficit"] = em.deficit;
  }
  emit_json(c, j);
  return 0;
}

int run_hybrid_check(Common& c, const std::string& tlist, long points, const std::string& px,
                     const std::string& py) {
  std::vector<double> ts = parse_t_list(tlist);
  std::vector<std::pair<std::string, P1NA>> pts;
  if (!px.empty() || !py.empty()) {
    Series x = parse_laurent(px.empty() ? "1" : px);
    Series y = parse_laurent(py.empty() ? "1" : py);
    pts.emplace_back("explicit", P1NA(x, y));
  } else {
    SplitMix64 rng = stream_for(c.seed, 0);
    for (long k = 0; k < points; ++k)
      pts.emplace_back("p" + std::to_string(k), random_balanced_point(rng));
  }
  Output out(c.out_path);
  std::ostream& os = out.stream();
  emit_csv_header(os, c, "hybrid-check", "points=" + std::to_string(pts.size()),
                  "generator,point,t,sigma_arch,sigma_na,deviation");
  for (const auto& g : c.parsed.measure.gens) {
    for (const auto& [name, v] : pts) {
      auto rows = continuity_check(g.mat, v, ts);
      for (const auto& row : rows)
        os << g.name << "," << name << "," << format_double(row.t) << ","
           << format_double(row.sigma_arch) << "," << format_double(row.sigma_na) << ","
           << format_double(row.deviation) << "\n";
    }
  }
  return 0;
}

int run_kak(Common& c, const std::string& word_flag, long len) {
  const MeasureSpec& spec = c.parsed.measure;
  Word w;
  if (!word_flag.empty()) {
    w = parse_word_flag(word_flag, spec.size());
  } else {
    SplitMix64 rng = stream_for(c.seed, 0);
    w = sample_word(spec, len > 0 ? len : 5, rng);
  }
  MatNA g = product_na(spec, w);
  Kak k = kak(g, c.budget);
  MatNA re = k.m * (k.a * k.n);
  bool ok = Series::indistinguishable(re.a, g.a) && Series::indistinguishable(re.b, g.b) &&
            Series::indistinguishable(re.c, g.c) && Series::indistinguishable(re.d, g.d);
  json j = c.meta("kak");
  j["word"] = word_json(spec, w);
  j["lognorm"] = rat_to_string(lognorm(g));
  j["m"] = k.m.to_string();
  j["a"] = k.a.to_string();
  j["n"] = k.n.to_string();
  j["m_integral"] = k.m.is_integral();
  j["n_integral"] = k.n.is_integral();
  j["reconstructs"] = ok;
  emit_json(c, j);
  return 0;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Lyapunov exponents of random SL(2) matrix products over C((t)) and C"};
  app.require_subcommand(1);

  Common c;
  app.add_option("--spec", c.spec_path, "spec/config file")->required();
  app.add_option("--seed", c.seed_flag, "PRNG seed (flag > " + std::string(kSeedEnvVar) +
                                            " > [defaults] > 0)");
  app.add_option("--threads", c.threads, "worker threads (default: hardware, capped at 8)");
  app.add_option("--budget", c.budget, "relative series precision for long walks");
  app.add_option("--max-len", c.max_len, "word-length bound for the non-elementarity search");
  app.add_option("--out", c.out_path, "output file (default: stdout)");

  long n_flag = 0, s_flag = 0, na_n = 0, na_s = 0, cap = 1000000, len = 0, points = 10;
  double t = 0.0, cluster_tol = -1.0;
  std::string side = "na", tlist, word_flag, px, py;
  std::vector<std::string> balls;
  bool reversed = false;

  CLI::App* classify_cmd = app.add_subcommand("classify", "group classification and certificates");

  CLI::App* chi_na_cmd = app.add_subcommand("chi-na", "Kingman estimate of chi_na");
  chi_na_cmd->add_option("--n", n_flag, "walk length");
  chi_na_cmd->add_option("--S", s_flag, "sample count");

  CLI::App* chi_exact_cmd = app.add_subcommand("chi-exact", "exact a_n/n by enumeration");
  chi_exact_cmd->add_option("--n", n_flag, "convolution power");
  chi_exact_cmd->add_option("--cap", cap, "enumeration cap");

  CLI::App* chi_cmd = app.add_subcommand("chi", "complex-side chi(t)");
  chi_cmd->add_option("--t", t, "parameter t in (0,1)")->required();
  chi_cmd->add_option("--n", n_flag, "walk length");
  chi_cmd->add_option("--S", s_flag, "sample count");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "degeneration sweep chi(t)/log(1/t) vs chi_na");
  sweep_cmd->add_option("--t", tlist, "comma-separated t grid")->required();
  sweep_cmd->add_option("--n", n_flag, "complex walk length");
  sweep_cmd->add_option("--S", s_flag, "complex sample count");
  sweep_cmd->add_option("--na-n", na_n, "na walk length");
  sweep_cmd->add_option("--na-S", na_s, "na sample count");

  CLI::App* trace_cmd = app.add_subcommand("trace", "trace estimator of chi");
  trace_cmd->add_option("--side", side, "na or complex");
  trace_cmd->add_option("--t", t, "parameter for the complex side");
  trace_cmd->add_option("--n", n_flag, "walk length");
  trace_cmd->add_option("--S", s_flag, "sample count");

  CLI::App* stationary_cmd = app.add_subcommand("stationary", "sample the stationary measure");
  stationary_cmd->add_option("--side", side, "na or complex");
  stationary_cmd->add_option("--t", t, "parameter for the complex side");
  stationary_cmd->add_option("--n", n_flag, "walk length");
  stationary_cmd->add_option("--S", s_flag, "sample count");
  stationary_cmd->add_flag("--reversed", reversed, "sample the backward measure");

  CLI::App* residual_cmd =
      app.add_subcommand("residual", "residual measure on a model; compare at t when given");
  residual_cmd->add_option("--ball", balls, "extra marked point 'center_expr:r' (Gauss always)");
  residual_cmd->add_option("--t", t, "compare against the complex side at t");
  residual_cmd->add_option("--n", n_flag, "walk length");
  residual_cmd->add_option("--S", s_flag, "sample count");
  residual_cmd->add_option("--cluster-tol", cluster_tol, "complex cluster radius (default |t|^0.5)");

  CLI::App* hybrid_cmd = app.add_subcommand("hybrid-check", "hybrid cocycle continuity table");
  hybrid_cmd->add_option("--t", tlist, "comma-separated t grid")->required();
  hybrid_cmd->add_option("--points", points, "number of random test points");
  hybrid_cmd->add_option("--x", px, "explicit point: numerator series");
  hybrid_cmd->add_option("--y", py, "explicit point: denominator series");

  CLI::App* kak_cmd = app.add_subcommand("kak", "KAK decomposition of a word product");
  kak_cmd->add_option("--word", word_flag, "comma-separated generator indices");
  kak_cmd->add_option("--len", len, "random word length when --word is absent");

  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::cerr << (e.get_exit_code() == 0 ? "" : "usage error: ") << e.what() << "\n";
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  c.load();
  if (classify_cmd->parsed()) return run_classify(c);
  if (chi_na_cmd->parsed()) return run_chi_na(c, n_flag, s_flag);
  if (chi_exact_cmd->parsed()) return run_chi_exact(c, n_flag, cap);
  if (chi_cmd->parsed()) return run_chi(c, t, n_flag, s_flag);
  if (sweep_cmd->parsed()) return run_sweep(c, tlist, n_flag, s_flag, na_n, na_s);
  if (trace_cmd->parsed()) return run_trace(c, side, t, n_flag, s_flag);
  if (stationary_cmd->parsed()) return run_stationary(c, side, t, n_flag, s_flag, reversed);
  if (residual_cmd->parsed()) return run_residual(c, balls, t, n_flag, s_flag, cluster_tol);
  if (hybrid_cmd->parsed()) return run_hybrid_check(c, tlist, points, px, py);
  if (kak_cmd->parsed()) return run_kak(c, word_flag, len);
  return 1;
}

bool is_usage_error(const Error& e) {
  const std::string& code = e.code();
  return code == "ConfigError" || code == "DetNotOne" || code == "WeightsNotNormalized" ||
         code == "SyntaxError" || code == "NonMonomialDivision";
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

int cli_run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const Error& e) {
    json rec;
    rec["error"] = e.code();
    rec["message"] = e.what();
    std::cout << rec.dump(2) << "\n";
    return is_usage_error(e) ? 1 : 2;
  } catch (const std::exception& e) {
    json rec;
    rec["error"] = "Internal";
    rec["message"] = e.what();
    std::cout << rec.dump(2) << "\n";
    return 2;
  }
}

int cli_run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_run(args);
}

}  // namespace lyapna
