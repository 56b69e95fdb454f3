#include "besov/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "besov/envelope.hpp"
#include "besov/errors.hpp"
#include "besov/experiment.hpp"
#include "besov/flow.hpp"
#include "besov/grid.hpp"
#include "besov/littlewood_paley.hpp"
#include "besov/sampling.hpp"
#include "besov/sigma.hpp"

namespace besov::cli {
namespace {

namespace fs = std::filesystem;

// ----------------------------------------------------------------------------
// Config access
// ----------------------------------------------------------------------------
class Section {
 public:
  Section(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + " must be an object");
  }

  void allow(std::set<std::string> keys) const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!keys.count(it.key())) throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const Json& raw(const std::string& key) const { return j_.at(key); }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(where_ + "." + key + " must be a number");
    return v.get<double>();
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ConfigError(where_ + "." + key + " must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(where_ + "." + key + " must be a boolean");
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(where_ + "." + key + " must be a string");
    return v.get<std::string>();
  }

  Exponent exponent(const std::string& key, Exponent fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    try {
      if (v.is_number()) return Exponent(v.get<double>());
      if (v.is_string()) return parse_exponent(v.get<std::string>());
    } catch (const PreconditionError& e) {
      throw ConfigError(where_ + "." + key + ": " + e.what());
    }
    throw ConfigError(where_ + "." + key + " must be a number >= 1 or \"inf\"");
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_array()) throw ConfigError(where_ + "." + key + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(where_ + "." + key + " must be an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  Section sub(const std::string& key) const { return Section(j_.at(key), where_ + "." + key); }
  const std::string& where() const { return where_; }

 private:
  const Json& j_;
  std::string where_;
};

EngineScale parse_scale(const Section& top) {
  EngineScale sc;
  if (!top.has("scale")) return sc;
  const Section s = top.sub("scale");
  s.allow({"s0", "s", "s1", "q"});
  sc.s0 = s.number("s0", sc.s0);
  sc.s = s.number("s", sc.s);
  sc.s1 = s.number("s1", sc.s1);
  sc.q = s.exponent("q", sc.q);
  if (!(sc.s0 < sc.s && sc.s < sc.s1)) throw ConfigError("scale needs s0 < s < s1");
  return sc;
}

std::size_t parse_grid_size(const Section& top, std::size_t fallback) {
  const auto n = static_cast<std::size_t>(top.count("grid_size", fallback));
  if (!is_valid_grid_size(n)) throw ConfigError("grid_size must be 2^m with m >= 3");
  return n;
}

fs::path input_path(const Section& top, const fs::path& config_dir) {
  if (!top.has("input")) throw ConfigError("this command needs an 'input' path");
  fs::path p = top.text("input", "");
  if (p.is_relative()) p = config_dir / p;
  return p;
}

// ----------------------------------------------------------------------------
// Outcome collection
// ----------------------------------------------------------------------------
struct Outcome {
  Json failures = Json::array();
  void fail(const std::string& check, const std::string& detail) {
    failures.push_back({{"check", check}, {"detail", detail}});
  }
  void require(bool ok, const std::string& check, const std::string& detail) {
    if (!ok) fail(check, detail);
  }
};

struct Context {
  Section top;
  fs::path out;
  fs::path config_dir;
  std::uint64_t seed;
  std::ostream& log;
  bool quiet;

  void emit(const std::string& name, const std::string& content) const {
    write_text_file(out / name, content);
    if (!quiet) log << "wrote " << (out / name).string() << '\n';
  }
};

// ----------------------------------------------------------------------------
// filters
// ----------------------------------------------------------------------------
void cmd_filters(const Context& ctx, Outcome& oc) {
  ctx.top.allow({"schema_version", "command", "seed", "grid_size"});
  const std::size_t N = parse_grid_size(ctx.top, 256);
  const auto bank = FilterBank::build(N);
  CsvTable t({"xi", "psi", "phi", "psi_fat", "phi_fat", "partition", "orthogonality", "blocks"});
  double partition_err = 0.0, orth_min = 1.0, orth_max = 0.0, fat_err = 0.0;
  for (std::size_t k = 0; k <= N / 2; ++k) {
    const double part = bank.partition_sum(k);
    const double orth = bank.orthogonality_sum(k);
    partition_err = std::max(partition_err, std::abs(part - 1.0));
    orth_min = std::min(orth_min, orth);
    orth_max = std::max(orth_max, orth);
    for (std::size_t j = 0; j <= bank.j_max(); ++j) {
      const double m = bank.analysis(j, k);
      fat_err = std::max(fat_err, std::abs(bank.synthesis(j, k) * m - m));
    }
    t.row()
        .add(k)
        .add(bank.psi()[k])
        .add(bank.phi()[k])
        .add(bank.psi_fat_samples()[k])
        .add(bank.phi_fat_samples()[k])
        .add(part)
        .add(orth)
        .add(bank.active_blocks(k).size());
  }
  oc.require(partition_err <= 1e-12, "partition_of_unity", format_double(partition_err));
  oc.require(orth_min >= 1.0 / 3.0 - 1e-12 && orth_max <= 1.0 + 1e-12, "almost_orthogonality",
             "[" + format_double(orth_min) + ", " + format_double(orth_max) + "]");
  oc.require(fat_err <= 1e-15, "fat_filter_identity", format_double(fat_err));
  ctx.emit("filters.csv", t.str());
  Json j{{"grid_size", N},
         {"j_max", bank.j_max()},
         {"max_partition_error", partition_err},
         {"min_orthogonality_sum", orth_min},
         {"max_orthogonality_sum", orth_max},
         {"max_fat_identity_error", fat_err}};
  ctx.emit("filters.json", dump_json(j));
}

// ----------------------------------------------------------------------------
// decompose
// ----------------------------------------------------------------------------
void cmd_decompose(const Context& ctx, Outcome& oc) {
  ctx.top.allow({"schema_version", "command", "seed", "input"});
  const auto u = read_grid_file(input_path(ctx.top, ctx.config_dir));
  const auto bank = FilterBank::build(u.size());
  const auto f = decompose(u, bank);
  const auto norms = f.block_norms();
  CsvTable t({"j", "l2_norm", "linf_norm"});
  for (std::size_t j = 0; j < f.size(); ++j) {
    t.row().add(j).add(norms[j]).add(discrete_lp_norm(f[j].data(), Integrability::infinity()));
  }
  const double err = max_abs_diff(reconstruct(f, bank), u);
  oc.require(err <= 1e-10 * std::max(u.max_abs(), 1e-300) || err == 0.0, "exact_inversion",
             format_double(err));
  ctx.emit("blocks.csv", t.str());
  Json j{{"base", f.base().label()},
         {"grid_size", u.size()},
         {"support_length", f.support_length()},
         {"nonzero_blocks", std::count_if(norms.begin(), norms.end(), [](double v) { return v > 0.0; })},
         {"block_norms", norms},
         {"reconstruction_error", err}};
  ctx.emit("sequence.json", dump_json(j));
}

// ----------------------------------------------------------------------------
// norms
// ----------------------------------------------------------------------------
void cmd_norms(const Context& ctx, Outcome& oc) {
  ctx.top.allow({"schema_version", "command", "seed", "input", "s", "p", "q"});
  const auto u = read_grid_file(input_path(ctx.top, ctx.config_dir));
  const auto bank = FilterBank::build(u.size());
  const auto s_list = ctx.top.numbers("s", {-1.0, 0.0, 1.0, 2.0});
  const auto p = ctx.top.exponent("p", Exponent(2.0));
  const auto q = ctx.top.exponent("q", Exponent(2.0));
  Json rows = Json::array();
  for (double s : s_list) {
    const double hs = sobolev_norm(u, s);
    const double blocks = blockwise_sobolev_sum(u, s, bank);
    const auto range = dyadic_sobolev_constant(bank, s);
    const double h2 = hs * hs;
    oc.require(blocks >= h2 / 3.0 * (1.0 - 1e-9) && blocks <= 3.0 * h2 * (1.0 + 1e-9),
               "sobolev_equivalence", "s=" + format_double(s));
    rows.push_back({{"s", s},
                    {"sobolev", hs},
                    {"besov", besov_norm(u, s, p, q, bank)},
                    {"blockwise_sum", blocks},
                    {"dyadic_constant", range.constant()},
                    {"dyadic_min_ratio", range.min_ratio},
                    {"dyadic_max_ratio", range.max_ratio}});
  }
  Json j{{"grid_size", u.size()}, {"p", p.to_string()}, {"q", q.to_string()}, {"norms", rows}};
  ctx.emit("norms.json", dump_json(j));
}

// ----------------------------------------------------------------------------
// envelope
// ----------------------------------------------------------------------------
void cmd_envelope(const Context& ctx, Outcome& oc) {
  ctx.top.allow({"schema_version", "command", "seed", "input", "sequence", "s", "s1", "q"});
  std::vector<double> norms;
  std::string source;
  if (ctx.top.has("sequence")) {
    for (double v : ctx.top.numbers("sequence", {})) norms.push_back(std::abs(v));
    source = "abs";
  } else {
    const auto u = read_grid_file(input_path(ctx.top, ctx.config_dir));
    const auto f = decompose(u, FilterBank::build(u.size()));
    norms = f.block_norms();
    source = f.base().label();
  }
  const double s = ctx.top.number("s", 1.0);
  const double s1 = ctx.top.number("s1", 2.0);
  const auto q = ctx.top.exponent("q", Exponent(2.0));
  if (!(s < s1)) throw ConfigError("envelope needs s < s1");
  auto env = compute_envelope(norms, s, s1);
  env.source = source;
  const auto eq = envelope_equivalence(norms, s, q, s1);
  bool slowly_varying = true;
  bool dominated = true;
  const double growth = std::exp2(s1 - s);
  for (std::size_t n = 0; n < env.gamma.size(); ++n) {
    slowly_varying &= env.at(n) <= growth * env.at(n + 1) * (1.0 + 1e-9);
    dominated &= env.weighted[n] <= env.gamma[n] * (1.0 + 1e-12);
  }
  oc.require(eq.holds(), "envelope_equivalence",
             format_double(eq.lower) + " <= " + format_double(eq.mid) + " <= " +
                 format_double(eq.upper));
  oc.require(slowly_varying, "slowly_varying", "gamma_n > 2^{s1-s} gamma_{n+1}");
  oc.require(dominated, "pointwise_domination", "2^{ns}||f_n|| > gamma_n");
  ctx.emit("envelope.csv", envelope_csv(env));
  Json j{{"source", source},  {"s", s},
         {"s1", s1},          {"q", q.to_string()},
         {"support", env.support},
         {"lower", eq.lower}, {"mid", eq.mid},
         {"upper", eq.upper}, {"slowly_varying", slowly_varying}};
  ctx.emit("envelope.json", dump_json(j));
}

// ----------------------------------------------------------------------------
// verify
// ----------------------------------------------------------------------------
struct Suite {
  std::string name;
  std::function<std::string(Rng&)> trial;  // empty string on success
};

Summability random_q(Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  switch (pick(rng)) {
    case 0: return Summability(1.0);
    case 1: return Summability(2.0);
    default: return Summability::infinity();
  }
}

std::string check_le(const std::string& what, double a, double b, double slack = 1e-9) {
  if (a <= b * (1.0 + slack)) return {};
  return what + ": " + format_double(a) + " > " + format_double(b);
}

std::vector<Suite> verify_suites(std::size_t grid_size) {
  std::vector<Suite> suites;
  suites.push_back({"smoothing_gain", [](Rng& rng) {
    const auto a = random_block_norms(rng);
    std::uniform_real_distribution<double> rr(-2.0, 2.0), gap(0.0, 2.0);
    const double r = rr(rng), rp = r + gap(rng);
    std::uniform_int_distribution<std::size_t> nn(0, a.size() + 2);
    const auto b = smoothing_gain(a, r, rp, random_q(rng), nn(rng));
    return check_le("smoothing", b.value, b.bound);
  }});
  suites.push_back({"weighted_smoothing_sum", [](Rng& rng) {
    const auto a = random_block_norms(rng);
    std::uniform_real_distribution<double> rr(-2.0, 2.0), gap(0.05, 2.0);
    const double r = rr(rng), rp = r + gap(rng);
    const auto b = weighted_smoothing_sum(a, r, rp, random_q(rng));
    auto msg = check_le("weighted", b.value, b.bound);
    if (!msg.empty()) return msg;
    const auto pw = power_smoothing_sum(a, r, rp, Summability(2.0));
    return check_le("power", pw.value, pw.bound);
  }});
  suites.push_back({"sigma_embedding", [](Rng& rng) {
    const auto a = random_block_norms(rng);
    std::uniform_real_distribution<double> ss(-2.0, 2.0);
    const double s = ss(rng);
    const double inf = sigma_norm(a, {s, Summability::infinity()});
    const double two = sigma_norm(a, {s, Summability(2.0)});
    const double one = sigma_norm(a, {s, Summability(1.0)});
    auto msg = check_le("inf<=2", inf, two, 1e-12);
    return msg.empty() ? check_le("2<=1", two, one, 1e-12) : msg;
  }});
  suites.push_back({"young", [](Rng& rng) {
    const auto u = random_integer_sequence(rng);
    const auto v = random_integer_sequence(rng);
    const auto c = young_convolve(u, v, random_q(rng));
    return check_le("young", c.norm, c.bound, 1e-12);
  }});
  suites.push_back({"envelope", [](Rng& rng) {
    const auto a = random_block_norms(rng);
    std::uniform_real_distribution<double> ss(-2.0, 2.0), gap(0.05, 2.0);
    const double s = ss(rng), s1 = s + gap(rng);
    const auto eq = envelope_equivalence(a, s, random_q(rng), s1);
    if (!eq.holds()) return std::string("equivalence ordering");
    const auto env = compute_envelope(a, s, s1);
    for (std::size_t n = 0; n < env.gamma.size(); ++n) {
      auto msg = check_le("slowly varying", env.at(n), std::exp2(s1 - s) * env.at(n + 1));
      if (!msg.empty()) return msg;
    }
    return std::string();
  }});
  suites.push_back({"interpolation", [](Rng& rng) {
    const auto a = random_block_norms(rng, 16);
    std::uniform_real_distribution<double> s0d(-1.0, 1.0), gap(0.1, 1.5);
    const double s0 = s0d(rng), s = s0 + gap(rng), s1 = s + gap(rng);
    const auto b = best_interp_bound(a, s0, s, s1, random_q(rng));
    return check_le("interp", b.actual, b.low_bound + b.high_bound);
  }});
  suites.push_back({"exact_inversion", [grid_size](Rng& rng) {
    const auto bank = FilterBank::build(grid_size);
    const auto u = random_grid_function(rng, grid_size);
    const double err = max_abs_diff(reconstruct(decompose(u, bank), bank), u);
    return check_le("inversion", err, 1e-10 * u.max_abs(), 0.0);
  }});
  suites.push_back({"sobolev_equivalence", [grid_size](Rng& rng) {
    const auto bank = FilterBank::build(grid_size);
    const auto u = random_grid_function(rng, grid_size);
    std::uniform_real_distribution<double> ss(-1.0, 2.0);
    const double s = ss(rng);
    const double h = sobolev_norm(u, s);
    const double b = blockwise_sobolev_sum(u, s, bank);
    auto msg = check_le("upper", h * h, 3.0 * b);
    return msg.empty() ? check_le("lower", b, 3.0 * h * h) : msg;
  }});
  suites.push_back({"pseudo_norm_axioms", [grid_size](Rng& rng) {
    const auto space = grid_l2_space(grid_size);
    const std::uint64_t seed = rng();
    const auto rep = axiom_probe(
        *space, [grid_size](Rng& r) { return random_grid_function(r, grid_size).as_element(); }, 1,
        seed);
    if (rep.ok()) return std::string();
    return rep.violations.front().axiom;
  }});
  return suites;
}

void cmd_verify(const Context& ctx, Outcome& oc) {
  ctx.top.allow({"schema_version", "command", "seed", "trials", "grid_size", "suites"});
  const std::size_t trials = ctx.top.count("trials", 100);
  const std::size_t N = parse_grid_size(ctx.top, 64);
  auto suites = verify_suites(N);
  if (ctx.top.has("suites")) {
    const auto& names = ctx.top.raw("suites");
    if (!names.is_array()) throw ConfigError("suites must be an array of names");
    std::vector<Suite> chosen;
    for (const auto& n : names) {
      if (!n.is_string()) throw ConfigError("suites must be an array of names");
      auto it = std::find_if(suites.begin(), suites.end(),
                             [&](const Suite& s) { return s.name == n.get<std::string>(); });
      if (it == suites.end()) throw ConfigError("unknown suite '" + n.get<std::string>() + "'");
      chosen.push_back(*it);
    }
    suites = chosen;
  }
  Json report;
  report["seed"] = ctx.seed;
  report["trials"] = trials;
  report["suites"] = Json::object();
  if (trials > 0) {
    for (std::size_t i = 0; i < suites.size(); ++i) {
      // Each suite gets its own stream so selecting suites does not shift draws.
      Rng rng(ctx.seed ^ (0x9E3779B97F4A7C15ull * (i + 1)));
      Json fails = Json::array();
      for (std::size_t t = 0; t < trials; ++t) {
        const std::string msg = suites[i].trial(rng);
        if (!msg.empty()) {
          fails.push_back({{"trial", t}, {"detail", msg}});
          oc.fail(suites[i].name, "trial " + std::to_string(t) + ": " + msg);
        }
      }
      report["suites"][suites[i].name] = {{"trials", trials}, {"failures", fails}};
    }
  }
  ctx.emit("verify.json", dump_json(report));
}

// ----------------------------------------------------------------------------
// flow
// ----------------------------------------------------------------------------
ExperimentConfig parse_flow(const Context& ctx) {
  ctx.top.allow({"schema_version", "command", "seed", "grid_size", "scale", "flow"});
  ExperimentConfig cfg;
  cfg.seed = ctx.seed;
  cfg.flow.grid_size = parse_grid_size(ctx.top, 256);
  cfg.flow.scale = parse_scale(ctx.top);
  if (!ctx.top.has("flow")) return cfg;
  const Section f = ctx.top.sub("flow");
  f.allow({"kind", "final_time", "time_steps", "transport_speed", "mu", "ball_radius", "family",
           "samples", "n_max", "eps", "alpha", "beta", "smooth_only", "write_trajectory"});
  try {
    cfg.flow.kind = parse_flow_kind(f.text("kind", "burgers"));
    cfg.family = parse_data_family(
        f.text("family", cfg.flow.kind == FlowKind::burgers ? "trig2" : "broadband"));
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  cfg.flow.final_time = f.number("final_time", cfg.flow.kind == FlowKind::burgers ? 0.5 : 1.0);
  cfg.flow.time_steps = f.count("time_steps", 64);
  cfg.flow.transport_speed = f.number("transport_speed", 1.0);
  cfg.flow.mu = f.exponent("mu", Integrability::infinity());
  if (f.has("ball_radius") && !(f.raw("ball_radius").is_string() &&
                                f.raw("ball_radius").get<std::string>() == "auto")) {
    cfg.flow.ball_radius = f.number("ball_radius", 1.0);
    cfg.auto_radius = false;
  }
  cfg.samples = f.count("samples", 8);
  cfg.n_max = f.count("n_max", 8);
  cfg.eps = f.numbers("eps", cfg.eps);
  cfg.alpha = f.number("alpha", cfg.alpha);
  cfg.beta = f.number("beta", cfg.beta);
  cfg.smooth_only = f.flag("smooth_only", false);
  if (cfg.eps.empty()) throw ConfigError("flow.eps must not be empty");
  try {
    cfg.flow.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("flow: ") + e.what());
  }
  return cfg;
}

void cmd_flow(const Context& ctx, Outcome& oc) {
  const auto cfg = parse_flow(ctx);
  const bool write_traj =
      ctx.top.has("flow") && ctx.top.sub("flow").flag("write_trajectory", false);
  const auto ex = build_experiment(cfg);
  ExperimentResult res;
  try {
    res = run_experiment(ex);
  } catch (const ConvergenceError& e) {
    oc.fail("characteristic_solve", e.what());
    return;
  }
  for (const auto& f : res.failures) oc.fail(f.check, f.detail);
  ctx.emit("hypothesis.json", dump_json(to_json(res.hypothesis)));
  ctx.emit("convergence.csv", convergence_csv(res.convergence));
  ctx.emit("decay_profile.csv", decay_profile_csv(res.decay));
  ctx.emit("sub_bounds.csv", sub_bounds_csv(res.sub_bounds));
  Json summary = to_json(res);
  summary["config"] = to_json(ex.cfg.flow);
  summary["config"]["family"] = to_string(ex.cfg.family);
  summary["config"]["samples"] = ex.cfg.samples;
  summary["config"]["seed"] = ex.cfg.seed;
  ctx.emit("flow_report.json", dump_json(summary));
  if (write_traj) {
    const auto traj = run_flow(reconstruct(ex.datum, ex.bank), ex.cfg.flow);
    write_trajectory(ctx.out / "trajectory", traj, ex.cfg.flow);
  }
}

int dispatch(const Json& config, const fs::path& out, const fs::path& config_dir,
             std::optional<std::uint64_t> seed, bool quiet, std::ostream& log) {
  const Section top(config, "config");
  if (!top.has("schema_version")) throw ConfigError("missing schema_version");
  if (top.count("schema_version", 0) != static_cast<std::uint64_t>(kSchemaVersion)) {
    throw ConfigError("unsupported schema_version");
  }
  const std::string command = top.text("command", "");
  const std::map<std::string, void (*)(const Context&, Outcome&)> commands{
      {"filters", cmd_filters}, {"decompose", cmd_decompose}, {"norms", cmd_norms},
      {"envelope", cmd_envelope}, {"verify", cmd_verify},       {"flow", cmd_flow}};
  const auto it = commands.find(command);
  if (it == commands.end()) throw ConfigError("unknown command '" + command + "'");

  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory " + out.string() + ": " + ec.message());

  const Context ctx{top, out, config_dir, seed ? *seed : top.count("seed", 0), log, quiet};
  Outcome oc;
  it->second(ctx, oc);
  if (!oc.failures.empty()) {
    ctx.emit("failures.json", dump_json(Json{{"command", command}, {"failures", oc.failures}}));
    if (!quiet) log << command << ": " << oc.failures.size() << " assertion(s) failed\n";
    return kAssertionFailure;
  }
  if (!quiet) log << command << ": ok\n";
  return kOk;
}

int guarded(const std::function<int()>& body, std::ostream& log) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const Json::exception& e) {
    log << "invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const IoError& e) {
    log << "io failure: " << e.what() << '\n';
    return kIoFailure;
  } catch (const FormatError& e) {
    log << "io failure: " << e.what() << '\n';
    return kIoFailure;
  } catch (const fs::filesystem_error& e) {
    log << "io failure: " << e.what() << '\n';
    return kIoFailure;
  } catch (const PreconditionError& e) {
    log << "invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::exception& e) {
    log << "assertion failure: " << e.what() << '\n';
    return kAssertionFailure;
  }
}

}  // namespace

int run_config(const Json& config, const fs::path& out, std::optional<std::uint64_t> seed,
               bool quiet, std::ostream& log) {
  return guarded([&] { return dispatch(config, out, fs::current_path(), seed, quiet, log); }, log);
}

int run(const RunOptions& options, std::ostream& log) {
  return guarded(
      [&] {
        const std::string text = read_text_file(options.config);
        Json config;
        try {
          config = Json::parse(text);
        } catch (const Json::parse_error& e) {
          throw ConfigError(std::string("cannot parse config: ") + e.what());
        }
        const fs::path dir = options.config.has_parent_path() ? options.config.parent_path()
                                                              : fs::current_path();
        return dispatch(config, options.out, dir, options.seed, options.quiet, log);
      },
      log);
}

}  // namespace besov::cli
