#include "cmlab/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include "cmlab/errors.hpp"
#include "cmlab/inequalities.hpp"
#include "cmlab/proofs.hpp"
#include "cmlab/schatten.hpp"

namespace cmlab {

namespace {

struct SuiteName {
  Suite suite;
  const char* name;
};

constexpr SuiteName kSuiteNames[] = {
    {Suite::clarkson, "clarkson"},
    {Suite::parallelogram, "parallelogram"},
    {Suite::hk, "hk"},
    {Suite::bcl, "bcl"},
    {Suite::bcl_dominates_clarkson, "bcl_dominates_clarkson"},
    {Suite::mccarthy, "mccarthy"},
    {Suite::ak, "ak"},
    {Suite::cm, "cm"},
    {Suite::duality, "duality"},
    {Suite::pairing_bound, "pairing_bound"},
    {Suite::interpolation, "interpolation"},
    {Suite::conjecture, "conjecture"},
};

constexpr EnsembleKind kAllKinds[] = {
    EnsembleKind::ginibre,       EnsembleKind::hermitian,   EnsembleKind::psd,
    EnsembleKind::low_rank,      EnsembleKind::diagonal_real, EnsembleKind::equal_tuple,
    EnsembleKind::near_equal,    EnsembleKind::nilpotent,
};

int min_tuple_size(Suite suite) {
  switch (suite) {
    case Suite::pairing_bound:
    case Suite::interpolation:
      return 1;
    default:
      return 2;
  }
}

// Applies fn(i) for i in [0, count) on a pool; fn must write only to its own slot.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  if (workers <= 1) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k, v >>= 4) s[static_cast<std::size_t>(k)] = digits[v & 0xF];
  return s;
}

// ---- config parsing ----

template <class T>
std::vector<T> read_array(const Json& j, const char* key) {
  if (!j.is_array()) throw InputError(std::string("config: \"") + key + "\" must be an array");
  std::vector<T> out;
  for (const auto& e : j) {
    if constexpr (std::is_same_v<T, double>) {
      if (!e.is_number()) throw InputError(std::string("config: \"") + key + "\" needs numbers");
      out.push_back(e.get<double>());
    } else {
      if (!e.is_number_integer()) {
        throw InputError(std::string("config: \"") + key + "\" needs integers");
      }
      out.push_back(e.get<T>());
    }
  }
  return out;
}

double read_number(const Json& j, const char* key) {
  if (!j.is_number()) throw InputError(std::string("config: \"") + key + "\" must be a number");
  return j.get<double>();
}

int read_int(const Json& j, const char* key) {
  if (!j.is_number_integer()) {
    throw InputError(std::string("config: \"") + key + "\" must be an integer");
  }
  return j.get<int>();
}

EnsembleChoice read_ensemble(const Json& j) {
  EnsembleChoice c;
  if (j.is_string()) {
    c.kind = parse_ensemble_kind(j.get<std::string>());
    return c;
  }
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw InputError("config: ensemble entries need a \"kind\"");
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") {
      c.kind = parse_ensemble_kind(value.get<std::string>());
    } else if (key == "rank") {
      c.rank = read_int(value, "rank");
    } else if (key == "epsilon") {
      c.epsilon = read_number(value, "epsilon");
    } else {
      throw InputError("config: unknown ensemble key \"" + key + "\"");
    }
  }
  return c;
}

Tolerances read_tolerances(Tolerances tol, const Json& j) {
  if (!j.is_object()) throw InputError("config: \"tol\" must be an object");
  for (const auto& [key, value] : j.items()) {
    const double v = read_number(value, key.c_str());
    if (key == "atol") {
      tol.atol = v;
    } else if (key == "rtol") {
      tol.rtol = v;
    } else if (key == "zero_rel") {
      tol.zero_rel = v;
    } else if (key == "margin") {
      tol.margin = v;
    } else if (key == "scan") {
      tol.scan = v;
    } else if (key == "feasibility") {
      tol.feasibility = v;
    } else if (key == "structure") {
      tol.structure = v;
    } else {
      throw InputError("config: unknown tolerance \"" + key + "\"");
    }
  }
  return tol;
}

Json tolerances_to_json(const Tolerances& t) {
  return Json{{"atol", t.atol},       {"rtol", t.rtol},     {"zero_rel", t.zero_rel},
              {"margin", t.margin},   {"scan", t.scan},     {"feasibility", t.feasibility},
              {"structure", t.structure}};
}

Fault parse_fault(const std::string& s) {
  if (s == "none") return Fault::none;
  if (s == "flip_ak_direction") return Fault::flip_ak_direction;
  throw InputError("config: unknown fault \"" + s + "\"");
}

const char* to_string(Fault f) { return f == Fault::none ? "none" : "flip_ak_direction"; }

// ---- trial evaluation ----

struct Task {
  std::size_t suite = 0;
  std::size_t ensemble = 0;
  double p = 0.0;
  int n = 0;
  int d = 0;
  int trial = 0;
};

std::vector<int> n_values(const CampaignConfig& c, Suite suite) {
  if (is_pair_suite(suite)) return {2};
  std::vector<int> out;
  for (int n : c.n_grid)
    if (n >= min_tuple_size(suite)) out.push_back(n);
  return out;
}

std::vector<Task> enumerate_tasks(const CampaignConfig& c) {
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < c.suites.size(); ++s) {
    const Suite suite = c.suites[s];
    const auto ns = n_values(c, suite);
    for (std::size_t e = 0; e < c.ensembles.size(); ++e) {
      for (double p : c.p_grid) {
        if (!suite_accepts(suite, p)) continue;
        for (int n : ns) {
          for (int d : c.dims) {
            for (int t = 0; t < c.trials; ++t) tasks.push_back(Task{s, e, p, n, d, t});
          }
        }
      }
    }
  }
  return tasks;
}

class TrialContext {
 public:
  TrialContext(const CampaignConfig& c, const Task& task)
      : c_(c), task_(task), suite_(c.suites[task.suite]),
        spec_(trial_spec(c, c.ensembles[task.ensemble], task.n, task.d, task.trial)),
        T_(generate(spec_)) {}

  std::vector<TrialResult> run() {
    switch (suite_) {
      case Suite::clarkson: {
        const auto r = clarkson_pair(T_[0], T_[1], task_.p, c_.tol);
        add(r.lower);
        add(r.upper);
        break;
      }
      case Suite::parallelogram:
        add(parallelogram(T_[0], T_[1], c_.tol));
        break;
      case Suite::hk:
        add(hk_ntuple(T_, task_.p, c_.tol));
        break;
      case Suite::bcl:
        add(bcl(T_[0], T_[1], task_.p, c_.tol));
        break;
      case Suite::bcl_dominates_clarkson:
        add(bcl_dominates_clarkson(T_[0], T_[1], task_.p, c_.tol));
        break;
      case Suite::mccarthy:
        add(mccarthy(T_[0], T_[1], task_.p, c_.tol));
        break;
      case Suite::ak:
        if (c_.fault == Fault::flip_ak_direction) {
          add(ak_with_coefficient(T_, task_.p, T_.n(), task_.p <= 2.0, "ak", c_.tol));
        } else {
          add(ak(T_, task_.p, c_.tol));
        }
        break;
      case Suite::cm:
        add(cm(T_, task_.p, c_.tol));
        break;
      case Suite::duality:
        run_duality();
        break;
      case Suite::pairing_bound:
        run_pairing_bound();
        break;
      case Suite::interpolation:
        run_interpolation();
        break;
      case Suite::conjecture:
        run_conjecture_trace();
        break;
    }
    return std::move(out_);
  }

 private:
  void add(const InequalityReport& r) {
    out_.push_back(TrialResult{std::string(to_string(suite_)), r.tag, task_.p, task_.n, task_.d,
                               std::string(to_string(spec_.kind)), task_.trial, r.lhs, r.rhs,
                               r.margin, r.satisfied});
  }

  void run_duality() {
    const double q = task_.p;
    add(ak_via_duality(T_, q, c_.tol));
    double mass = 0.0;
    for (const auto& phi : T_) mass += schatten_power_sum(phi, q, c_.tol);
    if (mass == 0.0) return;  // images undefined for the zero tuple
    const OperatorTuple images = duality_images(T_, q, c_.tol);
    const double p = dual_exponent(q);
    double image_mass = 0.0;
    for (const auto& x : images) image_mass += schatten_power_sum(x, p, c_.tol);
    add(make_equality_report("duality.image_mass", image_mass, 1.0, q, T_.n(), T_.dim(),
                             c_.tol.margin));
  }

  void run_pairing_bound() {
    const WitnessSet W = witness_set(T_, task_.p, c_.tol);
    InequalityReport at_witness = pairing_bound_check(T_, W.Y, W.pairs, task_.p, c_.tol);
    at_witness.tag = "pairing_bound.witness";
    add(at_witness);

    Rng rng(derive_seed(spec_.seed, 0x5EEDull));
    const ComplexMatrix Y = ginibre(rng, T_.dim(), T_.dim());
    std::vector<ComplexMatrix> pairs;
    for (std::size_t m = 0; m < pair_count(T_.size()); ++m) {
      pairs.push_back(ginibre(rng, T_.dim(), T_.dim()));
    }
    InequalityReport arbitrary = pairing_bound_check(T_, Y, pairs, task_.p, c_.tol);
    arbitrary.tag = "pairing_bound.random";
    add(arbitrary);
  }

  void run_interpolation() {
    const double p = task_.p;
    const WitnessSet W = witness_set(T_, p, c_.tol);
    const auto xs = linspace(0.5, 1.0, c_.x_samples);
    const auto ys = c_.y_samples == 1 ? std::vector<double>{0.0}
                                      : linspace(-c_.y_half_width, c_.y_half_width, c_.y_samples);
    const ConvexityScan scan = convexity_scan(T_, W, p, xs, ys, c_.tol);
    const int n = T_.n(), d = T_.dim();
    add(make_report("interpolation.boundary[x=1]", scan.sup_abs.back(), scan.M1, p, n, d,
                    c_.tol.margin));
    add(make_report("interpolation.boundary[x=1/2]", scan.sup_abs.front(), scan.M2, p, n, d,
                    c_.tol.margin));
    const double at_inverse_p = std::abs(analytic_family_eval(T_, W, p, StripPoint(1.0 / p, 0.0),
                                                              c_.tol));
    add(make_report("interpolation.three_lines", at_inverse_p,
                    three_lines_bound(scan.M1, scan.M2, p), p, n, d, c_.tol.margin));
    // no interior triple with a nonzero sup leaves the excess at -inf; report 0 then
    const double excess =
        std::isinf(scan.worst_midpoint_excess) && scan.worst_midpoint_excess < 0.0
            ? 0.0
            : scan.worst_midpoint_excess;
    add(make_report("interpolation.convexity", excess, c_.tol.scan, p, n, d, c_.tol.margin));
  }

  void run_conjecture_trace() {
    const auto I = ConjectureInstance::make(T_, task_.p);
    const NecessaryConditions nc = necessary_conditions(I, c_.tol);
    const bool upper = I.direction == Direction::upper;
    add(make_report(upper ? "conjecture.trace[p>2]" : "conjecture.trace[p<=2]",
                    upper ? nc.trace_lhs : nc.trace_rhs, upper ? nc.trace_rhs : nc.trace_lhs,
                    task_.p, T_.n(), T_.dim(), c_.tol.margin));
  }

  const CampaignConfig& c_;
  const Task& task_;
  Suite suite_;
  EnsembleSpec spec_;
  OperatorTuple T_;
  std::vector<TrialResult> out_;
};

TrialResult failure_result(const CampaignConfig& c, const Task& task, const std::string& what) {
  TrialResult r;
  r.suite = std::string(to_string(c.suites[task.suite]));
  r.tag = r.suite + ".error: " + what;
  r.p = task.p;
  r.n = task.n;
  r.d = task.d;
  r.kind = std::string(to_string(c.ensembles[task.ensemble].kind));
  r.trial = task.trial;
  r.lhs = r.rhs = std::numeric_limits<double>::quiet_NaN();
  r.margin = -std::numeric_limits<double>::infinity();
  r.satisfied = false;
  return r;
}

}  // namespace

std::string_view to_string(Suite suite) {
  for (const auto& s : kSuiteNames)
    if (s.suite == suite) return s.name;
  return "unknown";
}

Suite parse_suite(std::string_view name) {
  for (const auto& s : kSuiteNames)
    if (name == s.name) return s.suite;
  throw InputError("unknown suite \"" + std::string(name) + "\"");
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = [] {
    std::vector<Suite> v;
    for (const auto& s : kSuiteNames) v.push_back(s.suite);
    return v;
  }();
  return suites;
}

bool suite_accepts(Suite suite, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) return false;
  switch (suite) {
    case Suite::clarkson:
    case Suite::hk:
    case Suite::conjecture:
      return true;
    case Suite::parallelogram:
      return p == 2.0;
    case Suite::bcl:
      return p >= 1.0;
    case Suite::bcl_dominates_clarkson:
      return p >= 1.0 && p <= 2.0;
    case Suite::mccarthy:
    case Suite::ak:
    case Suite::cm:
      return p > 1.0;
    case Suite::duality:
      return p >= 2.0;
    case Suite::pairing_bound:
    case Suite::interpolation:
      return p > 1.0 && p <= 2.0;
  }
  return false;
}

bool is_pair_suite(Suite suite) {
  switch (suite) {
    case Suite::clarkson:
    case Suite::parallelogram:
    case Suite::bcl:
    case Suite::bcl_dominates_clarkson:
    case Suite::mccarthy:
      return true;
    default:
      return false;
  }
}

void CampaignConfig::validate() const {
  if (suites.empty()) throw InputError("config: no suites");
  if (ensembles.empty()) throw InputError("config: no ensembles");
  if (p_grid.empty()) throw InputError("config: empty p-grid");
  if (n_grid.empty()) throw InputError("config: empty n-grid");
  if (dims.empty()) throw InputError("config: empty dims");
  if (trials < 1) throw InputError("config: trials must be >= 1");
  for (double p : p_grid) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InputError("config: p must be finite and > 0");
    if (p > 1.0 && p <= 1.0 + 1e-3) {
      throw InputError("config: p in (1, 1.001] loses all precision in q = p/(p-1)");
    }
  }
  for (int n : n_grid)
    if (n < 1) throw InputError("config: n must be >= 1");
  for (int d : dims)
    if (d < 1) throw InputError("config: d must be >= 1");
  const int d_min = *std::min_element(dims.begin(), dims.end());
  for (const auto& e : ensembles) {
    if (e.rank < 0 || e.rank > d_min) {
      throw InputError("config: low_rank rank must lie in [0, min dims] (0 = automatic)");
    }
    if (!(e.epsilon >= 0.0) || !std::isfinite(e.epsilon)) {
      throw InputError("config: near_equal epsilon must be finite and >= 0");
    }
  }
  for (Suite s : suites) {
    if (std::none_of(p_grid.begin(), p_grid.end(), [&](double p) { return suite_accepts(s, p); })) {
      throw InputError("config: p-grid has no value in the domain of suite " +
                       std::string(to_string(s)));
    }
    if (n_values(*this, s).empty()) {
      throw InputError("config: n-grid has no admissible tuple size for suite " +
                       std::string(to_string(s)));
    }
  }
  const double tols[] = {tol.atol, tol.rtol, tol.zero_rel, tol.margin,
                         tol.scan, tol.feasibility, tol.structure};
  for (double t : tols)
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("config: tolerances must be >= 0");
  if (threads < 0) throw InputError("config: threads must be >= 0");
  if (budget < 1 || restarts < 1) throw InputError("config: budget and restarts must be >= 1");
  if (x_samples < 3) throw InputError("config: x_samples must be >= 3");
  if (y_samples < 1) throw InputError("config: y_samples must be >= 1");
  if (!(y_half_width >= 0.0) || !std::isfinite(y_half_width)) {
    throw InputError("config: y_half_width must be finite and >= 0");
  }
}

CampaignConfig preset_config() {
  CampaignConfig c;
  c.suites = all_suites();
  for (EnsembleKind k : kAllKinds) c.ensembles.push_back(EnsembleChoice{k});
  c.p_grid = {0.5, 1.0, 1.3, 1.5, 2.0, 2.5, 3.0, 4.0};
  c.n_grid = {2, 3, 4, 5};
  c.dims = {1, 2, 3, 4, 8};
  return c;
}

CampaignConfig inequality_preset() {
  CampaignConfig c = preset_config();
  c.suites = {Suite::clarkson, Suite::hk, Suite::bcl, Suite::bcl_dominates_clarkson,
              Suite::mccarthy, Suite::ak, Suite::cm};
  return c;
}

CampaignConfig conjecture_preset() {
  CampaignConfig c = preset_config();
  c.suites = {Suite::conjecture};
  c.p_grid = {0.5, 1.5, 2.5, 3.0, 4.0};
  c.n_grid = {2, 3};
  c.dims = {1, 2, 3, 4};
  c.trials = 2;
  return c;
}

CampaignConfig apply_config_json(CampaignConfig c, const Json& j) {
  if (!j.is_object()) throw InputError("config: top level must be an object");
  if (j.contains("preset")) {
    const Json& v = j.at("preset");
    const std::string name = v.is_string() ? v.get<std::string>() : "";
    if (name == "full") {
      c = preset_config();
    } else if (name == "inequalities") {
      c = inequality_preset();
    } else if (name == "conjecture") {
      c = conjecture_preset();
    } else {
      throw InputError("config: unknown preset (expected full, inequalities or conjecture)");
    }
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "preset") continue;
    if (key == "suites") {
      if (!value.is_array()) throw InputError("config: \"suites\" must be an array");
      c.suites.clear();
      for (const auto& s : value) {
        if (!s.is_string()) throw InputError("config: suite names must be strings");
        c.suites.push_back(parse_suite(s.get<std::string>()));
      }
    } else if (key == "ensembles") {
      if (!value.is_array()) throw InputError("config: \"ensembles\" must be an array");
      c.ensembles.clear();
      for (const auto& e : value) c.ensembles.push_back(read_ensemble(e));
    } else if (key == "p_grid") {
      c.p_grid = read_array<double>(value, "p_grid");
    } else if (key == "n_grid") {
      c.n_grid = read_array<int>(value, "n_grid");
    } else if (key == "dims") {
      c.dims = read_array<int>(value, "dims");
    } else if (key == "trials") {
      c.trials = read_int(value, "trials");
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw InputError("config: \"seed\" must be >= 0");
      c.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      if (!value.is_string()) throw InputError("config: \"out\" must be a string");
      c.out = value.get<std::string>();
    } else if (key == "tol") {
      c.tol = read_tolerances(c.tol, value);
    } else if (key == "threads") {
      c.threads = read_int(value, "threads");
    } else if (key == "fault") {
      if (!value.is_string()) throw InputError("config: \"fault\" must be a string");
      c.fault = parse_fault(value.get<std::string>());
    } else if (key == "budget") {
      c.budget = read_int(value, "budget");
    } else if (key == "restarts") {
      c.restarts = read_int(value, "restarts");
    } else if (key == "x_samples") {
      c.x_samples = read_int(value, "x_samples");
    } else if (key == "y_samples") {
      c.y_samples = read_int(value, "y_samples");
    } else if (key == "y_half_width") {
      c.y_half_width = read_number(value, "y_half_width");
    } else {
      throw InputError("config: unknown key \"" + key + "\"");
    }
  }
  return c;
}

Json config_to_json(const CampaignConfig& c) {
  Json suites = Json::array();
  for (Suite s : c.suites) suites.push_back(std::string(to_string(s)));
  Json ensembles = Json::array();
  for (const auto& e : c.ensembles) {
    ensembles.push_back(
        Json{{"kind", std::string(to_string(e.kind))}, {"rank", e.rank}, {"epsilon", e.epsilon}});
  }
  return Json{{"suites", suites},
              {"ensembles", ensembles},
              {"p_grid", c.p_grid},
              {"n_grid", c.n_grid},
              {"dims", c.dims},
              {"trials", c.trials},
              {"seed", c.seed},
              {"tol", tolerances_to_json(c.tol)},
              {"fault", to_string(c.fault)},
              {"budget", c.budget},
              {"restarts", c.restarts},
              {"x_samples", c.x_samples},
              {"y_samples", c.y_samples},
              {"y_half_width", c.y_half_width}};
}

std::uint64_t config_hash(const CampaignConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : config_to_json(config).dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t trial_seed(std::uint64_t master, EnsembleKind kind, int n, int d, int trial) {
  std::uint64_t s = derive_seed(master, static_cast<std::uint64_t>(kind));
  s = derive_seed(s, static_cast<std::uint64_t>(n));
  s = derive_seed(s, static_cast<std::uint64_t>(d));
  return derive_seed(s, static_cast<std::uint64_t>(trial));
}

EnsembleSpec trial_spec(const CampaignConfig& config, const EnsembleChoice& choice, int n, int d,
                        int trial) {
  EnsembleSpec spec;
  spec.kind = choice.kind;
  spec.n = n;
  spec.d = d;
  spec.seed = trial_seed(config.seed, choice.kind, n, d, trial);
  spec.rank = choice.rank == 0 ? std::max(1, d / 2) : choice.rank;
  spec.epsilon = choice.epsilon;
  return spec;
}

CampaignReport run_campaign(const CampaignConfig& config) {
  config.validate();
  const std::vector<Task> tasks = enumerate_tasks(config);
  std::vector<std::vector<TrialResult>> slots(tasks.size());
  parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
    try {
      slots[i] = TrialContext(config, tasks[i]).run();
    } catch (const std::exception& e) {
      slots[i] = {failure_result(config, tasks[i], e.what())};
    }
  });

  CampaignReport report;
  report.seed = config.seed;
  report.config_hash = config_hash(config);
  report.trials = tasks.size();
  for (Suite s : config.suites) {
    SuiteSummary summary;
    summary.suite = std::string(to_string(s));
    summary.worst_margin = std::numeric_limits<double>::infinity();
    report.summary.push_back(std::move(summary));
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    SuiteSummary& summary = report.summary[tasks[i].suite];
    ++summary.trials;
    for (auto& r : slots[i]) {
      ++summary.results;
      if (!r.satisfied) ++summary.violations;
      if (!(r.margin >= summary.worst_margin)) {
        summary.worst_margin = r.margin;
        summary.worst_tag = r.tag;
      }
      report.results.push_back(std::move(r));
    }
  }
  for (const auto& s : report.summary) report.violations += s.violations;
  return report;
}

Json trial_result_to_json(const TrialResult& r) {
  return Json{{"suite", r.suite},
              {"tag", r.tag},
              {"p", number_to_json(r.p)},
              {"n", r.n},
              {"d", r.d},
              {"kind", r.kind},
              {"trial", r.trial},
              {"lhs", number_to_json(r.lhs)},
              {"rhs", number_to_json(r.rhs)},
              {"margin", number_to_json(r.margin)},
              {"satisfied", r.satisfied}};
}

Json results_to_json(const std::vector<TrialResult>& results) {
  Json out = Json::array();
  for (const auto& r : results) out.push_back(trial_result_to_json(r));
  return out;
}

Json campaign_report_to_json(const CampaignReport& report, bool with_timestamp) {
  Json meta{{"seed", report.seed},
            {"config_hash", hex64(report.config_hash)},
            {"version", kVersion}};
  if (with_timestamp) meta["generated_at"] = utc_timestamp();
  Json suites = Json::array();
  for (const auto& s : report.summary) {
    suites.push_back(Json{{"suite", s.suite},
                          {"trials", s.trials},
                          {"results", s.results},
                          {"violations", s.violations},
                          {"worst_margin", number_to_json(s.worst_margin)},
                          {"worst_tag", s.worst_tag}});
  }
  return Json{{"meta", meta},
              {"results", results_to_json(report.results)},
              {"summary", Json{{"suites", suites},
                               {"trials", report.trials},
                               {"results", report.results.size()},
                               {"violations", report.violations}}}};
}

int run_verify(const CampaignConfig& config, std::ostream& log) {
  try {
    config.validate();
  } catch (const InputError& e) {
    log << "invalid config: " << e.what() << '\n';
    return kExitInvalid;
  }
  const CampaignReport report = run_campaign(config);
  if (!config.out.empty()) {
    try {
      write_json_file(config.out, campaign_report_to_json(report));
    } catch (const InputError& e) {
      log << e.what() << '\n';
      return kExitInvalid;
    }
  }
  for (const auto& s : report.summary) {
    log << s.suite << ": " << s.trials << " trials, " << s.results << " results, "
        << s.violations << " violations, worst margin " << format_double(s.worst_margin);
    if (!s.worst_tag.empty()) log << " (" << s.worst_tag << ')';
    log << '\n';
  }
  log << "total: " << report.trials << " trials, " << report.violations << " violations\n";
  return report.violations == 0 ? kExitOk : kExitViolation;
}

int run_witness(const OperatorTuple& T, double p, const std::string& out, std::ostream& log,
                const Tolerances& tol) {
  if (std::isnan(p) || !(p > 1.0) || p > 2.0) {
    log << "witness: requires 1 < p <= 2\n";
    return kExitInvalid;
  }
  if (T.size() < 2) {
    log << "witness: needs n >= 2 matrices\n";
    return kExitInvalid;
  }
  const double q = dual_exponent(p);
  const ProofReplay replay = ak_from_witness(T, p, tol);

  Json identities = Json::array();
  auto identity = [&](const std::string& name, const ComplexMatrix& B, const ComplexMatrix& Y) {
    const double target = std::pow(schatten_norm(B, SchattenExponent(p), tol).value, q);
    const double pairing = trace_pairing(Y, B).real();
    const double mass = schatten_power_sum(Y, q, tol) == 0.0
                            ? 0.0
                            : std::pow(schatten_norm(Y, SchattenExponent(q), tol).value, p);
    identities.push_back(Json{{"operator", name},
                              {"norm_q", number_to_json(target)},
                              {"trace_YB", number_to_json(pairing)},
                              {"witness_mass", number_to_json(mass)}});
    log << name << ": ||B||_p^q = " << format_double(target)
        << ", tr(YB) = " << format_double(pairing) << ", ||Y||_q^p = " << format_double(mass)
        << '\n';
  };
  identity("sum", T.sum(), replay.witnesses.Y);
  const auto diffs = T.pairwise_differences();
  const auto pairs = index_pairs(T.n());
  for (std::size_t m = 0; m < diffs.size(); ++m) {
    identity("A" + std::to_string(pairs[m].first + 1) + "-A" + std::to_string(pairs[m].second + 1),
             diffs[m], replay.witnesses.pairs[m]);
  }
  log << "pairing bound: " << format_double(replay.bound.lhs)
      << " <= " << format_double(replay.bound.rhs) << '\n';
  log << "after cancellation: " << format_double(replay.result.lhs)
      << " <= " << format_double(replay.result.rhs) << '\n';
  log << "direct ak: " << format_double(replay.direct.lhs) << " <= "
      << format_double(replay.direct.rhs) << '\n';

  const bool ok = replay.witness_identities_ok && replay.bound.satisfied &&
                  replay.cancellation_ok && replay.result.satisfied && replay.matches_ak;
  log << "witness chain " << (ok ? "holds" : "FAILS") << '\n';
  if (!out.empty()) {
    Json j{{"p", p},
           {"q", q},
           {"n", T.n()},
           {"d", T.dim()},
           {"identities", identities},
           {"max_witness_defect", number_to_json(replay.max_witness_defect)},
           {"S", number_to_json(replay.S)},
           {"pairing", number_to_json(replay.pairing)},
           {"witness_mass", number_to_json(replay.witness_mass)},
           {"pairing_bound", report_to_json(replay.bound)},
           {"result", report_to_json(replay.result)},
           {"direct", report_to_json(replay.direct)},
           {"witness_identities_ok", replay.witness_identities_ok},
           {"cancellation_ok", replay.cancellation_ok},
           {"matches_ak", replay.matches_ak}};
    try {
      write_json_file(out, j);
    } catch (const InputError& e) {
      log << e.what() << '\n';
      return kExitInvalid;
    }
  }
  return ok ? kExitOk : kExitViolation;
}

int run_interpolate(const OperatorTuple& T, double p, std::span<const double> x_grid,
                    std::span<const double> y_grid, const std::string& out, std::ostream& csv,
                    std::ostream& log, const Tolerances& tol) {
  if (std::isnan(p) || !(p > 1.0) || p > 2.0) {
    log << "interpolate: requires 1 < p <= 2\n";
    return kExitInvalid;
  }
  ConvexityScan scan;
  WitnessSet W;
  try {
    W = witness_set(T, p, tol);
    scan = convexity_scan(T, W, p, x_grid, y_grid, tol);
  } catch (const std::exception& e) {
    log << "interpolate: " << e.what() << '\n';
    return kExitInvalid;
  }
  if (out.empty()) {
    write_scan_csv(csv, scan);
  } else {
    std::ofstream file(out);
    if (!file) {
      log << "cannot write " << out << '\n';
      return kExitInvalid;
    }
    write_scan_csv(file, scan);
  }
  const double f = std::abs(analytic_family_eval(T, W, p, StripPoint(1.0 / p, 0.0), tol));
  const double bound = three_lines_bound(scan.M1, scan.M2, p);
  const bool interpolated = f <= bound + 1e-8;
  log << "|f(1/p)| = " << format_double(f) << " <= " << format_double(bound)
      << " (M1 = " << format_double(scan.M1) << ", M2 = " << format_double(scan.M2) << "): "
      << (interpolated ? "ok" : "VIOLATED") << "; convex " << (scan.convex ? "yes" : "NO")
      << ", bounded " << (scan.bounded ? "yes" : "NO") << '\n';
  return interpolated && scan.convex && scan.bounded ? kExitOk : kExitViolation;
}

std::vector<ConjectureRecord> run_conjecture_campaign(const CampaignConfig& config) {
  struct Cell {
    std::size_t ensemble;
    double p;
    int n;
    int d;
    int trial;
  };
  std::vector<Cell> cells;
  for (std::size_t e = 0; e < config.ensembles.size(); ++e)
    for (double p : config.p_grid)
      for (int n : config.n_grid) {
        if (n < 2) continue;
        for (int d : config.dims)
          for (int t = 0; t < config.trials; ++t) cells.push_back(Cell{e, p, n, d, t});
      }
  std::vector<ConjectureRecord> records(cells.size());
  parallel_for(cells.size(), config.threads, [&](std::size_t i) {
    const Cell& c = cells[i];
    const EnsembleSpec spec = trial_spec(config, config.ensembles[c.ensemble], c.n, c.d, c.trial);
    const auto I = ConjectureInstance::make(generate(spec), c.p);
    SearchOptions options;
    options.budget = config.budget;
    options.restarts = config.restarts;
    options.seed = derive_seed(spec.seed, 0xC0DEull);
    options.tol_feasibility = config.tol.feasibility;
    ConjectureRecord& r = records[i];
    r.kind = std::string(to_string(spec.kind));
    r.n = c.n;
    r.d = c.d;
    r.p = c.p;
    r.trial = c.trial;
    r.certificate = unitary_search(I, options);
    r.verified = r.certificate.status == CertificateStatus::feasible &&
                 verify_certificate(I, r.certificate, config.tol.feasibility);
  });
  return records;
}

Json conjecture_report_to_json(const CampaignConfig& config,
                               const std::vector<ConjectureRecord>& records,
                               bool with_timestamp) {
  Json meta{{"seed", config.seed},
            {"config_hash", hex64(config_hash(config))},
            {"version", kVersion}};
  if (with_timestamp) meta["generated_at"] = utc_timestamp();
  Json rows = Json::array();
  std::size_t feasible = 0, unresolved = 0, violated = 0, trace_failures = 0;
  for (const auto& r : records) {
    Json row{{"kind", r.kind}, {"p", r.p},         {"n", r.n},
             {"d", r.d},       {"trial", r.trial}, {"verified", r.verified}};
    row["certificate"] = certificate_to_json(r.certificate);
    rows.push_back(std::move(row));
    switch (r.certificate.status) {
      case CertificateStatus::feasible:
        ++feasible;
        break;
      case CertificateStatus::unresolved:
        ++unresolved;
        break;
      case CertificateStatus::necessary_condition_violated:
        ++violated;
        break;
    }
    if (!r.certificate.conditions.trace_ok) ++trace_failures;
  }
  return Json{{"meta", meta},
              {"records", rows},
              {"summary", Json{{"instances", records.size()},
                               {"feasible", feasible},
                               {"unresolved", unresolved},
                               {"necessary_condition_violated", violated},
                               {"trace_condition_failures", trace_failures}}}};
}

int run_conjecture(const CampaignConfig& config, std::ostream& log) {
  try {
    config.validate();
    if (std::none_of(config.n_grid.begin(), config.n_grid.end(), [](int n) { return n >= 2; })) {
      throw InputError("config: conjecture needs some n >= 2");
    }
  } catch (const InputError& e) {
    log << "invalid config: " << e.what() << '\n';
    return kExitInvalid;
  }
  const auto records = run_conjecture_campaign(config);
  const Json report = conjecture_report_to_json(config, records);
  if (!config.out.empty()) {
    try {
      write_json_file(config.out, report);
    } catch (const InputError& e) {
      log << e.what() << '\n';
      return kExitInvalid;
    }
  }
  for (const auto& r : records) {
    if (r.certificate.status == CertificateStatus::feasible) continue;
    log << to_string(r.certificate.status) << ": kind " << r.kind << ", p " << r.p << ", n "
        << r.n << ", d " << r.d << ", trial " << r.trial << ", residual "
        << format_double(r.certificate.residual) << '\n';
  }
  const Json& s = report.at("summary");
  log << "instances " << s.at("instances") << ", feasible " << s.at("feasible")
      << ", unresolved " << s.at("unresolved") << ", necessary condition violated "
      << s.at("necessary_condition_violated") << '\n';
  return s.at("trace_condition_failures").get<std::size_t>() == 0 ? kExitOk : kExitViolation;
}

}  // namespace cmlab
