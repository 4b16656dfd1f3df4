#include "qroof/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qroof/capacity.hpp"
#include "qroof/concurrence.hpp"
#include "qroof/entanglement.hpp"
#include "qroof/errors.hpp"
#include "qroof/parallel.hpp"
#include "qroof/roof_oracle.hpp"

namespace qroof {

namespace {

using nlohmann::json;

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) throw ParseError(std::string("missing numeric field \"") + key + "\"");
  return j[key].get<double>();
}

std::string format_vec(const Vec3& v) {
  return format_number(v(0)) + "," + format_number(v(1)) + "," + format_number(v(2));
}

/// Prints "key=value" lines.
void kv(std::ostream& out, const std::string& key, const std::string& value) { out << key << '=' << value << '\n'; }
void kv(std::ostream& out, const std::string& key, double value) { kv(out, key, format_number(value)); }

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("seed must be an integer, got \"" + s + "\"");
  }
}

double parse_base(const std::string& s) {
  if (s == "2") return 2.0;
  if (s == "e") return std::numbers::e;
  throw ParseError("base must be 2 or e, got \"" + s + "\"");
}

/// Refuses maps outside the positive region, naming the violated condition.
void require_positive(const QubitMap& m) {
  const PositivityReport r = positivity_report(m);
  if (r.cls == PositivityClass::NotPositive) throw NotPositive(r.violation);
}

void require_positive(const AxialParams& p) {
  const PositivityReport r = positivity_report(p);
  if (r.cls == PositivityClass::NotPositive) throw NotPositive(r.violation);
}

/// Output sink: stdout unless a path is given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw ParseError("cannot write to \"" + path + "\"");
    out_ = &file_;
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

struct Common {
  std::string seed = "0x5EED";
  std::string base = "2";
  std::string state = "0,0,0";

  Budget budget() const {
    Budget b;
    b.seed = parse_seed(seed);
    return b;
  }
};

std::string foliation_text(const Foliation& f) {
  if (f.is_flat()) {
    std::string s = "Flat";
    for (const Vec3& d : f.flat().directions) s += " direction=(" + format_vec(d) + ")";
    return s;
  }
  const MinkowskiVector& p = f.apex().point;
  return "Apex point=(" + format_number(p.x0) + "," + format_vec(p.x) + ")";
}

int cmd_concurrence(const std::string& channel, const Common& c, std::ostream& out) {
  const QubitMap m = load_channel(channel);
  require_positive(m);
  const State s(parse_triple(c.state));
  const ConcurrenceForm form(m);
  const auto& w = form.w_flow();
  kv(out, "C", form(s));
  kv(out, "w0", form.w0());
  kv(out, "w_flow", format_number(w[0]) + "," + format_number(w[1]) + "," + format_number(w[2]) + "," +
                        format_number(w[3]));
  kv(out, "foliation", foliation_text(form.foliation()));
  return 0;
}

int cmd_entanglement(const std::string& channel, const Common& c, std::ostream& out) {
  const QubitMap m = load_channel(channel);
  require_positive(m);
  const State s(parse_triple(c.state));
  const double base = parse_base(c.base);
  const EntanglementResult r = entanglement_detail(m, s, base, c.budget());
  const auto [lower, upper] = entanglement_bounds(m, s, base);
  kv(out, "E", r.value);
  kv(out, "C", r.concurrence);
  kv(out, "lower", lower);
  kv(out, "upper", upper);
  kv(out, "method", r.closed_form ? "flat-roof" : "oracle");
  kv(out, "flat", r.flat ? "true" : "false");
  return 0;
}

int cmd_oracle(const std::string& channel, const Common& c, const std::string& functional, int max_length,
               std::ostream& out) {
  const QubitMap m = load_channel(channel);
  require_positive(m);
  const State s(parse_triple(c.state));
  PureFunctional g;
  if (functional == "concurrence") {
    g = concurrence_functional(m);
  } else if (functional == "entropy") {
    g = output_entropy_functional(m, parse_base(c.base));
  } else {
    throw ParseError("functional must be concurrence or entropy, got \"" + functional + "\"");
  }
  const RoofResult r = minimize_roof(s, g, max_length, c.budget());
  kv(out, "value", r.value);
  kv(out, "flat", r.flat ? "true" : "false");
  kv(out, "spread", r.spread);
  for (int k = 0; k < 3; ++k)
    if (std::isfinite(r.best_by_length[static_cast<std::size_t>(k)]))
      kv(out, "best_length_" + std::to_string(k + 2), r.best_by_length[static_cast<std::size_t>(k)]);
  for (const auto& mem : r.decomposition.members)
    kv(out, "member", format_number(mem.weight) + "," + format_vec(mem.direction));
  return 0;
}

int cmd_capacity(const std::string& channel, const Common& c, const std::optional<double>& alpha,
                 const std::optional<double>& gamma, const std::string& beta_grid, const std::string& path,
                 std::ostream& out) {
  CapacityOptions options;
  options.budget = c.budget();
  if (!channel.empty() && (alpha || gamma || !beta_grid.empty()))
    throw ParseError("capacity takes either a channel or --alpha/--gamma/--beta, not both");
  if (!beta_grid.empty()) {
    if (!alpha || !gamma) throw ParseError("a beta sweep needs --alpha and --gamma");
    const auto betas = parse_grid(beta_grid);
    for (double b : betas) require_positive(AxialParams{*alpha, b, *gamma});
    const auto points = capacity_sweep(*alpha, *gamma, betas, options);
    Sink sink(path, out);
    sink.stream() << "beta,chi,argmax_z,phase\n";
    for (const auto& p : points)
      sink.stream() << format_number(p.beta) << ',' << format_number(p.chi) << ',' << format_number(p.argmax_z)
                    << ',' << to_string(p.phase) << '\n';
    return 0;
  }
  if (channel.empty()) throw ParseError("capacity needs a channel or a beta sweep");
  const QubitMap m = load_channel(channel);
  require_positive(m);
  const CapacityResult r = hsw_capacity(m, options);
  kv(out, "chi", r.chi);
  kv(out, "argmax", format_vec(r.argmax_state.bloch()));
  return 0;
}

std::string phase_or_not_positive(const AxialParams& p) {
  if (positivity_report(p).cls == PositivityClass::NotPositive) return "not-positive";
  return to_string(classify_phase(p));
}

int cmd_phase_diagram(double alpha, const std::string& gamma_grid, const std::string& beta_grid,
                      const std::string& path, std::ostream& out) {
  const auto gammas = parse_grid(gamma_grid), betas = parse_grid(beta_grid);
  Sink sink(path, out);
  auto& o = sink.stream();
  o << "gamma,beta,phase,beta_c,beta1,beta2,beta_max\n";
  for (double gamma : gammas) {
    const double bc = std::sqrt(std::max(0.0, axial_beta_c_sq(alpha, gamma)));
    const double bmax = std::sqrt(std::max(0.0, axial_beta_max_sq(alpha, gamma)));
    double b1 = std::nan(""), b2 = std::nan("");
    try {
      const BifurcationBetas b = bifurcation_betas(alpha, gamma);
      b1 = b.beta1;
      b2 = b.beta2;
    } catch (const DegenerateFamily&) {
    }
    for (double beta : betas) {
      o << format_number(gamma) << ',' << format_number(beta) << ',' << phase_or_not_positive({alpha, beta, gamma})
        << ',' << format_number(bc) << ',' << format_number(b1) << ',' << format_number(b2) << ','
        << format_number(bmax) << '\n';
    }
  }
  return 0;
}

int cmd_sweep(const std::string& alpha_grid, const std::string& gamma_grid, const std::string& beta_grid,
              const std::string& outputs, const Common& c, const std::string& path, std::ostream& out) {
  const auto alphas = parse_grid(alpha_grid), gammas = parse_grid(gamma_grid), betas = parse_grid(beta_grid);
  if (alphas.size() > 1 && gammas.size() > 1) throw ParseError("fix either alpha or gamma; the other may be a grid");
  std::vector<std::string> cols;
  std::stringstream ss(outputs);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item != "concurrence" && item != "entanglement" && item != "capacity" && item != "phase")
      throw ParseError("unknown output \"" + item + "\" (expected concurrence, entanglement, capacity, phase)");
    cols.push_back(item);
  }
  if (cols.empty()) throw ParseError("--outputs must name at least one column");
  const State s(parse_triple(c.state));
  const double base = parse_base(c.base);
  CapacityOptions options;
  options.budget = c.budget();

  Sink sink(path, out);
  auto& o = sink.stream();
  o << "alpha,gamma,beta";
  for (const auto& col : cols) o << ',' << col;
  o << '\n';
  for (double alpha : alphas) {
    for (double gamma : gammas) {
      for (double beta : betas) {
        const AxialParams p{alpha, beta, gamma};
        const bool positive = positivity_report(p).cls != PositivityClass::NotPositive;
        o << format_number(alpha) << ',' << format_number(gamma) << ',' << format_number(beta);
        const QubitMap m = axial(p);
        for (const auto& col : cols) {
          o << ',';
          if (col == "phase") {
            o << phase_or_not_positive(p);
          } else if (!positive) {
            o << "nan";
          } else if (col == "concurrence") {
            o << format_number(concurrence(m, s));
          } else if (col == "entanglement") {
            o << format_number(entanglement(m, s, base, options.budget));
          } else {
            o << format_number(hsw_capacity(m, options).chi);
          }
        }
        o << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

QubitMap parse_channel(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("channel is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("channel needs a string field \"kind\"");
  const std::string kind = j["kind"];
  if (kind == "axial") return axial({number_field(j, "alpha"), number_field(j, "beta"), number_field(j, "gamma")});
  if (kind == "named") {
    if (!j.contains("name") || !j["name"].is_string()) throw ParseError("named channel needs a string field \"name\"");
    const std::string name = j["name"];
    const double param = number_field(j, "param");
    if (name == "depolarizing") return depolarizing(param);
    if (name == "phase_damping") return phase_damping(param);
    if (name == "amplitude_damping") {
      if (param < 0.0 || param > 1.0) throw ParseError("amplitude_damping param must lie in [0, 1]");
      return amplitude_damping(param);
    }
    throw ParseError("unknown channel name \"" + name + "\"");
  }
  if (kind == "general") {
    QubitMap m;
    const auto& l = j.value("lambda", json());
    const auto& t = j.value("t", json());
    if (!l.is_array() || l.size() != 3) throw ParseError("\"lambda\" must be a 3x3 array");
    if (!t.is_array() || t.size() != 3) throw ParseError("\"t\" must be an array of 3 numbers");
    for (int i = 0; i < 3; ++i) {
      if (!l[i].is_array() || l[i].size() != 3) throw ParseError("\"lambda\" must be a 3x3 array");
      for (int k = 0; k < 3; ++k) {
        if (!l[i][k].is_number()) throw ParseError("\"lambda\" entries must be numbers");
        m.lambda(i, k) = l[i][k].get<double>();
      }
      if (!t[i].is_number()) throw ParseError("\"t\" entries must be numbers");
      m.t(i) = t[i].get<double>();
    }
    return m;
  }
  throw ParseError("unknown channel kind \"" + kind + "\" (expected general, axial or named)");
}

QubitMap load_channel(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return parse_channel(source);
  std::ifstream in(source);
  if (!in) throw ParseError("cannot read channel file \"" + source + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_channel(buf.str());
}

std::vector<double> parse_grid(const std::string& spec) {
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw ParseError("");
      return v;
    } catch (const std::exception&) {
      throw ParseError("bad number \"" + s + "\" in grid \"" + spec + "\"");
    }
  };
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() == 1) return {number(parts[0])};
  if (parts.size() != 3) throw ParseError("grid must be min:max:step or a single number, got \"" + spec + "\"");
  const double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
  if (!(step > 0.0)) throw ParseError("grid step must be positive in \"" + spec + "\"");
  if (!(lo < hi)) throw ParseError("grid needs min < max in \"" + spec + "\"");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step * (1.0 + 1e-12) + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

Vec3 parse_triple(const std::string& spec) {
  std::stringstream ss(spec);
  Vec3 v;
  std::string item;
  int i = 0;
  for (; std::getline(ss, item, ','); ++i) {
    if (i >= 3) break;
    try {
      std::size_t used = 0;
      v(i) = std::stod(item, &used);
      if (used != item.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("state must be three comma-separated numbers, got \"" + spec + "\"");
    }
  }
  if (i != 3) throw ParseError("state must be three comma-separated numbers, got \"" + spec + "\"");
  return v;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

int run_cli(int argc, const char* const argv[], std::ostream& out, std::ostream& err) {
  configure_threads_from_env();
  CLI::App app{"Concurrence, entanglement entropy and capacity of qubit maps", "qroof"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool with_state) {
    sub->add_option("--seed", common.seed, "Oracle seed")->capture_default_str();
    sub->add_option("--base", common.base, "Entropy log base: 2 or e")->capture_default_str();
    if (with_state) sub->add_option("--state", common.state, "Bloch vector x,y,z")->capture_default_str();
  };

  std::string channel, out_path, functional = "entropy", beta_grid, gamma_grid, alpha_grid, outputs = "phase";
  std::optional<double> alpha, gamma;
  double alpha_value = 0.8;
  int max_length = 3;

  auto* conc = app.add_subcommand("concurrence", "Concurrence, eigen flow and foliation");
  conc->add_option("channel", channel, "Channel file or inline JSON")->required();
  add_common(conc, true);

  auto* ent = app.add_subcommand("entanglement", "Entanglement entropy with its bounds");
  ent->add_option("channel", channel, "Channel file or inline JSON")->required();
  add_common(ent, true);

  auto* cap = app.add_subcommand("capacity", "One-shot capacity of a channel, or a beta sweep");
  cap->add_option("channel", channel, "Channel file or inline JSON");
  cap->add_option("--alpha", alpha, "Fixed alpha for a sweep");
  cap->add_option("--gamma", gamma, "Fixed gamma for a sweep");
  cap->add_option("--beta", beta_grid, "Beta grid min:max:step");
  cap->add_option("--out", out_path, "CSV output path (default stdout)");
  add_common(cap, false);

  auto* phase = app.add_subcommand("phase-diagram", "Phase labels on a (gamma, beta) grid");
  phase->add_option("--alpha", alpha_value, "Fixed alpha")->capture_default_str();
  phase->add_option("--gamma", gamma_grid, "Gamma grid min:max:step")->required();
  phase->add_option("--beta", beta_grid, "Beta grid min:max:step")->required();
  phase->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Axial family sweep with selectable outputs");
  sweep->add_option("--alpha", alpha_grid, "Alpha value or grid")->required();
  sweep->add_option("--gamma", gamma_grid, "Gamma value or grid")->required();
  sweep->add_option("--beta", beta_grid, "Beta grid min:max:step")->required();
  sweep->add_option("--outputs", outputs, "Comma list of concurrence, entanglement, capacity, phase")
      ->capture_default_str();
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");
  add_common(sweep, true);

  auto* oracle = app.add_subcommand("oracle", "Brute-force convex roof value for auditing");
  oracle->add_option("channel", channel, "Channel file or inline JSON")->required();
  oracle->add_option("--functional", functional, "concurrence or entropy")->capture_default_str();
  oracle->add_option("--max-length", max_length, "Longest decomposition searched (2..4)")
      ->check(CLI::Range(2, 4))
      ->capture_default_str();
  add_common(oracle, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (conc->parsed()) return cmd_concurrence(channel, common, out);
    if (ent->parsed()) return cmd_entanglement(channel, common, out);
    if (cap->parsed()) return cmd_capacity(channel, common, alpha, gamma, beta_grid, out_path, out);
    if (phase->parsed()) return cmd_phase_diagram(alpha_value, gamma_grid, beta_grid, out_path, out);
    if (sweep->parsed()) return cmd_sweep(alpha_grid, gamma_grid, beta_grid, outputs, common, out_path, out);
    if (oracle->parsed()) return cmd_oracle(channel, common, functional, max_length, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NotPositive& e) {
    err << "error: map is not positive: " << e.what() << '\n';
    return 3;
  } catch (const NonRealEigenvalues& e) {
    err << "error: map is not positive: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace qroof
