#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "symcone/funceq.hpp"
#include "symcone/jordan.hpp"
#include "symcone/lukacs.hpp"
#include "symcone/serialize.hpp"
#include "symcone/wishart.hpp"

namespace symcone::cli {

namespace {

const std::map<std::string, Subcommand> kSubcommands = {
    {"sample", Subcommand::Sample},
    {"density", Subcommand::Density},
    {"laplace", Subcommand::Laplace},
    {"split", Subcommand::Split},
    {"verify-lukacs", Subcommand::VerifyLukacs},
    {"verify-negative", Subcommand::VerifyNegative},
    {"check-funceq", Subcommand::CheckFunceq},
    {"algebra-info", Subcommand::AlgebraInfo},
};

const std::vector<std::string> kEquations = {"olkin-baker", "symmetry",    "wishart-dictionary",
                                             "log-quadratic", "cocycle", "homogeneity"};
const std::vector<std::string> kFields = {"logdet", "trace", "zero", "logdet-ratio", "inner-square"};

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void require_shape(const Algebra& alg, double p, const char* flag) {
  if (!(p > alg.shape_threshold())) {
    throw UsageError(std::string(flag) + " = " + format_number(p) + " is out of range for " + alg.spec() +
                     ": the Wishart shape must exceed dim/r - 1 = " + format_number(alg.shape_threshold()));
  }
}

struct Options {
  Command cmd;
  std::string format = "json";
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--algebra", o.cmd.algebra, "Algebra spec: symr:<r>, hermc:<r> or lorentz:<n>");
  sub->add_option("--out", o.cmd.out_path, "Write the report to this file instead of stdout");
  sub->add_option("--threads", o.cmd.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
}

void add_sampling(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.cmd.seed, "Random seed");
  sub->add_option("--n", o.cmd.n, "Sample count")->check(CLI::PositiveNumber);
}

void add_experiment(CLI::App* sub, Options& o, bool negative) {
  add_common(sub, o);
  add_sampling(sub, o);
  sub->add_option("--p1", o.cmd.p1, "Shape of X");
  sub->add_option("--p2", o.cmd.p2, "Shape of Y");
  sub->add_option("--scale", o.cmd.scale, negative ? "Scale of X" : "Common scale (k means k*e, or element file)");
  if (negative) sub->add_option("--scale2", o.cmd.scale2, "Scale of Y");
  sub->add_option("--level", o.cmd.level, "Test level");
  sub->add_option("--permutations", o.cmd.permutations, "Permutation count")->check(CLI::PositiveNumber);
  sub->add_option("--method", o.cmd.method, "Distance-correlation method")
      ->check(CLI::IsMember({"auto", "exact", "projected"}));
  sub->add_option("--projections", o.cmd.projections, "Random projections for the projected method")
      ->check(CLI::PositiveNumber);
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  std::istringstream is(s);
  double v = 0.0;
  is >> v;
  return !is.fail() && is.eof();
}

/// Resolves an element source string.
Element resolve_element(const Algebra& alg, const std::string& source, const char* flag) {
  if (source.empty()) throw UsageError(std::string(flag) + " is required");
  try {
    if (source == "zero") return Element::zero(alg);
    if (source.find(',') != std::string::npos) {
      std::vector<double> c;
      std::istringstream is(source);
      std::string cell;
      while (std::getline(is, cell, ',')) c.push_back(parse_double(cell));
      return Element(alg, std::move(c));
    }
    if (is_number(source) && !std::filesystem::exists(source)) return std::stod(source) * unit(alg);
    std::ifstream in(source);
    if (!in) throw UsageError(std::string(flag) + ": cannot open element file '" + source + "'");
    const json j = json::parse(in);
    Element e = element_from_json(j);
    if (!(e.algebra() == alg)) {
      throw UsageError(std::string(flag) + ": element file is in " + e.algebra().spec() + ", expected " + alg.spec());
    }
    return e;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

ConeElement resolve_cone(const Algebra& alg, const std::string& source, const char* flag) {
  Element e = resolve_element(alg, source, flag);
  auto c = ConeElement::try_certify(std::move(e));
  if (!c) throw UsageError(std::string(flag) + " must lie in the open symmetric cone");
  return std::move(*c);
}

SolutionFamily parse_family(const Algebra& alg, const std::string& spec) {
  SolutionFamily fam{Element::zero(alg), 0.0, 0.0, 0.0};
  std::istringstream is(spec);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--family: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "l" || key == "lambda") {
        if (value.find(':') != std::string::npos) {
          std::vector<double> c;
          std::istringstream vs(value);
          std::string cell;
          while (std::getline(vs, cell, ':')) c.push_back(parse_double(cell));
          fam.lambda = Element(alg, std::move(c));
        } else {
          fam.lambda = parse_double(value) * unit(alg);
        }
      } else if (key == "c1") {
        fam.c1 = parse_double(value);
      } else if (key == "c2") {
        fam.c2 = parse_double(value);
      } else if (key == "k" || key == "kappa") {
        fam.kappa = parse_double(value);
      } else {
        throw UsageError("--family: unknown key '" + key + "' (expected l, c1, c2, k)");
      }
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError("--family: bad value for '" + key + "': " + e.what());
    }
  }
  return fam;
}

ScalarField named_field(const std::string& name) {
  if (name == "logdet") return {[](const Element& x) { return log_det(x); }, FieldDomain::Cone, "ln det"};
  if (name == "trace") return {[](const Element& x) { return trace(x); }, FieldDomain::Cone, "trace"};
  if (name == "zero") return {[](const Element&) { return 0.0; }, FieldDomain::Cone, "zero"};
  if (name == "logdet-ratio") {
    return {[](const Element& x) { return log_det(x) - x.algebra().rank() * std::log(trace(x)); },
            FieldDomain::Cone, "ln(det / trace^r)"};
  }
  if (name == "inner-square") return {[](const Element& x) { return inner(x, x); }, FieldDomain::Cone, "<x, x>"};
  throw UsageError("--field: unknown field '" + name + "'");
}

void emit(const Command& cmd, std::ostream& out, const std::string& payload) {
  if (cmd.out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(cmd.out_path, std::ios::binary);
  if (!f) throw UsageError("--out: cannot write '" + cmd.out_path + "'");
  f << payload;
}

void emit_json(const Command& cmd, std::ostream& out, const json& j) { emit(cmd, out, j.dump(2) + "\n"); }

PermutationTestOptions test_options(const Command& cmd) {
  PermutationTestOptions o;
  o.permutations = cmd.permutations;
  o.method = dcor_method_from_string(cmd.method);
  o.projections = cmd.projections;
  o.threads = cmd.threads;
  return o;
}

int run_check_funceq(const Command& cmd, const Algebra& alg, std::ostream& out) {
  const std::size_t n = cmd.n ? cmd.n : 1000;
  const auto pairs = random_cone_pairs(alg, n, cmd.seed);
  ResidualStats stats{cmd.equation, alg, n, 0.0, 0.0, cmd.seed};
  json extra = json::object();

  if (cmd.equation == "olkin-baker" || cmd.equation == "symmetry") {
    const auto quad = make_regular_solution(parse_family(alg, cmd.family));
    stats = cmd.equation == "olkin-baker" ? olkin_baker_residual(quad, pairs, cmd.threads)
                                          : symmetry_residual(quad, pairs);
  } else if (cmd.equation == "wishart-dictionary") {
    const auto quad = wishart_dictionary(cmd.p1, cmd.p2, resolve_cone(alg, cmd.scale, "--scale"));
    stats = olkin_baker_residual(quad, pairs, cmd.threads);
    stats.equation = "wishart-dictionary";
  } else if (cmd.equation == "log-quadratic") {
    const auto lq = log_quadratic_residual(named_field(cmd.field), pairs);
    stats = lq.quadratic;
    stats.max_residual = lq.max_residual();
    stats.mean_residual = 0.5 * (lq.quadratic.mean_residual + lq.conjugation.mean_residual);
    extra["quadratic_max_residual"] = lq.quadratic.max_residual;
    extra["conjugation_max_residual"] = lq.conjugation.max_residual;
  } else if (cmd.equation == "cocycle") {
    const auto more = random_cone_pairs(alg, n, cmd.seed + 1);
    std::vector<ConeTriple> triples;
    triples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      triples.push_back({pairs[i].first.element(), pairs[i].second.element(), more[i].first.element()});
    }
    stats = cocycle_residual(cauchy_difference(named_field(cmd.field)), triples);
  } else if (cmd.equation == "homogeneity") {
    std::vector<Element> points;
    points.reserve(n);
    for (const auto& pr : pairs) points.push_back(pr.first.element());
    const std::vector<double> scales = {0.25, 0.5, 2.0, 10.0};
    const double defect = homogeneity_defect(named_field(cmd.field), scales, points);
    stats.max_residual = defect;
    stats.mean_residual = defect;
  }
  stats.equation = cmd.equation;
  stats.seed = cmd.seed;

  json j = to_json(stats);
  const bool pass = stats.max_residual <= cmd.tol;
  j["field"] = (cmd.equation == "log-quadratic" || cmd.equation == "cocycle" || cmd.equation == "homogeneity")
                   ? json(cmd.field)
                   : json(nullptr);
  j["tol"] = cmd.tol;
  j["pass"] = pass;
  for (auto& [k, v] : extra.items()) j[k] = v;
  emit_json(cmd, out, j);
  return pass ? kExitOk : kExitVerificationFailed;
}

}  // namespace

Command parse(std::span<const std::string> args) {
  Options o;
  CLI::App app{"Symmetric-cone Jordan algebra and Wishart verification toolkit", "symcone"};
  app.require_subcommand(1, 1);
  app.allow_extras(false);

  auto* sample_cmd = app.add_subcommand("sample", "Draw Wishart samples");
  add_common(sample_cmd, o);
  add_sampling(sample_cmd, o);
  sample_cmd->add_option("--p", o.cmd.p, "Shape parameter");
  sample_cmd->add_option("--scale", o.cmd.scale, "Scale (k means k*e, or element file)");
  sample_cmd->add_option("--stream", o.cmd.stream, "Random stream");
  sample_cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto* density_cmd = app.add_subcommand("density", "Evaluate the Wishart log-density");
  add_common(density_cmd, o);
  density_cmd->add_option("--p", o.cmd.p, "Shape parameter");
  density_cmd->add_option("--scale", o.cmd.scale, "Scale (k means k*e, or element file)");
  density_cmd->add_option("--y", o.cmd.y, "Evaluation point")->required();

  auto* laplace_cmd = app.add_subcommand("laplace", "Evaluate the Wishart Laplace transform");
  add_common(laplace_cmd, o);
  laplace_cmd->add_option("--p", o.cmd.p, "Shape parameter");
  laplace_cmd->add_option("--scale", o.cmd.scale, "Scale (k means k*e, or element file)");
  laplace_cmd->add_option("--t", o.cmd.t, "Transform argument")->required();

  auto* split_cmd = app.add_subcommand("split", "Compute V = X + Y and U = P(V^{-1/2}) X");
  add_common(split_cmd, o);
  split_cmd->add_option("--x", o.cmd.x, "First cone element")->required();
  split_cmd->add_option("--y", o.cmd.y, "Second cone element")->required();

  auto* lukacs_cmd = app.add_subcommand("verify-lukacs", "Forward independence experiment");
  add_experiment(lukacs_cmd, o, false);

  auto* negative_cmd = app.add_subcommand("verify-negative", "Unequal-scale power check");
  add_experiment(negative_cmd, o, true);

  auto* funceq_cmd = app.add_subcommand("check-funceq", "Functional-equation residual checks");
  add_common(funceq_cmd, o);
  add_sampling(funceq_cmd, o);
  funceq_cmd->add_option("--equation", o.cmd.equation, "Equation to check")->check(CLI::IsMember(kEquations));
  funceq_cmd->add_option("--family", o.cmd.family, "Solution family, e.g. l=0.5,c1=1,c2=2,k=0");
  funceq_cmd->add_option("--field", o.cmd.field, "Scalar field for single-function checks")
      ->check(CLI::IsMember(kFields));
  funceq_cmd->add_option("--p1", o.cmd.p1, "Shape of X (wishart-dictionary)");
  funceq_cmd->add_option("--p2", o.cmd.p2, "Shape of Y (wishart-dictionary)");
  funceq_cmd->add_option("--scale", o.cmd.scale, "Common scale (wishart-dictionary)");
  funceq_cmd->add_option("--tol", o.cmd.tol, "Residual tolerance")->check(CLI::NonNegativeNumber);

  auto* info_cmd = app.add_subcommand("algebra-info", "Describe an algebra");
  add_common(info_cmd, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    if (msg.empty()) msg = e.get_name();
    throw UsageError(msg);
  }

  o.cmd.subcommand = kSubcommands.at(app.get_subcommands().front()->get_name());
  o.cmd.format = o.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;

  Algebra alg = Algebra::sym_real(1);
  try {
    alg = Algebra::parse(o.cmd.algebra);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  switch (o.cmd.subcommand) {
    case Subcommand::Sample:
    case Subcommand::Density:
    case Subcommand::Laplace:
      require_shape(alg, o.cmd.p, "--p");
      break;
    case Subcommand::VerifyLukacs:
    case Subcommand::VerifyNegative:
      require_shape(alg, o.cmd.p1, "--p1");
      require_shape(alg, o.cmd.p2, "--p2");
      if (!(o.cmd.level > 0.0 && o.cmd.level < 1.0)) throw UsageError("--level must lie in (0, 1)");
      if (o.cmd.n != 0 && o.cmd.n < kMinExperimentSamples) {
        throw UsageError("--n must be at least " + std::to_string(kMinExperimentSamples) + " for experiments");
      }
      break;
    case Subcommand::CheckFunceq:
      if (o.cmd.equation == "wishart-dictionary") {
        require_shape(alg, o.cmd.p1, "--p1");
        require_shape(alg, o.cmd.p2, "--p2");
      }
      break;
    default:
      break;
  }
  return o.cmd;
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    const Algebra alg = Algebra::parse(cmd.algebra);
    switch (cmd.subcommand) {
      case Subcommand::AlgebraInfo: {
        emit_json(cmd, out,
                  {{"subcommand", "algebra-info"},
                   {"algebra", to_json(alg)},
                   {"spec", alg.spec()},
                   {"rank", alg.rank()},
                   {"dim", alg.dim()},
                   {"peirce_degree", alg.peirce_degree()},
                   {"shape_threshold", alg.shape_threshold()},
                   {"unit", to_json(unit(alg))["coords"]}});
        return kExitOk;
      }
      case Subcommand::Sample: {
        const WishartParams params(cmd.p, resolve_cone(alg, cmd.scale, "--scale"));
        const SampleBatch batch = sample(params, cmd.n ? cmd.n : 1000, cmd.seed, cmd.stream, cmd.threads);
        if (cmd.format == OutputFormat::Csv) {
          std::ostringstream os;
          write_csv(os, batch);
          emit(cmd, out, os.str());
        } else {
          emit_json(cmd, out, to_json(batch));
        }
        return kExitOk;
      }
      case Subcommand::Density: {
        const WishartParams params(cmd.p, resolve_cone(alg, cmd.scale, "--scale"));
        const Element y = resolve_element(alg, cmd.y, "--y");
        const double ld = log_density(params, y);
        const bool support = std::isfinite(ld);
        emit_json(cmd, out,
                  {{"subcommand", "density"},
                   {"algebra", to_json(alg)},
                   {"p", cmd.p},
                   {"scale", to_json(params.scale().element())["coords"]},
                   {"y", to_json(y)["coords"]},
                   {"in_support", support},
                   {"log_density", support ? json(ld) : json(nullptr)},
                   {"density", support ? std::exp(ld) : 0.0}});
        return kExitOk;
      }
      case Subcommand::Laplace: {
        const WishartParams params(cmd.p, resolve_cone(alg, cmd.scale, "--scale"));
        const Element t = resolve_element(alg, cmd.t, "--t");
        emit_json(cmd, out,
                  {{"subcommand", "laplace"},
                   {"algebra", to_json(alg)},
                   {"p", cmd.p},
                   {"scale", to_json(params.scale().element())["coords"]},
                   {"t", to_json(t)["coords"]},
                   {"value", laplace_transform(params, t)}});
        return kExitOk;
      }
      case Subcommand::Split: {
        const ConeElement x = resolve_cone(alg, cmd.x, "--x");
        const ConeElement y = resolve_cone(alg, cmd.y, "--y");
        const SplitPair s = split(x, y);
        emit_json(cmd, out,
                  {{"subcommand", "split"},
                   {"algebra", to_json(alg)},
                   {"x", to_json(x.element())["coords"]},
                   {"y", to_json(y.element())["coords"]},
                   {"v", to_json(s.v.element())["coords"]},
                   {"u", to_json(s.u)["coords"]},
                   {"in_domain_D", in_domain_D(s.u)}});
        return kExitOk;
      }
      case Subcommand::VerifyLukacs: {
        const auto report = forward_experiment(cmd.p1, cmd.p2, resolve_cone(alg, cmd.scale, "--scale"),
                                               cmd.n ? cmd.n : 10000, cmd.seed, cmd.level, test_options(cmd));
        emit_json(cmd, out, to_json(report));
        return report.reject ? kExitVerificationFailed : kExitOk;
      }
      case Subcommand::VerifyNegative: {
        const auto report =
            negative_experiment(cmd.p1, cmd.p2, resolve_cone(alg, cmd.scale, "--scale"),
                                resolve_cone(alg, cmd.scale2, "--scale2"), cmd.n ? cmd.n : 10000, cmd.seed,
                                cmd.level, test_options(cmd));
        emit_json(cmd, out, to_json(report));
        return report.reject ? kExitOk : kExitVerificationFailed;
      }
      case Subcommand::CheckFunceq:
        return run_check_funceq(cmd, alg, out);
    }
  } catch (const UsageError& e) {
    err << "symcone: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "symcone: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int main_entry(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args.front() == "--help" || args.front() == "-h") {
    err << "usage: symcone <sample|density|laplace|split|verify-lukacs|verify-negative|check-funceq|algebra-info>"
           " [flags]\n       symcone <subcommand> --help\n";
    return args.empty() ? kExitUsage : kExitOk;
  }
  Command cmd;
  try {
    cmd = parse(args);
  } catch (const HelpRequested& e) {
    out << e.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "symcone: usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return run(cmd, out, err);
}

}  // namespace symcone::cli
