#include "symcone/serialize.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "symcone/errors.hpp"

namespace symcone {

namespace {

json coords_json(const Element& x) { return json(std::vector<double>(x.coords().begin(), x.coords().end())); }

std::vector<double> coords_from(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of coordinates");
  std::vector<double> c;
  c.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError("coordinate is not a number");
    c.push_back(v.get<double>());
  }
  return c;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("not an unsigned integer: '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw ParseError("could not format double");
  return {buf, ptr};
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("not a number: '" + s + "'");
  return v;
}

json to_json(const Algebra& algebra) { return {{"kind", algebra.kind_name()}, {"r_or_n", algebra.order()}}; }

Algebra algebra_from_json(const json& j) {
  try {
    return Algebra::from_kind_name(j.at("kind").get<std::string>(), j.at("r_or_n").get<int>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed algebra object: ") + e.what());
  }
}

json to_json(const Element& x) { return {{"algebra", to_json(x.algebra())}, {"coords", coords_json(x)}}; }

Element element_from_json(const json& j) {
  try {
    return Element(algebra_from_json(j.at("algebra")), coords_from(j.at("coords")));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed element object: ") + e.what());
  }
}

json to_json(const SampleBatch& batch) {
  json samples = json::array();
  for (const auto& s : batch.samples) samples.push_back(coords_json(s.element()));
  return {{"algebra", to_json(batch.params.algebra())},
          {"p", batch.params.shape()},
          {"scale", coords_json(batch.params.scale().element())},
          {"seed", batch.seed},
          {"stream", batch.stream},
          {"count", batch.samples.size()},
          {"samples", std::move(samples)}};
}

SampleBatch sample_batch_from_json(const json& j) {
  try {
    const Algebra alg = algebra_from_json(j.at("algebra"));
    WishartParams params(j.at("p").get<double>(), ConeElement::certify(Element(alg, coords_from(j.at("scale")))));
    SampleBatch batch{params, j.at("seed").get<std::uint64_t>(), j.at("stream").get<std::uint64_t>(), {}};
    for (const auto& s : j.at("samples")) batch.samples.push_back(ConeElement::certify(Element(alg, coords_from(s))));
    if (j.contains("count") && j.at("count").get<std::size_t>() != batch.samples.size()) {
      throw ParseError("sample batch: count does not match the number of samples");
    }
    return batch;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed sample batch: ") + e.what());
  }
}

void write_csv(std::ostream& os, const SampleBatch& batch) {
  const auto& p = batch.params;
  os << "# algebra=" << p.algebra().spec() << "\n";
  os << "# p=" << format_double(p.shape()) << "\n";
  os << "# scale=";
  for (std::size_t i = 0; i < p.scale().element().size(); ++i) {
    os << (i ? ";" : "") << format_double(p.scale().element()[i]);
  }
  os << "\n# seed=" << batch.seed << "\n# stream=" << batch.stream << "\n";
  for (std::size_t i = 0; i < p.algebra().dim(); ++i) os << (i ? "," : "") << "c" << i;
  os << "\n";
  for (const auto& s : batch.samples) {
    const Element& e = s.element();
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << format_double(e[i]);
    os << "\n";
  }
}

SampleBatch read_csv(std::istream& is) {
  std::string line;
  std::string algebra_spec;
  std::string shape;
  std::string scale;
  std::string seed;
  std::string stream;
  bool header_seen = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(line.substr(1, eq - 1));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "algebra") algebra_spec = value;
      else if (key == "p") shape = value;
      else if (key == "scale") scale = value;
      else if (key == "seed") seed = value;
      else if (key == "stream") stream = value;
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split_on(line, ',')) row.push_back(parse_double(trim(cell)));
    rows.push_back(std::move(row));
  }
  if (algebra_spec.empty() || shape.empty() || scale.empty() || seed.empty() || stream.empty()) {
    throw ParseError("sample CSV is missing metadata (algebra, p, scale, seed, stream)");
  }
  const Algebra alg = Algebra::parse(algebra_spec);
  std::vector<double> scale_coords;
  for (const auto& c : split_on(scale, ';')) scale_coords.push_back(parse_double(trim(c)));
  WishartParams params(parse_double(shape), ConeElement::certify(Element(alg, std::move(scale_coords))));
  SampleBatch batch{params, parse_u64(seed), parse_u64(stream), {}};
  for (auto& r : rows) batch.samples.push_back(ConeElement::certify(Element(alg, std::move(r))));
  return batch;
}

json to_json(const IndependenceReport& r) {
  json scale = coords_json(r.scale);
  json j = {{"experiment", r.experiment},
            {"algebra", to_json(r.algebra)},
            {"p1", r.p1},
            {"p2", r.p2},
            {"scale", scale},
            {"n", r.n},
            {"seed", r.seed},
            {"level", r.level},
            {"statistic", r.statistic},
            {"p_value", r.p_value},
            {"permutations", r.permutations},
            {"method", to_string(r.method)},
            {"decision", r.decision()},
            {"resampled", r.resampled},
            {"mean_check",
             {{"expected", coords_json(r.mean_check.expected)},
              {"observed", coords_json(r.mean_check.observed)},
              {"sigma", r.mean_check.standard_error},
              {"max_abs_z", r.mean_check.max_abs_z}}}};
  if (r.experiment != "forward") j["scale2"] = coords_json(r.scale2);
  return j;
}

json to_json(const ResidualStats& s) {
  return {{"equation", s.equation},       {"algebra", to_json(s.algebra)},
          {"n_pairs", s.n},               {"max_residual", s.max_residual},
          {"mean_residual", s.mean_residual}, {"seed", s.seed}};
}

json to_json(const FactorizationReport& r) {
  return {{"lambda", coords_json(r.lambda)},
          {"lambda_expected", coords_json(r.lambda_expected)},
          {"k", r.k},
          {"k_expected", r.k_expected},
          {"log_constant", r.log_constant},
          {"log_constant_expected", r.log_constant_expected},
          {"max_residual", r.max_residual},
          {"lambda_error", r.lambda_error},
          {"k_error", r.k_error},
          {"log_constant_error", r.log_constant_error}};
}

}  // namespace symcone
