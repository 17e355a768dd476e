#include "sgp_cli/spec_parser.hpp"

#include <cerrno>
#include <cmath>
#include <optional>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "sgp/errors.hpp"

namespace sgp::cli {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

using KeyMap = std::map<std::string, std::string>;

struct RawSet {
  std::string kind;
  KeyMap keys;
};

const std::map<std::string, std::set<std::string>>& set_keys() {
  static const std::map<std::string, std::set<std::string>> k = {
      {"ball", {"c", "r"}},           {"halfspace", {"n", "b"}},      {"hyperplane", {"n", "b"}},
      {"box", {"lo", "hi"}},          {"affine", {"basis", "point"}}, {"singleton", {"point"}},
      {"orthant", {"dim"}},           {"ray", {"d"}},                 {"whole", {"dim"}},
  };
  return k;
}

const std::map<std::string, std::set<std::string>>& function_keys() {
  static const std::map<std::string, std::set<std::string>> k = {
      {"sq_norm", {"dim"}},
      {"huber", {"dim"}},
      {"dist_power", {"p"}},
      {"max_dist", {}},
      {"weighted_dist", {"w", "p"}},
      {"affine", {"u", "beta", "abs"}},
      {"cone_quad", {"dim"}},
      {"least_squares", {"A", "b", "eps", "p"}},
      {"quad_form", {"M", "p"}},
      {"accelerated", {"A"}},
      {"pnorm", {"p"}},
      {"ell1", {}},
      {"one_d", {"alpha", "n"}},
  };
  return k;
}

const std::string& need(const KeyMap& m, const std::string& key, const std::string& where) {
  auto it = m.find(key);
  if (it == m.end()) bad(where + ": missing key '" + key + "'");
  return it->second;
}

double num_or(const KeyMap& m, const std::string& key, double fallback) {
  auto it = m.find(key);
  return it == m.end() ? fallback : parse_number(it->second);
}

int int_or(const KeyMap& m, const std::string& key, int fallback) {
  const double v = num_or(m, key, fallback);
  if (v != std::floor(v) || v < 1 || v > 1e6) bad("'" + key + "' must be a positive integer");
  return static_cast<int>(v);
}

ConvexSetSpec build_set(const RawSet& s) {
  const std::string where = "set=" + s.kind;
  const auto& k = s.keys;
  if (s.kind == "ball") return ConvexSetSpec::ball(parse_vector(need(k, "c", where)), parse_number(need(k, "r", where)));
  if (s.kind == "halfspace") {
    return ConvexSetSpec::halfspace(parse_vector(need(k, "n", where)), parse_number(need(k, "b", where)));
  }
  if (s.kind == "hyperplane") {
    return ConvexSetSpec::hyperplane(parse_vector(need(k, "n", where)), parse_number(need(k, "b", where)));
  }
  if (s.kind == "box") return ConvexSetSpec::box(parse_vector(need(k, "lo", where)), parse_vector(need(k, "hi", where)));
  if (s.kind == "affine") {
    return ConvexSetSpec::affine_subspace(parse_matrix(need(k, "basis", where)), parse_vector(need(k, "point", where)));
  }
  if (s.kind == "singleton") return ConvexSetSpec::singleton(parse_vector(need(k, "point", where)));
  if (s.kind == "orthant") return ConvexSetSpec::nonneg_orthant(int_or(k, "dim", 2));
  if (s.kind == "ray") return ConvexSetSpec::ray(parse_vector(need(k, "d", where)));
  if (s.kind == "whole") return ConvexSetSpec::whole_space(int_or(k, "dim", 2));
  bad("unknown set kind '" + s.kind + "'");
}

void require_sets(const std::string& name, const std::vector<RawSet>& sets, std::size_t lo, std::size_t hi) {
  if (sets.size() < lo || sets.size() > hi) {
    std::ostringstream os;
    os << name << ": expected " << lo;
    if (hi != lo) os << (hi > 1000 ? " or more" : " to " + std::to_string(hi));
    os << " set(s), got " << sets.size();
    bad(os.str());
  }
}

}  // namespace

double parse_number(const std::string& text) {
  if (text.empty()) bad("empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) bad("not a finite number: '" + text + "'");
  return v;
}

Vector parse_vector(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.empty()) bad("empty vector");
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_number(parts[i]);
  return v;
}

Matrix parse_matrix(const std::string& text) {
  const auto rows = split(text, ';');
  if (rows.empty()) bad("empty matrix");
  std::vector<Vector> parsed;
  for (const auto& r : rows) parsed.push_back(parse_vector(r));
  Matrix m(static_cast<Eigen::Index>(parsed.size()), parsed.front().size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (parsed[i].size() != m.cols()) bad("matrix rows differ in length");
    m.row(static_cast<Eigen::Index>(i)) = parsed[i].transpose();
  }
  return m;
}

catalog::CatalogEntry parse_function_spec(const std::string& spec) {
  const auto fields = split(spec, ':');
  if (fields.empty() || fields.front().empty()) bad("empty function spec");
  const std::string name = fields.front();
  const auto fk = function_keys().find(name);
  if (fk == function_keys().end()) bad("unknown function '" + name + "'");

  std::size_t first_kv = 1;
  std::optional<catalog::OneDKind> kind;
  if (name == "one_d") {
    if (fields.size() < 2) bad("one_d needs a kind, e.g. one_d:exp_abs");
    kind = catalog::one_d_kind_from_string(fields[1]);
    if (!kind) bad("unknown one_d kind '" + fields[1] + "'");
    first_kv = 2;
  }

  KeyMap top;
  std::vector<RawSet> sets;
  for (std::size_t i = first_kv; i < fields.size(); ++i) {
    const auto eq = fields[i].find('=');
    if (eq == std::string::npos || eq == 0) bad("expected key=value, got '" + fields[i] + "'");
    const std::string key = fields[i].substr(0, eq);
    const std::string val = fields[i].substr(eq + 1);
    if (key == "set") {
      if (!set_keys().count(val)) bad("unknown set kind '" + val + "'");
      sets.push_back({val, {}});
      continue;
    }
    if (!sets.empty()) {
      auto& cur = sets.back();
      if (set_keys().at(cur.kind).count(key) && !cur.keys.count(key)) {
        cur.keys[key] = val;
        continue;
      }
    }
    if (!fk->second.count(key)) bad(name + ": unknown key '" + key + "'");
    if (!top.emplace(key, val).second) bad(name + ": repeated key '" + key + "'");
  }
  for (const auto& s : sets) {
    for (const auto& want : set_keys().at(s.kind)) {
      if (!s.keys.count(want) && s.kind != "orthant" && s.kind != "whole") bad("set=" + s.kind + ": missing key '" + want + "'");
    }
  }

  std::vector<ConvexSetSpec> built;
  for (const auto& s : sets) built.push_back(build_set(s));

  if (name == "sq_norm") { require_sets(name, sets, 0, 0); return catalog::make_sq_norm(int_or(top, "dim", 2)); }
  if (name == "huber") { require_sets(name, sets, 0, 0); return catalog::make_huber(int_or(top, "dim", 2)); }
  if (name == "dist_power") {
    require_sets(name, sets, 1, 1);
    return catalog::make_dist_power(built.front(), num_or(top, "p", 1.0));
  }
  if (name == "max_dist") {
    if (built.empty()) return catalog::make_max_dist_example();
    return catalog::make_max_dist(built);
  }
  if (name == "weighted_dist") {
    require_sets(name, sets, 1, 1u << 20);
    std::vector<double> w;
    if (top.count("w")) {
      const Vector wv = parse_vector(top.at("w"));
      w.assign(wv.data(), wv.data() + wv.size());
    } else {
      w.assign(built.size(), 1.0 / static_cast<double>(built.size()));
    }
    return catalog::make_weighted_dist_powers(built, w, num_or(top, "p", 2.0));
  }
  if (name == "affine") {
    require_sets(name, sets, 0, 0);
    const double a = num_or(top, "abs", 0.0);
    if (a != 0.0 && a != 1.0) bad("affine: abs must be 0 or 1");
    return catalog::make_affine(parse_vector(need(top, "u", name)), num_or(top, "beta", 0.0), a == 1.0);
  }
  if (name == "cone_quad") {
    require_sets(name, sets, 0, 1);
    if (built.empty()) return catalog::make_cone_quadratic(ConvexSetSpec::nonneg_orthant(int_or(top, "dim", 2)));
    if (top.count("dim")) bad("cone_quad: dim conflicts with an explicit set");
    return catalog::make_cone_quadratic(built.front());
  }
  if (name == "least_squares") {
    require_sets(name, sets, 0, 0);
    return catalog::make_least_squares(parse_matrix(need(top, "A", name)), parse_vector(need(top, "b", name)),
                                       num_or(top, "eps", 0.0), num_or(top, "p", 2.0));
  }
  if (name == "quad_form") {
    require_sets(name, sets, 0, 0);
    return catalog::make_quadratic_form(parse_matrix(need(top, "M", name)), num_or(top, "p", 1.0));
  }
  if (name == "accelerated") {
    require_sets(name, sets, 0, 0);
    return catalog::make_accelerated(parse_matrix(need(top, "A", name)));
  }
  if (name == "pnorm") { require_sets(name, sets, 0, 0); return catalog::make_pnorm_power(num_or(top, "p", 4.0)); }
  if (name == "ell1") { require_sets(name, sets, 0, 0); return catalog::make_ell1(); }
  // one_d
  require_sets(name, sets, 0, 0);
  catalog::OneDParams params;
  params.alpha = num_or(top, "alpha", params.alpha);
  if (top.count("n")) {
    const double n = parse_number(top.at("n"));
    if (n != std::floor(n) || n < 0 || n > 1000) bad("one_d: n must be an even integer");
    params.n = static_cast<int>(n);
  }
  return catalog::make_1d(*kind, params);
}

std::string function_spec_help() {
  return R"(Function specs: name[:key=value]...
  sq_norm[:dim=N]                       |x|^2
  huber[:dim=N]                         Huber function
  dist_power:set=...[:p=P]              d_C^p, p >= 1
  max_dist[:set=...]...                 max_i d_Ci (no sets: R x {0} and the diagonal)
  weighted_dist:set=...[:set=...]...[:w=w1,w2,..][:p=P]
  affine:u=U[:beta=B][:abs=0|1]         <u,x> - beta or |<u,x> - beta|, |u| = 1
  cone_quad[:dim=N | :set=...]          <x, P_K x>/2, K a cone (default orthant)
  least_squares:A=..:b=..[:eps=E][:p=P] |Ax - b|^p - eps^p
  quad_form:M=..[:p=P]                  <x,Mx>^(p/2)
  accelerated:A=..                      sqrt(<x, x - Ax>)
  pnorm[:p=P]                           |x1|^p + |x2|^p
  ell1                                  |x1| + |x2|
  one_d:KIND[:alpha=A][:n=N]            KIND in sq_minus, even_power, exp_abs, exp_sq,
                                        infeasible, quad_minus_one, kinked
Sets: set=ball:c=..:r=..  set=halfspace:n=..:b=..  set=hyperplane:n=..:b=..
      set=box:lo=..:hi=..  set=affine:basis=..:point=..  set=singleton:point=..
      set=orthant[:dim=N]  set=ray:d=..  set=whole[:dim=N]
Vectors are comma separated (1,2); matrix rows are separated by ';' (2,1;0,1).)";
}

}  // namespace sgp::cli
