#include "pcurv/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pcurv/census.hpp"
#include "pcurv/connection.hpp"
#include "pcurv/criterion.hpp"
#include "pcurv/random.hpp"

namespace pcurv {
namespace {

struct JobConfig {
  std::string command;
  int p = 0, ext_degree = 1;
  std::optional<int> n, d, m, delta, s, D, degree, infinity_index;
  std::vector<long long> points, index;
  std::string input, output, format;
  uint64_t seed = 0;
  int64_t budget = 20'000'000;
  int samples = 20;

  Json to_json() const {
    Json j;
    j["command"] = command;
    if (p) j["p"] = p;
    j["ext_degree"] = ext_degree;
    for (auto [key, v] : {std::pair{"n", n}, {"d", d}, {"m", m}, {"delta", delta}, {"s", s}, {"D", D}, {"degree", degree},
                          {"infinity_index", infinity_index}})
      if (v) j[key] = *v;
    if (!points.empty()) j["points"] = points;
    if (!index.empty()) j["index"] = index;
    if (!input.empty()) j["input"] = input;
    j["seed"] = seed;
    j["budget"] = budget;
    return j;
  }
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read input file " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

void emit(const JobConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw SchemaError("cannot write output file " + cfg.output);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

const char* determinacy_name(Determinacy d) { return to_string(d); }

Json column_constant_json(const ColumnConstant<Fq>& c) {
  Json j;
  j["determinacy"] = determinacy_name(c.determinacy);
  j["value"] = c.value ? Json(c.value->value()) : Json(nullptr);
  return j;
}

Json elements_json(const std::vector<Fq>& v) {
  Json a = Json::array();
  for (const Fq& x : v) a.push_back(x.value());
  return a;
}

const GaloisField& field_of(const JobConfig& cfg) {
  if (cfg.p < 2) throw SchemaError("--p is required");
  try {
    return GaloisField::get(static_cast<uint32_t>(cfg.p), static_cast<uint32_t>(cfg.ext_degree));
  } catch (const PreconditionError& e) {
    throw SchemaError(e.what());
  }
}

int cmd_verify(const JobConfig& cfg, std::ostream& out) {
  const KernelMap s = kernel_map_from_json(read_json(cfg.input));
  Json report = verify_report(s);
  report["config"] = cfg.to_json();
  emit(cfg, dump(report), out);
  return report["pass"].get<bool>() ? kExitPass : kExitFail;
}

int cmd_construct(const JobConfig& cfg, std::ostream& out) {
  const ClassDatum datum = class_datum_from_json(read_json(cfg.input));
  Json report;
  report["config"] = cfg.to_json();
  report["datum"] = class_datum_to_json(datum);
  try {
    datum.validate();
    const KernelMap s = theorem_forward(datum);
    report["kernel_map"] = kernel_map_to_json(s);
    report["verify"] = verify_report(s);
    const bool round_trip = data_equivalent(datum_of(s), datum);
    report["round_trip"] = round_trip;
    report["pass"] = report["verify"]["pass"].get<bool>() && round_trip;
  } catch (const PreconditionError& e) {
    report["pass"] = false;
    report["reason"] = e.what();
  }
  const bool pass = report["pass"].get<bool>();
  if (pass && !cfg.output.empty()) {
    std::ofstream f(cfg.output);
    if (!f) throw SchemaError("cannot write output file " + cfg.output);
    f << dump(report["kernel_map"]);
  }
  out << dump(report);
  return pass ? kExitPass : kExitFail;
}

int cmd_classify(const JobConfig& cfg, std::ostream& out) {
  const KernelMap s = kernel_map_from_json(read_json(cfg.input));
  const Invariants inv = extract_invariants(s);
  Json report;
  report["config"] = cfg.to_json();
  report["alpha"] = inv.alpha;
  report["beta"] = inv.beta;
  report["constant"] = inv.constant;
  report["inseparable"] = inv.inseparable;
  Json c = Json::array();
  for (const auto& x : inv.c) c.push_back(column_constant_json(x));
  report["column_constants"] = c;
  bool pass = true;
  if (inv.constant) {
    report["constant_value"] = point_to_json(inv.constant_value);
  } else {
    report["fg"] = {{"num", poly_to_json(inv.fg.num())}, {"den", poly_to_json(inv.fg.den())}};
    try {
      report["datum"] = class_datum_to_json(datum_of(s));
    } catch (const PreconditionError& e) {
      report["reason"] = e.what();
      pass = false;
    }
  }
  report["pass"] = pass;
  emit(cfg, dump(report), out);
  return pass ? kExitPass : kExitFail;
}

int count_constant(const JobConfig& cfg, std::ostream& out) {
  const GaloisField& f = field_of(cfg);
  const CensusReport r = [&] {
    try {
      return constant_class_census(cfg.p, *cfg.n, *cfg.m, *cfg.d, *cfg.delta, f.order());
    } catch (const PreconditionError& e) {
      throw SchemaError(e.what());
    }
  }();
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "case,total_degree,classes,D,families,dimension,points\n";
    for (const CensusCase& c : r.cases) {
      if (c.families.empty()) os << c.index << ',' << c.total_degree << ',' << c.classes << ",,,,\n";
      for (const CensusFamily& fam : c.families)
        os << c.index << ',' << c.total_degree << ",," << fam.D << ',' << fam.families << ',' << fam.dimension << ','
           << fam.points << '\n';
    }
    emit(cfg, os.str(), out);
    return kExitPass;
  }
  Json report;
  report["config"] = cfg.to_json();
  report["q"] = r.q;
  report["first_two_exhaust"] = r.first_two_exhaust;
  Json cases = Json::array();
  for (const CensusCase& c : r.cases) {
    Json cj{{"case", c.index}, {"total_degree", c.total_degree}};
    if (c.families.empty()) cj["classes"] = c.classes;
    Json fams = Json::array();
    for (const CensusFamily& fam : c.families)
      fams.push_back({{"D", fam.D}, {"families", fam.families}, {"dimension", fam.dimension}, {"points", fam.points}});
    if (!c.families.empty()) cj["families"] = fams;
    cases.push_back(cj);
  }
  report["cases"] = cases;
  emit(cfg, dump(report), out);
  return kExitPass;
}

int cmd_count(const JobConfig& cfg, std::ostream& out) {
  if (cfg.p < 2 || !cfg.n) throw SchemaError("count needs --p and --n");
  if (cfg.m || cfg.d || cfg.delta) {
    if (!cfg.m || !cfg.d || !cfg.delta) throw SchemaError("the constant-class census needs --m, --d and --delta together");
    return count_constant(cfg, out);
  }
  const int p = cfg.p, n = *cfg.n;
  if (p < 2 || n < 0 || n > 64) throw SchemaError("count parameters out of range");
  struct Row {
    int s;
    std::optional<int> D;
    int64_t formula, oracle;
  };
  std::vector<Row> rows;
  bool truncated = false;
  try {
    for (int s = 0; s <= n * (p - 1); ++s) {
      if (cfg.s && s != *cfg.s) continue;
      std::vector<std::optional<int>> ds{std::nullopt};
      for (int D = 0; D <= n; ++D) ds.push_back(D);
      for (const auto& D : ds) {
        if (cfg.D && D != cfg.D) continue;
        const int64_t formula = D ? count_npd(p, n, s, *D) : count_np(p, n, s);
        rows.push_back({s, D, formula, oracle_np(p, n, s, D, cfg.budget)});
      }
    }
  } catch (const BudgetError&) {
    truncated = true;
  }
  if (cfg.format == "json") {
    Json report;
    report["config"] = cfg.to_json();
    Json a = Json::array();
    for (const Row& r : rows)
      a.push_back({{"p", p},
                   {"n", n},
                   {"s", r.s},
                   {"D", r.D ? Json(*r.D) : Json(nullptr)},
                   {"formula", r.formula},
                   {"oracle", r.oracle},
                   {"agree", r.formula == r.oracle},
                   {"trivial", r.s < n}});
    report["rows"] = a;
    report["truncated"] = truncated;
    emit(cfg, dump(report), out);
  } else {
    std::ostringstream os;
    os << "p,n,s,D,formula,oracle,agree,trivial\n";
    for (const Row& r : rows)
      os << p << ',' << n << ',' << r.s << ',' << (r.D ? std::to_string(*r.D) : "") << ',' << r.formula << ',' << r.oracle
         << ',' << (r.formula == r.oracle) << ',' << (r.s < n) << '\n';
    if (truncated) os << "# truncated: budget exceeded\n";
    emit(cfg, os.str(), out);
  }
  if (truncated) return kExitBudget;
  for (const Row& r : rows)
    if (r.formula != r.oracle) return kExitFail;
  return kExitPass;
}

int cmd_search(const JobConfig& cfg, std::ostream& out) {
  const GaloisField& f = field_of(cfg);
  if (!cfg.degree) throw SchemaError("search-maps needs --degree");
  if (cfg.index.size() != cfg.points.size()) throw SchemaError("--index needs one entry per point");
  std::vector<RamificationConstraint> cons;
  for (size_t i = 0; i < cfg.points.size(); ++i) {
    if (cfg.points[i] < 0 || cfg.points[i] >= f.order()) throw SchemaError("point outside [0, q)");
    cons.push_back({PointOnLine(Fq::packed(f, static_cast<uint32_t>(cfg.points[i]))), static_cast<int>(cfg.index[i])});
  }
  std::vector<RationalMap> maps;
  try {
    maps = search_ramified_maps(f, *cfg.degree, cons, cfg.infinity_index, cfg.budget);
  } catch (const PreconditionError& e) {
    throw SchemaError(e.what());
  }
  Json report;
  report["config"] = cfg.to_json();
  Json a = Json::array();
  for (const RationalMap& m : maps) a.push_back({{"num", poly_to_json(m.num())}, {"den", poly_to_json(m.den())}});
  report["maps"] = a;
  report["count"] = maps.size();
  emit(cfg, dump(report), out);
  return kExitPass;
}

int cmd_deform(const JobConfig& cfg, std::ostream& out) {
  const Json in = read_json(cfg.input);
  const DeformedKernelMap d = deformed_from_json(in);
  const KernelMap& s = d.body();
  Json report;
  report["config"] = cfg.to_json();
  if (!is_log_vanishing(s).valid) {
    report["pass"] = false;
    report["reason"] = "body is not log vanishing";
    emit(cfg, dump(report), out);
    return kExitFail;
  }
  bool pass = true;
  const auto cols = s.params().col_exponents();
  const int twist = s.params().p - std::min(cols[0], cols[1]);
  const bool v1 = deformed_valid(d), v2 = deformed_valid_by_order_test(d);
  report["deformed_valid"] = v1;
  report["order_test"] = v2;
  pass = pass && v1 == v2;
  if (v1) {
    const KernelReduction r = kernel_reduction(d, twist);
    report["kernel_reduction"] = {{"twist", twist},     {"expected", r.expected}, {"body_dim", r.body_dim},
                                  {"lift_dim", r.lift_dim}, {"module_dim", r.module_dim}, {"ok", r.ok()}};
    pass = pass && r.ok();
  }
  const DeformationSpace space = deformation_space(s);
  report["valid_dim"] = space.valid.size();
  report["orbit_dim"] = space.orbit.size();
  try {
    report["deformation_space_dim"] = deformation_space_dim(s);
  } catch (const PreconditionError& e) {
    report["deformation_space_dim"] = nullptr;
    report["gate"] = e.what();
  }
  // Random first-order deformations: both validity routes must agree.
  Rng rng(cfg.seed);
  int agree = 0, valid = 0;
  for (int it = 0; it < cfg.samples; ++it) {
    std::array<PolyF, 4> h;
    for (const auto& b : space.valid) {
      const Fq c = rng.element(s.field());
      for (int k = 0; k < 4; ++k) h[k] += c * b[k];
    }
    if (it % 2) {
      const int k = static_cast<int>(rng.below(4));
      const int bound = s.params().degree_bound(k / 2, k % 2);
      if (bound >= 0) h[k] += PolyF::monomial(rng.nonzero(s.field()), static_cast<int>(rng.below(bound + 1)));
    }
    const DeformedKernelMap e(s, h);
    const bool a = deformed_valid(e);
    agree += a == deformed_valid_by_order_test(e);
    if (a) {
      ++valid;
      pass = pass && kernel_reduction_check(e, twist);
    }
  }
  report["samples"] = {{"count", cfg.samples}, {"agree", agree}, {"valid", valid}};
  pass = pass && agree == cfg.samples;
  report["pass"] = pass;
  emit(cfg, dump(report), out);
  return pass ? kExitPass : kExitFail;
}

}  // namespace

Json verify_report(const KernelMap& s) {
  Json r;
  r["kernel_map"] = kernel_map_to_json(s);
  const PolyF det = s.matrix().det();
  Json roots = Json::array();
  for (const Fq& a : s.points()) roots.push_back({{"point", a.value()}, {"multiplicity", ord_at(det, a)}});
  r["determinant"] = {{"leading", det.leading().value()}, {"degree", det.degree()}, {"roots", roots}};

  const ConnectionMatrix t = connection_matrix(s);
  const PoleDivisor poles = pole_divisor(t);
  Json pj = Json::array();
  for (const auto& [pt, k] : poles.points) pj.push_back({{"point", point_to_json(pt)}, {"order", k}});
  r["poles"] = pj;
  r["irrational_poles"] = poles.irrational.degree() > 0 ? poly_to_json(poles.irrational) : Json::array();
  r["max_pole_order"] = poles.max_order();
  const bool curvature_zero = is_zero_matrix(p_curvature(t));
  r["p_curvature_zero"] = curvature_zero;

  const LogVanishingReport local = is_log_vanishing(s);
  Json lj = Json::array();
  for (const PoleCertificate& pc : local.poles) {
    Json e;
    e["point"] = point_to_json(pc.point);
    e["certified"] = pc.certificate.has_value();
    if (pc.certificate) {
      e["e"] = pc.certificate->e;
      e["c"] = (-pc.certificate->c[0][1]).value();  // column 2 minus c times column 1
    }
    if (!pc.point.is_infinity()) {
      e["direct"] = column_constant_json(find_column_constant(s, pc.point, false));
      e["mirror"] = column_constant_json(find_column_constant(s, pc.point, true));
    }
    int order = 0;
    for (const auto& [pt, k] : poles.points)
      if (pt == pc.point) order = k;
    e["pole_order"] = order;
    if (order == 1) {
      const ResidueData res = residue(t, pc.point);
      e["residue_eigenvalues"] = elements_json(res.eigenvalues);
      e["residue_split"] = res.split;
    }
    lj.push_back(e);
  }
  r["local"] = lj;
  r["log_vanishing_local"] = local.valid;
  const bool global = log_vanishing_by_curvature(s);
  r["log_vanishing_curvature"] = global;
  r["pass"] = local.valid && global;
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobConfig cfg;
  CLI::App app{"Logarithmic connections with vanishing p-curvature on rank-2 bundles over P^1"};
  app.require_subcommand(1);
  auto field_opts = [&](CLI::App* c) {
    c->add_option("--p", cfg.p, "characteristic");
    c->add_option("--ext-degree", cfg.ext_degree, "extension degree k, q = p^k")->check(CLI::Range(1, 20));
  };
  auto io_opts = [&](CLI::App* c, bool input) {
    if (input) c->add_option("--input", cfg.input, "input JSON file")->required();
    c->add_option("--output", cfg.output, "output file (default stdout)");
  };
  auto common = [&](CLI::App* c) {
    c->add_option("--seed", cfg.seed, "seed for sampling");
    c->add_option("--budget", cfg.budget, "enumeration budget");
    c->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  };
  CLI::App* verify = app.add_subcommand("verify", "verify a serialized kernel map");
  CLI::App* construct = app.add_subcommand("construct", "build the kernel map of a class datum");
  CLI::App* classify = app.add_subcommand("classify", "read off the invariants of a kernel map");
  CLI::App* count = app.add_subcommand("count", "exponent-vector counts or the constant-class census");
  CLI::App* search = app.add_subcommand("search-maps", "ramified rational maps up to post-composition");
  CLI::App* deform = app.add_subcommand("deform", "first-order deformations of a kernel map");
  for (CLI::App* c : {verify, construct, classify, deform}) {
    io_opts(c, true);
    common(c);
  }
  deform->add_option("--samples", cfg.samples, "random deformations to test")->check(CLI::Range(0, 100000));
  for (CLI::App* c : {count, search}) {
    field_opts(c);
    io_opts(c, false);
    common(c);
  }
  count->add_option("--n", cfg.n, "number of points");
  count->add_option("--d", cfg.d);
  count->add_option("--m", cfg.m);
  count->add_option("--delta", cfg.delta);
  count->add_option("--s", cfg.s, "restrict to one exponent sum");
  count->add_option("--D", cfg.D, "restrict to one count of small exponents");
  search->add_option("--degree", cfg.degree, "degree of the map");
  search->add_option("--points", cfg.points, "packed points")->delimiter(',');
  search->add_option("--index", cfg.index, "minimal ramification index per point")->delimiter(',');
  search->add_option("--infinity-index", cfg.infinity_index, "minimal ramification index at infinity");

  std::vector<std::string> argv_store{"pcurv"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "construct") return cmd_construct(cfg, out);
    if (cfg.command == "classify") return cmd_classify(cfg, out);
    if (cfg.command == "count") {
      if (cfg.format.empty()) cfg.format = "csv";
      return cmd_count(cfg, out);
    }
    if (cfg.command == "search-maps") return cmd_search(cfg, out);
    if (cfg.command == "deform") return cmd_deform(cfg, out);
  } catch (const SchemaError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const PreconditionError& e) {
    err << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace pcurv
