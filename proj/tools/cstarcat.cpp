// Command-line driver: validates category specifications and runs the
// K-theory, crossed-product, Morita and orbit computations on them.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cstarcat/ideal.hpp"
#include "cstarcat/morita.hpp"
#include "cstarcat/orbit.hpp"
#include "cstarcat/spec_io.hpp"
#include "cstarcat/sums.hpp"

using namespace cstarcat;

namespace {

struct Options {
  std::string format = "json";
  std::uint64_t seed = 1;
  double tol_mem = 1e-8;
  double tol_rank = 1e-7;
  std::size_t max_dim = 4096;

  Tolerances tolerances() const {
    Tolerances t;
    t.mem = tol_mem;
    t.rank = tol_rank;
    return t;
  }
};

json header_json(const Options& opt, const std::string& command) {
  json j;
  j["command"] = command;
  j["seed"] = opt.seed;
  j["tolerances"] = {{"mem", opt.tol_mem}, {"orth", Tolerances{}.orth},
                     {"rank", opt.tol_rank}};
  return j;
}

void print_output(const Options& opt, const json& j, const std::string& text) {
  if (opt.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

json int_matrix_to_json(const IntMatrix& m) {
  json j = json::array();
  for (const auto& row : m) j.push_back(row);
  return j;
}

std::string int_matrix_to_text(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) os << ",";
      os << m[i][j];
    }
  }
  os << "]";
  return os.str();
}

json k0_to_json(const K0Data& k) {
  json j;
  j["rank"] = k.rank;
  j["block_sizes"] = k.block_sizes;
  j["multiplicities"] = k.multiplicities;
  j["labels"] = k.labels;
  j["k1"] = "0 (finite-dimensional)";
  return j;
}

Subgroup parse_subgroup(const FiniteGroup& g, const std::string& text) {
  if (text == "e" || text == "{e}") return Subgroup{g.identity()};
  Subgroup h;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    h.push_back(std::stoul(tok));
  }
  std::sort(h.begin(), h.end());
  if (!is_subgroup(g, h))
    throw NotASubgroup("element set " + text + " is not closed");
  return h;
}

int run_validate(const Options& opt, const std::string& spec_path) {
  IngestResult in = ingest_file(spec_path, opt.tolerances());
  json j = header_json(opt, "validate");
  j["category"] = report_to_json(in.category_validation);
  std::string text = report_to_text(in.category_validation);
  bool pass = in.category_validation.all_pass();
  if (in.action_validation) {
    j["action"] = report_to_json(*in.action_validation);
    text += report_to_text(*in.action_validation);
    pass = pass && in.action_validation->all_pass();
  }
  j["pass"] = pass;
  print_output(opt, j, text);
  return pass ? 0 : 1;
}

void require_valid_input(const IngestResult& in) {
  if (!in.category_validation.all_pass()) {
    std::string names;
    for (const auto& n : in.category_validation.failures()) names += " " + n;
    throw ValidationError("category fails:" + names);
  }
  if (in.action_validation && !in.action_validation->all_pass())
    throw ValidationError("action fails validation");
}

int run_k0(const Options& opt, const std::string& spec_path) {
  IngestResult in = ingest_file(spec_path, opt.tolerances());
  require_valid_input(in);
  CategoryK0 k = k0_of_category(in.cat, opt.seed, opt.tolerances());
  json j = header_json(opt, "k0");
  j["k0"] = k0_to_json(k.k0);
  j["pass"] = true;
  print_output(opt, j, "K0 = " + k0_to_string(k.k0) + "\n");
  return 0;
}

int run_crossed(const Options& opt, const std::string& spec_path,
                const std::string& subgroup_text) {
  IngestResult in = ingest_file(spec_path, opt.tolerances());
  require_valid_input(in);
  if (!in.action) throw ValidationError("spec has no group action");
  GAction action = *in.action;
  Subgroup h;
  if (subgroup_text.empty()) {
    for (std::size_t g = 0; g < action.group().order(); ++g) h.push_back(g);
  } else {
    h = parse_subgroup(action.group(), subgroup_text);
  }
  CrossedProduct cp(action.restrict_to(h), opt.tolerances());
  Report val = validate(cp.category(), opt.tolerances());
  Report mr = max_equals_reduced_check(cp, opt.tolerances());
  CategoryK0 k = k0_of_category(cp.category(), opt.seed, opt.tolerances());

  json j = header_json(opt, "crossed");
  j["subgroup"] = h;
  j["validation"] = report_to_json(val);
  j["max_equals_reduced"] = report_to_json(mr);
  j["k0"] = k0_to_json(k.k0);
  bool pass = val.all_pass() && mr.all_pass();
  j["pass"] = pass;

  std::string text = "crossed product by " + subgroup_to_string(h) + "\n" +
                     report_to_text(val) + report_to_text(mr) +
                     "K0 = " + k0_to_string(k.k0) + "\n";
  print_output(opt, j, text);
  return pass ? 0 : 1;
}

int run_orbit(const Options& opt, const std::string& spec_path) {
  IngestResult in = ingest_file(spec_path, opt.tolerances());
  require_valid_input(in);
  if (!in.action) throw ValidationError("spec has no group action");
  OrbitReport rep = orbit_report(*in.action, opt.seed, opt.tolerances());

  json j = header_json(opt, "orbit");
  json values = json::array();
  std::ostringstream text;
  text << "orbit values:\n";
  for (const auto& v : rep.values) {
    values.push_back({{"i_h_morita", v.i_h_morita},
                      {"k0", k0_to_json(v.k0)},
                      {"max_equals_reduced", v.max_equals_reduced},
                      {"subgroup", v.subgroup}});
    text << "  G/" << subgroup_to_string(v.subgroup) << ": "
         << k0_to_string(v.k0) << (v.i_h_morita ? "" : "  [i_H FAILED]") << "\n";
  }
  j["values"] = std::move(values);
  json maps = json::array();
  text << "orbit maps:\n";
  for (const auto& m : rep.maps) {
    maps.push_back({{"from", m.from},
                    {"map_index", m.map_index},
                    {"matrix", int_matrix_to_json(m.matrix)},
                    {"to", m.to}});
    text << "  G/" << m.from << " -> G/" << m.to << " [" << m.map_index
         << "]: " << int_matrix_to_text(m.matrix) << "\n";
  }
  j["maps"] = std::move(maps);
  j["checks"] = report_to_json(rep.checks);
  bool pass = rep.checks.all_pass();
  j["pass"] = pass;
  text << report_to_text(rep.checks);
  print_output(opt, j, text.str());
  return pass ? 0 : 1;
}

int run_morita(const Options& opt, const std::string& spec_path,
               const std::string& functor_path) {
  IngestResult in = ingest_file(spec_path, opt.tolerances());
  require_valid_input(in);

  std::ifstream fin(functor_path);
  if (!fin) throw ParseError("cannot open '" + functor_path + "'");
  json fj;
  try {
    fin >> fj;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }

  FinCStarCat source = in.cat;
  if (fj.contains("source")) {
    json wrapped;
    wrapped["category"] = fj.at("source");
    IngestResult src_in = ingest(parse_spec(wrapped), opt.tolerances());
    if (!src_in.category_validation.all_pass())
      throw ValidationError("functor source category fails validation");
    source = src_in.cat;
  }
  if (!fj.contains("object_map"))
    throw ParseError("functor file needs an object_map");
  std::map<std::string, std::string> om =
      fj.at("object_map").get<std::map<std::string, std::string>>();
  CatFunctor f = make_functor(source, in.cat, om,
                              [](const std::string&, const std::string&,
                                 const ComplexMatrix& m) { return m; },
                              opt.tolerances());
  Report fval = validate_functor(f, opt.tolerances());
  if (!fval.all_pass()) throw ValidationError("functor fails validation");

  MoritaVerdict v = is_morita_equivalence(f, opt.seed, true, opt.tolerances());
  json j = header_json(opt, "morita");
  j["verdict"] = to_string(v.verdict);
  j["fully_faithful"] = v.fully_faithful;
  json evidence = json::array();
  for (const auto& e : v.evidence) {
    json je = {{"covered", e.covered},
               {"identity_class", e.identity_class},
               {"object", e.object}};
    if (e.witness) {
      je["witness_summands"] = e.witness_summands;
      je["witness_isometry"] = io_detail::emit_matrix(e.witness->matrix);
    }
    evidence.push_back(std::move(je));
  }
  j["evidence"] = std::move(evidence);

  std::ostringstream text;
  text << "morita verdict: " << to_string(v.verdict) << "\n";
  bool pass = v.yes();
  if (v.yes()) {
    MoritaK0Report kr = verify_morita_k0_invariance(f, opt.seed, opt.tolerances());
    j["k0_invariance"] = report_to_json(kr.report);
    j["k0_matrix"] = int_matrix_to_json(kr.k0_matrix);
    text << "K0 matrix: " << int_matrix_to_text(kr.k0_matrix) << "\n"
         << report_to_text(kr.report);
    pass = pass && kr.report.all_pass();
  }
  j["pass"] = pass;
  print_output(opt, j, text.str());
  return pass ? 0 : 1;
}

int run_sums_check(const Options& opt, const std::string& spec_path,
                   std::size_t trials) {
  IngestResult in = ingest_file(spec_path, opt.tolerances());
  require_valid_input(in);
  Rng rng(opt.seed);
  Report all;
  all.title = "sums-check";
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::string> picks;
    const std::size_t count = 1 + rng.below(3);
    for (std::size_t i = 0; i < count; ++i)
      picks.push_back(in.cat.object(rng.below(in.cat.object_count())).id);
    DirectSumResult sum = direct_sum(in.cat, picks, opt.tolerances(), opt.max_dim);
    Report ver = verify_orthogonal_sum(sum.cat, sum.presentation, rng.next_u64(),
                                       opt.tolerances());
    all.add_flag("trial" + std::to_string(t) + "/orthogonal-sum", ver.all_pass());

    // random family into the summands with a common random domain
    const std::string dom = in.cat.object(rng.below(in.cat.object_count())).id;
    std::vector<Morphism> fam;
    bool have_family = true;
    for (const auto& s : sum.presentation.summands) {
      const auto& h = sum.cat.hom(dom, s);
      if (h.dim() == 0 && sum.cat.dim_of(s) > 0 && sum.cat.dim_of(dom) > 0)
        have_family = false;
      fam.push_back(Morphism{dom, s,
                             h.dim() > 0
                                 ? h.random_element(rng)
                                 : ComplexMatrix(sum.cat.dim_of(s), sum.cat.dim_of(dom))});
    }
    if (have_family) {
      Report nf = norm_formula_check(sum.cat, sum.presentation, fam);
      all.add_flag("trial" + std::to_string(t) + "/norm-formula", nf.all_pass());
    }

    // scaled coordinate co-isometries form a mutually orthogonal family
    std::vector<Morphism> orth;
    for (const auto& e : sum.presentation.isometries)
      orth.push_back(Morphism{sum.presentation.sum_object, e.src,
                              rng.cgaussian() * e.matrix.adjoint()});
    Report sq = square_summable_bound_check(orth, opt.tolerances());
    all.add_flag("trial" + std::to_string(t) + "/square-summable", sq.all_pass());

    DirectSumResult sum2 = direct_sum(sum.cat, picks, opt.tolerances(), opt.max_dim);
    Morphism v = sum_comparison_unitary(sum2.cat, sum.presentation,
                                        sum2.presentation, opt.tolerances());
    all.add_flag("trial" + std::to_string(t) + "/comparison-unitary",
                 sum2.cat.is_member(v, opt.tolerances()));
  }
  json j = header_json(opt, "sums-check");
  j["trials"] = trials;
  j["report"] = report_to_json(all);
  j["pass"] = all.all_pass();
  print_output(opt, j, report_to_text(all));
  return all.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite C*-category calculator"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options opt;
  if (const char* env = std::getenv("CSTARCAT_SEED"))
    opt.seed = std::strtoull(env, nullptr, 10);
  app.add_option("--seed", opt.seed, "deterministic seed");
  app.add_option("--tol-mem", opt.tol_mem, "membership tolerance (relative)");
  app.add_option("--tol-rank", opt.tol_rank, "rank/eigenvalue tolerance");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-dim", opt.max_dim, "closure dimension cap");

  std::string spec_path, functor_path, subgroup_text;
  std::size_t trials = 20;

  CLI::App* validate_cmd = app.add_subcommand("validate", "check the C*-category axioms");
  validate_cmd->add_option("spec", spec_path, "spec file")->required();

  CLI::App* k0_cmd = app.add_subcommand("k0", "K0 of the category");
  k0_cmd->add_option("spec", spec_path, "spec file")->required();

  CLI::App* crossed_cmd =
      app.add_subcommand("crossed", "reduced crossed product by the spec's group");
  crossed_cmd->add_option("spec", spec_path, "spec file")->required();
  crossed_cmd->add_option("--subgroup", subgroup_text,
                          "element indices, e.g. 0,2 (default: the whole group)");

  CLI::App* orbit_cmd = app.add_subcommand("orbit", "orbit-functor report");
  orbit_cmd->add_option("spec", spec_path, "spec file")->required();

  CLI::App* morita_cmd = app.add_subcommand("morita", "Morita-equivalence verdict");
  morita_cmd->add_option("spec", spec_path, "spec file (target category)")->required();
  morita_cmd->add_option("--functor", functor_path, "functor file")->required();

  CLI::App* sums_cmd = app.add_subcommand("sums-check", "randomized orthogonal-sum checks");
  sums_cmd->add_option("spec", spec_path, "spec file")->required();
  sums_cmd->add_option("--trials", trials, "number of randomized trials");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate_cmd)) return run_validate(opt, spec_path);
    if (app.got_subcommand(k0_cmd)) return run_k0(opt, spec_path);
    if (app.got_subcommand(crossed_cmd)) return run_crossed(opt, spec_path, subgroup_text);
    if (app.got_subcommand(orbit_cmd)) return run_orbit(opt, spec_path);
    if (app.got_subcommand(morita_cmd)) return run_morita(opt, spec_path, functor_path);
    if (app.got_subcommand(sums_cmd)) return run_sums_check(opt, spec_path, trials);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
