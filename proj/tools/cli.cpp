#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>

#include "nikulin/audit.hpp"
#include "nikulin/classify.hpp"
#include "nikulin/enumerate.hpp"
#include "nikulin/expression.hpp"
#include "nikulin/io.hpp"
#include "nikulin/orbit.hpp"
#include "nikulin/sublattice.hpp"

namespace nikulin::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VectorInput {
  std::string expression;
  std::string coords_file;
  std::string lattice = "LY";
};

struct BudgetFlags {
  int64_t bound = OrbitBudget{}.coord_bound;
  std::size_t depth = OrbitBudget{}.max_depth;
  std::size_t frontier = OrbitBudget{}.max_frontier;

  OrbitBudget budget() const {
    OrbitBudget b{bound, frontier, depth};
    try {
      b.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return b;
  }
};

void add_vector_input(CLI::App* app, VectorInput& in, const char* what = "vector expression over LY") {
  app->add_option("expression", in.expression, what);
  app->add_option("--coords", in.coords_file, "JSON vector file {\"lattice\", \"coords\"}");
  app->add_option("--lattice", in.lattice, "lattice of the expression (only LY has named vectors)");
}

void add_budget(CLI::App* app, BudgetFlags& b) {
  app->add_option("--budget-bound", b.bound, "largest |coordinate| kept during BFS");
  app->add_option("--budget-depth", b.depth, "BFS depth");
  app->add_option("--budget-frontier", b.frontier, "cap on retained orbit members");
}

LatticeVector read_vector(const NamedModel& model, const VectorInput& in) {
  if (!in.coords_file.empty()) {
    if (!in.expression.empty()) throw UsageError("give either an expression or --coords, not both");
    return vector_from_json(read_json_file(in.coords_file), model_resolver(model));
  }
  if (in.expression.empty()) throw UsageError("missing vector (expression or --coords FILE)");
  if (in.lattice != model.lambda_y()->label())
    throw UsageError("vector expressions are defined over LY only; use --coords for " + in.lattice);
  return parse_vector_expression(model, in.expression);
}

std::vector<std::string> split_blocks(const std::string& s);

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string describe(const LatticeVector& v, const NamedModel& m) {
  if (v.lattice()->same_as(*m.lambda_y())) return format_basis_expression(m, v);
  return v.lattice()->label() + format_coords(v.coords_span());
}

Json profile_json(const VectorProfile& p) {
  Json j;
  j["q"] = integer_to_json(p.q);
  j["div"] = integer_to_json(p.div);
  j["primitive"] = p.primitive;
  j["u_part_div_by_2"] = p.u_part_div_by_2;
  Json e8 = Json::array();
  for (const auto& c : p.e8_part) e8.push_back(integer_to_json(c));
  j["e8_part"] = e8;
  j["e8_part_div_by_2"] = p.e8_part_div_by_2;
  j["e8_residue_mod4_zero"] = p.e8_residue_mod4_zero;
  j["q_e8"] = integer_to_json(p.q_e8);
  j["q_e8_mod4"] = p.q_e8_mod4;
  j["gamma_coords"] = Json::array({integer_to_json(p.gamma_k), integer_to_json(p.gamma_m)});
  j["gamma_in_delta_sigma_span"] = p.gamma_in_delta_sigma_span;
  j["pair_sigma"] = integer_to_json(p.pair_sigma);
  j["pair_sigma_mod4"] = p.pair_sigma_mod4;
  return j;
}

Json star_json(const StarCondition& s) {
  Json j;
  j["u_part_not_div_by_2"] = s.u_part_not_div_by_2;
  j["e8_part_div_by_2"] = s.e8_part_div_by_2;
  j["gamma_in_delta_sigma_span"] = s.gamma_in_delta_sigma_span;
  j["holds"] = s.holds();
  return j;
}

void print_profile(std::ostream& out, const VectorProfile& p, const StarCondition& s) {
  out << "q=" << p.q << " div=" << p.div << " primitive=" << yes_no(p.primitive) << "\n";
  out << "star: u-part odd=" << yes_no(s.u_part_not_div_by_2) << " e8-part even=" << yes_no(s.e8_part_div_by_2)
      << " k=m mod 2=" << yes_no(s.gamma_in_delta_sigma_span) << " => " << yes_no(s.holds()) << "\n";
  out << "e8_part=" << format_coords(p.e8_part) << " q_e8=" << p.q_e8 << " (mod 4: " << p.q_e8_mod4 << ")"
      << " residue mod 4 zero=" << yes_no(p.e8_residue_mod4_zero) << "\n";
  out << "gamma=(" << p.gamma_k << "," << p.gamma_m << ") (v,SigmaY)=" << p.pair_sigma
      << " (mod 4: " << p.pair_sigma_mod4 << ")\n";
}

std::string polarisation_text(std::pair<int, int> p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

int cmd_classify(const NamedModel& m, const VectorInput& in, bool json, std::ostream& out) {
  const auto v = read_vector(m, in);
  const auto c = classify_orbit(m, v);
  const auto star = star_condition(m, v);
  std::optional<FibrationType> type;
  if (c.profile.q == 0) type = classify_isotropic_type(m, v);
  if (json) {
    Json j;
    j["vector"] = vector_to_json(v);
    j["case"] = to_string(c.orbit_case);
    if (c.orbit_case != OrbitCase::Unmatched) {
      j["i"] = integer_to_json(c.i);
      j["negative_parameter"] = c.negative_parameter();
      j["formula"] = row_formula(c.orbit_case, c.i);
      j["representative"] = vector_to_json(*c.representative);
    } else {
      j["i"] = nullptr;
      j["representative"] = nullptr;
    }
    j["profile"] = profile_json(c.profile);
    j["star"] = star_json(star);
    if (type) {
      Json t;
      t["type"] = to_string(type->kind);
      t["polarisation"] = Json::array({type->polarisation.first, type->polarisation.second});
      t["orbit_representative"] = vector_to_json(type->orbit_representative);
      t["pair_sigma_mod4"] = type->pair_sigma_mod4;
      t["sigma_pairing_forces_a"] = type->sigma_pairing_forces_a;
      j["isotropic"] = t;
    } else {
      j["isotropic"] = nullptr;
    }
    out << j.dump(2) << "\n";
    return kSuccess;
  }
  out << to_string(c.orbit_case);
  if (c.orbit_case != OrbitCase::Unmatched) out << " i=" << c.i;
  if (type)
    out << "; isotropic: type " << to_string(type->kind) << ", polarisation " << polarisation_text(type->polarisation);
  out << "\n";
  if (c.representative)
    out << "representative: " << row_formula(c.orbit_case, c.i) << " = " << describe(*c.representative, m) << "\n";
  else
    out << "no row of the orbit table matches\n";
  if (c.negative_parameter()) out << "note: i < 0\n";
  print_profile(out, c.profile, star);
  return kSuccess;
}

int cmd_profile(const NamedModel& m, const VectorInput& in, bool json, std::ostream& out) {
  const auto v = read_vector(m, in);
  const auto p = vector_profile(m, v);
  const auto s = star_condition(m, v);
  if (json) {
    Json j;
    j["vector"] = vector_to_json(v);
    j["profile"] = profile_json(p);
    j["star"] = star_json(s);
    out << j.dump(2) << "\n";
  } else {
    out << describe(v, m) << "\n";
    print_profile(out, p, s);
  }
  return kSuccess;
}

int cmd_reflect(const NamedModel& m, const VectorInput& in, const std::string& root_expr, bool json,
                std::ostream& out) {
  const auto v = read_vector(m, in);
  const auto root = parse_vector_expression(m, root_expr);
  if (!root.lattice()->same_as(*v.lattice())) throw DomainError("root and vector live in different lattices");
  const auto image = reflection(root)(v);
  if (json) {
    Json j;
    j["root"] = vector_to_json(root);
    j["vector"] = vector_to_json(v);
    j["pairing"] = integer_to_json(pair(v, root));
    j["image"] = vector_to_json(image);
    out << j.dump(2) << "\n";
  } else {
    out << "(v,r)=" << pair(v, root) << "\n";
    out << "R_r(v) = " << describe(image, m) << "\n";
  }
  return kSuccess;
}

int cmd_orbit(const NamedModel& m, const VectorInput& in, const BudgetFlags& flags, std::size_t workers,
              const std::string& root_window, const std::vector<std::string>& extra_roots, const std::string& target,
              bool list, bool json, std::ostream& out) {
  const auto v = read_vector(m, in);
  auto roots = root_window.empty() ? short_roots(v.lattice())
                                   : window_roots(v.lattice(), EnumerationWindow{split_blocks(root_window), 1});
  for (const auto& e : extra_roots) roots.push_back(parse_vector_expression(m, e));
  const auto gens = root_reflections(roots);
  const auto budget = flags.budget();
  if (!target.empty()) {
    const auto u = parse_vector_expression(m, target);
    const auto found = same_orbit_witness(v, u, gens, budget);
    if (json) {
      Json j;
      j["from"] = vector_to_json(v);
      j["to"] = vector_to_json(u);
      j["generators"] = Json::array();
      for (const auto& r : roots) j["generators"].push_back(vector_to_json(r));
      j["word"] = found.word ? word_to_json(*found.word) : Json(nullptr);
      j["visited"] = found.visited;
      j["budget_exhausted"] = found.budget_exhausted;
      if (!found.word) j["note"] = WitnessSearch::kAbsenceNote;
      out << j.dump(2) << "\n";
    } else if (found.word) {
      out << "witness of length " << found.word->size() << ":";
      for (auto g : *found.word) out << " " << describe(roots[g], m);
      out << "\n";
    } else {
      out << WitnessSearch::kAbsenceNote << " (visited " << found.visited << ")\n";
    }
    return kSuccess;
  }
  const auto orbit = orbit_explore(v, gens, budget, OrbitOptions{std::max<std::size_t>(1, workers)});
  if (json) {
    out << orbit_to_json(orbit).dump(2) << "\n";
    return kSuccess;
  }
  out << "members=" << orbit.size() << " generators=" << gens.size() << " depth=" << orbit.depth_reached
      << " exhausted=" << yes_no(orbit.exhausted) << "\n";
  if (!orbit.exhausted)
    out << "truncated by:" << (orbit.hit_coord_bound ? " coordinate bound" : "")
        << (orbit.hit_frontier_cap ? " member cap" : "") << (orbit.hit_depth_cap ? " depth" : "") << "\n";
  if (list)
    for (std::size_t i = 0; i < orbit.size(); ++i) out << describe(orbit.member(i), m) << "\n";
  return kSuccess;
}

void register_eta_files(NamedModel& m, const std::vector<std::string>& files) {
  for (const auto& f : files) m.register_eta_variant(eta_variant_from_json(read_json_file(f)));
}

void require_variants(const NamedModel& m, const std::vector<std::string>& names) {
  const auto known = m.eta_variant_names();
  for (const auto& n : names)
    if (std::find(known.begin(), known.end(), n) == known.end()) throw UsageError("unknown eta variant \"" + n + "\"");
}

Json check_json(const EmbeddingCheck& c) {
  Json j;
  j["isometric"] = c.isometric;
  j["primitive"] = c.primitive;
  j["saturation_index"] = integer_to_json(c.saturation_index);
  Json f = Json::array();
  for (const auto& x : c.index_invariant_factors) f.push_back(integer_to_json(x));
  j["index_invariant_factors"] = f;
  j["pairs_checked"] = c.pairs_checked;
  return j;
}

int cmd_embed(NamedModel& m, const std::string& variant, const std::vector<std::string>& eta_files,
              const std::string& coords_file, bool json, std::ostream& out) {
  register_eta_files(m, eta_files);
  require_variants(m, {variant});
  const auto emb = m.eta_embedding(variant);
  const auto check = check_embedding(emb);
  std::optional<LatticeVector> x, image;
  if (!coords_file.empty()) {
    x = vector_from_json(read_json_file(coords_file), model_resolver(m));
    image = m.eta(variant, *x);
  }
  if (json) {
    Json j;
    j["variant"] = variant;
    j["domain"] = emb.domain->label();
    j["codomain"] = emb.codomain->label();
    j["check"] = check_json(check);
    if (x) {
      j["vector"] = vector_to_json(*x);
      j["image"] = vector_to_json(*image);
    }
    out << j.dump(2) << "\n";
    return kSuccess;
  }
  out << "eta[" << variant << "]: " << emb.domain->label() << " -> " << emb.codomain->label() << "\n";
  out << "isometric=" << yes_no(check.isometric) << " (" << check.pairs_checked << " basis pairs)"
      << " primitive=" << yes_no(check.primitive) << " saturation index=" << check.saturation_index
      << " factors=" << format_coords(check.index_invariant_factors) << "\n";
  if (x) out << "eta(" << describe(*x, m) << ") = " << describe(*image, m) << "\n";
  return kSuccess;
}

int cmd_saturate(const NamedModel& m, const std::vector<std::string>& exprs, const std::vector<std::string>& files,
                 bool json, std::ostream& out) {
  std::vector<LatticeVector> gens;
  for (const auto& e : exprs) gens.push_back(parse_vector_expression(m, e));
  for (const auto& f : files) gens.push_back(vector_from_json(read_json_file(f), model_resolver(m)));
  if (gens.empty()) throw UsageError("saturate needs at least one generator");
  for (const auto& g : gens)
    if (!g.lattice()->same_as(*gens.front().lattice())) throw DomainError("generators live in different lattices");
  const auto rep = saturate(gens.front().lattice(), gens);
  if (json) {
    Json j;
    j["generators"] = Json::array();
    for (const auto& g : rep.generators) j["generators"].push_back(vector_to_json(g));
    j["saturation_basis"] = Json::array();
    for (const auto& b : rep.saturation_basis) j["saturation_basis"].push_back(vector_to_json(b));
    Json f = Json::array();
    for (const auto& x : rep.index_invariant_factors) f.push_back(integer_to_json(x));
    j["index_invariant_factors"] = f;
    j["total_index"] = integer_to_json(rep.total_index);
    out << j.dump(2) << "\n";
    return kSuccess;
  }
  out << "total index=" << rep.total_index << " factors=" << format_coords(rep.index_invariant_factors) << "\n";
  out << "saturation basis:\n";
  for (const auto& b : rep.saturation_basis) out << "  " << describe(b, m) << "\n";
  return kSuccess;
}

std::vector<std::string> split_blocks(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int cmd_enumerate(const NamedModel& m, const std::string& lattice_label, const std::string& blocks, int64_t bound,
                  std::optional<long> target, bool json, std::ostream& out) {
  const auto lattice = model_resolver(m)(lattice_label);
  const EnumerationWindow window{split_blocks(blocks), bound};
  for (const auto& b : window.blocks) {
    const auto& all = lattice->blocks();
    if (std::none_of(all.begin(), all.end(), [&](const Block& x) { return x.label == b; }))
      throw UsageError("lattice " + lattice->label() + " has no block \"" + b + "\"");
  }
  const auto vectors = target ? enumerate_vectors_of_square(lattice, window, *target)
                              : enumerate_primitive_isotropic(lattice, window);
  std::map<std::string, std::size_t> by_div;
  for (const auto& v : vectors)
    if (!v.is_zero()) ++by_div[divisibility(v).get_str()];
  if (json) {
    Json j;
    j["window"] = Json{{"lattice", lattice->label()}, {"blocks", window.blocks}, {"bound", window.bound}};
    j["square"] = target ? Json(*target) : Json(0);
    j["primitive_only"] = !target.has_value();
    j["count"] = vectors.size();
    Json d = Json::object();
    for (const auto& [k, n] : by_div) d[k] = n;
    j["by_divisibility"] = d;
    j["vectors"] = Json::array();
    for (const auto& v : vectors) j["vectors"].push_back(vector_to_json(v));
    out << j.dump(2) << "\n";
    return kSuccess;
  }
  for (const auto& v : vectors) out << describe(v, m) << "\n";
  out << vectors.size() << " vectors in " << window.describe() << "; by divisibility:";
  for (const auto& [k, n] : by_div) out << " " << k << ":" << n;
  out << "\n";
  return kSuccess;
}

int cmd_audit(NamedModel& m, const BudgetFlags& flags, const std::vector<std::string>& variants,
              const std::vector<std::string>& eta_files, const std::string& out_dir, std::size_t workers, bool json,
              std::ostream& out) {
  register_eta_files(m, eta_files);
  require_variants(m, variants);
  AuditOptions options;
  options.budget = flags.budget();
  options.eta_variants = variants;
  options.workers = std::max<std::size_t>(1, workers);
  std::error_code ec;
  if (!std::filesystem::is_directory(out_dir, ec)) throw IoError("output directory " + out_dir + " does not exist");
  const auto report = run_all(m, options);
  const std::string text = report.to_text();
  const std::string body = report.to_json().dump(2) + "\n";
  write_text_file((std::filesystem::path(out_dir) / "report.txt").string(), text);
  write_text_file((std::filesystem::path(out_dir) / "report.json").string(), body);
  out << (json ? body : text);
  return report.all_as_expected() ? kSuccess : kDomainFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact lattice computations on LY = U(2)^3 + E8(-1) + <-2>^2 and the audit catalog", "nikulin"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  VectorInput classify_in, profile_in, reflect_in, orbit_in;
  auto* classify = app.add_subcommand("classify", "orbit-table case and isotropic type of a primitive vector");
  add_vector_input(classify, classify_in);
  auto* profile = app.add_subcommand("profile", "numerical invariants read by the orbit table");
  add_vector_input(profile, profile_in);

  std::string root;
  auto* reflect = app.add_subcommand("reflect", "image under the reflection in a (-2)-vector");
  add_vector_input(reflect, reflect_in);
  reflect->add_option("--root", root, "root expression (square -2)")->required();

  BudgetFlags orbit_budget;
  std::size_t orbit_workers = 1;
  std::vector<std::string> extra_roots;
  std::string target, root_window;
  bool list = false;
  auto* orbit = app.add_subcommand("orbit", "bounded BFS orbit under short-root reflections");
  add_vector_input(orbit, orbit_in);
  add_budget(orbit, orbit_budget);
  orbit->add_option("--workers", orbit_workers, "threads per BFS layer");
  orbit->add_option("--root-window", root_window,
                    "use the (-2)-vectors with |coords| <= 1 on these blocks (e.g. U2,E8,G1) instead of short roots");
  orbit->add_option("--extra-root", extra_roots, "additional reflection root (repeatable)");
  orbit->add_option("--target", target, "search for a generator word to this vector instead");
  orbit->add_flag("--list", list, "print the members");

  std::string embed_variant = "as-written";
  std::vector<std::string> embed_files;
  std::string embed_coords;
  auto* embed = app.add_subcommand("embed", "check an eta variant and apply it");
  embed->add_option("--eta-variant", embed_variant, "variant name");
  embed->add_option("--eta-file", embed_files, "JSON variant {\"name\", \"matrix\"} (repeatable)");
  embed->add_option("--coords", embed_coords, "vector of Lfix to map");

  std::vector<std::string> sat_exprs, sat_files;
  auto* sat = app.add_subcommand("saturate", "saturation and index of the generated sublattice");
  sat->add_option("expressions", sat_exprs, "generator expressions over LY");
  sat->add_option("--coords", sat_files, "JSON vector file (repeatable)");

  std::string enum_lattice = "LY", enum_blocks = "U1,E8,G1,G2";
  int64_t enum_bound = 1;
  std::optional<long> enum_square;
  auto* enumerate = app.add_subcommand("enumerate", "vectors of a block window (primitive isotropic by default)");
  enumerate->add_option("--lattice", enum_lattice, "LY, LX, Lfix");
  enumerate->add_option("--blocks", enum_blocks, "comma-separated block labels");
  enumerate->add_option("--bound", enum_bound, "largest |coordinate|");
  enumerate->add_option("--square", enum_square, "list all vectors of this square instead");

  BudgetFlags audit_budget;
  std::vector<std::string> audit_variants, audit_files;
  std::string audit_out = ".";
  std::size_t audit_workers = 1;
  auto* audit = app.add_subcommand("audit", "run the claim catalog and write report.txt and report.json");
  add_budget(audit, audit_budget);
  audit->add_option("--eta-variant", audit_variants, "variant to report on (repeatable; first decides)");
  audit->add_option("--eta-file", audit_files, "JSON variant file (repeatable)");
  audit->add_option("--out", audit_out, "output directory");
  audit->add_option("--workers", audit_workers, "claims run concurrently");

  for (auto* sub : {classify, profile, reflect, orbit, embed, sat, enumerate, audit})
    sub->add_flag("--json", json, "machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageFailure;
  }

  NamedModel model = default_model();
  try {
    if (classify->parsed()) return cmd_classify(model, classify_in, json, out);
    if (profile->parsed()) return cmd_profile(model, profile_in, json, out);
    if (reflect->parsed()) return cmd_reflect(model, reflect_in, root, json, out);
    if (orbit->parsed())
      return cmd_orbit(model, orbit_in, orbit_budget, orbit_workers, root_window, extra_roots, target, list, json, out);
    if (embed->parsed()) return cmd_embed(model, embed_variant, embed_files, embed_coords, json, out);
    if (sat->parsed()) return cmd_saturate(model, sat_exprs, sat_files, json, out);
    if (enumerate->parsed())
      return cmd_enumerate(model, enum_lattice, enum_blocks, enum_bound, enum_square, json, out);
    if (audit->parsed())
      return cmd_audit(model, audit_budget, audit_variants, audit_files, audit_out, audit_workers, json, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsageFailure;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageFailure;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kUsageFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kDomainFailure;
  }
  return kUsageFailure;
}

}  // namespace nikulin::cli
