#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "vhf/field_io.hpp"
#include "vhf/logic.hpp"
#include "vhf/morphisms.hpp"
#include "vhf/ramification.hpp"
#include "vhf/representatives.hpp"

#ifndef VHF_PRESET_DIR
#define VHF_PRESET_DIR "presets"
#endif

namespace fs = std::filesystem;

namespace vhf::cli {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  require(EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) == 1, ErrorKind::InvalidInput,
          "sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string default_preset_dir() { return VHF_PRESET_DIR; }

namespace {

// Relative paths that do not exist are looked up here, then in the
// default preset directory.
std::vector<std::string> g_search_dirs;

std::string resolve(const std::string& path) {
  if (path.empty() || path.front() == '{' || fs::exists(path)) return path;
  for (const auto& d : g_search_dirs)
    if (fs::exists(fs::path(d) / path)) return (fs::path(d) / path).string();
  if (fs::exists(fs::path(default_preset_dir()) / path)) return (fs::path(default_preset_dir()) / path).string();
  return path;
}

Field load_field(const std::string& arg, int n_override) {
  FieldSpec s = load_field_spec(resolve(arg));
  if (n_override > 0) s.n = n_override;
  return FieldModel::make(s);
}

Json load_json(const std::string& arg) {
  std::string text = arg;
  if (arg.find_first_not_of(" \t\n") == std::string::npos || arg[arg.find_first_not_of(" \t\n")] != '{') {
    std::ifstream in(resolve(arg));
    require(static_cast<bool>(in), ErrorKind::InvalidInput, "cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------- text output

bool scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render_text(const Json& j, std::ostream& os, int indent) {
  const std::string pad(indent, ' ');
  if (scalar(j)) {
    os << pad << scalar_text(j) << "\n";
    return;
  }
  if (j.is_array()) {
    for (const auto& item : j) {
      if (scalar(item)) {
        os << pad << "- " << scalar_text(item) << "\n";
      } else {
        os << pad << "-\n";
        render_text(item, os, indent + 2);
      }
    }
    return;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (scalar(v)) {
      os << pad << it.key() << ": " << scalar_text(v) << "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), scalar)) {
      os << pad << it.key() << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
      os << "]\n";
    } else {
      os << pad << it.key() << ":\n";
      render_text(v, os, indent + 2);
    }
  }
}

// ---------------------------------------------------------------- renderings

Json rational(const Rational& q) { return to_string(q); }

Json axiom_json(const AxiomReport& r) {
  Json out = Json::array();
  for (const auto& a : r.results)
    out.push_back({{"axiom", a.axiom}, {"status", a.pass ? "pass" : "fail"}, {"checked", a.checked},
                   {"witness", a.witness}});
  return out;
}

Json hom_report_json(const HomReport& r) {
  Json c = Json::array();
  for (const auto& x : r.conditions)
    c.push_back({{"condition", x.id}, {"status", x.pass ? "pass" : "fail"}, {"checked", x.checked},
                 {"witness", x.witness}});
  return {{"conditions", c}, {"all_pass", r.all_pass()}};
}

Json spec_json(const HomSpec& s) {
  Json units = Json::array();
  for (const auto& u : s.unit_images) units.push_back(to_json(*s.target, u));
  return {{"source", to_json(s.source->field()->spec())},
          {"target", to_json(s.target->field()->spec())},
          {"n", s.source->n()},
          {"over_p", s.over_p},
          {"unit_images", units},
          {"pi_image", to_json(*s.target, s.pi_image)},
          {"text", to_string(s)}};
}

HomSpec spec_from_json(const Json& j) {
  for (const char* key : {"source", "target", "n", "unit_images", "pi_image"})
    require(j.contains(key), ErrorKind::InvalidInput, std::string("hom spec lacks \"") + key + "\"");
  const int n = j["n"].get<int>();
  auto side = [&](const Json& f) {
    FieldSpec s = f.is_string() ? load_field_spec(resolve(f.get<std::string>())) : field_spec_from_json(f);
    s.n = n;
    return std::make_shared<const Hyperfield>(FieldModel::make(s), n);
  };
  HomSpec s;
  s.source = side(j["source"]);
  s.target = side(j["target"]);
  s.over_p = j.value("over_p", true);
  for (const auto& u : j["unit_images"]) s.unit_images.push_back(class_from_json(*s.target, u));
  s.pi_image = class_from_json(*s.target, j["pi_image"]);
  return s;
}

Json tri_json(const TriBool& t) {
  Json w = Json::array();
  for (const auto& [name, value] : t.witness) w.push_back({{"var", name}, {"value", value}});
  return {{"result", to_string(t)}, {"radius", t.radius}, {"definite", t.definite}, {"witness", w}};
}

Json embedding_json(const EmbeddingSpec& phi, const std::string& mode) {
  const int e = phi.source->e();
  Json j = {{"mode", mode},
            {"x_image", phi.x_image.to_string()},
            {"pi_image", phi.pi_image.to_string()},
            {"pi_image_power_e", phi.pi_image.pow(e).to_string()},
            {"agreement",
             {{"samples", phi.agreement.samples},
              {"mismatches", phi.agreement.mismatches},
              {"first_mismatch", phi.agreement.first_mismatch}}}};
  // the source Eisenstein polynomial at pi_image, as a check
  const Poly P = eisenstein_poly(phi.source);
  FieldElem r = FieldElem::zero(phi.target), pw = FieldElem::one(phi.target);
  for (const auto& c : P) {
    r += phi.apply(c) * pw;
    pw *= phi.pi_image;
  }
  j["eisenstein_at_pi_image_zero"] = r.is_zero();
  return j;
}

// ---------------------------------------------------------------- presets

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  int threads = 1;
};

void emit(const Ctx& c, const Json& j) {
  if (c.json) c.out << j.dump(2) << "\n";
  else render_text(j, c.out, 0);
}

int run_preset(const Ctx& c, const std::string& dir, const std::string& name, bool record) {
  const fs::path path = fs::path(dir) / (name + ".json");
  require(fs::exists(path), ErrorKind::InvalidInput, "no preset " + name + " in " + dir);
  Json preset = load_json(path.string());
  require(preset.contains("commands") && preset["commands"].is_array(), ErrorKind::InvalidInput,
          "preset lacks a command list");
  Json rows = Json::array();
  bool all = true;
  for (auto& cmd : preset["commands"]) {
    std::vector<std::string> args = cmd["args"].get<std::vector<std::string>>();
    args.push_back("--json");
    std::ostringstream o, e;
    const auto saved = g_search_dirs;
    g_search_dirs.insert(g_search_dirs.begin(), dir);
    const int code = run(args, o, e);
    g_search_dirs = saved;
    const std::string digest = sha256_hex(o.str());
    const std::string expected = cmd.value("sha256", "");
    const bool match = code == cmd.value("exit", 0) && digest == expected;
    all = all && match;
    rows.push_back({{"args", cmd["args"]}, {"exit", code}, {"sha256", digest}, {"expected", expected}, {"match", match}});
    if (record) {
      cmd["sha256"] = digest;
      cmd["exit"] = code;
    }
  }
  if (record) {
    std::ofstream f(path);
    f << preset.dump(2) << "\n";
    all = true;
  }
  emit(c, {{"preset", name}, {"seed", preset.value("seed", 0)}, {"commands", rows}, {"all_match", all},
           {"recorded", record}});
  return all ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Valued hyperfields of p-adic fields: arithmetic, bounds, morphisms and logic", "vhf"};
  app.require_subcommand(1);
  app.fallthrough();
  Ctx c{out, err};
  app.add_flag("--json", c.json, "Machine-readable JSON output");
  app.add_option("--threads", c.threads, "Worker threads for searches")->check(CLI::Range(1, 64));

  std::string field, elem, a_elem, b_elem, src, dst, spec, sentence, side = "vhf", mode = "auto", preset_dir,
                                                                  lang = "vhf";
  std::vector<std::string> elems;
  int n = 0, level = 1, window = -1, radius = 4, count = 50, max_vars = 2, samples = 100, index = -1, pe_p = 0,
      pe_e = 1, gN = 0, max_depth = 4;
  long p = 2, random = 2000;
  std::uint64_t seed = 1, node_cap = 50'000'000;
  bool cohen = false, isos = false, no_over_p = false, record = false;
  std::size_t cap = 1u << 20;

  auto* f_cmd = app.add_subcommand("field", "Show a field definition and evaluate elements");
  f_cmd->add_option("--field", field, "Field file or inline JSON")->required();
  f_cmd->add_option("--elem", elems, "Element expressions in pi, x and integers");

  auto* hf = app.add_subcommand("hf", "Hyperfield classes, sums and axiom checks");
  hf->require_subcommand(1);
  auto* hf_class = hf->add_subcommand("class", "Class of an element");
  auto* hf_add = hf->add_subcommand("add", "Hyperfield sum of two classes");
  auto* hf_axioms = hf->add_subcommand("axioms", "Check the hyperfield and valued hyperfield axioms");
  auto* hf_residue = hf->add_subcommand("residue", "The level-1 residue isomorphism table");
  auto* hf_units = hf->add_subcommand("units", "Unit group presentation of (O/m^n)^x");
  for (auto* s : {hf_class, hf_add, hf_axioms, hf_residue, hf_units}) {
    s->add_option("--field", field, "Field file or inline JSON")->required();
    s->add_option("--n", n, "Hyperfield level (defaults to the field file)");
  }
  hf_class->add_option("--elem", elem)->required();
  hf_add->add_option("--a", a_elem)->required();
  hf_add->add_option("--b", b_elem)->required();
  hf_add->add_option("--cutoff", window, "List members up to this valuation");
  hf_axioms->add_option("--window", window, "Valuation window (default 2n+2)");
  hf_axioms->add_option("--random", random, "Random triples");
  hf_axioms->add_option("--seed", seed);

  auto* ex = app.add_subcommand("expand", "Digit expansion by lambda representatives");
  ex->add_option("--field", field)->required();
  ex->add_option("--elem", elem)->required();
  ex->add_option("--level", level)->required();
  ex->add_flag("--cohen", cohen, "Expand in powers of p (elements of W)");

  auto* g = app.add_subcommand("gauss", "The Gauss valuation on Q_p(t)");
  g->require_subcommand(1);
  auto* g_expand = g->add_subcommand("expand", "p-basis expansion");
  auto* g_indep = g->add_subcommand("independent", "p-independence of a set");
  for (auto* s : {g_expand, g_indep}) {
    s->add_option("--p", p)->required();
    s->add_option("--N", gN, "Working precision (default level+4)");
  }
  g_expand->add_option("--level", level)->required();
  g_expand->add_option("--elem", elem)->required();
  g_indep->add_option("--elem", elems)->required();

  auto* bounds = app.add_subcommand("bounds", "Ramification bounds and level thresholds");
  bounds->add_option("--field", field)->required();

  auto* hom = app.add_subcommand("hom", "Homomorphisms of valued hyperfields and their lifts");
  hom->require_subcommand(1);
  auto* h_search = hom->add_subcommand("search", "All homomorphisms (or isomorphisms) between two hyperfields");
  h_search->add_option("--src", src)->required();
  h_search->add_option("--dst", dst)->required();
  h_search->add_option("--n", n)->required();
  h_search->add_flag("--isos", isos, "Only isomorphisms");
  h_search->add_flag("--over-p", "Require f([p]) = [p] (default)");
  h_search->add_flag("--no-over-p", no_over_p, "Drop the condition f([p]) = [p]");
  h_search->add_option("--window", window);
  h_search->add_option("--cap", cap, "Candidate budget");
  auto* h_check = hom->add_subcommand("check", "Check a hom spec");
  h_check->add_option("--spec", spec)->required();
  h_check->add_option("--window", window);
  auto* h_kras = hom->add_subcommand("krasner", "The quotient map onto the Krasner hyperfield");
  h_kras->add_option("--field", field)->required();
  h_kras->add_option("--n", n);
  h_kras->add_option("--window", window);
  auto* h_lift = hom->add_subcommand("lift", "Lift a hom to a field embedding");
  h_lift->add_option("--spec", spec, "Hom spec file or inline JSON");
  h_lift->add_option("--src", src);
  h_lift->add_option("--dst", dst);
  h_lift->add_option("--n", n);
  h_lift->add_option("--index", index, "Use the index-th isomorphism found by search");
  bool identity = false;
  h_lift->add_flag("--identity", identity, "Lift the identity of --src");
  h_lift->add_option("--mode", mode)->check(CLI::IsMember({"auto", "unramified", "tame", "wild"}));
  h_lift->add_option("--samples", samples);
  h_lift->add_option("--seed", elem, "Starting point for the wild lift");

  auto* lg = app.add_subcommand("logic", "Sentences of valued hyperfields and valued fields");
  lg->require_subcommand(1);
  auto* l_tr = lg->add_subcommand("translate", "L_vhf sentence to L_val");
  l_tr->add_option("--p", pe_p)->required();
  l_tr->add_option("--e", pe_e);
  l_tr->add_option("--n", n)->required();
  l_tr->add_option("--sentence", sentence)->required();
  auto* l_ev = lg->add_subcommand("eval", "Bounded evaluation on a model");
  l_ev->add_option("--model", field)->required();
  l_ev->add_option("--n", n);
  l_ev->add_option("--side", side)->check(CLI::IsMember({"vhf", "val"}));
  l_ev->add_option("--radius", radius);
  l_ev->add_option("--sentence", sentence)->required();
  l_ev->add_option("--max-depth", max_depth);
  l_ev->add_option("--node-cap", node_cap);
  auto* l_ag = lg->add_subcommand("agree", "Translation agreement on a generated corpus");
  l_ag->add_option("--model", field)->required();
  l_ag->add_option("--n", n);
  l_ag->add_option("--radius", radius);
  l_ag->add_option("--count", count);
  l_ag->add_option("--seed", seed);
  l_ag->add_option("--max-vars", max_vars);
  auto* l_cl = lg->add_subcommand("classify", "Syntactic classes of a sentence");
  l_cl->add_option("--sentence", sentence)->required();
  l_cl->add_option("--lang", lang)->check(CLI::IsMember({"vhf", "val"}));

  auto* pr = app.add_subcommand("preset", "Reproducible experiments with recorded digests");
  pr->require_subcommand(1);
  auto* p_list = pr->add_subcommand("list", "Available presets");
  auto* p_run = pr->add_subcommand("run", "Run a preset and compare digests");
  std::string preset_name;
  p_run->add_option("name", preset_name)->required();
  p_run->add_flag("--record", record, "Store the computed digests in the preset");
  for (auto* s : {p_list, p_run}) s->add_option("--dir", preset_dir, "Preset directory");

  try {
    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*f_cmd) {
      const Field k = load_field(field, 0);
      Json els = Json::array();
      for (const auto& s : elems) {
        const FieldElem a = parse_element(k, s);
        els.push_back({{"input", s}, {"value", a.to_string()},
                       {"valuation", a.is_zero() ? Json("inf") : Json(a.shift())}});
      }
      emit(c, {{"spec", to_json(k->spec())}, {"q", k->q().get_str()}, {"dim", k->dim()}, {"cap", k->cap()},
               {"tame", Int(k->e()) % k->p() != 0},
               {"elements", els}});
      return 0;
    }
    if (*hf) {
      const Field k = load_field(field, n);
      const Hyperfield h(k, n > 0 ? n : k->spec().n);
      if (*hf_class) {
        emit(c, to_json(h, h.class_of(parse_element(k, elem))));
      } else if (*hf_add) {
        const HfClass a = h.class_of(parse_element(k, a_elem)), b = h.class_of(parse_element(k, b_elem));
        const HfSumBall s = h.multiadd(a, b);
        Json j = to_json(h, s);
        const int cutoff = window >= 0 ? window : s.radius;
        Json mem = Json::array();
        for (const auto& m : h.sum_members(s, std::max(cutoff, s.radius), 4096)) mem.push_back(h.to_string(m));
        j["members_up_to_valuation"] = std::max(cutoff, s.radius);
        j["members"] = mem;
        emit(c, j);
      } else if (*hf_axioms) {
        AxiomBudget b;
        b.window = window;
        b.random_triples = random;
        b.seed = seed;
        const auto r1 = check_hyperfield_axioms(h, b);
        const auto r2 = check_valued_axioms(h, b);
        const bool ok = r1.all_pass() && r2.all_pass();
        emit(c, {{"hyperfield", axiom_json(r1)}, {"valued", axiom_json(r2)}, {"rho", r2.rho},
                 {"ball_type", r2.ball_type}, {"n", h.n()}, {"window", window >= 0 ? window : 2 * h.n() + 2},
                 {"all_pass", ok}});
        return ok ? 0 : 2;
      } else if (*hf_residue) {
        const Hyperfield h1(k, 1);
        Json t = Json::array();
        for (const auto& row : residue_iso_level1(h1))
          t.push_back({{"class", h1.to_string(row.cls)}, {"residue", k->residue_field().to_string(row.residue)}});
        emit(c, {{"q", k->q().get_str()}, {"table", t}, {"bijective", true}});
      } else if (*hf_units) {
        const auto u = unit_group_gens(h);
        Json gens = Json::array();
        for (const auto& gu : u.gens) gens.push_back(render_raw(*k, gu));
        emit(c, {{"order", u.size()}, {"generators", gens}, {"orders", u.orders}});
      }
      return 0;
    }
    if (*ex) {
      const Field k = load_field(field, 0);
      const FieldElem a = parse_element(k, elem);
      const DigitExpansion d = cohen ? cohen_expand(a, level) : digit_expand(a, level);
      Json digits = Json::array(), values = Json::array();
      for (const auto& x : d.digits) digits.push_back(k->residue_field().to_string(x));
      for (const auto& x : d.values) values.push_back(render_raw(*k, x));
      const Coeffs back = digit_assemble(*k, d);
      emit(c, {{"level", d.level}, {"radix", d.radix == DigitExpansion::Radix::Pi ? "pi" : "p"}, {"digits", digits},
               {"values", values}, {"assembled", render_raw(*k, back)},
               {"round_trip", back == a.reduce_mod(level + 1)}});
      return 0;
    }
    if (*g) {
      const int N = gN > 0 ? gN : level + 4;
      if (*g_expand) {
        const GaussElem a = parse_gauss(p, N, elem);
        const auto d = pbasis_expand_t(a, level);
        Json digits = Json::array();
        for (const auto& row : d.digits) {
          Json r = Json::array();
          for (const auto& x : row) r.push_back(to_string(x));
          digits.push_back(r);
        }
        emit(c, {{"p", p}, {"level", level}, {"element", a.to_string()}, {"digits", digits},
                 {"round_trip", congruent_mod(pbasis_assemble(d, N), a, level + 1)}});
      } else {
        std::vector<GaussElem> bs;
        Json in = Json::array();
        for (const auto& s : elems) {
          bs.push_back(parse_gauss(p, N, s));
          in.push_back(bs.back().to_string());
        }
        emit(c, {{"p", p}, {"elements", in}, {"p_independent", p_independent_set(bs)}});
      }
      return 0;
    }
    if (*bounds) {
      const Field k = load_field(field, 0);
      const auto r = n_threshold(k);
      const auto m = m_nu(k);
      Json segs = Json::array();
      for (const auto& s : m.segments) segs.push_back({{"slope", rational(s.slope)}, {"length", s.length}});
      emit(c, {{"p", r.p.get_str()}, {"e", r.e}, {"d_e", r.d_e}, {"M_p1", rational(r.M_p1)},
               {"M_int", rational(r.M_int)}, {"n_min_conservative", r.n_min_conservative},
               {"n_min_stated", r.n_min_stated}, {"tame", r.tame}, {"exceeds_strong_bound", r.exceeds_strong_bound},
               {"within_weak_bound", r.within_weak_bound},
               {"M_direct", r.M_direct ? rational(*r.M_direct) : Json(nullptr)}, {"newton_segments", segs}});
      return 0;
    }
    if (*hom) {
      HomBudget hb;
      if (window > 0) hb.window = window;
      if (*h_search) {
        auto A = std::make_shared<const Hyperfield>(load_field(src, n), n);
        auto B = std::make_shared<const Hyperfield>(load_field(dst, n), n);
        SearchOptions o;
        o.over_p = !no_over_p;
        o.candidate_cap = cap;
        o.threads = c.threads;
        o.budget = hb;
        const auto found = isos ? search_isos(A, B, o) : search_homs(A, B, o);
        Json list = Json::array();
        for (const auto& s : found) list.push_back(spec_json(s));
        emit(c, {{"count", found.size()}, {"isos_only", isos}, {"over_p", o.over_p}, {"homs", list}});
        return 0;
      }
      if (*h_check) {
        const auto r = check_hom(spec_from_json(load_json(spec)), hb);
        emit(c, hom_report_json(r));
        return r.all_pass() ? 0 : 2;
      }
      if (*h_kras) {
        const Field k = load_field(field, n);
        const Hyperfield h(k, n > 0 ? n : k->spec().n);
        emit(c, hom_report_json(check_krasner_quotient(h, hb)));
        return 0;
      }
      if (*h_lift) {
        HomSpec s;
        if (!spec.empty()) {
          s = spec_from_json(load_json(spec));
        } else if (identity) {
          require(!src.empty(), ErrorKind::InvalidInput, "--identity needs --src");
          const Field k = load_field(src, n);
          s = identity_hom(std::make_shared<const Hyperfield>(k, n > 0 ? n : k->spec().n));
        } else {
          require(!src.empty() && !dst.empty() && n > 0 && index >= 0, ErrorKind::InvalidInput,
                  "hom lift needs --spec, --src with --identity, or --src, --dst, --n and --index");
          auto A = std::make_shared<const Hyperfield>(load_field(src, n), n);
          auto B = std::make_shared<const Hyperfield>(load_field(dst, n), n);
          SearchOptions o;
          o.threads = c.threads;
          const auto found = search_isos(A, B, o);
          require(index < static_cast<int>(found.size()), ErrorKind::InvalidInput,
                  "only " + std::to_string(found.size()) + " isomorphisms found");
          s = found[index];
        }
        const auto& K = s.source->model();
        std::string m = mode;
        if (m == "auto") m = K.e() == 1 ? "unramified" : (Int(K.e()) % K.p() != 0 ? "tame" : "wild");
        EmbeddingSpec phi;
        if (m == "unramified") phi = lift_unramified(s, samples);
        else if (m == "tame") phi = lift_tame(s, samples);
        else phi = lift_wild(s, elem.empty() ? std::nullopt : std::optional<FieldElem>(parse_element(s.target->field(), elem)), samples);
        Json j = embedding_json(phi, m);
        j["hom"] = to_string(s);
        emit(c, j);
        return 0;
      }
    }
    if (*lg) {
      if (*l_tr) {
        const auto phi = parse_vhf(sentence);
        const std::string t = print(translate(phi, pe_p, pe_e, n), Language::Val);
        if (c.json) emit(c, {{"sentence", print(phi, Language::Vhf)}, {"translation", t}});
        else out << t << "\n";
        return 0;
      }
      if (*l_cl) {
        const auto phi = lang == "vhf" ? parse_vhf(sentence) : parse_val(sentence);
        const Language L = lang == "vhf" ? Language::Vhf : Language::Val;
        emit(c, {{"canonical", print(phi, L)}, {"positive", is_positive(phi)}, {"existential", is_existential(phi)},
                 {"quantifier_depth", quantifier_depth(phi)}, {"free_variables", free_variables(phi)}});
        return 0;
      }
      const Field k = load_field(field, n);
      const Hyperfield h(k, n > 0 ? n : k->spec().n);
      EvalOptions o;
      o.radius = radius;
      o.max_depth = max_depth;
      o.node_cap = node_cap;
      if (*l_ev) {
        const TriBool t = side == "vhf" ? eval_vhf(parse_vhf(sentence), h, o) : eval_val(parse_val(sentence), h, o);
        Json j = tri_json(t);
        j["side"] = side;
        emit(c, j);
        return 0;
      }
      if (*l_ag) {
        const auto rep = agreement_harness(generate_corpus(count, seed, max_vars), h, o);
        Json rows = Json::array();
        for (const auto& r : rep.rows)
          rows.push_back({{"sentence", r.sentence}, {"vhf", to_string(r.vhf)}, {"val", to_string(r.val)},
                          {"disagree", r.disagree}});
        emit(c, {{"sentences", rep.rows.size()}, {"definite", rep.definite}, {"disagreements", rep.disagreements},
                 {"non_existential", rep.non_existential}, {"rows", rows}});
        return rep.disagreements == 0 && rep.non_existential == 0 ? 0 : 2;
      }
    }
    if (*pr) {
      const std::string dir = preset_dir.empty() ? default_preset_dir() : preset_dir;
      if (*p_list) {
        std::vector<std::string> names;
        if (fs::is_directory(dir))
          for (const auto& e : fs::directory_iterator(dir))
            if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
        std::sort(names.begin(), names.end());
        Json list = Json::array();
        for (const auto& nm : names) {
          const Json pj = load_json((fs::path(dir) / (nm + ".json")).string());
          list.push_back({{"name", nm}, {"description", pj.value("description", "")}});
        }
        emit(c, {{"dir", dir}, {"presets", list}});
        return 0;
      }
      return run_preset(c, dir, preset_name, record);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_budget() ? 3 : 2;
  } catch (const Json::exception& e) {
    err << "error: InvalidInput: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace vhf::cli
