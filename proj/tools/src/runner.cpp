#include "loomalg/dsl/runner.hpp"

#include <algorithm>
#include <map>

#include "loomalg/catalog.hpp"
#include "loomalg/centroid_loop.hpp"
#include "loomalg/dsl/printer.hpp"
#include "loomalg/error.hpp"
#include "loomalg/findim.hpp"
#include "loomalg/grading.hpp"
#include "loomalg/typing.hpp"

namespace loomalg::dsl {

namespace {

struct Object {
  StmtKind kind;
  std::string algebra;  // owning algebra for automorphisms and gradings
  std::optional<StructureAlgebra> a;
  std::optional<FiniteOrderAuto> sigma;
  std::optional<ModGrading> grading;
  std::optional<LoopTower> tower;
  std::optional<Error> failure;
};

std::string degree_key(const Degree& j) { return monomial_name(j); }

Json box_json(const DegreeBox& b) {
  Json r = Json::array();
  for (long x : b.radius) r.push_back(x);
  return r;
}


class Runner {
 public:
  Runner(const Document& doc, const RunOptions& opt) : doc_(doc), opt_(opt), order_(doc.root_order) {}

  Json run() {
    Json report;
    report["schema_version"] = kSchemaVersion;
    report["tool"] = "loomalg";
    report["source"] = opt_.source_name;
    for (const auto& s : doc_.statements)
      if (s.kind == StmtKind::Report) report["title"] = s.title;
    report["field"] = {{"root_order", order_}, {"name", "Q(zeta_" + std::to_string(order_) + ")"}};
    report["seed"] = opt_.seed;
    report["box_override"] = opt_.box.empty() ? Json(nullptr) : Json(opt_.box);
    Json decls = Json::array(), cmds = Json::array();
    size_t passed = 0, failed = 0, skipped = 0, index = 0;
    bool stop = false;
    bool decl_failed = false;
    for (const auto& s : doc_.statements) {
      if (s.is_declaration()) {
        Json d = declare(s);
        decl_failed = decl_failed || !d["ok"].get<bool>();
        decls.push_back(std::move(d));
        continue;
      }
      if (s.kind != StmtKind::Command) continue;
      Json c;
      c["index"] = ++index;
      c["command"] = s.verb;
      c["target"] = s.name;
      if (stop) {
        c["status"] = "skipped";
        ++skipped;
        cmds.push_back(std::move(c));
        continue;
      }
      try {
        Json result;
        const bool ok = execute(s, result);
        c["status"] = ok ? "ok" : "failed";
        c["result"] = std::move(result);
        ok ? ++passed : ++failed;
      } catch (const Error& e) {
        c["status"] = "error";
        c["error"] = {{"code", e.code()}, {"message", e.what()}};
        ++failed;
      } catch (const std::exception& e) {
        c["status"] = "error";
        c["error"] = {{"code", "internal"}, {"message", e.what()}};
        ++failed;
      }
      if (opt_.fail_fast && c["status"] != "ok") stop = true;
      cmds.push_back(std::move(c));
    }
    report["declarations"] = std::move(decls);
    report["commands"] = std::move(cmds);
    report["summary"] = {{"commands", index}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}};
    report["ok"] = failed == 0 && !decl_failed;
    return report;
  }

 private:
  // ---- values

  CycloNumber scalar(const Value& v) const { return v.scalar; }
  long integer(const Value& v) const { return v.scalar.to_rational().get_num().get_si(); }

  const Object& object(const std::string& name) const {
    const Object& o = env_.at(name);
    if (o.failure) throw Error("dependency", "'" + name + "' failed: " + o.failure->what());
    return o;
  }
  const StructureAlgebra& algebra(const std::string& name) const { return *object(name).a; }

  Matrix matrix(const Value& v) const {
    if (v.kind == Value::Kind::Call) {
      const unsigned n = static_cast<unsigned>(integer(v.items[0]));
      if (v.name == "clock") return catalog::clock_matrix(n, order_);
      if (v.name == "shift") return catalog::shift_matrix(n, order_);
      return catalog::antidiagonal(n, order_);
    }
    const size_t n = v.items.size();
    Matrix m(n, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) m(r, c) = scalar(v.items[r].items[c]);
    return m;
  }

  std::pair<std::string, FiniteOrderAuto> automorphism(const Value& v) const {
    if (v.kind == Value::Kind::Name) {
      const Object& o = object(v.name);
      return {o.algebra, *o.sigma};
    }
    const std::string an = v.items[0].name;
    const auto& a = algebra(an);
    Matrix m;
    if (v.name == "conj") {
      m = conjugation_map(a, matrix(v.items[1]));
    } else if (v.name == "outer") {
      m = outer_map(a, matrix(v.items[1]));
    } else if (v.name == "linear") {
      m = matrix(v.items[1]);
      if (m.rows() != a.dim()) throw Error("dimension", "linear map size does not match the algebra");
    } else if (v.name == "swap") {
      m = swap_map(a.dim());
    } else {
      m = Matrix::identity(a.dim());
    }
    return {an, FiniteOrderAuto::make(a, m)};
  }

  // ---- declarations

  Json declare(const Stmt& s) {
    Object o;
    o.kind = s.kind;
    Json d;
    d["name"] = s.name;
    d["kind"] = kind_keyword(s.kind);
    try {
      Json summary;
      if (s.kind == StmtKind::Algebra) {
        o.a = build_algebra(*s.init);
        o.a->set_name(s.name);
        summary = {{"dim", o.a->dim()}, {"labels", o.a->labels()}};
      } else if (s.kind == StmtKind::Auto) {
        auto [an, sigma] = automorphism(*s.init);
        o.algebra = an;
        o.sigma = sigma;
        summary = {{"algebra", an}, {"period", sigma.period()}};
      } else if (s.kind == StmtKind::Grading) {
        const auto& c = *s.init;
        o.algebra = c.items[0].name;
        const auto& a = algebra(o.algebra);
        if (c.name == "trivial") {
          o.grading = trivial_grading(a.dim(), static_cast<unsigned>(integer(c.items[1])));
        } else {
          const unsigned m = static_cast<unsigned>(integer(c.items[2]));
          auto [an, sigma] = automorphism(c.items[1]);
          if (an != o.algebra) throw Error("mismatch", "automorphism is not on '" + o.algebra + "'");
          o.grading = grading_from_auto(a, sigma, primitive_root(m, order_));
        }
        Json dims = Json::array();
        for (const auto& comp : o.grading->components) dims.push_back(comp.dim());
        summary = {{"algebra", o.algebra}, {"modulus", o.grading->modulus}, {"component_dims", dims}};
      } else {
        o.tower = build_tower(s);
        o.tower->set_name(s.name);
        Json moduli = Json::array();
        for (unsigned m : o.tower->moduli()) moduli.push_back(m);
        summary = {{"base", o.tower->base().name()}, {"steps", o.tower->steps()}, {"moduli", moduli}};
      }
      d["ok"] = true;
      d["summary"] = std::move(summary);
    } catch (const Error& e) {
      o.failure = e;
      d["ok"] = false;
      d["error"] = {{"code", e.code()}, {"message", e.what()}};
    }
    env_.insert_or_assign(s.name, std::move(o));
    return d;
  }

  StructureAlgebra build_algebra(const Value& c) const {
    auto n = [&] { return static_cast<size_t>(integer(c.items[0])); };
    if (c.name == "mat") return algebras::mat(n(), order_);
    if (c.name == "gl") return algebras::gl(n(), order_);
    if (c.name == "sl") return algebras::sl(n(), order_);
    if (c.name == "zero") return algebras::zero(n(), order_);
    if (c.name == "quaternion") return algebras::quaternion(scalar(c.items[0]), scalar(c.items[1]), order_);
    if (c.name == "sum") return algebras::direct_sum(algebra(c.items[0].name), algebra(c.items[1].name));
    // structure(n, [[i, j, [coords]], ...])
    const size_t d = n();
    StructureAlgebra a(d, order_);
    for (const auto& e : c.items[1].items) {
      const auto i = static_cast<size_t>(integer(e.items[0])), j = static_cast<size_t>(integer(e.items[1]));
      if (i >= d || j >= d) throw Error("dimension", "product table index out of range");
      if (e.items[2].items.size() != d) throw Error("dimension", "product table entry has the wrong length");
      Vector v;
      for (const auto& x : e.items[2].items) v.push_back(scalar(x));
      a.set_product(i, j, v);
    }
    return a;
  }

  LoopTower build_tower(const Stmt& s) const {
    if (!s.over.empty()) {
      const auto& a = algebra(s.over);
      std::vector<TowerStage> stages;
      for (size_t p = 0; p < s.stages.size(); ++p) {
        const Stage& st = s.stages[p];
        const unsigned m = static_cast<unsigned>(st.modulus);
        const CycloNumber zeta = primitive_root(m, order_);
        if (st.twist.kind == Value::Kind::Call && st.twist.name == "twist") {
          auto [an, theta] = automorphism(st.twist.items[0]);
          if (an != s.over) throw Error("mismatch", "stage automorphism is not on '" + s.over + "'");
          IntMatrix mm;
          for (const auto& row : st.twist.items[1].items) {
            mm.emplace_back();
            for (const auto& x : row.items) mm.back().push_back(integer_signed(x));
          }
          std::vector<CycloNumber> lambda;
          for (const auto& x : st.twist.items[2].items) lambda.push_back(scalar(x));
          stages.push_back({ToralMonomialAuto(theta.matrix(), mm, lambda), m, zeta});
        } else {
          auto [an, theta] = automorphism(st.twist);
          if (an != s.over) throw Error("mismatch", "stage automorphism is not on '" + s.over + "'");
          stages.push_back({ToralMonomialAuto::base_only(theta.matrix(), p), m, zeta});
        }
      }
      return LoopTower::make(a, std::move(stages));
    }
    const auto& c = *s.init;
    if (c.name == "synthetic") return catalog::synthetic_tower(catalog::synthetic_specs().at(integer(c.items[0])));
    const auto& a = algebra(c.items[0].name);
    if (c.name == "untwisted") return catalog::untwisted(a, static_cast<size_t>(integer(c.items[1])));
    if (c.name == "loop") {
      const Object& g = object(c.items[1].name);
      if (g.algebra != c.items[0].name) throw Error("mismatch", "grading is not on '" + c.items[0].name + "'");
      const CycloNumber zeta = primitive_root(g.grading->modulus, order_);
      return multiloop(a, {auto_from_grading(a, *g.grading, zeta)}, {zeta});
    }
    std::vector<FiniteOrderAuto> autos;
    std::vector<CycloNumber> zetas;
    for (size_t i = 0; i < c.items[1].items.size(); ++i) {
      auto [an, sigma] = automorphism(c.items[1].items[i]);
      if (an != c.items[0].name) throw Error("mismatch", "automorphism is not on '" + c.items[0].name + "'");
      const unsigned m = c.items.size() == 3 ? static_cast<unsigned>(integer(c.items[2].items[i])) : sigma.period();
      autos.push_back(sigma);
      zetas.push_back(primitive_root(m, order_));
    }
    return multiloop(a, autos, zetas);
  }

  static long integer_signed(const Value& v) { return v.scalar.to_rational().get_num().get_si(); }

  // ---- commands

  DegreeBox box_for(const Stmt& s, const LoopTower& t) const {
    const std::vector<long>& r = !s.box.empty() ? s.box : opt_.box;
    if (r.empty()) return t.default_box();
    DegreeBox b;
    if (r.size() == 1)
      b.radius.assign(t.steps(), r[0]);
    else
      b.radius = r;
    if (b.arity() != t.steps())
      throw Error("box", "box has " + std::to_string(b.arity()) + " radii but the tower has " +
                             std::to_string(t.steps()) + " step(s)");
    return b;
  }

  std::string render_element(const LaurentElement& x, const std::vector<std::string>& labels) const {
    if (x.is_zero()) return "0";
    std::vector<ElementTerm> terms;
    for (const auto& [j, v] : x.support())
      for (size_t r = 0; r < v.size(); ++r)
        if (!v[r].is_zero()) terms.push_back({v[r], labels[r], j, {}});
    return format_element(terms);
  }

  // Scalar Laurent polynomials over a one-dimensional centroid read better
  // without the basis label: "1 + 2*z1^2".
  std::string render_centroid(const LaurentElement& u, const findim::CentroidAlgebra& c) const {
    if (c.basis.size() != 1) return render_element(u, c.algebra.labels());
    if (u.is_zero()) return "0";
    const CycloNumber unit = c.coordinates(Matrix::identity(c.basis[0].rows()))[0];
    std::string out;
    for (const auto& [j, v] : u.support()) {
      CycloNumber k = v[0] / unit;
      bool negative = k.is_rational() && k.to_rational() < 0;
      if (negative) k = -k;
      out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
      const bool constant = std::all_of(j.begin(), j.end(), [](long x) { return x == 0; });
      if (constant) {
        out += format_scalar(k);
      } else {
        if (!k.is_one()) {
          std::string f = format_scalar(k);
          if (f.find('/') != std::string::npos && f[0] != '(') f = "(" + f + ")";
          out += f + "*";
        }
        out += monomial_name(j);
      }
    }
    return out;
  }

  static Json degree_dims(const StabilizerBasis& s, const DegreeBox& box, size_t dc) {
    Json out = Json::object();
    for (const auto& [j, n] : pivot_degrees(window_echelon(s.elements, box, dc), box, dc)) out[degree_key(j)] = n;
    return out;
  }

  bool execute(const Stmt& s, Json& r) {
    const std::string& v = s.verb;
    const Object& o = object(s.name);
    if (v == "check grading") {
      const auto& a = algebra(o.algebra);
      const auto rep = validate_grading(a, *o.grading);
      Json violations = Json::array();
      for (const auto& x : rep.violations) violations.push_back(x.message);
      Json dims = Json::array();
      for (const auto& c : o.grading->components) dims.push_back(c.dim());
      r = {{"grading_valid", rep.valid()}, {"modulus", o.grading->modulus}, {"component_dims", dims},
           {"violations", violations}};
      return rep.valid();
    }
    if (v == "check algebra") {
      const auto& a = *o.a;
      const bool simple = findim::is_simple(a);
      r = {{"dim", a.dim()},
           {"lie", a.is_lie()},
           {"associative", a.is_associative()},
           {"commutative", a.is_commutative()},
           {"perfect", findim::is_perfect(a)},
           {"simple", simple},
           {"central", findim::is_central(a)},
           {"unital", findim::find_unit(a).has_value()},
           {"pfgc", findim::is_pfgc_findim(a)},
           {"centroid_dim", findim::centroid(a).size()}};
      return true;
    }
    if (v == "centroid" && o.kind == StmtKind::Algebra) {
      const auto c = findim::centroid_algebra(*o.a);
      r = {{"dim", c.basis.size()},
           {"commutative", c.algebra.is_commutative()},
           {"central", c.basis.size() == 1}};
      return true;
    }
    if (v == "type") {
      typing::Archetype at;
      Json extra;
      if (o.kind == StmtKind::Tower) {
        auto tt = typing::tower_type(*o.tower, opt_.seed);
        at = tt.archetype;
        extra = tt.steps;
      } else if (o.a->is_lie()) {
        at = typing::lie_split_type(*o.a, std::nullopt, opt_.seed);
      } else if (o.a->is_associative()) {
        at = typing::associative_type(*o.a, opt_.seed);
      } else {
        throw Error("unsupported-variety", "type detection covers Lie and associative algebras only");
      }
      r = {{"variety", typing::variety_name(at.variety)}, {"label", at.label}, {"provenance", at.provenance}};
      if (!extra.is_null()) r["steps"] = extra;
      return true;
    }
    const LoopTower& t = *o.tower;
    if (v == "build tower") {
      Json checks = Json::array();
      bool ok = true;
      for (const auto& c : t.stage_checks()) {
        checks.push_back({{"stage", c.stage},
                          {"box", box_json(c.box)},
                          {"window_dim", c.window_dim},
                          {"stabilizes", c.stabilizes},
                          {"period_on_window", c.period_on_window}});
        ok = ok && c.stabilizes;
      }
      Json moduli = Json::array();
      for (unsigned m : t.moduli()) moduli.push_back(m);
      r = {{"base", t.base().name()},
           {"base_dim", t.base().dim()},
           {"steps", t.steps()},
           {"moduli", moduli},
           {"default_box", box_json(t.default_box())},
           {"window_dim", t.basis_in_box(t.default_box()).size()},
           {"stage_checks", checks},
           // A finite-dimensional base has dimension 0, so the tower's is n.
           {"dimension", {{"value", t.steps()}, {"provenance", "derived-by-theorem"}}}};
      return ok;
    }
    if (v == "check flags") {
      const auto f = inherited_flags(t);
      Json flags = Json::array();
      bool ok = true;
      for (const auto& x : f.flags) {
        Json j = {{"name", x.name},
                  {"base", x.base_status},
                  {"base_provenance", x.base_provenance},
                  {"tower", x.tower_status},
                  {"tower_provenance", x.tower_provenance}};
        if (x.box_checked) j["box_passed"] = x.box_passed;
        ok = ok && (!x.box_checked || x.box_passed);
        flags.push_back(std::move(j));
      }
      r = {{"factor_box", box_json(f.factor_box)}, {"target_box", box_json(f.target_box)}, {"flags", flags}};
      return ok;
    }
    if (v == "check free-basis") {
      const auto rep = free_basis_check(t, box_for(s, t));
      r = {{"rank", rep.rank},
           {"basis", rep.basis},
           {"box", box_json(rep.box)},
           {"elements_checked", rep.elements_checked},
           {"failures", rep.failures}};
      return rep.ok;
    }
    if (v == "check psi") {
      const auto rep = psi_check(t, box_for(s, t));
      Json dims = Json::object();
      for (const auto& [j, n] : rep.stabilizer_dims) dims[degree_key(j)]["stabilizer"] = n;
      for (const auto& [j, n] : rep.loop_of_centroid_dims) dims[degree_key(j)]["loop_of_centroid"] = n;
      r = {{"same_window", rep.same_window}, {"product_rule", rep.product_rule}, {"stabilizer_dim_by_degree", dims}};
      return rep.ok;
    }
    if (v == "check multiloop") {
      const auto rep = multiloop_centroid_check(t, box_for(s, t));
      r = {{"generators", rep.generators},
           {"window_dim", rep.window_dim},
           {"expected_dim", rep.expected_dim},
           {"discrepancies", rep.discrepancies}};
      return rep.ok;
    }
    if (v == "centroid") {
      const DegreeBox box = box_for(s, t);
      const auto stab = stabilizer_in_box(t, box);
      Json elements = Json::array();
      const size_t dc = stab.centroid.basis.size();
      WindowIndex w(box, dc);
      for (const auto& row : window_echelon(stab.elements, box, dc))
        elements.push_back(render_centroid(w.unflatten(row), stab.centroid));
      r = {{"box", box_json(box)},
           {"verified_box", box_json(stab.verified_radius)},
           {"centroid_dim", dc},
           {"window_dim", elements.size()},
           {"stabilizer_dim_by_degree", degree_dims(stab, box, dc)},
           {"elements", elements}};
      return true;
    }
    if (v == "kind") {
      const auto verdict = kind_classify(t);
      const auto cs = identify_centroid(t, verdict, t.default_box());
      r["kind"] = kind_name(verdict.kind);
      bool ok = cs.certified;
      if (verdict.kind == Kind::Second) {
        r["strange_rho"] = format_scalar(verdict.rho);
        const auto audit = strange_ring_audit(*verdict.strange, 2, opt_.seed);
        r["strange_audit"] = {{"relation", audit.relation},
                              {"independent", audit.independent},
                              {"expected", audit.expected},
                              {"norm_multiplicative", audit.norm_multiplicative}};
        const auto c = findim::centroid_algebra(t.base());
        r["witness_generators"] = {{"u1", render_centroid(verdict.strange->u1, c)},
                           {"u2", render_centroid(verdict.strange->u2, c)},
                           {"w", render_centroid(verdict.strange->w, c)}};
        r["isomorphism_advisory"] =
            strange_isomorphism_advisory(CycloNumber(1), verdict.rho, t.base().order()).label + " (compared with rho = 1)";
        ok = ok && audit.ok();
      } else {
        r["rho"] = format_scalar(verdict.rho);
        r["monomial_j"] = *verdict.monomial_j;
        r["witness_generators"] = verdict.generator_names;
      }
      r["centroid"] = {{"certified", cs.certified},
                       {"description", cs.description},
                       {"krull_dimension", cs.krull_dimension},
                       {"verified_box", box_json(t.default_box())},
                       {"window_dim", cs.window_dim},
                       {"model_dim", cs.model_dim}};
      return ok;
    }
    if (v == "untwist") {
      const auto rep = untwist_check(t, box_for(s, t));
      r = {{"untwist_rank", rep.rank},
           {"basis", rep.basis},
           {"verified_box", box_json(rep.box)},
           {"free_over_stabilizer", rep.free_over_stabilizer},
           {"omega_surjective", rep.omega_surjective},
           {"omega_injective", rep.omega_injective},
           {"notes", rep.notes}};
      return rep.ok;
    }
    if (v == "canonical-form") {
      const auto& a = t.base();
      LaurentElement y(t.steps(), a.dim());
      for (const auto& term : *s.element) {
        const auto idx = a.label_index(term.label);
        if (!idx) throw Error("label", "'" + term.label + "' is not a basis label of '" + a.name() + "'");
        if (term.degree.size() > t.steps())
          throw Error("arity", "monomial uses more variables than the tower has steps");
        Degree j = term.degree;
        j.resize(t.steps(), 0);
        CycloNumber c = term.coeff;
        if (!c.is_rational() && c.order() != a.order()) {
          if (a.order() % c.order() != 0) throw Error("root-order", "coefficient lies outside the tower's field");
          c = c.lift(a.order());
        }
        Vector e = zero_vector(a.dim());
        e[*idx] = c;
        y.add_term(j, e);
      }
      const auto f = canonical_form(t, y);
      Json comps = Json::array();
      for (const auto& i : residue_indices(t.moduli())) {
        const auto it = f.find(i);
        comps.push_back({{"index", monomial_name(i)},
                         {"coefficient", it == f.end() ? "0" : render_element(it->second, a.labels())}});
      }
      const bool rec = reconstruct(t, f) == y;
      const bool unique = canonical_form(t, reconstruct(t, f)) == f;
      r = {{"input", render_element(y, a.labels())},
           {"components", comps},
           {"reconstructs", rec},
           {"unique", unique}};
      return rec && unique;
    }
    throw Error("internal", "unhandled command '" + v + "'");
  }

  const Document& doc_;
  const RunOptions& opt_;
  unsigned order_;
  std::map<std::string, Object> env_;
};

}  // namespace

Json run(const Document& doc, const RunOptions& options) { return Runner(doc, options).run(); }

}  // namespace loomalg::dsl
