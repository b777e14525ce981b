#include "multicat/json_io.hpp"

#include <cmath>
#include <limits>

namespace multicat {

Json display_ln(double ln) {
  if (std::isinf(ln)) return "infinity";
  return std::round(ln * 1e6) / 1e6;
}

Json to_json(const MultValue& v) {
  if (v.is_infinite()) return "infinity";
  Json out;
  if (v.is_count()) {
    out["count"] = v.count_value();
  } else {
    out["exp"] = v.exponent();
  }
  return out;
}

Json to_json(Certificate c) { return to_string(c); }

Json to_json(const DistValue& d) {
  Json out;
  out["product"] = to_json(d.product);
  out["ln"] = display_ln(d.display_ln);
  out["certificate"] = to_json(d.certificate);
  return out;
}

Json to_json(const BigInt& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

Json to_json(const FinMap& f) {
  Json out;
  out["domain"] = f.domain;
  out["codomain"] = f.codomain;
  out["images"] = f.images;
  return out;
}

Json to_json(const GroupHom& f) {
  Json out;
  out["source"] = f.source()->name();
  out["target"] = f.target()->name();
  out["images"] = f.image();
  out["kernel_order"] = f.kernel().order();
  out["image_order"] = f.image_subgroup().order();
  return out;
}

Json to_json(const FgZModule& m) {
  Json out;
  out["module"] = m.to_string();
  out["free_rank"] = m.free_rank();
  Json factors = Json::array();
  for (const BigInt& d : m.invariant_factors()) factors.push_back(to_json(d));
  out["invariant_factors"] = std::move(factors);
  return out;
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ZModuleHom& f) {
  Json out;
  out["source"] = f.source().to_string();
  out["target"] = f.target().to_string();
  out["A"] = to_json(f.free_block());
  out["C"] = to_json(f.free_to_torsion_block());
  out["D"] = to_json(f.torsion_block());
  out["kernel"] = hom_kernel(f).to_string();
  out["cokernel"] = hom_cokernel(f).to_string();
  return out;
}

Json to_json(const CircleWitness& w) {
  Json out;
  out["layout"] = w.layout.order;
  Json arcs = Json::array();
  for (ArcDirection d : w.arcs) arcs.push_back(to_string(d));
  out["arcs"] = std::move(arcs);
  return out;
}

Json to_json(const BoundsResult& b) {
  Json out;
  out["lower"] = b.lower;
  out["upper"] = b.upper ? Json(*b.upper) : Json("infinity");
  out["exact"] = b.exact() ? Json(*b.exact()) : Json(nullptr);
  Json rules = Json::array();
  for (const RuleFiring& f : b.rules_applied) {
    Json r;
    r["rule"] = rule_id(f.rule);
    r["statement"] = rule_statement(f.rule);
    r["effect"] = f.effect;
    rules.push_back(std::move(r));
  }
  out["rules_applied"] = std::move(rules);
  return out;
}

Json to_json(const KnotRecord& rec) {
  Json out;
  out["name"] = rec.name;
  auto put = [&](const char* key, const auto& field) {
    if (field) out[key] = *field;
  };
  put("is_trivial", rec.is_trivial);
  if (rec.torus_p) {
    out["torus_2p"] = *rec.torus_p;
  } else if (rec.is_torus_2p) {
    out["torus_2p"] = *rec.is_torus_2p;
  }
  put("braid_index", rec.braid_index);
  put("bridge_index", rec.bridge_index);
  put("trunk", rec.trunk);
  put("is_montesinos", rec.is_montesinos);
  put("is_connected_sum_of_2bridge", rec.is_connected_sum_of_2bridge);
  return out;
}

Json to_json(const Report& r) {
  Json out;
  out["checks"] = r.checks;
  out["ok"] = r.ok();
  Json violations = Json::array();
  for (const Violation& v : r.violations) {
    Json item;
    item["kind"] = v.kind;
    item["detail"] = v.detail;
    violations.push_back(std::move(item));
  }
  out["violations"] = std::move(violations);
  return out;
}

namespace {

[[noreturn]] void bad_field(const std::string& key, const std::string& what) {
  throw DomainError("field '" + key + "': " + what);
}

std::optional<bool> get_bool(const Json& j, const std::string& key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_boolean()) bad_field(key, "expected true or false");
  return j[key].get<bool>();
}

std::optional<std::uint64_t> get_positive(const Json& j, const std::string& key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  const Json& v = j[key];
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 1))
    bad_field(key, "expected a positive integer");
  return v.get<std::uint64_t>();
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) bad_field(key, "unknown field");
  }
}

}  // namespace

KnotRecord knot_record_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("knot record must be a JSON object");
  reject_unknown(j, {"name", "is_trivial", "torus_2p", "braid_index", "bridge_index", "trunk",
                     "is_montesinos", "is_connected_sum_of_2bridge"});
  KnotRecord rec;
  if (j.contains("name")) {
    if (!j["name"].is_string()) bad_field("name", "expected a string");
    rec.name = j["name"].get<std::string>();
  }
  rec.is_trivial = get_bool(j, "is_trivial");
  if (j.contains("torus_2p") && !j["torus_2p"].is_null()) {
    const Json& t = j["torus_2p"];
    if (t.is_boolean()) {
      if (t.get<bool>()) bad_field("torus_2p", "give the odd integer p instead of true");
      rec.is_torus_2p = false;
    } else if (t.is_number_integer()) {
      rec.torus_p = t.get<std::int64_t>();
    } else {
      bad_field("torus_2p", "expected an odd integer or false");
    }
  }
  rec.braid_index = get_positive(j, "braid_index");
  rec.bridge_index = get_positive(j, "bridge_index");
  rec.trunk = get_positive(j, "trunk");
  rec.is_montesinos = get_bool(j, "is_montesinos");
  rec.is_connected_sum_of_2bridge = get_bool(j, "is_connected_sum_of_2bridge");
  validate_record(rec);
  return rec;
}

PairRelation pair_relation_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("pair relation must be a JSON object");
  reject_unknown(j, {"equal_up_to_reversal", "k2_nontrivial", "k2_is_companion_of_k1",
                     "k1_is_2cable_of_k2"});
  PairRelation rel;
  rel.equal_up_to_reversal = get_bool(j, "equal_up_to_reversal");
  rel.k2_nontrivial = get_bool(j, "k2_nontrivial");
  rel.k2_is_companion_of_k1 = get_bool(j, "k2_is_companion_of_k1");
  rel.k1_is_2cable_of_k2 = get_bool(j, "k1_is_2cable_of_k2");
  return rel;
}

}  // namespace multicat
