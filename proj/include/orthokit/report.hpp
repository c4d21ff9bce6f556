#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "orthokit/adjoint.hpp"
#include "orthokit/ortholattice.hpp"
#include "orthokit/orthoset.hpp"

namespace orthokit {

using Json = nlohmann::json;

/// Member labels of a subset, in index order.
inline Json labels_json(const Orthoset& x, const Bits& b) {
  Json out = Json::array();
  b.for_each([&](Index i) { out.push_back(x.label(i)); });
  return out;
}

inline Json lattice_element_json(const Ortholattice& l, Index a) {
  if (l.set_based()) return labels_json(l.carrier(), l.set(a));
  return l.label(a);
}

/// Lattice properties with witnesses; keys sorted.
inline Json lattice_report_json(const Ortholattice& l, const LatticeReport& r) {
  Json j;
  Json atoms = Json::array();
  for (Index a : r.atoms) atoms.push_back(lattice_element_json(l, a));
  j["atoms"] = atoms;
  j["atomistic"] = r.atomistic;
  j["atomistic_witness"] = r.atomistic_witness ? lattice_element_json(l, *r.atomistic_witness) : Json();
  j["covering"] = r.covering;
  j["covering_witness"] = r.covering_witness
                              ? Json::array({lattice_element_json(l, r.covering_witness->a),
                                             lattice_element_json(l, r.covering_witness->p),
                                             lattice_element_json(l, r.covering_witness->c)})
                              : Json();
  j["irreducible"] = r.irreducible;
  j["irreducible_witness"] = r.central_witness ? lattice_element_json(l, *r.central_witness) : Json();
  j["orthomodular"] = r.orthomodular;
  j["orthomodular_witness"] =
      r.orthomodular_witness ? Json::array({lattice_element_json(l, r.orthomodular_witness->first),
                                            lattice_element_json(l, r.orthomodular_witness->second)})
                             : Json();
  j["size"] = r.size;
  return j;
}

/// Aggregate orthoset report used by `check` and the gallery.
inline Json check_report(const Orthoset& x, std::size_t limit = kDefaultLatticeLimit, unsigned threads = 1) {
  Json j;
  const auto sep = separation_report(x);
  j["size"] = x.size();
  j["irredundant"] = sep.irredundant;
  j["atomistic"] = sep.atomistic;
  j["frechet"] = sep.frechet;
  j["classes"] = sep.classes.size();
  if (x.proper_count() <= 64) {
    const auto rk = rank_and_perp_sets(x);
    j["rank"] = rk.rank;
    j["rank_witness"] = labels_json(x, rk.witness.bits());
  } else {
    j["rank"] = Json();
    j["rank_witness"] = Json();
  }
  const auto cx = build_CX(x, limit, threads);
  const auto lr = lattice_report(cx);
  const auto dr = dacey_report(x, cx);
  j["lattice_size"] = cx.size();
  j["dacey"] = dr.dacey;
  j["dacey_witness"] = lr.orthomodular_witness
                           ? Json::array({lattice_element_json(cx, lr.orthomodular_witness->first),
                                          lattice_element_json(cx, lr.orthomodular_witness->second)})
                           : Json();
  j["lattice_atomistic"] = lr.atomistic;
  j["covering"] = lr.covering;
  j["covering_witness"] = lr.covering_witness ? Json::array({lattice_element_json(cx, lr.covering_witness->a),
                                                             lattice_element_json(cx, lr.covering_witness->p),
                                                             lattice_element_json(cx, lr.covering_witness->c)})
                                              : Json();
  j["irreducible"] = lr.irreducible;
  j["irreducible_witness"] = lr.central_witness ? lattice_element_json(cx, *lr.central_witness) : Json();
  const auto survey = inclusion_survey(x, cx);
  j["inclusion_adjointable"] = survey.all_adjointable;
  Json failing = Json::array();
  for (const auto& s : survey.failing) failing.push_back(labels_json(x, s.bits()));
  j["inclusion_failing"] = failing;
  return j;
}

}  // namespace orthokit
