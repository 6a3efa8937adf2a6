#include "hsp/report.hpp"

namespace hsp {

namespace {

Json members_json(const Subgroup& s) {
  Json arr = Json::array();
  for (Element a : s.members()) arr.push_back(a);
  return arr;
}

Json optional_bound(const std::optional<double>& v) {
  return v ? Json(*v) : Json("vacuous");
}

}  // namespace

Json character_table_json(const CharacterTable& t) {
  Json classes = Json::array();
  for (std::size_t c = 0; c < t.num_classes(); ++c) {
    classes.push_back({{"rep", t.classes().representative(c)}, {"size", t.classes().classes[c].size()}});
  }
  Json irreps = Json::array();
  for (std::size_t rho = 0; rho < t.num_irreps(); ++rho) {
    Json values = Json::array();
    for (Complex z : t.row(rho)) values.push_back(Json::array({z.real(), z.imag()}));
    irreps.push_back({{"dim", t.dim(rho)}, {"values", std::move(values)}});
  }
  return {{"classes", std::move(classes)}, {"irreps", std::move(irreps)}};
}

Json distribution_json(const std::string& group_name, const HspInstance& inst, const IrrepDistribution& dist) {
  Json irreps = Json::array();
  for (std::size_t rho = 0; rho < dist.size(); ++rho) {
    irreps.push_back({{"dim", inst.table().dim(rho)}, {"prob", dist[rho]}});
  }
  return {{"group", group_name}, {"subgroup_members", members_json(inst.hidden())}, {"irreps", std::move(irreps)}};
}

Json estimate_json(const std::string& group_name, const HspInstance& inst, const SuccessEstimate& est) {
  return {
      {"group", group_name},
      {"H", members_json(inst.hidden())},
      {"n", est.n},
      {"trials", est.trials},
      {"seed", est.seed},
      {"successes", est.successes},
      {"rate", est.rate},
      {"wilson", Json::array({est.wilson.lo, est.wilson.hi})},
      {"theorem_bound", optional_bound(est.theorem_bound)},
      {"corollary_bound", optional_bound(est.corollary_bound)},
      {"omega", est.omega},
      {"strict_inclusion_histogram", est.strict_inclusion_histogram},
      {"core", members_json(inst.core())},
      {"core_violations", est.core_violations},
  };
}

Json martingale_json(const MartingaleReport& rep) {
  Json bins = Json::array();
  for (const auto& b : rep.bins) {
    bins.push_back({
        {"prefix", members_json(b.prefix)},
        {"observations", b.observations},
        {"mean", b.mean},
        {"exact", b.exact},
        {"sigma", b.sigma},
        {"checked", b.checked},
        {"pass", b.pass},
    });
  }
  return {
      {"n", rep.n},
      {"trials", rep.trials},
      {"seed", rep.seed},
      {"min_observations", rep.min_observations},
      {"bins", std::move(bins)},
      {"skipped_bins", rep.skipped_bins()},
      {"z_means", rep.z_means},
      {"zn_mean", rep.zn_mean},
      {"zn_sigma", rep.zn_sigma},
      {"zn_pass", rep.zn_pass},
      {"pass", rep.passed()},
  };
}

Json bound_report_json(const BoundReport& r) {
  Json j = {
      {"group_order", r.group_order},
      {"omega", r.omega},
      {"n", r.n},
      {"theorem_value", optional_bound(r.theorem_value)},
  };
  if (r.epsilon) {
    j["epsilon"] = *r.epsilon;
    j["corollary_value"] = optional_bound(r.corollary_value);
  }
  return j;
}

Json sieve_json(const SieveReport& r, bool include_violations) {
  Json j = {
      {"limit", r.limit},
      {"epsilon", r.epsilon},
      {"satisfied", r.satisfied},
      {"counted", r.counted},
      {"excluded_small", r.excluded_small},
      {"fraction", r.fraction},
  };
  if (include_violations) {
    Json v = Json::array();
    for (const auto& [n, omega] : r.violations) v.push_back(Json::array({n, omega}));
    j["violations"] = std::move(v);
    j["violations_truncated"] = r.violations_truncated;
  }
  return j;
}

}  // namespace hsp
