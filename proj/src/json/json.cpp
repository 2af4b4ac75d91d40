#include <cmath>

#include "qwalk/error.hpp"
#include "qwalk/json.hpp"

namespace qwalk::json {

namespace {

Json pair_json(const IndexPair& p) { return Json::array({p.first, p.second}); }

std::string_view status_name(RatioStatus s) {
  switch (s) {
    case RatioStatus::certified:
      return "certified";
    case RatioStatus::failed:
      return "failed";
    case RatioStatus::stationary:
      return "stationary";
    case RatioStatus::inconclusive:
      break;
  }
  return "inconclusive";
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re_row.push_back(m(i, k).real());
      im_row.push_back(m(i, k).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("re") || !j["re"].is_array())
    throw InvalidArgument("density JSON needs an object with a \"re\" array");
  const Json& re = j["re"];
  const auto n = static_cast<Eigen::Index>(re.size());
  const bool has_im = j.contains("im");
  if (has_im && (!j["im"].is_array() || static_cast<Eigen::Index>(j["im"].size()) != n))
    throw InvalidArgument("density JSON: \"im\" must match the shape of \"re\"");
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = re[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw InvalidArgument("density JSON: matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      if (!row[k].is_number()) throw InvalidArgument("density JSON: entries must be numbers");
      double imag = 0.0;
      if (has_im) {
        const Json& irow = j["im"][i];
        if (!irow.is_array() || static_cast<Eigen::Index>(irow.size()) != n || !irow[k].is_number())
          throw InvalidArgument("density JSON: \"im\" must match the shape of \"re\"");
        imag = irow[k].get<double>();
      }
      m(i, k) = cplx(row[k].get<double>(), imag);
    }
  }
  return m;
}

Json to_json(const RatioCertificate& cert) {
  Json multipliers = Json::array();
  for (const auto& [pair, m] : cert.multipliers)
    if (pair.first < pair.second) multipliers.push_back({pair.first, pair.second, m});
  return {{"delta", cert.delta}, {"g", cert.g}, {"multipliers", multipliers}, {"residual", cert.residual}};
}

Json to_json(const RatioWitness& w) {
  return {{"first", pair_json(w.first)}, {"second", pair_json(w.second)}, {"ratio", w.ratio}, {"reason", w.reason}};
}

Json to_json(const DetectionReport& r) {
  Json j = {{"verdict", verdict_name(r.verdict)},
            {"witness_time", nullptr},
            {"residual", r.residual},
            {"certificate", nullptr},
            {"reason", r.reason},
            {"warnings", r.warnings}};
  if (r.witness_time) j["witness_time"] = *r.witness_time;
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.target) j["target"] = matrix_to_json(r.target->matrix());
  if (r.target_vertex) j["target_vertex"] = *r.target_vertex;
  if (r.t_max) j["t_max"] = *r.t_max;
  if (r.necessary_condition)
    j["necessary_condition"] = {{"status", status_name(r.necessary_condition->status)},
                                {"binding", r.necessary_condition->binding}};
  return j;
}

Json to_json(const SpectralDecomposition& d) {
  const auto n = d.order();
  CMatrix sum = CMatrix::Zero(n, n);
  CMatrix weighted = CMatrix::Zero(n, n);
  double idempotence = 0.0;
  double orthogonality = 0.0;
  Json traces = Json::array();
  for (int r = 0; r < d.size(); ++r) {
    const CMatrix& e = d.idempotents()[r];
    sum += e;
    weighted += d.eigenvalues()[r] * e;
    idempotence = std::max(idempotence, (e * e - e).norm());
    for (int s = r + 1; s < d.size(); ++s) orthogonality = std::max(orthogonality, (e * d.idempotents()[s]).norm());
    traces.push_back(e.trace().real());
  }
  return {{"order", n},
          {"theta", d.eigenvalues()},
          {"mult", d.multiplicities()},
          {"idempotent_traces", traces},
          {"residuals",
           {{"completeness", (sum - CMatrix::Identity(n, n)).norm()},
            {"idempotence", idempotence},
            {"orthogonality", orthogonality},
            {"reconstruction", (weighted - d.source()).norm()}}},
          {"grouping_threshold", d.grouping_threshold()},
          {"real_source", d.real_source()},
          {"warnings", d.warnings()}};
}

Json to_json(const BlockDecomposition& b) {
  Json blocks = Json::array();
  for (const auto& [pair, block] : b.blocks)
    blocks.push_back({{"pair", pair_json(pair)}, {"norm", block.norm()}, {"matrix", matrix_to_json(block)}});
  Json support = Json::array();
  for (const auto& p : b.support.pairs()) support.push_back(pair_json(p));
  return {{"theta", b.theta},         {"support", support},           {"blocks", blocks},
          {"block_tol", b.block_tol}, {"dropped_norm", b.dropped_norm}, {"warnings", b.warnings}};
}

Json to_json(const PgstEnumeration& e) {
  Json candidates = Json::array();
  for (const auto& c : e.candidates) {
    Json signs = Json::array();
    for (const auto& [pair, eps] : c.signs.eps) signs.push_back({pair.first, pair.second, eps});
    candidates.push_back({{"signs", signs}, {"state", matrix_to_json(c.state.matrix())}});
  }
  return {{"complete", e.complete}, {"pattern_count", e.pattern_count}, {"candidates", candidates}};
}

Json to_json(const VertexBounds& b) {
  return {{"ecc_plus_one", b.ecc_plus_one}, {"support_size", b.support_size}, {"max_valency", b.max_valency},
          {"upper", b.upper},               {"periodic", b.periodic},         {"consistent", b.consistent}};
}

Json to_json(const oracle::ScanResult& scan) {
  Json minima = Json::array();
  for (const auto& m : scan.minima) minima.push_back({{"t", m.t}, {"value", m.value}});
  return {{"grid_step", scan.grid_step}, {"minima", minima}, {"floor", scan.floor}, {"floor_t", scan.floor_t}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qwalk::json
