#include "ncfa/json_io.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace ncfa::json_io {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << value;
  return out.str();
}

RunManifest make_manifest(const std::string& command, const json& parameters,
                          std::uint64_t seed) {
  RunManifest m;
  m.command = command;
  m.config_digest = hex64(fnv1a64(parameters.dump()));
  m.seed = seed;
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ts;
  ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  m.timestamp = ts.str();
  return m;
}

json to_json(const RunManifest& m) {
  return json{{"command", m.command},
              {"config_digest", m.config_digest},
              {"seed", m.seed},
              {"version", m.version},
              {"normalization", m.normalization},
              {"timestamp", m.timestamp}};
}

json measure_to_json(const measures::CentralMeasureSpec& spec) {
  using Family = measures::CentralMeasureSpec::Family;
  using Kind = measures::BernsteinFunction::Kind;
  json j;
  j["group"] = group_name(spec.group, spec.torus_dim);
  switch (spec.family) {
    case Family::Dirac: j["family"] = "dirac"; break;
    case Family::Haar: j["family"] = "haar"; break;
    case Family::Gaussian:
      j["family"] = "gaussian";
      j["sigma2"] = spec.sigma_sq;
      break;
    case Family::Cid:
      switch (spec.bernstein.kind) {
        case Kind::Linear:
          j["family"] = "brownian";
          break;
        case Kind::Laplace:
          j["family"] = "laplace";
          j["beta"] = spec.bernstein.beta;
          break;
        case Kind::Stable:
          j["family"] = "stable";
          j["b"] = spec.bernstein.b;
          j["alpha"] = spec.bernstein.alpha;
          break;
      }
      j["t"] = spec.bernstein.time;
      break;
    case Family::Custom: {
      j["family"] = "custom";
      json entries = json::array();
      for (const auto& [lambda, c] : spec.table) {
        json lam = json::array();
        for (Eigen::Index i = 0; i < lambda.size(); ++i) lam.push_back(lambda[i]);
        entries.push_back(json{{"lambda", lam}, {"c", c}});
      }
      j["entries"] = entries;
      break;
    }
  }
  return j;
}

measures::CentralMeasureSpec measure_from_json(const json& j) {
  using Spec = measures::CentralMeasureSpec;
  using BF = measures::BernsteinFunction;
  const auto [group, dim] = parse_group(j.at("group").get<std::string>());
  const int torus_dim = group == GroupId::Torus ? dim : 0;
  const std::string family = j.at("family").get<std::string>();
  if (family == "dirac") return Spec::dirac(group, torus_dim);
  if (family == "haar") return Spec::haar(group, torus_dim);
  if (family == "gaussian")
    return Spec::gaussian(j.at("sigma2").get<double>(), group, torus_dim);
  if (family == "brownian")
    return Spec::cid(BF::linear(j.at("t").get<double>()), group, torus_dim);
  if (family == "laplace")
    return Spec::cid(BF::laplace(j.at("beta").get<double>(),
                                 j.value("t", 1.0)),
                     group, torus_dim);
  if (family == "stable")
    return Spec::cid(BF::stable(j.at("b").get<double>(),
                                j.at("alpha").get<double>(), j.value("t", 1.0)),
                     group, torus_dim);
  if (family == "custom") {
    std::vector<std::pair<Eigen::VectorXi, double>> table;
    for (const auto& entry : j.at("entries")) {
      const auto& lam = entry.at("lambda");
      Eigen::VectorXi lambda(lam.size());
      for (std::size_t i = 0; i < lam.size(); ++i)
        lambda[static_cast<Eigen::Index>(i)] = lam[i].get<int>();
      table.emplace_back(lambda, entry.at("c").get<double>());
    }
    return Spec::custom(std::move(table), group, torus_dim);
  }
  throw std::invalid_argument("unknown measure family '" + family + "'");
}

json irrep_to_json(const dual::Irrep& irrep) {
  json lam = json::array();
  for (Eigen::Index i = 0; i < irrep.lambda.size(); ++i)
    lam.push_back(irrep.lambda[i]);
  return json{{"lambda", lam},
              {"dim", irrep.dim},
              {"casimir", irrep.casimir},
              {"norm", irrep.norm}};
}

json spectra_to_json(const spectra::SpectralCoeffs& coeffs) {
  json entries = json::array();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& ir = coeffs.irreps[i];
    json lam = json::array();
    for (Eigen::Index k = 0; k < ir.lambda.size(); ++k) lam.push_back(ir.lambda[k]);
    json entry{{"lambda", lam}, {"dim", ir.dim}, {"casimir", ir.casimir}};
    if (coeffs.blocks[i].is_scalar()) {
      const auto c = coeffs.blocks[i].scalar_value();
      entry["block"] = json{{"scalar", json::array({c.real(), c.imag()})}};
    } else {
      const auto& m = coeffs.blocks[i].matrix_value();
      json flat = json::array();   // row-major [re, im] pairs
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
          flat.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
      entry["block"] = json{{"matrix", flat}};
    }
    entries.push_back(entry);
  }
  return json{{"group", group_name(coeffs.group, coeffs.torus_dim)},
              {"normalization", coeffs.normalization},
              {"cutoff_norm", coeffs.cutoff_norm},
              {"entries", entries}};
}

spectra::SpectralCoeffs spectra_from_json(const json& j) {
  spectra::SpectralCoeffs coeffs;
  const auto [group, dim] = parse_group(j.at("group").get<std::string>());
  coeffs.group = group;
  coeffs.torus_dim = group == GroupId::Torus ? dim : 0;
  coeffs.normalization = j.value("normalization", std::string(kNormalizationNote));
  coeffs.cutoff_norm = j.at("cutoff_norm").get<double>();
  const auto rs = dual::root_system(group, coeffs.torus_dim == 0 ? 1 : coeffs.torus_dim);
  for (const auto& entry : j.at("entries")) {
    const auto& lam = entry.at("lambda");
    Eigen::VectorXi lambda(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i)
      lambda[static_cast<Eigen::Index>(i)] = lam[i].get<int>();
    const auto ir = dual::make_irrep(rs, lambda);
    const auto& block = entry.at("block");
    if (block.contains("scalar")) {
      const auto& c = block.at("scalar");
      coeffs.blocks.push_back(spectra::CoeffBlock::scalar(
          {c.at(0).get<double>(), c.at(1).get<double>()}));
    } else {
      const auto& flat = block.at("matrix");
      const auto d = static_cast<Eigen::Index>(ir.dim);
      if (static_cast<Eigen::Index>(flat.size()) != d * d)
        throw std::invalid_argument("matrix block has wrong element count");
      Eigen::MatrixXcd m(d, d);
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) {
          const auto& cell = flat.at(static_cast<std::size_t>(r * d + c));
          m(r, c) = {cell.at(0).get<double>(), cell.at(1).get<double>()};
        }
      coeffs.blocks.push_back(spectra::CoeffBlock::matrix(std::move(m)));
    }
    coeffs.irreps.push_back(ir);
  }
  return coeffs;
}

json verdict_to_json(const diagnostics::DecayVerdict& v) {
  json shells = json::array();
  for (const auto& s : v.shells)
    shells.push_back(json{{"index", s.index},
                          {"lo", s.lo},
                          {"hi", s.hi},
                          {"increment", s.increment},
                          {"cumulative", s.cumulative}});
  json j{{"verdict", diagnostics::verdict_name(v.verdict)},
         {"method", v.method == diagnostics::Method::Analytic ? "analytic" : "numeric"},
         {"shells", shells},
         {"fitted_ratio", v.fitted_ratio},
         {"note", v.note}};
  if (v.gk_table.size() > 0) {
    json table = json::array();
    for (Eigen::Index r = 0; r < v.gk_table.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < v.gk_table.cols(); ++c)
        row.push_back(v.gk_table(r, c));
      table.push_back(row);
    }
    j["gk_table"] = table;
  }
  return j;
}

json fit_to_json(const diagnostics::SuperSmoothFit& fit) {
  return json{{"beta_hat", fit.beta_hat},
              {"gamma_hat", fit.gamma_hat},
              {"a1_hat", fit.a1_hat},
              {"a2_hat", fit.a2_hat},
              {"log_amplitude", fit.log_amplitude},
              {"residual", fit.residual},
              {"supersmooth", fit.supersmooth}};
}

json trace_to_json(const diagnostics::TraceReport& r) {
  return json{{"t", r.time},
              {"cutoff_norm", r.cutoff_norm},
              {"trace_spectral", r.trace_spectral},
              {"density_at_e", r.density_at_e},
              {"hs_norm_sq", r.hs_norm_sq}};
}

json chain_to_json(const diagnostics::SmoothChainReport& r) {
  return json{{"applicable", r.applicable},
              {"dominated", r.dominated},
              {"smooth", r.smooth},
              {"envelope_constant", r.envelope_constant},
              {"max_ratio", r.max_ratio},
              {"fit", fit_to_json(r.fit)}};
}

deconv::DeconvConfig deconv_config_from_json(const json& j) {
  deconv::DeconvConfig cfg;
  const auto [group, dim] = parse_group(j.at("group").get<std::string>());
  cfg.root_system = dual::root_system(group, group == GroupId::Torus ? dim : 1);
  cfg.signal = measure_from_json(j.at("signal"));
  cfg.noise = measure_from_json(j.at("noise"));
  for (const auto& n : j.at("n_values"))
    cfg.n_values.push_back(n.get<std::size_t>());
  const auto& rule = j.at("cutoff_rule");
  const std::string kind = rule.at("kind").get<std::string>();
  if (kind == "fixed")
    cfg.cutoff = deconv::CutoffRule::fixed(rule.at("T").get<double>());
  else if (kind == "log_rule")
    cfg.cutoff = deconv::CutoffRule::log_rule(rule.at("scale").get<double>());
  else
    throw std::invalid_argument("unknown cutoff rule '" + kind + "'");
  cfg.eval_grid = j.value("eval_grid", 256);
  cfg.seed = j.value("seed", 0ull);
  cfg.sobolev_s = j.value("sobolev_s", 2.0);
  return cfg;
}

json deconv_report_to_json(const deconv::DeconvReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back(json{{"n", r.n},
                        {"l2_error", r.l2_error},
                        {"naive_error", r.naive_error},
                        {"cutoff_used", r.cutoff_used}});
  return json{{"rows", rows},
              {"rate_fit", json{{"slope", report.rate_fit.slope},
                                {"residual", report.rate_fit.residual},
                                {"theoretical_slope",
                                 report.rate_fit.theoretical_slope}}}};
}

void require_finite(const json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v))
      throw numerical_error("non-finite number in report payload");
  } else if (j.is_object() || j.is_array()) {
    for (const auto& item : j) require_finite(item);
  }
}

}  // namespace ncfa::json_io
