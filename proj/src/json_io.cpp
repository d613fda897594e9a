/**
 * This code is part of nosig.
 *
 * (C) Copyright nosig contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Any modifications or derivative works of this code must retain this
 * copyright notice, and modified files need to carry a notice indicating
 * that they have been altered from the originals.
 */

#include "nosig/json_io.hpp"

#include <cstdio>
#include <string>
#include <vector>

#include "nosig/errors.hpp"

namespace nosig::io {

void require_keys(const json &obj, const char *what,
                  const std::vector<std::string> &required,
                  const std::vector<std::string> &optional) {
  if (!obj.is_object())
    throw ParseError(std::string(what) + ": expected an object");
  for (const auto &item : obj.items()) {
    bool known = false;
    for (const auto &k : required)
      if (item.key() == k)
        known = true;
    for (const auto &k : optional)
      if (item.key() == k)
        known = true;
    if (!known)
      throw ParseError(std::string(what) + ": unknown field '" + item.key() +
                       "'");
  }
  for (const auto &k : required)
    if (!obj.contains(k))
      throw ParseError(std::string(what) + ": missing field '" + k + "'");
}

double get_double(const json &v, const char *what) {
  if (!v.is_number())
    throw ParseError(std::string(what) + ": expected a number");
  return v.get<double>();
}

long long get_int(const json &v, const char *what) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ParseError(std::string(what) + ": expected an integer");
  return v.get<long long>();
}

std::string get_string(const json &v, const char *what) {
  if (!v.is_string())
    throw ParseError(std::string(what) + ": expected a string");
  return v.get<std::string>();
}

json to_json(const Complex &z) { return json::array({z.real(), z.imag()}); }

json to_json(const Vector &v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(to_json(v(i)));
  return out;
}

json to_json(const Matrix &m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const PureState &psi) { return to_json(psi.amplitudes()); }

json to_json(const DensityMatrix &rho) {
  return json{{"dim", rho.dim()}, {"matrix", to_json(rho.matrix())}};
}

json to_json(const BipartiteState &psi) {
  return json{{"dimA", psi.dim_a()},
              {"dimB", psi.dim_b()},
              {"amplitudes", to_json(psi.amplitudes())}};
}

json to_json(const Ensemble &e) {
  json members = json::array();
  for (const auto &m : e.members())
    members.push_back(json{{"p", m.probability}, {"state", to_json(m.state)}});
  return json{{"members", std::move(members)}};
}

json to_json(const SteeringProtocol &protocol) {
  json predicted = json::array();
  for (const auto &m : protocol.predicted().members())
    predicted.push_back(
        json{{"p", m.probability}, {"state", to_json(m.state)}});
  return json{{"ancillaDim", protocol.ancilla_dim()},
              {"unitaryB", to_json(protocol.unitary_b())},
              {"measurementVectors", to_json(protocol.measurement_vectors())},
              {"predicted", std::move(predicted)}};
}

json to_json(const SteeringReport &report) {
  return json{{"probabilityError", report.probability_error},
              {"infidelity", report.infidelity},
              {"maxProbabilityError", report.max_probability_error},
              {"maxInfidelity", report.max_infidelity},
              {"probabilitySum", report.probability_sum},
              {"maxDeviation", report.max_deviation()},
              {"pass", report.pass()}};
}

json to_json(const LinearMapSpec &map) {
  json out{{"dimIn", map.dim_in()}, {"dimOut", map.dim_out()}};
  switch (map.kind()) {
  case LinearMapSpec::Kind::Kraus: {
    out["kind"] = "kraus";
    json ops = json::array();
    for (const Matrix &k : map.kraus_channel().operators())
      ops.push_back(to_json(k));
    out["operators"] = std::move(ops);
    return out;
  }
  case LinearMapSpec::Kind::Choi:
    out["kind"] = "choi";
    out["matrix"] = to_json(map.choi_matrix().matrix());
    return out;
  case LinearMapSpec::Kind::Identity:
    out["kind"] = "builtin";
    out["name"] = "identity";
    return out;
  case LinearMapSpec::Kind::Transpose:
    out["kind"] = "builtin";
    out["name"] = "transpose";
    return out;
  case LinearMapSpec::Kind::Depolarizing:
    out["kind"] = "builtin";
    out["name"] = "depolarizing";
    out["lambda"] = map.lambda();
    return out;
  case LinearMapSpec::Kind::Unitary:
    out["kind"] = "builtin";
    out["name"] = "unitary";
    out["matrix"] = to_json(map.unitary_matrix());
    return out;
  }
  throw ParseError("to_json: unknown map kind");
}

json to_json(const HelstromResult &discriminator) {
  return json{{"projectorFirst", to_json(discriminator.projector_first)},
              {"projectorSecond", to_json(discriminator.projector_second)},
              {"traceDistance", discriminator.trace_distance},
              {"successProbability", discriminator.success_probability}};
}

json to_json(const EmpiricalRecord &record) {
  json out{{"seed", record.seed},
           {"shots", record.shots},
           {"successes", record.successes},
           {"expectedRate", record.expected_rate}};
  out["rate"] = record.rate.has_value() ? json(*record.rate) : json(nullptr);
  out["pValue"] =
      record.p_value.has_value() ? json(*record.p_value) : json(nullptr);
  return out;
}

json to_json(const SignalingReport &report) {
  json out{{"rho", to_json(report.rho)},
           {"ensembleA", to_json(report.ensemble_a)},
           {"ensembleB", to_json(report.ensemble_b)},
           {"outputA", to_json(report.output_a)},
           {"outputB", to_json(report.output_b)},
           {"residual", report.residual},
           {"helstromSuccess", report.helstrom_success},
           {"discriminator", to_json(report.discriminator)},
           {"verdict", report.verdict == Verdict::SignalingDetected
                           ? "signaling-detected"
                           : "no-signaling-consistent"}};
  out["empirical"] = report.empirical.has_value() ? to_json(*report.empirical)
                                                  : json(nullptr);
  return out;
}

Complex complex_from_json(const json &v) {
  if (!v.is_array() || v.size() != 2)
    throw ParseError("complex scalar: expected a two-element array [re, im]");
  return Complex(get_double(v[0], "complex scalar"),
                 get_double(v[1], "complex scalar"));
}

Vector vector_from_json(const json &v) {
  if (!v.is_array() || v.empty())
    throw ParseError("vector: expected a nonempty array");
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = complex_from_json(v[i]);
  return out;
}

Matrix matrix_from_json(const json &v) {
  if (!v.is_array() || v.empty())
    throw ParseError("matrix: expected a nonempty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  Matrix out;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!v[r].is_array() || v[r].empty())
      throw ParseError("matrix: each row must be a nonempty array");
    if (r == 0) {
      cols = v[r].size();
      out = Matrix(static_cast<Eigen::Index>(rows),
                   static_cast<Eigen::Index>(cols));
    } else if (v[r].size() != cols) {
      throw ParseError("matrix: ragged rows");
    }
    for (std::size_t c = 0; c < cols; ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(v[r][c]);
  }
  return out;
}

PureState pure_state_from_json(const json &v) {
  return PureState(vector_from_json(v));
}

DensityMatrix density_from_json(const json &v) {
  require_keys(v, "density matrix", {"dim", "matrix"});
  const long long dim = get_int(v["dim"], "density matrix dim");
  const Matrix m = matrix_from_json(v["matrix"]);
  if (m.rows() != dim || m.cols() != dim)
    throw ParseError("density matrix: matrix does not match dim");
  return DensityMatrix(m);
}

BipartiteState bipartite_from_json(const json &v) {
  require_keys(v, "bipartite state", {"dimA", "dimB", "amplitudes"});
  const long long dim_a = get_int(v["dimA"], "bipartite dimA");
  const long long dim_b = get_int(v["dimB"], "bipartite dimB");
  return BipartiteState(static_cast<int>(dim_a), static_cast<int>(dim_b),
                        vector_from_json(v["amplitudes"]));
}

namespace {

std::vector<Ensemble::Member> members_from_json(const json &v,
                                                const char *what) {
  if (!v.is_array() || v.empty())
    throw ParseError(std::string(what) + ": expected a nonempty array");
  std::vector<Ensemble::Member> members;
  for (const json &item : v) {
    require_keys(item, what, {"p", "state"});
    members.push_back({get_double(item["p"], what),
                       pure_state_from_json(item["state"])});
  }
  return members;
}

} // namespace

Ensemble ensemble_from_json(const json &v) {
  require_keys(v, "ensemble", {"members"});
  return Ensemble(members_from_json(v["members"], "ensemble member"));
}

SteeringProtocol protocol_from_json(const json &v) {
  require_keys(v, "steering protocol",
               {"ancillaDim", "unitaryB", "measurementVectors", "predicted"},
               {"formatVersion"});
  if (v.contains("formatVersion") &&
      get_int(v["formatVersion"], "steering protocol formatVersion") != 1)
    throw ParseError("steering protocol: unsupported formatVersion");
  const long long ancilla = get_int(v["ancillaDim"], "ancillaDim");
  const Matrix u = matrix_from_json(v["unitaryB"]);
  const Matrix mv = matrix_from_json(v["measurementVectors"]);
  Ensemble predicted(members_from_json(v["predicted"], "predicted member"));
  const int m = static_cast<int>(u.rows());
  return SteeringProtocol(m - static_cast<int>(ancilla),
                          static_cast<int>(ancilla), u, mv,
                          std::move(predicted));
}

LinearMapSpec channel_from_json(const json &v) {
  if (!v.is_object() || !v.contains("kind"))
    throw ParseError("channel: expected an object with a 'kind' field");
  const std::string kind = get_string(v["kind"], "channel kind");
  if (kind == "kraus") {
    require_keys(v, "kraus channel", {"kind", "dimIn", "dimOut", "operators"});
    const long long din = get_int(v["dimIn"], "channel dimIn");
    const long long dout = get_int(v["dimOut"], "channel dimOut");
    if (!v["operators"].is_array() || v["operators"].empty())
      throw ParseError("kraus channel: operators must be a nonempty array");
    std::vector<Matrix> ops;
    for (const json &op : v["operators"])
      ops.push_back(matrix_from_json(op));
    return LinearMapSpec::kraus(KrausChannel(
        static_cast<int>(din), static_cast<int>(dout), std::move(ops)));
  }
  if (kind == "choi") {
    require_keys(v, "choi channel", {"kind", "dimIn", "dimOut", "matrix"});
    const long long din = get_int(v["dimIn"], "channel dimIn");
    const long long dout = get_int(v["dimOut"], "channel dimOut");
    return LinearMapSpec::choi(ChoiMatrix(static_cast<int>(din),
                                          static_cast<int>(dout),
                                          matrix_from_json(v["matrix"])));
  }
  if (kind == "builtin") {
    if (!v.contains("name"))
      throw ParseError("builtin channel: missing field 'name'");
    const std::string name = get_string(v["name"], "builtin channel name");
    if (name == "identity" || name == "transpose") {
      require_keys(v, "builtin channel", {"kind", "dimIn", "dimOut", "name"});
      const long long din = get_int(v["dimIn"], "channel dimIn");
      const long long dout = get_int(v["dimOut"], "channel dimOut");
      if (din != dout)
        throw ParseError("builtin channel: dimIn must equal dimOut");
      return name == "identity"
                 ? LinearMapSpec::identity(static_cast<int>(din))
                 : LinearMapSpec::transpose(static_cast<int>(din));
    }
    if (name == "depolarizing") {
      require_keys(v, "builtin channel",
                   {"kind", "dimIn", "dimOut", "name", "lambda"});
      const long long din = get_int(v["dimIn"], "channel dimIn");
      const long long dout = get_int(v["dimOut"], "channel dimOut");
      if (din != dout)
        throw ParseError("builtin channel: dimIn must equal dimOut");
      return LinearMapSpec::depolarizing(
          static_cast<int>(din), get_double(v["lambda"], "lambda"));
    }
    if (name == "unitary") {
      require_keys(v, "builtin channel",
                   {"kind", "dimIn", "dimOut", "name", "matrix"});
      const long long din = get_int(v["dimIn"], "channel dimIn");
      const long long dout = get_int(v["dimOut"], "channel dimOut");
      const Matrix u = matrix_from_json(v["matrix"]);
      if (u.rows() != din || u.cols() != dout)
        throw ParseError("builtin channel: matrix does not match dims");
      return LinearMapSpec::unitary(u);
    }
    throw ParseError("builtin channel: unknown name '" + name + "'");
  }
  throw ParseError("channel: unknown kind '" + kind + "'");
}

MeanFieldParams mean_field_params_from_json(const json &v) {
  require_keys(v, "mean-field params", {"h0", "coupling", "time"}, {"steps"});
  MeanFieldParams params;
  params.h0 = matrix_from_json(v["h0"]);
  params.coupling = get_double(v["coupling"], "coupling");
  params.time = get_double(v["time"], "time");
  if (v.contains("steps"))
    params.steps = static_cast<int>(get_int(v["steps"], "steps"));
  return params;
}

DynamicsMap dynamics_from_json(const json &v) {
  if (!v.is_object() || !v.contains("kind"))
    throw ParseError("dynamics: expected an object with a 'kind' field");
  const std::string kind = get_string(v["kind"], "dynamics kind");
  if (kind == "linear") {
    require_keys(v, "dynamics", {"kind", "channel"});
    return DynamicsMap::linear(channel_from_json(v["channel"]));
  }
  if (kind == "builtin-nonlinear") {
    require_keys(v, "dynamics", {"kind", "name"}, {"params", "dim"});
    const std::string name = get_string(v["name"], "dynamics name");
    if (name == "perfect-cloner") {
      if (v.contains("params"))
        throw ParseError("dynamics: perfect-cloner takes no params");
      int dim = 2;
      if (v.contains("dim"))
        dim = static_cast<int>(get_int(v["dim"], "dynamics dim"));
      return DynamicsMap::perfect_cloner(dim);
    }
    if (name == "mean-field-qubit") {
      if (v.contains("dim"))
        throw ParseError("dynamics: mean-field-qubit has fixed dimension 2");
      if (v.contains("params"))
        return DynamicsMap::mean_field_qubit(
            mean_field_params_from_json(v["params"]));
      return DynamicsMap::mean_field_qubit(mean_field_demo_params());
    }
    throw ParseError("dynamics: unknown builtin-nonlinear name '" + name +
                     "'");
  }
  throw ParseError("dynamics: unknown kind '" + kind + "'");
}

namespace {

void dump_value(const json &v, std::string &out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
  switch (v.type()) {
  case json::value_t::number_float: {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
    out += buf;
    return;
  }
  case json::value_t::array: {
    if (v.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      out += pad;
      dump_value(v[i], out, indent, depth + 1);
      if (i + 1 < v.size())
        out += ",";
      out += "\n";
    }
    out += close_pad + "]";
    return;
  }
  case json::value_t::object: {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    std::size_t i = 0;
    for (const auto &item : v.items()) {
      out += pad + json(item.key()).dump() + ": ";
      dump_value(item.value(), out, indent, depth + 1);
      if (++i < v.size())
        out += ",";
      out += "\n";
    }
    out += close_pad + "}";
    return;
  }
  default:
    out += v.dump();
    return;
  }
}

} // namespace

std::string dump_json(const json &v, int indent) {
  std::string out;
  dump_value(v, out, indent, 0);
  out += "\n";
  return out;
}

json parse_json(const std::string &text, const char *what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

} // namespace nosig::io
