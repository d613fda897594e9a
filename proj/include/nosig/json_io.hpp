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

#ifndef NOSIG_JSON_IO_HPP
#define NOSIG_JSON_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "nosig/channels.hpp"
#include "nosig/dynamics.hpp"
#include "nosig/signaling.hpp"
#include "nosig/steering.hpp"
#include "nosig/types.hpp"

// Wire encoding shared by every command: complex scalar [re, im], vector
// as array of scalars, matrix as array of rows. Parsing is strict; any
// unknown field is an error, so schemas can only grow deliberately.
namespace nosig::io {

using json = nlohmann::json;

// ---- strict-parsing helpers ----
void require_keys(const json &obj, const char *what,
                  const std::vector<std::string> &required,
                  const std::vector<std::string> &optional = {});
double get_double(const json &v, const char *what);
long long get_int(const json &v, const char *what);
std::string get_string(const json &v, const char *what);

// ---- writers ----
json to_json(const Complex &z);
json to_json(const Vector &v);
json to_json(const Matrix &m);
json to_json(const PureState &psi);
json to_json(const DensityMatrix &rho);
json to_json(const BipartiteState &psi);
json to_json(const Ensemble &e);
json to_json(const SteeringProtocol &protocol);
json to_json(const SteeringReport &report);
json to_json(const LinearMapSpec &map);
json to_json(const HelstromResult &discriminator);
json to_json(const EmpiricalRecord &record);
json to_json(const SignalingReport &report);

// ---- readers ----
Complex complex_from_json(const json &v);
Vector vector_from_json(const json &v);
Matrix matrix_from_json(const json &v);
PureState pure_state_from_json(const json &v);
DensityMatrix density_from_json(const json &v);
BipartiteState bipartite_from_json(const json &v);
Ensemble ensemble_from_json(const json &v);
SteeringProtocol protocol_from_json(const json &v);
LinearMapSpec channel_from_json(const json &v);
MeanFieldParams mean_field_params_from_json(const json &v);
DynamicsMap dynamics_from_json(const json &v);

/// Serialize with every float at 17 significant digits so doubles
/// round-trip exactly and reruns are byte-identical. Object keys come out
/// sorted, which the default nlohmann dump also guarantees.
std::string dump_json(const json &v, int indent = 2);

/// Parse with nlohmann, converting syntax errors to ParseError.
json parse_json(const std::string &text, const char *what);

} // namespace nosig::io

#endif
