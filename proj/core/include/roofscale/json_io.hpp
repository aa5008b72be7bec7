#pragma once

#include <optional>
#include <string>
#include <vector>

#include "roofscale/convexroof.hpp"
#include "roofscale/ghzw.hpp"
#include "roofscale/localops.hpp"
#include "roofscale/qstate.hpp"

namespace roofscale {

// %.12g, with ".0" appended when the result would otherwise look like an
// integer, so every emitted number round-trips as floating point and output
// bytes are stable across runs.
std::string format_double(double v);

// State files carry {"dims": [...]} plus exactly one of
// {"amplitudes": [[re,im],...]} (pure) or {"matrix": [[[re,im],...],...]}
// (square, row-major; mixed).
struct StateFile {
  std::optional<PureState> pure;
  std::optional<MixedState> mixed;
};

StateFile parse_state_json(const std::string& text);
std::string to_json(const PureState& psi);
std::string to_json(const MixedState& rho);

// The density operator either way (projector of the pure state).
MixedState as_mixed(const StateFile& sf);

// {"factors": [[[re,im],...],...]}, one row-major matrix per site.
LocalOperator parse_local_operator_json(const std::string& text);
std::string to_json(const LocalOperator& op);

// {"a": [re,im], "b": [re,im], "c": [re,im], "d": [re,im], "f": [re,im]}.
// Plain numbers are accepted as real coefficients when parsing.
GhzwFamily parse_family_json(const std::string& text);
std::string to_json(const GhzwFamily& fam);

// {"value": x, "weights": [...], "states": [[[re,im],...],...],
//  "restarts_used": n, "converged": bool}.
std::string to_json(const RoofResult& result);

// Header "p,char,convex" / "p,q,char,convex" plus one line per sample.
std::string curve_csv(const std::vector<CurveSample>& samples);
std::string surface_csv(const std::vector<SurfaceSample>& samples);

// Whole-file helpers; throw std::runtime_error on I/O failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace roofscale
