#pragma once

#include <string>
#include <vector>

#include "tsurf/curvature.hpp"
#include "tsurf/immersion.hpp"
#include "tsurf/principal.hpp"

namespace tsurf {

/// Thrown on malformed surface files; the message names the offending
/// vertex or field. Mapped to exit code 3 by the CLI.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Canonical JSON serialization of an immersion. Numbers carry 17
/// significant digits so write-then-read is exact for doubles; vertex
/// records are emitted in id order, one per line.
std::string surface_to_json(const Immersion& imm);
Immersion surface_from_json(const std::string& text);

void write_surface(const Immersion& imm, const std::string& path);
Immersion read_surface(const std::string& path);

/// Wireframe OBJ: one "v" record per vertex, one "l" record per undirected
/// edge, no faces.
std::string surface_to_obj(const Immersion& imm);
void write_obj(const Immersion& imm, const std::string& path);

/// Per-vertex curvature + principal rows with the aggregate verdicts and
/// the four-column condition summary used for the round-cylinder table.
struct AnalysisReport {
    std::vector<VertexCurvature> curvature;
    std::vector<PrincipalReport> principal;
    CPCVerdict cpc1;
    CPCVerdict cpc2;
    bool principal_k1 = false;   // every analyzable vertex principal, dir 1
    bool principal_k2 = false;
    bool alpha3_zero = true;     // max |alpha3| below threshold
    bool beta3_zero = true;
    bool constant_bond = false;  // relative edge-length spread below num tol
    double max_abs_alpha3 = 0.0;
    double max_abs_beta3 = 0.0;
    double bond_mean = 0.0;
    double bond_spread = 0.0;  // max |len - mean| / mean
};

AnalysisReport analyze_surface(const Immersion& imm, const Tolerances& tol = {});
std::string report_to_json(const AnalysisReport& rep, const Immersion& imm);

/// Fixed-width text table of the per-direction principal condition, the
/// alpha3/beta3 coefficients and the constant-bond condition (yes/no).
std::string report_condition_table(const AnalysisReport& rep, const std::string& name);

}  // namespace tsurf
