#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inertia_lab/entrywise.hpp"
#include "inertia_lab/harness.hpp"
#include "inertia_lab/linalg.hpp"

namespace inertia_lab::io {

using entrywise::FunctionSpec;
using linalg::Inertia;
using linalg::SymMatrix;

/// Reads a whole file. Throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);
/// Writes text to path, replacing any previous content.
void write_file(const std::string& path, const std::string& text);

/// {"n": n, "rows": [[...], ...]}. Throws ParseError for malformed
/// documents and AsymmetryError when |a_ij - a_ji| > 1e-12 * max(1, max |a|).
SymMatrix parse_matrix(const std::string& text);
std::string matrix_to_json(const SymMatrix& a, int indent = -1);

/// Variants: constant {d}, homothety {c, p0}, affine {f0, c, p0},
/// series {coeffs: [{alpha, c}] or dense [c0, c1, ...], degree?},
/// split {F: series document, c, p0}. p0 is 1-based in documents.
FunctionSpec parse_function(const std::string& text);
std::string function_to_json(const FunctionSpec& f, int indent = -1);

std::string inertia_to_json(const Inertia& in);

/// Everything a verify, falsify or suite run needs.
struct RunConfig {
    std::optional<entrywise::Theorem> theorem;
    std::optional<FunctionSpec> fn;
    harness::TrialConfig cfg;
    harness::Strategy strategy = harness::Strategy::paper_recipe;
    std::optional<std::string> json_path;
    std::optional<std::string> csv_path;
};

/// Keys: theorem, function, domain {kind, rho}, k, l, n_range, trials,
/// seed, tolerance {rel_zero, eig_convergence}, strategy, output {json, csv}.
/// Unknown keys are rejected with ParseError. rho may be the string "inf".
RunConfig parse_run_config(const std::string& text);

/// Replaces cfg.seed with INERTIA_LAB_SEED when that variable is set.
/// Throws ParseError for a value that is not an unsigned 64-bit integer.
void apply_seed_override(RunConfig& rc);

/// Report document. runtime_ms is only written when include_runtime is set,
/// so that repeated runs produce identical bytes.
std::string report_to_json(const harness::VerdictReport& rep, bool include_runtime = false);
/// Witnesses stored in a report document.
std::vector<harness::Witness> parse_witnesses(const std::string& report);

std::string report_csv_header();
std::string report_csv_row(const harness::VerdictReport& rep);

}  // namespace inertia_lab::io
