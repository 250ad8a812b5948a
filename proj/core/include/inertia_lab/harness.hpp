#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inertia_lab/entrywise.hpp"
#include "inertia_lab/linalg.hpp"
#include "inertia_lab/rng.hpp"

namespace inertia_lab::harness {

using entrywise::AdmissibleK;
using entrywise::Clause;
using entrywise::DomainSpec;
using entrywise::FunctionSpec;
using entrywise::Theorem;
using linalg::Inertia;
using linalg::SymMatrix;

struct TrialConfig {
    DomainSpec dom = DomainSpec::two_sided(1.0);
    AdmissibleK k = AdmissibleK({1});
    std::size_t l = 1;
    std::size_t n_min = 1;
    std::size_t n_max = 8;
    std::size_t trials = 200;
    std::uint64_t seed = 0x5eed;
    linalg::TolerancePolicy tol;
    /// 0 selects the hardware thread count. Never affects results.
    unsigned threads = 1;

    /// Throws InvalidArgument on an inconsistent configuration.
    void validate() const;
};

/// A matrix in S_n^(k)(I): exactly k negative eigenvalues, entries inside
/// dom. Two-sided domains use Q Lambda Q^T with a Gram-Schmidt frame; one-sided
/// domains inflate a Psi-map sample. Retries up to 100 times, then throws
/// SamplingError. One-sided domains need n >= k + 1 when k >= 1.
SymMatrix sample_with_inertia(std::size_t n, std::size_t k, const DomainSpec& dom, Rng& rng,
                              const linalg::TolerancePolicy& tol = {});

/// Smallest n the sampler accepts for (k, dom).
std::size_t min_sample_size(std::size_t k, const DomainSpec& dom);

struct Witness {
    std::vector<SymMatrix> matrices;
    FunctionSpec fn;
    Inertia observed;
    Clause clause;
    /// Construction that produced the witness.
    std::string recipe;
};

struct LemmaResult {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::string first_failure;
};

enum class Mode { verify, falsify, suite };
std::string to_string(Mode m);

enum class Strategy { paper_recipe, random_search };
std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct VerdictReport {
    std::string theorem;
    Mode mode = Mode::verify;
    TrialConfig config;
    std::optional<FunctionSpec> fn;
    std::optional<entrywise::PreserverVerdict> classification;
    std::optional<Strategy> strategy;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::vector<Witness> witnesses;
    std::vector<LemmaResult> lemmas;
    bool vacuous = false;
    std::string status;
    double runtime_ms = 0.0;
};

/// Outcome of one claim check on a concrete tuple.
struct ClaimCheck {
    bool input_ok = false;
    bool output_ok = false;
    Inertia input;
    Inertia observed;
};

/// Evaluates the claim behind t on one input tuple: membership of the
/// inputs in the source class and of f[inputs] in the target class.
ClaimCheck check_claim(Theorem t, const FunctionSpec& f, std::span<const SymMatrix> tuple, const TrialConfig& cfg);

/// True when the stored tuple is a valid input and f still lands outside
/// the target class.
bool witness_holds(Theorem t, const Witness& w, const TrialConfig& cfg);

/// Statistical check of the sufficiency direction. When classification
/// rejects f the run is skipped and marked vacuous.
VerdictReport verify_forward(Theorem t, const FunctionSpec& f, const TrialConfig& cfg);

/// Searches for a witness. paper_recipe replays constructions keyed by the
/// violated clause, then falls back to random search.
VerdictReport falsify(Theorem t, const FunctionSpec& f, const TrialConfig& cfg,
                      Strategy strategy = Strategy::paper_recipe);

/// Batch of structural property checks on random inputs.
VerdictReport lemma_suite(const TrialConfig& cfg);

struct CoherenceResult {
    VerdictReport verify;
    VerdictReport falsify;
    /// Verification passed with no failures and a witness was still found.
    bool alarm = false;
};

CoherenceResult coherence_check(Theorem t, const FunctionSpec& f, const TrialConfig& cfg);

}  // namespace inertia_lab::harness
