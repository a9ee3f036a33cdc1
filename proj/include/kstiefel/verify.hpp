#pragma once

#include <cstdint>
#include <json.hpp>
#include <span>
#include <string>
#include <vector>

#include "kstiefel/matrix.hpp"

namespace kst {

// One failing trial.  residual is the trial's worst check expressed as a
// multiple of its acceptance bound (1.0 is the pass boundary); integer or
// structural mismatches report 2.0.  digest fingerprints the trial input.
struct VerifyFailure {
    std::uint64_t seed;
    std::string digest;
    double residual;
};

struct SuiteReport {
    std::string suite;
    Field field;
    int trials = 0;
    double max_ratio = 0.0;        // worst residual ratio over all trials
    int failure_count = 0;
    std::vector<VerifyFailure> failures;  // capped at kMaxRecordedFailures

    bool passed() const { return failure_count == 0; }
};

constexpr int kMaxRecordedFailures = 8;

using SuiteFn = SuiteReport (*)(Field, int, std::uint64_t, const Tolerance&);

struct SuiteEntry {
    const char* name;
    const char* what;
    bool over_r;  // false for suites defined only over C and H
    SuiteFn fn;
};

std::span<const SuiteEntry> verify_suites();

SuiteReport run_suite(const std::string& name, Field f, int trials,
                      std::uint64_t seed, const Tolerance& tol = {});

std::vector<SuiteReport> run_verify(Field f, int trials, std::uint64_t seed,
                                    const Tolerance& tol = {});

nlohmann::json verify_report_to_json(Field f, int trials, std::uint64_t seed,
                                     const std::vector<SuiteReport>& reports);

// Reachability ledger: every public operation paired with a CLI
// subcommand whose execution exercises it (directly or through the
// verify suites).  Backs the coverage test in tests/.
struct OpCoverage {
    const char* op;
    const char* subcommand;
};

std::span<const OpCoverage> op_coverage();
std::span<const char* const> cli_subcommands();

}  // namespace kst
