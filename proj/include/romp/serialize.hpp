#pragma once

// JSON forms of the library's value types.
//
// Matrices are arrays of rows, vectors are arrays of numbers. Doubles are
// written with the shortest decimal form that parses back to the same binary64
// value, so every round-trip is lossless. Non-finite values become null.
//
// Instance schema:
//   {
//     "format": "romp-instance/1",
//     "n": 160, "noise_sigma": 2.0,
//     "X": [[...], ...], "y": [...],
//     "truth": {"dimension": p, "support": [...], "values": [...]},
//     "authentic_rows": [...],
//     "ledger": {"model": "none|row|distributed", "budget": n1,
//                "attack": "...", "rows": [...], "cells": [[row, col], ...]}
//   }
// A ledger cell column of -1 denotes the response.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "romp/estimators.hpp"
#include "romp/harness.hpp"
#include "romp/model.hpp"
#include "romp/probes.hpp"

namespace romp {

using Json = nlohmann::json;

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

void to_json(Json& j, const CorruptionLedger& ledger);
void from_json(const Json& j, CorruptionLedger& ledger);
void to_json(Json& j, const SparseSignal& signal);
void from_json(const Json& j, SparseSignal& signal);
void to_json(Json& j, const RegressionInstance& inst);
void from_json(const Json& j, RegressionInstance& inst);

void to_json(Json& j, const Diagnostics& d);
void to_json(Json& j, const EstimatorResult& r);
void to_json(Json& j, const JusticePursuitResult& r);
void to_json(Json& j, const BruteForceResult& r);

void to_json(Json& j, const FittedConstant& c);
void to_json(Json& j, const ProbeReport& r);

void to_json(Json& j, const ExperimentConfig& c);
void from_json(const Json& j, ExperimentConfig& c);
void to_json(Json& j, const TrialRecord& r);
void from_json(const Json& j, TrialRecord& r);
void to_json(Json& j, const Aggregate& a);
void from_json(const Json& j, Aggregate& a);
void to_json(Json& j, const SweepReport& r);
void from_json(const Json& j, SweepReport& r);

Json read_json_file(const std::filesystem::path& path);
/// Writes j.dump(2) plus a newline; throws Error naming the path on failure.
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace romp
