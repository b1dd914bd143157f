#pragma once

#include <filesystem>
#include <string>

#include "mfa/trainer.hpp"

namespace mfa {

/// Writes trajectory.csv, spectrum.csv, summary.json, checkpoint.json,
/// loss.svg and spectrum_hist.svg into dir (created if missing). Every byte
/// is a pure function of the run result.
void emit_outputs(const RunResult& run, const std::filesystem::path& dir);

/// JSON summary of a multi-activation comparison sweep.
void write_compare_summary(const CompareResult& cmp, const std::filesystem::path& path);

struct Checkpoint {
  RunConfig config;
  Network net;
  std::size_t epoch = 0;
};

/// Round-trip for checkpoint.json (version tag "mfa-params-1").
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace mfa
