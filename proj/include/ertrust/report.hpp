#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "ertrust/experience.hpp"
#include "ertrust/population.hpp"
#include "ertrust/recruitment.hpp"
#include "ertrust/reputation.hpp"
#include "ertrust/simulator.hpp"

// CSV writers. Every file starts with a header row; reals use 12 significant
// digits ("%.12g") so output is byte-stable for a given build.
namespace ertrust {

std::string format_real(double x);

void write_qos_series(std::ostream& out, const RunReport& report);
void write_reputation_snapshot(std::ostream& out, const ReputationVector& rep, const Population& population);
void write_detection_table(std::ostream& out, std::span<const DetectionRow> rows);
void write_sweep(std::ostream& out, std::span<const SweepCell> cells);
void write_population(std::ostream& out, const Population& population);
void write_exp_curve(std::ostream& out, std::span<const CurvePoint> points);

/// Header row of the per-task decision log; rows come from write_decision.
void write_decision_header(std::ostream& out);
void write_decision(std::ostream& out, Scheme scheme, const RecruitDecision& decision);

/// Writes qos_series.csv, reputation_snapshot_<k>.csv for every snapshot,
/// reputation_snapshot_detection.csv and detection_table.csv (when a
/// detection table was taken) into `dir`, creating it if needed.
void write_run_outputs(const std::filesystem::path& dir, const RunReport& report);

} // namespace ertrust
