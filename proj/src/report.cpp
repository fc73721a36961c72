#include "ertrust/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ertrust {

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

} // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_qos_series(std::ostream& out, const RunReport& report) {
  out << "request_index,qos,cumulative_qos,scheme,seed,qos_ma10\n";
  const auto scheme = to_string(report.config.scheme);
  for (const auto& rec : report.series)
    out << rec.index << ',' << format_real(rec.qos) << ',' << format_real(rec.cumulative_qos) << ',' << scheme << ','
        << report.config.seed << ',' << format_real(rec.qos_ma) << '\n';
}

void write_reputation_snapshot(std::ostream& out, const ReputationVector& rep, const Population& population) {
  if (rep.size() != population.size()) throw std::invalid_argument("snapshot does not match the population");
  out << "user_id,kind,pos,neg,overall\n";
  for (std::size_t u = 0; u < rep.size(); ++u)
    out << u << ',' << to_string(population.users[u].kind()) << ',' << format_real(rep.pos[u]) << ','
        << format_real(rep.neg[u]) << ',' << format_real(rep.overall[u]) << '\n';
}

void write_detection_table(std::ostream& out, std::span<const DetectionRow> rows) {
  out << "bucket_fraction,n_malicious,n_low,n_high\n";
  for (const auto& row : rows)
    out << format_real(row.fraction) << ',' << row.n_malicious << ',' << row.n_low << ',' << row.n_high << '\n';
}

void write_sweep(std::ostream& out, std::span<const SweepCell> cells) {
  out << "scheme,malicious_fraction,checkpoint,mean_qos,stderr,replicates\n";
  for (const auto& c : cells)
    out << to_string(c.scheme) << ',' << format_real(c.malicious_fraction) << ',' << c.checkpoint << ','
        << format_real(c.mean_qos) << ',' << format_real(c.stderr_qos) << ',' << c.replicates << '\n';
}

void write_population(std::ostream& out, const Population& population) {
  out << "user_id,kind,a,b,a_low,b_low,mix\n";
  for (const auto& user : population.users) {
    out << user.id << ',' << to_string(user.kind()) << ',';
    if (const auto* m = std::get_if<Malicious>(&user.behavior)) {
      out << format_real(m->high.a) << ',' << format_real(m->high.b) << ',' << format_real(m->low.a) << ','
          << format_real(m->low.b) << ',' << format_real(m->mix) << '\n';
    } else {
      const auto& shape = std::holds_alternative<HighQuality>(user.behavior)
                              ? std::get<HighQuality>(user.behavior).shape
                              : std::get<LowQuality>(user.behavior).shape;
      out << format_real(shape.a) << ',' << format_real(shape.b) << ",,,\n";
    }
  }
}

void write_exp_curve(std::ostream& out, std::span<const CurvePoint> points) {
  out << "step,value,regime\n";
  for (const auto& p : points) out << p.step << ',' << format_real(p.value) << ',' << p.regime << '\n';
}

void write_decision_header(std::ostream& out) { out << "task_id,scheme,requester,selected_ids,scores\n"; }

void write_decision(std::ostream& out, Scheme scheme, const RecruitDecision& decision) {
  out << decision.task << ',' << to_string(scheme) << ',' << decision.requester << ',';
  for (std::size_t i = 0; i < decision.selected.size(); ++i) out << (i ? ";" : "") << decision.selected[i];
  out << ',';
  for (std::size_t i = 0; i < decision.scores.size(); ++i) out << (i ? ";" : "") << format_real(decision.scores[i]);
  out << '\n';
}

void write_run_outputs(const std::filesystem::path& dir, const RunReport& report) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_csv(dir / "qos_series.csv");
    write_qos_series(out, report);
  }
  for (const auto& snap : report.snapshots) {
    auto out = open_csv(dir / ("reputation_snapshot_" + std::to_string(snap.after_request) + ".csv"));
    write_reputation_snapshot(out, snap.rep, report.population);
  }
  if (report.detection_reputation) {
    auto snap = open_csv(dir / "reputation_snapshot_detection.csv");
    write_reputation_snapshot(snap, report.detection_reputation->rep, report.population);
    auto out = open_csv(dir / "detection_table.csv");
    write_detection_table(out, report.detection);
  }
}

} // namespace ertrust
