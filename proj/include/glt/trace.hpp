#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace glt {

/// Per-task accounting for one bulk-synchronous phase. Communication is
/// counted in abstract units: number of (id, value) records.
struct PhaseTrace {
  std::vector<std::int64_t> compute_ops;            // per task
  std::vector<std::vector<std::int64_t>> sent;      // [task][peer]
  std::vector<std::vector<std::int64_t>> received;  // [task][peer]
};

struct BenchTrace {
  std::string analytic;
  int p = 1;
  std::vector<PhaseTrace> phases;
  double wall_seconds = 0.0;  // measured; never serialized

  std::int64_t total_compute() const;
  std::int64_t total_sent() const;
  std::int64_t total_received() const;
  std::int64_t task_sent(int task) const;
  std::int64_t task_compute(int task) const;

  /// Per-phase conservation: sent[i][j] == received[j][i]. Throws
  /// DomainError on violation; called by the emitters.
  void check_conservation() const;
};

/// Incremental builder used by the analytics; drops phases with no work
/// and no communication anywhere.
class TraceBuilder {
 public:
  TraceBuilder(std::string analytic, int p);
  void begin_phase();
  void add_compute(int task, std::int64_t ops);
  void add_send(int from, int to, std::int64_t records);
  void add_recv(int at, int from, std::int64_t records);
  void end_phase();
  BenchTrace finish(double wall_seconds);

 private:
  BenchTrace trace_;
  PhaseTrace current_;
  bool open_ = false;
};

/// Per-phase per-task rows: run_id, analytic, task, phase, compute_ops,
/// sent, received. Conservation is checked at emit.
void write_trace_csv(std::ostream& os, const BenchTrace& trace,
                     const std::string& run_id);

/// Bulk-synchronous timeline in abstract time units (1 op = 1 record = 1
/// unit, barrier at every phase end): run_id, analytic, task, phase,
/// start, compute_end, comm_end.
void write_timeline_csv(std::ostream& os, const BenchTrace& trace,
                        const std::string& run_id);

}  // namespace glt
