#include "glt/trace.hpp"

#include <algorithm>

#include "glt/error.hpp"

namespace glt {

std::int64_t BenchTrace::total_compute() const {
  std::int64_t total = 0;
  for (const auto& ph : phases)
    for (std::int64_t c : ph.compute_ops) total += c;
  return total;
}

std::int64_t BenchTrace::total_sent() const {
  std::int64_t total = 0;
  for (const auto& ph : phases)
    for (const auto& row : ph.sent)
      for (std::int64_t s : row) total += s;
  return total;
}

std::int64_t BenchTrace::total_received() const {
  std::int64_t total = 0;
  for (const auto& ph : phases)
    for (const auto& row : ph.received)
      for (std::int64_t s : row) total += s;
  return total;
}

std::int64_t BenchTrace::task_sent(int task) const {
  std::int64_t total = 0;
  for (const auto& ph : phases)
    for (std::int64_t s : ph.sent[task]) total += s;
  return total;
}

std::int64_t BenchTrace::task_compute(int task) const {
  std::int64_t total = 0;
  for (const auto& ph : phases) total += ph.compute_ops[task];
  return total;
}

void BenchTrace::check_conservation() const {
  for (const auto& ph : phases) {
    for (int i = 0; i < p; ++i) {
      if (ph.sent[i][i] != 0 || ph.received[i][i] != 0)
        throw DomainError("trace: self-communication recorded");
      for (int j = 0; j < p; ++j) {
        if (ph.sent[i][j] != ph.received[j][i])
          throw DomainError("trace: conservation violated");
      }
    }
  }
}

TraceBuilder::TraceBuilder(std::string analytic, int p) {
  trace_.analytic = std::move(analytic);
  trace_.p = p;
}

void TraceBuilder::begin_phase() {
  current_.compute_ops.assign(trace_.p, 0);
  current_.sent.assign(trace_.p, std::vector<std::int64_t>(trace_.p, 0));
  current_.received.assign(trace_.p, std::vector<std::int64_t>(trace_.p, 0));
  open_ = true;
}

void TraceBuilder::add_compute(int task, std::int64_t ops) {
  current_.compute_ops[task] += ops;
}

void TraceBuilder::add_send(int from, int to, std::int64_t records) {
  current_.sent[from][to] += records;
}

void TraceBuilder::add_recv(int at, int from, std::int64_t records) {
  current_.received[at][from] += records;
}

void TraceBuilder::end_phase() {
  bool any = false;
  for (std::int64_t c : current_.compute_ops) any = any || c != 0;
  for (const auto& row : current_.sent)
    for (std::int64_t s : row) any = any || s != 0;
  if (any) trace_.phases.push_back(std::move(current_));
  current_ = PhaseTrace{};
  open_ = false;
}

BenchTrace TraceBuilder::finish(double wall_seconds) {
  if (open_) end_phase();
  trace_.wall_seconds = wall_seconds;
  return std::move(trace_);
}

void write_trace_csv(std::ostream& os, const BenchTrace& trace,
                     const std::string& run_id) {
  trace.check_conservation();
  os << "run_id,analytic,task,phase,compute_ops,sent,received\n";
  for (std::size_t ph = 0; ph < trace.phases.size(); ++ph) {
    const PhaseTrace& phase = trace.phases[ph];
    for (int t = 0; t < trace.p; ++t) {
      std::int64_t sent = 0, received = 0;
      for (int j = 0; j < trace.p; ++j) {
        sent += phase.sent[t][j];
        received += phase.received[t][j];
      }
      os << run_id << ',' << trace.analytic << ',' << t << ',' << ph << ','
         << phase.compute_ops[t] << ',' << sent << ',' << received << '\n';
    }
  }
}

void write_timeline_csv(std::ostream& os, const BenchTrace& trace,
                        const std::string& run_id) {
  trace.check_conservation();
  os << "run_id,analytic,task,phase,start,compute_end,comm_end\n";
  std::int64_t barrier = 0;  // all tasks re-synchronize at each phase end
  for (std::size_t ph = 0; ph < trace.phases.size(); ++ph) {
    const PhaseTrace& phase = trace.phases[ph];
    std::int64_t next_barrier = barrier;
    for (int t = 0; t < trace.p; ++t) {
      std::int64_t comm = 0;
      for (int j = 0; j < trace.p; ++j)
        comm += phase.sent[t][j] + phase.received[t][j];
      std::int64_t compute_end = barrier + phase.compute_ops[t];
      std::int64_t comm_end = compute_end + comm;
      os << run_id << ',' << trace.analytic << ',' << t << ',' << ph << ','
         << barrier << ',' << compute_end << ',' << comm_end << '\n';
      next_barrier = std::max(next_barrier, comm_end);
    }
    barrier = next_barrier;
  }
}

}  // namespace glt
