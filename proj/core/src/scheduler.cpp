#include "freeiso/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "freeiso/error.hpp"

namespace freeiso {

namespace {

struct Turn {
  std::size_t steps = 0;
  StepStatus status = StepStatus::Running;
};

Turn run_turn(Procedure& p, std::size_t quantum) {
  Turn t;
  while (t.steps < quantum) {
    t.status = p.step();
    ++t.steps;
    if (t.status != StepStatus::Running) break;
  }
  return t;
}

}  // namespace

InterleaveResult run_interleaved(std::span<Procedure* const> procedures,
                                 std::size_t quantum, std::size_t workers,
                                 std::vector<std::size_t>* trace) {
  if (quantum == 0) throw PreconditionError("quantum must be at least 1");
  const std::size_t count = procedures.size();
  InterleaveResult result;
  std::vector<bool> finished(count, false);
  auto collect = [&](std::vector<BudgetReport> reports) {
    result.reports = std::move(reports);
    return result;
  };
  auto current_reports = [&] {
    std::vector<BudgetReport> r;
    for (auto* p : procedures) r.push_back(p->report());
    return r;
  };

  while (std::find(finished.begin(), finished.end(), false) != finished.end()) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < count; ++i) {
      if (!finished[i]) active.push_back(i);
    }
    if (workers <= 1 || active.size() == 1) {
      for (std::size_t i : active) {
        Turn t = run_turn(*procedures[i], quantum);
        result.steps += t.steps;
        if (trace) trace->insert(trace->end(), t.steps, i);
        if (t.status == StepStatus::Succeeded) {
          result.winner = i;
          return collect(current_reports());
        }
        if (t.status == StepStatus::Exhausted) finished[i] = true;
      }
      continue;
    }

    std::vector<BudgetReport> before = current_reports();
    std::vector<Turn> turns(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k = next++; k < active.size(); k = next++) {
        turns[active[k]] = run_turn(*procedures[active[k]], quantum);
      }
    };
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, active.size()); ++w) {
      pool.emplace_back(worker);
    }
    pool.clear();

    for (std::size_t i : active) {
      const Turn& t = turns[i];
      result.steps += t.steps;
      if (trace) trace->insert(trace->end(), t.steps, i);
      if (t.status == StepStatus::Succeeded) {
        result.winner = i;
        std::vector<BudgetReport> reports = current_reports();
        for (std::size_t j = i + 1; j < count; ++j) reports[j] = before[j];
        return collect(std::move(reports));
      }
      if (t.status == StepStatus::Exhausted) finished[i] = true;
    }
  }
  return collect(current_reports());
}

Interleaver::Interleaver(std::vector<Procedure*> procedures, std::size_t quantum)
    : procedures_(std::move(procedures)),
      finished_(procedures_.size(), false),
      quantum_(quantum) {
  if (quantum_ == 0) throw PreconditionError("quantum must be at least 1");
  if (procedures_.empty()) status_ = StepStatus::Exhausted;
}

void Interleaver::advance_turn() {
  used_ = 0;
  for (std::size_t k = 1; k <= procedures_.size(); ++k) {
    std::size_t i = (current_ + k) % procedures_.size();
    if (!finished_[i]) {
      current_ = i;
      return;
    }
  }
  status_ = StepStatus::Exhausted;
}

StepStatus Interleaver::step() {
  if (status_ != StepStatus::Running) return status_;
  StepStatus s = procedures_[current_]->step();
  ++steps_;
  ++used_;
  if (s == StepStatus::Succeeded) {
    winner_ = current_;
    status_ = StepStatus::Succeeded;
  } else if (s == StepStatus::Exhausted) {
    finished_[current_] = true;
    advance_turn();
  } else if (used_ == quantum_) {
    advance_turn();
  }
  return status_;
}

BudgetReport Interleaver::report() const {
  BudgetReport r;
  for (auto* p : procedures_) r += p->report();
  r.scheduler_steps += steps_;
  return r;
}

}  // namespace freeiso
