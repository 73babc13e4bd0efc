#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "freeiso/budget.hpp"

namespace freeiso {

enum class StepStatus { Running, Succeeded, Exhausted };

// A semi-decision procedure that advances in small resumable units.
// Once step() returns Succeeded or Exhausted it keeps returning that value.
class Procedure {
 public:
  virtual ~Procedure() = default;
  virtual StepStatus step() = 0;
  virtual BudgetReport report() const = 0;
};

struct InterleaveResult {
  std::optional<std::size_t> winner;  // nullopt: every procedure exhausted
  std::vector<BudgetReport> reports;  // per procedure
  std::size_t steps = 0;
};

// Round-robin dovetailing, `quantum` steps per procedure per turn. When a
// procedure succeeds the run stops; within a round the lowest index wins.
// With workers > 1 the procedures of a round run concurrently; reports of
// procedures after the winner are taken from before that round, so the
// result matches the single-threaded schedule exactly.
InterleaveResult run_interleaved(std::span<Procedure* const> procedures,
                                 std::size_t quantum, std::size_t workers = 1,
                                 std::vector<std::size_t>* trace = nullptr);

// The single-threaded schedule as a Procedure: each step() advances the
// current procedure by one unit.
class Interleaver : public Procedure {
 public:
  Interleaver(std::vector<Procedure*> procedures, std::size_t quantum);

  StepStatus step() override;
  BudgetReport report() const override;

  std::optional<std::size_t> winner() const { return winner_; }
  std::size_t steps() const { return steps_; }

 private:
  void advance_turn();

  std::vector<Procedure*> procedures_;
  std::vector<bool> finished_;
  std::size_t quantum_;
  std::size_t current_ = 0;
  std::size_t used_ = 0;
  std::size_t steps_ = 0;
  std::optional<std::size_t> winner_;
  StepStatus status_ = StepStatus::Running;
};

}  // namespace freeiso
