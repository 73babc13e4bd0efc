#include "common.hpp"
#include "freeiso/scheduler.hpp"

namespace {

// Succeeds at step `succeed_at` (1-based), or exhausts after `limit` steps.
class Counter : public Procedure {
 public:
  Counter(std::size_t id, std::size_t succeed_at, std::size_t limit, std::vector<std::size_t>* log)
      : id_(id), succeed_at_(succeed_at), limit_(limit), log_(log) {}

  StepStatus step() override {
    if (status_ != StepStatus::Running) return status_;
    ++steps_;
    if (log_) log_->push_back(id_);
    if (steps_ == succeed_at_) status_ = StepStatus::Succeeded;
    else if (steps_ >= limit_) status_ = StepStatus::Exhausted;
    return status_;
  }
  BudgetReport report() const override {
    BudgetReport r;
    r.words_enumerated = steps_;
    return r;
  }

 private:
  std::size_t id_, succeed_at_, limit_;
  std::vector<std::size_t>* log_;
  std::size_t steps_ = 0;
  StepStatus status_ = StepStatus::Running;
};

}  // namespace

TEST_CASE("first success stops the run") {
  Counter a(0, 3, 100, nullptr), b(1, 0, 100, nullptr);
  std::vector<Procedure*> procs{&a, &b};
  std::vector<std::size_t> trace;
  InterleaveResult r = run_interleaved(procs, 1, 1, &trace);
  REQUIRE(r.winner);
  CHECK(*r.winner == 0);
  CHECK(r.reports[0].words_enumerated == 3);
  CHECK(r.reports[1].words_enumerated == 2);
  CHECK(trace == std::vector<std::size_t>{0, 1, 0, 1, 0});
}

TEST_CASE("all exhausted") {
  Counter a(0, 0, 2, nullptr), b(1, 0, 5, nullptr);
  std::vector<Procedure*> procs{&a, &b};
  InterleaveResult r = run_interleaved(procs, 2);
  CHECK_FALSE(r.winner);
  CHECK(r.reports[0].words_enumerated == 2);
  CHECK(r.reports[1].words_enumerated == 5);
  CHECK(r.steps == 7);
}

TEST_CASE("lowest index wins within a round") {
  Counter a(0, 5, 10, nullptr), b(1, 1, 10, nullptr), c(2, 1, 10, nullptr);
  std::vector<Procedure*> procs{&a, &b, &c};
  CHECK(*run_interleaved(procs, 2).winner == 1);
}

TEST_CASE("parallel rounds match the sequential schedule") {
  for (std::size_t workers : {1u, 2u, 4u}) {
    Counter a(0, 0, 7, nullptr), b(1, 9, 50, nullptr), c(2, 4, 50, nullptr), d(3, 0, 3, nullptr);
    std::vector<Procedure*> procs{&a, &b, &c, &d};
    InterleaveResult r = run_interleaved(procs, 3, workers);
    REQUIRE(r.winner);
    CHECK(*r.winner == 2);
    CHECK(r.reports[0].words_enumerated == 6);
    CHECK(r.reports[1].words_enumerated == 6);
    CHECK(r.reports[2].words_enumerated == 4);
    CHECK(r.reports[3].words_enumerated == 3);
  }
}

TEST_CASE("interleaver as a procedure") {
  std::vector<std::size_t> log;
  Counter a(0, 0, 2, &log), b(1, 3, 10, &log);
  Interleaver il({&a, &b}, 1);
  StepStatus s;
  while ((s = il.step()) == StepStatus::Running) {
  }
  CHECK(s == StepStatus::Succeeded);
  CHECK(*il.winner() == 1);
  CHECK(log == std::vector<std::size_t>{0, 1, 0, 1, 1});
  CHECK(il.report().words_enumerated == 5);
  CHECK(il.step() == StepStatus::Succeeded);
}
