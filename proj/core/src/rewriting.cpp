#include "freeiso/rewriting.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <sstream>

#include "freeiso/error.hpp"

namespace freeiso {

LetterString to_letter_string(const Word& w) {
  return LetterString(w.letters().begin(), w.letters().end());
}

namespace {

bool ends_with(const LetterString& s, const LetterString& suffix) {
  return suffix.size() <= s.size()
         && std::equal(suffix.begin(), suffix.end(), s.end() - suffix.size());
}

bool contains_factor(const LetterString& s, const LetterString& factor) {
  return std::search(s.begin(), s.end(), factor.begin(), factor.end()) != s.end();
}

Word as_word(const LetterString& s) { return Word::reduce(s); }

LetterString concat3(const LetterString& a, const LetterString& b,
                     const LetterString& c) {
  LetterString out = a;
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

// Rewrites with the first rule (in list order) whose lhs ends at the earliest
// position. When `p` is given, also assembles the proof s * nf^-1.
struct RewriteOutcome {
  LetterString normal_form;
  ConjugateProduct proof;
};

std::optional<RewriteOutcome> rewrite(const std::vector<RewriteRule>& rules,
                                      const LetterString& s,
                                      std::size_t max_steps,
                                      const Presentation* p) {
  RewriteOutcome out;
  LetterString& done = out.normal_form;
  LetterString pending(s.rbegin(), s.rend());
  std::size_t steps = 0;
  while (!pending.empty()) {
    done.push_back(pending.back());
    pending.pop_back();
    for (const RewriteRule& r : rules) {
      if (!ends_with(done, r.lhs)) continue;
      if (++steps > max_steps) return std::nullopt;
      done.resize(done.size() - r.lhs.size());
      if (p != nullptr) {
        out.proof = multiply(out.proof, conjugate(*p, *r.proof, as_word(done)));
      }
      pending.insert(pending.end(), r.rhs.rbegin(), r.rhs.rend());
      break;
    }
  }
  return out;
}

}  // namespace

RewritingSystem::RewritingSystem(std::size_t num_generators,
                                 std::vector<Letter> order,
                                 std::vector<RewriteRule> rules)
    : num_generators_(num_generators), order_(std::move(order)) {
  if (order_.size() != 2 * num_generators_) {
    throw PreconditionError("rewriting system: letter order must list all "
                            + std::to_string(2 * num_generators_) + " letters");
  }
  rank_of_code_.assign(2 * num_generators_, SIZE_MAX);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    std::uint32_t c = order_[i].code();
    if (c >= rank_of_code_.size() || rank_of_code_[c] != SIZE_MAX) {
      throw PreconditionError("rewriting system: letter order is not a permutation");
    }
    rank_of_code_[c] = i;
  }
  for (const RewriteRule& r : rules) {
    for (const LetterString* side : {&r.lhs, &r.rhs}) {
      for (Letter l : *side) {
        if (l.gen() >= num_generators_) {
          throw RankMismatch("rewriting rule uses an unknown generator");
        }
      }
    }
    if (r.lhs.empty()) {
      throw PreconditionError("rewriting rule has empty left-hand side");
    }
    if (!less(r.rhs, r.lhs)) {
      throw PreconditionError("rewriting rule is not shortlex-decreasing");
    }
  }
  rules_ = std::move(rules);
}

std::vector<Letter> RewritingSystem::default_order(std::size_t num_generators) {
  std::vector<Letter> order;
  for (std::uint32_t c = 0; c < 2 * num_generators; ++c) {
    order.push_back(Letter::from_code(c));
  }
  return order;
}

bool RewritingSystem::has_proofs() const {
  return std::all_of(rules_.begin(), rules_.end(),
                     [](const RewriteRule& r) { return r.proof.has_value(); });
}

bool RewritingSystem::less(const LetterString& a, const LetterString& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t ra = rank_of_code_[a[i].code()];
    std::size_t rb = rank_of_code_[b[i].code()];
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::string RewritingSystem::id() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(num_generators_);
  for (Letter l : order_) mix(l.code());
  for (const RewriteRule& r : rules_) {
    mix(0xFFFF);
    for (Letter l : r.lhs) mix(l.code() + 1);
    mix(0xFFFE);
    for (Letter l : r.rhs) mix(l.code() + 1);
  }
  std::ostringstream os;
  os << "rs:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::optional<LetterString> RewritingSystem::normal_form(
    const LetterString& s, std::size_t max_steps) const {
  auto r = rewrite(rules_, s, max_steps, nullptr);
  if (!r) return std::nullopt;
  return std::move(r->normal_form);
}

std::optional<RewritingSystem::Trace> RewritingSystem::normal_form_with_proof(
    const Presentation& p, const LetterString& s, std::size_t max_steps) const {
  if (!has_proofs()) {
    throw PreconditionError("normal_form_with_proof: rules carry no proofs");
  }
  auto r = rewrite(rules_, s, max_steps, &p);
  if (!r) return std::nullopt;
  return Trace{std::move(r->normal_form), std::move(r->proof)};
}

RewritingSystem RewritingSystem::with_rules(std::vector<RewriteRule> rules) const {
  return RewritingSystem(num_generators_, order_, std::move(rules));
}

namespace {

struct CriticalPair {
  LetterString overlap;
  LetterString left;   // rewritten with the first rule
  LetterString right;  // rewritten with the second rule
  std::size_t first;
  std::size_t second;
  LetterString prefix;  // x in the derivation P1^-1 * x P2 x^-1
};

// Overlaps (suffix of lhs1 = prefix of lhs2) and containments (lhs2 inside
// lhs1) between rules i and k.
std::vector<CriticalPair> critical_pairs(const std::vector<RewriteRule>& rules,
                                         std::size_t i, std::size_t k) {
  std::vector<CriticalPair> out;
  const LetterString& l1 = rules[i].lhs;
  const LetterString& l2 = rules[k].lhs;
  for (std::size_t len = 1; len < std::min(l1.size(), l2.size()); ++len) {
    if (!std::equal(l1.end() - len, l1.end(), l2.begin())) continue;
    LetterString x(l1.begin(), l1.end() - len);
    LetterString z(l2.begin() + len, l2.end());
    out.push_back({concat3(l1, z, {}), concat3(rules[i].rhs, z, {}),
                   concat3(x, rules[k].rhs, {}), i, k, x});
  }
  if (i != k && l2.size() <= l1.size()) {
    for (std::size_t pos = 0; pos + l2.size() <= l1.size(); ++pos) {
      if (!std::equal(l2.begin(), l2.end(), l1.begin() + pos)) continue;
      LetterString x(l1.begin(), l1.begin() + pos);
      LetterString z(l1.begin() + pos + l2.size(), l1.end());
      out.push_back({l1, rules[i].rhs, concat3(x, rules[k].rhs, z), i, k, x});
    }
  }
  return out;
}

}  // namespace

ConfluenceResult check_confluence(const RewritingSystem& rs, const Budget& b) {
  const auto& rules = rs.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t k = 0; k < rules.size(); ++k) {
      for (const CriticalPair& cp : critical_pairs(rules, i, k)) {
        auto l = rs.normal_form(cp.left, b.max_rewrite_steps);
        auto r = rs.normal_form(cp.right, b.max_rewrite_steps);
        if (!l || !r) {
          return {ConfluenceResult::Status::Unknown, {}, {}, {}};
        }
        if (*l != *r) {
          return {ConfluenceResult::Status::CriticalPairFailure, cp.overlap, *l, *r};
        }
      }
    }
  }
  return {ConfluenceResult::Status::Confluent, {}, {}, {}};
}

namespace {

struct Equation {
  LetterString u;
  LetterString v;
  ConjugateProduct proof;  // evaluates to u * v^-1
};

class Completion {
 public:
  Completion(const Presentation& p, const Budget& b) : p_(p), b_(b) {
    order_ = RewritingSystem::default_order(p.num_generators());
  }

  CompletionResult run() {
    CompletionResult result;
    for (GeneratorId g = 0; g < p_.num_generators(); ++g) {
      Letter x(g, 1);
      queue_.push_back({{x, x.inverse()}, {}, {}});
      queue_.push_back({{x.inverse(), x}, {}, {}});
    }
    for (std::size_t j = 0; j < p_.num_relators(); ++j) {
      queue_.push_back({to_letter_string(p_.relator(j)), {},
                        ConjugateProduct{{ConjugateTerm{Word(), j, 1}}}});
    }
    while (!queue_.empty()) {
      Equation eq = std::move(queue_.front());
      queue_.pop_front();
      auto u = rewrite(rules_, eq.u, b_.max_rewrite_steps, &p_);
      auto v = rewrite(rules_, eq.v, b_.max_rewrite_steps, &p_);
      if (!u || !v) {
        result.stop_reason = "rewrite step limit exceeded";
        return result;
      }
      if (u->normal_form == v->normal_form) continue;
      ConjugateProduct proof =
          multiply(multiply(inverse(u->proof), eq.proof), v->proof);
      RewriteRule rule{u->normal_form, v->normal_form, std::move(proof)};
      if (less(rule.lhs, rule.rhs)) {
        std::swap(rule.lhs, rule.rhs);
        rule.proof = inverse(*rule.proof);
      }
      if (rule.lhs.size() > b_.kb_max_rule_length) {
        result.stop_reason = "rule length limit exceeded";
        return result;
      }
      if (!add_rule(std::move(rule))) {
        result.stop_reason = "rewrite step limit exceeded";
        return result;
      }
      ++result.rules_added;
      if (rules_.size() > b_.kb_max_rules) {
        result.stop_reason = "rule count limit exceeded";
        return result;
      }
    }
    std::sort(rules_.begin(), rules_.end(),
              [this](const RewriteRule& a, const RewriteRule& b) {
                return less(a.lhs, b.lhs);
              });
    result.system = RewritingSystem(p_.num_generators(), order_, std::move(rules_));
    return result;
  }

 private:
  bool less(const LetterString& a, const LetterString& b) const {
    return shortlex_less(a, b);
  }

  bool add_rule(RewriteRule rule) {
    std::vector<RewriteRule> kept;
    std::vector<RewriteRule> with_new = rules_;
    with_new.push_back(rule);
    for (RewriteRule& q : rules_) {
      if (contains_factor(q.lhs, rule.lhs)) {
        queue_.push_back({q.lhs, q.rhs, *q.proof});
        continue;
      }
      if (contains_factor(q.rhs, rule.lhs)) {
        auto nf = rewrite(with_new, q.rhs, b_.max_rewrite_steps, &p_);
        if (!nf) return false;
        q.proof = multiply(*q.proof, nf->proof);
        q.rhs = std::move(nf->normal_form);
      }
      kept.push_back(std::move(q));
    }
    kept.push_back(std::move(rule));
    rules_ = std::move(kept);
    const std::size_t fresh = rules_.size() - 1;
    for (std::size_t k = 0; k < rules_.size(); ++k) {
      push_pairs(fresh, k);
      if (k != fresh) push_pairs(k, fresh);
    }
    return true;
  }

  void push_pairs(std::size_t i, std::size_t k) {
    for (CriticalPair& cp : critical_pairs(rules_, i, k)) {
      // left * right^-1 = P_i^-1 * x P_k x^-1
      ConjugateProduct proof =
          multiply(inverse(*rules_[i].proof),
                   conjugate(p_, *rules_[k].proof, as_word(cp.prefix)));
      queue_.push_back({std::move(cp.left), std::move(cp.right), std::move(proof)});
    }
  }

  const Presentation& p_;
  const Budget& b_;
  std::vector<Letter> order_;
  std::vector<RewriteRule> rules_;
  std::deque<Equation> queue_;
};

}  // namespace

CompletionResult knuth_bendix(const Presentation& p, const Budget& b) {
  return Completion(p, b).run();
}

}  // namespace freeiso
