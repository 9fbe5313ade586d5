#include "gbl/kernel.hpp"

#include <algorithm>

namespace gbl {

ArrId EqEngine::find(ArrId x) {
    auto it = parent_.find(x);
    if (it == parent_.end() || it->second == x) return x;
    ArrId r = find(it->second);
    parent_[x] = r;
    return r;
}

void EqEngine::unite(ArrId a, ArrId b) {
    ArrId ra = find(a);
    ArrId rb = find(b);
    if (ra == rb) return;
    if (ra > rb) std::swap(ra, rb);
    parent_[rb] = ra;
}

void EqEngine::enqueue_term(ArrId t) {
    if (term_set_.count(t)) return;
    if (terms_.size() >= max_terms_ || u_->arr(t).steps.size() > max_len_) {
        budget_hit_ = true;
        return;
    }
    term_set_.insert(t);
    terms_.push_back(t);
    new_terms_.push_back(t);
}

void EqEngine::register_term(ArrId t) {
    enqueue_term(t);
    saturate();
}

void EqEngine::add_fact(ArrId a, ArrId b) {
    const ArrTermData& ta = u_->arr(a);
    const ArrTermData& tb = u_->arr(b);
    if (ta.src != tb.src || ta.tgt != tb.tgt) throw error("fact: terms are not parallel");
    enqueue_term(a);
    enqueue_term(b);
    unite(a, b);
    if (!ta.steps.empty()) {
        rules_.push_back({a, b});
        new_rules_.push_back(rules_.size() - 1);
    }
    if (!tb.steps.empty()) {
        rules_.push_back({b, a});
        new_rules_.push_back(rules_.size() - 1);
    }
    saturate();
}

void EqEngine::apply_rule_to_term(std::size_t rule_idx, ArrId t) {
    const Rw rw = rules_[rule_idx];
    // copies: interning below may reallocate the term pool
    const std::vector<StepId> lhs = u_->arr(rw.lhs).steps;
    const std::vector<StepId> rhs = u_->arr(rw.rhs).steps;
    const std::vector<StepId> cur = u_->arr(t).steps;
    const ObId src = u_->arr(t).src;
    const ObId tgt = u_->arr(t).tgt;
    const std::size_t n = cur.size();
    const std::size_t m = lhs.size();
    if (m == 0 || m > n) return;
    for (std::size_t i = 0; i + m <= n; ++i) {
        bool match = true;
        for (std::size_t k = 0; k < m; ++k)
            if (cur[i + k] != lhs[k]) {
                match = false;
                break;
            }
        if (!match) continue;
        // endpoints of the segment agree with lhs by step identity
        std::vector<StepId> steps;
        steps.reserve(n - m + rhs.size());
        steps.insert(steps.end(), cur.begin(), cur.begin() + i);
        steps.insert(steps.end(), rhs.begin(), rhs.end());
        steps.insert(steps.end(), cur.begin() + i + m, cur.end());
        ArrId nt = u_->intern_arr(src, tgt, std::move(steps));
        enqueue_term(nt);
        if (term_set_.count(nt)) unite(t, nt);
    }
}

void EqEngine::saturate() {
    while (!new_rules_.empty() || !new_terms_.empty()) {
        if (!new_rules_.empty()) {
            std::size_t r = new_rules_.front();
            new_rules_.pop_front();
            // scan a snapshot; newly created terms get their own pass
            std::size_t upto = terms_.size();
            for (std::size_t i = 0; i < upto; ++i) apply_rule_to_term(r, terms_[i]);
            continue;
        }
        ArrId t = new_terms_.front();
        new_terms_.pop_front();
        for (std::size_t r = 0; r < rules_.size(); ++r) apply_rule_to_term(r, t);
    }
}

bool EqEngine::equal(ArrId a, ArrId b) {
    enqueue_term(a);
    enqueue_term(b);
    saturate();
    return find(a) == find(b);
}

} // namespace gbl
