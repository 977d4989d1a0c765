// Copyright 2026 The hfroots Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hfroots/groebner.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "hfroots/errors.hpp"

namespace hfroots {

namespace {

using OrderedTerms = std::map<Monomial, Rational, OrderLess>;

OrderedTerms ordered_copy(const Polynomial& p, const MonomialOrder& order) {
  OrderedTerms out(OrderLess{&order});
  for (const auto& [m, c] : p.terms()) out.emplace(m, c);
  return out;
}

void accumulate(OrderedTerms& acc, const Monomial& m, const Rational& c) {
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

struct Lead {
  Monomial monomial;
  Rational coefficient;
};

std::vector<Lead> leads_of(std::span<const Polynomial> basis, const MonomialOrder& order) {
  std::vector<Lead> leads;
  leads.reserve(basis.size());
  for (const auto& f : basis) {
    if (f.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    auto [m, c] = leading_term(f, order);
    leads.push_back({std::move(m), std::move(c)});
  }
  return leads;
}

// Core division loop; quotients are filled only when `quotients` is non-null.
Polynomial divide(const Polynomial& p, std::span<const Polynomial> basis, const MonomialOrder& order,
                  std::vector<Polynomial>* quotients) {
  const auto leads = leads_of(basis, order);
  OrderedTerms work = ordered_copy(p, order);
  Polynomial remainder(p.ring());
  while (!work.empty()) {
    const auto top = std::prev(work.end());
    const Monomial m = top->first;
    const Rational c = top->second;
    std::size_t k = 0;
    while (k < basis.size() && !leads[k].monomial.divides(m)) ++k;
    if (k == basis.size()) {
      remainder.add_term(m, c);
      work.erase(top);
      continue;
    }
    const Monomial shift = m / leads[k].monomial;
    const Rational factor = c / leads[k].coefficient;
    if (quotients != nullptr) (*quotients)[k].add_term(shift, factor);
    for (const auto& [fm, fc] : basis[k].terms()) accumulate(work, fm * shift, -(fc * factor));
  }
  return remainder;
}

struct CriticalPair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  std::uint32_t degree;
};

}  // namespace

Ideal::Ideal(std::vector<Polynomial> generators, MonomialOrder order)
    : generators_(std::move(generators)), order_(std::move(order)) {
  if (generators_.empty()) throw std::invalid_argument("ideal needs at least one generator");
  const Ring& ring = generators_.front().ring();
  if (order_.precedence().size() != ring.size()) {
    throw RingError("monomial order does not match the ring size");
  }
  for (const auto& g : generators_) {
    if (!(g.ring() == ring)) throw RingError("ideal generators belong to different rings");
    if (g.is_zero()) throw std::invalid_argument("ideal generators must be nonzero");
  }
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  out.reserve(elements_.size());
  for (const auto& g : elements_) out.push_back(leading_monomial(g, order_));
  return out;
}

Division reduce(const Polynomial& p, std::span<const Polynomial> basis, const MonomialOrder& order) {
  Division d;
  d.quotients.assign(basis.size(), Polynomial(p.ring()));
  d.remainder = divide(p, basis, order, &d.quotients);
  return d;
}

Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> basis, const MonomialOrder& order) {
  return divide(p, basis, order, nullptr);
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("s-polynomial of a zero polynomial");
  if (!(f.ring() == g.ring())) throw RingError("s-polynomial operands belong to different rings");
  const auto [mf, cf] = leading_term(f, order);
  const auto [mg, cg] = leading_term(g, order);
  const Monomial l = lcm(mf, mg);
  return f.mul_term(l / mf, Rational(1) / cf) - g.mul_term(l / mg, Rational(1) / cg);
}

Polynomial make_monic(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / leading_term(p, order).second);
}

std::vector<Polynomial> reduce_basis(std::vector<Polynomial> basis, const MonomialOrder& order) {
  std::erase_if(basis, [](const Polynomial& p) { return p.is_zero(); });
  for (auto& g : basis) g = make_monic(g, order);

  // Drop elements whose leading monomial is a multiple of another's.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Monomial mi = leading_monomial(basis[i], order);
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial mj = leading_monomial(basis[j], order);
      // Equal leading monomials: keep the earliest copy.
      redundant = mj.divides(mi) && (mj != mi || j < i);
    }
    if (!redundant) minimal.push_back(basis[i]);
  }

  std::vector<Polynomial> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    const auto [m, c] = leading_term(minimal[i], order);
    Polynomial tail = minimal[i] - Polynomial::term(minimal[i].ring(), m, c);
    Polynomial g = normal_form(tail, others, order);
    g.add_term(m, c);
    reduced.push_back(make_monic(g, order));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.less(leading_monomial(a, order), leading_monomial(b, order));
  });
  return reduced;
}

GroebnerBasis buchberger(const Ideal& ideal, const BuchbergerLimits& limits, BuchbergerStats* stats) {
  const MonomialOrder& order = ideal.order();
  BuchbergerStats local;
  BuchbergerStats& st = stats != nullptr ? *stats : local;

  std::vector<Polynomial> basis;
  std::vector<Monomial> leads;
  std::vector<CriticalPair> pairs;

  auto add_element = [&](Polynomial p) {
    p = make_monic(p, order);
    if (p.total_degree() > limits.max_total_degree) {
      throw ResourceLimitExceeded("Groebner basis element exceeds total degree cap of " +
                                  std::to_string(limits.max_total_degree));
    }
    const Monomial lm = leading_monomial(p, order);
    const std::size_t j = basis.size();
    for (std::size_t i = 0; i < j; ++i) {
      Monomial l = lcm(leads[i], lm);
      const auto d = l.degree();
      pairs.push_back({i, j, std::move(l), d});
    }
    basis.push_back(std::move(p));
    leads.push_back(lm);
  };

  for (const auto& g : ideal.generators()) {
    Polynomial r = normal_form(g, basis, order);
    if (!r.is_zero()) add_element(std::move(r));
  }

  while (!pairs.empty()) {
    // Normal selection strategy: smallest lcm first, ties by insertion.
    auto best = pairs.begin();
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      if (it->degree < best->degree ||
          (it->degree == best->degree && order.less(it->lcm, best->lcm))) {
        best = it;
      }
    }
    const CriticalPair pair = *best;
    pairs.erase(best);
    ++st.pairs_considered;

    if (coprime(leads[pair.i], leads[pair.j])) {
      ++st.pairs_skipped_coprime;
      continue;
    }
    if (++st.pairs_reduced > limits.max_pair_reductions) {
      throw ResourceLimitExceeded("Buchberger pair-reduction cap of " +
                                  std::to_string(limits.max_pair_reductions) + " exceeded");
    }
    Polynomial r = normal_form(s_polynomial(basis[pair.i], basis[pair.j], order), basis, order);
    if (r.is_zero()) {
      ++st.zero_reductions;
      continue;
    }
    add_element(std::move(r));
  }

  return GroebnerBasis(reduce_basis(std::move(basis), order), order, true);
}

bool satisfies_buchberger_criterion(std::span<const Polynomial> basis, const MonomialOrder& order) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!normal_form(s_polynomial(basis[i], basis[j], order), basis, order).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace hfroots
