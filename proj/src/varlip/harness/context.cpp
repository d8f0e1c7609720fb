#include "varlip/harness/context.hpp"

#include "varlip/commutators.hpp"
#include "varlip/lipschitz.hpp"

namespace varlip::harness {

Context::Context(Config cfg, std::uint64_t seed)
    : cfg_(std::move(cfg)),
      seed_(seed),
      main_(cfg_.main_grid()),
      probe_(cfg_.probe_grid()),
      main_sys_(system_on(main_)),
      probe_sys_(system_on(probe_)) {
  symbol_on(main_);
  cfg_.schedule(main_);
  cfg_.schedule(probe_);
}

std::uint64_t Context::seed_for(std::string_view check_id) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : check_id) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return seed_ ^ h;
}

VariableExponent Context::exponent_on(const Grid& grid) const {
  return builtin_exponent(grid, cfg_.exponent.family, cfg_.exponent.params);
}

ExponentSystem Context::system_on(const Grid& grid, double alpha) const {
  const VariableExponent p = exponent_on(grid);
  const VariableExponent r = builtin_exponent(grid, cfg_.r_exponent.family, cfg_.r_exponent.params);
  return ExponentSystem::make(p, cfg_.beta, alpha, r);
}

GridFunction Context::symbol_on(const Grid& grid) const {
  return builtin_symbol(grid, cfg_.symbol.family, cfg_.symbol.params);
}

const TestFamily& Context::family(const Grid& grid) {
  auto& slot = families_[grid.dim() * 1000000 + grid.cells_per_axis()];
  if (!slot) slot = std::make_unique<TestFamily>(make_test_family(grid, seed_));
  return *slot;
}

const std::vector<Symbol>& Context::corpus(const Grid& grid) {
  auto& slot = corpora_[grid.dim() * 1000000 + grid.cells_per_axis()];
  if (!slot) slot = std::make_unique<std::vector<Symbol>>(symbol_corpus(grid, seed_));
  return *slot;
}

double Context::corpus_lipschitz(std::size_t symbol) {
  auto it = lipschitz_.find(symbol);
  if (it == lipschitz_.end()) {
    const double norm =
        pointwise_lipschitz_norm(corpus(probe_)[symbol].values, probe_sys_.delta()).norm;
    it = lipschitz_.emplace(symbol, norm).first;
  }
  return it->second;
}

const GridFunction& Context::corpus_maximal_commutator(std::size_t symbol, std::size_t member) {
  const auto key = std::make_pair(symbol, member);
  auto it = commutators_.find(key);
  if (it == commutators_.end()) {
    GridFunction v = maximal_commutator(corpus(probe_)[symbol].values, family(probe_).members[member],
                                        cfg_.alpha, schedule(probe_));
    it = commutators_.emplace(key, std::move(v)).first;
  }
  return it->second;
}

const GridFunction& Context::family_fractional_delta(std::size_t member) {
  auto it = frac_delta_.find(member);
  if (it == frac_delta_.end()) {
    GridFunction v = variable_fractional_maximal(family(probe_).members[member],
                                                 probe_sys_.delta().shifted(cfg_.alpha),
                                                 schedule(probe_));
    it = frac_delta_.emplace(member, std::move(v)).first;
  }
  return it->second;
}

const GridFunction& Context::family_variable_delta(std::size_t member) {
  auto it = var_delta_.find(member);
  if (it == var_delta_.end()) {
    GridFunction v = variable_fractional_maximal(family(probe_).members[member], probe_sys_.delta(),
                                                 schedule(probe_));
    it = var_delta_.emplace(member, std::move(v)).first;
  }
  return it->second;
}

}  // namespace varlip::harness
