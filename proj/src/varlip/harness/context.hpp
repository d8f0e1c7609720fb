#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "varlip/exponents.hpp"
#include "varlip/grid.hpp"
#include "varlip/harness/config.hpp"
#include "varlip/harness/family.hpp"
#include "varlip/operators.hpp"

namespace varlip::harness {

// Everything a check needs, built once per run. Grids, systems and the
// configured symbol are validated at construction, so configuration errors
// surface before any check runs.
class Context {
 public:
  Context(Config cfg, std::uint64_t seed);

  const Config& config() const noexcept { return cfg_; }
  std::uint64_t seed() const noexcept { return seed_; }
  // Seed for one check, independent of which other checks run.
  std::uint64_t seed_for(std::string_view check_id) const noexcept;

  const Grid& main_grid() const noexcept { return main_; }
  const Grid& probe_grid() const noexcept { return probe_; }
  const ExponentSystem& main_system() const noexcept { return main_sys_; }
  const ExponentSystem& probe_system() const noexcept { return probe_sys_; }

  ExponentSystem system_on(const Grid& grid, double alpha) const;
  ExponentSystem system_on(const Grid& grid) const { return system_on(grid, cfg_.alpha); }
  VariableExponent exponent_on(const Grid& grid) const;
  GridFunction symbol_on(const Grid& grid) const;
  MaximalConfig schedule(const Grid& grid) const { return cfg_.schedule(grid); }

  const TestFamily& family(const Grid& grid);
  const std::vector<Symbol>& corpus(const Grid& grid);

  // Probe-grid caches shared by the domination checks.
  double corpus_lipschitz(std::size_t symbol);
  const GridFunction& corpus_maximal_commutator(std::size_t symbol, std::size_t member);
  const GridFunction& family_fractional_delta(std::size_t member);  // M_{alpha+delta} f
  const GridFunction& family_variable_delta(std::size_t member);    // M_{delta} f

  // Locations of the reports emitted so far in this run.
  std::vector<std::string>& emitted_locations() noexcept { return emitted_; }

 private:
  Config cfg_;
  std::uint64_t seed_;
  Grid main_;
  Grid probe_;
  ExponentSystem main_sys_;
  ExponentSystem probe_sys_;
  std::map<int, std::unique_ptr<TestFamily>> families_;
  std::map<int, std::unique_ptr<std::vector<Symbol>>> corpora_;
  std::map<std::size_t, double> lipschitz_;
  std::map<std::pair<std::size_t, std::size_t>, GridFunction> commutators_;
  std::map<std::size_t, GridFunction> frac_delta_;
  std::map<std::size_t, GridFunction> var_delta_;
  std::vector<std::string> emitted_;
};

}  // namespace varlip::harness
