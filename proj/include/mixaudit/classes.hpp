#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mixaudit/model_config.hpp"

namespace mixaudit {

// Class occupancy pattern: per-class counts of nonempty components,
// canonical form drops trailing zeros.
using Pattern = std::vector<int>;

Pattern canonical(Pattern h);

// Assignment of components 1..K to equivalence classes of "alike"
// components.  Class ids are 1-based and contiguous in order of first
// appearance.
class ClassStructure {
  public:
    explicit ClassStructure(std::vector<int> class_of);

    static ClassStructure all_alike(int K);
    static ClassStructure all_distinct(int K);

    int components() const { return static_cast<int>(class_of_.size()); }
    int class_of(int component) const;  // 1-based
    // N(t): number of classes among components 1..t
    int num_classes(int t) const;
    // i(t): class of component t
    int class_index(int t) const { return class_of(t); }
    // c(m, t): components of class m with index <= t
    int capacity(int m, int t) const;
    int total_capacity(int m) const;  // c(m)

  private:
    std::vector<int> class_of_;                 // index 0 -> component 1
    std::vector<std::vector<int>> cap_prefix_;  // cap_prefix_[m-1][t] = c(m, t)
};

// s(h): smallest r with c(m, r) >= h_m for all m.
int s_of_h(const Pattern& h, const ClassStructure& cs);

// gamma_h^t: number of membership-vector subsets alike to E_h, 0 when h is
// not an occupancy pattern reachable at t.
double gamma_h_t(const Pattern& h, int t, const ClassStructure& cs);

// All h reachable at t (H_t), optionally restricted to {h : s(h) = r}.
std::vector<Pattern> enumerate_H(int t, const ClassStructure& cs, int n,
                                 std::optional<int> r = std::nullopt);

// gamma_h^{r,k} = (1/gamma_h^r) * sum_{t=r}^k gamma_h^t, r = s(h).
double gamma_h_rk(const Pattern& h, int r, int k, const ClassStructure& cs);

// f_k = sum_r a_{kr} sum_{h in H_r^k} gamma_h^{r,k} f_h^dagger.
double represent_fk(const std::map<Pattern, double>& fdagger_by_pattern, int k,
                    const ClassStructure& cs, const ModelConfig& config);

// The same value via the recursion f_k = a_{k,k-1} f_{k-1} + correction.
double represent_fk_recursive(const std::map<Pattern, double>& fdagger_by_pattern, int k,
                              const ClassStructure& cs, const ModelConfig& config);

}  // namespace mixaudit
