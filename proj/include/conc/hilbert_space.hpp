#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace conc {

// Ordered list of local dimensions. Basis indices are row-major over the factors:
// the last factor varies fastest.
class HilbertSpace {
 public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<int> factor_dims);
  HilbertSpace(std::initializer_list<int> factor_dims)
      : HilbertSpace(std::vector<int>(factor_dims)) {}

  const std::vector<int>& factor_dims() const { return dims_; }
  int factor_dim(std::size_t k) const { return dims_.at(k); }
  std::size_t num_factors() const { return dims_.size(); }
  int total_dim() const { return total_; }
  bool is_bipartite() const { return dims_.size() == 2; }

  // Space with factors of `other` appended.
  HilbertSpace concat(const HilbertSpace& other) const;
  // Space made of the listed factors, in the listed order.
  HilbertSpace select(std::span<const int> factors) const;

  std::string to_string() const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

}  // namespace conc
