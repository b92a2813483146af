#pragma once

#include <vector>

namespace sscd {

// Node -> community assignment; labels[i] lies in 0..k-1.
struct Partition {
  std::vector<int> labels;
  int k = 0;
};

}  // namespace sscd
