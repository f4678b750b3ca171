// Copyright 2026 The transport Authors
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

#ifndef TRANSPORT_SRC_UNION_FIND_HPP_
#define TRANSPORT_SRC_UNION_FIND_HPP_

#include <numeric>
#include <vector>

namespace transport::internal {

class UnionFind {
 public:
  explicit UnionFind(int count) : parent_(count) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false when a and b were already connected.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

  std::vector<int>& parents() { return parent_; }

 private:
  std::vector<int> parent_;
};

}  // namespace transport::internal

#endif  // TRANSPORT_SRC_UNION_FIND_HPP_
