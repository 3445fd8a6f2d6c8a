// Copyright 2026 The Authors.
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

#include "ivlab/bipartite_matching.h"

#include <functional>

namespace ivlab {

std::vector<int> MaxBipartiteMatching(int num_left, int num_right,
                                      const std::vector<std::vector<int>>& adjacency) {
  std::vector<int> match_of_left(static_cast<size_t>(num_left), -1);
  std::vector<int> match_of_right(static_cast<size_t>(num_right), -1);
  std::vector<char> visited(static_cast<size_t>(num_right));

  std::function<bool(int)> augment = [&](int u) {
    for (int v : adjacency[static_cast<size_t>(u)]) {
      if (visited[static_cast<size_t>(v)]) continue;
      visited[static_cast<size_t>(v)] = 1;
      int owner = match_of_right[static_cast<size_t>(v)];
      if (owner < 0 || augment(owner)) {
        match_of_left[static_cast<size_t>(u)] = v;
        match_of_right[static_cast<size_t>(v)] = u;
        return true;
      }
    }
    return false;
  };

  for (int u = 0; u < num_left; ++u) {
    std::fill(visited.begin(), visited.end(), 0);
    augment(u);
  }
  return match_of_left;
}

int MatchingSize(const std::vector<int>& match_of_left) {
  int size = 0;
  for (int v : match_of_left) size += v >= 0 ? 1 : 0;
  return size;
}

}  // namespace ivlab
