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

#ifndef IVLAB_BIPARTITE_MATCHING_H_
#define IVLAB_BIPARTITE_MATCHING_H_

#include <vector>

namespace ivlab {

// Maximum bipartite matching by augmenting paths (Kuhn). Left vertices are
// processed in index order and each adjacency list in its given order, so the
// result is deterministic. Returns, for every left vertex, the matched right
// vertex or -1.
std::vector<int> MaxBipartiteMatching(int num_left, int num_right,
                                      const std::vector<std::vector<int>>& adjacency);

// Number of matched left vertices in a result of MaxBipartiteMatching.
int MatchingSize(const std::vector<int>& match_of_left);

}  // namespace ivlab

#endif  // IVLAB_BIPARTITE_MATCHING_H_
