#pragma once

#include <algorithm>
#include <vector>

#include "curvcx/core.hpp"
#include "curvcx/kernels.hpp"

namespace testing {

using namespace curvcx;

inline std::vector<FaceId> ball(const PolygonalComplex& X, FaceId o, int r) {
  kernels::LocalBfs bfs(X.num_faces());
  bfs.run(X, o, r);
  std::vector<FaceId> out(bfs.order().begin(), bfs.order().end());
  std::sort(out.begin(), out.end());
  return out;
}

// The 2n faces around v in cyclic order.
inline std::vector<FaceId> wheel(const PolygonalComplex& X, VertexId v) {
  auto around = X.vertex_faces(v);
  std::vector<FaceId> cyc{around.front()};
  while (cyc.size() < around.size()) {
    FaceId last = cyc.back();
    for (FaceId g : X.face_neighbors(last)) {
      bool at_v = std::find(around.begin(), around.end(), g) != around.end();
      bool seen = std::find(cyc.begin(), cyc.end(), g) != cyc.end();
      if (at_v && !seen) {
        cyc.push_back(g);
        break;
      }
    }
    if (cyc.back() == last) break;
  }
  return cyc;
}

}  // namespace testing
