#include "kinwave/reference.hpp"

#include <stdexcept>

namespace kinwave {

StaggeredState StaggeredState::zeros(const Grid& grid) {
  StaggeredState s;
  s.grid = grid;
  s.p.assign(grid.size(), 0.0);
  s.v.assign(grid.size(), 0.0);
  s.w.assign(grid.size(), 0.0);
  return s;
}

StaggeredState yee_init(const AcousticState& q0, double courant) {
  const Grid& g = q0.grid;
  StaggeredState s = StaggeredState::zeros(g);
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      s.p[g.index(i, j)] = q0.p(i, j);
    }
  }
  const double half = 0.5 * courant;
  for (int j = 0; j < g.n; ++j) {
    const int jp = g.wrap(j + 1);
    for (int i = 0; i < g.n; ++i) {
      const int ip = g.wrap(i + 1);
      s.v[g.index(i, j)] = 0.5 * (q0.v(i, j) + q0.v(ip, j)) +
                           half * (q0.p(ip, j) - q0.p(i, j));
      s.w[g.index(i, j)] = 0.5 * (q0.w(i, j) + q0.w(i, jp)) +
                           half * (q0.p(i, jp) - q0.p(i, j));
    }
  }
  return s;
}

void yee_step(StaggeredState& s, double courant) {
  const Grid& g = s.grid;
  // The faces hold t = (n+1/2) k values, so pressure advances first, from
  // the divergence of the current faces (the faces are untouched here)...
  for (int j = 0; j < g.n; ++j) {
    const int jm = g.wrap(j - 1);
    for (int i = 0; i < g.n; ++i) {
      const int im = g.wrap(i - 1);
      s.p[g.index(i, j)] +=
          courant * (s.v[g.index(i, j)] - s.v[g.index(im, j)] +
                     s.w[g.index(i, j)] - s.w[g.index(i, jm)]);
    }
  }
  // ...then the faces advance to (n+3/2) k from the fresh pressure.
  for (int j = 0; j < g.n; ++j) {
    const int jp = g.wrap(j + 1);
    for (int i = 0; i < g.n; ++i) {
      const int ip = g.wrap(i + 1);
      s.v[g.index(i, j)] += courant * (s.p[g.index(ip, j)] - s.p[g.index(i, j)]);
      s.w[g.index(i, j)] += courant * (s.p[g.index(i, jp)] - s.p[g.index(i, j)]);
    }
  }
}

AcousticState collocate(const StaggeredState& s) {
  const Grid& g = s.grid;
  AcousticState out = AcousticState::zeros(g);
  for (int j = 0; j < g.n; ++j) {
    const int jm = g.wrap(j - 1);
    for (int i = 0; i < g.n; ++i) {
      const int im = g.wrap(i - 1);
      out.v(i, j) = 0.5 * (s.v[g.index(im, j)] + s.v[g.index(i, j)]);
      out.w(i, j) = 0.5 * (s.w[g.index(i, jm)] + s.w[g.index(i, j)]);
      out.p(i, j) = s.p[g.index(i, j)];
    }
  }
  return out;
}

AcousticState fv1_step(const AcousticState& s, double courant) {
  const Grid& g = s.grid;
  AcousticState out = AcousticState::zeros(g);
  const double nu2 = 0.5 * courant;
  for (int j = 0; j < g.n; ++j) {
    const int jp = g.wrap(j + 1);
    const int jm = g.wrap(j - 1);
    for (int i = 0; i < g.n; ++i) {
      const int ip = g.wrap(i + 1);
      const int im = g.wrap(i - 1);
      out.v(i, j) = s.v(i, j) + nu2 * (s.p(ip, j) - s.p(im, j) + s.v(ip, j) -
                                       2.0 * s.v(i, j) + s.v(im, j));
      out.w(i, j) = s.w(i, j) + nu2 * (s.p(i, jp) - s.p(i, jm) + s.w(i, jp) -
                                       2.0 * s.w(i, j) + s.w(i, jm));
      out.p(i, j) =
          s.p(i, j) + nu2 * (s.v(ip, j) - s.v(im, j) + s.w(i, jp) -
                             s.w(i, jm) + s.p(ip, j) + s.p(im, j) +
                             s.p(i, jp) + s.p(i, jm) - 4.0 * s.p(i, j));
    }
  }
  return out;
}

Reconstruction Reconstruction::zeros(const Grid& grid) {
  Reconstruction r;
  r.grid = grid;
  r.c1.assign(3 * grid.size(), 0.0);
  r.c2.assign(3 * grid.size(), 0.0);
  return r;
}

Reconstruction lsq_reconstruct(const AcousticState& s) {
  const Grid& g = s.grid;
  Reconstruction r = Reconstruction::zeros(g);
  for (int j = 0; j < g.n; ++j) {
    const int jp = g.wrap(j + 1);
    const int jm = g.wrap(j - 1);
    for (int i = 0; i < g.n; ++i) {
      const int ip = g.wrap(i + 1);
      const int im = g.wrap(i - 1);
      const std::size_t at = 3 * g.index(i, j);
      const double* east = &s.data[3 * g.index(ip, j)];
      const double* west = &s.data[3 * g.index(im, j)];
      const double* north = &s.data[3 * g.index(i, jp)];
      const double* south = &s.data[3 * g.index(i, jm)];
      for (int l = 0; l < 3; ++l) {
        r.c1[at + l] = 0.5 * (east[l] - west[l]);
        r.c2[at + l] = 0.5 * (north[l] - south[l]);
      }
    }
  }
  return r;
}

AcousticState upwind_increment(const AcousticState& s, const Reconstruction& rec,
                               double courant) {
  const Grid& g = s.grid;
  if (rec.grid.n != g.n) {
    throw std::invalid_argument("reconstruction computed on a different grid");
  }
  // Face fluxes, stored at the east (fx) and north (fy) face of each cell
  // and scaled by k c / delta = courant at the end.  The sound speed scales
  // out: with A = c Ahat, the flux of the unit-speed system times courant is
  // the physical (k/delta)-scaled flux.
  std::vector<double> fx(3 * g.size()), fy(3 * g.size());
  for (int j = 0; j < g.n; ++j) {
    const int jp = g.wrap(j + 1);
    for (int i = 0; i < g.n; ++i) {
      const int ip = g.wrap(i + 1);
      const std::size_t at = 3 * g.index(i, j);
      const std::size_t east = 3 * g.index(ip, j);
      const std::size_t north = 3 * g.index(i, jp);
      // x-face: trace from this cell (left) and its east neighbour (right).
      const double vl = s.data[at] + 0.5 * rec.c1[at];
      const double pl = s.data[at + 2] + 0.5 * rec.c1[at + 2];
      const double vr = s.data[east] - 0.5 * rec.c1[east];
      const double pr = s.data[east + 2] - 0.5 * rec.c1[east + 2];
      fx[at] = -0.5 * (pl + pr) - 0.5 * (vr - vl);
      fx[at + 1] = 0.0;  // |A1| has no w diffusion: w rides through x-faces
      fx[at + 2] = -0.5 * (vl + vr) - 0.5 * (pr - pl);
      // y-face: trace from this cell (south) and its north neighbour.
      const double ws = s.data[at + 1] + 0.5 * rec.c2[at + 1];
      const double ps = s.data[at + 2] + 0.5 * rec.c2[at + 2];
      const double wn = s.data[north + 1] - 0.5 * rec.c2[north + 1];
      const double pn = s.data[north + 2] - 0.5 * rec.c2[north + 2];
      fy[at] = 0.0;
      fy[at + 1] = -0.5 * (ps + pn) - 0.5 * (wn - ws);
      fy[at + 2] = -0.5 * (ws + wn) - 0.5 * (pn - ps);
    }
  }
  AcousticState inc = AcousticState::zeros(g);
  for (int j = 0; j < g.n; ++j) {
    const int jm = g.wrap(j - 1);
    for (int i = 0; i < g.n; ++i) {
      const int im = g.wrap(i - 1);
      const std::size_t at = 3 * g.index(i, j);
      const std::size_t west = 3 * g.index(im, j);
      const std::size_t south = 3 * g.index(i, jm);
      for (int l = 0; l < 3; ++l) {
        inc.data[at + l] =
            courant * (fx[west + l] - fx[at + l] + fy[south + l] - fy[at + l]);
      }
    }
  }
  return inc;
}

AcousticState fv2_step(const AcousticState& s, double courant) {
  const AcousticState inc1 = upwind_increment(s, lsq_reconstruct(s), courant);
  AcousticState stage1 = s;
  for (std::size_t idx = 0; idx < stage1.data.size(); ++idx) {
    stage1.data[idx] += inc1.data[idx];
  }
  const AcousticState inc2 =
      upwind_increment(stage1, lsq_reconstruct(stage1), courant);
  AcousticState out = AcousticState::zeros(s.grid);
  for (std::size_t idx = 0; idx < out.data.size(); ++idx) {
    out.data[idx] = 0.5 * (s.data[idx] + stage1.data[idx]) + 0.5 * inc2.data[idx];
  }
  return out;
}

}  // namespace kinwave
