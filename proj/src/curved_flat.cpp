#include "isolab/curved_flat.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "isolab/obj_io.hpp"

namespace isolab {

namespace {

int pick_substeps(const ConformalGrid& g, int requested) {
  if (requested > 0) return requested;
  return std::max(1, static_cast<int>(std::ceil(g.spacing() / 0.01)));
}

}  // namespace

FactorsResult integrating_factors(const WeierstrassData& data, double t, Complex ghat_seed,
                                  Complex a0, Complex ahat0, const ConformalGrid& grid,
                                  int substeps_per_edge) {
  if (t == 0.0) throw ValidationError("integrating_factors requires t != 0");
  if (a0 == Complex(0, 0) || ahat0 == Complex(0, 0))
    throw ValidationError("integrating factors need nonzero seeds");
  grid.validate();

  // State: (ghat, ahat, a).  omega_hat = dg / (2 t (ghat-g)^2), so the a
  // equation reduces to d a = dg / (ghat - g) a.
  auto rhs = [&](double u, double v, double tu, double tv, const std::array<double, 6>& y,
                 std::array<double, 6>& dy) {
    Complex z(u, v);
    Complex dz_dir(tu, tv);
    Complex gh = unpack_complex(y.data());
    Complex ah = unpack_complex(y.data() + 2);
    Complex a = unpack_complex(y.data() + 4);
    Complex diff = gh - data.g_at(z);
    Complex omega = data.omega_at(z);
    pack(2.0 * t * diff * diff * omega * dz_dir, dy.data());
    pack(-2.0 * t * omega * diff * ah * dz_dir, dy.data() + 2);
    if (diff == Complex(0, 0)) throw PoleError("ghat met g during integration", z);
    pack(data.dg_at(z) / diff * a * dz_dir, dy.data() + 4);
  };
  PathOptions opt;
  opt.substeps_per_edge = pick_substeps(grid, substeps_per_edge);
  opt.escape_norm = 1e12;
  std::array<double, 6> seed{};
  pack(ghat_seed, seed.data());
  pack(ahat0, seed.data() + 2);
  pack(a0, seed.data() + 4);
  auto states = integrate_path<6>(grid, seed, opt, rhs);
  opt.transposed = true;
  auto states_t = integrate_path<6>(grid, seed, opt, rhs);

  FactorsResult res;
  res.ghat = SampledField<Complex>(grid);
  res.ahat = SampledField<Complex>(grid);
  res.a = SampledField<Complex>(grid);
  std::vector<double> path_diff(grid.count());
  for (int i = 0; i < grid.count(); ++i) {
    res.ghat.values[i] = unpack_complex(states[i].data());
    res.ahat.values[i] = unpack_complex(states[i].data() + 2);
    res.a.values[i] = unpack_complex(states[i].data() + 4);
    double d = std::abs(res.ahat.values[i] - unpack_complex(states_t[i].data() + 2));
    d = std::max(d, std::abs(res.a.values[i] - unpack_complex(states_t[i].data() + 4)));
    path_diff[i] = d;
    int p = i % grid.nu, q = i / grid.nu;
    if (std::abs(res.a.values[i]) < 1e-12 || std::abs(res.ahat.values[i]) < 1e-12)
      throw ScalingError("integrating factor underflow", p, q);
  }
  res.path_independence =
      make_report("factors_path_independence", path_diff, grid.spacing(), TolClass::ode);
  return res;
}

FrameField frame(const SampledField<Complex>& g, const SampledField<Complex>& ghat,
                 const SampledField<Complex>& a, const SampledField<Complex>& ahat) {
  const ConformalGrid& grid = g.grid;
  if (!grid.matches(ghat.grid) || !grid.matches(a.grid) || !grid.matches(ahat.grid))
    throw ValidationError("frame requires matching grids");
  FrameField fr;
  fr.phi = SampledField<Mat2c>(grid);
  fr.g = g;
  fr.ghat = ghat;
  fr.a = a;
  fr.ahat = ahat;
  double scale = 0;
  for (int i = 0; i < grid.count(); ++i)
    scale = std::max(scale, std::abs(a.values[i]) * std::abs(ahat.values[i]));
  for (int i = 0; i < grid.count(); ++i) {
    Mat2c m{g.values[i] * a.values[i], ghat.values[i] * ahat.values[i], a.values[i],
            ahat.values[i]};
    if (std::abs(m.det()) < 1e-12 * scale)
      throw FrameSingularError("curved-flat frame is singular", i % grid.nu, i / grid.nu);
    fr.phi.values[i] = m;
  }
  return fr;
}

CurvedFlatReports curved_flat_residual(const FrameField& fr, const SampledField<Complex>& omega,
                                       const SampledField<Complex>& omega_hat, double t) {
  const ConformalGrid& g = fr.phi.grid;
  if (!g.matches(omega.grid) || !g.matches(omega_hat.grid))
    throw ValidationError("curved_flat_residual requires matching grids");
  SampledField<Mat2c> pu = partial(fr.phi, Axis::u), pv = partial(fr.phi, Axis::v);

  std::vector<double> sys(g.count()), diag(g.count()), det_id(g.count());
  parallel_for(g.count(), [&](int i) {
    Complex diff = fr.ghat.values[i] - fr.g.values[i];
    // dz coefficient of the off-diagonal connection; the linearized flow
    // carries the factor 2 of d ahat + 2 t omega (ghat-g) ahat = 0.
    Complex n12 = 2.0 * omega.values[i] * diff * fr.ahat.values[i] / fr.a.values[i];
    Complex n21 = -2.0 * omega_hat.values[i] * diff * fr.a.values[i] / fr.ahat.values[i];
    Mat2c Nu{0.0, n12, n21, 0.0};
    Mat2c Nv{0.0, Complex(0, 1) * n12, Complex(0, 1) * n21, 0.0};
    const Mat2c& phi = fr.phi.values[i];
    Mat2c ru = pu.values[i] + t * (phi * Nu);
    Mat2c rv = pv.values[i] + t * (phi * Nv);
    sys[i] = std::max(ru.norm(), rv.norm());

    Mat2c inv = phi.inverse();
    Mat2c cu = inv * pu.values[i] + t * Nu;
    Mat2c cv = inv * pv.values[i] + t * Nv;
    diag[i] = std::max(std::max(std::abs(cu.m00), std::abs(cu.m11)),
                       std::max(std::abs(cv.m00), std::abs(cv.m11)));

    Complex expected =
        fr.a.values[i] * fr.ahat.values[i] * (fr.g.values[i] - fr.ghat.values[i]);
    det_id[i] = std::abs(phi.det() - expected);
  });

  CurvedFlatReports rep;
  rep.system_residual = make_report("curved_flat_system", sys, g.spacing(), TolClass::fd);
  rep.connection_diagonal =
      make_report("curved_flat_connection_diagonal", diag, g.spacing(), TolClass::fd);
  rep.det_identity = make_report("frame_det_identity", det_id, g.spacing(), TolClass::algebraic);
  return rep;
}

void poincare_pair_export(const SampledField<ImPoint>& n, const SampledField<ImPoint>& nhat,
                          const std::string& csv_path, const std::string& obj_path) {
  if (!n.grid.matches(nhat.grid))
    throw ValidationError("poincare_pair_export requires matching grids");
  const ConformalGrid& g = n.grid;
  if (!csv_path.empty()) {
    std::ofstream os(csv_path, std::ios::binary);
    if (!os) throw Error("cannot open '" + csv_path + "' for writing");
    os << "u,v,nx,ny,nz,nhx,nhy,nhz\n";
    for (int q = 0; q < g.nv; ++q)
      for (int p = 0; p < g.nu; ++p) {
        int i = g.index(p, q);
        const ImPoint &a = n.values[i], &b = nhat.values[i];
        os << format_g17(g.u(p)) << ',' << format_g17(g.v(q)) << ',' << format_g17(a.x1) << ','
           << format_g17(a.x2) << ',' << format_g17(a.x3) << ',' << format_g17(b.x1) << ','
           << format_g17(b.x2) << ',' << format_g17(b.x3) << '\n';
      }
  }
  if (!obj_path.empty()) {
    std::ofstream os(obj_path, std::ios::binary);
    if (!os) throw Error("cannot open '" + obj_path + "' for writing");
    for (int q = 0; q < g.nv; ++q)
      for (int p = 0; p < g.nu; ++p) {
        int i = g.index(p, q);
        const ImPoint &a = n.values[i], &b = nhat.values[i];
        os << "v " << format_g17(a.x1) << ' ' << format_g17(a.x2) << ' ' << format_g17(a.x3)
           << '\n';
        os << "v " << format_g17(b.x1) << ' ' << format_g17(b.x2) << ' ' << format_g17(b.x3)
           << '\n';
      }
    for (int i = 0; i < g.count(); ++i) os << "l " << 2 * i + 1 << ' ' << 2 * i + 2 << '\n';
  }
}

std::vector<PointPair> poincare_pair_import(const std::string& csv_path) {
  std::ifstream is(csv_path);
  if (!is) throw Error("cannot open '" + csv_path + "'");
  std::string line;
  if (!std::getline(is, line) || line != "u,v,nx,ny,nz,nhx,nhy,nhz")
    throw Error("unexpected point-pair CSV header in '" + csv_path + "'");
  std::vector<PointPair> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double vals[8];
    std::string cell;
    for (int k = 0; k < 8; ++k) {
      if (!std::getline(ls, cell, ',')) throw Error("short row in '" + csv_path + "'");
      vals[k] = std::strtod(cell.c_str(), nullptr);
    }
    out.push_back({vals[0], vals[1], {vals[2], vals[3], vals[4]}, {vals[5], vals[6], vals[7]}});
  }
  return out;
}

}  // namespace isolab
