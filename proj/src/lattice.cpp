#include "pps/lattice.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pps {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

char bond_type_letter(BondType t) {
  switch (t) {
    case BondType::Generic: return 'b';
    case BondType::X: return 'x';
    case BondType::Y: return 'y';
    case BondType::Z: return 'z';
  }
  throw std::logic_error("bad bond type");
}

BondType bond_type_from_letter(char c) {
  switch (c) {
    case 'b': return BondType::Generic;
    case 'x': return BondType::X;
    case 'y': return BondType::Y;
    case 'z': return BondType::Z;
    default: throw std::runtime_error(std::string("bad bond type letter: ") + c);
  }
}

}  // namespace

std::vector<int> Lattice::degrees() const {
  std::vector<int> deg(n_sites, 0);
  for (const Bond& b : bonds) {
    deg.at(b.u)++;
    deg.at(b.v)++;
  }
  return deg;
}

int Lattice::max_degree() const {
  int m = 0;
  for (int d : degrees()) m = std::max(m, d);
  return m;
}

Lattice chain_pbc(int n) {
  if (n < 3) throw std::invalid_argument("chain_pbc: need n >= 3");
  Lattice lat;
  lat.kind = LatticeKind::ChainPBC;
  lat.nx = n;
  lat.ny = 1;
  lat.n_sites = n;
  for (int i = 0; i < n; ++i) lat.bonds.push_back({i, (i + 1) % n, BondType::Generic});
  return lat;
}

Lattice square_pbc(int nx, int ny) {
  if (nx < 3 || ny < 3) throw std::invalid_argument("square_pbc: need nx, ny >= 3");
  Lattice lat;
  lat.kind = LatticeKind::SquarePBC;
  lat.nx = nx;
  lat.ny = ny;
  lat.n_sites = nx * ny;
  auto site = [&](int r, int c) { return mod(r, ny) * nx + mod(c, nx); };
  for (int r = 0; r < ny; ++r)
    for (int c = 0; c < nx; ++c) {
      lat.bonds.push_back({site(r, c), site(r, c + 1), BondType::Generic});
      lat.bonds.push_back({site(r, c), site(r + 1, c), BondType::Generic});
    }
  return lat;
}

Lattice honeycomb_square_pbc(int nx, int ny) {
  if (nx < 4 || ny < 2 || nx % 2 != 0 || ny % 2 != 0)
    throw std::invalid_argument("honeycomb_square_pbc: need even nx >= 4, even ny >= 2");
  Lattice lat;
  lat.kind = LatticeKind::HoneycombSquarePBC;
  lat.nx = nx;
  lat.ny = ny;
  lat.n_sites = nx * ny;
  auto site = [&](int r, int c) { return mod(r, ny) * nx + mod(c, nx); };
  for (int r = 0; r < ny; ++r)
    for (int c = 0; c < nx; ++c) {
      BondType h = ((r + c) % 2 == 0) ? BondType::X : BondType::Y;
      lat.bonds.push_back({site(r, c), site(r, c + 1), h});
      if ((r + c) % 2 == 0) lat.bonds.push_back({site(r, c), site(r + 1, c), BondType::Z});
    }
  return lat;
}

namespace {

void require_honeycomb(const Lattice& lat) {
  if (lat.kind != LatticeKind::HoneycombSquarePBC)
    throw std::invalid_argument("operation requires a honeycomb (square-mapped) lattice");
}

}  // namespace

int face_count(const Lattice& lat) {
  require_honeycomb(lat);
  return lat.n_sites / 2;
}

Face face_at(const Lattice& lat, int p) {
  require_honeycomb(lat);
  const int per_row = lat.nx / 2;
  if (p < 0 || p >= face_count(lat)) throw std::out_of_range("face index");
  const int r = p / per_row;
  const int c = 2 * (p % per_row) + r % 2;
  return {r, c};
}

int face_index(const Lattice& lat, Face f) {
  require_honeycomb(lat);
  const int r = mod(f.r, lat.ny), c = mod(f.c, lat.nx);
  if ((r + c) % 2 != 0) throw std::invalid_argument("face_index: r + c must be even");
  return r * (lat.nx / 2) + (c - r % 2) / 2;
}

std::array<int, 6> face_sites(const Lattice& lat, Face f) {
  require_honeycomb(lat);
  const int r = mod(f.r, lat.ny), c = mod(f.c, lat.nx);
  if ((r + c) % 2 != 0) throw std::invalid_argument("face_sites: r + c must be even");
  auto site = [&](int rr, int cc) { return mod(rr, lat.ny) * lat.nx + mod(cc, lat.nx); };
  return {site(r, c),     site(r, c + 1),     site(r, c + 2),
          site(r + 1, c), site(r + 1, c + 1), site(r + 1, c + 2)};
}

PauliString plaquette_operator(const Lattice& lat, int p) {
  const Face f = face_at(lat, p);
  const auto sites = face_sites(lat, f);
  static constexpr char kLetters[7] = "YZXXZY";
  PauliString w = PauliString(lat.n_sites);
  for (int i = 0; i < 6; ++i) w.set_letter(sites[i], kLetters[i]);
  return w;
}

char face_letter_at(const Lattice& lat, Face f, int site) {
  const auto sites = face_sites(lat, f);
  static constexpr char kLetters[7] = "YZXXZY";
  for (int i = 0; i < 6; ++i)
    if (sites[i] == site) return kLetters[i];
  throw std::invalid_argument("face_letter_at: site not on face");
}

std::array<Face, 3> site_faces(const Lattice& lat, int site) {
  require_honeycomb(lat);
  const int r = site / lat.nx, c = site % lat.nx;
  std::array<Face, 3> out;
  int k = 0;
  for (int dc : {-2, -1, 0}) {  // faces with top row r containing column c
    const int fc = mod(c + dc, lat.nx);
    if ((r + fc) % 2 == 0 && k < 3) {
      // Column really covered: dc=-1 covers as middle, dc=0 as left, dc=-2 as right.
      out[k++] = {r, fc};
    }
  }
  const int ra = mod(r - 1, lat.ny);  // faces with bottom row r
  for (int dc : {-2, -1, 0}) {
    const int fc = mod(c + dc, lat.nx);
    if ((ra + fc) % 2 == 0 && k < 3) out[k++] = {ra, fc};
  }
  if (k != 3) throw std::logic_error("site_faces: expected exactly 3 faces");
  return out;
}

BondType honeycomb_bond_type(const Lattice& lat, int u, int v) {
  require_honeycomb(lat);
  const int ru = u / lat.nx, cu = u % lat.nx;
  const int rv = v / lat.nx, cv = v % lat.nx;
  if (ru == rv) {
    int left;
    if (mod(cu + 1, lat.nx) == cv) left = cu;
    else if (mod(cv + 1, lat.nx) == cu) left = cv;
    else throw std::invalid_argument("honeycomb_bond_type: sites not adjacent");
    return ((ru + left) % 2 == 0) ? BondType::X : BondType::Y;
  }
  if (cu == cv) {
    int top;
    if (mod(ru + 1, lat.ny) == rv) top = ru;
    else if (mod(rv + 1, lat.ny) == ru) top = rv;
    else throw std::invalid_argument("honeycomb_bond_type: sites not adjacent");
    if ((top + cu) % 2 != 0)
      throw std::invalid_argument("honeycomb_bond_type: no vertical bond here");
    return BondType::Z;
  }
  throw std::invalid_argument("honeycomb_bond_type: sites not adjacent");
}

void save_lattice(const Lattice& lat, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_lattice: cannot open " + path);
  out << "# sites " << lat.n_sites << "\n";
  for (const Bond& b : lat.bonds)
    out << b.u << " " << b.v << " " << bond_type_letter(b.type) << "\n";
}

Lattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_lattice: cannot open " + path);
  Lattice lat;
  lat.kind = LatticeKind::HeavyHex;  // generic edge list; kind refined by caller
  int max_site = -1;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    int u, v;
    std::string t;
    if (!(ls >> u >> v)) continue;
    if (!(ls >> t)) t = "b";
    if (u < 0 || v < 0 || u == v)
      throw std::runtime_error("load_lattice: bad edge " + line);
    lat.bonds.push_back({u, v, bond_type_from_letter(t.at(0))});
    max_site = std::max({max_site, u, v});
  }
  lat.n_sites = max_site + 1;
  lat.nx = lat.n_sites;
  lat.ny = 1;
  return lat;
}

Lattice heavy_hex_127(const std::string& path) {
  Lattice lat = load_lattice(path);
  lat.kind = LatticeKind::HeavyHex;
  if (lat.n_sites != 127)
    throw std::runtime_error("heavy_hex_127: expected 127 sites, got " +
                             std::to_string(lat.n_sites));
  if (lat.bonds.size() != 144)
    throw std::runtime_error("heavy_hex_127: expected 144 edges, got " +
                             std::to_string(lat.bonds.size()));
  std::set<std::pair<int, int>> seen;
  for (const Bond& b : lat.bonds) {
    auto key = std::minmax(b.u, b.v);
    if (!seen.insert({key.first, key.second}).second)
      throw std::runtime_error("heavy_hex_127: duplicate edge");
  }
  if (lat.max_degree() > 3)
    throw std::runtime_error("heavy_hex_127: degree exceeds 3");
  return lat;
}

}  // namespace pps
