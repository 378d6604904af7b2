#pragma once

#include <array>
#include <string>
#include <vector>

#include "pps/pauli.hpp"

namespace pps {

enum class BondType { Generic, X, Y, Z };

struct Bond {
  int u = 0, v = 0;
  BondType type = BondType::Generic;
};

enum class LatticeKind { ChainPBC, SquarePBC, HeavyHex, HoneycombSquarePBC };

struct Lattice {
  LatticeKind kind = LatticeKind::ChainPBC;
  int nx = 0, ny = 0;  // ny = 1 for chains; heavy-hex uses nx = site count
  int n_sites = 0;
  std::vector<Bond> bonds;

  std::vector<int> degrees() const;
  int max_degree() const;
};

/// Periodic chain 0-1-2-...-(n-1)-0.
Lattice chain_pbc(int n);

/// Periodic square lattice, sites row-major q = r*nx + c.
Lattice square_pbc(int nx, int ny);

/// Kitaev honeycomb mapped onto the periodic nx x ny square grid
/// (row-major sites, both dimensions even):
///   - every horizontal bond (r,c)-(r,c+1) exists; it is an X bond when r+c
///     is even and a Y bond when r+c is odd, so row 0 starts X,Y,X,... and
///     row 1 starts Y,X,Y,...;
///   - vertical Z bonds (r,c)-(r+1,c) exist exactly when r+c is even, giving
///     each site one Z bond and the brick-wall hexagon pattern.
/// Every site touches exactly one bond of each type.
Lattice honeycomb_square_pbc(int nx, int ny);

/// Plaquette (hexagon) handling for the honeycomb mapping. Faces are indexed
/// p = r*(nx/2) + (c - r%2)/2 where (r, c) is the face's top-left site and
/// c has the parity of r; the face spans rows r, r+1 and columns c..c+2.
struct Face {
  int r = 0, c = 0;
};
int face_count(const Lattice& lat);
Face face_at(const Lattice& lat, int p);
int face_index(const Lattice& lat, Face f);
/// Sites in order top-left, top-mid, top-right, bottom-left, bottom-mid,
/// bottom-right.
std::array<int, 6> face_sites(const Lattice& lat, Face f);
/// The six-letter plaquette word W_P: each site carries the letter of its
/// bond type that does not lie on the hexagon boundary (pattern Y Z X X Z Y).
PauliString plaquette_operator(const Lattice& lat, int p);

/// The W_P letter carried by `site` within face `f` (site must lie on f).
char face_letter_at(const Lattice& lat, Face f, int site);

/// The three faces around a site.
std::array<Face, 3> site_faces(const Lattice& lat, int site);

/// Bond type of the edge (u, v); throws if not adjacent.
BondType honeycomb_bond_type(const Lattice& lat, int u, int v);

/// Edge-list text format: one "u v type" line per bond, type in {b,x,y,z}.
void save_lattice(const Lattice& lat, const std::string& path);
Lattice load_lattice(const std::string& path);

/// 127-site heavy-hexagon graph from an edge-list file; validates 127
/// vertices, 144 edges, maximum degree 3.
Lattice heavy_hex_127(const std::string& path);

}  // namespace pps
