#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mixtop/pauli.hpp"

namespace mixtop {

enum class LatticeKind { square_edges, honeycomb_vertices, triangular_vertices };
enum class Boundary { torus, cylinder, open };

std::string to_string(LatticeKind k);
std::string to_string(Boundary b);
LatticeKind parse_lattice_kind(const std::string &s);
Boundary parse_boundary(const std::string &s);

struct Point {
    double x = 0, y = 0;
};

// A loop or string on the lattice. For the square lattice a direct path is a
// walk on vertices and `links` are the traversed edges; a dual path is a walk
// on plaquettes and `links` are the crossed edges. `forward` records whether
// each link was traversed along the +x/+y orientation.
struct Path {
    std::vector<size_t> links;
    std::vector<bool> forward;
    bool closed = false;
    bool dual = false;
    // geometric trace in doubled coordinates: visited vertices (or plaquette
    // centres) interleaved with link midpoints
    std::vector<std::pair<int, int>> trace;

    bool empty() const { return links.empty(); }
    Path then(const Path &o) const;
};

/* Square lattice on edges: vertex (x, y), horizontal edge h(x,y) from (x,y) to
 * (x+1,y), vertical edge v(x,y) from (x,y) to (x,y+1). On the torus edge
 * (x,y,o) has index 2(y*Lx + x) + o with o = 0 horizontal, 1 vertical; other
 * boundaries keep that ordering and skip missing edges. A cylinder is
 * periodic in x with smooth top and bottom rows of horizontal edges.
 *
 * Honeycomb on vertices as a brick wall of 2*Lx columns and Ly rows, site
 * (i,j) -> j*2Lx + i. Horizontal bonds join (i,j)-(i+1,j); the vertical bond
 * (i,j)-(i,j+1) exists when i+j is even. Bond types for the Kitaev flux
 * operator: vertical z, horizontal x when i+j is even, y otherwise. A hexagon
 * is labelled by its lower-left site (i,j) with i+j even. Torus needs even Ly.
 *
 * Triangular on vertices: site (x,y) -> y*Lx + x with neighbours along
 * (1,0), (0,1), (-1,1). */
class Lattice {
public:
    static Lattice build(LatticeKind kind, int Lx, int Ly, Boundary b);

    LatticeKind kind() const { return kind_; }
    Boundary boundary() const { return boundary_; }
    int Lx() const { return Lx_; }
    int Ly() const { return Ly_; }
    size_t n() const { return n_; }
    bool periodic_x() const { return boundary_ != Boundary::open; }
    bool periodic_y() const { return boundary_ == Boundary::torus; }

    // square lattice
    std::optional<size_t> edge(int x, int y, int o) const;
    size_t h(int x, int y) const;
    size_t v(int x, int y) const;
    struct EdgeCoord {
        int x, y, o;
    };
    EdgeCoord edge_coord(size_t e) const;
    std::vector<QubitSet> stars() const;
    std::vector<QubitSet> plaquettes() const;
    std::vector<std::pair<int, int>> vertices() const;
    std::vector<std::pair<int, int>> plaquette_corners() const;
    std::optional<QubitSet> star(int x, int y) const;
    std::optional<QubitSet> plaquette(int x, int y) const;
    // the dual-shifted partner e + delta with delta = (-1/2, 1/2):
    // h(x,y) -> v(x,y), v(x,y) -> h(x-1,y+1)
    std::optional<size_t> delta_partner(size_t e) const;

    // honeycomb / triangular
    std::optional<size_t> site(int i, int j) const;
    struct Hexagon {
        std::vector<size_t> sites;  // cyclic order
        std::string letters;        // Kitaev flux letters, same order
    };
    std::vector<Hexagon> hexagons() const;
    std::vector<std::pair<size_t, size_t>> bonds() const;

    // qubit position (edge midpoint or site); used for discs and distances
    Point position(size_t q) const;
    // displacement b - a folded into the fundamental domain on periodic axes
    Point displacement(Point a, Point b) const;
    double chebyshev(Point a, Point b) const;
    // qubits adjacent in the interaction graph (shared vertex, or a bond)
    std::vector<QubitSet> qubit_graph() const;
    QubitSet disc(Point centre, double radius) const;

    bool operator==(const Lattice &o) const {
        return kind_ == o.kind_ && boundary_ == o.boundary_ && Lx_ == o.Lx_ && Ly_ == o.Ly_;
    }

private:
    LatticeKind kind_ = LatticeKind::square_edges;
    Boundary boundary_ = Boundary::torus;
    int Lx_ = 0, Ly_ = 0;
    size_t n_ = 0;
    std::vector<long> index_;  // geometric slot -> qubit or -1
    std::vector<EdgeCoord> coord_;
    int wrap_x(int x) const;
    int wrap_y(int y) const;
    bool in_x(int x) const;
    bool in_y(int y) const;
    int width() const;  // sites per row for vertex lattices
};

// ---- paths (square lattice)

enum class Step { px, mx, py, my };

// from vertex (x,y) (direct) or plaquette (x,y) (dual)
Path straight_path(const Lattice &lat, int x, int y, Step dir, int length, bool dual);
Path direct_path(const Lattice &lat, int x, int y, const std::vector<std::pair<Step, int>> &legs);
Path dual_path(const Lattice &lat, int x, int y, const std::vector<std::pair<Step, int>> &legs);
// boundary of the vertex box [x0,x1]x[y0,y1], counter-clockwise
Path box_loop(const Lattice &lat, int x0, int y0, int x1, int y1);
// dual loop crossing every edge that leaves the vertex box [x0,x1]x[y0,y1]
Path dual_box_loop(const Lattice &lat, int x0, int y0, int x1, int y1);
// throws if consecutive links do not meet, or a closed path does not close
void validate_path(const Lattice &lat, const Path &p);

struct CrossingPair {
    Path a, b;
    Point crossing;
};

struct StatisticsTriple {
    // q -> p, r -> p, p -> s; the legs of the hopping relation
    Path pq, pr, sp;
    Point p;
    Path gamma() const { return pq.then(sp); }  // q -> p -> s
    Path tau() const { return pr.then(sp); }    // r -> p -> s
};

Path horizontal_loop(const Lattice &lat, int y, bool dual);
Path vertical_loop(const Lattice &lat, int x, bool dual);
// shortest x-then-y string between two vertices (or plaquettes when dual)
Path open_string(const Lattice &lat, std::pair<int, int> from, std::pair<int, int> to, bool dual);
// horizontal loop of kind a_dual and vertical loop of kind b_dual crossing once
CrossingPair crossing_pair(const Lattice &lat, bool a_dual, bool b_dual);
// legs of length k around vertex (or plaquette) p
StatisticsTriple statistics_triple(const Lattice &lat, bool dual, int k = 0);

// number of separate contact runs between two paths (0 = disjoint)
int count_contacts(const Lattice &lat, const Path &a, const Path &b, std::vector<Point> *where = nullptr);

// ---- partitions

struct Partition {
    std::string scheme;
    QubitSet A, B, C;
    QubitSet hole;  // Levin-Wen only: qubits enclosed by the annulus

    QubitSet AB() const;
    QubitSet BC() const;
    QubitSet ABC() const;
};

using Parameters = std::map<std::string, double>;

Partition partition(const Lattice &lat, const std::string &scheme, const Parameters &params = {});
void check_disjoint(const Lattice &lat, const Partition &p);
// breadth-first distance between qubit sets in the qubit graph
int graph_distance(const Lattice &lat, const QubitSet &a, const QubitSet &b);

QubitSet set_union(const QubitSet &a, const QubitSet &b);
QubitSet set_difference(const QubitSet &a, const QubitSet &b);
QubitSet complement(const QubitSet &a, size_t n);
BitVec mask_of(const QubitSet &a, size_t n);

}  // namespace mixtop
