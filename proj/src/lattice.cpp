#include "mixtop/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace mixtop {

std::string to_string(LatticeKind k) {
    switch (k) {
    case LatticeKind::square_edges: return "square-edges";
    case LatticeKind::honeycomb_vertices: return "honeycomb-vertices";
    case LatticeKind::triangular_vertices: return "triangular-vertices";
    }
    return "?";
}

std::string to_string(Boundary b) {
    switch (b) {
    case Boundary::torus: return "torus";
    case Boundary::cylinder: return "cylinder";
    case Boundary::open: return "open";
    }
    return "?";
}

LatticeKind parse_lattice_kind(const std::string &s) {
    if (s == "square-edges" || s == "square")
        return LatticeKind::square_edges;
    if (s == "honeycomb-vertices" || s == "honeycomb")
        return LatticeKind::honeycomb_vertices;
    if (s == "triangular-vertices" || s == "triangular")
        return LatticeKind::triangular_vertices;
    throw std::invalid_argument("unknown lattice kind '" + s + "'");
}

Boundary parse_boundary(const std::string &s) {
    if (s == "torus")
        return Boundary::torus;
    if (s == "cylinder")
        return Boundary::cylinder;
    if (s == "open")
        return Boundary::open;
    throw std::invalid_argument("unknown boundary '" + s + "'");
}

Path Path::then(const Path &o) const {
    if (o.empty())
        return *this;
    if (empty())
        return o;
    if (o.dual != dual)
        throw std::invalid_argument("cannot join a direct path with a dual path");
    Path r = *this;
    r.closed = false;
    r.links.insert(r.links.end(), o.links.begin(), o.links.end());
    r.forward.insert(r.forward.end(), o.forward.begin(), o.forward.end());
    if (!r.trace.empty() && !o.trace.empty() && r.trace.back() == o.trace.front())
        r.trace.insert(r.trace.end(), o.trace.begin() + 1, o.trace.end());
    else
        r.trace.insert(r.trace.end(), o.trace.begin(), o.trace.end());
    return r;
}

// ---------------------------------------------------------------- Lattice

int Lattice::wrap_x(int x) const {
    int p = kind_ == LatticeKind::honeycomb_vertices ? 2 * Lx_ : Lx_;
    return ((x % p) + p) % p;
}

int Lattice::wrap_y(int y) const { return ((y % Ly_) + Ly_) % Ly_; }

bool Lattice::in_x(int x) const { return x >= 0 && x < width(); }

bool Lattice::in_y(int y) const { return y >= 0 && y < Ly_; }

int Lattice::width() const { return kind_ == LatticeKind::honeycomb_vertices ? 2 * Lx_ : Lx_; }

Lattice Lattice::build(LatticeKind kind, int Lx, int Ly, Boundary b) {
    if (Lx < 1 || Ly < 1)
        throw std::invalid_argument("lattice sizes must be at least 1 (got Lx=" + std::to_string(Lx) +
                                    ", Ly=" + std::to_string(Ly) + ")");
    Lattice lat;
    lat.kind_ = kind;
    lat.Lx_ = Lx;
    lat.Ly_ = Ly;
    lat.boundary_ = b;
    if (kind == LatticeKind::square_edges) {
        if (b == Boundary::cylinder && Ly < 2)
            throw std::invalid_argument("square cylinder needs Ly >= 2");
        lat.index_.assign(2 * Lx * Ly, -1);
        for (int y = 0; y < Ly; y++)
            for (int x = 0; x < Lx; x++)
                for (int o = 0; o < 2; o++) {
                    bool exists = true;
                    if (o == 0 && b == Boundary::open && x == Lx - 1)
                        exists = false;
                    if (o == 1 && b != Boundary::torus && y == Ly - 1)
                        exists = false;
                    if (!exists)
                        continue;
                    lat.index_[2 * (y * Lx + x) + o] = static_cast<long>(lat.n_++);
                    lat.coord_.push_back({x, y, o});
                }
    } else if (kind == LatticeKind::honeycomb_vertices) {
        if (b == Boundary::torus && Ly % 2)
            throw std::invalid_argument("honeycomb torus needs an even number of rows (Ly=" +
                                        std::to_string(Ly) + ")");
        int W = 2 * Lx;
        lat.index_.resize(W * Ly);
        for (int j = 0; j < Ly; j++)
            for (int i = 0; i < W; i++) {
                lat.index_[j * W + i] = static_cast<long>(lat.n_++);
                lat.coord_.push_back({i, j, 0});
            }
    } else {
        if (b != Boundary::torus && b != Boundary::open)
            throw std::invalid_argument("triangular lattice supports torus and open boundaries only");
        lat.index_.resize(Lx * Ly);
        for (int j = 0; j < Ly; j++)
            for (int i = 0; i < Lx; i++) {
                lat.index_[j * Lx + i] = static_cast<long>(lat.n_++);
                lat.coord_.push_back({i, j, 0});
            }
    }
    return lat;
}

std::optional<size_t> Lattice::edge(int x, int y, int o) const {
    if (kind_ != LatticeKind::square_edges)
        throw std::logic_error("edge() needs a square-edges lattice");
    if (periodic_x())
        x = wrap_x(x);
    else if (!in_x(x))
        return std::nullopt;
    if (periodic_y())
        y = wrap_y(y);
    else if (!in_y(y))
        return std::nullopt;
    long q = index_[2 * (y * Lx_ + x) + o];
    if (q < 0)
        return std::nullopt;
    return static_cast<size_t>(q);
}

size_t Lattice::h(int x, int y) const {
    auto e = edge(x, y, 0);
    if (!e)
        throw std::out_of_range("no horizontal edge at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    return *e;
}

size_t Lattice::v(int x, int y) const {
    auto e = edge(x, y, 1);
    if (!e)
        throw std::out_of_range("no vertical edge at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    return *e;
}

Lattice::EdgeCoord Lattice::edge_coord(size_t e) const { return coord_.at(e); }

std::vector<std::pair<int, int>> Lattice::vertices() const {
    std::vector<std::pair<int, int>> out;
    for (int y = 0; y < Ly_; y++)
        for (int x = 0; x < Lx_; x++)
            out.push_back({x, y});
    return out;
}

std::optional<QubitSet> Lattice::star(int x, int y) const {
    QubitSet s;
    for (auto e : {edge(x, y, 0), edge(x - 1, y, 0), edge(x, y, 1), edge(x, y - 1, 1)})
        if (e)
            s.push_back(*e);
    if (s.empty())
        return std::nullopt;
    return s;
}

std::optional<QubitSet> Lattice::plaquette(int x, int y) const {
    auto a = edge(x, y, 0), b = edge(x, y + 1, 0), c = edge(x, y, 1), d = edge(x + 1, y, 1);
    if (!a || !b || !c || !d)
        return std::nullopt;
    return QubitSet{*a, *b, *c, *d};
}

std::vector<QubitSet> Lattice::stars() const {
    std::vector<QubitSet> out;
    for (auto [x, y] : vertices())
        if (auto s = star(x, y))
            out.push_back(*s);
    return out;
}

std::vector<std::pair<int, int>> Lattice::plaquette_corners() const {
    std::vector<std::pair<int, int>> out;
    for (int y = 0; y < Ly_; y++)
        for (int x = 0; x < Lx_; x++)
            if (plaquette(x, y))
                out.push_back({x, y});
    return out;
}

std::vector<QubitSet> Lattice::plaquettes() const {
    std::vector<QubitSet> out;
    for (auto [x, y] : plaquette_corners())
        out.push_back(*plaquette(x, y));
    return out;
}

std::optional<size_t> Lattice::delta_partner(size_t e) const {
    auto c = edge_coord(e);
    if (c.o == 0)
        return edge(c.x, c.y, 1);
    return edge(c.x - 1, c.y + 1, 0);
}

std::optional<size_t> Lattice::site(int i, int j) const {
    if (kind_ == LatticeKind::square_edges)
        throw std::logic_error("site() needs a vertex lattice");
    if (periodic_x())
        i = wrap_x(i);
    else if (!in_x(i))
        return std::nullopt;
    if (periodic_y())
        j = wrap_y(j);
    else if (!in_y(j))
        return std::nullopt;
    return static_cast<size_t>(index_[j * width() + i]);
}

std::vector<Lattice::Hexagon> Lattice::hexagons() const {
    if (kind_ != LatticeKind::honeycomb_vertices)
        throw std::logic_error("hexagons() needs a honeycomb lattice");
    std::vector<Hexagon> out;
    for (int j = 0; j < Ly_; j++)
        for (int i = 0; i < width(); i++) {
            if ((i + j) % 2)
                continue;
            std::vector<std::optional<size_t>> s = {site(i, j),         site(i + 1, j),     site(i + 2, j),
                                                    site(i + 2, j + 1), site(i + 1, j + 1), site(i, j + 1)};
            if (std::any_of(s.begin(), s.end(), [](auto &o) { return !o; }))
                continue;
            Hexagon hx;
            for (auto &o : s)
                hx.sites.push_back(*o);
            hx.letters = "YZXYZX";
            out.push_back(std::move(hx));
        }
    return out;
}

std::vector<std::pair<size_t, size_t>> Lattice::bonds() const {
    std::set<std::pair<size_t, size_t>> out;
    auto add = [&](std::optional<size_t> a, std::optional<size_t> b) {
        if (a && b && *a != *b)
            out.insert({std::min(*a, *b), std::max(*a, *b)});
    };
    if (kind_ == LatticeKind::honeycomb_vertices) {
        for (int j = 0; j < Ly_; j++)
            for (int i = 0; i < width(); i++) {
                add(site(i, j), site(i + 1, j));
                if ((i + j) % 2 == 0)
                    add(site(i, j), site(i, j + 1));
            }
    } else if (kind_ == LatticeKind::triangular_vertices) {
        for (int j = 0; j < Ly_; j++)
            for (int i = 0; i < Lx_; i++) {
                add(site(i, j), site(i + 1, j));
                add(site(i, j), site(i, j + 1));
                add(site(i, j), site(i - 1, j + 1));
            }
    } else {
        throw std::logic_error("bonds() needs a vertex lattice");
    }
    return {out.begin(), out.end()};
}

Point Lattice::position(size_t q) const {
    auto c = coord_.at(q);
    switch (kind_) {
    case LatticeKind::square_edges:
        return c.o == 0 ? Point{c.x + 0.5, double(c.y)} : Point{double(c.x), c.y + 0.5};
    case LatticeKind::honeycomb_vertices: return {0.5 * c.x, double(c.y)};
    case LatticeKind::triangular_vertices: return {double(c.x), double(c.y)};
    }
    return {};
}

Point Lattice::displacement(Point a, Point b) const {
    auto fold = [](double d, double period) {
        d = std::fmod(d, period);
        if (d > period / 2)
            d -= period;
        if (d < -period / 2)
            d += period;
        return d;
    };
    Point d{b.x - a.x, b.y - a.y};
    if (periodic_x())
        d.x = fold(d.x, Lx_);
    if (periodic_y())
        d.y = fold(d.y, Ly_);
    return d;
}

double Lattice::chebyshev(Point a, Point b) const {
    Point d = displacement(a, b);
    return std::max(std::abs(d.x), std::abs(d.y));
}

std::vector<QubitSet> Lattice::qubit_graph() const {
    std::vector<std::set<size_t>> adj(n_);
    if (kind_ == LatticeKind::square_edges) {
        for (auto &s : stars())
            for (size_t a : s)
                for (size_t b : s)
                    if (a != b)
                        adj[a].insert(b);
    } else {
        for (auto [a, b] : bonds()) {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    std::vector<QubitSet> out(n_);
    for (size_t q = 0; q < n_; q++)
        out[q].assign(adj[q].begin(), adj[q].end());
    return out;
}

QubitSet Lattice::disc(Point centre, double radius) const {
    QubitSet out;
    for (size_t q = 0; q < n_; q++)
        if (chebyshev(centre, position(q)) <= radius + 1e-9)
            out.push_back(q);
    return out;
}

// ---------------------------------------------------------------- paths

namespace {

void require_square(const Lattice &lat, const char *what) {
    if (lat.kind() != LatticeKind::square_edges)
        throw std::invalid_argument(std::string(what) + " is defined on the square lattice only");
}

std::pair<int, int> wrap2(const Lattice &lat, int X, int Y) {
    // doubled coordinates
    if (lat.periodic_x())
        X = ((X % (2 * lat.Lx())) + 2 * lat.Lx()) % (2 * lat.Lx());
    if (lat.periodic_y())
        Y = ((Y % (2 * lat.Ly())) + 2 * lat.Ly()) % (2 * lat.Ly());
    return {X, Y};
}

// the two ends of a link: vertices for direct paths, plaquettes for dual ones
std::pair<std::pair<int, int>, std::pair<int, int>> link_ends(const Lattice &lat, size_t e, bool dual) {
    auto c = lat.edge_coord(e);
    auto w = [&](int x, int y) {
        if (lat.periodic_x())
            x = ((x % lat.Lx()) + lat.Lx()) % lat.Lx();
        if (lat.periodic_y())
            y = ((y % lat.Ly()) + lat.Ly()) % lat.Ly();
        return std::pair<int, int>{x, y};
    };
    if (!dual)
        return c.o == 0 ? std::pair{w(c.x, c.y), w(c.x + 1, c.y)} : std::pair{w(c.x, c.y), w(c.x, c.y + 1)};
    return c.o == 0 ? std::pair{w(c.x, c.y - 1), w(c.x, c.y)} : std::pair{w(c.x - 1, c.y), w(c.x, c.y)};
}

}  // namespace

Path straight_path(const Lattice &lat, int x, int y, Step dir, int length, bool dual) {
    require_square(lat, "straight_path");
    if (length < 0)
        throw std::invalid_argument("path length must be nonnegative");
    Path p;
    p.dual = dual;
    int off = dual ? 1 : 0;
    p.trace.push_back(wrap2(lat, 2 * x + off, 2 * y + off));
    for (int k = 0; k < length; k++) {
        std::optional<size_t> e;
        int nx = x, ny = y;
        bool fwd = true;
        switch (dir) {
        case Step::px:
            e = dual ? lat.edge(x + 1, y, 1) : lat.edge(x, y, 0);
            nx = x + 1;
            break;
        case Step::mx:
            e = dual ? lat.edge(x, y, 1) : lat.edge(x - 1, y, 0);
            nx = x - 1;
            fwd = false;
            break;
        case Step::py:
            e = dual ? lat.edge(x, y + 1, 0) : lat.edge(x, y, 1);
            ny = y + 1;
            break;
        case Step::my:
            e = dual ? lat.edge(x, y, 0) : lat.edge(x, y - 1, 1);
            ny = y - 1;
            fwd = false;
            break;
        }
        if (!e)
            throw std::out_of_range("path leaves the lattice at (" + std::to_string(x) + "," + std::to_string(y) +
                                    ")");
        p.links.push_back(*e);
        p.forward.push_back(fwd);
        p.trace.push_back(wrap2(lat, x + nx + off, y + ny + off));
        p.trace.push_back(wrap2(lat, 2 * nx + off, 2 * ny + off));
        x = nx;
        y = ny;
    }
    if (length > 0 && p.trace.front() == p.trace.back()) {
        p.closed = true;
        p.trace.pop_back();
    }
    return p;
}

namespace {

Path legs_path(const Lattice &lat, int x, int y, const std::vector<std::pair<Step, int>> &legs, bool dual) {
    Path p;
    p.dual = dual;
    for (auto [s, len] : legs) {
        Path seg = straight_path(lat, x, y, s, len, dual);
        if (seg.closed) {
            seg.closed = false;
            seg.trace.push_back(seg.trace.front());
        }
        p = p.then(seg);
        switch (s) {
        case Step::px: x += len; break;
        case Step::mx: x -= len; break;
        case Step::py: y += len; break;
        case Step::my: y -= len; break;
        }
    }
    if (!p.trace.empty() && p.trace.size() > 1 && p.trace.front() == p.trace.back()) {
        p.closed = true;
        p.trace.pop_back();
    }
    return p;
}

}  // namespace

Path direct_path(const Lattice &lat, int x, int y, const std::vector<std::pair<Step, int>> &legs) {
    return legs_path(lat, x, y, legs, false);
}

Path dual_path(const Lattice &lat, int x, int y, const std::vector<std::pair<Step, int>> &legs) {
    return legs_path(lat, x, y, legs, true);
}

Path box_loop(const Lattice &lat, int x0, int y0, int x1, int y1) {
    int w = x1 - x0, h = y1 - y0;
    if (w < 1 || h < 1)
        throw std::invalid_argument("box loop needs a box of positive size");
    return direct_path(lat, x0, y0, {{Step::px, w}, {Step::py, h}, {Step::mx, w}, {Step::my, h}});
}

Path dual_box_loop(const Lattice &lat, int x0, int y0, int x1, int y1) {
    int w = x1 - x0 + 1, h = y1 - y0 + 1;
    if (w < 1 || h < 1)
        throw std::invalid_argument("dual box loop needs a nonempty box");
    return dual_path(lat, x0 - 1, y0 - 1, {{Step::px, w}, {Step::py, h}, {Step::mx, w}, {Step::my, h}});
}

void validate_path(const Lattice &lat, const Path &p) {
    require_square(lat, "validate_path");
    if (p.links.size() != p.forward.size())
        throw std::invalid_argument("path direction flags do not match links");
    for (size_t e : p.links)
        if (e >= lat.n())
            throw std::out_of_range("path link off the lattice");
    auto meets = [&](size_t a, size_t b) {
        auto [a0, a1] = link_ends(lat, a, p.dual);
        auto [b0, b1] = link_ends(lat, b, p.dual);
        return a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1;
    };
    for (size_t i = 0; i + 1 < p.links.size(); i++)
        if (!meets(p.links[i], p.links[i + 1]))
            throw std::invalid_argument("consecutive path links do not share an endpoint");
    if (p.closed && p.links.size() > 1 && !meets(p.links.back(), p.links.front()))
        throw std::invalid_argument("closed path does not end where it starts");
}

Path horizontal_loop(const Lattice &lat, int y, bool dual) {
    require_square(lat, "horizontal_loop");
    if (!lat.periodic_x())
        throw std::invalid_argument("horizontal loop needs a periodic x direction");
    return straight_path(lat, 0, y, Step::px, lat.Lx(), dual);
}

Path vertical_loop(const Lattice &lat, int x, bool dual) {
    require_square(lat, "vertical_loop");
    if (!lat.periodic_y())
        throw std::invalid_argument("vertical loop needs a periodic y direction");
    return straight_path(lat, x, 0, Step::py, lat.Ly(), dual);
}

Path open_string(const Lattice &lat, std::pair<int, int> from, std::pair<int, int> to, bool dual) {
    require_square(lat, "open_string");
    int dx = to.first - from.first, dy = to.second - from.second;
    if (lat.periodic_x()) {
        dx = ((dx % lat.Lx()) + lat.Lx()) % lat.Lx();
        if (dx > lat.Lx() / 2)
            dx -= lat.Lx();
    }
    if (lat.periodic_y()) {
        dy = ((dy % lat.Ly()) + lat.Ly()) % lat.Ly();
        if (dy > lat.Ly() / 2)
            dy -= lat.Ly();
    }
    std::vector<std::pair<Step, int>> legs;
    if (dx)
        legs.push_back({dx > 0 ? Step::px : Step::mx, std::abs(dx)});
    if (dy)
        legs.push_back({dy > 0 ? Step::py : Step::my, std::abs(dy)});
    Path p = legs_path(lat, from.first, from.second, legs, dual);
    p.closed = false;
    return p;
}

int count_contacts(const Lattice &lat, const Path &a, const Path &b, std::vector<Point> *where) {
    (void)lat;
    std::set<std::pair<int, int>> pts(b.trace.begin(), b.trace.end());
    size_t n = a.trace.size();
    std::vector<bool> hit(n);
    for (size_t i = 0; i < n; i++)
        hit[i] = pts.count(a.trace[i]) > 0;
    int runs = 0;
    for (size_t i = 0; i < n; i++) {
        bool prev = i > 0 ? hit[i - 1] : (a.closed ? hit[n - 1] : false);
        if (hit[i] && !prev) {
            runs++;
            if (where)
                where->push_back({a.trace[i].first / 2.0, a.trace[i].second / 2.0});
        }
    }
    if (runs == 0 && n > 0 && hit[0])  // closed path lying entirely on b
        runs = 1;
    return runs;
}

CrossingPair crossing_pair(const Lattice &lat, bool a_dual, bool b_dual) {
    if (lat.boundary() != Boundary::torus)
        throw std::invalid_argument("crossing pair of loops needs a torus");
    CrossingPair cp{horizontal_loop(lat, lat.Ly() / 2, a_dual), vertical_loop(lat, lat.Lx() / 2, b_dual), {}};
    std::vector<Point> where;
    if (count_contacts(lat, cp.a, cp.b, &where) != 1)
        throw std::invalid_argument("loops do not cross exactly once at this size");
    cp.crossing = where[0];
    return cp;
}

StatisticsTriple statistics_triple(const Lattice &lat, bool dual, int k) {
    require_square(lat, "statistics_triple");
    if (k <= 0)
        k = std::clamp(std::min((lat.Lx() - 1) / 2, lat.Ly() - 1), 1, 2);
    int px = lat.Lx() / 2, py = lat.Ly() / 2;
    bool fits = lat.Lx() >= 2 * k + 1 && lat.Ly() >= k + 1;
    if (!lat.periodic_x())
        fits = fits && px - k >= 0 && px + k < lat.Lx() - (dual ? 1 : 0);
    if (!lat.periodic_y())
        fits = fits && py - k >= 0;
    if (!fits)
        throw std::invalid_argument("lattice " + std::to_string(lat.Lx()) + "x" + std::to_string(lat.Ly()) +
                                    " too small for hopping legs of length " + std::to_string(k));
    StatisticsTriple t;
    t.pq = straight_path(lat, px - k, py, Step::px, k, dual);
    t.pr = straight_path(lat, px + k, py, Step::mx, k, dual);
    t.sp = straight_path(lat, px, py, Step::my, k, dual);
    double off = dual ? 0.5 : 0.0;
    t.p = {px + off, py + off};
    return t;
}

// ---------------------------------------------------------------- partitions

QubitSet set_union(const QubitSet &a, const QubitSet &b) {
    std::set<size_t> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return {s.begin(), s.end()};
}

QubitSet set_difference(const QubitSet &a, const QubitSet &b) {
    std::set<size_t> s(a.begin(), a.end());
    for (size_t q : b)
        s.erase(q);
    return {s.begin(), s.end()};
}

QubitSet complement(const QubitSet &a, size_t n) {
    std::vector<bool> in(n, false);
    for (size_t q : a)
        in.at(q) = true;
    QubitSet out;
    for (size_t q = 0; q < n; q++)
        if (!in[q])
            out.push_back(q);
    return out;
}

BitVec mask_of(const QubitSet &a, size_t n) {
    BitVec m(n);
    for (size_t q : a) {
        if (q >= n)
            throw std::out_of_range("qubit " + std::to_string(q) + " outside register of " + std::to_string(n));
        m.set(q, true);
    }
    return m;
}

QubitSet Partition::AB() const { return set_union(A, B); }
QubitSet Partition::BC() const { return set_union(B, C); }
QubitSet Partition::ABC() const { return set_union(A, BC()); }

void check_disjoint(const Lattice &lat, const Partition &p) {
    std::vector<int> owner(lat.n(), 0);
    for (auto *r : {&p.A, &p.B, &p.C, &p.hole})
        for (size_t q : *r) {
            if (q >= lat.n())
                throw std::out_of_range("partition region contains qubit " + std::to_string(q) +
                                        " outside the lattice");
            if (owner[q]++)
                throw std::invalid_argument("partition regions overlap at qubit " + std::to_string(q));
        }
}

int graph_distance(const Lattice &lat, const QubitSet &a, const QubitSet &b) {
    auto g = lat.qubit_graph();
    std::vector<int> dist(lat.n(), -1);
    std::deque<size_t> queue;
    for (size_t q : a) {
        dist[q] = 0;
        queue.push_back(q);
    }
    while (!queue.empty()) {
        size_t q = queue.front();
        queue.pop_front();
        for (size_t r : g[q])
            if (dist[r] < 0) {
                dist[r] = dist[q] + 1;
                queue.push_back(r);
            }
    }
    int best = -1;
    for (size_t q : b)
        if (dist[q] >= 0 && (best < 0 || dist[q] < best))
            best = dist[q];
    return best;
}

namespace {

double param(const Parameters &p, const std::string &key, double dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : it->second;
}

void check_known(const Parameters &p, std::initializer_list<const char *> known, const std::string &scheme) {
    for (auto &[k, v] : p) {
        bool ok = false;
        for (auto *n : known)
            ok = ok || k == n;
        if (!ok)
            throw std::invalid_argument("parameter '" + k + "' is not used by partition scheme " + scheme);
    }
}

Point centre_of(const Lattice &lat, const Parameters &p) {
    return {param(p, "cx", std::floor(lat.Lx() / 2.0)), param(p, "cy", std::floor(lat.Ly() / 2.0))};
}

void check_fits(const Lattice &lat, Point c, double outer, const std::string &what) {
    // on a periodic axis the outside region must keep a full band of edges,
    // otherwise the "annulus" wraps around the torus
    double hx = lat.periodic_x() ? lat.Lx() / 2.0 - 1 : std::min(c.x, lat.Lx() - 1 - c.x);
    double hy = lat.periodic_y() ? lat.Ly() / 2.0 - 1 : std::min(c.y, lat.Ly() - 1 - c.y);
    bool ok = outer <= hx + 1e-9 && outer <= hy + 1e-9;
    if (!ok)
        throw std::invalid_argument(what + ": outer radius " + std::to_string(outer) + " does not fit on a " +
                                    std::to_string(lat.Lx()) + "x" + std::to_string(lat.Ly()) + " lattice");
}

Partition levin_wen(const Lattice &lat, const Parameters &p) {
    check_known(p, {"cx", "cy", "inner", "outer", "gap", "strict"}, "levin-wen");
    Point c = centre_of(lat, p);
    double inner = param(p, "inner", 1), outer = param(p, "outer", 3), gap = param(p, "gap", 1);
    if (!p.count("inner") && !p.count("outer") && !p.count("gap")) {
        // compact default layout when the wide one does not fit
        try {
            check_fits(lat, c, outer, "levin-wen");
        } catch (const std::invalid_argument &) {
            inner = 0.5, outer = 2, gap = 0.5;
        }
    }
    // strict = 0 keeps only the region bookkeeping, for identities that hold
    // on any tripartition (tiny tori cannot host a proper annulus)
    bool strict = param(p, "strict", 1) != 0;
    if (inner <= 0 || outer <= inner)
        throw std::invalid_argument("levin-wen: need 0 < inner < outer");
    // two vertex rings of edges, so a star or plaquette fits across the annulus
    if (strict && outer - inner < 1.5)
        throw std::invalid_argument("levin-wen: annulus thickness outer - inner must be at least 1.5");
    if (gap < 0 || gap > inner)
        throw std::invalid_argument("levin-wen: gap must lie in [0, inner]");
    if (strict)
        check_fits(lat, c, outer, "levin-wen");
    Partition part;
    part.scheme = "levin-wen";
    for (size_t q = 0; q < lat.n(); q++) {
        Point d = lat.displacement(c, lat.position(q));
        double r = std::max(std::abs(d.x), std::abs(d.y));
        if (r <= inner + 1e-9)
            part.hole.push_back(q);
        else if (r <= outer + 1e-9) {
            if (d.x < -gap - 1e-9)
                part.A.push_back(q);
            else if (d.x > gap + 1e-9)
                part.C.push_back(q);
            else
                part.B.push_back(q);
        }
    }
    if (part.A.empty() || part.B.empty() || part.C.empty())
        throw std::invalid_argument("levin-wen: a region came out empty");
    return part;
}

Partition markov(const Lattice &lat, const Parameters &p) {
    check_known(p, {"cx", "cy", "inner", "width", "outer_width"}, "markov");
    Point c = centre_of(lat, p);
    double inner = param(p, "inner", 1);
    int width = static_cast<int>(param(p, "width", 2));
    int outer_width = static_cast<int>(param(p, "outer_width", 0));
    if (width < 1)
        throw std::invalid_argument("markov: width must be at least 1");
    Partition part;
    part.scheme = "markov";
    for (size_t q = 0; q < lat.n(); q++)
        if (lat.chebyshev(c, lat.position(q)) <= inner + 1e-9)
            part.A.push_back(q);
    if (part.A.empty())
        throw std::invalid_argument("markov: region A is empty");
    auto g = lat.qubit_graph();
    std::vector<int> dist(lat.n(), -1);
    std::deque<size_t> queue;
    for (size_t q : part.A) {
        dist[q] = 0;
        queue.push_back(q);
    }
    while (!queue.empty()) {
        size_t q = queue.front();
        queue.pop_front();
        for (size_t r : g[q])
            if (dist[r] < 0) {
                dist[r] = dist[q] + 1;
                queue.push_back(r);
            }
    }
    for (size_t q = 0; q < lat.n(); q++) {
        if (dist[q] <= 0)
            continue;
        if (dist[q] < width)
            part.B.push_back(q);
        else if (outer_width <= 0 || dist[q] < width + outer_width)
            part.C.push_back(q);
    }
    if (part.C.empty())
        throw std::invalid_argument("markov: width " + std::to_string(width) + " leaves no room for region C");
    return part;
}

Partition cylinder_cut(const Lattice &lat, const Parameters &p, int which) {
    std::string name = which == 1 ? "cylinder-cut-1" : "cylinder-cut-2";
    check_known(p, {"row"}, name);
    if (lat.boundary() == Boundary::open)
        throw std::invalid_argument(name + " needs a periodic x direction");
    int r = static_cast<int>(param(p, "row", lat.Ly() / 2));
    if (r < 1 || r > lat.Ly() - 1)
        throw std::invalid_argument(name + ": row " + std::to_string(r) + " outside 1.." +
                                    std::to_string(lat.Ly() - 1));
    Partition part;
    part.scheme = name;
    for (size_t q = 0; q < lat.n(); q++) {
        auto c = lat.edge_coord(q);
        bool lower;
        if (lat.kind() == LatticeKind::square_edges)
            lower = c.y < r || (which == 1 && c.y == r && c.o == 0);
        else if (lat.kind() == LatticeKind::honeycomb_vertices)
            // cut-1 adds the row-r sites whose vertical bond points down
            lower = c.y < r || (which == 1 && c.y == r && (c.x + c.y) % 2 == 1);
        else
            lower = c.y < r || (which == 1 && c.y == r && c.x % 2 == 0);
        (lower ? part.A : part.B).push_back(q);
    }
    return part;
}

}  // namespace

Partition partition(const Lattice &lat, const std::string &scheme, const Parameters &params) {
    Partition p;
    if (scheme == "levin-wen")
        p = levin_wen(lat, params);
    else if (scheme == "markov")
        p = markov(lat, params);
    else if (scheme == "cylinder-cut-1")
        p = cylinder_cut(lat, params, 1);
    else if (scheme == "cylinder-cut-2")
        p = cylinder_cut(lat, params, 2);
    else
        throw std::invalid_argument("unknown partition scheme '" + scheme + "'");
    check_disjoint(lat, p);
    return p;
}

}  // namespace mixtop
