#include "quotmmp/fan.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace quotmmp {

DivisorClass DivisorClass::primitive() const {
    if (is_zero()) return *this;
    long long g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
    return {a / g, b / g};
}

std::string DivisorClass::label() const {
    auto part = [](long long c, const char* sym, bool lead) -> std::string {
        if (c == 0) return "";
        std::string out;
        if (c < 0)
            out += lead ? "-" : " - ";
        else if (!lead)
            out += " + ";
        long long m = c < 0 ? -c : c;
        if (m != 1) out += std::to_string(m);
        out += sym;
        return out;
    };
    if (is_zero()) return "0";
    std::string out = part(a, "α", true);
    out += part(b, "β", out.empty());
    return out;
}

bool same_ray(const DivisorClass& u, const DivisorClass& v) {
    if (u.is_zero() || v.is_zero()) return u.is_zero() && v.is_zero();
    return cross(u, v) == 0 && (u.a * v.a + u.b * v.b) > 0;
}

Cone2 Cone2::make(DivisorClass r1, DivisorClass r2) {
    if (r1.is_zero() || r2.is_zero()) throw std::invalid_argument("cone ray is zero");
    r1 = r1.primitive();
    r2 = r2.primitive();
    if (cross(r1, r2) < 0) std::swap(r1, r2);
    if (cross(r1, r2) == 0 && !(r1 == r2))
        throw std::invalid_argument("opposite rays do not span a strictly convex cone");
    return Cone2{r1, r2};
}

bool cone_contains(const Cone2& cone, const DivisorClass& x, bool strict) {
    if (x.is_zero()) return !strict;
    if (same_ray(cone.ray1, cone.ray2)) return !strict && same_ray(cone.ray1, x);
    DivisorClass r1 = cone.ray1, r2 = cone.ray2;
    if (cross(r1, r2) < 0) std::swap(r1, r2);  // cones may be stored in either orientation
    long long c1 = cross(r1, x);
    long long c2 = cross(x, r2);
    return strict ? (c1 > 0 && c2 > 0) : (c1 >= 0 && c2 >= 0);
}

namespace {

// Angle region in (-pi/2, pi]: 0 for the open lower-right quadrant, 1 for
// the positive alpha axis, 2 for the open upper half plane, 3 for the
// negative alpha axis. All rays arising here live in these regions.
int angle_region(const DivisorClass& u) {
    if (u.b < 0) {
        if (u.a <= 0) throw std::domain_error("ray angle outside (-pi/2, pi]");
        return 0;
    }
    if (u.b == 0) return u.a > 0 ? 1 : 3;
    return 2;
}

}  // namespace

int ray_angle_compare(const DivisorClass& u, const DivisorClass& v) {
    if (u.is_zero() || v.is_zero()) throw std::domain_error("zero class has no angle");
    int ru = angle_region(u), rv = angle_region(v);
    if (ru != rv) return ru < rv ? -1 : 1;
    long long c = cross(u, v);
    return c > 0 ? -1 : (c < 0 ? 1 : 0);
}

DivisorClass c1_Bm(const ModuliParams& params, int m) {
    if (m < -1) throw std::domain_error("c1(B_m) defined for m >= -1");
    return DivisorClass{-(static_cast<long long>(params.d) - 1 - m), 1};
}

DivisorClass canonical_class(const ModuliParams& params) {
    int n = params.n, r = params.r, d = params.d;
    if (r > n - 2 || d < 1)
        throw std::domain_error("canonical class in (alpha, beta) needs Picard rank 2 "
                                "(0 <= r <= n-2, d >= 1)");
    long long a = -(n + (2LL * r + 2 - n) * d);
    long long b = -(n - 2LL * r);
    return DivisorClass{a, b};
}

DivisorClass prime_basis_change(const ModuliParams& params, const DivisorClass& c) {
    // a' alpha' + b' beta' = a' alpha + b' (2d alpha - beta)
    return DivisorClass{c.a + 2LL * params.d * c.b, -c.b};
}

std::string wall_kind_str(WallKind k) {
    switch (k) {
        case WallKind::FiberType: return "fiber-type";
        case WallKind::Divisorial: return "divisorial";
        case WallKind::Small: return "small";
    }
    return "?";
}

namespace {

WallTarget grassmannian_target(int sub, int level, int ambient, bool primed) {
    WallTarget t;
    t.type = WallTarget::Type::Grassmannian;
    std::string space = primed ? "V'_" : "V_";
    t.label = "Gr(" + std::to_string(sub) + ", " + space + std::to_string(level) + ")";
    t.data = {sub, level, ambient, primed ? 1 : 0};
    return t;
}

WallTarget projective_target(long long dim, const std::string& label) {
    WallTarget t;
    t.type = WallTarget::Type::ProjectiveSpace;
    t.label = label + " = P^" + std::to_string(dim);
    t.data = {dim};
    return t;
}

WallTarget quantum_target(int s, int r, int d) {
    WallTarget t;
    t.type = WallTarget::Type::QuantumGrassmannian;
    t.label = "K^" + std::to_string(d) + "_{" + std::to_string(s) + "," + std::to_string(r) + "}";
    t.data = {s, r, d};
    return t;
}

WallTarget locus_target(int m, bool primed) {
    WallTarget t;
    t.type = WallTarget::Type::DegeneracyLocus;
    t.label = std::string(primed ? "X'" : "X") + "^0_" + std::to_string(m) + " in G" +
              (primed ? "'" : "") + "_" + std::to_string(m);
    t.data = {m, primed ? 1 : 0};
    return t;
}

std::string model_name(bool primed, int m) {
    std::string base = primed ? "R'" : "R";
    return m < 0 ? base : base + "_" + std::to_string(m);
}

}  // namespace

std::pair<long long, long long> exceptional_dimensions(const ModuliParams& params, int m) {
    int d = params.d, s = params.s(), r = params.r;
    bool divisorial_level = (d % s == 0) && m == d / s;
    if (!(m >= params.floor_d_s() + 1 && m <= d - 1) && !divisorial_level)
        throw std::domain_error("exceptional dimensions defined for floor(d/s)+1 <= m <= d-1 "
                                "or m = d/s when d/s is an integer");
    long long dimR = params.dim_R();
    long long pr1 = dimR - (static_cast<long long>(s) * m - d + 1);
    long long pr2 = dimR - (static_cast<long long>(m + 2) * r + d + 1);
    return {pr1, pr2};
}

MMPReport mmp_report(const ModuliParams& params) {
    if (params.n < 2) throw std::domain_error("mmp_report requires n >= 2");
    MMPReport rep;
    rep.n = params.n;
    rep.r = params.r;
    rep.d = params.d;
    rep.s = params.s();
    rep.dim = params.dim_R();

    int n = params.n, r = params.r, d = params.d, s = params.s();

    if (r == n - 1 || d == 0) {
        rep.degenerate = true;
        rep.log_fano = true;  // projective space / Grassmannian
        if (r == n - 1) {
            rep.dim = static_cast<long long>(n) * (d + 1) - 1;
            rep.degenerate_model =
                "P(V^ (x) H^0(O(" + std::to_string(d) + "))^) = P^" + std::to_string(rep.dim);
        } else {
            rep.degenerate_model = "Gr(" + std::to_string(s) + ", " + std::to_string(n) + ")";
        }
        return rep;
    }

    rep.canonical = canonical_class(params);

    const DivisorClass alpha{1, 0};
    const DivisorClass beta{0, 1};
    bool has_prime = r >= 2;

    // Chambers: R, then R_m descending, then the dual side when r >= 2.
    rep.nef = Cone2{alpha, beta};
    rep.chambers.push_back({model_name(false, -1), rep.nef});
    for (int m = d - 1; m >= params.floor_d_s() + 1; --m)
        rep.chambers.push_back(
            {model_name(false, m), Cone2{c1_Bm(params, m), c1_Bm(params, m - 1)}});
    if (has_prime) {
        auto from_prime = [&](const DivisorClass& c) { return prime_basis_change(params, c); };
        rep.chambers.push_back({model_name(true, -1), Cone2{from_prime(beta), alpha}});
        ModuliParams dual{n, s, d};  // floor/ceil of d/r live on the dual side
        for (int m = d - 1; m >= dual.floor_d_s() + 1; --m)
            rep.chambers.push_back({model_name(true, m),
                                    Cone2{from_prime(c1_Bm(params, m)),
                                          from_prime(c1_Bm(params, m - 1))}});
    }

    // Movable and effective cones.
    DivisorClass mov_beta = c1_Bm(params, params.floor_d_s());       // -(d - floor(d/s) - 1)a + b
    DivisorClass eff_beta = c1_Bm(params, params.ceil_d_s() - 1);    // -(d - ceil(d/s))a + b
    DivisorClass mov_alpha, eff_alpha;
    if (r == 0) {
        mov_alpha = alpha;
        eff_alpha = DivisorClass{2LL * d, 0};
    } else if (r == 1) {
        mov_alpha = alpha;
        eff_alpha = DivisorClass{2LL * d, -1};
    } else {
        int fdr = d / r, cdr = (d + r - 1) / r;
        mov_alpha = DivisorClass{static_cast<long long>(d) + fdr + 1, -1};
        eff_alpha = DivisorClass{static_cast<long long>(d) + cdr, -1};
    }
    rep.mov = Cone2{mov_alpha.primitive(), mov_beta};
    rep.eff = Cone2{eff_alpha.primitive(), eff_beta};

    // Walls, counterclockwise. Dual side first (below the alpha axis).
    if (has_prime) {
        ModuliParams dual{n, s, d};
        // Outer movable wall on the alpha' side.
        {
            WallRecord w;
            w.ray = mov_alpha.primitive();
            w.side_models = {model_name(true, dual.floor_d_s() + 1 <= d - 1
                                                  ? dual.floor_d_s() + 1
                                                  : -1)};
            if (d % r != 0) {
                w.kind = WallKind::FiberType;
            } else {
                w.kind = WallKind::Divisorial;
                w.contracted = eff_alpha.primitive();
            }
            w.target = grassmannian_target((dual.floor_d_s() + 1) * r - d, dual.floor_d_s(),
                                           n * (dual.floor_d_s() + 1), true);
            rep.walls.push_back(std::move(w));
        }
        // Interior walls on the dual side: c1(B'_{m'}) for floor(d/r)+1 <= m' <= d-1.
        for (int m = dual.floor_d_s() + 1; m <= d - 1; ++m) {
            WallRecord w;
            w.ray = prime_basis_change(params, c1_Bm(params, m)).primitive();
            w.kind = WallKind::Small;
            w.target = locus_target(m, true);
            w.side_models = {model_name(true, m), model_name(true, m + 1 <= d - 1 ? m + 1 : -1)};
            rep.walls.push_back(std::move(w));
        }
    }
    // The alpha wall.
    {
        WallRecord w;
        w.ray = alpha;
        if (r == 0) {
            w.kind = WallKind::FiberType;
            w.target = projective_target(d, "P(H^0(O(" + std::to_string(d) + "))^)");
            w.side_models = {model_name(false, -1)};
        } else if (r == 1) {
            w.kind = WallKind::Divisorial;
            w.contracted = DivisorClass{2LL * d, -1};
            w.target = projective_target(static_cast<long long>(n) * (d + 1) - 1,
                                         "P(V (x) H^0(O(" + std::to_string(d) + "))^)");
            w.side_models = {model_name(false, -1)};
        } else {
            w.kind = WallKind::Small;
            w.target = quantum_target(s, r, d);
            w.side_models = {model_name(false, -1), model_name(true, -1)};
        }
        rep.walls.push_back(std::move(w));
    }
    // Interior walls on the unprimed side: c1(B_m) for floor(d/s)+1 <= m <= d-1.
    for (int m = d - 1; m >= params.floor_d_s() + 1; --m) {
        WallRecord w;
        w.ray = c1_Bm(params, m).primitive();
        w.kind = WallKind::Small;
        w.target = locus_target(m, false);
        w.side_models = {model_name(false, m + 1 <= d - 1 ? m + 1 : -1), model_name(false, m)};
        rep.walls.push_back(std::move(w));
    }
    // Outer movable wall on the beta side.
    {
        WallRecord w;
        w.ray = mov_beta.primitive();
        w.side_models = {model_name(false, params.floor_d_s() + 1 <= d - 1
                                               ? params.floor_d_s() + 1
                                               : -1)};
        if (d % s != 0) {
            w.kind = WallKind::FiberType;
        } else {
            w.kind = WallKind::Divisorial;
            w.contracted = eff_beta.primitive();
        }
        w.target = grassmannian_target((params.floor_d_s() + 1) * s - d, params.floor_d_s(),
                                       n * (params.floor_d_s() + 1), false);
        rep.walls.push_back(std::move(w));
    }

    rep.log_fano = cone_contains(rep.mov, -rep.canonical, false) &&
                   cone_contains(rep.eff, -rep.canonical, true);
    return rep;
}

}  // namespace quotmmp
