#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quotmmp/forms.hpp"

namespace quotmmp {

// An integer divisor class a*alpha + b*beta in N^1(R).
struct DivisorClass {
    long long a = 0;
    long long b = 0;

    bool operator==(const DivisorClass&) const = default;

    bool is_zero() const { return a == 0 && b == 0; }
    DivisorClass operator+(const DivisorClass& o) const { return {a + o.a, b + o.b}; }
    DivisorClass operator-(const DivisorClass& o) const { return {a - o.a, b - o.b}; }
    DivisorClass operator-() const { return {-a, -b}; }
    DivisorClass operator*(long long k) const { return {k * a, k * b}; }

    // The primitive generator of the same ray.
    DivisorClass primitive() const;

    // Human-readable "5a-b" style label using alpha/beta.
    std::string label() const;
};

inline long long cross(const DivisorClass& u, const DivisorClass& v) {
    return u.a * v.b - u.b * v.a;
}

// True if u and v generate the same ray (positive proportionality).
bool same_ray(const DivisorClass& u, const DivisorClass& v);

// A closed convex cone spanned by two primitive rays; ray1 == ray2 encodes a
// single ray. The rays of chamber cones are stored in the presentation order
// of the decomposition (outermost-adjacent first on the dual side), so
// membership tests normalize the orientation themselves.
struct Cone2 {
    DivisorClass ray1;
    DivisorClass ray2;

    bool operator==(const Cone2&) const = default;

    static Cone2 make(DivisorClass r1, DivisorClass r2);
};

// Membership via integer cross products; strict = interior. The zero class
// is a non-strict member of every cone and a strict member of none.
bool cone_contains(const Cone2& cone, const DivisorClass& x, bool strict);

// Total order on nonzero classes by ray angle in (-pi/2, pi], increasing
// counterclockwise; ties (same ray) compare equal.
int ray_angle_compare(const DivisorClass& u, const DivisorClass& v);

// c_1(B_m) = -(d-1-m) alpha + beta.
DivisorClass c1_Bm(const ModuliParams& params, int m);

// K_R = -(n + (2r+2-n)d) alpha - (n-2r) beta. Requires the Picard-rank-2
// range 0 <= r <= n-2, d >= 1.
DivisorClass canonical_class(const ModuliParams& params);

// Change of basis from (alpha', beta') on the dual side to (alpha, beta):
// alpha' -> alpha, beta' -> 2d alpha - beta. Involutive.
DivisorClass prime_basis_change(const ModuliParams& params, const DivisorClass& c);

enum class WallKind { FiberType, Divisorial, Small };

std::string wall_kind_str(WallKind k);

// Descriptor of the birational target a wall contracts to.
struct WallTarget {
    enum class Type { Grassmannian, ProjectiveSpace, QuantumGrassmannian, DegeneracyLocus };
    Type type = Type::Grassmannian;
    std::string label;
    // Extra shape data, meaning depends on type (documented in the JSON
    // serializer).
    std::vector<long long> data;

    bool operator==(const WallTarget&) const = default;
};

struct WallRecord {
    DivisorClass ray;
    WallKind kind = WallKind::Small;
    WallTarget target;
    std::vector<std::string> side_models;        // chambers the wall bounds
    std::optional<DivisorClass> contracted;      // divisor class, when divisorial

    bool operator==(const WallRecord&) const = default;
};

struct ChamberRecord {
    std::string model;  // "R", "R_m", "R'", "R'_m"
    Cone2 nef;

    bool operator==(const ChamberRecord&) const = default;
};

struct MMPReport {
    int n = 0, r = 0, d = 0, s = 0;
    long long dim = 0;

    bool degenerate = false;        // r = n-1 or d = 0: Picard rank 1
    std::string degenerate_model;   // what R is in that case

    std::vector<ChamberRecord> chambers;
    std::vector<WallRecord> walls;  // ordered counterclockwise by slope
    Cone2 nef, mov, eff;
    DivisorClass canonical;
    bool log_fano = false;

    bool operator==(const MMPReport&) const = default;
};

// The full Mori chamber decomposition with wall classification and the
// log-Fano membership certificate. Requires n >= 2.
MMPReport mmp_report(const ModuliParams& params);

// Dimensions of the exceptional loci of pr_1 : R_{m+1} -> X_m^0 and
// pr_2 : R_m -> X_m^0 in the flip range floor(d/s)+1 <= m <= d-1; also
// defined at m = d/s when d/s is an integer, where pr_1 contracts a divisor.
std::pair<long long, long long> exceptional_dimensions(const ModuliParams& params, int m);

std::string report_to_text(const MMPReport& rep);
std::string report_to_svg(const MMPReport& rep);

}  // namespace quotmmp
