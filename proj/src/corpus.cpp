#include "phifix/corpus.hpp"

namespace phifix {

namespace {
constexpr std::string_view k_quartic_unit_circle = R"fxl(# Quartic self-map on a sampled stretch of the real line. Its fixed-point set
# meets the zero set of phi exactly on the unit circle about the origin; the
# radius-2 circle stays fixed but leaves the zero set.
name quartic_unit_circle
space reals from -3 to 3 step 0.25
map piecewise { otherwise : x^4 - 5*x^2 + x + 4 }
phi piecewise { otherwise : abs(x - 1) + abs(x + 1) - 2 }
query rho
query fixset
query zeroset
query circle x0=0 r=1
query circle x0=0 r=2
query disc x0=0 r=1
expect rho = 1.37109375 tol 1e-9
expect fixset size = 4
expect fixset has -2 = 1
expect fixset has -1 = 1
expect fixset has 1 = 1
expect fixset has 2 = 1
expect zeroset size = 9
expect circle x0=0 r=1 size = 2
expect circle x0=0 r=1 holds = 1
expect circle x0=0 r=2 holds = 0
expect disc x0=0 r=1 holds = 0
)fxl";
constexpr std::string_view k_step_shift_disc = R"fxl(# Identity inside the unit interval, shift by 2 outside. The whole unit disc
# about 0 is fixed and phi-null, and so is every smaller disc.
name step_shift_disc
space reals from -3 to 3 step 0.25
map piecewise { abs(x) <= 1 : x ; otherwise : x + 2 }
phi piecewise { otherwise : abs(x - 1) + abs(x + 1) - 2 }
query rho
query fixset
query circle x0=0 r=1
query disc x0=0 r=1
query disc x0=0 r=0.5
expect rho = 2 tol 1e-9
expect fixset size = 9
expect circle x0=0 r=1 holds = 1
expect disc x0=0 r=1 holds = 1
expect disc x0=0 r=0.5 holds = 1
)fxl";
constexpr std::string_view k_half_scaling_tail = R"fxl(# Halving map on the tail x > 2, identity elsewhere. The displacement infimum
# on the tail is 1 but unattained, so the sampled estimate sits step/2 above
# it; the certifications on this carrier are sampled evidence, and the
# radius-estimate circle picks up a point just right of 0 where phi > 0.
name half_scaling_tail
space reals from -3 to 2 step 0.25 union reals from 2 to 10 step 0.01
map piecewise { x > 2 : x / 2 ; otherwise : x }
phi piecewise { x > 0 : x / 4 ; otherwise : 0 }
query rho
query contraction type1 x0=-1 k=0.5
query minimal_k type1 x0=-1
query circle x0=-1 r=1
query disc x0=-1 r=1
query certify type1_circle x0=-1 k=0.5
query certify type1_disc x0=-1 k=0.5
expect rho = 1.005 tol 1e-9
# against the continuum infimum 1, the estimate sits within step/2 + tol
expect rho = 1 tol 0.005000001
expect contraction type1 x0=-1 k=0.5 holds = 1
expect minimal_k type1 x0=-1 = 0.45454545454545453 tol 1e-9
expect circle x0=-1 r=1 size = 2
expect circle x0=-1 r=1 holds = 1
expect disc x0=-1 r=1 holds = 1
expect certify type1_circle x0=-1 k=0.5 consistent = 1
expect certify type1_circle x0=-1 k=0.5 passes = 0
expect certify type1_disc x0=-1 k=0.5 consistent = 1
expect certify type1_disc x0=-1 k=0.5 passes = 0
)fxl";
constexpr std::string_view k_left_shift_tail = R"fxl(# Left shift by 1 on the far-left tail, identity from -2 rightward. Every
# moved point has displacement exactly 1, so mu = 1 is exact here. The
# generalized anchor grows like |x|^2 while the plain one grows like |x|, so
# the generalized inequality holds at k = 1/4 on this carrier (its pointwise
# ratio crosses 1/4 near -8.5, hence the truncation at -9) while no k in (0,1)
# works for the plain kind: the pointwise ratio is 1 + 1/|x| > 1.
name left_shift_tail
space reals from -20 to -9 step 0.25 union reals from -2 to 3 step 0.25
map piecewise { x >= -2 : x ; otherwise : x - 1 }
phi piecewise { x >= -1 : 0 ; otherwise : -2 * x }
query mu
query M(-9, 0)
query contraction gentype1 x0=0 k=0.25
query minimal_k type1 x0=0
query minimal_k gentype1 x0=0
query circle x0=0 r=1
query disc x0=0 r=1
query certify gentype1_circle x0=0 k=0.25
query certify gentype1_disc x0=0 k=0.25
expect mu = 1 tol 1e-9
expect M(-9, 0) = 85.5 tol 1e-9
expect contraction gentype1 x0=0 k=0.25 holds = 1
expect minimal_k type1 x0=0 = 1.1111111111111112 tol 1e-9
expect minimal_k gentype1 x0=0 = 0.23391812865497075 tol 1e-9
expect circle x0=0 r=1 size = 2
expect circle x0=0 r=1 holds = 1
expect disc x0=0 r=1 holds = 1
expect certify gentype1_circle x0=0 k=0.25 passes = 1
expect certify gentype1_disc x0=0 k=0.25 passes = 1
)fxl";
constexpr std::string_view k_doubling_left_tail = R"fxl(# Doubling left of -1, identity from -1 rightward. The unit circle about 0 is
# phi-fixed, yet no admissible k exists for the plain or generalized kind at
# x0 = 0: every moved point has pointwise ratio exactly 2 (plain), and the
# generalized ratio stays above 1/2. The geometric conclusion holding while
# the contraction hypotheses fail is the converse gap the scanner hunts for.
name doubling_left_tail
space reals from -4 to 2 step 0.25
map piecewise { x < -1 : 2 * x ; otherwise : x }
phi piecewise { x >= -1 : 0 ; otherwise : abs(x) }
query rho
query mu
query M(-2, 0)
query minimal_k type1 x0=0
query minimal_k gentype1 x0=0
query circle x0=0 r=1
query disc x0=0 r=1
query disc x0=-1 r=1
expect rho = 1.25 tol 1e-9
expect mu = 1.118033988749895 tol 1e-9
expect M(-2, 0) = 4 tol 1e-9
expect minimal_k type1 x0=0 = 2 tol 1e-9
expect minimal_k gentype1 x0=0 = 1.2 tol 1e-9
expect circle x0=0 r=1 size = 2
expect circle x0=0 r=1 holds = 1
expect disc x0=0 r=1 holds = 1
expect disc x0=-1 r=1 holds = 0
)fxl";
constexpr std::string_view k_finite_union_map = R"fxl(# Eight isolated points glued to a sampled right tail. Only 5 moves (to 1),
# so rho = 4 and mu = 2 exactly. phi is a quintic with roots on the finite
# part, pinned to 0 at -6, 1 and 5. All six contraction kinds hold: the plain
# ones at x0 = 0 with k = 0.9, the generalized ones at x0 = -4 with k = 0.25,
# and the circles/discs of radius rho (resp. mu) are phi-fixed.
name finite_union_map
space finite { -6, -4, -2, 0, 1, 2, 4, 5 } union reals from 6 to 20 step 0.5
map piecewise { x == 5 : 1 ; otherwise : x }
phi piecewise { x == -6 : 0 ; x == 1 : 0 ; x == 5 : 0 ; otherwise : x^5 - 20*x^3 + 64*x }
query rho
query mu
query fixset
query zeroset
query M(5, -4)
query circle x0=0 r=4
query circle x0=-4 r=2
query disc x0=0 r=4
query disc x0=-4 r=2
query contraction type1 x0=0 k=0.9
query contraction gentype1 x0=-4 k=0.25
query minimal_k type1 x0=0
query certify_all x0=0 k=0.9 kgen=0.25
query certify_all x0=-4 k=0.9 kgen=0.25
expect rho = 4 tol 1e-9
expect mu = 2 tol 1e-9
expect M(5, -4) = 25.2 tol 1e-9
expect fixset size = 36
expect fixset has 5 = 0
expect zeroset size = 8
expect zeroset has -6 = 1
expect zeroset has -4 = 1
expect zeroset has -2 = 1
expect zeroset has 0 = 1
expect zeroset has 1 = 1
expect zeroset has 2 = 1
expect zeroset has 4 = 1
expect zeroset has 5 = 1
expect circle x0=0 r=4 size = 2
expect circle x0=0 r=4 holds = 1
expect circle x0=-4 r=2 size = 2
expect circle x0=-4 r=2 holds = 1
expect disc x0=0 r=4 size = 6
expect disc x0=0 r=4 holds = 1
expect disc x0=-4 r=2 size = 3
expect disc x0=-4 r=2 holds = 1
expect contraction type1 x0=0 k=0.9 holds = 1
expect contraction gentype1 x0=-4 k=0.25 holds = 1
expect minimal_k type1 x0=0 = 0.8 tol 1e-9
expect certify type1_circle x0=0 k=0.9 passes = 1
expect certify type1_disc x0=0 k=0.9 passes = 1
expect certify type2_circle x0=0 k=0.9 passes = 1
expect certify type2_disc x0=0 k=0.9 passes = 1
expect certify type3_circle x0=0 k=0.9 passes = 1
expect certify type3_disc x0=0 k=0.9 passes = 1
expect certify gentype1_circle x0=-4 k=0.25 passes = 1
expect certify gentype1_disc x0=-4 k=0.25 passes = 1
expect certify gentype2_circle x0=-4 k=0.25 passes = 1
expect certify gentype2_disc x0=-4 k=0.25 passes = 1
expect certify gentype3_circle x0=-4 k=0.25 passes = 1
expect certify gentype3_disc x0=-4 k=0.25 passes = 1
)fxl";
constexpr std::string_view k_activation_real = R"fxl(# Piecewise-linear activation-style map: reflect-and-raise left of 0, identity
# on (0,4], shift by 1 on (4,8], shift by 2 beyond. The map and phi are left
# undefined at 0 in the usual presentation; the otherwise branches pin
# T(0) = 2 and phi(0) = 1, keeping 0 outside both the fixed set and the zero
# set. Fixed points meet the zero set on (0,3]; the unit circle and disc
# about 2 live inside it.
name activation_real
space reals from -2 to 10 step 0.25
map piecewise { x < 0 : abs(x) + 1 ; x > 0 and x <= 4 : x ; x > 4 and x <= 8 : x + 1 ; otherwise : x + 2 }
phi piecewise { x < 0 : abs(x) ; x > 0 and x <= 3 : 0 ; x > 3 and x <= 8 : 8 - x ; x > 8 : x ; otherwise : 1 }
query rho
query fixset
query zeroset
query circle x0=2 r=1
query disc x0=2 r=1
expect rho = 1 tol 1e-9
expect fixset size = 16
expect fixset has 4 = 1
expect fixset has 0 = 0
expect zeroset size = 13
expect zeroset has 8 = 1
expect zeroset has 0 = 0
expect circle x0=2 r=1 size = 2
expect circle x0=2 r=1 holds = 1
expect disc x0=2 r=1 holds = 1
)fxl";
constexpr std::string_view k_activation_complex = R"fxl(# Complex activation-style map keyed on the real part: negated conjugate far
# left, unit shifts on two bands, identity on the band -2 < re(z) <= 1. phi
# vanishes exactly on the unit circle and at the origin, so the unit circle
# about 0 is phi-fixed (sampled at 360 angles) while the closed unit disc is
# not: interior points are fixed but phi > 0 there. The branch boundary sits
# half a tolerance inside the circle so rim samples computed as |z| = 1 - 1ulp
# still evaluate on the outer branch; no carrier point lies in that ring.
name activation_complex
space complex re -6 to 2 im -2 to 2 step 0.25
map piecewise { re(z) < -4 : -conj(z) ; re(z) <= -2 : z + 1 ; re(z) <= 1 : z ; otherwise : z - 1 }
phi piecewise { abs(z) >= 0.9999999995 : abs(z) - 1 ; otherwise : abs(z) }
query rho
query circle x0=0 r=1
query disc x0=0 r=1
expect rho = 1 tol 1e-9
expect circle x0=0 r=1 size = 360
expect circle x0=0 r=1 holds = 1
expect disc x0=0 r=1 holds = 0
)fxl";
constexpr CorpusScenario k_corpus[] = {
    {"quartic_unit_circle", k_quartic_unit_circle},
    {"step_shift_disc", k_step_shift_disc},
    {"half_scaling_tail", k_half_scaling_tail},
    {"left_shift_tail", k_left_shift_tail},
    {"doubling_left_tail", k_doubling_left_tail},
    {"finite_union_map", k_finite_union_map},
    {"activation_real", k_activation_real},
    {"activation_complex", k_activation_complex},
};

}  // namespace

std::span<const CorpusScenario> corpus_scenarios() { return k_corpus; }

}  // namespace phifix
