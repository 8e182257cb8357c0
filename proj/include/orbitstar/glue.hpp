#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace orbitstar::glue {

// multi-index over n real variables
using Multi = std::vector<int>;

// Truncated Taylor expansion at a base point: coefficients are
// d^a f / a! for |a| <= order. Arithmetic tracks the valid order.
class Jet {
public:
    Jet() = default;
    Jet(int n, int order) : n_(n), order_(order) {}
    static Jet constant(int n, int order, double v);

    int nvars() const { return n_; }
    int order() const { return order_; }
    double value() const { return coeff(Multi(n_, 0)); }
    double coeff(const Multi& a) const;
    void set_coeff(const Multi& a, double v);
    const std::map<Multi, double>& coeffs() const { return c_; }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    Jet& operator*=(double s);
    friend Jet operator*(Jet a, double s) { return a *= s; }
    Jet operator*(const Jet& o) const;  // truncated convolution
    // d_i, one order lower
    Jet derivative(int i) const;
    // sum_k series[k] (j - j0)^k, for composing with scalar functions
    Jet compose_series(const std::vector<double>& series) const;

private:
    int n_ = 0;
    int order_ = -1;
    std::map<Multi, double> c_;
};

// Smooth scalar function as an immutable expression tree.
struct SmoothFuncNode;
using SmoothFunc = std::shared_ptr<const SmoothFuncNode>;

struct SmoothFuncNode {
    enum class Kind { Const, Coord, Add, Mul, Pow, Exp, Recip, Bump, Deriv };
    Kind kind;
    double value = 0.0;          // Const
    int index = 0;               // Coord (1-based), Pow exponent
    Multi deriv;                 // Deriv
    std::vector<SmoothFunc> kids;
};

SmoothFunc sf_const(double v);
SmoothFunc sf_coord(int i);
SmoothFunc sf_add(SmoothFunc a, SmoothFunc b);
SmoothFunc sf_sub(SmoothFunc a, SmoothFunc b);
SmoothFunc sf_mul(SmoothFunc a, SmoothFunc b);
SmoothFunc sf_scale(SmoothFunc a, double s);
SmoothFunc sf_pow(SmoothFunc a, int k);  // k >= 0
SmoothFunc sf_exp(SmoothFunc a);
SmoothFunc sf_recip(SmoothFunc a);  // guard: argument must not vanish
// bump(t) = exp(-1/(1-t^2)) for |t| < 1, else 0; C-infinity everywhere
SmoothFunc sf_bump(SmoothFunc t);
// bump of x_var rescaled to the interval (lo, hi)
SmoothFunc sf_box_bump(int var, double lo, double hi);
SmoothFunc sf_deriv(SmoothFunc a, const Multi& d);

// Taylor jet of f at x to the given order; throws std::domain_error on a
// reciprocal guard violation.
Jet jet_eval(const SmoothFunc& f, const std::vector<double>& x, int order);

// Jet evaluation with a per-point memo keyed on shared subtrees; use one
// evaluator per base point.
class JetEvaluator {
public:
    explicit JetEvaluator(std::vector<double> x) : x_(std::move(x)) {}
    const Jet& eval(const SmoothFunc& f, int order);

private:
    std::vector<double> x_;
    std::map<std::pair<const SmoothFuncNode*, int>, Jet> memo_;
};

// h-graded differential operator: slots[k] holds the h^k terms.
struct DiffOpTerm {
    SmoothFunc coeff;
    Multi deriv;
};
struct DiffOp {
    int n = 0;
    int H = 0;
    std::vector<std::vector<DiffOpTerm>> slots;  // size H+1

    static DiffOp identity(int n, int H);
    bool order0_is_identity() const;
};

DiffOp add_diffops(const DiffOp& a, const DiffOp& b);
DiffOp scale_diffop(const SmoothFunc& c, const DiffOp& d);  // left-multiply
// Leibniz composition, h-orders beyond H dropped
DiffOp compose_diffops(const DiffOp& a, const DiffOp& b);
// Neumann-series inverse mod h^{H+1}; order-0 slot must be the identity term
DiffOp invert_diffop(const DiffOp& d);

// h-graded function (size H+1), the symbolic value space of the operators
using HFunc = std::vector<SmoothFunc>;
HFunc hfunc_of(const SmoothFunc& f, int H);

HFunc apply_diffop_sym(const DiffOp& d, const HFunc& f);
// numeric evaluation: one scalar per h-order
std::vector<double> apply_diffop(const DiffOp& d, const SmoothFunc& f,
                                 const std::vector<double>& x);
std::vector<double> eval_hfunc(const HFunc& f, const std::vector<double>& x);

// h-graded bidifferential product; slot 0 must be plain multiplication.
struct LocalStarTerm {
    SmoothFunc coeff;
    Multi left, right;
};
struct LocalStar {
    int n = 0;
    int H = 0;
    std::vector<std::vector<LocalStarTerm>> slots;
};
// Moyal product in the variable pair (i, j) with parameter theta
LocalStar moyal_local_star(int n, int i, int j, double theta, int H);
HFunc apply_local_star(const LocalStar& s, const HFunc& f, const HFunc& g);

// Open boxes in R^n.
struct Box {
    std::vector<double> lo, hi;
    bool contains(const std::vector<double>& x) const;
    bool overlaps(const Box& o) const;
};

struct ChartCover {
    int n = 0;
    int H = 0;
    int K = 0;  // jet order budget, informational
    std::vector<Box> charts;
    std::vector<SmoothFunc> psi;  // unnormalized bump products, supp in chart
    std::vector<SmoothFunc> phi;  // psi_r / sum_s psi_s
    std::vector<LocalStar> stars;
    // transitions[(s,r)] = T_sr, defined for every ordered overlapping pair
    std::map<std::pair<int, int>, DiffOp> transitions;  // 0-based chart ids
    std::vector<std::pair<int, double>> leaf;  // transverse (1-based var, value)

    bool overlap(int r, int s) const { return r != s && charts[r].overlaps(charts[s]); }
};

// fill psi/phi from the chart boxes
void make_partition(ChartCover& cover);

// A_r = Id + sum_{s != r} phi_s (T_sr - Id); order-0 slot is structurally Id
DiffOp build_A(const ChartCover& cover, int r);

// A_r(A_r^{-1} f *_r A_r^{-1} g) in the chart of the given index
HFunc glued_star_sym(const ChartCover& cover, int r, const HFunc& f, const HFunc& g);
// evaluate in the first chart containing x; throws std::domain_error outside
std::vector<double> glued_star(const ChartCover& cover, const SmoothFunc& f,
                               const SmoothFunc& g, const std::vector<double>& x);

struct GlueReport {
    bool pass = true;
    double max_defect = 0.0;
    std::string detail;
};

// sum phi = 1 at interior points, psi = 0 at box boundary points
GlueReport partition_check(const ChartCover& cover,
                           const std::vector<std::vector<double>>& points,
                           double tol = 1e-12);
// T_ts T_sr = T_tr on triple overlaps and T_rs T_sr = Id on double overlaps
GlueReport cocycle_check(const ChartCover& cover,
                         const std::vector<std::vector<double>>& points,
                         double tol = 1e-10);
// A_r T_rt = A_t on overlaps
GlueReport chart_consistency_check(const ChartCover& cover,
                                   const std::vector<std::vector<double>>& points,
                                   double tol = 1e-10);
// glued products computed in different admissible charts agree
GlueReport gluing_agreement_check(const ChartCover& cover,
                                  const std::vector<std::vector<double>>& points,
                                  double tol = 1e-9);
// associativity defect of the glued product
GlueReport associativity_check(const ChartCover& cover,
                               const std::vector<std::vector<double>>& points,
                               double tol = 1e-8);
// products of leaf-vanishing functions still vanish on the leaf
GlueReport tangentiality_probe(const ChartCover& cover,
                               const std::vector<std::vector<double>>& points,
                               double tol = 1e-10);

// deterministic sample points inside the cover
std::vector<std::vector<double>> sample_points(const ChartCover& cover, int count,
                                               unsigned long long seed);

// the standard test-function family used by the checks
std::vector<SmoothFunc> test_functions(int n);

// line-based fixture description; see docs in README
ChartCover parse_cover_text(const std::string& text);
ChartCover load_cover_file(const std::string& path);
// two_chart_moyal, three_chart_commuting, three_chart_perturbed,
// foliated_r4, foliated_r4_leak
ChartCover builtin_cover(const std::string& name);

}  // namespace orbitstar::glue
