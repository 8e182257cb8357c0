#include "orbitstar/glue.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace orbitstar::glue {

// ---------------------------------------------------------------- Jet

Jet Jet::constant(int n, int order, double v) {
    Jet j(n, order);
    if (v != 0.0) j.c_.emplace(Multi(n, 0), v);
    return j;
}

double Jet::coeff(const Multi& a) const {
    auto it = c_.find(a);
    return it == c_.end() ? 0.0 : it->second;
}

void Jet::set_coeff(const Multi& a, double v) {
    if (v == 0.0)
        c_.erase(a);
    else
        c_[a] = v;
}

namespace {
int multi_total(const Multi& a) {
    int t = 0;
    for (int v : a) t += v;
    return t;
}
}  // namespace

Jet& Jet::operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (const auto& [a, v] : o.c_)
        if (multi_total(a) <= order_) c_[a] += v;
    for (auto it = c_.begin(); it != c_.end();)
        it = (multi_total(it->first) > order_) ? c_.erase(it) : std::next(it);
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    Jet t = o;
    t *= -1.0;
    return *this += t;
}

Jet& Jet::operator*=(double s) {
    for (auto& [a, v] : c_) v *= s;
    return *this;
}

Jet Jet::operator*(const Jet& o) const {
    Jet out(n_, std::min(order_, o.order_));
    for (const auto& [a, va] : c_) {
        if (multi_total(a) > out.order_) continue;
        for (const auto& [b, vb] : o.c_) {
            Multi s(n_);
            int tot = 0;
            for (int i = 0; i < n_; ++i) tot += (s[i] = a[i] + b[i]);
            if (tot > out.order_) continue;
            out.c_[s] += va * vb;
        }
    }
    return out;
}

Jet Jet::derivative(int i) const {
    if (order_ < 1) throw std::invalid_argument("Jet: derivative exceeds jet order");
    Jet out(n_, order_ - 1);
    for (const auto& [a, v] : c_) {
        if (a[i - 1] == 0) continue;
        Multi b = a;
        --b[i - 1];
        out.c_[b] = v * a[i - 1];
    }
    return out;
}

Jet Jet::compose_series(const std::vector<double>& series) const {
    Jet d = *this;
    d.set_coeff(Multi(n_, 0), 0.0);  // d = j - j0, nilpotent to truncation
    Jet acc = Jet::constant(n_, order_, 0.0);
    Jet p = Jet::constant(n_, order_, 1.0);
    for (std::size_t k = 0; k < series.size(); ++k) {
        if (k > 0) p = p * d;
        Jet term = p;
        term *= series[k];
        acc += term;
        if (static_cast<int>(k) >= order_) break;
    }
    return acc;
}

// ---------------------------------------------------------------- SmoothFunc

namespace {
using Node = SmoothFuncNode;
using Kind = SmoothFuncNode::Kind;

SmoothFunc make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }
bool is_const(const SmoothFunc& f, double v) {
    return f->kind == Kind::Const && f->value == v;
}
}  // namespace

SmoothFunc sf_const(double v) {
    Node n;
    n.kind = Kind::Const;
    n.value = v;
    return make_node(std::move(n));
}

SmoothFunc sf_coord(int i) {
    Node n;
    n.kind = Kind::Coord;
    n.index = i;
    return make_node(std::move(n));
}

SmoothFunc sf_add(SmoothFunc a, SmoothFunc b) {
    if (a->kind == Kind::Const && b->kind == Kind::Const)
        return sf_const(a->value + b->value);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    Node n;
    n.kind = Kind::Add;
    n.kids = {std::move(a), std::move(b)};
    return make_node(std::move(n));
}

SmoothFunc sf_sub(SmoothFunc a, SmoothFunc b) { return sf_add(std::move(a), sf_scale(std::move(b), -1.0)); }

SmoothFunc sf_mul(SmoothFunc a, SmoothFunc b) {
    if (a->kind == Kind::Const && b->kind == Kind::Const)
        return sf_const(a->value * b->value);
    if (is_const(a, 0.0) || is_const(b, 0.0)) return sf_const(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    Node n;
    n.kind = Kind::Mul;
    n.kids = {std::move(a), std::move(b)};
    return make_node(std::move(n));
}

SmoothFunc sf_scale(SmoothFunc a, double s) { return sf_mul(sf_const(s), std::move(a)); }

SmoothFunc sf_pow(SmoothFunc a, int k) {
    if (k < 0) throw std::invalid_argument("sf_pow: negative exponent");
    if (k == 0) return sf_const(1.0);
    if (k == 1) return a;
    Node n;
    n.kind = Kind::Pow;
    n.index = k;
    n.kids = {std::move(a)};
    return make_node(std::move(n));
}

SmoothFunc sf_exp(SmoothFunc a) {
    Node n;
    n.kind = Kind::Exp;
    n.kids = {std::move(a)};
    return make_node(std::move(n));
}

SmoothFunc sf_recip(SmoothFunc a) {
    Node n;
    n.kind = Kind::Recip;
    n.kids = {std::move(a)};
    return make_node(std::move(n));
}

SmoothFunc sf_bump(SmoothFunc t) {
    Node n;
    n.kind = Kind::Bump;
    n.kids = {std::move(t)};
    return make_node(std::move(n));
}

SmoothFunc sf_box_bump(int var, double lo, double hi) {
    // t = (2 x - (lo+hi)) / (hi-lo), in (-1,1) exactly inside the interval
    SmoothFunc t = sf_scale(sf_add(sf_scale(sf_coord(var), 2.0), sf_const(-(lo + hi))),
                            1.0 / (hi - lo));
    return sf_bump(std::move(t));
}

SmoothFunc sf_deriv(SmoothFunc a, const Multi& d) {
    if (multi_total(d) == 0) return a;
    if (a->kind == Kind::Const) return sf_const(0.0);
    if (a->kind == Kind::Coord) {
        if (multi_total(d) > 1) return sf_const(0.0);
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] == 1) return sf_const(a->index == static_cast<int>(i) + 1 ? 1.0 : 0.0);
    }
    if (a->kind == Kind::Deriv) {
        Multi merged = a->deriv;
        if (merged.size() < d.size()) merged.resize(d.size(), 0);
        for (std::size_t i = 0; i < d.size(); ++i) merged[i] += d[i];
        return sf_deriv(a->kids[0], merged);
    }
    Node n;
    n.kind = Kind::Deriv;
    n.deriv = d;
    n.kids = {std::move(a)};
    return make_node(std::move(n));
}

namespace {

Jet jet_exp(const Jet& j) {
    std::vector<double> s(j.order() + 1);
    double e = std::exp(j.value());
    double fact = 1.0;
    for (int k = 0; k <= j.order(); ++k) {
        s[k] = e / fact;
        fact *= (k + 1);
    }
    return j.compose_series(s);
}

Jet jet_recip(const Jet& j) {
    double v = j.value();
    if (v == 0.0) throw std::domain_error("SmoothFunc: reciprocal of zero");
    std::vector<double> s(j.order() + 1);
    double p = 1.0 / v;
    for (int k = 0; k <= j.order(); ++k) {
        s[k] = p;
        p *= -1.0 / v;
    }
    return j.compose_series(s);
}

}  // namespace

const Jet& JetEvaluator::eval(const SmoothFunc& f, int order) {
    auto key = std::make_pair(f.get(), order);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const int n = static_cast<int>(x_.size());
    Jet out;
    switch (f->kind) {
        case Kind::Const:
            out = Jet::constant(n, order, f->value);
            break;
        case Kind::Coord: {
            out = Jet::constant(n, order, x_[f->index - 1]);
            if (order >= 1) {
                Multi e(n, 0);
                e[f->index - 1] = 1;
                out.set_coeff(e, 1.0);
            }
            break;
        }
        case Kind::Add:
            out = eval(f->kids[0], order);
            out += eval(f->kids[1], order);
            break;
        case Kind::Mul:
            out = eval(f->kids[0], order) * eval(f->kids[1], order);
            break;
        case Kind::Pow: {
            Jet base = eval(f->kids[0], order);
            out = base;
            for (int k = 1; k < f->index; ++k) out = out * base;
            break;
        }
        case Kind::Exp:
            out = jet_exp(eval(f->kids[0], order));
            break;
        case Kind::Recip:
            out = jet_recip(eval(f->kids[0], order));
            break;
        case Kind::Bump: {
            Jet t = eval(f->kids[0], order);
            if (std::abs(t.value()) >= 1.0) {
                out = Jet::constant(n, order, 0.0);
            } else {
                Jet u = Jet::constant(n, order, 1.0) - t * t;
                Jet w = jet_recip(u);
                w *= -1.0;
                out = jet_exp(w);
            }
            break;
        }
        case Kind::Deriv: {
            Jet j = eval(f->kids[0], order + multi_total(f->deriv));
            for (std::size_t i = 0; i < f->deriv.size(); ++i)
                for (int k = 0; k < f->deriv[i]; ++k)
                    j = j.derivative(static_cast<int>(i) + 1);
            out = j;
            break;
        }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
}

Jet jet_eval(const SmoothFunc& f, const std::vector<double>& x, int order) {
    JetEvaluator ev(x);
    return ev.eval(f, order);
}

// ---------------------------------------------------------------- DiffOp

DiffOp DiffOp::identity(int n, int H) {
    DiffOp d;
    d.n = n;
    d.H = H;
    d.slots.resize(H + 1);
    d.slots[0].push_back(DiffOpTerm{sf_const(1.0), Multi(n, 0)});
    return d;
}

bool DiffOp::order0_is_identity() const {
    if (slots.empty() || slots[0].size() != 1) return false;
    const DiffOpTerm& t = slots[0][0];
    return multi_total(t.deriv) == 0 && is_const(t.coeff, 1.0);
}

DiffOp add_diffops(const DiffOp& a, const DiffOp& b) {
    if (a.n != b.n || a.H != b.H) throw std::invalid_argument("add_diffops: shape mismatch");
    DiffOp out = a;
    for (int k = 0; k <= a.H; ++k)
        out.slots[k].insert(out.slots[k].end(), b.slots[k].begin(), b.slots[k].end());
    return out;
}

DiffOp scale_diffop(const SmoothFunc& c, const DiffOp& d) {
    DiffOp out = d;
    for (auto& slot : out.slots)
        for (auto& t : slot) t.coeff = sf_mul(c, t.coeff);
    return out;
}

namespace {

// enumerate gamma <= alpha componentwise with the multinomial factor
void leibniz_split(const Multi& alpha, const std::function<void(const Multi&, const Multi&, double)>& fn) {
    const int n = static_cast<int>(alpha.size());
    Multi gamma(n, 0);
    std::function<void(int, double)> rec = [&](int pos, double binom) {
        if (pos == n) {
            Multi rest(n);
            for (int i = 0; i < n; ++i) rest[i] = alpha[i] - gamma[i];
            fn(gamma, rest, binom);
            return;
        }
        double c = 1.0;
        for (int e = 0; e <= alpha[pos]; ++e) {
            gamma[pos] = e;
            rec(pos + 1, binom * c);
            c = c * (alpha[pos] - e) / (e + 1);
        }
        gamma[pos] = 0;
    };
    rec(0, 1.0);
}

}  // namespace

DiffOp compose_diffops(const DiffOp& a, const DiffOp& b) {
    if (a.n != b.n || a.H != b.H)
        throw std::invalid_argument("compose_diffops: shape mismatch");
    DiffOp out;
    out.n = a.n;
    out.H = a.H;
    out.slots.resize(a.H + 1);
    for (int ka = 0; ka <= a.H; ++ka)
        for (const DiffOpTerm& ta : a.slots[ka])
            for (int kb = 0; ka + kb <= a.H; ++kb)
                for (const DiffOpTerm& tb : b.slots[kb])
                    leibniz_split(ta.deriv, [&](const Multi& gamma, const Multi& rest, double binom) {
                        SmoothFunc c = sf_mul(ta.coeff, sf_deriv(tb.coeff, rest));
                        if (is_const(c, 0.0)) return;
                        if (binom != 1.0) c = sf_scale(c, binom);
                        Multi d(a.n);
                        for (int i = 0; i < a.n; ++i) d[i] = gamma[i] + tb.deriv[i];
                        out.slots[ka + kb].push_back(DiffOpTerm{std::move(c), std::move(d)});
                    });
    return out;
}

DiffOp invert_diffop(const DiffOp& d) {
    if (!d.order0_is_identity())
        throw std::invalid_argument("invert_diffop: order-0 slot is not the identity");
    DiffOp M;  // Id - d, has empty order-0 slot
    M.n = d.n;
    M.H = d.H;
    M.slots.resize(d.H + 1);
    for (int k = 1; k <= d.H; ++k)
        for (const DiffOpTerm& t : d.slots[k])
            M.slots[k].push_back(DiffOpTerm{sf_scale(t.coeff, -1.0), t.deriv});
    DiffOp acc = DiffOp::identity(d.n, d.H);
    DiffOp p = M;
    for (int k = 1; k <= d.H; ++k) {
        acc = add_diffops(acc, p);
        if (k < d.H) p = compose_diffops(M, p);
    }
    return acc;
}

HFunc hfunc_of(const SmoothFunc& f, int H) {
    HFunc out(H + 1, sf_const(0.0));
    out[0] = f;
    return out;
}

HFunc apply_diffop_sym(const DiffOp& d, const HFunc& f) {
    HFunc out(d.H + 1, sf_const(0.0));
    for (int k = 0; k <= d.H; ++k)
        for (const DiffOpTerm& t : d.slots[k])
            for (int m = 0; k + m <= d.H; ++m)
                out[k + m] = sf_add(out[k + m], sf_mul(t.coeff, sf_deriv(f[m], t.deriv)));
    return out;
}

std::vector<double> eval_hfunc(const HFunc& f, const std::vector<double>& x) {
    JetEvaluator ev(x);
    std::vector<double> out;
    for (const SmoothFunc& s : f) out.push_back(ev.eval(s, 0).value());
    return out;
}

std::vector<double> apply_diffop(const DiffOp& d, const SmoothFunc& f,
                                 const std::vector<double>& x) {
    return eval_hfunc(apply_diffop_sym(d, hfunc_of(f, d.H)), x);
}

// ---------------------------------------------------------------- LocalStar

LocalStar moyal_local_star(int n, int i, int j, double theta, int H) {
    LocalStar s;
    s.n = n;
    s.H = H;
    s.slots.resize(H + 1);
    s.slots[0].push_back(LocalStarTerm{sf_const(1.0), Multi(n, 0), Multi(n, 0)});
    double fact = 1.0;
    for (int k = 1; k <= H; ++k) {
        fact *= k;
        double base = std::pow(theta / 2.0, k) / fact;
        double binom = 1.0;
        for (int m = 0; m <= k; ++m) {
            Multi left(n, 0), right(n, 0);
            left[i - 1] = k - m;
            left[j - 1] += m;
            right[i - 1] = m;
            right[j - 1] += k - m;
            double c = base * binom * ((m % 2 == 0) ? 1.0 : -1.0);
            s.slots[k].push_back(LocalStarTerm{sf_const(c), std::move(left), std::move(right)});
            binom = binom * (k - m) / (m + 1);
        }
    }
    return s;
}

HFunc apply_local_star(const LocalStar& s, const HFunc& f, const HFunc& g) {
    HFunc out(s.H + 1, sf_const(0.0));
    for (int k = 0; k <= s.H; ++k)
        for (const LocalStarTerm& t : s.slots[k])
            for (int a = 0; k + a <= s.H; ++a)
                for (int b = 0; k + a + b <= s.H; ++b)
                    out[k + a + b] = sf_add(
                        out[k + a + b],
                        sf_mul(t.coeff, sf_mul(sf_deriv(f[a], t.left), sf_deriv(g[b], t.right))));
    return out;
}

// ---------------------------------------------------------------- cover

bool Box::contains(const std::vector<double>& x) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < x[i] && x[i] < hi[i])) return false;
    return true;
}

bool Box::overlaps(const Box& o) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < o.hi[i] && o.lo[i] < hi[i])) return false;
    return true;
}

void make_partition(ChartCover& cover) {
    cover.psi.clear();
    cover.phi.clear();
    for (const Box& b : cover.charts) {
        SmoothFunc p = sf_const(1.0);
        for (int i = 0; i < cover.n; ++i)
            p = sf_mul(p, sf_box_bump(i + 1, b.lo[i], b.hi[i]));
        cover.psi.push_back(p);
    }
    SmoothFunc total = sf_const(0.0);
    for (const SmoothFunc& p : cover.psi) total = sf_add(total, p);
    SmoothFunc inv = sf_recip(total);
    for (const SmoothFunc& p : cover.psi) cover.phi.push_back(sf_mul(p, inv));
}

DiffOp build_A(const ChartCover& cover, int r) {
    DiffOp A = DiffOp::identity(cover.n, cover.H);
    for (int s = 0; s < static_cast<int>(cover.charts.size()); ++s) {
        if (!cover.overlap(r, s)) continue;
        const DiffOp& T = cover.transitions.at({s, r});
        if (!T.order0_is_identity())
            throw std::invalid_argument("build_A: transition is not Id mod h");
        DiffOp tail;  // T_sr - Id
        tail.n = T.n;
        tail.H = T.H;
        tail.slots.resize(T.H + 1);
        for (int k = 1; k <= T.H; ++k) tail.slots[k] = T.slots[k];
        A = add_diffops(A, scale_diffop(cover.phi[s], tail));
    }
    return A;
}

HFunc glued_star_sym(const ChartCover& cover, int r, const HFunc& f, const HFunc& g) {
    DiffOp A = build_A(cover, r);
    DiffOp Ainv = invert_diffop(A);
    HFunc lf = apply_diffop_sym(Ainv, f);
    HFunc lg = apply_diffop_sym(Ainv, g);
    return apply_diffop_sym(A, apply_local_star(cover.stars[r], lf, lg));
}

namespace {
int chart_of(const ChartCover& cover, const std::vector<double>& x) {
    for (int r = 0; r < static_cast<int>(cover.charts.size()); ++r)
        if (cover.charts[r].contains(x)) return r;
    throw std::domain_error("glued_star: point outside the cover");
}
}  // namespace

std::vector<double> glued_star(const ChartCover& cover, const SmoothFunc& f,
                               const SmoothFunc& g, const std::vector<double>& x) {
    int r = chart_of(cover, x);
    return eval_hfunc(glued_star_sym(cover, r, hfunc_of(f, cover.H), hfunc_of(g, cover.H)), x);
}

// ---------------------------------------------------------------- checks

std::vector<SmoothFunc> test_functions(int n) {
    std::vector<SmoothFunc> fs;
    fs.push_back(sf_const(1.0));
    for (int i = 1; i <= n; ++i) fs.push_back(sf_coord(i));
    fs.push_back(sf_pow(sf_coord(1), 2));
    if (n >= 2) fs.push_back(sf_mul(sf_coord(1), sf_coord(2)));
    SmoothFunc arg = sf_scale(sf_coord(1), 0.3);
    if (n >= 2) arg = sf_add(arg, sf_scale(sf_coord(2), -0.2));
    fs.push_back(sf_exp(arg));
    return fs;
}

namespace {

void record(GlueReport& rep, double defect, double tol, const std::string& what) {
    if (defect > rep.max_defect) {
        rep.max_defect = defect;
        rep.detail = what;
    }
    if (defect > tol) rep.pass = false;
}

double hfunc_defect(const HFunc& a, const HFunc& b, const std::vector<double>& x) {
    std::vector<double> va = eval_hfunc(a, x);
    std::vector<double> vb = eval_hfunc(b, x);
    double d = 0.0;
    for (std::size_t k = 0; k < va.size(); ++k) d = std::max(d, std::abs(va[k] - vb[k]));
    return d;
}

}  // namespace

GlueReport partition_check(const ChartCover& cover,
                           const std::vector<std::vector<double>>& points, double tol) {
    GlueReport rep;
    SmoothFunc total = sf_const(0.0);
    for (const SmoothFunc& p : cover.phi) total = sf_add(total, p);
    for (const auto& x : points) {
        double v = jet_eval(total, x, 0).value();
        record(rep, std::abs(v - 1.0), tol, "partition sum");
    }
    // support containment: psi vanishes on the box faces
    for (std::size_t r = 0; r < cover.charts.size(); ++r) {
        const Box& b = cover.charts[r];
        for (int i = 0; i < cover.n; ++i)
            for (double edge : {b.lo[i], b.hi[i]}) {
                std::vector<double> x(cover.n);
                for (int j = 0; j < cover.n; ++j) x[j] = 0.5 * (b.lo[j] + b.hi[j]);
                x[i] = edge;
                double v = jet_eval(cover.psi[r], x, 0).value();
                record(rep, std::abs(v), tol, "psi support at box face");
            }
    }
    return rep;
}

GlueReport cocycle_check(const ChartCover& cover,
                         const std::vector<std::vector<double>>& points, double tol) {
    GlueReport rep;
    const int nc = static_cast<int>(cover.charts.size());
    std::vector<SmoothFunc> fs = test_functions(cover.n);
    auto op_defect = [&](const DiffOp& a, const DiffOp& b, auto in_region,
                         const std::string& what) {
        for (const SmoothFunc& f : fs) {
            HFunc fa = apply_diffop_sym(a, hfunc_of(f, cover.H));
            HFunc fb = apply_diffop_sym(b, hfunc_of(f, cover.H));
            for (const auto& x : points)
                if (in_region(x)) record(rep, hfunc_defect(fa, fb, x), tol, what);
        }
    };
    for (int r = 0; r < nc; ++r)
        for (int s = 0; s < nc; ++s) {
            if (!cover.overlap(r, s)) continue;
            // T_rs T_sr = Id on U_rs
            DiffOp comp = compose_diffops(cover.transitions.at({r, s}),
                                          cover.transitions.at({s, r}));
            op_defect(comp, DiffOp::identity(cover.n, cover.H),
                      [&](const std::vector<double>& x) {
                          return cover.charts[r].contains(x) && cover.charts[s].contains(x);
                      },
                      "inverse condition " + std::to_string(r) + "," + std::to_string(s));
            for (int t = 0; t < nc; ++t) {
                if (t == r || t == s || !cover.overlap(s, t) || !cover.overlap(r, t)) continue;
                // T_ts T_sr = T_tr on triple overlaps
                DiffOp lhs = compose_diffops(cover.transitions.at({t, s}),
                                             cover.transitions.at({s, r}));
                op_defect(lhs, cover.transitions.at({t, r}),
                          [&](const std::vector<double>& x) {
                              return cover.charts[r].contains(x) &&
                                     cover.charts[s].contains(x) && cover.charts[t].contains(x);
                          },
                          "cocycle " + std::to_string(t) + "," + std::to_string(s) + "," +
                              std::to_string(r));
            }
        }
    return rep;
}

GlueReport chart_consistency_check(const ChartCover& cover,
                                   const std::vector<std::vector<double>>& points,
                                   double tol) {
    GlueReport rep;
    const int nc = static_cast<int>(cover.charts.size());
    std::vector<SmoothFunc> fs = test_functions(cover.n);
    std::vector<DiffOp> A;
    for (int r = 0; r < nc; ++r) A.push_back(build_A(cover, r));
    for (int r = 0; r < nc; ++r)
        for (int t = 0; t < nc; ++t) {
            if (!cover.overlap(r, t)) continue;
            DiffOp lhs = compose_diffops(A[r], cover.transitions.at({r, t}));
            for (const SmoothFunc& f : fs) {
                HFunc fa = apply_diffop_sym(lhs, hfunc_of(f, cover.H));
                HFunc fb = apply_diffop_sym(A[t], hfunc_of(f, cover.H));
                for (const auto& x : points)
                    if (cover.charts[r].contains(x) && cover.charts[t].contains(x))
                        record(rep, hfunc_defect(fa, fb, x),
                               tol, "A_" + std::to_string(r) + " T = A_" + std::to_string(t));
            }
        }
    return rep;
}

GlueReport gluing_agreement_check(const ChartCover& cover,
                                  const std::vector<std::vector<double>>& points,
                                  double tol) {
    GlueReport rep;
    const int nc = static_cast<int>(cover.charts.size());
    std::vector<SmoothFunc> fs = test_functions(cover.n);
    if (fs.size() > 4) fs.resize(4);
    // per chart, symbolic glued products of the test pairs
    std::vector<std::vector<std::vector<HFunc>>> glued(nc);
    for (int r = 0; r < nc; ++r) {
        glued[r].resize(fs.size());
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = 0; j < fs.size(); ++j)
                glued[r][i].push_back(glued_star_sym(cover, r, hfunc_of(fs[i], cover.H),
                                                     hfunc_of(fs[j], cover.H)));
    }
    for (const auto& x : points)
        for (int r = 0; r < nc; ++r)
            for (int s = r + 1; s < nc; ++s) {
                if (!cover.charts[r].contains(x) || !cover.charts[s].contains(x)) continue;
                for (std::size_t i = 0; i < fs.size(); ++i)
                    for (std::size_t j = 0; j < fs.size(); ++j)
                        record(rep, hfunc_defect(glued[r][i][j], glued[s][i][j], x), tol,
                               "charts " + std::to_string(r) + " vs " + std::to_string(s));
            }
    return rep;
}

GlueReport associativity_check(const ChartCover& cover,
                               const std::vector<std::vector<double>>& points, double tol) {
    GlueReport rep;
    const int nc = static_cast<int>(cover.charts.size());
    std::vector<SmoothFunc> fs = test_functions(cover.n);
    std::vector<std::array<SmoothFunc, 3>> triples = {
        {fs[1], fs[std::min<std::size_t>(2, fs.size() - 1)], fs.back()},
        {fs.back(), fs[1], fs[1]}};
    for (int r = 0; r < nc; ++r) {
        std::vector<std::pair<HFunc, HFunc>> sides;
        for (const auto& [f, g, k] : triples) {
            HFunc F = hfunc_of(f, cover.H), G = hfunc_of(g, cover.H), Kf = hfunc_of(k, cover.H);
            HFunc lhs = glued_star_sym(cover, r, glued_star_sym(cover, r, F, G), Kf);
            HFunc rhs = glued_star_sym(cover, r, F, glued_star_sym(cover, r, G, Kf));
            sides.emplace_back(std::move(lhs), std::move(rhs));
        }
        for (const auto& x : points) {
            if (chart_of(cover, x) != r) continue;
            for (const auto& [lhs, rhs] : sides)
                record(rep, hfunc_defect(lhs, rhs, x), tol, "chart " + std::to_string(r));
        }
    }
    return rep;
}

GlueReport tangentiality_probe(const ChartCover& cover,
                               const std::vector<std::vector<double>>& points, double tol) {
    GlueReport rep;
    if (cover.leaf.empty()) {
        rep.detail = "no leaf data in fixture";
        return rep;
    }
    std::vector<SmoothFunc> fs = test_functions(cover.n);
    if (fs.size() > 3) fs.resize(3);
    for (const auto& [var, value] : cover.leaf) {
        for (const SmoothFunc& g : fs)
            for (const SmoothFunc& other : fs) {
                // f vanishes on the leaf
                SmoothFunc f = sf_mul(sf_sub(sf_coord(var), sf_const(value)), g);
                for (auto x : points) {
                    // project the sample onto the leaf
                    for (const auto& [v2, c2] : cover.leaf) x[v2 - 1] = c2;
                    std::vector<double> lv = glued_star(cover, f, other, x);
                    std::vector<double> rv = glued_star(cover, other, f, x);
                    for (double v : lv) record(rep, std::abs(v), tol, "left product on leaf");
                    for (double v : rv) record(rep, std::abs(v), tol, "right product on leaf");
                }
            }
    }
    return rep;
}

std::vector<std::vector<double>> sample_points(const ChartCover& cover, int count,
                                               unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.12, 0.88);
    std::vector<std::vector<double>> out;
    for (int k = 0; k < count; ++k) {
        const Box& b = cover.charts[k % cover.charts.size()];
        std::vector<double> x(cover.n);
        for (int i = 0; i < cover.n; ++i) x[i] = b.lo[i] + u(rng) * (b.hi[i] - b.lo[i]);
        out.push_back(std::move(x));
    }
    return out;
}

// ---------------------------------------------------------------- fixtures

namespace {

DiffOp exp_deriv(int n, int H, double a, int dir) {
    // truncated exp(h a d_dir)
    DiffOp d = DiffOp::identity(n, H);
    double c = 1.0;
    for (int k = 1; k <= H; ++k) {
        c *= a / k;
        Multi m(n, 0);
        m[dir - 1] = k;
        d.slots[k].push_back(DiffOpTerm{sf_const(c), std::move(m)});
    }
    return d;
}

ChartCover two_chart_moyal() {
    ChartCover c;
    c.n = 2;
    c.H = 2;
    c.K = 8;
    c.charts = {Box{{-2.0, -1.5}, {0.6, 1.5}}, Box{{-0.6, -1.5}, {2.0, 1.5}}};
    c.stars = {moyal_local_star(2, 1, 2, 1.0, 2), moyal_local_star(2, 1, 2, 1.0, 2)};
    DiffOp t21 = exp_deriv(2, 2, 0.3, 1);
    c.transitions[{1, 0}] = t21;
    c.transitions[{0, 1}] = invert_diffop(t21);
    make_partition(c);
    return c;
}

ChartCover three_chart_commuting() {
    ChartCover c;
    c.n = 2;
    c.H = 2;
    c.K = 8;
    c.charts = {Box{{-2.0, -1.0}, {0.5, 1.0}}, Box{{-1.0, -1.0}, {1.0, 1.0}},
                Box{{-0.5, -1.0}, {2.0, 1.0}}};
    for (int r = 0; r < 3; ++r) c.stars.push_back(moyal_local_star(2, 1, 2, 1.0, 2));
    const double a[3] = {0.0, 0.3, 0.5};
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s)
            if (r != s) c.transitions[{s, r}] = exp_deriv(2, 2, a[s] - a[r], 1);
    make_partition(c);
    return c;
}

ChartCover three_chart_perturbed() {
    ChartCover c = three_chart_commuting();
    // spoil T_02 (chart 3 -> chart 1 data) with a spurious drift
    Multi m(2, 0);
    m[1] = 1;
    c.transitions[{0, 2}].slots[1].push_back(DiffOpTerm{sf_const(0.01), m});
    return c;
}

ChartCover foliated_r4(bool leak) {
    ChartCover c;
    c.n = 4;
    c.H = 2;
    c.K = 8;
    c.charts = {Box{{-2.0, -1.5, -1.0, -1.0}, {0.6, 1.5, 1.0, 1.0}},
                Box{{-0.6, -1.5, -1.0, -1.0}, {2.0, 1.5, 1.0, 1.0}}};
    c.stars = {moyal_local_star(4, 1, 2, 1.0, 2), moyal_local_star(4, 1, 2, 1.0, 2)};
    DiffOp t21 = DiffOp::identity(4, 2);
    Multi dtheta(4, 0);
    dtheta[0] = 1;
    t21.slots[1].push_back(
        DiffOpTerm{sf_scale(sf_box_bump(1, -0.6, 0.6), 0.2), dtheta});
    if (leak) {
        Multi dp(4, 0);
        dp[2] = 1;  // transverse direction p1
        t21.slots[1].push_back(DiffOpTerm{sf_const(0.05), dp});
    }
    c.transitions[{1, 0}] = t21;
    c.transitions[{0, 1}] = invert_diffop(t21);
    c.leaf = {{3, 0.0}, {4, 0.0}};
    make_partition(c);
    return c;
}

}  // namespace

ChartCover builtin_cover(const std::string& name) {
    if (name == "two_chart_moyal") return two_chart_moyal();
    if (name == "three_chart_commuting") return three_chart_commuting();
    if (name == "three_chart_perturbed") return three_chart_perturbed();
    if (name == "foliated_r4") return foliated_r4(false);
    if (name == "foliated_r4_leak") return foliated_r4(true);
    throw std::invalid_argument("unknown builtin cover: " + name);
}

// ---------------------------------------------------------------- parser

namespace {

[[noreturn]] void fixture_error(int line, const std::string& msg) {
    throw std::invalid_argument("fixture line " + std::to_string(line) + ": " + msg);
}

}  // namespace

ChartCover parse_cover_text(const std::string& text) {
    ChartCover c;
    c.H = 2;
    c.K = 8;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int pending_s = -1, pending_r = -1;
    bool in_transition = false;
    auto finish_transition = [&]() { in_transition = false; };
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (in_transition && kw != "term" && kw != "end")
            fixture_error(lineno, "expected 'term' or 'end' inside transition block");
        if (kw == "dim") {
            if (!(ls >> c.n) || c.n <= 0) fixture_error(lineno, "bad dimension");
        } else if (kw == "horder") {
            if (!(ls >> c.H) || c.H < 0) fixture_error(lineno, "bad h order");
        } else if (kw == "jetorder") {
            if (!(ls >> c.K) || c.K < 0) fixture_error(lineno, "bad jet order");
        } else if (kw == "chart") {
            if (c.n == 0) fixture_error(lineno, "dim must come before charts");
            Box b;
            b.lo.resize(c.n);
            b.hi.resize(c.n);
            for (int i = 0; i < c.n; ++i)
                if (!(ls >> b.lo[i] >> b.hi[i]) || b.lo[i] >= b.hi[i])
                    fixture_error(lineno, "bad chart box bounds");
            c.charts.push_back(std::move(b));
        } else if (kw == "star") {
            int r;
            std::string kind;
            if (!(ls >> r >> kind)) fixture_error(lineno, "bad star line");
            if (kind != "moyal") fixture_error(lineno, "unknown local product: " + kind);
            int i, j;
            double theta;
            if (!(ls >> i >> j >> theta)) fixture_error(lineno, "bad moyal parameters");
            if (static_cast<int>(c.stars.size()) < r) c.stars.resize(r, LocalStar{});
            c.stars[r - 1] = moyal_local_star(c.n, i, j, theta, c.H);
        } else if (kw == "transition") {
            int s, r;
            if (!(ls >> s >> r)) fixture_error(lineno, "bad transition line");
            std::string mode;
            ls >> mode;
            if (mode == "inverse") {
                auto it = c.transitions.find({r - 1, s - 1});
                if (it == c.transitions.end())
                    fixture_error(lineno, "inverse of an undefined transition");
                c.transitions[{s - 1, r - 1}] = invert_diffop(it->second);
            } else if (mode == "exp_deriv") {
                double a;
                int dir;
                if (!(ls >> a >> dir)) fixture_error(lineno, "bad exp_deriv parameters");
                c.transitions[{s - 1, r - 1}] = exp_deriv(c.n, c.H, a, dir);
            } else if (mode == "begin" || mode.empty()) {
                pending_s = s - 1;
                pending_r = r - 1;
                c.transitions[{pending_s, pending_r}] = DiffOp::identity(c.n, c.H);
                in_transition = true;
            } else {
                fixture_error(lineno, "unknown transition mode: " + mode);
            }
        } else if (kw == "term") {
            if (!in_transition) fixture_error(lineno, "term outside a transition block");
            int h;
            std::string ckind;
            if (!(ls >> h >> ckind) || h < 1 || h > c.H)
                fixture_error(lineno, "bad term h-order");
            SmoothFunc coeff;
            if (ckind == "const") {
                double v;
                if (!(ls >> v)) fixture_error(lineno, "bad const coefficient");
                coeff = sf_const(v);
            } else if (ckind == "bump") {
                int var;
                double lo, hi, amp;
                if (!(ls >> var >> lo >> hi >> amp))
                    fixture_error(lineno, "bad bump coefficient");
                coeff = sf_scale(sf_box_bump(var, lo, hi), amp);
            } else {
                fixture_error(lineno, "unknown coefficient kind: " + ckind);
            }
            std::string dkw;
            Multi m(c.n, 0);
            if (ls >> dkw) {
                if (dkw != "d") fixture_error(lineno, "expected 'd' before derivative list");
                int i;
                while (ls >> i) {
                    if (i < 1 || i > c.n) fixture_error(lineno, "derivative index out of range");
                    ++m[i - 1];
                }
            }
            c.transitions[{pending_s, pending_r}].slots[h].push_back(
                DiffOpTerm{std::move(coeff), std::move(m)});
        } else if (kw == "end") {
            if (!in_transition) fixture_error(lineno, "stray end");
            finish_transition();
        } else if (kw == "leaf") {
            int var;
            double v;
            if (!(ls >> var >> v)) fixture_error(lineno, "bad leaf line");
            c.leaf.emplace_back(var, v);
        } else {
            fixture_error(lineno, "unknown keyword: " + kw);
        }
    }
    if (in_transition) throw std::invalid_argument("fixture: unterminated transition block");
    if (c.charts.empty()) throw std::invalid_argument("fixture: no charts");
    if (c.stars.size() != c.charts.size())
        throw std::invalid_argument("fixture: need one local product per chart");
    make_partition(c);
    return c;
}

ChartCover load_cover_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open fixture file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_cover_text(ss.str());
}

}  // namespace orbitstar::glue
