#include "dilsum/bvfun.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace dilsum {

namespace {
mpq_class parse_rational(const std::string& tok) {
    mpq_class q;
    if (q.set_str(tok, 10) != 0)
        throw InvalidArgumentError("bad rational token: '" + tok + "'");
    q.canonicalize();
    return q;
}
}  // namespace

PeriodicBVFunction::PeriodicBVFunction(std::vector<mpq_class> bps, std::vector<AffinePiece> pcs)
    : breakpoints_(std::move(bps)), pieces_(std::move(pcs)) {
    cum_integral_.resize(pieces_.size() + 1);
    cum_integral_[0] = 0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        mpq_class x1 = breakpoints_[i];
        mpq_class x2 = (i + 1 < breakpoints_.size()) ? breakpoints_[i + 1] : mpq_class(1);
        const AffinePiece& p = pieces_[i];
        cum_integral_[i + 1] =
            cum_integral_[i] + p.slope * (x2 * x2 - x1 * x1) / 2 + p.intercept * (x2 - x1);
    }
    breakpoints_d_.reserve(breakpoints_.size());
    slopes_d_.reserve(pieces_.size());
    intercepts_d_.reserve(pieces_.size());
    for (const auto& b : breakpoints_) breakpoints_d_.push_back(b.get_d());
    for (const auto& p : pieces_) {
        slopes_d_.push_back(p.slope.get_d());
        intercepts_d_.push_back(p.intercept.get_d());
    }
}

PeriodicBVFunction PeriodicBVFunction::from_pieces(std::vector<mpq_class> breakpoints,
                                                   std::vector<AffinePiece> pieces) {
    if (breakpoints.empty() || breakpoints.size() != pieces.size())
        throw InvalidArgumentError("from_pieces: need one breakpoint per piece");
    if (breakpoints.front() != 0)
        throw InvalidArgumentError("from_pieces: first breakpoint must be 0");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (breakpoints[i] < 0 || breakpoints[i] >= 1)
            throw InvalidArgumentError("from_pieces: breakpoints must lie in [0,1)");
        if (i > 0 && !(breakpoints[i - 1] < breakpoints[i]))
            throw InvalidArgumentError("from_pieces: breakpoints must be ascending");
    }
    PeriodicBVFunction f(std::move(breakpoints), std::move(pieces));
    if (f.mean() != 0)
        throw InvalidArgumentError("from_pieces: mean over [0,1) must be exactly 0, got " +
                                   f.mean().get_str());
    return f;
}

PeriodicBVFunction PeriodicBVFunction::sawtooth() {
    return from_pieces({mpq_class(0)}, {AffinePiece{mpq_class(1), mpq_class(-1, 2)}});
}

PeriodicBVFunction PeriodicBVFunction::square_wave() {
    return from_pieces({mpq_class(0), mpq_class(1, 2)},
                       {AffinePiece{mpq_class(0), mpq_class(1)},
                        AffinePiece{mpq_class(0), mpq_class(-1)}});
}

PeriodicBVFunction PeriodicBVFunction::parse(std::istream& in) {
    std::vector<mpq_class> bps;
    std::vector<AffinePiece> pcs;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string b, s, c;
        if (!(ls >> b) || b[0] == '#') continue;
        if (!(ls >> s >> c))
            throw InvalidArgumentError("function file: expected '<breakpoint> <slope> <intercept>'");
        bps.push_back(parse_rational(b));
        pcs.push_back(AffinePiece{parse_rational(s), parse_rational(c)});
    }
    return from_pieces(std::move(bps), std::move(pcs));
}

void PeriodicBVFunction::print(std::ostream& out) const {
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        out << breakpoints_[i].get_str() << " " << pieces_[i].slope.get_str() << " "
            << pieces_[i].intercept.get_str() << "\n";
}

std::size_t PeriodicBVFunction::locate(const mpq_class& x) const {
    // last breakpoint <= x
    std::size_t lo = 0, hi = breakpoints_.size();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (breakpoints_[mid] <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

mpq_class PeriodicBVFunction::eval01(const mpq_class& x) const {
    if (x < 0 || x >= 1) throw InvalidArgumentError("eval01: x must lie in [0,1)");
    const AffinePiece& p = pieces_[locate(x)];
    return p.slope * x + p.intercept;
}

mpq_class PeriodicBVFunction::eval(const mpq_class& x) const {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return eval01(x - mpq_class(fl));
}

double PeriodicBVFunction::eval_d(double x) const {
    x -= std::floor(x);
    if (x >= 1.0) x = 0.0;
    if (pieces_.size() == 1) return slopes_d_[0] * x + intercepts_d_[0];
    std::size_t i =
        std::upper_bound(breakpoints_d_.begin(), breakpoints_d_.end(), x) - breakpoints_d_.begin();
    i = (i == 0) ? 0 : i - 1;
    return slopes_d_[i] * x + intercepts_d_[i];
}

mpq_class PeriodicBVFunction::mean() const { return cum_integral_.back(); }

mpq_class PeriodicBVFunction::antiderivative01(const mpq_class& u) const {
    if (u < 0 || u > 1) throw InvalidArgumentError("antiderivative01: u must lie in [0,1]");
    if (u == 1) return cum_integral_.back();
    std::size_t i = locate(u);
    const mpq_class& x1 = breakpoints_[i];
    const AffinePiece& p = pieces_[i];
    return cum_integral_[i] + p.slope * (u * u - x1 * x1) / 2 + p.intercept * (u - x1);
}

double PeriodicBVFunction::antiderivative01_d(double u) const {
    if (pieces_.size() == 1)
        return slopes_d_[0] * u * u / 2 + intercepts_d_[0] * u;
    std::size_t i =
        std::upper_bound(breakpoints_d_.begin(), breakpoints_d_.end(), u) - breakpoints_d_.begin();
    i = (i == 0) ? 0 : i - 1;
    double x1 = breakpoints_d_[i];
    return cum_integral_[i].get_d() + slopes_d_[i] * (u * u - x1 * x1) / 2 +
           intercepts_d_[i] * (u - x1);
}

mpq_class PeriodicBVFunction::second_moment() const {
    mpq_class acc = 0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        mpq_class x1 = breakpoints_[i];
        mpq_class x2 = (i + 1 < breakpoints_.size()) ? breakpoints_[i + 1] : mpq_class(1);
        const mpq_class& s = pieces_[i].slope;
        const mpq_class& b = pieces_[i].intercept;
        acc += s * s * (x2 * x2 * x2 - x1 * x1 * x1) / 3 + s * b * (x2 * x2 - x1 * x1) +
               b * b * (x2 - x1);
    }
    return acc;
}

mpq_class PeriodicBVFunction::total_variation() const {
    mpq_class v = 0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        mpq_class x1 = breakpoints_[i];
        mpq_class x2 = (i + 1 < breakpoints_.size()) ? breakpoints_[i + 1] : mpq_class(1);
        v += abs(pieces_[i].slope) * (x2 - x1);
        if (i > 0) {
            // interior jump at x1: new value minus left limit of previous piece
            mpq_class left = pieces_[i - 1].slope * x1 + pieces_[i - 1].intercept;
            mpq_class right = pieces_[i].slope * x1 + pieces_[i].intercept;
            v += abs(right - left);
        }
    }
    return v;
}

mpq_class PeriodicBVFunction::sup_abs() const {
    mpq_class m = 0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        mpq_class x1 = breakpoints_[i];
        mpq_class x2 = (i + 1 < breakpoints_.size()) ? breakpoints_[i + 1] : mpq_class(1);
        m = std::max(m, mpq_class(abs(pieces_[i].slope * x1 + pieces_[i].intercept)));
        m = std::max(m, mpq_class(abs(pieces_[i].slope * x2 + pieces_[i].intercept)));
    }
    return m;
}

bool PeriodicBVFunction::is_sawtooth() const {
    return pieces_.size() == 1 && pieces_[0].slope == 1 && pieces_[0].intercept == mpq_class(-1, 2);
}

// ---------------------------------------------------------------------------

DyadicRational dilate_frac(const ScaledInteger& n, const DyadicRational& x) {
    mpz_class exp_z(static_cast<unsigned long>(x.exponent()));
    if (n.shift() >= exp_z) return DyadicRational();  // integer multiple: frac 0
    unsigned long e = x.exponent() - n.shift().get_ui();
    return DyadicRational(n.base() * x.numerator(), e).frac();
}

mpq_class eval_dilate_exact(const PeriodicBVFunction& f, const ScaledInteger& n,
                            const DyadicRational& x) {
    if (x.numerator() < 0 || x.frac().cmp(x) != 0)
        throw InvalidArgumentError("eval_dilate: x must lie in [0,1)");
    return f.eval01(dilate_frac(n, x).value());
}

double eval_dilate(const PeriodicBVFunction& f, const ScaledInteger& n, const DyadicRational& x) {
    if (x.numerator() < 0 || x.frac().cmp(x) != 0)
        throw InvalidArgumentError("eval_dilate: x must lie in [0,1)");
    return f.eval_d(dilate_frac(n, x).to_double());
}

// ---------------------------------------------------------------------------

mpq_class exact_inner_product(const PeriodicBVFunction& f, const mpz_class& m, const mpz_class& n,
                              std::size_t size_cap) {
    if (m < 1 || n < 1) throw InvalidArgumentError("exact_inner_product: m, n must be >= 1");
    std::size_t pc = f.piece_count();
    mpz_class total = (m + n) * static_cast<unsigned long>(pc) + 2;
    if (total > static_cast<unsigned long>(size_cap))
        throw SizeLimitError("exact_inner_product: refinement of " + total.get_str() +
                             " breakpoints exceeds cap " + std::to_string(size_cap));

    // common refinement of the breakpoints of f(mx) and f(nx) over [0,1]
    std::vector<mpq_class> grid;
    grid.reserve(total.get_ui());
    for (const mpz_class& d : {m, n}) {
        unsigned long du = mpz_get_ui(d.get_mpz_t());
        for (unsigned long k = 0; k < du; ++k)
            for (const mpq_class& bp : f.breakpoints()) {
                mpq_class t = (bp + mpq_class(static_cast<unsigned long>(k))) / mpq_class(d);
                grid.push_back(t);
            }
    }
    grid.push_back(mpq_class(1));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // effective affine description of f(d*x) on a refined interval
    auto affine_at = [&f](const mpz_class& d, const mpq_class& t_mid, mpq_class& A, mpq_class& B) {
        mpq_class y = mpq_class(d) * t_mid;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
        mpq_class frac = y - mpq_class(fl);
        const auto& bps = f.breakpoints();
        std::size_t lo = 0, hi = bps.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (bps[mid] <= frac)
                lo = mid;
            else
                hi = mid;
        }
        const AffinePiece& p = f.pieces()[lo];
        A = p.slope * mpq_class(d);
        B = p.intercept - p.slope * mpq_class(fl);
    };

    mpq_class acc = 0;
    mpq_class A1, B1, A2, B2;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const mpq_class& u = grid[i];
        const mpq_class& v = grid[i + 1];
        mpq_class mid = (u + v) / 2;
        affine_at(m, mid, A1, B1);
        affine_at(n, mid, A2, B2);
        mpq_class u2 = u * u, v2 = v * v;
        acc += A1 * A2 * (v2 * v - u2 * u) / 3 + (A1 * B2 + A2 * B1) * (v2 - u2) / 2 +
               B1 * B2 * (v - u);
    }
    return acc;
}

std::vector<FourierRow> fourier_decay_check(const PeriodicBVFunction& f, unsigned K) {
    if (K < 1) throw InvalidArgumentError("fourier_decay_check: K must be >= 1");
    std::vector<FourierRow> rows;
    rows.reserve(K);
    const auto& bps = f.breakpoints();
    for (unsigned k = 1; k <= K; ++k) {
        double w = 2.0 * M_PI * k;
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < f.piece_count(); ++i) {
            double x1 = bps[i].get_d();
            double x2 = (i + 1 < bps.size()) ? bps[i + 1].get_d() : 1.0;
            double s = f.pieces()[i].slope.get_d();
            double c = f.pieces()[i].intercept.get_d();
            // int (s x + c) cos(wx) and int (s x + c) sin(wx) over [x1,x2]
            auto I_xcos = [w](double x) { return std::cos(w * x) / (w * w) + x * std::sin(w * x) / w; };
            auto I_cos = [w](double x) { return std::sin(w * x) / w; };
            auto I_xsin = [w](double x) { return std::sin(w * x) / (w * w) - x * std::cos(w * x) / w; };
            auto I_sin = [w](double x) { return -std::cos(w * x) / w; };
            a += s * (I_xcos(x2) - I_xcos(x1)) + c * (I_cos(x2) - I_cos(x1));
            b += s * (I_xsin(x2) - I_xsin(x1)) + c * (I_sin(x2) - I_sin(x1));
        }
        a *= 2.0;
        b *= 2.0;
        rows.push_back(FourierRow{k, a, b, k * std::abs(a), k * std::abs(b)});
    }
    return rows;
}

}  // namespace dilsum
