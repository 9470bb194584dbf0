#include "fcl/nonlocal_operator.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <fftw3.h>

#include "fcl/error.hpp"
#include "fcl/numerics.hpp"

namespace fcl {

std::string to_string(Strategy s) {
    return s == Strategy::Direct ? "direct" : "fft";
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "direct") return Strategy::Direct;
    if (s == "fft") return Strategy::Fft;
    throw ConfigError("operator strategy must be direct or fft, got '" + s + "'");
}

struct NonlocalOperator::Fft {
    std::size_t n;
    fftw_plan fwd = nullptr, bwd = nullptr;
    std::vector<double> eig_full, eig_jump;

    explicit Fft(std::size_t cells) : n(cells) {
        std::vector<double> re(n);
        std::vector<std::complex<double>> sp(n / 2 + 1);
        auto* c = reinterpret_cast<fftw_complex*>(sp.data());
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), re.data(), c, flags);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), c, re.data(), flags);
    }
    ~Fft() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
};

namespace {

std::vector<double> symbol(const std::vector<double>& k, std::size_t n) {
    std::vector<double> eig(n / 2 + 1);
    std::vector<double> terms(k.size());
    for (std::size_t m = 0; m < eig.size(); ++m) {
        for (std::size_t d = 1; d <= k.size(); ++d) {
            double s = std::sin(std::numbers::pi * static_cast<double>((d * m) % n) /
                                static_cast<double>(n));
            terms[d - 1] = k[d - 1] * 2.0 * s * s;
        }
        eig[m] = pairwise_sum(terms);
    }
    return eig;
}

}  // namespace

NonlocalOperator::NonlocalOperator(const WeightTable& table, std::size_t cells, Boundary boundary,
                                   Strategy strategy)
    : table_(table), n_(cells), boundary_(boundary), strategy_(strategy) {
    if (cells == 0) throw ConfigError("operator needs at least one cell");
    if (!(table.h > 0.0)) throw ConfigError("weight table has no spacing");
    const double surrogate = table.sigma2 / (2.0 * table.h * table.h);
    const auto& w = table.weights;
    if (boundary == Boundary::Periodic) {
        std::vector<double> c(n_, 0.0);
        for (std::size_t j = 1; j <= w.size(); ++j) {
            std::size_t r1 = j % n_, r2 = (n_ - r1) % n_;
            c[r1] += w[j - 1];
            c[r2] += w[j - 1];
        }
        const double spread = table.tail_remainder / static_cast<double>(n_);
        jump_.assign(n_ - 1, 0.0);
        full_.assign(n_ - 1, 0.0);
        for (std::size_t d = 1; d < n_; ++d) {
            jump_[d - 1] = c[d] + spread;
            full_[d - 1] = jump_[d - 1];
        }
        if (n_ > 1) {
            full_[0] += surrogate;
            full_[n_ - 2] += surrogate;
        }
    } else {
        if (strategy == Strategy::Fft)
            throw ConfigError("operator.strategy = fft requires a periodic grid");
        // Kernel over all offsets the table covers; those >= N always leave the domain.
        std::size_t len = std::max<std::size_t>(w.size(), 1);
        std::vector<double> kj(len, 0.0), kf(len, 0.0);
        for (std::size_t d = 1; d <= w.size(); ++d) kj[d - 1] = kf[d - 1] = w[d - 1];
        kf[0] += surrogate;
        auto suffix = [&](const std::vector<double>& k) {
            std::vector<double> s(len + 2, 0.0);  // s[d] = sum_{e >= d} k[e-1]
            for (std::size_t d = len; d >= 1; --d) s[d] = s[d + 1] + k[d - 1];
            return s;
        };
        auto sj = suffix(kj), sf = suffix(kf);
        auto tail = [&](const std::vector<double>& s, std::size_t from) {
            return from > len ? 0.0 : s[from];
        };
        kill_full_.resize(n_);
        kill_jump_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            // right exits d >= N - i, left exits d >= i + 1
            kill_jump_[i] = table.tail_remainder + tail(sj, n_ - i) + tail(sj, i + 1);
            kill_full_[i] = table.tail_remainder + tail(sf, n_ - i) + tail(sf, i + 1);
        }
        std::size_t inside = std::min(len, n_ > 0 ? n_ - 1 : 0);
        jump_.assign(kj.begin(), kj.begin() + static_cast<long>(inside));
        full_.assign(kf.begin(), kf.begin() + static_cast<long>(inside));
    }
    if (boundary == Boundary::Periodic) {
        eig_ = symbol(full_, n_);
        if (strategy == Strategy::Fft) {
            auto f = std::make_shared<Fft>(n_);
            f->eig_full = eig_;
            f->eig_jump = symbol(jump_, n_);
            fft_ = std::move(f);
        }
    }
}

void NonlocalOperator::check(const GridFunction& f) const {
    if (f.size() != n_ || f.h() != table_.h || f.boundary() != boundary_)
        throw ConfigError("grid function does not match the operator grid");
}

void NonlocalOperator::apply(std::span<const double> f, std::span<double> out,
                             bool jumps_only) const {
    if (f.size() != n_ || out.size() != n_) throw ConfigError("operator size mismatch");
    if (strategy_ == Strategy::Fft) {
        if (jumps_only) {
            // same transform, jump symbol
            std::vector<std::complex<double>> sp(n_ / 2 + 1);
            std::vector<double> in(f.begin(), f.end());
            fftw_execute_dft_r2c(fft_->fwd, in.data(), reinterpret_cast<fftw_complex*>(sp.data()));
            for (std::size_t m = 0; m < sp.size(); ++m)
                sp[m] *= fft_->eig_jump[m] / static_cast<double>(n_);
            fftw_execute_dft_c2r(fft_->bwd, reinterpret_cast<fftw_complex*>(sp.data()),
                                 out.data());
            return;
        }
        apply_fft(f, out);
        return;
    }
    apply_direct(f, out, jumps_only);
}

void NonlocalOperator::apply_fft(std::span<const double> f, std::span<double> out) const {
    std::vector<std::complex<double>> sp(n_ / 2 + 1);
    std::vector<double> in(f.begin(), f.end());
    fftw_execute_dft_r2c(fft_->fwd, in.data(), reinterpret_cast<fftw_complex*>(sp.data()));
    for (std::size_t m = 0; m < sp.size(); ++m) sp[m] *= fft_->eig_full[m] / static_cast<double>(n_);
    fftw_execute_dft_c2r(fft_->bwd, reinterpret_cast<fftw_complex*>(sp.data()), out.data());
}

void NonlocalOperator::apply_direct(std::span<const double> f, std::span<double> out,
                                    bool jumps_only) const {
    if (f.size() != n_ || out.size() != n_) throw ConfigError("operator size mismatch");
    const auto& k = jumps_only ? jump_ : full_;
    const long n = static_cast<long>(n_);
    std::vector<double> terms;
    terms.reserve(n_);
    if (boundary_ == Boundary::Periodic) {
        std::vector<double> ext(3 * n_);
        for (std::size_t r = 0; r < 3; ++r)
            std::copy(f.begin(), f.end(), ext.begin() + static_cast<long>(r * n_));
        const double* e = ext.data() + n_;
        const long half = (n - 1) / 2;
        for (long i = 0; i < n; ++i) {
            terms.clear();
            const double fi = e[i];
            for (long d = 1; d <= half; ++d)
                terms.push_back(k[static_cast<std::size_t>(d - 1)] *
                                ((e[i + d] - fi) + (e[i - d] - fi)));
            if (n % 2 == 0 && n > 1)
                terms.push_back(k[static_cast<std::size_t>(n / 2 - 1)] * (e[i + n / 2] - fi));
            out[static_cast<std::size_t>(i)] = -pairwise_sum(terms);
        }
        return;
    }
    const auto& kill = jumps_only ? kill_jump_ : kill_full_;
    const long len = static_cast<long>(k.size());
    for (long i = 0; i < n; ++i) {
        terms.clear();
        const double fi = f[static_cast<std::size_t>(i)];
        for (long d = 1; d <= len; ++d) {
            double kd = k[static_cast<std::size_t>(d - 1)];
            double s = 0.0;
            if (i + d < n) s += f[static_cast<std::size_t>(i + d)] - fi;
            if (i - d >= 0) s += f[static_cast<std::size_t>(i - d)] - fi;
            terms.push_back(kd * s);
        }
        out[static_cast<std::size_t>(i)] =
            -pairwise_sum(terms) + kill[static_cast<std::size_t>(i)] * fi;
    }
}

GridFunction NonlocalOperator::apply(const GridFunction& f, bool jumps_only) const {
    check(f);
    std::vector<double> out(n_);
    apply(f.values(), out, jumps_only);
    return GridFunction(std::move(out), f.h(), f.x0(), f.boundary());
}

double NonlocalOperator::bilinear_form(const GridFunction& f, const GridFunction& f2) const {
    check(f);
    if (!f.same_grid(f2)) throw ConfigError("bilinear_form needs matching grids");
    const long n = static_cast<long>(n_);
    std::vector<double> rows(n_), terms;
    terms.reserve(2 * n_);
    for (long i = 0; i < n; ++i) {
        terms.clear();
        const double a = f[static_cast<std::size_t>(i)], b = f2[static_cast<std::size_t>(i)];
        if (boundary_ == Boundary::Periodic) {
            for (long d = 1; d < n; ++d) {
                double fa = f.at(i + d) - a, fb = f2.at(i + d) - b;
                terms.push_back(full_[static_cast<std::size_t>(d - 1)] * fa * fb);
            }
        } else {
            for (long d = 1; d <= static_cast<long>(full_.size()); ++d) {
                double kd = full_[static_cast<std::size_t>(d - 1)];
                if (i + d < n)
                    terms.push_back(kd * (f.at(i + d) - a) * (f2.at(i + d) - b));
                if (i - d >= 0)
                    terms.push_back(kd * (f.at(i - d) - a) * (f2.at(i - d) - b));
            }
        }
        double row = 0.5 * pairwise_sum(terms);
        if (boundary_ == Boundary::ZeroExtension) row += kill_full_[static_cast<std::size_t>(i)] * a * b;
        rows[static_cast<std::size_t>(i)] = row;
    }
    return f.h() * pairwise_sum(rows);
}

GridFunction apply_g(const WeightTable& w, const GridFunction& f) {
    if (w.h != f.h()) throw ConfigError("weight table spacing differs from grid spacing");
    return NonlocalOperator(w, f.size(), f.boundary()).apply(f);
}

double bilinear_form(const WeightTable& w, const GridFunction& f, const GridFunction& f2) {
    if (w.h != f.h()) throw ConfigError("weight table spacing differs from grid spacing");
    if (!f.same_grid(f2)) throw ConfigError("bilinear_form needs matching grids");
    return NonlocalOperator(w, f.size(), f.boundary()).bilinear_form(f, f2);
}

WeightTable default_weights(const LevyMeasure& m, double h, std::size_t cells, Boundary b,
                            double split_radius, double cutoff, int periodic_images) {
    double length = h * static_cast<double>(cells);
    double r = split_radius > 0.0 ? split_radius : h;
    double c = cutoff;
    if (!(c > 0.0)) {
        if (periodic_images < 1) throw ConfigError("periodic_images must be >= 1");
        c = b == Boundary::Periodic ? static_cast<double>(periodic_images) * length : length;
    }
    return discrete_weights(m, h, r, cutoff > 0.0 ? c : std::max(c, r));
}

}  // namespace fcl
