#include "matpress/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>

#include "matpress/error.hpp"

namespace matpress {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == neg_inf) return b;
    if (b == neg_inf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteMatrixMeasure

FiniteMatrixMeasure::FiniteMatrixMeasure(std::size_t d, std::vector<Atom> atoms)
    : d_(d), atoms_(std::move(atoms)) {
    if (d_ == 0) invalid_input("measure dimension must be positive");
    if (atoms_.empty()) invalid_input("measure needs at least one atom");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
            invalid_input("atom " + std::to_string(i) + " has non-positive or non-finite weight");
        }
        if (a.matrix.dim() != d_) {
            invalid_input("atom " + std::to_string(i) + " has dimension " +
                          std::to_string(a.matrix.dim()) + ", expected " + std::to_string(d_));
        }
        if (!a.matrix.all_finite()) invalid_input("atom " + std::to_string(i) + " has non-finite entries");
    }
}

FiniteMatrixMeasure FiniteMatrixMeasure::empty_support(std::size_t d) {
    FiniteMatrixMeasure m;
    m.d_ = d;
    return m;
}

FiniteMatrixMeasure FiniteMatrixMeasure::counting(std::vector<Matrix> matrices) {
    if (matrices.empty()) invalid_input("measure needs at least one atom");
    const std::size_t d = matrices.front().dim();
    std::vector<Atom> atoms;
    atoms.reserve(matrices.size());
    for (auto& m : matrices) atoms.push_back({1.0, std::move(m)});
    return {d, std::move(atoms)};
}

double FiniteMatrixMeasure::total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.weight;
    return m;
}

bool FiniteMatrixMeasure::has_unit_weights() const {
    return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.weight == 1.0; });
}

// ---------------------------------------------------------------------------
// LogValue / LogSumAccumulator

LogValue LogValue::of(double value) {
    if (value < 0.0 || std::isnan(value)) invalid_input("LogValue needs a non-negative value");
    return {value == 0.0 ? neg_inf : std::log(value)};
}

double LogValue::value() const { return std::exp(log_magnitude); }

void LogSumAccumulator::Running::absorb(double block_max, double block_sum) {
    if (block_max == neg_inf || block_sum == 0.0) return;
    if (max == neg_inf) {
        max = block_max;
        sum = block_sum;
        comp = 0.0;
        return;
    }
    double v = block_sum;
    if (block_max > max) {
        const double scale = std::exp(max - block_max);
        sum *= scale;
        comp *= scale;
        max = block_max;
    } else {
        v *= std::exp(block_max - max);
    }
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
        comp += (sum - t) + v;
    } else {
        comp += (v - t) + sum;
    }
    sum = t;
}

namespace {

std::pair<double, double> block_sum(const std::vector<double>& terms) {
    double m = neg_inf;
    for (double x : terms) m = std::max(m, x);
    if (m == neg_inf) return {neg_inf, 0.0};
    double s = 0.0, c = 0.0;
    for (double x : terms) {
        const double v = std::exp(x - m);
        const double t = s + v;
        c += std::abs(s) >= v ? (s - t) + v : (v - t) + s;
        s = t;
    }
    return {m, s + c};
}

}  // namespace

void LogSumAccumulator::add(double log_term) {
    if (log_term == neg_inf) return;
    if (std::isnan(log_term)) invalid_input("NaN term in log-sum");
    pending_.push_back(log_term);
    if (pending_.size() == block) {
        const auto [m, s] = block_sum(pending_);
        run_.absorb(m, s);
        pending_.clear();
    }
}

LogSumAccumulator::Running LogSumAccumulator::folded() const {
    Running r = run_;
    if (!pending_.empty()) {
        const auto [m, s] = block_sum(pending_);
        r.absorb(m, s);
    }
    return r;
}

void LogSumAccumulator::merge(const LogSumAccumulator& other) {
    const Running r = other.folded();
    if (r.max == neg_inf) return;
    // flush our own pending terms first so the fold order is fixed
    if (!pending_.empty()) {
        const auto [m, s] = block_sum(pending_);
        run_.absorb(m, s);
        pending_.clear();
    }
    run_.absorb(r.max, r.sum + r.comp);
}

LogValue LogSumAccumulator::result() const {
    const Running r = folded();
    if (r.max == neg_inf) return LogValue::zero();
    const double total = r.sum + r.comp;
    if (!(total > 0.0)) return LogValue::zero();
    return {r.max + std::log(total)};
}

// ---------------------------------------------------------------------------
// BudgetMeter

BudgetMeter::BudgetMeter(const WordBudget& budget)
    : budget_(budget), start_(std::chrono::steady_clock::now()) {
    if (budget_.max_word_length == 0 || budget_.max_words == 0 || !(budget_.wall_clock_cap > 0.0)) {
        invalid_input("word budget limits must all be positive");
    }
}

double BudgetMeter::elapsed_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

bool BudgetMeter::expired() const { return elapsed_seconds() > budget_.wall_clock_cap; }

void BudgetMeter::check_length(std::size_t word_length) const {
    if (word_length > budget_.max_word_length) {
        throw BudgetExhausted("word length " + std::to_string(word_length) + " exceeds limit " +
                                  std::to_string(budget_.max_word_length),
                              words_used(), word_length);
    }
}

void BudgetMeter::check_clock(std::size_t word_length) const {
    if (expired()) {
        throw BudgetExhausted("wall-clock cap reached", words_used(), word_length);
    }
}

void BudgetMeter::charge(double words, std::size_t word_length) {
    check_length(word_length);
    check_clock(word_length);
    const double remaining = static_cast<double>(budget_.max_words) - static_cast<double>(used_.load());
    if (words > remaining) {
        throw BudgetExhausted("word budget exhausted at length " + std::to_string(word_length),
                              words_used(), word_length);
    }
    used_ += static_cast<std::uint64_t>(words);
}

// ---------------------------------------------------------------------------
// Kernel

Kernel Kernel::norm(double s) {
    if (!(s > 0.0)) invalid_input("kernel exponent must be positive");
    return {Kind::norm, s};
}

Kernel Kernel::phi(double s) {
    if (!(s > 0.0)) invalid_input("kernel exponent must be positive");
    return {Kind::phi, s};
}

double Kernel::log_eval(std::span<const double> a, std::size_t d, std::int64_t scale_exp) const {
    const SingularSpectrum sp = singular_values(a, d);
    const double s1 = sp.largest();
    // stored products are renormalised, so this only catches numerical zeros;
    // a genuinely tiny product lives in scale_exp
    if (s1 <= tau_zero) return neg_inf;
    const double log_scale = static_cast<double>(scale_exp) * std::numbers::ln2;
    if (kind == Kind::norm) return s * (std::log(s1) + log_scale);
    const double abs_det = s >= static_cast<double>(d) ? std::abs(determinant(a, d)) : 0.0;
    const double lp = log_phi(sp, abs_det, s);
    if (lp == neg_inf) return neg_inf;
    return lp + s * log_scale;
}

bool numerically_singular(const Matrix& a) {
    if (a.is_zero()) return true;
    const double n = operator_norm(a);
    const double det = std::abs(determinant(a));
    return det <= tau_det * std::pow(n, static_cast<double>(a.dim()));
}

// ---------------------------------------------------------------------------
// WordSumEngine

namespace {

// Rescales m by an exact power of two so the largest |entry| lies in
// [1/2, 1); returns the exponent removed, or nullopt for the zero matrix.
// Negative zeros are folded to +0 so equal products hash equally.
std::optional<std::int64_t> renormalize(std::span<double> m) {
    double mx = 0.0;
    for (double& x : m) {
        x += 0.0;
        mx = std::max(mx, std::abs(x));
    }
    if (mx == 0.0) return std::nullopt;
    int e = 0;
    std::frexp(mx, &e);
    if (e != 0) {
        for (double& x : m) x = std::ldexp(x, -e);
    }
    return e;
}

std::uint64_t hash_product(std::span<const double> m, std::int64_t e) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
        h ^= h >> 29;
    };
    mix(static_cast<std::uint64_t>(e));
    for (double x : m) mix(std::bit_cast<std::uint64_t>(x));
    return h;
}

struct Level {
    std::vector<double> entries;
    std::vector<std::int64_t> exps;
    std::vector<double> log_w;
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> letter;

    std::size_t count() const noexcept { return exps.size(); }
    std::span<const double> matrix(std::size_t i, std::size_t d2) const {
        return {entries.data() + i * d2, d2};
    }
};

class LevelBuilder {
public:
    LevelBuilder(Level& level, std::size_t d2) : level_(level), d2_(d2) {}

    void insert(std::span<const double> m, std::int64_t e, double lw, std::uint32_t parent,
                std::uint32_t letter) {
        const std::uint64_t h = hash_product(m, e);
        auto [lo, hi] = index_.equal_range(h);
        for (auto it = lo; it != hi; ++it) {
            const std::size_t i = it->second;
            if (level_.exps[i] == e &&
                std::equal(m.begin(), m.end(), level_.entries.begin() + static_cast<std::ptrdiff_t>(i * d2_))) {
                level_.log_w[i] = log_add(level_.log_w[i], lw);
                return;
            }
        }
        index_.emplace(h, static_cast<std::uint32_t>(level_.count()));
        level_.entries.insert(level_.entries.end(), m.begin(), m.end());
        level_.exps.push_back(e);
        level_.log_w.push_back(lw);
        level_.parent.push_back(parent);
        level_.letter.push_back(letter);
    }

private:
    Level& level_;
    std::size_t d2_;
    std::unordered_multimap<std::uint64_t, std::uint32_t> index_;
};

template <class Partial, class TaskFn>
std::vector<Partial> run_tasks(std::size_t ntasks, unsigned workers, TaskFn&& fn) {
    std::vector<Partial> out(ntasks);
    if (workers <= 1 || ntasks <= 1) {
        for (std::size_t i = 0; i < ntasks; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr err;
    std::mutex err_mu;
    const unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(workers, ntasks));
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            while (!stop.load()) {
                const std::size_t i = next++;
                if (i >= ntasks) break;
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!err) err = std::current_exception();
                    stop = true;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

struct MaxPartial {
    double best = neg_inf;
    std::vector<std::uint32_t> path;
};

constexpr std::size_t chunk_atoms = 1024;
constexpr std::size_t clock_stride = 4096;

}  // namespace

struct WordSumEngine::Impl {
    FiniteMatrixMeasure mu;
    EngineOptions opt;
    std::size_t d = 0;
    std::size_t d2 = 0;
    std::vector<Level> levels;
    bool capped = false;

    Impl(const FiniteMatrixMeasure& m, EngineOptions o) : mu(m), opt(o), d(m.dim()), d2(d * d) {
        if (opt.workers == 0) opt.workers = 1;
        Level first;
        LevelBuilder b(first, d2);
        std::vector<double> buf(d2);
        for (std::size_t i = 0; i < mu.size(); ++i) {
            const auto src = mu[i].matrix.entries();
            std::copy(src.begin(), src.end(), buf.begin());
            const auto e = renormalize(buf);
            if (!e) continue;
            b.insert(buf, *e, std::log(mu[i].weight), 0, static_cast<std::uint32_t>(i));
        }
        levels.push_back(std::move(first));
    }

    void extend(BudgetMeter& meter) {
        const Level& prev = levels.back();
        const Level& base = levels.front();
        const double predicted = static_cast<double>(prev.count()) * static_cast<double>(base.count());
        if (predicted * static_cast<double>(d2) > static_cast<double>(opt.level_entry_cap)) {
            capped = true;
            return;
        }
        const std::size_t length = levels.size() + 1;
        meter.charge(predicted, length);
        Level next;
        LevelBuilder b(next, d2);
        std::vector<double> buf(d2);
        for (std::size_t i = 0; i < prev.count(); ++i) {
            const auto left = prev.matrix(i, d2);
            for (std::size_t j = 0; j < base.count(); ++j) {
                multiply_into(left, base.matrix(j, d2), buf, d);
                const auto e = renormalize(buf);
                if (!e) continue;
                b.insert(buf, prev.exps[i] + base.exps[j] + *e, prev.log_w[i] + base.log_w[j],
                         static_cast<std::uint32_t>(i), base.letter[j]);
            }
        }
        levels.push_back(std::move(next));
    }

    void ensure(std::size_t n, BudgetMeter& meter) {
        while (levels.size() < n && !capped) extend(meter);
    }

    std::vector<std::size_t> backtrack(std::size_t level, std::uint32_t idx) const {
        std::vector<std::size_t> word(level);
        for (std::size_t l = level; l >= 1; --l) {
            const Level& L = levels[l - 1];
            word[l - 1] = L.letter[idx];
            idx = L.parent[idx];
        }
        return word;
    }

    struct Plan {
        std::size_t block = 1;  // level used for full blocks
        std::size_t blocks = 0;
        std::size_t rem = 0;  // length of trailing block, 0 if none
        double leaves = 0.0;
    };

    Plan plan(std::size_t n) const {
        Plan best;
        double best_log = std::numeric_limits<double>::infinity();
        for (std::size_t h = 1; h <= levels.size() && h <= n; ++h) {
            const std::size_t a = n / h, r = n % h;
            const double ch = static_cast<double>(levels[h - 1].count());
            const double cr = r ? static_cast<double>(levels[r - 1].count()) : 1.0;
            if (ch == 0.0 || cr == 0.0) return {h, a, r, 0.0};
            const double lg = static_cast<double>(a) * std::log(ch) + std::log(cr);
            if (lg < best_log) {
                best_log = lg;
                best = {h, a, r, std::exp(lg)};
            }
        }
        return best;
    }

    // Depth-first walk over the block tree rooted at `first`; `leaf` gets
    // (stored product, exponent, log weight, path of block indices).
    template <class Leaf>
    void walk(const Plan& p, std::uint32_t first, BudgetMeter& meter, std::size_t n, Leaf&& leaf) const {
        const Level& blk = levels[p.block - 1];
        const Level* rem = p.rem ? &levels[p.rem - 1] : nullptr;
        const std::size_t depth = p.blocks + (rem ? 1 : 0);
        std::vector<double> bufs(depth * d2);
        std::vector<std::uint32_t> path(depth);
        std::size_t since_check = 0;
        path[0] = first;

        auto rec = [&](auto&& self, std::size_t pos, std::span<const double> prefix, std::int64_t e,
                       double lw) -> void {
            const Level& L = pos < p.blocks ? blk : *rem;
            std::span<double> out(bufs.data() + pos * d2, d2);
            for (std::size_t i = 0; i < L.count(); ++i) {
                multiply_into(prefix, L.matrix(i, d2), out, d);
                const auto shift = renormalize(out);
                if (!shift) continue;
                path[pos] = static_cast<std::uint32_t>(i);
                const std::int64_t e2 = e + L.exps[i] + *shift;
                const double lw2 = lw + L.log_w[i];
                if (pos + 1 == depth) {
                    leaf(std::span<const double>(out), e2, lw2, path);
                    if (++since_check == clock_stride) {
                        since_check = 0;
                        meter.check_clock(n);
                    }
                } else {
                    self(self, pos + 1, out, e2, lw2);
                }
            }
        };

        const auto m0 = blk.matrix(first, d2);
        if (depth == 1) {
            leaf(m0, blk.exps[first], blk.log_w[first], path);
        } else {
            rec(rec, 1, m0, blk.exps[first], blk.log_w[first]);
        }
    }
};

WordSumEngine::WordSumEngine(const FiniteMatrixMeasure& mu, EngineOptions options)
    : impl_(std::make_unique<Impl>(mu, options)) {
    if (mu.dim() == 0) invalid_input("measure has no dimension");
}

WordSumEngine::~WordSumEngine() = default;
WordSumEngine::WordSumEngine(WordSumEngine&&) noexcept = default;
WordSumEngine& WordSumEngine::operator=(WordSumEngine&&) noexcept = default;

const FiniteMatrixMeasure& WordSumEngine::measure() const noexcept { return impl_->mu; }

std::size_t WordSumEngine::cached_levels() const noexcept { return impl_->levels.size(); }

std::size_t WordSumEngine::level_size(std::size_t n) const {
    if (n == 0 || n > impl_->levels.size()) invalid_input("level not cached");
    return impl_->levels[n - 1].count();
}

LogValue WordSumEngine::sum(std::size_t n, const Kernel& kernel, BudgetMeter& meter) {
    if (n == 0) invalid_input("word length must be at least 1");
    Impl& im = *impl_;
    meter.check_length(n);
    meter.check_clock(n);
    im.ensure(n, meter);
    const std::size_t d = im.d, d2 = im.d2;

    std::vector<LogSumAccumulator> parts;
    if (n <= im.levels.size()) {
        const Level& L = im.levels[n - 1];
        meter.charge(static_cast<double>(L.count()), n);
        const std::size_t ntasks = (L.count() + chunk_atoms - 1) / chunk_atoms;
        parts = run_tasks<LogSumAccumulator>(ntasks, im.opt.workers, [&](std::size_t t) {
            LogSumAccumulator acc;
            const std::size_t hi = std::min(L.count(), (t + 1) * chunk_atoms);
            for (std::size_t i = t * chunk_atoms; i < hi; ++i) {
                acc.add(L.log_w[i] + kernel.log_eval(L.matrix(i, d2), d, L.exps[i]));
            }
            return acc;
        });
    } else {
        const Impl::Plan p = im.plan(n);
        if (p.leaves == 0.0) return LogValue::zero();
        meter.charge(p.leaves, n);
        const std::size_t ntasks = im.levels[p.block - 1].count();
        parts = run_tasks<LogSumAccumulator>(ntasks, im.opt.workers, [&](std::size_t t) {
            LogSumAccumulator acc;
            im.walk(p, static_cast<std::uint32_t>(t), meter, n,
                    [&](std::span<const double> m, std::int64_t e, double lw, const auto&) {
                        acc.add(lw + kernel.log_eval(m, d, e));
                    });
            return acc;
        });
    }
    LogSumAccumulator total;
    for (const auto& part : parts) total.merge(part);
    return total.result();
}

WordExtremum WordSumEngine::maximum(std::size_t n, const LeafFn& log_fn, BudgetMeter& meter) {
    if (n == 0) invalid_input("word length must be at least 1");
    Impl& im = *impl_;
    meter.check_length(n);
    meter.check_clock(n);
    im.ensure(n, meter);
    const std::size_t d = im.d, d2 = im.d2;

    WordExtremum out;
    if (n <= im.levels.size()) {
        const Level& L = im.levels[n - 1];
        meter.charge(static_cast<double>(L.count()), n);
        const std::size_t ntasks = (L.count() + chunk_atoms - 1) / chunk_atoms;
        auto parts = run_tasks<MaxPartial>(ntasks, im.opt.workers, [&](std::size_t t) {
            MaxPartial mp;
            const std::size_t hi = std::min(L.count(), (t + 1) * chunk_atoms);
            for (std::size_t i = t * chunk_atoms; i < hi; ++i) {
                const double v = log_fn(L.matrix(i, d2), d, L.exps[i]);
                if (v > mp.best) {
                    mp.best = v;
                    mp.path = {static_cast<std::uint32_t>(i)};
                }
            }
            return mp;
        });
        for (const auto& mp : parts) {
            if (mp.best > out.log_value) {
                out.log_value = mp.best;
                out.word = im.backtrack(n, mp.path.front());
            }
        }
        return out;
    }

    const Impl::Plan p = im.plan(n);
    if (p.leaves == 0.0) return out;
    meter.charge(p.leaves, n);
    const std::size_t ntasks = im.levels[p.block - 1].count();
    auto parts = run_tasks<MaxPartial>(ntasks, im.opt.workers, [&](std::size_t t) {
        MaxPartial mp;
        im.walk(p, static_cast<std::uint32_t>(t), meter, n,
                [&](std::span<const double> m, std::int64_t e, double, const auto& path) {
                    const double v = log_fn(m, d, e);
                    if (v > mp.best) {
                        mp.best = v;
                        mp.path.assign(path.begin(), path.end());
                    }
                });
        return mp;
    });
    for (const auto& mp : parts) {
        if (mp.best > out.log_value) {
            out.log_value = mp.best;
            out.word.clear();
            for (std::size_t pos = 0; pos < mp.path.size(); ++pos) {
                const std::size_t lvl = pos < p.blocks ? p.block : p.rem;
                const auto part = im.backtrack(lvl, mp.path[pos]);
                out.word.insert(out.word.end(), part.begin(), part.end());
            }
        }
    }
    return out;
}

LogValue weighted_power_sum(const FiniteMatrixMeasure& mu, std::size_t n, const Kernel& kernel,
                            const WordBudget& budget, EngineOptions options) {
    if (mu.empty()) return LogValue::zero();
    WordSumEngine engine(mu, options);
    BudgetMeter meter(budget);
    return engine.sum(n, kernel, meter);
}

// ---------------------------------------------------------------------------
// Derived measures

FiniteMatrixMeasure hat_measure_2d(const FiniteMatrixMeasure& mu, double s) {
    if (mu.dim() != 2) invalid_input("hat measure is defined for 2x2 matrices");
    if (!(s > 1.0 && s < 2.0)) invalid_input("hat measure needs 1 < s < 2");
    std::vector<Atom> atoms;
    for (const Atom& a : mu.atoms()) {
        if (numerically_singular(a.matrix)) continue;
        const double w = a.weight * std::pow(std::abs(determinant(a.matrix)), s - 1.0);
        if (w > 0.0) atoms.push_back({w, a.matrix});
    }
    if (atoms.empty()) return FiniteMatrixMeasure::empty_support(2);
    return {2, std::move(atoms)};
}

FiniteMatrixMeasure lifted_measure(const FiniteMatrixMeasure& mu, std::size_t k, std::size_t p,
                                   std::size_t q, std::size_t dim_cap) {
    const std::size_t dp = lift_dimension(mu.dim(), k, p, q);
    if (dp > dim_cap) {
        throw Error(ErrorKind::dimension_cap_exceeded,
                    "lifted dimension " + std::to_string(dp) + " exceeds cap " + std::to_string(dim_cap));
    }
    if (mu.empty()) return FiniteMatrixMeasure::empty_support(dp);
    std::vector<Atom> atoms;
    atoms.reserve(mu.size());
    for (const Atom& a : mu.atoms()) atoms.push_back({a.weight, lift(a.matrix, k, p, q)});
    return {dp, std::move(atoms)};
}

FiniteMatrixMeasure restrict_invertible(const FiniteMatrixMeasure& mu) {
    std::vector<Atom> atoms;
    for (const Atom& a : mu.atoms()) {
        if (!numerically_singular(a.matrix)) atoms.push_back(a);
    }
    if (atoms.empty()) return FiniteMatrixMeasure::empty_support(mu.dim());
    return {mu.dim(), std::move(atoms)};
}

FiniteMatrixMeasure scale_measure(const FiniteMatrixMeasure& mu, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) invalid_input("scale factor must be positive and finite");
    if (mu.empty()) return mu;
    std::vector<Atom> atoms = mu.atoms();
    for (Atom& a : atoms) a.matrix *= c;
    return {mu.dim(), std::move(atoms)};
}

}  // namespace matpress
