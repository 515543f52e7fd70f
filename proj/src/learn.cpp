#include "incsyn/learn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace incsyn {

void Dataset::append(Sample s) {
    if (dim_ == 0) dim_ = (int)s.x.size();
    if ((int)s.x.size() != dim_ || (int)s.x_plus.size() != dim_)
        throw error("Dataset::append: dimension mismatch");
    if (s.u < 0) throw error("Dataset::append: negative input id");
    if (s.u >= (input_t)by_input_.size()) by_input_.resize(s.u + 1);
    by_input_[s.u].push_back(samples_.size());
    samples_.push_back(std::move(s));
}

void NoiseSupport::check() const {
    if (l.size() != h.size()) throw error("NoiseSupport: l/h dimension mismatch");
    for (int i = 0; i < l.size(); ++i)
        if (l(i) > h(i)) throw error("NoiseSupport: l > h at dim " + std::to_string(i));
}

bool Box::contains(const Vec& x) const {
    if (empty) return false;
    for (int i = 0; i < lo.size(); ++i)
        if (x(i) < lo(i) || x(i) > hi(i)) return false;
    return true;
}

bool Box::intersects_closed(const Box& other) const {
    if (empty || other.empty) return false;
    for (int i = 0; i < lo.size(); ++i)
        if (lo(i) > other.hi(i) || hi(i) < other.lo(i)) return false;
    return true;
}

bool Box::contains_closed(const Box& other) const {
    if (other.empty) return true;
    if (empty) return false;
    for (int i = 0; i < lo.size(); ++i)
        if (other.lo(i) < lo(i) || other.hi(i) > hi(i)) return false;
    return true;
}

void Box::normalize() {
    if (empty) return;
    for (int i = 0; i < lo.size(); ++i)
        if (lo(i) > hi(i)) { empty = true; return; }
}

PointBounds bounds_at_point(const Vec& x_star, input_t u, const Dataset& d, const LearnerConfig& cfg) {
    if (u < 0 || u >= d.input_count() || d.for_input(u).empty())
        throw no_data_for_input("no samples for input " + std::to_string(u));
    const int n = d.dim();
    Vec lo = Vec::Constant(n, -std::numeric_limits<double>::infinity());
    Vec hi = Vec::Constant(n, std::numeric_limits<double>::infinity());
    for (size_t idx : d.for_input(u)) {
        const Sample& s = d[idx];
        double dist = (s.x - x_star).lpNorm<Eigen::Infinity>();
        lo = lo.cwiseMax((s.x_plus.array() - cfg.lipschitz * dist).matrix());
        hi = hi.cwiseMin((s.x_plus.array() + cfg.lipschitz * dist).matrix());
    }
    PointBounds out;
    out.check_f = lo - cfg.noise.h;
    out.hat_f = hi - cfg.noise.l;
    out.inconsistent = (out.check_f.array() > out.hat_f.array()).any();
    return out;
}

double corner_distance(const Vec& x, const Box& cell) {
    double dmax = 0.0;
    for (int i = 0; i < x.size(); ++i)
        dmax = std::max(dmax, std::max(std::abs(x(i) - cell.lo(i)), std::abs(x(i) - cell.hi(i))));
    return dmax;
}

void CellBoundsCache::absorb(const Sample& s, const LearnerConfig& cfg, const Box& cell) {
    double d = corner_distance(s.x, cell);
    Vec lo = (s.x_plus.array() - cfg.lipschitz * d).matrix();
    Vec hi = (s.x_plus.array() + cfg.lipschitz * d).matrix();
    if (!has_data) {
        check_lb = lo;
        hat_ub = hi;
        has_data = true;
    } else {
        check_lb = check_lb.cwiseMax(lo);
        hat_ub = hat_ub.cwiseMin(hi);
    }
}

ReachBoxes CellBoundsCache::boxes(const LearnerConfig& cfg, const Box& domain) const {
    if (!has_data)
        return ReachBoxes{Box::make_empty(domain.dim()), domain};
    // over = [min f_check + l, max f_hat + h], under = [max f_hat + l, min f_check + h];
    // the noise offsets inside/outside the bounds cancel on the under box.
    ReachBoxes r;
    r.over.lo = check_lb - cfg.noise.h + cfg.noise.l;
    r.over.hi = hat_ub - cfg.noise.l + cfg.noise.h;
    r.over.normalize();
    r.under.lo = hat_ub;
    r.under.hi = check_lb;
    r.under.normalize();
    return r;
}

// Subcell centers for the k-per-dim refinement.
static void subgrid_centers(const Box& cell, int k, int dim, Vec& cur, int d,
                            std::vector<Vec>& out) {
    if (d == dim) { out.push_back(cur); return; }
    double w = (cell.hi(d) - cell.lo(d)) / k;
    for (int i = 0; i < k; ++i) {
        cur(d) = cell.lo(d) + (i + 0.5) * w;
        subgrid_centers(cell, k, dim, cur, d + 1, out);
    }
}

ReachBoxes cell_reach_boxes(input_t u, const Dataset& d, const LearnerConfig& cfg,
                            const Box& cell, const Box& domain) {
    const int n = cell.dim();
    if (u < 0 || u >= d.input_count() || d.for_input(u).empty())
        return ReachBoxes{Box::make_empty(n), domain};

    CellBoundsCache cache;
    for (size_t idx : d.for_input(u)) cache.absorb(d[idx], cfg, cell);
    Vec check_lb = cache.check_lb;
    Vec hat_ub = cache.hat_ub;

    if (cfg.refine_subdiv >= 2) {
        // Evaluate the L-Lipschitz pointwise bounds on a subgrid and extend by
        // the subcell radius; sound in the same direction as the corner form,
        // so the two can be intersected.
        std::vector<Vec> centers;
        Vec cur(n);
        subgrid_centers(cell, cfg.refine_subdiv, n, cur, 0, centers);
        double radius = 0.0;
        for (int i = 0; i < n; ++i)
            radius = std::max(radius, (cell.hi(i) - cell.lo(i)) / (2.0 * cfg.refine_subdiv));
        Vec ref_lo = Vec::Constant(n, std::numeric_limits<double>::infinity());
        Vec ref_hi = Vec::Constant(n, -std::numeric_limits<double>::infinity());
        for (const Vec& c : centers) {
            Vec plo = Vec::Constant(n, -std::numeric_limits<double>::infinity());
            Vec phi = Vec::Constant(n, std::numeric_limits<double>::infinity());
            for (size_t idx : d.for_input(u)) {
                const Sample& s = d[idx];
                double dist = (s.x - c).lpNorm<Eigen::Infinity>();
                plo = plo.cwiseMax((s.x_plus.array() - cfg.lipschitz * dist).matrix());
                phi = phi.cwiseMin((s.x_plus.array() + cfg.lipschitz * dist).matrix());
            }
            ref_lo = ref_lo.cwiseMin(plo);
            ref_hi = ref_hi.cwiseMax(phi);
        }
        check_lb = check_lb.cwiseMax((ref_lo.array() - cfg.lipschitz * radius).matrix());
        hat_ub = hat_ub.cwiseMin((ref_hi.array() + cfg.lipschitz * radius).matrix());
    }

    ReachBoxes r;
    r.over.lo = check_lb - cfg.noise.h + cfg.noise.l;
    r.over.hi = hat_ub - cfg.noise.l + cfg.noise.h;
    r.over.normalize();
    r.under.lo = hat_ub;
    r.under.hi = check_lb;
    r.under.normalize();
    return r;
}

// ---- dataset text format ----

static Vec parse_vec(std::istringstream& in, int n, const char* what) {
    Vec v(n);
    for (int i = 0; i < n; ++i)
        if (!(in >> v(i))) throw io_error(std::string("dataset: bad ") + what);
    return v;
}

DatasetFile read_dataset(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw io_error("dataset: missing header");
    std::istringstream hdr(line);
    int n = 0, nu = 0;
    if (!(hdr >> n >> nu) || n < 1 || nu < 1) throw io_error("dataset: bad header");
    DatasetFile f;
    f.noise.l = parse_vec(hdr, n, "noise lower bound");
    f.noise.h = parse_vec(hdr, n, "noise upper bound");
    f.noise.check();
    f.data = Dataset(n, nu);
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ';', ' ');
        std::istringstream rec(line);
        Sample s;
        s.x = parse_vec(rec, n, "state");
        long u;
        if (!(rec >> u) || u < 0 || u >= nu) throw io_error("dataset: bad input id");
        s.u = (input_t)u;
        s.x_plus = parse_vec(rec, n, "successor");
        f.data.append(std::move(s));
    }
    return f;
}

DatasetFile read_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open dataset file " + path);
    return read_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& d, const NoiseSupport& noise) {
    out << std::setprecision(17);
    out << d.dim() << ' ' << d.input_count();
    for (int i = 0; i < noise.l.size(); ++i) out << ' ' << noise.l(i);
    for (int i = 0; i < noise.h.size(); ++i) out << ' ' << noise.h(i);
    out << '\n';
    for (size_t i = 0; i < d.size(); ++i) {
        const Sample& s = d[i];
        for (int j = 0; j < s.x.size(); ++j) out << (j ? " " : "") << s.x(j);
        out << " ; " << s.u << " ;";
        for (int j = 0; j < s.x_plus.size(); ++j) out << ' ' << s.x_plus(j);
        out << '\n';
    }
}

void write_dataset_file(const std::string& path, const Dataset& d, const NoiseSupport& noise) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open dataset file for writing " + path);
    write_dataset(out, d, noise);
}

} // namespace incsyn
