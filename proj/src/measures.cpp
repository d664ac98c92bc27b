#include "hyperlim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

namespace hyperlim {

namespace {

bool point_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool points_close(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > kMergeThreshold) return false;
  return true;
}

// Lexicographic order on atom lists; only used to fix argument order.
bool measure_less(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  const auto& x = a.atoms();
  const auto& y = b.atoms();
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i].point != y[i].point) return point_less(x[i].point, y[i].point);
    if (x[i].mass != y[i].mass) return x[i].mass < y[i].mass;
  }
  return x.size() < y.size();
}

}  // namespace

double euclidean(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

DiscreteMeasure::DiscreteMeasure(int dimension, std::vector<Atom> atoms) : dimension_(dimension) {
  if (dimension < 1) throw std::invalid_argument("DiscreteMeasure: dimension must be positive");
  long double total = 0.0L;
  for (const auto& a : atoms) {
    if (static_cast<int>(a.point.size()) != dimension)
      throw std::invalid_argument("DiscreteMeasure: point length differs from dimension");
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw std::invalid_argument("DiscreteMeasure: negative mass");
    for (double x : a.point)
      if (!std::isfinite(x)) throw std::invalid_argument("DiscreteMeasure: non-finite coordinate");
    total += a.mass;
  }
  // Inputs are sums of floating masses; accept rounding noise and renormalize.
  if (std::abs(static_cast<double>(total) - 1.0) > 1e-9)
    throw std::invalid_argument("DiscreteMeasure: masses do not sum to 1");

  std::erase_if(atoms, [](const Atom& a) { return a.mass == 0.0; });
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return point_less(a.point, b.point); });
  for (auto& a : atoms) {
    if (!atoms_.empty() && points_close(atoms_.back().point, a.point))
      atoms_.back().mass += a.mass;
    else
      atoms_.push_back(std::move(a));
  }
  for (auto& a : atoms_) a.mass = static_cast<double>(a.mass / total);
}

DiscreteMeasure DiscreteMeasure::dirac(std::vector<double> point) {
  int d = static_cast<int>(point.size());
  return DiscreteMeasure(d, {Atom{std::move(point), 1.0}});
}

DiscreteMeasure DiscreteMeasure::marginal(std::span<const int> coords) const {
  if (coords.empty()) throw std::invalid_argument("marginal: no coordinates");
  std::vector<Atom> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    Atom b{std::vector<double>(coords.size()), a.mass};
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] < 0 || coords[i] >= dimension_) throw std::out_of_range("marginal: coordinate");
      b.point[i] = a.point[coords[i]];
    }
    out.push_back(std::move(b));
  }
  return DiscreteMeasure(static_cast<int>(coords.size()), std::move(out));
}

bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  if (a.dimension_ != b.dimension_ || a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t i = 0; i < a.atoms_.size(); ++i)
    if (a.atoms_[i].point != b.atoms_[i].point || a.atoms_[i].mass != b.atoms_[i].mass) return false;
  return true;
}

bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol) {
  if (a.dimension() != b.dimension() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.atoms()[i];
    const auto& y = b.atoms()[i];
    if (std::abs(x.mass - y.mass) > tol) return false;
    for (std::size_t c = 0; c < x.point.size(); ++c)
      if (std::abs(x.point[c] - y.point[c]) > tol) return false;
  }
  return true;
}

MeasureSet::MeasureSet(int dimension, std::vector<DiscreteMeasure> members) : dimension_(dimension) {
  for (auto& m : members) insert(std::move(m));
}

bool MeasureSet::insert(DiscreteMeasure mu) {
  if (mu.dimension() != dimension_) throw std::invalid_argument("MeasureSet: dimension mismatch");
  for (const auto& m : members_)
    if (m == mu) return false;
  members_.push_back(std::move(mu));
  return true;
}

double tau(const DiscreteMeasure& mu) {
  double best = 0.0;
  for (int i = 0; i < mu.dimension(); ++i) {
    double s = 0.0;
    for (const auto& a : mu.atoms()) s += a.mass * std::abs(a.point[i]);
    best = std::max(best, s);
  }
  return best;
}

namespace {

using FlowTraits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, double,
                    boost::property<boost::edge_residual_capacity_t, double,
                                    boost::property<boost::edge_reverse_t, FlowTraits::edge_descriptor>>>>;

// Max-flow from mu's atoms to nu's atoms along pairs with dist[i][j] <= level.
double transport_mass(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const std::vector<double>& dist,
                      double level) {
  const std::size_t n = mu.size(), m = nu.size();
  FlowGraph g(n + m + 2);
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  auto link = [&](std::size_t u, std::size_t v, double c) {
    auto e = boost::add_edge(u, v, g).first;
    auto r = boost::add_edge(v, u, g).first;
    cap[e] = c;
    cap[r] = 0.0;
    rev[e] = r;
    rev[r] = e;
  };
  const std::size_t src = n + m, snk = n + m + 1;
  bool any = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (dist[i * m + j] <= level) {
        link(i, n + j, 2.0);
        any = true;
      }
  if (!any) return 0.0;
  for (std::size_t i = 0; i < n; ++i) link(src, i, mu.atoms()[i].mass);
  for (std::size_t j = 0; j < m; ++j) link(n + j, snk, nu.atoms()[j].mass);
  return boost::push_relabel_max_flow(g, src, snk);
}

std::vector<double> pair_distances(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<double> dist(mu.size() * nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j)
      dist[i * nu.size() + j] = euclidean(mu.atoms()[i].point, nu.atoms()[j].point);
  return dist;
}

}  // namespace

double coupled_mass_below(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double eps) {
  if (mu.dimension() != nu.dimension()) throw std::domain_error("coupled_mass_below: dimension mismatch");
  auto dist = pair_distances(mu, nu);
  // strict inequality: largest representable level below eps
  return transport_mass(mu, nu, dist, std::nextafter(eps, -std::numeric_limits<double>::infinity()));
}

// By Strassen, d <= eps iff the mass movable along pairs closer than eps is
// at least 1 - eps. The movable mass F only changes when eps crosses a
// pairwise distance, so on (t_m, t_{m+1}] feasibility reads 1 - F(t_m) <= eps
// and the infimum there is max(t_m, 1 - F(t_m)). The first level whose
// candidate fits inside its interval is found by binary search over levels.
double lp_distance(const DiscreteMeasure& mu_in, const DiscreteMeasure& nu_in, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("lp_distance: tol must be positive");
  if (mu_in.dimension() != nu_in.dimension()) throw std::domain_error("lp_distance: dimension mismatch");
  const bool swap = measure_less(nu_in, mu_in);
  const DiscreteMeasure& mu = swap ? nu_in : mu_in;
  const DiscreteMeasure& nu = swap ? mu_in : nu_in;
  if (mu == nu) return 0.0;

  auto dist = pair_distances(mu, nu);
  std::vector<double> levels(dist);
  levels.push_back(0.0);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  // levels[0] == 0; interval for index m is (levels[m], levels[m+1]].
  const std::size_t K = levels.size();

  auto deficit = [&](std::size_t m) {
    double d = 1.0 - transport_mass(mu, nu, dist, levels[m]);
    return d < kMergeThreshold ? 0.0 : d;
  };
  auto upper = [&](std::size_t m) {
    return m + 1 < K ? levels[m + 1] : std::numeric_limits<double>::infinity();
  };

  std::size_t lo = 0, hi = K - 1;  // the last level moves all mass, so it is valid
  double hi_deficit = 0.0;
  bool hi_known = false;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    double d = deficit(mid);
    if (d <= upper(mid)) {
      hi = mid;
      hi_deficit = d;
      hi_known = true;
    } else {
      lo = mid + 1;
    }
  }
  if (!hi_known) hi_deficit = deficit(lo);
  double value = std::max(levels[lo], hi_deficit);
  return std::clamp(value, 0.0, 1.0);
}

DiscreteMeasure law_from_columns(std::span<const double> masses,
                                 std::span<const std::vector<double>* const> columns) {
  if (columns.empty()) throw std::invalid_argument("law_from_columns: no columns");
  for (const auto* c : columns)
    if (c->size() != masses.size()) throw std::domain_error("law_from_columns: column length differs from space");
  std::vector<Atom> atoms;
  atoms.reserve(masses.size());
  for (std::size_t w = 0; w < masses.size(); ++w) {
    if (masses[w] == 0.0) continue;
    Atom a{std::vector<double>(columns.size()), masses[w]};
    for (std::size_t c = 0; c < columns.size(); ++c) a.point[c] = (*columns[c])[w];
    atoms.push_back(std::move(a));
  }
  return DiscreteMeasure(static_cast<int>(columns.size()), std::move(atoms));
}

double lp_coupling_bound(const DiscreteMeasure& joint) {
  if (joint.dimension() % 2 != 0) throw std::invalid_argument("lp_coupling_bound: odd dimension");
  const int k = joint.dimension() / 2;
  std::vector<Atom> diff;
  diff.reserve(joint.size());
  for (const auto& a : joint.atoms()) {
    Atom b{std::vector<double>(k), a.mass};
    for (int i = 0; i < k; ++i) b.point[i] = a.point[i] - a.point[k + i];
    diff.push_back(std::move(b));
  }
  double t = tau(DiscreteMeasure(k, std::move(diff)));
  return std::sqrt(t) * std::pow(static_cast<double>(k), 0.75);
}

double hausdorff(const MeasureSet& a, const MeasureSet& b, double tol) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: empty measure set");
  if (a.dimension() != b.dimension()) throw std::domain_error("hausdorff: dimension mismatch");
  const std::size_t na = a.size(), nb = b.size();
  std::vector<double> d(na * nb);
  const long long total = static_cast<long long>(na * nb);
#pragma omp parallel for schedule(dynamic)
  for (long long idx = 0; idx < total; ++idx) {
    std::size_t i = static_cast<std::size_t>(idx) / nb, j = static_cast<std::size_t>(idx) % nb;
    d[idx] = lp_distance(a.members()[i], b.members()[j], tol);
  }
  double ab = 0.0, ba = 0.0;
  for (std::size_t i = 0; i < na; ++i) {
    double m = 1.0;
    for (std::size_t j = 0; j < nb; ++j) m = std::min(m, d[i * nb + j]);
    ab = std::max(ab, m);
  }
  for (std::size_t j = 0; j < nb; ++j) {
    double m = 1.0;
    for (std::size_t i = 0; i < na; ++i) m = std::min(m, d[i * nb + j]);
    ba = std::max(ba, m);
  }
  return std::max(ab, ba);
}

}  // namespace hyperlim
