/*
 * Copyright (c) 2026, rtpol contributors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rtpol/layout.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace rtpol {

namespace {

struct UndirectedEdge {
    NodeId a, b;
    double weight;
};

std::vector<UndirectedEdge> undirected_edges(const TrendNetwork& net) {
    std::map<std::pair<NodeId, NodeId>, double> merged;
    for (const auto& e : net.edges) {
        merged[{std::min(e.source, e.target), std::max(e.source, e.target)}] += static_cast<double>(e.weight);
    }
    std::vector<UndirectedEdge> out;
    out.reserve(merged.size());
    for (const auto& [key, w] : merged) out.push_back({key.first, key.second, w});
    return out;
}

// Quadtree over mass-carrying points for approximate repulsion.
class QuadTree {
public:
    QuadTree(std::span<const Point> pts, std::span<const double> mass) : pts_(pts), mass_(mass) {
        double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
        for (const auto& p : pts) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        const double half = 0.5 * std::max({maxx - minx, maxy - miny, 1e-9}) * 1.0001;
        cells_.reserve(pts.size() * 2);
        cells_.push_back(Cell{0.5 * (minx + maxx), 0.5 * (miny + maxy), half});
        for (std::size_t i = 0; i < pts.size(); ++i) insert(0, i, 0);
    }

    // Accumulates repulsion on point i into (fx, fy).
    void repulse(std::size_t i, double coef, double theta, double& fx, double& fy) const {
        std::vector<std::size_t> stack{0};
        const Point& p = pts_[i];
        while (!stack.empty()) {
            const Cell& c = cells_[stack.back()];
            stack.pop_back();
            if (c.mass == 0.0) continue;
            const double dx = p.x - c.mx;
            const double dy = p.y - c.my;
            const double d2 = dx * dx + dy * dy;
            if (c.leaf) {
                for (std::size_t j : c.members) {
                    if (j == i) continue;
                    const double ex = p.x - pts_[j].x;
                    const double ey = p.y - pts_[j].y;
                    const double e2 = ex * ex + ey * ey;
                    if (e2 <= 0.0) continue;
                    const double f = coef * mass_[i] * mass_[j] / e2;
                    fx += ex * f;
                    fy += ey * f;
                }
                continue;
            }
            if (d2 > 0.0 && (2.0 * c.half) / std::sqrt(d2) < theta) {
                const double f = coef * mass_[i] * c.mass / d2;
                fx += dx * f;
                fy += dy * f;
                continue;
            }
            for (int k = 0; k < 4; ++k) {
                if (c.child[k] != 0) stack.push_back(c.child[k]);
            }
        }
    }

private:
    struct Cell {
        Cell(double x, double y, double h) : cx(x), cy(y), half(h) {}
        double cx, cy, half;
        double mass = 0.0, mx = 0.0, my = 0.0;
        bool leaf = true;
        std::size_t child[4] = {0, 0, 0, 0};
        std::vector<std::size_t> members;
    };

    void insert(std::size_t cell, std::size_t i, int depth) {
        const Point& p = pts_[i];
        const double m = mass_[i];
        {
            Cell& c = cells_[cell];
            const double total = c.mass + m;
            c.mx = (c.mx * c.mass + p.x * m) / total;
            c.my = (c.my * c.mass + p.y * m) / total;
            c.mass = total;
            if (c.leaf) {
                if (c.members.empty() || depth >= 48) {
                    c.members.push_back(i);
                    return;
                }
                c.leaf = false;
                auto moved = std::move(c.members);
                c.members.clear();
                for (std::size_t j : moved) place(cell, j, depth);
            }
        }
        place(cell, i, depth);
    }

    void place(std::size_t cell, std::size_t i, int depth) {
        const Point& p = pts_[i];
        const int k = (p.x >= cells_[cell].cx ? 1 : 0) + (p.y >= cells_[cell].cy ? 2 : 0);
        if (cells_[cell].child[k] == 0) {
            const double h = cells_[cell].half * 0.5;
            Cell child{cells_[cell].cx + ((k & 1) ? h : -h), cells_[cell].cy + ((k & 2) ? h : -h), h};
            cells_.push_back(std::move(child));
            cells_[cell].child[k] = cells_.size() - 1;
        }
        insert(cells_[cell].child[k], i, depth + 1);
    }

    std::span<const Point> pts_;
    std::span<const double> mass_;
    std::vector<Cell> cells_;
};

}  // namespace

Embedding2D force_layout(const TrendNetwork& net, const LayoutParams& params, std::uint64_t seed) {
    const std::size_t n = net.size();
    Embedding2D emb;
    if (n == 0) throw std::invalid_argument("force_layout: empty network");
    emb.coordinates.assign(n, Point{});
    // a lone node settles where gravity pulls it
    if (n == 1) return emb;

    const auto edges = undirected_edges(net);
    std::vector<double> mass(n, 1.0);
    for (const auto& e : edges) {
        mass[e.a] += 1.0;
        mass[e.b] += 1.0;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const double spread = std::sqrt(static_cast<double>(n)) * 10.0;
    auto& pos = emb.coordinates;
    for (auto& p : pos) {
        p.x = unif(rng) * spread;
        p.y = unif(rng) * spread;
    }

    std::vector<double> fx(n, 0.0), fy(n, 0.0), old_fx(n, 0.0), old_fy(n, 0.0);
    double speed = 1.0;
    double speed_efficiency = 1.0;
    const bool use_tree = n >= params.barnes_hut_threshold;

    for (int iter = 0; iter < params.iterations; ++iter) {
        std::swap(fx, old_fx);
        std::swap(fy, old_fy);
        std::fill(fx.begin(), fx.end(), 0.0);
        std::fill(fy.begin(), fy.end(), 0.0);

        if (use_tree) {
            QuadTree tree(pos, mass);
            for (std::size_t i = 0; i < n; ++i) tree.repulse(i, params.scaling, params.barnes_hut_theta, fx[i], fy[i]);
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                const double xi = pos[i].x, yi = pos[i].y, mi = mass[i] * params.scaling;
                double ax = 0.0, ay = 0.0;
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double dx = xi - pos[j].x;
                    const double dy = yi - pos[j].y;
                    const double d2 = dx * dx + dy * dy;
                    if (d2 <= 0.0) continue;
                    const double f = mi * mass[j] / d2;
                    ax += dx * f;
                    ay += dy * f;
                    fx[j] -= dx * f;
                    fy[j] -= dy * f;
                }
                fx[i] += ax;
                fy[i] += ay;
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
            const double d = std::hypot(pos[i].x, pos[i].y);
            if (d <= 0.0) continue;
            const double f = params.gravity * mass[i] / d;
            fx[i] -= pos[i].x * f;
            fy[i] -= pos[i].y * f;
        }

        for (const auto& e : edges) {
            const double dx = pos[e.a].x - pos[e.b].x;
            const double dy = pos[e.a].y - pos[e.b].y;
            double f = -e.weight;
            if (params.lin_log) {
                const double d = std::hypot(dx, dy);
                if (d <= 0.0) continue;
                f *= std::log1p(d) / d;
            }
            fx[e.a] += dx * f;
            fy[e.a] += dy * f;
            fx[e.b] -= dx * f;
            fy[e.b] -= dy * f;
        }

        // adaptive global speed
        double total_swing = 0.0, total_traction = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            total_swing += mass[i] * std::hypot(old_fx[i] - fx[i], old_fy[i] - fy[i]);
            total_traction += mass[i] * 0.5 * std::hypot(old_fx[i] + fx[i], old_fy[i] + fy[i]);
        }
        if (total_swing > 0.0 && total_traction > 0.0) {
            const double n_d = static_cast<double>(n);
            const double estimated_jt = 0.05 * std::sqrt(n_d);
            const double min_jt = std::sqrt(estimated_jt);
            const double max_jt = 10.0;
            double jt = params.jitter_tolerance *
                        std::max(min_jt, std::min(max_jt, estimated_jt * total_traction / (n_d * n_d)));
            const double min_speed_efficiency = 0.05;
            if (total_swing / total_traction > 2.0) {
                if (speed_efficiency > min_speed_efficiency) speed_efficiency *= 0.5;
                jt = std::max(jt, params.jitter_tolerance);
            }
            const double target_speed = jt * speed_efficiency * total_traction / total_swing;
            if (total_swing > jt * total_traction) {
                if (speed_efficiency > min_speed_efficiency) speed_efficiency *= 0.7;
            } else if (speed < 1000.0) {
                speed_efficiency *= 1.3;
            }
            speed = speed + std::min(target_speed - speed, 0.5 * speed);
        }

        for (std::size_t i = 0; i < n; ++i) {
            const double swing = mass[i] * std::hypot(old_fx[i] - fx[i], old_fy[i] - fy[i]);
            const double factor = speed / (1.0 + std::sqrt(speed * swing));
            pos[i].x += fx[i] * factor;
            pos[i].y += fy[i] * factor;
        }
    }
    return emb;
}

namespace {

void check_two_labels(std::span<const Point> points, std::span<const int> labels) {
    if (points.size() != labels.size()) throw std::invalid_argument("silhouette: size mismatch");
    if (labels.empty()) throw std::invalid_argument("silhouette: empty partition");
    const int first = labels[0];
    int second = first;
    for (int l : labels) {
        if (l == first) continue;
        if (second == first) second = l;
        else if (l != second) throw std::invalid_argument("silhouette: more than two clusters");
    }
    if (second == first) throw std::invalid_argument("silhouette: fewer than two clusters");
}

double silhouette_unchecked(std::span<const Point> points, std::span<const int> labels, std::size_t i,
                            std::size_t own_size) {
    if (own_size < 2) return 0.0;
    double own = 0.0, other = 0.0;
    std::size_t n_other = 0;
    const Point& p = points[i];
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (j == i) continue;
        const double dx = p.x - points[j].x;
        const double dy = p.y - points[j].y;
        const double d = std::sqrt(dx * dx + dy * dy);
        if (labels[j] == labels[i]) {
            own += d;
        } else {
            other += d;
            ++n_other;
        }
    }
    const double a = own / static_cast<double>(own_size - 1);
    const double b = other / static_cast<double>(n_other);
    const double denom = std::max(a, b);
    return denom > 0.0 ? (b - a) / denom : 0.0;
}

}  // namespace

double silhouette_node(std::span<const Point> points, std::span<const int> labels, std::size_t node) {
    check_two_labels(points, labels);
    if (node >= points.size()) throw std::out_of_range("silhouette_node: node out of range");
    const auto own = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), labels[node]));
    return silhouette_unchecked(points, labels, node, own);
}

double silhouette_score(std::span<const Point> points, std::span<const int> labels) {
    check_two_labels(points, labels);
    const int first = labels[0];
    const auto n_first = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), first));
    const std::size_t n_second = labels.size() - n_first;
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        total += silhouette_unchecked(points, labels, i, labels[i] == first ? n_first : n_second);
    }
    return total / static_cast<double>(points.size());
}

}  // namespace rtpol
