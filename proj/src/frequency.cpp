// Copyright 2026 The imgauth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// SPDX-License-Identifier: Apache-2.0

#include "imgauth/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "imgauth/error.hpp"
#include "imgauth/spatial.hpp"
#include "imgauth/verifier.hpp"

namespace imgauth {
namespace {

// Effective weights of the in-extent samples of one (possibly partial)
// block. Padding replicates the last row/column, so a padded coefficient is
// a linear form over the in-extent samples; the form is separable.
struct BlockWeights {
    int rows = 0;
    int cols = 0;
    std::array<double, kBlockSize> row_w{};
    std::array<double, kBlockSize> col_w{};

    double w(int k) const noexcept { return row_w[k / cols] * col_w[k % cols]; }
    int count() const noexcept { return rows * cols; }
};

BlockWeights make_weights(int rows, int cols, CoeffPos pos) {
    BlockWeights bw;
    bw.rows = rows;
    bw.cols = cols;
    for (int n = 0; n < kBlockSize; ++n) {
        bw.row_w[clamp_coord(n, rows)] += dct_basis_1d(pos.row - 1, n);
        bw.col_w[clamp_coord(n, cols)] += dct_basis_1d(pos.col - 1, n);
    }
    return bw;
}

// Sample accessor: f(i, j) for 0 <= i < rows, 0 <= j < cols. The summation
// order here is the single definition used for both embedding and checking.
template <typename Sample>
double weighted_sum(const BlockWeights& bw, Sample&& f) {
    double total = 0.0;
    for (int i = 0; i < bw.rows; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < bw.cols; ++j) row_sum += bw.col_w[j] * static_cast<double>(f(i, j));
        total += bw.row_w[i] * row_sum;
    }
    return total;
}

double plane_block_sum(const BlockWeights& bw, const ChannelPlane& plane, int brow, int bcol) {
    const int r0 = brow * kBlockSize;
    const int c0 = bcol * kBlockSize;
    return weighted_sum(bw, [&](int i, int j) { return plane.at(r0 + i, c0 + j); });
}

struct SingleMove {
    double step;
    int k;
    int s;
};

struct PairMove {
    double step;
    std::uint8_t a;
    std::uint8_t b;
    std::int8_t sa;
    std::int8_t sb;
};

// All +/-1 moves of one or two samples, sorted by coefficient change.
struct MoveTable {
    std::vector<SingleMove> singles;
    std::vector<PairMove> pairs;
};

MoveTable make_move_table(const BlockWeights& bw) {
    MoveTable t;
    const int n = bw.count();
    for (int k = 0; k < n; ++k) {
        if (std::abs(bw.w(k)) < 1e-12) continue;
        t.singles.push_back({bw.w(k), k, +1});
        t.singles.push_back({-bw.w(k), k, -1});
    }
    for (std::size_t x = 0; x < t.singles.size(); ++x) {
        for (std::size_t y = x + 1; y < t.singles.size(); ++y) {
            const auto& p = t.singles[x];
            const auto& q = t.singles[y];
            if (p.k == q.k) continue;
            t.pairs.push_back({p.step + q.step, static_cast<std::uint8_t>(p.k), static_cast<std::uint8_t>(q.k),
                               static_cast<std::int8_t>(p.s), static_cast<std::int8_t>(q.s)});
        }
    }
    std::sort(t.pairs.begin(), t.pairs.end(), [](const PairMove& l, const PairMove& r) { return l.step < r.step; });
    return t;
}

using LocalTile = std::array<int, kBlockSize * kBlockSize>;

// Fine correction. The achievable coefficient changes from integer sample
// moves form a low-rank lattice (DCT weights take few distinct values), so
// sub-1e-6 steps need many moves. Four weight classes that generate the
// lattice are picked per block shape, and every combination n in [-M, M]^4
// whose change lands in [-kLatticeWindow, kLatticeWindow] is tabulated.
inline constexpr double kLatticeWindow = 0.05;

struct LatticeTable {
    int classes = 0;
    int m = 0;
    std::array<double, 4> step{};                 // |w| of each class
    std::array<std::vector<int>, 4> pixels;       // local sample indices
    std::array<std::vector<int>, 4> signs;        // sign of w per pixel
    std::vector<std::pair<double, std::uint32_t>> entries;  // (change, code), sorted

    std::array<int, 4> decode(std::uint32_t code) const {
        std::array<int, 4> n{};
        const std::uint32_t base = static_cast<std::uint32_t>(2 * m + 1);
        for (int c = classes - 1; c >= 0; --c) {
            n[c] = static_cast<int>(code % base) - m;
            code /= base;
        }
        return n;
    }
};

struct WeightClass {
    double magnitude;
    std::vector<int> pixels;
    std::vector<int> signs;
};

std::vector<WeightClass> group_weights(const BlockWeights& bw) {
    std::vector<WeightClass> out;
    for (int k = 0; k < bw.count(); ++k) {
        const double w = bw.w(k);
        if (std::abs(w) < 1e-9) continue;
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const WeightClass& c) { return std::abs(c.magnitude - std::abs(w)) < 1e-12; });
        if (it == out.end()) {
            out.push_back({std::abs(w), {}, {}});
            it = std::prev(out.end());
        }
        it->pixels.push_back(k);
        it->signs.push_back(w > 0 ? 1 : -1);
    }
    std::stable_sort(out.begin(), out.end(), [](const WeightClass& a, const WeightClass& b) {
        if (a.pixels.size() != b.pixels.size()) return a.pixels.size() > b.pixels.size();
        return a.magnitude > b.magnitude;
    });
    return out;
}

// Number of distinct values of sum n_i * v_i over n in [-6, 6]^k; equal to
// 13^k when the values are rationally independent at that scale.
std::size_t distinct_combinations(const std::vector<double>& values) {
    std::vector<double> sums{0.0};
    for (double v : values) {
        std::vector<double> next;
        next.reserve(sums.size() * 13);
        for (double s : sums) {
            for (int n = -6; n <= 6; ++n) next.push_back(s + n * v);
        }
        sums.swap(next);
    }
    std::sort(sums.begin(), sums.end());
    std::size_t distinct = sums.empty() ? 0 : 1;
    for (std::size_t i = 1; i < sums.size(); ++i) {
        if (sums[i] - sums[i - 1] > 1e-11) ++distinct;
    }
    return distinct;
}

LatticeTable make_lattice_table(const BlockWeights& bw) {
    LatticeTable t;
    const std::vector<WeightClass> all = group_weights(bw);
    if (all.size() < 2) return t;

    // Prefer well-populated classes; take the first four-class subset that
    // is independent, else the best seen.
    std::vector<int> chosen;
    if (all.size() <= 4) {
        for (std::size_t i = 0; i < all.size(); ++i) chosen.push_back(static_cast<int>(i));
    } else {
        const int k = static_cast<int>(std::min<std::size_t>(all.size(), 10));
        std::size_t best = 0;
        const std::size_t full = 13 * 13 * 13 * 13;
        for (int a = 0; a < k && best < full; ++a)
            for (int b = a + 1; b < k && best < full; ++b)
                for (int c = b + 1; c < k && best < full; ++c)
                    for (int d = c + 1; d < k && best < full; ++d) {
                        const std::size_t n = distinct_combinations(
                            {all[a].magnitude, all[b].magnitude, all[c].magnitude, all[d].magnitude});
                        if (n > best) {
                            best = n;
                            chosen = {a, b, c, d};
                        }
                    }
    }

    t.classes = static_cast<int>(chosen.size());
    t.m = t.classes == 4 ? 48 : (t.classes == 3 ? 160 : 1000);
    for (int c = 0; c < t.classes; ++c) {
        t.step[c] = all[chosen[c]].magnitude;
        t.pixels[c] = all[chosen[c]].pixels;
        t.signs[c] = all[chosen[c]].signs;
    }

    // Meet in the middle: first half of the classes against the second.
    const int base = 2 * t.m + 1;
    const int split = t.classes / 2;
    auto enumerate = [&](int from, int to) {
        std::vector<std::pair<double, std::uint32_t>> out{{0.0, 0u}};
        for (int c = from; c < to; ++c) {
            std::vector<std::pair<double, std::uint32_t>> next;
            next.reserve(out.size() * base);
            for (const auto& [v, code] : out) {
                for (int n = -t.m; n <= t.m; ++n) {
                    next.emplace_back(v + n * t.step[c], code * base + static_cast<std::uint32_t>(n + t.m));
                }
            }
            out.swap(next);
        }
        return out;
    };
    const auto left = enumerate(0, split);
    auto right = enumerate(split, t.classes);
    std::sort(right.begin(), right.end());
    std::uint32_t right_span = 1;
    for (int c = split; c < t.classes; ++c) right_span *= static_cast<std::uint32_t>(base);

    for (const auto& [lv, lcode] : left) {
        auto it = std::lower_bound(right.begin(), right.end(), std::pair{-kLatticeWindow - lv, 0u});
        for (; it != right.end() && lv + it->first <= kLatticeWindow; ++it) {
            t.entries.emplace_back(lv + it->first, lcode * right_span + it->second);
        }
    }
    std::sort(t.entries.begin(), t.entries.end());
    return t;
}

bool can_move(const LocalTile& x, int k, int s) noexcept {
    const int v = x[k] + s;
    return v >= 0 && v <= 255;
}

double local_sum(const BlockWeights& bw, const LocalTile& x) {
    return weighted_sum(bw, [&](int i, int j) { return x[i * bw.cols + j]; });
}

// Best combination of up to three +/-1 moves that brings the coefficient
// change closest to `want`. Returns false when nothing beats doing nothing.
bool apply_best_combo(const MoveTable& t, LocalTile& x, double want) {
    double best_err = std::abs(want);
    int best_single = -1;
    std::ptrdiff_t best_pair = -1;

    auto scan_pairs = [&](double target, int exclude, int single_idx) {
        const auto it = std::lower_bound(t.pairs.begin(), t.pairs.end(), target,
                                         [](const PairMove& m, double v) { return m.step < v; });
        auto consider = [&](std::ptrdiff_t idx) {
            const PairMove& m = t.pairs[static_cast<std::size_t>(idx)];
            if (m.a == exclude || m.b == exclude) return;
            if (!can_move(x, m.a, m.sa) || !can_move(x, m.b, m.sb)) return;
            const double err = std::abs(target - m.step);
            if (err < best_err) {
                best_err = err;
                best_single = single_idx;
                best_pair = idx;
            }
        };
        const auto mid = it - t.pairs.begin();
        for (auto i = mid - 1; i >= 0 && target - t.pairs[static_cast<std::size_t>(i)].step < best_err; --i) {
            consider(i);
        }
        for (auto i = mid; i < static_cast<std::ptrdiff_t>(t.pairs.size()) &&
                           t.pairs[static_cast<std::size_t>(i)].step - target < best_err;
             ++i) {
            consider(i);
        }
    };

    for (std::size_t i = 0; i < t.singles.size(); ++i) {
        const auto& m = t.singles[i];
        if (!can_move(x, m.k, m.s)) continue;
        const double err = std::abs(want - m.step);
        if (err < best_err) {
            best_err = err;
            best_single = static_cast<int>(i);
            best_pair = -1;
        }
    }
    scan_pairs(want, -1, -1);
    for (std::size_t i = 0; i < t.singles.size(); ++i) {
        const auto& m = t.singles[i];
        if (!can_move(x, m.k, m.s)) continue;
        scan_pairs(want - m.step, m.k, static_cast<int>(i));
    }

    if (best_single < 0 && best_pair < 0) return false;
    if (best_single >= 0) {
        const auto& m = t.singles[static_cast<std::size_t>(best_single)];
        x[m.k] += m.s;
    }
    if (best_pair >= 0) {
        const auto& m = t.pairs[static_cast<std::size_t>(best_pair)];
        x[m.a] += m.sa;
        x[m.b] += m.sb;
    }
    return true;
}

// Pins clipped samples and spreads the remaining deficit over the free ones
// until the real-valued block meets the target.
void project_onto_target(const BlockWeights& bw, std::array<double, 64>& y, double target) {
    const int n = bw.count();
    for (int iter = 0; iter < 64; ++iter) {
        for (int k = 0; k < n; ++k) y[k] = std::clamp(y[k], 0.0, 255.0);
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += bw.w(k) * y[k];
        const double r = target - sum;
        if (std::abs(r) < 1e-9) return;

        double norm = 0.0;
        std::array<bool, 64> free{};
        for (int k = 0; k < n; ++k) {
            const double wk = bw.w(k);
            if (wk == 0.0) continue;
            free[k] = r * wk > 0 ? y[k] < 255.0 : y[k] > 0.0;
            if (free[k]) norm += wk * wk;
        }
        if (norm == 0.0) return;
        for (int k = 0; k < n; ++k) {
            if (free[k]) y[k] += r * bw.w(k) / norm;
        }
    }
    for (int k = 0; k < n; ++k) y[k] = std::clamp(y[k], 0.0, 255.0);
}

// Unit moves of a lattice combination, each placed on the class pixel with
// the most headroom. Returns false when a class runs out of room.
bool apply_lattice_combo(const LatticeTable& t, LocalTile& x, std::uint32_t code) {
    const std::array<int, 4> n = t.decode(code);
    LocalTile next = x;
    for (int c = 0; c < t.classes; ++c) {
        const int dir = n[c] > 0 ? 1 : -1;
        const auto& px = t.pixels[c];
        for (int u = std::abs(n[c]); u > 0; --u) {
            int best = -1;
            int best_room = 0;
            for (std::size_t i = 0; i < px.size(); ++i) {
                const int s = dir * t.signs[c][i];
                const int room = s > 0 ? 255 - next[px[i]] : next[px[i]];
                if (room > best_room) {
                    best_room = room;
                    best = static_cast<int>(i);
                }
            }
            if (best < 0) return false;
            next[px[best]] += dir * t.signs[c][best];
        }
    }
    x = next;
    return true;
}

int lattice_cost(const LatticeTable& t, std::uint32_t code) {
    const std::array<int, 4> n = t.decode(code);
    return std::abs(n[0]) + std::abs(n[1]) + std::abs(n[2]) + std::abs(n[3]);
}

// Among tabulated changes close to `want`, prefer the cheapest one that is
// well inside the cap; otherwise the closest feasible one.
bool apply_lattice(const LatticeTable& t, LocalTile& x, double want) {
    if (t.entries.empty() || std::abs(want) > kLatticeWindow) return false;
    const auto& e = t.entries;
    const auto mid = std::lower_bound(e.begin(), e.end(), std::pair{want, 0u}) - e.begin();
    std::ptrdiff_t lo = mid - 1;
    std::ptrdiff_t hi = mid;
    const double good = kResidualCap / 4;
    double best_err = std::abs(want);
    int best_cost = 0;
    std::uint32_t best_code = 0;
    bool found = false;
    for (int checked = 0; checked < 512; ++checked) {
        const bool lo_ok = lo >= 0;
        const bool hi_ok = hi < static_cast<std::ptrdiff_t>(e.size());
        if (!lo_ok && !hi_ok) break;
        std::ptrdiff_t idx;
        if (lo_ok && (!hi_ok || want - e[lo].first <= e[hi].first - want)) idx = lo--;
        else idx = hi++;
        const double err = std::abs(want - e[idx].first);
        if (found && err > good) break;
        const int cost = lattice_cost(t, e[idx].second);
        const bool better = !found ? err < best_err : (err <= good && cost < best_cost);
        if (!better) continue;
        LocalTile trial = x;
        if (!apply_lattice_combo(t, trial, e[idx].second)) continue;
        best_err = err;
        best_cost = cost;
        best_code = e[idx].second;
        found = true;
    }
    if (!found) return false;
    return apply_lattice_combo(t, x, best_code);
}

struct ShapeTables {
    BlockWeights weights;
    MoveTable moves;
    LatticeTable lattice;
    std::vector<WeightClass> classes;
};

// Exact fallback: equal signed sums per weight class give an identical
// coefficient whatever the rational relations between the classes. Costs
// more distortion, so it only runs when the searches fall short.
void match_class_sums(const std::vector<WeightClass>& classes, LocalTile& x, const LocalTile& cipher) {
    for (const WeightClass& wc : classes) {
        int diff = 0;
        for (std::size_t i = 0; i < wc.pixels.size(); ++i) {
            diff += wc.signs[i] * (cipher[wc.pixels[i]] - x[wc.pixels[i]]);
        }
        const int dir = diff > 0 ? 1 : -1;
        for (int u = std::abs(diff); u > 0; --u) {
            int best = -1;
            int best_room = 0;
            for (std::size_t i = 0; i < wc.pixels.size(); ++i) {
                const int s = dir * wc.signs[i];
                const int room = s > 0 ? 255 - x[wc.pixels[i]] : x[wc.pixels[i]];
                if (room > best_room) {
                    best_room = room;
                    best = static_cast<int>(i);
                }
            }
            // Unreachable: the cipher tile itself satisfies every class sum.
            if (best < 0) break;
            x[wc.pixels[best]] += dir * wc.signs[best];
        }
    }
}

// Tables depend only on (position, rows, cols); built once per process.
const ShapeTables& shape_tables(CoeffPos pos, int rows, int cols) {
    static std::mutex mutex;
    static std::map<std::array<int, 4>, std::unique_ptr<ShapeTables>> cache;
    const std::array<int, 4> key{pos.row, pos.col, rows, cols};
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto tables = std::make_unique<ShapeTables>();
        tables->weights = make_weights(rows, cols, pos);
        tables->moves = make_move_table(tables->weights);
        tables->lattice = make_lattice_table(tables->weights);
        tables->classes = group_weights(tables->weights);
        it = cache.emplace(key, std::move(tables)).first;
    }
    return *it->second;
}

// Drives one block's coefficient to `target`. Returns the integer tile.
LocalTile realise_block(const ShapeTables& tables, const RealTile& candidate, const LocalTile& cipher,
                        double target) {
    const BlockWeights& bw = tables.weights;
    const int n = bw.count();
    std::array<double, 64> y{};
    for (int i = 0; i < bw.rows; ++i) {
        for (int j = 0; j < bw.cols; ++j) y[i * bw.cols + j] = candidate[i * kBlockSize + j];
    }
    project_onto_target(bw, y, target);

    LocalTile x{};
    for (int k = 0; k < n; ++k) x[k] = static_cast<int>(std::floor(y[k] + 0.5));

    // Greedy single-sample steps, then three-sample combinations, then the
    // lattice table for the last digits.
    for (int guard = 0; guard < 512; ++guard) {
        const double r = target - local_sum(bw, x);
        if (std::abs(r) <= kResidualCap) return x;
        int best = -1;
        double best_err = std::abs(r);
        for (const auto& m : tables.moves.singles) {
            if (!can_move(x, m.k, m.s)) continue;
            const double err = std::abs(r - m.step);
            if (err < best_err) {
                best_err = err;
                best = m.k * 2 + (m.s > 0 ? 1 : 0);
            }
        }
        if (best < 0) break;
        x[best / 2] += (best % 2) ? 1 : -1;
    }
    for (int round = 0; round < 4; ++round) {
        const double r = target - local_sum(bw, x);
        if (std::abs(r) <= kResidualCap) return x;
        if (!apply_best_combo(tables.moves, x, r)) break;
    }
    for (int round = 0; round < 2; ++round) {
        const double r = target - local_sum(bw, x);
        if (std::abs(r) <= kResidualCap) return x;
        if (!apply_lattice(tables.lattice, x, r)) break;
    }
    if (std::abs(target - local_sum(bw, x)) > kResidualCap) match_class_sums(tables.classes, x, cipher);
    return x;
}

void check_scenario(const FreqScenario& scenario) {
    if (!is_supported_position(scenario.pos)) {
        throw Error(ErrorCode::InvalidScenario, "coefficient position must be (1,1), (1,2), (3,6) or (8,8)");
    }
}

}  // namespace

DctBlock substitute_coeff(const DctBlock& modified, const DctBlock& modifier, CoeffPos pos) {
    if (!is_supported_position(pos)) {
        throw Error(ErrorCode::InvalidScenario, "coefficient position must be (1,1), (1,2), (3,6) or (8,8)");
    }
    DctBlock out = modified;
    out[coeff_index(pos)] = modifier[coeff_index(pos)];
    return out;
}

double block_coefficient(const ChannelPlane& plane, int brow, int bcol, CoeffPos pos) {
    const int rows = std::min(kBlockSize, plane.height() - brow * kBlockSize);
    const int cols = std::min(kBlockSize, plane.width() - bcol * kBlockSize);
    return plane_block_sum(make_weights(rows, cols, pos), plane, brow, bcol);
}

FrequencyEmbedResult embed_frequency_detailed(const RgbImage& image, const CameraId& camera_id,
                                              const FreqScenario& scenario, const ChannelRoles& roles) {
    check_scenario(scenario);
    FrequencyEmbedResult result;
    result.image = implant_photo_id(image, derive_photo_id(camera_id), roles.unprocessed);
    const CipherPlane cipher = build_modifier(result.image, roles, scenario.mode, derive_cipher_key(camera_id));
    ChannelPlane& carrier = result.image.plane(roles.modified);

    const BlockGrid carrier_grid = pad_to_block_multiple(carrier);
    const BlockGrid cipher_grid = pad_to_block_multiple(cipher);

    for (int br = 0; br < carrier_grid.block_rows; ++br) {
        for (int bc = 0; bc < carrier_grid.block_cols; ++bc) {
            const int rows = std::min(kBlockSize, carrier.height() - br * kBlockSize);
            const int cols = std::min(kBlockSize, carrier.width() - bc * kBlockSize);
            const ShapeTables& tables = shape_tables(scenario.pos, rows, cols);
            const BlockWeights& bw = tables.weights;
            ++result.blocks;

            const double target = plane_block_sum(bw, cipher, br, bc);
            if (std::abs(target - plane_block_sum(bw, carrier, br, bc)) <= kResidualCap) continue;

            const DctBlock substituted = substitute_coeff(dct2_block(carrier_grid.block(br, bc)),
                                                          dct2_block(cipher_grid.block(br, bc)), scenario.pos);
            LocalTile cipher_tile{};
            for (int i = 0; i < rows; ++i) {
                for (int j = 0; j < cols; ++j) {
                    cipher_tile[i * cols + j] = cipher.at(br * kBlockSize + i, bc * kBlockSize + j);
                }
            }
            const LocalTile x = realise_block(tables, idct2_real(substituted), cipher_tile, target);
            for (int i = 0; i < rows; ++i) {
                for (int j = 0; j < cols; ++j) {
                    carrier.at(br * kBlockSize + i, bc * kBlockSize + j) = static_cast<std::uint8_t>(x[i * cols + j]);
                }
            }
            const double residual = std::abs(target - plane_block_sum(bw, carrier, br, bc));
            result.max_residual = std::max(result.max_residual, residual);
            if (residual > kResidualCap) ++result.saturated_blocks;
        }
    }
    return result;
}

RgbImage embed_frequency(const RgbImage& image, const CameraId& camera_id, const FreqScenario& scenario,
                         const ChannelRoles& roles) {
    return embed_frequency_detailed(image, camera_id, scenario, roles).image;
}

}  // namespace imgauth
