#include "injekt/tensor.hpp"

namespace injekt {

namespace {
const RatField Q;

using Slice = std::array<std::array<Rat, 2>, 2>;

Rat det2(const Slice& s) { return s[0][0] * s[1][1] - s[0][1] * s[1][0]; }

bool slice_zero(const Slice& s) {
    return s[0][0] == 0 && s[0][1] == 0 && s[1][0] == 0 && s[1][1] == 0;
}

// factor a rank-1 2x2 matrix as u v^T
void factor_rank1(const Slice& s, std::array<Rat, 2>& u, std::array<Rat, 2>& v) {
    int i0 = -1, j0 = -1;
    for (int i = 0; i < 2 && i0 < 0; ++i)
        for (int j = 0; j < 2; ++j)
            if (s[i][j] != 0) {
                i0 = i;
                j0 = j;
                break;
            }
    u = {s[0][j0], s[1][j0]};
    v = {s[i0][0] / s[i0][j0], s[i0][1] / s[i0][j0]};
}

} // namespace

int flattening_rank(const Tensor222n& t) { return flattening_rank_core(Q, t.slices); }

std::string rank_class_name(RankClass c) {
    switch (c) {
        case RankClass::Zero: return "Zero";
        case RankClass::RankOne: return "RankOne";
        case RankClass::RankTwo: return "RankTwo";
        case RankClass::Border2Rank3: return "Border2Rank3";
        case RankClass::BorderAtLeast3: return "BorderAtLeast3";
    }
    return "?";
}

RankDecision rank_decision(const Tensor222n& t) {
    RankDecision out;
    bool split = true;
    out.cls = rank_class_core(Q, t.slices, &out.disc, &split);
    out.witness_over_extension = false;
    const int n = t.m + 1;
    if (out.cls == RankClass::Zero || out.cls == RankClass::Border2Rank3 ||
        out.cls == RankClass::BorderAtLeast3)
        return out;

    int fr = flattening_rank(t);
    if (fr == 1) {
        size_t c0 = 0;
        while (slice_zero(t.slices[c0])) ++c0;
        const Slice& A = t.slices[c0];
        // every slice is alpha_c * A
        int pi = A[0][0] != 0 ? 0 : (A[0][1] != 0 ? 1 : (A[1][0] != 0 ? 2 : 3));
        auto entry = [&](const Slice& s) { return s[pi / 2][pi % 2]; };
        std::vector<Rat> alpha(n);
        for (int c = 0; c < n; ++c) alpha[c] = entry(t.slices[c]) / entry(A);
        if (out.cls == RankClass::RankOne) {
            Rank1Summand s;
            factor_rank1(A, s.u, s.v);
            s.w = alpha;
            out.summands.push_back(std::move(s));
        } else { // RankTwo with a single slice direction of determinant != 0
            // A = col0 e0^T + col1 e1^T
            out.summands.push_back({{A[0][0], A[1][0]}, {Rat(1), Rat(0)}, alpha});
            out.summands.push_back({{A[0][1], A[1][1]}, {Rat(0), Rat(1)}, alpha});
        }
        return out;
    }

    // fr == 2, RankTwo: reconstruct two rank-1 pencil directions when possible
    size_t ia = t.slices.size(), ib = t.slices.size();
    for (size_t c = 0; c < t.slices.size() && ib == t.slices.size(); ++c) {
        if (slice_zero(t.slices[c])) continue;
        if (ia == t.slices.size()) {
            ia = c;
            continue;
        }
        MatQ two(2, 4, Q);
        for (int j = 0; j < 4; ++j) {
            two.at(0, j) = t.slices[ia][j / 2][j % 2];
            two.at(1, j) = t.slices[c][j / 2][j % 2];
        }
        if (rank(Q, two) == 2) ib = c;
    }
    const Slice &A = t.slices[ia], &B = t.slices[ib];
    Rat q0 = det2(A), q2 = det2(B);
    Rat q1 = A[0][0] * B[1][1] + B[0][0] * A[1][1] - A[0][1] * B[1][0] - B[0][1] * A[1][0];

    auto combine = [&](const Rat& x, const Rat& y) {
        Slice s;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s[i][j] = x * A[i][j] + y * B[i][j];
        return s;
    };

    std::optional<std::pair<Slice, Slice>> gens;
    if (q0 == 0 && q1 == 0 && q2 == 0) {
        // every pencil member singular: common kernel or common cokernel
        MatQ stacked(2 * n, 2, Q), stackedT(2 * n, 2, Q);
        for (int c = 0; c < n; ++c)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    stacked.at(2 * c + i, j) = t.slices[c][i][j];
                    stackedT.at(2 * c + j, i) = t.slices[c][i][j];
                }
        auto ker = nullspace(Q, stacked);
        if (!ker.empty()) {
            // common row vector v with slices M_c = u_c v^T
            std::array<Rat, 2> v{-ker[0][1], ker[0][0]};
            int vj = v[0] != 0 ? 0 : 1;
            std::vector<Rat> w0(n), w1(n);
            for (int c = 0; c < n; ++c) {
                // u_c = column vj of M_c divided by v[vj]
                w0[c] = t.slices[c][0][vj] / v[vj];
                w1[c] = t.slices[c][1][vj] / v[vj];
            }
            out.summands.push_back({{Rat(1), Rat(0)}, v, w0});
            out.summands.push_back({{Rat(0), Rat(1)}, v, w1});
        } else {
            auto cok = nullspace(Q, stackedT);
            if (cok.empty()) throw Error("singular pencil without common kernel or cokernel");
            std::array<Rat, 2> u{-cok[0][1], cok[0][0]};
            int ui = u[0] != 0 ? 0 : 1;
            std::vector<Rat> w0(n), w1(n);
            for (int c = 0; c < n; ++c) {
                w0[c] = t.slices[c][ui][0] / u[ui];
                w1[c] = t.slices[c][ui][1] / u[ui];
            }
            out.summands.push_back({u, {Rat(1), Rat(0)}, w0});
            out.summands.push_back({u, {Rat(0), Rat(1)}, w1});
        }
        return out;
    }

    if (!split) {
        out.witness_over_extension = true; // two directions conjugate over a quadratic field
        return out;
    }
    // rational roots of q: the two rank-1 generators of the pencil
    Rat x1, y1, x2, y2;
    if (q0 != 0) {
        Rat sq;
        mpz_sqrt(sq.get_num_mpz_t(), Rat(out.disc).get_num().get_mpz_t());
        mpz_sqrt(sq.get_den_mpz_t(), Rat(out.disc).get_den().get_mpz_t());
        sq.canonicalize();
        x1 = (-q1 + sq) / (2 * q0);
        y1 = 1;
        x2 = (-q1 - sq) / (2 * q0);
        y2 = 1;
    } else {
        x1 = 1;
        y1 = 0;
        x2 = -q2;
        y2 = q1;
    }
    gens = {combine(x1, y1), combine(x2, y2)};
    // write every slice as lambda * G1 + mu * G2 and split
    const Slice &G1 = gens->first, &G2 = gens->second;
    MatQ sys(4, 2, Q);
    for (int j = 0; j < 4; ++j) {
        sys.at(j, 0) = G1[j / 2][j % 2];
        sys.at(j, 1) = G2[j / 2][j % 2];
    }
    std::vector<Rat> lam(n), mu(n);
    for (int c = 0; c < n; ++c) {
        std::vector<Rat> rhs{t.slices[c][0][0], t.slices[c][0][1], t.slices[c][1][0], t.slices[c][1][1]};
        auto sol = solve(Q, sys, rhs);
        if (!sol) throw Error("pencil coordinates did not solve");
        lam[c] = (*sol)[0];
        mu[c] = (*sol)[1];
    }
    Rank1Summand s1, s2;
    factor_rank1(G1, s1.u, s1.v);
    s1.w = lam;
    factor_rank1(G2, s2.u, s2.v);
    s2.w = mu;
    out.summands.push_back(std::move(s1));
    out.summands.push_back(std::move(s2));
    return out;
}

bool secant_span_meets_subspace(const Tensor222n& p, const Tensor222n& q,
                                const std::vector<Tensor222n>& ws) {
    if (p.is_zero() || q.is_zero()) throw Error("secant span of a zero tensor");
    size_t n = 4 * static_cast<size_t>(p.m + 1);
    auto fill = [&](MatQ& m, size_t row, const Tensor222n& t) {
        auto v = t.to_vector();
        for (size_t j = 0; j < n; ++j) m.at(row, j) = v[j];
    };
    MatQ pq(2, n, Q);
    fill(pq, 0, p);
    fill(pq, 1, q);
    size_t r_pq = rank(Q, pq);
    MatQ wm(ws.size(), n, Q);
    for (size_t i = 0; i < ws.size(); ++i) fill(wm, i, ws[i]);
    size_t r_w = rank(Q, wm);
    MatQ all(2 + ws.size(), n, Q);
    fill(all, 0, p);
    fill(all, 1, q);
    for (size_t i = 0; i < ws.size(); ++i) fill(all, 2 + i, ws[i]);
    return rank(Q, all) < r_pq + r_w;
}

} // namespace injekt
