#include "clipcone/descent.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "clipcone/errors.hpp"
#include "clipcone/linalg.hpp"
#include "clipcone/sampling.hpp"

namespace clipcone {
namespace {

// Solves b y = v for a tall matrix with independent columns; nullopt when v
// lies outside the column span.
std::optional<RatVec> solve_tall(const RatMat& b, const RatVec& v) {
    RatMat bt = b.transpose();
    auto y = linalg::solve((bt * b).eval(), (bt * v).eval());
    if (!y) return std::nullopt;
    RatVec diff = (b * *y - v).eval();
    if (!is_zero_vec(diff)) return std::nullopt;
    return y;
}

// x = f^2 d with d square-free; requires x > 0.
std::pair<Int, Int> squarefree_split(Int x) {
    Int f = 1, d = 1;
    for (Int p = 2; p * p <= x; ++p) {
        if (x % p != 0) continue;
        long e = 0;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        for (long k = 0; k < e / 2; ++k) f *= p;
        if (e % 2 != 0) d *= p;
    }
    d *= x;
    return {f, d};
}

QScalar qneg(const QScalar& x) { return QScalar(-x.a, -x.b); }

QScalar qcross(const QVec& u, const QVec& v, long d) {
    return qsub(qmul(u[0], v[1], d), qmul(u[1], v[0], d));
}

// l[0] e[0] + l[1] e[1] for a rational functional on the plane.
QScalar qdot2(const RatVec& l, const QVec& e, long d) {
    return qadd(qmul(QScalar(l(0)), e[0], d), qmul(QScalar(l(1)), e[1], d));
}

long field_of(long disc) { return disc > 1 ? disc : 2; }

// Signs of the coefficients of y in the basis (edges[0], edges[1]).
std::pair<int, int> edge_coeff_signs(const std::vector<QVec>& edges, const QVec& y,
                                     long d) {
    int sd = qsign(qcross(edges[0], edges[1], d), d);
    int a1 = qsign(qcross(y, edges[1], d), d) * sd;
    int a2 = qsign(qcross(edges[0], y, d), d) * sd;
    return {a1, a2};
}

// Per-element permutation of the factor list; throws when an element fails to
// permute the coordinate blocks kind-for-kind.
std::vector<std::vector<size_t>> factor_permutations(const SymCone& sym,
                                                     const FiniteAction& action) {
    const long n = sym.lattice.n;
    std::vector<long> owner(static_cast<size_t>(n), -1);
    for (size_t f = 0; f < sym.factors.size(); ++f)
        for (long c : sym.factors[f].coords) owner[static_cast<size_t>(c)] = static_cast<long>(f);

    std::vector<std::vector<size_t>> perms(action.elements.size());
    for (size_t t = 0; t < action.elements.size(); ++t) {
        const IntMat& g = action.elements[t];
        perms[t].resize(sym.factors.size());
        std::vector<char> hit(sym.factors.size(), 0);
        for (size_t f = 0; f < sym.factors.size(); ++f) {
            std::set<long> support;
            for (long c : sym.factors[f].coords)
                for (long r = 0; r < n; ++r)
                    if (g(r, c) != 0) support.insert(r);
            if (support.empty())
                throw PreconditionFailure("group element kills a factor block");
            long f2 = owner[static_cast<size_t>(*support.begin())];
            const Factor& target = sym.factors[static_cast<size_t>(f2)];
            std::set<long> tset(target.coords.begin(), target.coords.end());
            bool contained = std::includes(tset.begin(), tset.end(), support.begin(), support.end());
            if (!contained || target.dim() != sym.factors[f].dim())
                throw PreconditionFailure("group element does not permute the factor decomposition");
            if (target.kind != sym.factors[f].kind)
                throw PreconditionFailure("group element maps a factor onto a factor of another kind");
            if (hit[static_cast<size_t>(f2)])
                throw PreconditionFailure("group element folds two factors onto one");
            hit[static_cast<size_t>(f2)] = 1;
            perms[t][f] = static_cast<size_t>(f2);
        }
    }
    return perms;
}

// Canonical interior point: halfline units, Lorentz witnesses, psd identity.
RatVec canonical_interior(const SymCone& sym) {
    RatVec a = RatVec::Constant(sym.lattice.n, Rat(0));
    for (const Factor& f : sym.factors) {
        if (f.kind == FactorKind::Halfline) {
            a(f.coords[0]) += 1;
        } else if (f.kind == FactorKind::Lorentz) {
            for (size_t j = 0; j < f.coords.size(); ++j) a(f.coords[j]) += f.h(static_cast<long>(j));
        } else {
            long idx = 0;
            for (long i = 0; i < f.m; ++i)
                for (long j = i; j < f.m; ++j) {
                    if (i == j) a(f.coords[static_cast<size_t>(idx)]) += 1;
                    ++idx;
                }
        }
    }
    return a;
}

std::vector<std::vector<size_t>> group_orbits(size_t count,
                                              const std::vector<std::vector<size_t>>& perms) {
    std::vector<long> seen(count, -1);
    std::vector<std::vector<size_t>> orbits;
    for (size_t start = 0; start < count; ++start) {
        if (seen[start] >= 0) continue;
        std::set<size_t> members{start};
        std::vector<size_t> queue{start};
        while (!queue.empty()) {
            size_t x = queue.back();
            queue.pop_back();
            for (const auto& p : perms) {
                size_t y = p[x];
                if (members.insert(y).second) queue.push_back(y);
            }
        }
        for (size_t x : members) seen[x] = static_cast<long>(orbits.size());
        orbits.emplace_back(members.begin(), members.end());
    }
    return orbits;
}

}  // namespace

IntVec orbit_sum(const Root& root, const FiniteAction& action) {
    if (action.n != root.e.size())
        throw DimensionMismatch("action dimension differs from the root length");
    std::vector<IntVec> images;
    for (const IntMat& g : action.elements) {
        IntVec v = (g * root.e).eval();
        bool dup = false;
        for (const IntVec& w : images)
            if (vec_eq(w, v)) {
                dup = true;
                break;
            }
        if (!dup) images.push_back(std::move(v));
    }
    IntVec s = IntVec::Constant(root.e.size(), Int(0));
    for (const IntVec& v : images) s += v;
    return s;
}

Lift centralizer_lift(const ClippedCone& cone, const std::vector<size_t>& orbit,
                      const FiniteAction& action) {
    if (orbit.empty()) throw PreconditionFailure("the root orbit is empty");
    const QuadLattice& lat = cone.ambient.lattice;
    const Rat s = cone.roots[orbit[0]].s;
    for (size_t i : orbit)
        if (cone.roots[i].s != s)
            throw BlockStructureViolation("orbit roots have unequal squares");

    const size_t k = orbit.size();
    std::vector<long> partner(k, -1);
    for (size_t a = 0; a < k; ++a)
        for (size_t b = a + 1; b < k; ++b) {
            Rat p = lat.pair(to_rat(cone.roots[orbit[a]].e), to_rat(cone.roots[orbit[b]].e));
            if (p <= 0) continue;
            if (partner[a] != -1 || partner[b] != -1)
                throw BlockStructureViolation("a root pairs positively with two orbit members");
            if (p * 2 != s)
                throw BlockStructureViolation("paired roots must pair to half the square");
            partner[a] = static_cast<long>(b);
            partner[b] = static_cast<long>(a);
        }
    bool any_pair = false, any_single = false;
    for (size_t a = 0; a < k; ++a) (partner[a] >= 0 ? any_pair : any_single) = true;
    if (any_pair && any_single)
        throw BlockStructureViolation(
            "positive pairings are neither empty nor a perfect matching");

    Lift lift;
    lift.block_size = any_pair ? 2 : 1;
    std::vector<RatMat> blocks;
    for (size_t a = 0; a < k; ++a) {
        if (partner[a] >= 0 && static_cast<size_t>(partner[a]) < a) continue;
        if (partner[a] < 0) {
            lift.word.push_back(orbit[a]);
            blocks.push_back(reflection_matrix(cone.roots[orbit[a]], lat));
        } else {
            size_t b = static_cast<size_t>(partner[a]);
            lift.word.push_back(orbit[a]);
            lift.word.push_back(orbit[b]);
            lift.word.push_back(orbit[a]);
            RatMat sa = reflection_matrix(cone.roots[orbit[a]], lat);
            RatMat sb = reflection_matrix(cone.roots[orbit[b]], lat);
            blocks.push_back((sa * sb * sa).eval());
        }
    }
    lift.blocks = static_cast<long>(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
            if (!((blocks[i] * blocks[j]).eval() == (blocks[j] * blocks[i]).eval()))
                throw PreconditionFailure("lift blocks do not commute");
    RatMat b = RatMat::Identity(lat.n, lat.n);
    for (const RatMat& blk : blocks) b = (b * blk).eval();
    for (const IntMat& g : action.elements) {
        RatMat gr = to_rat(g);
        if (!((b * gr).eval() == (gr * b).eval()))
            throw PreconditionFailure("the lift does not centralize the group");
    }
    lift.b = std::move(b);
    return lift;
}

std::vector<IntVec> descend_walls(const std::vector<IntVec>& walls,
                                  const FiniteAction& action,
                                  const QuadLattice& lattice) {
    if (action.n != lattice.n)
        throw DimensionMismatch("action dimension differs from the lattice rank");
    std::vector<IntVec> out;
    for (const IntVec& w : walls) {
        if (w.size() != lattice.n)
            throw DimensionMismatch("wall length does not match the lattice rank");
        if (!(lattice.norm(to_rat(w)) < 0))
            throw PreconditionFailure("wall must have negative square");
        IntVec sum = IntVec::Constant(lattice.n, Int(0));
        for (const IntMat& g : action.elements) sum += (g * w).eval();
        if (!(lattice.pair(to_rat(w), to_rat(sum)) < 0)) continue;
        bool dup = false;
        for (const IntVec& v : out)
            if (vec_eq(v, sum)) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(sum));
    }
    return out;
}

bool member_b(const DescentReport& rep, const ClippedCone& cone, const RatVec& y,
              Mode mode) {
    if (y.size() != rep.invariant_basis.cols())
        throw DimensionMismatch("vector length does not match the invariant rank");
    if (!rep.B_cols.empty()) {
        RatVec yl(static_cast<long>(rep.B_cols.size()));
        for (size_t j = 0; j < rep.B_cols.size(); ++j) yl(static_cast<long>(j)) = y(rep.B_cols[j]);
        if (!member(rep.B, yl, mode)) return false;
    }
    for (const WedgeB& w : rep.wedges) {
        const long d = field_of(w.disc);
        QVec y2{QScalar(y(w.cols[0])), QScalar(y(w.cols[1]))};
        auto [a1, a2] = edge_coeff_signs(w.edges, y2, d);
        if (mode == Mode::Interior) {
            if (!(a1 > 0 && a2 > 0)) return false;
        } else {
            if (!(a1 >= 0 && a2 >= 0)) return false;
        }
    }
    if (!rep.psd_parts.empty()) {
        RatVec v = (to_rat(rep.invariant_basis) * y).eval();
        for (const PsdPartB& p : rep.psd_parts) {
            SubCone sub = restrict_to(cone.ambient, {p.factor});
            RatVec part = factor_part(cone.ambient.factors[p.factor], v);
            if (!member(sub.cone, part, mode)) return false;
        }
    }
    return true;
}

bool member_descended(const DescentReport& rep, const ClippedCone& cone,
                      const RatVec& y, Mode mode) {
    if (!member_b(rep, cone, y, mode)) return false;
    for (size_t idx : rep.I_star) {
        RatVec eps = to_rat(rep.root_orbits[idx].epsilon);
        Rat val = (eps.transpose() * rep.invariant_gram * y)(0, 0);
        if (mode == Mode::Interior) {
            if (!(val > 0)) return false;
        } else {
            if (!(val >= 0)) return false;
        }
    }
    return true;
}

DescentReport descend(const ClippedCone& cone, const FiniteAction& action,
                      unsigned long seed, long samples) {
    const SymCone& sym = cone.ambient;
    const QuadLattice& lat = sym.lattice;
    const long n = lat.n;
    if (action.n != n)
        throw DimensionMismatch("action dimension differs from the lattice rank");
    if (action.elements.empty())
        throw PreconditionFailure("the action lists no elements");
    if (samples < 1) throw PreconditionFailure("sample count must be positive");

    if (!validate_clipped(cone).ok())
        throw PreconditionFailure("the clipped cone fails structural validation");
    for (const Root& r : cone.roots)
        if (!check_integrality(r, lat).ok)
            throw PreconditionFailure(
                "a root reflection is not integral; descent needs the divisibility assumption");
    if (!check_pairwise(cone.roots, lat).ok)
        throw PreconditionFailure("the root pairings violate the sign or ratio constraints");
    for (const IntMat& g : action.elements)
        if (!preserves_form(g, lat.gram))
            throw PreconditionFailure("group element is not a q-isometry");

    auto perms = factor_permutations(sym, action);

    RatVec a0 = canonical_interior(sym);
    for (const IntMat& g : action.elements) {
        if (!member(sym, (to_rat(g) * a0).eval(), Mode::Interior))
            throw PreconditionFailure("group element does not preserve the cone components");
        if (!member_clipped(cone, (to_rat(g) * cone.witness).eval(), Mode::Interior))
            throw PreconditionFailure("group element does not preserve the clipped interior");
    }

    const size_t R = cone.roots.size();
    std::vector<std::vector<size_t>> rperm(action.elements.size(), std::vector<size_t>(R));
    for (size_t t = 0; t < action.elements.size(); ++t)
        for (size_t i = 0; i < R; ++i) {
            IntVec img = (action.elements[t] * cone.roots[i].e).eval();
            bool found = false;
            for (size_t k = 0; k < R; ++k)
                if (vec_eq(cone.roots[k].e, img)) {
                    rperm[t][i] = k;
                    found = true;
                    break;
                }
            if (!found)
                throw PreconditionFailure("group element does not permute the root list");
        }

    DescentReport rep;
    auto& checks = rep.checks;

    // ---- factor orbits and the per-orbit invariant basis ----
    auto factor_orbit_sets = group_orbits(sym.factors.size(), perms);
    std::vector<long> orbit_of_factor(sym.factors.size(), -1);
    RatVec cbar = RatVec::Constant(n, Rat(0));
    for (const IntMat& g : action.elements) cbar += (to_rat(g) * cone.witness).eval();
    cbar = (cbar * Rat(Int(1), Int(action.order()))).eval();

    std::vector<IntVec> basis_cols;
    for (auto& members : factor_orbit_sets) {
        FactorOrbit ob;
        ob.factors = members;
        ob.kind = sym.factors[members[0]].kind;
        for (size_t f : members) {
            if (sym.factors[f].kind != ob.kind)
                throw PreconditionFailure("factor orbit mixes kinds");
            orbit_of_factor[f] = static_cast<long>(rep.orbit_table.size());
        }
        if (ob.kind == FactorKind::PsdSym && members.size() > 1)
            throw PsdOrbitUnsupported("a PsdSym factor is moved onto another factor");

        std::vector<long> C;
        for (size_t f : ob.factors)
            C.insert(C.end(), sym.factors[f].coords.begin(), sym.factors[f].coords.end());
        std::sort(C.begin(), C.end());
        const long cn = static_cast<long>(C.size());
        std::vector<IntMat> stack;
        for (const IntMat& g : action.elements) {
            IntMat gc(cn, cn);
            for (long i = 0; i < cn; ++i)
                for (long j = 0; j < cn; ++j) gc(i, j) = g(C[static_cast<size_t>(i)], C[static_cast<size_t>(j)]);
            for (long i = 0; i < cn; ++i) gc(i, i) -= 1;
            stack.push_back(std::move(gc));
        }
        IntMat ker = linalg::integer_kernel(linalg::vstack(stack));
        ob.d = ker.cols();
        if (ob.kind == FactorKind::Lorentz) {
            ob.type = invariant_hyperbolic_type(sym, ob.factors, action);
        } else {
            ob.type = HyperbolicType::Halfline;
            if (ob.kind == FactorKind::Halfline && ob.d != 1)
                throw SignatureAnomaly("halfline orbit with invariant dimension other than one");
        }

        for (long j = 0; j < ob.d; ++j) {
            IntVec col = IntVec::Constant(n, Int(0));
            for (long i = 0; i < cn; ++i) col(C[static_cast<size_t>(i)]) = ker(i, j);
            if (ob.d == 1 && ob.kind != FactorKind::PsdSym) {
                int sg = sign(lat.pair(to_rat(col), cbar));
                if (sg == 0) throw SignatureAnomaly("invariant ray orthogonal to the witness");
                if (sg < 0) col = (-col).eval();
            }
            ob.cols.push_back(static_cast<long>(basis_cols.size()));
            basis_cols.push_back(std::move(col));
        }
        rep.orbit_table.push_back(std::move(ob));
    }

    const long m = static_cast<long>(basis_cols.size());
    IntMat bmat(n, m);
    for (long j = 0; j < m; ++j) bmat.col(j) = basis_cols[static_cast<size_t>(j)];
    RatMat brat = to_rat(bmat);
    rep.invariant_basis = bmat;
    rep.invariant_gram = (brat.transpose() * lat.gram * brat).eval();

    {
        IntMat s = invariant_sublattice(action);
        bool sat = s.cols() == m;
        if (sat) {
            auto h1 = linalg::hnf_cols(bmat).first;
            auto h2 = linalg::hnf_cols(s).first;
            sat = (h1 == h2);
        }
        checks["invariant_basis_saturated"] = sat;
    }

    auto winv = solve_tall(brat, cbar);
    if (!winv)
        throw PreconditionFailure("averaged witness escapes the invariant span");
    rep.witness = *winv;
    checks["averaged_witness_interior"] = member_clipped(cone, cbar, Mode::Interior);

    for (size_t o = 0; o < rep.orbit_table.size(); ++o) {
        const FactorOrbit& ob = rep.orbit_table[o];
        if (ob.kind == FactorKind::PsdSym) continue;
        if (ob.d == 1) rep.J1.push_back(o);
        else if (ob.d == 2) rep.J2.push_back(o);
        else rep.J3p.push_back(o);
    }

    // ---- root orbits ----
    auto root_orbit_sets = group_orbits(R, rperm);
    checks["orbit_sum_consistent"] = true;
    checks["epsilon_pairing_two_values"] = true;
    for (auto& members : root_orbit_sets) {
        RootOrbit ro;
        ro.roots = members;
        long carrier = orbit_of_factor[static_cast<size_t>(cone.roots[members[0]].factor)];
        for (size_t i : members)
            if (orbit_of_factor[static_cast<size_t>(cone.roots[i].factor)] != carrier)
                throw PreconditionFailure("root orbit spans several factor orbits");
        ro.carrier = static_cast<size_t>(carrier);
        IntVec eps = IntVec::Constant(n, Int(0));
        for (size_t i : members) eps += cone.roots[i].e;
        ro.epsilon_ambient = eps;
        if (!vec_eq(orbit_sum(cone.roots[members[0]], action), eps))
            checks["orbit_sum_consistent"] = false;
        auto einv = solve_tall(brat, to_rat(eps));
        if (!einv)
            throw PreconditionFailure("orbit sum escapes the invariant span");
        ro.epsilon = to_int_checked(*einv);
        ro.q_epsilon = lat.norm(to_rat(eps));
        ro.pairing = lat.pair(to_rat(cone.roots[members[0]].e), to_rat(eps));
        const Rat s = cone.roots[members[0]].s;
        if (!(ro.pairing == -s || ro.pairing * 2 == -s))
            checks["epsilon_pairing_two_values"] = false;
        const FactorOrbit& carrier_ob = rep.orbit_table[ro.carrier];
        ro.in_star = carrier_ob.kind == FactorKind::Lorentz && carrier_ob.d >= 3 &&
                     ro.q_epsilon < 0;
        rep.root_orbits.push_back(std::move(ro));
    }
    for (size_t i = 0; i < rep.root_orbits.size(); ++i)
        if (rep.root_orbits[i].in_star) rep.I_star.push_back(i);

    // ---- the shell B: explicit factors, wedges, psd parts ----
    std::vector<long> orbit_bfactor(rep.orbit_table.size(), -1);
    std::vector<Factor> bfactors;
    checks["simplicial_ruled"] = true;
    for (size_t o = 0; o < rep.orbit_table.size(); ++o) {
        const FactorOrbit& ob = rep.orbit_table[o];
        if (ob.kind == FactorKind::PsdSym) {
            rep.psd_parts.push_back(PsdPartB{o, ob.factors[0]});
            continue;
        }
        if (ob.d == 1) {
            Factor f;
            f.kind = FactorKind::Halfline;
            f.coords = {static_cast<long>(rep.B_cols.size())};
            orbit_bfactor[o] = static_cast<long>(bfactors.size());
            bfactors.push_back(std::move(f));
            rep.B_cols.push_back(ob.cols[0]);
            continue;
        }
        if (ob.d == 2) {
            WedgeB w;
            w.orbit = o;
            w.cols = {ob.cols[0], ob.cols[1]};
            const Rat a = rep.invariant_gram(ob.cols[0], ob.cols[0]);
            const Rat b = rep.invariant_gram(ob.cols[0], ob.cols[1]);
            const Rat c = rep.invariant_gram(ob.cols[1], ob.cols[1]);
            const Rat disc = b * b - a * c;
            if (!(disc > 0))
                throw SignatureAnomaly("invariant plane is not hyperbolic");
            QVec e1(2), e2(2);
            if (a != 0) {
                Int p = numerator(disc), q = denominator(disc);
                auto [fpart, dpart] = squarefree_split(p * q);
                w.disc = dpart.convert_to<long>();
                const Rat x0 = -b * q;
                const Rat y0 = a * q;
                const Rat fr = Rat(fpart);
                if (w.disc == 1) {
                    e1 = {QScalar(x0 + fr), QScalar(y0)};
                    e2 = {QScalar(x0 - fr), QScalar(y0)};
                } else {
                    e1 = {QScalar(x0, fr), QScalar(y0)};
                    e2 = {QScalar(x0, -fr), QScalar(y0)};
                }
            } else {
                w.disc = 1;
                e1 = {QScalar(Rat(1)), QScalar(Rat(0))};
                e2 = {QScalar(-c), QScalar(b * 2)};
            }
            const long dq = field_of(w.disc);
            RatVec w2(2);
            w2(0) = rep.witness(ob.cols[0]);
            w2(1) = rep.witness(ob.cols[1]);
            RatVec r(2);
            r(0) = a * w2(0) + b * w2(1);
            r(1) = b * w2(0) + c * w2(1);
            for (QVec* e : {&e1, &e2}) {
                int sg = qsign(qdot2(r, *e, dq), dq);
                if (sg == 0) throw SignatureAnomaly("wedge edge orthogonal to the witness");
                if (sg < 0) {
                    (*e)[0] = qneg((*e)[0]);
                    (*e)[1] = qneg((*e)[1]);
                }
            }
            w.ambient_edges = {e1, e2};
            std::vector<QVec> edges = w.ambient_edges;
            for (const RootOrbit& ro : rep.root_orbits) {
                if (ro.carrier != o) continue;
                RatVec lf(2);
                RatVec ge = (lat.gram * to_rat(cone.roots[ro.roots[0]].e)).eval();
                lf(0) = (brat.col(ob.cols[0]).transpose() * ge)(0, 0);
                lf(1) = (brat.col(ob.cols[1]).transpose() * ge)(0, 0);
                int s1 = qsign(qdot2(lf, edges[0], dq), dq);
                int s2 = qsign(qdot2(lf, edges[1], dq), dq);
                if (s1 >= 0 && s2 >= 0) continue;
                if (s1 <= 0 && s2 <= 0)
                    throw DegenerateB(s1 < 0 && s2 < 0
                                          ? "a carried cut empties the invariant wedge"
                                          : "a carried cut flattens the invariant wedge to one halfline");
                QVec kdir{QScalar(-lf(1)), QScalar(lf(0))};
                auto [a1, a2] = edge_coeff_signs(edges, kdir, dq);
                if (a1 < 0 && a2 < 0) {
                    kdir[0] = qneg(kdir[0]);
                    kdir[1] = qneg(kdir[1]);
                    a1 = -a1;
                    a2 = -a2;
                }
                if (a1 < 0 || a2 < 0)
                    throw DegenerateB("a carried cut misses the invariant wedge");
                edges[s1 < 0 ? 0 : 1] = kdir;
            }
            w.edges = std::move(edges);
            QCone sigma{2, dq, w.ambient_edges};
            QCone xi{2, dq, w.edges};
            checks["simplicial_ruled"] = checks["simplicial_ruled"] && rules(sigma, xi);
            rep.wedges.push_back(std::move(w));
            continue;
        }
        Factor f;
        f.kind = FactorKind::Lorentz;
        RatVec h(ob.d);
        for (long j = 0; j < ob.d; ++j) {
            f.coords.push_back(static_cast<long>(rep.B_cols.size()) + j);
            h(j) = rep.witness(ob.cols[static_cast<size_t>(j)]);
        }
        f.h = std::move(h);
        orbit_bfactor[o] = static_cast<long>(bfactors.size());
        bfactors.push_back(std::move(f));
        for (long col : ob.cols) rep.B_cols.push_back(col);
    }
    {
        const long mb = static_cast<long>(rep.B_cols.size());
        RatMat gb(mb, mb);
        for (long i = 0; i < mb; ++i)
            for (long j = 0; j < mb; ++j)
                gb(i, j) = rep.invariant_gram(rep.B_cols[static_cast<size_t>(i)],
                                              rep.B_cols[static_cast<size_t>(j)]);
        rep.B = SymCone{QuadLattice(mb, gb), bfactors};
        checks["b_explicit_valid"] = mb == 0 || validate(rep.B).ok();
    }

    // ---- descended roots, reflections, lifts ----
    const QuadLattice inv_lat(m, rep.invariant_gram);
    checks["descended_oriented"] = true;
    checks["descended_support"] = true;
    checks["tau_integral"] = true;
    checks["tau_involution_isometry"] = true;
    checks["tau_matches_reflection"] = true;
    checks["lift_centralizes"] = true;
    checks["lift_restricts"] = true;
    for (size_t idx : rep.I_star) {
        RootOrbit& ro = rep.root_orbits[idx];
        RatVec eps_rat = to_rat(ro.epsilon);
        Root dr;
        dr.e = primitive(eps_rat);
        dr.factor = static_cast<long>(ro.carrier);
        dr.s = -inv_lat.norm(to_rat(dr.e));
        checks["descended_oriented"] =
            checks["descended_oriented"] && sign(inv_lat.pair(to_rat(dr.e), rep.witness)) > 0;
        const FactorOrbit& carrier_ob = rep.orbit_table[ro.carrier];
        for (long j = 0; j < m; ++j)
            if (dr.e(j) != 0 &&
                std::find(carrier_ob.cols.begin(), carrier_ob.cols.end(), j) ==
                    carrier_ob.cols.end())
                checks["descended_support"] = false;
        rep.descended.push_back(dr);

        RatVec row = (brat.transpose() * lat.gram * to_rat(cone.roots[ro.roots[0]].e)).eval();
        RatMat tau = RatMat::Identity(m, m);
        tau -= (Rat(2) / ro.pairing) * (eps_rat * row.transpose());
        tau = tau.eval();
        checks["tau_integral"] = checks["tau_integral"] && is_integral(tau);
        bool invol = ((tau * tau).eval() == RatMat::Identity(m, m)) &&
                     ((tau.transpose() * rep.invariant_gram * tau).eval() == rep.invariant_gram) &&
                     ((tau * eps_rat).eval() == RatVec(-eps_rat));
        checks["tau_involution_isometry"] = checks["tau_involution_isometry"] && invol;
        checks["tau_matches_reflection"] =
            checks["tau_matches_reflection"] && (tau == reflection_matrix(dr, inv_lat));
        rep.taus.push_back(tau);

        Lift lift = centralizer_lift(cone, ro.roots, action);
        checks["lift_restricts"] =
            checks["lift_restricts"] && ((lift.b * brat).eval() == (brat * tau).eval());
        rep.lifts.push_back(std::move(lift));
    }
    checks["descended_integrality"] = true;
    for (const Root& dr : rep.descended)
        checks["descended_integrality"] =
            checks["descended_integrality"] && check_integrality(dr, inv_lat).ok;
    checks["descended_pairwise"] = check_pairwise(rep.descended, inv_lat).ok;

    // ---- geometric comparison ----
    bool exact_possible = rep.J3p.empty() && rep.psd_parts.empty();
    for (const WedgeB& w : rep.wedges) exact_possible = exact_possible && w.disc == 1;
    bool geom = true;
    if (exact_possible) {
        auto embed2 = [&](const WedgeB& w, const RatVec& v2) {
            RatVec full = RatVec::Constant(m, Rat(0));
            full(w.cols[0]) = v2(0);
            full(w.cols[1]) = v2(1);
            return full;
        };
        auto edge_ray = [](const QVec& e) {
            RatVec v(2);
            v(0) = e[0].a;
            v(1) = e[1].a;
            return v;
        };
        auto facet_normals = [&](const std::vector<QVec>& edges) {
            std::vector<RatVec> out;
            for (int which : {0, 1}) {
                RatVec f = edge_ray(edges[static_cast<size_t>(which)]);
                RatVec other = edge_ray(edges[static_cast<size_t>(1 - which)]);
                RatVec nrm(2);
                nrm(0) = -f(1);
                nrm(1) = f(0);
                Rat val = nrm(0) * other(0) + nrm(1) * other(1);
                if (val < 0) nrm = (-nrm).eval();
                out.push_back(nrm);
            }
            return out;
        };
        std::vector<RatVec> lhs, rhs;
        for (const FactorOrbit& ob : rep.orbit_table)
            if (ob.kind != FactorKind::PsdSym && ob.d == 1) {
                RatVec unit = RatVec::Constant(m, Rat(0));
                unit(ob.cols[0]) = 1;
                lhs.push_back(unit);
                rhs.push_back(unit);
            }
        for (const WedgeB& w : rep.wedges) {
            for (const RatVec& nrm : facet_normals(w.ambient_edges)) lhs.push_back(embed2(w, nrm));
            for (const RatVec& nrm : facet_normals(w.edges)) rhs.push_back(embed2(w, nrm));
        }
        for (const RootOrbit& ro : rep.root_orbits)
            lhs.push_back((brat.transpose() * lat.gram * to_rat(cone.roots[ro.roots[0]].e)).eval());
        for (size_t idx : rep.I_star)
            rhs.push_back((rep.invariant_gram * to_rat(rep.root_orbits[idx].epsilon)).eval());
        PolyCone lc = dd_from_facets(m, lhs);
        PolyCone rc = dd_from_facets(m, rhs);
        auto covered = [](const PolyCone& big, const PolyCone& small) {
            for (const IntVec& ray : small.rays)
                if (!contains(big, to_rat(ray), Mode::Closure)) return false;
            for (const IntVec& line : small.lines) {
                if (!contains(big, to_rat(line), Mode::Closure)) return false;
                if (!contains(big, to_rat(IntVec(-line)), Mode::Closure)) return false;
            }
            return true;
        };
        geom = covered(lc, rc) && covered(rc, lc);
        rep.equality_exact = true;
    }

    const long half = samples / 2;
    std::vector<RatVec> pts;
    for (const IntVec& v : box_samples(m, half, 6, seed)) pts.push_back(to_rat(v));
    auto inside = [&](const RatVec& x) {
        return member_clipped(cone, (brat * x).eval(), Mode::Interior);
    };
    for (RatVec& v : predicate_samples(inside, rep.witness, samples - half, 4, seed + 1))
        pts.push_back(std::move(v));
    long interior_hits = 0;
    for (const RatVec& y : pts) {
        RatVec v = (brat * y).eval();
        for (Mode mode : {Mode::Interior, Mode::Closure}) {
            bool upstairs = member_clipped(cone, v, mode);
            bool downstairs = member_descended(rep, cone, y, mode);
            geom = geom && upstairs == downstairs;
            if (mode == Mode::Interior && upstairs) ++interior_hits;
        }
    }
    checks["geometric_equality"] = geom && interior_hits > 0;

    bool round_ok = true;
    for (size_t o = 0; o < rep.orbit_table.size(); ++o) {
        const FactorOrbit& ob = rep.orbit_table[o];
        if (ob.kind != FactorKind::Lorentz || ob.d < 3) continue;
        SubCone amb = restrict_to(sym, ob.factors);
        SubCone slice = restrict_to(rep.B, {static_cast<size_t>(orbit_bfactor[o])});
        for (const RatVec& y : pts) {
            RatVec v = (brat * y).eval();
            RatVec part(static_cast<long>(amb.ambient.size()));
            for (size_t j = 0; j < amb.ambient.size(); ++j)
                part(static_cast<long>(j)) = v(amb.ambient[j]);
            RatVec yloc(static_cast<long>(slice.ambient.size()));
            for (size_t j = 0; j < slice.ambient.size(); ++j)
                yloc(static_cast<long>(j)) = y(rep.B_cols[static_cast<size_t>(slice.ambient[j])]);
            for (Mode mode : {Mode::Interior, Mode::Closure})
                round_ok = round_ok && member(amb.cone, part, mode) == member(slice.cone, yloc, mode);
        }
    }
    checks["round_part_match"] = round_ok;

    rep.ok = true;
    for (const auto& [name, value] : checks) rep.ok = rep.ok && value;
    return rep;
}

}  // namespace clipcone
